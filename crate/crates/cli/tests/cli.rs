use std::process::Command;

use proptest::prelude::*;
use ringlab_cli::*;

const MODULAR: &str =
    "let R = zmod(48)  let S = quot(R, ideal(R,[24]))  let f = canon(R,S)  let J = ideal(S,[6])  let A = amalgam(f,J)";

const TRUNCATED: &str = "let R = polyquot(gf(2), X^8)
let S = quot(R, ideal(R, [X^4]))
let f = canon(R, S)
let J = ideal(S, [X^2])
let A = amalgam(f, J)";

fn run(src: &str) -> Run {
    run_source(src, Options::default())
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ringlab")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn modular_example_is_not_gaussian() {
    let r = run(&format!("{MODULAR}  check gaussian A"));
    assert_eq!(r.exit_code(), 0, "{:?}", r.error);
    let last = r.output.iter().find(|l| l.starts_with("gaussian(A)")).unwrap();
    assert!(last.starts_with("gaussian(A) = false"), "{last}");
    assert!(r.output.iter().any(|l| l.contains("192 elements")));
}

#[test]
fn truncated_example_verifies() {
    let r = run(&format!("{TRUNCATED}\nverify T-gauss-fwd A"));
    assert_eq!(r.exit_code(), 0, "{:?}", r.error);
    let report = r.output.last().unwrap();
    assert!(report.contains("T-gauss-fwd on"), "{report}");
    assert!(report.lines().next().unwrap().ends_with(": verified"), "{report}");
    assert!(report.contains("f(r)J = {[0], [X^3]} but f(r)²J = {[0]}"), "{report}");
}

#[test]
fn syntax_error_points_at_the_offending_column() {
    let src = "polyquot(gf(2), X^)";
    match run(src).error {
        Some(ExecError::Syntax(e)) => {
            assert_eq!(e.pos, Pos { line: 1, col: src.find(')').unwrap() + 6 });
            assert_eq!(&src[e.pos.col - 1..e.pos.col], ")");
        }
        other => panic!("expected a syntax error, got {other:?}"),
    }
    let e = parse("let A = zmod(4)\nlet B = zmod(4) ]").unwrap_err();
    assert_eq!((e.pos.line, e.pos.col), (2, 17));
}

#[test]
fn type_and_binding_errors() {
    let r = run("let R = zmod(4)\ncheck prufer ideal(R, [2])");
    match r.error {
        Some(ExecError::Type { pos, .. }) => assert_eq!((pos.line, pos.col), (2, 14)),
        other => panic!("{other:?}"),
    }
    assert_eq!(r.exit_code(), 2);
    assert!(matches!(run("spec Q").error, Some(ExecError::Unbound { .. })));
    assert!(matches!(run("gf(4)").error, Some(ExecError::Type { .. })));
    assert!(matches!(run("let R = zmod(4)  let S = zmod(8)  let f = canon(R, S)").error, Some(ExecError::Type { .. })));
    assert!(matches!(run("let zmod = zmod(4)").error, Some(ExecError::Syntax(_))));
    assert_eq!(run("verify T-main-9 zmod(4)").exit_code(), 2);
    assert_eq!(run("verify T-main-1 zmod(4)").exit_code(), 2);
}

#[test]
fn exit_codes_of_the_binary() {
    let (code, out, _) = bin(&["check", "chain", "zmod(12)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("chain(zmod(12)) = false"), "{out}");
    assert_eq!(bin(&["--assert", "check", "chain", "zmod(12)"]).0, 1);
    assert_eq!(bin(&["--assert", "check", "chain", "zmod(9)"]).0, 0);
    let (code, _, err) = bin(&["-e", "polyquot(gf(2), X^)"]);
    assert_eq!(code, 2);
    assert!(err.contains("column 19"), "{err}");
    assert_eq!(bin(&["--max-ring-size", "100", "zmod(200)"]).0, 3);
    let (code, out, _) = bin(&["-e", &format!("{TRUNCATED}\nverify T-gauss-fwd A")]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn session_file_reaches_every_production() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/sessions/grammar.rl");
    let src = std::fs::read_to_string(path).unwrap();
    let stmts = parse(&src).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    fn walk(e: &Expr, seen: &mut std::collections::BTreeSet<&'static str>) {
        use ExprKind::*;
        let (tag, kids): (&str, Vec<&Expr>) = match &e.kind {
            Name(_) => ("name", vec![]),
            Zmod(_) => ("zmod", vec![]),
            Gf(_) => ("gf", vec![]),
            PolyQuot(a, _) => ("polyquot", vec![a]),
            Product(a, b) => ("product", vec![a, b]),
            Quot(a, b) => ("quot", vec![a, b]),
            Ideal(a, _) => ("ideal", vec![a]),
            Canon(a, b) => ("canon", vec![a, b]),
            Hom(a, b, _) => ("hom", vec![a, b]),
            Amalgam(a, b) => ("amalgam", vec![a, b]),
            Dup(a, b) => ("dup", vec![a, b]),
            Trivext(a, b) => ("trivext", vec![a, b]),
            ModRing(a) => ("modring", vec![a]),
            ModIdeal(a) => ("modideal", vec![a]),
            ModQuot(a, b) => ("modquot", vec![a, b]),
            ModProd(a, b) => ("modprod", vec![a, b]),
            ModVia(a, b) => ("modvia", vec![a, b]),
        };
        seen.insert(tag);
        for k in kids {
            walk(k, seen);
        }
    }
    for s in &stmts {
        let tag = match s {
            Stmt::Let { expr, .. } => {
                walk(expr, &mut seen);
                "let"
            }
            Stmt::Check { target, .. } | Stmt::Zsets(target) | Stmt::Spec(target) | Stmt::Show(target) => {
                walk(target, &mut seen);
                match s {
                    Stmt::Check { .. } => "check",
                    Stmt::Zsets(_) => "zsets",
                    Stmt::Spec(_) => "spec",
                    _ => "show",
                }
            }
            Stmt::Verify { targets, .. } => {
                targets.iter().for_each(|t| walk(t, &mut seen));
                "verify"
            }
            Stmt::Search { .. } => "search",
            Stmt::Infer { .. } => "infer",
            Stmt::Explain { .. } => "explain",
        };
        seen.insert(tag);
    }
    for p in syntax::CONSTRUCTORS.iter().chain(syntax::KEYWORDS).chain(&["name", "show"]) {
        assert!(seen.contains(p), "production {p} not exercised");
    }

    let r = run(&src);
    assert_eq!(r.exit_code(), 0, "{:?}\n{}", r.error, r.output.join("\n"));
    let (code, out, err) = bin(&["--format", "structured", "-f", path]);
    assert_eq!(code, 0, "{err}");
    assert!(out.lines().filter(|l| l.starts_with('{')).count() > 10);
}

#[test]
fn structured_reports_are_deterministic() {
    let src = format!("{MODULAR}\nverify all A\ncheck gaussian A\nzsets A\nspec A");
    let opts = Options {
        format: Format::Structured,
        ..Options::default()
    };
    let a = run_source(&src, opts.clone());
    let b = run_source(&src, opts);
    assert!(a.error.is_none(), "{:?}", a.error);
    assert_eq!(a.output, b.output);
    for line in &a.output {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v.is_object());
    }
    let first = &a.output[0];
    assert!(first.starts_with("{\"claim\":\"L-zd-inc\",\"instance_digest\":"), "{first}");
}

#[test]
fn search_lists_smallest_first() {
    let r = run("search prufer,!gaussian --max-size 1100");
    assert!(r.error.is_none());
    let sizes: Vec<usize> = r.output[1..]
        .iter()
        .map(|l| l.split_whitespace().next().unwrap().parse().unwrap())
        .collect();
    assert!(!sizes.is_empty() && sizes.windows(2).all(|w| w[0] <= w[1]));
    assert!(sizes.iter().all(|&s| s <= 1100));
    for digest in [
        "amalgam(R=Z/48, S=Z/48/(24), J=([6]), f=surjection)",
        "amalgam(R=Z/2[X]/(X^8), S=Z/2[X]/(X^8)/(X^4), J=([X^2]), f=surjection)",
    ] {
        assert!(r.output.iter().any(|l| l.ends_with(digest)), "missing {digest}");
    }
}

#[test]
fn infer_and_explain() {
    let r = run("infer local-integers-plus-power-series\nexplain local-integers-plus-power-series A.is_gaussian");
    assert!(r.error.is_none(), "{:?}", r.error);
    assert!(r.output.contains(&"  A.is_gaussian = true  <- rule prufer-domain⇒gaussian".to_string()));
    assert!(r.output.contains(&"  T-gauss-fwd inapplicable: needs J.J_subset_fR = true".to_string()));
    let tree = r.output.last().unwrap();
    assert_eq!(tree.lines().count(), 3);
    assert!(matches!(run("explain nowhere A.is_prufer").error, Some(ExecError::Core { .. })));
    assert!(matches!(run("explain integers-plus-power-series A.is_chain").error, Some(ExecError::Core { .. })));
}

fn poly() -> impl Strategy<Value = PolyLit> {
    prop::collection::vec((-20i64..20, 0u32..6).prop_map(|(coeff, exp)| Term { coeff, exp }), 1..4).prop_map(PolyLit)
}

fn name() -> impl Strategy<Value = String> {
    "[A-Z][a-z0-9]{0,3}"
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        name().prop_map(ExprKind::Name),
        (2u64..100).prop_map(ExprKind::Zmod),
        (2u64..100).prop_map(ExprKind::Gf),
    ]
    .prop_map(|kind| Expr { kind, pos: Pos::default() });
    leaf.prop_recursive(3, 24, 3, |inner| {
        let b = move || inner.clone().prop_map(Box::new);
        prop_oneof![
            (b(), poly()).prop_map(|(a, p)| ExprKind::PolyQuot(a, p)),
            (b(), b()).prop_map(|(a, c)| ExprKind::Product(a, c)),
            (b(), b()).prop_map(|(a, c)| ExprKind::Quot(a, c)),
            (b(), prop::collection::vec(poly(), 0..3)).prop_map(|(a, v)| ExprKind::Ideal(a, v)),
            (b(), b()).prop_map(|(a, c)| ExprKind::Canon(a, c)),
            (b(), b(), prop::collection::vec((poly(), poly()), 0..3)).prop_map(|(a, c, m)| ExprKind::Hom(a, c, m)),
            (b(), b()).prop_map(|(a, c)| ExprKind::Amalgam(a, c)),
            (b(), b()).prop_map(|(a, c)| ExprKind::Dup(a, c)),
            (b(), b()).prop_map(|(a, c)| ExprKind::Trivext(a, c)),
            b().prop_map(ExprKind::ModRing),
            b().prop_map(ExprKind::ModIdeal),
            (b(), b()).prop_map(|(a, c)| ExprKind::ModQuot(a, c)),
            (b(), b()).prop_map(|(a, c)| ExprKind::ModProd(a, c)),
            (b(), b()).prop_map(|(a, c)| ExprKind::ModVia(a, c)),
        ]
        .prop_map(|kind| Expr { kind, pos: Pos::default() })
    })
}

fn stmt() -> impl Strategy<Value = Stmt> {
    prop_oneof![
        (name(), expr()).prop_map(|(name, expr)| Stmt::Let { name, expr }),
        ("[a-z-]{1,12}", expr()).prop_map(|(predicate, target)| Stmt::Check { predicate, target }),
        expr().prop_map(Stmt::Zsets),
        expr().prop_map(Stmt::Spec),
        expr().prop_map(Stmt::Show),
        ("[A-Z]-[a-z0-9-]{1,8}", prop::collection::vec(expr(), 1..3))
            .prop_map(|(claim, targets)| Stmt::Verify { claim, targets }),
        ("!?[a-z]{1,6}(,!?[a-z]{1,6}){0,2}", prop::option::of(1usize..5000))
            .prop_map(|(profile, max_size)| Stmt::Search { profile, max_size }),
        prop::option::of("[a-z][a-z-]{0,10}").prop_map(|entry| Stmt::Infer { entry }),
        ("[a-z][a-z-]{0,10}", "[ARS]\\.is_[a-z]{1,6}").prop_map(|(entry, atom)| Stmt::Explain { entry, atom }),
    ]
    .prop_filter("names must not be reserved", |s| {
        let reserved = |n: &str| syntax::KEYWORDS.contains(&n) || syntax::CONSTRUCTORS.contains(&n);
        match s {
            Stmt::Let { name, .. } => !reserved(&name.to_lowercase()) && !reserved(name),
            Stmt::Infer { entry: Some(e) } => !reserved(e),
            _ => true,
        }
    })
}

proptest! {
    /// parse ∘ print is the identity on syntax trees, so parse ∘ print ∘ parse = parse.
    #[test]
    fn printer_round_trips(stmts in prop::collection::vec(stmt(), 1..5)) {
        let text = print_program(&stmts);
        let parsed = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&parsed, &stmts);
        prop_assert_eq!(parse(&print_program(&parsed)).unwrap(), parsed);
    }
}
