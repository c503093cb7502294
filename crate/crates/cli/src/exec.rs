//! Sequential evaluation of sessions.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use ringlab::amalgam::{
    amalgam_max_expected, amalgam_spec_expected, amalgamation, duplication, has_condition_star, star_sets,
    trivial_extension, AmalgamInstance,
};
use ringlab::ideal::{max_spec, spec};
use ringlab::module::{module_from_ideal, module_from_ring, module_product, module_quotient, module_via_hom};
use ringlab::predicates::{chain_failure, gaussian_direct_check, gaussian_failure, nilpotents, units, zero_divisors};
use ringlab::ring::{
    hom_from_generators, make_hom, make_poly_quotient, make_product, make_quotient, make_zmod_with, Construction,
    Elem, Encoding, Limits, Polynomial,
};
use ringlab::symbolic::{apply_rules, blocked_rules, explain, render, shipped_kb, Atom, KnowledgeBase, Provenance};
use ringlab::verifier::{generate_corpus, search, verify, ClaimId, CorpusBounds, Instance, Profile, Property, Scope, Status};
use ringlab::{Error, FiniteModule, FiniteRing, Ideal, RingHom};

use crate::syntax::{parse, Expr, ExprKind, PolyLit, Pos, Stmt, SyntaxError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub format: Format,
    /// Treat a false property as a failure.
    pub assert: bool,
    pub seed: u64,
    pub limits: Limits,
    /// Degree bound for `check gaussian-direct`.
    pub degree: usize,
    pub samples: usize,
    pub kb: Option<KnowledgeBase>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            format: Format::Text,
            assert: false,
            seed: 0,
            limits: Limits::default(),
            degree: 2,
            samples: 2000,
            kb: None,
        }
    }
}

#[derive(Debug)]
pub enum ExecError {
    Syntax(SyntaxError),
    Type { pos: Pos, message: String },
    Unbound { pos: Pos, name: String },
    Core { pos: Option<Pos>, error: Error },
}

impl ExecError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ExecError::Core {
                error: Error::ResourceCap { .. },
                ..
            } => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for ExecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExecError::Syntax(e) => write!(f, "{e}"),
            ExecError::Type { pos, message } => write!(f, "type error at {pos}: {message}"),
            ExecError::Unbound { pos, name } => write!(f, "unbound name '{name}' at {pos}"),
            ExecError::Core { pos: Some(pos), error } => write!(f, "error at {pos}: {error}"),
            ExecError::Core { pos: None, error } => write!(f, "error: {error}"),
        }
    }
}

impl std::error::Error for ExecError {}

type XResult<T> = std::result::Result<T, ExecError>;

fn core_at(pos: Pos) -> impl Fn(Error) -> ExecError {
    move |error| ExecError::Core { pos: Some(pos), error }
}

fn core(error: Error) -> ExecError {
    ExecError::Core { pos: None, error }
}

#[derive(Clone)]
pub enum Value {
    Ring(FiniteRing),
    Ideal(Ideal),
    Hom(RingHom),
    Amalgam(AmalgamInstance),
    Module(FiniteModule),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Ring(_) => "ring",
            Value::Ideal(_) => "ideal",
            Value::Hom(_) => "homomorphism",
            Value::Amalgam(_) => "amalgamation",
            Value::Module(_) => "module",
        }
    }

    fn describe(&self) -> String {
        match self {
            Value::Ring(r) => format!("ring {} ({} elements)", r.name(), r.size()),
            Value::Ideal(i) => format!("ideal {} of {} ({} elements)", i, i.ring().name(), i.len()),
            Value::Hom(h) => format!("homomorphism {} -> {}", h.domain().name(), h.codomain().name()),
            Value::Amalgam(a) => format!("amalgamation {} ({} elements)", a.digest(), a.a().size()),
            Value::Module(m) => format!("module {} ({} elements)", m, m.size()),
        }
    }
}

/// What a session printed and whether some check failed.
#[derive(Debug, Default)]
pub struct Run {
    pub output: Vec<String>,
    /// A claim was falsified, or a property was false under `--assert`.
    pub failed: bool,
    pub error: Option<ExecError>,
}

impl Run {
    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some(e) => e.exit_code(),
            None if self.failed => 1,
            None => 0,
        }
    }
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    command: &'static str,
    predicate: &'a str,
    target: String,
    value: bool,
    witness: Option<String>,
}

#[derive(Serialize)]
struct ShowRecord {
    command: &'static str,
    target: String,
    value: String,
}

#[derive(Serialize)]
struct SetsRecord {
    command: &'static str,
    target: String,
    sets: Vec<(String, usize)>,
    condition_star: Option<bool>,
}

#[derive(Serialize)]
struct SpecRecord {
    command: &'static str,
    target: String,
    spec: Vec<String>,
    max: Vec<String>,
    matches_description: Option<bool>,
}

#[derive(Serialize)]
struct SearchRecord<'a> {
    command: &'static str,
    profile: &'a str,
    size: usize,
    instance: String,
}

#[derive(Serialize)]
struct FactRecordOut<'a> {
    command: &'static str,
    entry: &'a str,
    attribute: String,
    value: bool,
    source: String,
}

#[derive(Serialize)]
struct BlockedRecord<'a> {
    command: &'static str,
    entry: &'a str,
    rule: String,
    premise: String,
    required: bool,
}

/// A named environment plus the canonical maps recorded by constructions.
pub struct Session {
    opts: Options,
    env: HashMap<String, Value>,
    /// Projections recorded by `quot` and inclusions recorded by `polyquot`.
    canonical: Vec<RingHom>,
    corpus: Option<Vec<Instance>>,
    kb: Option<KnowledgeBase>,
    run: Run,
}

fn structured<T: Serialize>(rec: &T) -> String {
    serde_json::to_string(rec).expect("records serialize")
}

fn show_set(ring: &FiniteRing, set: &ringlab::ElemSet) -> String {
    if set.len() <= 32 {
        ring.fmt_set(set)
    } else {
        format!("({} elements)", set.len())
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Session {
    pub fn new(opts: Options) -> Session {
        Session {
            kb: opts.kb.clone(),
            opts,
            env: HashMap::new(),
            canonical: Vec::new(),
            corpus: None,
            run: Run::default(),
        }
    }

    pub fn value(&self, name: &str) -> Option<&Value> {
        self.env.get(name)
    }

    fn emit(&mut self, line: String) {
        self.run.output.push(line);
    }

    /// Runs every statement in order, stopping at the first error.
    pub fn execute(mut self, stmts: &[Stmt]) -> Run {
        for s in stmts {
            if let Err(e) = self.stmt(s) {
                self.run.error = Some(e);
                break;
            }
        }
        self.run
    }

    fn stmt(&mut self, s: &Stmt) -> XResult<()> {
        match s {
            Stmt::Let { name, expr } => {
                let v = self.eval(expr)?;
                if self.opts.format == Format::Text {
                    self.emit(format!("{name} = {}", v.describe()));
                }
                self.env.insert(name.clone(), v);
            }
            Stmt::Check { predicate, target } => self.check(predicate, target)?,
            Stmt::Zsets(target) => self.zsets(target)?,
            Stmt::Spec(target) => self.spec(target)?,
            Stmt::Verify { claim, targets } => self.verify(claim, targets)?,
            Stmt::Search { profile, max_size } => self.search(profile, *max_size)?,
            Stmt::Infer { entry } => self.infer(entry.as_deref())?,
            Stmt::Explain { entry, atom } => self.explain(entry, atom)?,
            Stmt::Show(e) => {
                let v = self.eval(e)?;
                let line = match self.opts.format {
                    Format::Text => format!("{e} = {}", v.describe()),
                    Format::Structured => structured(&ShowRecord {
                        command: "show",
                        target: e.to_string(),
                        value: v.describe(),
                    }),
                };
                self.emit(line);
            }
        }
        Ok(())
    }

    fn ring(&mut self, e: &Expr) -> XResult<FiniteRing> {
        match self.eval(e)? {
            Value::Ring(r) => Ok(r),
            Value::Amalgam(a) => Ok(a.a().clone()),
            v => self.mismatch(e, "a ring", &v),
        }
    }

    fn ideal(&mut self, e: &Expr) -> XResult<Ideal> {
        match self.eval(e)? {
            Value::Ideal(i) => Ok(i),
            v => self.mismatch(e, "an ideal", &v),
        }
    }

    fn hom(&mut self, e: &Expr) -> XResult<RingHom> {
        match self.eval(e)? {
            Value::Hom(h) => Ok(h),
            v => self.mismatch(e, "a homomorphism", &v),
        }
    }

    fn module(&mut self, e: &Expr) -> XResult<FiniteModule> {
        match self.eval(e)? {
            Value::Module(m) => Ok(m),
            v => self.mismatch(e, "a module", &v),
        }
    }

    fn instance(&mut self, e: &Expr) -> XResult<Instance> {
        match self.eval(e)? {
            Value::Ring(r) => Ok(Instance::Ring(r)),
            Value::Amalgam(a) => Ok(Instance::Amalgam(a)),
            v => self.mismatch(e, "a ring or an amalgamation", &v),
        }
    }

    fn mismatch<T>(&self, e: &Expr, expected: &str, found: &Value) -> XResult<T> {
        Err(ExecError::Type {
            pos: e.pos,
            message: format!("expected {expected}, found {} `{e}`", found.kind()),
        })
    }

    fn element(&self, ring: &FiniteRing, p: &PolyLit, pos: Pos) -> XResult<Elem> {
        let mut acc = ring.zero();
        for t in &p.0 {
            let mut x = ring.from_int(t.coeff);
            if t.exp > 0 {
                let ind = ring.indeterminate().ok_or_else(|| ExecError::Type {
                    pos,
                    message: format!("{} has no indeterminate X", ring.name()),
                })?;
                x = ring.mul(x, ring.pow(ind, t.exp as u64));
            }
            acc = ring.add(acc, x);
        }
        Ok(acc)
    }

    fn find_canonical(&self, from: &FiniteRing, to: &FiniteRing) -> Option<RingHom> {
        if from == to {
            return Some(RingHom::identity(from));
        }
        let mut queue = VecDeque::from([RingHom::identity(from)]);
        let mut seen = vec![from.id()];
        while let Some(h) = queue.pop_front() {
            for edge in self.canonical.iter().filter(|e| e.domain() == h.codomain()) {
                if seen.contains(&edge.codomain().id()) {
                    continue;
                }
                let next = h.compose(edge).ok()?;
                if next.codomain() == to {
                    return Some(next);
                }
                seen.push(edge.codomain().id());
                queue.push_back(next);
            }
        }
        None
    }

    pub fn eval(&mut self, e: &Expr) -> XResult<Value> {
        let at = core_at(e.pos);
        Ok(match &e.kind {
            ExprKind::Name(n) => self.env.get(n).cloned().ok_or_else(|| ExecError::Unbound {
                pos: e.pos,
                name: n.clone(),
            })?,
            ExprKind::Zmod(n) => Value::Ring(make_zmod_with(*n, self.opts.limits).map_err(at)?),
            ExprKind::Gf(p) => {
                if !is_prime(*p) {
                    return Err(ExecError::Type {
                        pos: e.pos,
                        message: format!("gf expects a prime, got {p}"),
                    });
                }
                Value::Ring(make_zmod_with(*p, self.opts.limits).map_err(at)?)
            }
            ExprKind::PolyQuot(base, p) => {
                let base = self.ring(base)?;
                let mut coeffs = Vec::new();
                for t in &p.0 {
                    let k = t.exp as usize;
                    if coeffs.len() <= k {
                        coeffs.resize(k + 1, 0i64);
                    }
                    coeffs[k] += t.coeff;
                }
                let modulus = Polynomial::from_ints(&base, &coeffs);
                let s = make_poly_quotient(&base, &modulus).map_err(&at)?;
                let degree = match s.construction() {
                    Construction::PolyQuotient { low, .. } => low.len(),
                    _ => unreachable!("polyquot builds a polynomial quotient"),
                };
                let map: Vec<Elem> = base
                    .elements()
                    .map(|b| {
                        let mut cs = vec![base.encode(base.zero()); degree];
                        cs[0] = base.encode(b);
                        s.decode(&Encoding::Coeffs(cs)).expect("constants embed")
                    })
                    .collect();
                self.canonical.push(make_hom(&base, &s, map).map_err(at)?);
                Value::Ring(s)
            }
            ExprKind::Product(a, b) => {
                let (a, b) = (self.ring(a)?, self.ring(b)?);
                Value::Ring(make_product(&a, &b).map_err(at)?)
            }
            ExprKind::Quot(r, i) => {
                let r = self.ring(r)?;
                let i_expr = i;
                let i = self.ideal(i)?;
                if i.ring() != &r {
                    return Err(ExecError::Type {
                        pos: i_expr.pos,
                        message: format!("`{i_expr}` is not an ideal of {}", r.name()),
                    });
                }
                let (s, proj) = make_quotient(&r, &i).map_err(at)?;
                if s != r {
                    self.canonical.push(proj);
                }
                Value::Ring(s)
            }
            ExprKind::Ideal(r, elems) => {
                let r = self.ring(r)?;
                let gens = elems
                    .iter()
                    .map(|p| self.element(&r, p, e.pos))
                    .collect::<XResult<Vec<_>>>()?;
                Value::Ideal(Ideal::generated(&r, &gens))
            }
            ExprKind::Canon(a, b) => {
                let (ra, rb) = (self.ring(a)?, self.ring(b)?);
                Value::Hom(self.find_canonical(&ra, &rb).ok_or_else(|| ExecError::Type {
                    pos: e.pos,
                    message: format!(
                        "no canonical map {} -> {}: `{b}` was not built as a quotient of or extension over `{a}`",
                        ra.name(),
                        rb.name()
                    ),
                })?)
            }
            ExprKind::Hom(a, b, map) => {
                let (ra, rb) = (self.ring(a)?, self.ring(b)?);
                let images = map
                    .iter()
                    .map(|(x, y)| Ok((self.element(&ra, x, e.pos)?, self.element(&rb, y, e.pos)?)))
                    .collect::<XResult<Vec<_>>>()?;
                Value::Hom(hom_from_generators(&ra, &rb, &images).map_err(at)?)
            }
            ExprKind::Amalgam(f, j) => {
                let (f, j) = (self.hom(f)?, self.ideal(j)?);
                Value::Amalgam(amalgamation(&f, &j).map_err(at)?)
            }
            ExprKind::Dup(r, i) => {
                let (r, i) = (self.ring(r)?, self.ideal(i)?);
                Value::Amalgam(duplication(&r, &i).map_err(at)?)
            }
            ExprKind::Trivext(r, m) => {
                let (r, m) = (self.ring(r)?, self.module(m)?);
                Value::Amalgam(trivial_extension(&r, &m).map_err(at)?.1)
            }
            ExprKind::ModRing(r) => Value::Module(module_from_ring(&self.ring(r)?)),
            ExprKind::ModIdeal(i) => {
                let i = self.ideal(i)?;
                Value::Module(module_from_ideal(i.ring(), &i).map_err(at)?)
            }
            ExprKind::ModQuot(r, i) => {
                let (r, i) = (self.ring(r)?, self.ideal(i)?);
                Value::Module(module_quotient(&r, &i).map_err(at)?)
            }
            ExprKind::ModProd(m, n) => {
                let (m, n) = (self.module(m)?, self.module(n)?);
                Value::Module(module_product(&m, &n).map_err(at)?)
            }
            ExprKind::ModVia(f, m) => {
                let (f, m) = (self.hom(f)?, self.module(m)?);
                Value::Module(module_via_hom(&f, &m).map_err(at)?)
            }
        })
    }

    fn check(&mut self, predicate: &str, target: &Expr) -> XResult<()> {
        let inst = self.instance(target)?;
        let ring = inst.ring().clone();
        let at = core_at(target.pos);
        let (value, witness) = if predicate == "gaussian-direct" {
            let dc = gaussian_direct_check(&ring, self.opts.degree, self.opts.samples, self.opts.seed).map_err(at)?;
            let coverage = match dc.exhaustive_degree {
                Some(d) => format!("exhaustive to degree {d}, {} samples", dc.samples),
                None => format!("{} samples", dc.samples),
            };
            let w = match &dc.witness {
                Some(w) => format!("{}; {coverage}", w.describe()),
                None => coverage,
            };
            (dc.passed(), Some(w))
        } else {
            let prop: Property = predicate.parse().map_err(&at)?;
            let value = prop.eval(&inst).map_err(&at)?;
            let witness = match prop {
                _ if value => None,
                Property::Gaussian => gaussian_failure(&ring)
                    .map_err(&at)?
                    .map(|(m, w)| format!("at m = {m}: {}", w.describe())),
                Property::Chain | Property::ValuationDomain => chain_failure(&ring).map(|(x, y)| {
                    format!("({}) and ({}) are incomparable", ring.fmt_elem(x), ring.fmt_elem(y))
                }),
                _ => None,
            };
            (value, witness)
        };
        if !value && self.opts.assert {
            self.run.failed = true;
        }
        let line = match self.opts.format {
            Format::Text => match &witness {
                Some(w) => format!("{predicate}({target}) = {value}\n  {w}"),
                None => format!("{predicate}({target}) = {value}"),
            },
            Format::Structured => structured(&CheckRecord {
                command: "check",
                predicate,
                target: target.to_string(),
                value,
                witness,
            }),
        };
        self.emit(line);
        Ok(())
    }

    fn zsets(&mut self, target: &Expr) -> XResult<()> {
        let inst = self.instance(target)?;
        let ring = inst.ring();
        let mut sets = vec![
            ("Z", zero_divisors(ring).clone()),
            ("units", units(ring).clone()),
            ("nilpotents", nilpotents(ring).clone()),
        ];
        let mut star = None;
        if let Some(a) = inst.amalgam() {
            let (s1, s2) = star_sets(a);
            sets.push(("S1 ∪ S2", s1.union(&s2)));
            sets.push(("S1", s1));
            sets.push(("S2", s2));
            star = Some(has_condition_star(a));
        }
        let line = match self.opts.format {
            Format::Text => {
                let mut out = format!("zero divisor sets of {target} ({} elements)", ring.size());
                for (name, set) in &sets {
                    out.push_str(&format!("\n  {name}: {}", show_set(ring, set)));
                }
                if let Some(s) = star {
                    out.push_str(&format!("\n  Z = S1 ∪ S2: {s}"));
                }
                out
            }
            Format::Structured => structured(&SetsRecord {
                command: "zsets",
                target: target.to_string(),
                sets: sets.iter().map(|(n, s)| (n.to_string(), s.len())).collect(),
                condition_star: star,
            }),
        };
        self.emit(line);
        Ok(())
    }

    fn spec(&mut self, target: &Expr) -> XResult<()> {
        let inst = self.instance(target)?;
        let ring = inst.ring();
        let (primes, maxes) = (spec(ring), max_spec(ring));
        let matches = inst.amalgam().map(|a| {
            let same = |x: &[Ideal], y: &[Ideal]| x.len() == y.len() && x.iter().all(|p| y.contains(p));
            same(&primes, &amalgam_spec_expected(a)) && same(&maxes, &amalgam_max_expected(a))
        });
        let names = |v: &[Ideal]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        let line = match self.opts.format {
            Format::Text => {
                let mut out = format!("spec {target}: {}", names(&primes).join(", "));
                out.push_str(&format!("\nmax {target}: {}", names(&maxes).join(", ")));
                if let Some(m) = matches {
                    out.push_str(&format!("\n  matches the description by lifted primes: {m}"));
                }
                out
            }
            Format::Structured => structured(&SpecRecord {
                command: "spec",
                target: target.to_string(),
                spec: names(&primes),
                max: names(&maxes),
                matches_description: matches,
            }),
        };
        if matches == Some(false) {
            self.run.failed = true;
        }
        self.emit(line);
        Ok(())
    }

    fn verify(&mut self, claim: &str, targets: &[Expr]) -> XResult<()> {
        let claims: Vec<ClaimId> = if claim == "all" {
            ClaimId::ALL.to_vec()
        } else {
            vec![claim.parse().map_err(core)?]
        };
        for t in targets {
            let inst = self.instance(t)?;
            for &c in &claims {
                if claim == "all" && c.scope() == Scope::Amalgam && inst.amalgam().is_none() {
                    continue;
                }
                let report = verify(c, &inst).map_err(core_at(t.pos))?;
                if report.status == Status::Falsified {
                    self.run.failed = true;
                }
                let line = match self.opts.format {
                    Format::Text => report.to_text().trim_end().to_string(),
                    Format::Structured => report.to_json(),
                };
                self.emit(line);
            }
        }
        Ok(())
    }

    fn search(&mut self, profile: &str, max_size: Option<usize>) -> XResult<()> {
        let parsed: Profile = profile.parse().map_err(core)?;
        if self.corpus.is_none() {
            self.corpus = Some(generate_corpus(CorpusBounds::default()).map_err(core)?);
        }
        let found = search(&parsed, self.corpus.as_ref().expect("built"), max_size).map_err(core)?;
        if self.opts.format == Format::Text {
            self.emit(format!("{} instances match {parsed}", found.len()));
        }
        for inst in found {
            let line = match self.opts.format {
                Format::Text => format!("  {:>6}  {}", inst.size(), inst.digest()),
                Format::Structured => structured(&SearchRecord {
                    command: "search",
                    profile,
                    size: inst.size(),
                    instance: inst.digest(),
                }),
            };
            self.emit(line);
        }
        Ok(())
    }

    fn derived_kb(&mut self) -> XResult<KnowledgeBase> {
        let kb = self.kb.get_or_insert_with(shipped_kb);
        apply_rules(kb).map_err(core)
    }

    fn infer(&mut self, entry: Option<&str>) -> XResult<()> {
        let kb = self.derived_kb()?;
        let entries: Vec<_> = match entry {
            Some(name) => vec![kb.entry(name).map_err(core)?.clone()],
            None => kb.entries.clone(),
        };
        for e in &entries {
            if self.opts.format == Format::Text {
                self.emit(format!("{}: {}", e.name, e.description));
            }
            for (atom, value) in e.known() {
                let source = match &e.fact(&atom).expect("known").provenance {
                    Some(Provenance::Axiom { citation, external: true }) => format!("axiom [{citation}] (external)"),
                    Some(Provenance::Axiom { citation, .. }) => format!("axiom [{citation}]"),
                    Some(Provenance::Rule { rule, .. }) => format!("rule {rule}"),
                    None => "given".to_string(),
                };
                let line = match self.opts.format {
                    Format::Text => format!("  {atom} = {value}  <- {source}"),
                    Format::Structured => structured(&FactRecordOut {
                        command: "infer",
                        entry: &e.name,
                        attribute: atom.to_string(),
                        value,
                        source,
                    }),
                };
                self.emit(line);
            }
            for b in blocked_rules(e) {
                let line = match self.opts.format {
                    Format::Text => format!("  {} inapplicable: needs {} = {}", b.rule, b.premise, b.required),
                    Format::Structured => structured(&BlockedRecord {
                        command: "infer",
                        entry: &e.name,
                        rule: b.rule,
                        premise: b.premise.to_string(),
                        required: b.required,
                    }),
                };
                self.emit(line);
            }
        }
        Ok(())
    }

    fn explain(&mut self, entry: &str, atom: &str) -> XResult<()> {
        let kb = self.derived_kb()?;
        let atom = Atom::parse(atom).map_err(core)?;
        let d = explain(&kb, entry, &atom).map_err(core)?;
        let line = match self.opts.format {
            Format::Text => render(&d).trim_end().to_string(),
            Format::Structured => structured(&d),
        };
        self.emit(line);
        Ok(())
    }
}

/// Parses and runs a program.
pub fn run_source(source: &str, opts: Options) -> Run {
    match parse(source) {
        Ok(stmts) => Session::new(opts).execute(&stmts),
        Err(e) => Run {
            error: Some(ExecError::Syntax(e)),
            ..Run::default()
        },
    }
}
