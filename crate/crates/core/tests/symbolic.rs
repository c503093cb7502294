use proptest::prelude::*;
use ringlab::symbolic::*;
use ringlab::verifier::{gaussian_non_arithmetical_example, modular_example, truncated_example, ClaimId};
use ringlab::Error;

fn atom(s: &str) -> Atom {
    Atom::parse(s).unwrap()
}

fn resolve(name: &str) -> Option<ringlab::amalgam::AmalgamInstance> {
    match name {
        "truncated" => truncated_example().ok(),
        "modular" => modular_example().ok(),
        "gaussian-non-arithmetical" => gaussian_non_arithmetical_example().ok(),
        _ => None,
    }
}

#[test]
fn prufer_domain_over_local_integers_is_gaussian() {
    let kb = apply_rules(&shipped_kb()).unwrap();
    let e = kb.entry("local-integers-plus-power-series").unwrap();
    assert_eq!(e.value(&atom("A.is_gaussian")), Truth::True);
    assert_eq!(e.value(&atom("A.is_prufer")), Truth::True);
    assert_eq!(e.value(&atom("A.is_domain")), Truth::True);
    assert_eq!(e.value(&atom("J.J_square_zero")), Truth::False);

    let blocked = blocked_rules(e);
    for id in ["T-gauss-fwd", "T-gauss-bwd"] {
        assert!(
            blocked
                .iter()
                .any(|b| b.rule == id && b.premise == atom("J.J_subset_fR") && b.required),
            "{id} not blocked: {blocked:?}"
        );
    }

    let d = explain(&kb, "local-integers-plus-power-series", &atom("A.is_gaussian")).unwrap();
    assert_eq!(d.source, "rule prufer-domain⇒gaussian");
    assert_eq!(d.children.len(), 2);
    assert!(d.children.iter().all(|c| c.source == "axiom [ht07 Theorem 1.3] (external)"));
    let text = render(&d);
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("A.is_gaussian = true  <- rule prufer-domain⇒gaussian\n"), "{text}");
}

#[test]
fn integers_plus_power_series_is_arithmetical_without_divisibility() {
    let kb = apply_rules(&shipped_kb()).unwrap();
    let e = kb.entry("integers-plus-power-series").unwrap();
    assert_eq!(e.value(&atom("A.is_arithmetical")), Truth::True);
    assert_eq!(e.value(&atom("J.J_locally_divisible")), Truth::False);
    let blocked = blocked_rules(e);
    assert!(blocked
        .iter()
        .any(|b| b.rule.starts_with("C-arith-1") && b.premise == atom("J.J_square_zero")));
    assert!(blocked
        .iter()
        .any(|b| b.rule.starts_with("C-arith-2") && b.premise == atom("J.J_subset_fR")));
}

#[test]
fn domain_extension_rule_and_trivial_extension_counterexample() {
    assert!(!rules_of_claim(ClaimId::CDomainExt).is_empty());
    let kb = apply_rules(&shipped_kb()).unwrap();
    let e = kb.entry("integers-by-rationals").unwrap();
    assert_eq!(e.value(&atom("A.is_prufer")), Truth::True);
    let d = explain(&kb, "integers-by-rationals", &atom("A.is_prufer")).unwrap();
    assert_eq!(d.source, "rule C-domain-ext (⇐)");

    let e = kb.entry("non-valuation-trivial-extension").unwrap();
    assert_eq!(e.value(&atom("A.is_prufer")), Truth::True);
    assert_eq!(e.value(&atom("R.is_prufer")), Truth::False);
    assert!(blocked_rules(e)
        .iter()
        .any(|b| b.rule == "C-trivext-1" && b.premise == atom("J.J_zero_divisors_in_Z_R")));
    let d = explain(&kb, "non-valuation-trivial-extension", &atom("A.is_prufer")).unwrap();
    assert!(d.children[0].source.contains("L86 Proposition 3.1(a)"));
}

#[test]
fn final_analogue_explains_non_arithmetical() {
    let kb = apply_rules(&shipped_kb()).unwrap();
    let d = explain(&kb, "gaussian-non-arithmetical", &atom("A.is_arithmetical")).unwrap();
    assert!(!d.value);
    assert_eq!(d.source, "rule C-arith-2 (⇒) contrapositive");
    assert!(d.children.iter().any(|c| c.atom == atom("J.J_local_zero") && !c.value));
    let e = kb.entry("gaussian-non-arithmetical").unwrap();
    assert_eq!(e.value(&atom("A.is_gaussian")), Truth::True);
}

#[test]
fn explain_on_axiom_is_single_node() {
    let kb = shipped_kb();
    let d = explain(&kb, "integers-plus-power-series", &atom("A.is_arithmetical")).unwrap();
    assert!(d.children.is_empty());
    assert!(matches!(
        explain(&kb, "integers-plus-power-series", &atom("A.is_chain")),
        Err(Error::Query(_))
    ));
    assert!(matches!(Atom::parse("A.is_noetherian"), Err(Error::Query(_))));
    assert!(matches!(Atom::parse("f.is_prufer"), Err(Error::Query(_))));
}

#[test]
fn trivial_kb_derives_nothing() {
    let kb = KnowledgeBase {
        entries: vec![Entry {
            name: "empty".into(),
            description: String::new(),
            instance: None,
            records: Vec::new(),
            rules: Vec::new(),
        }],
    };
    assert_eq!(apply_rules(&kb).unwrap(), kb);
    assert_eq!(apply_rules(&KnowledgeBase::default()).unwrap(), KnowledgeBase::default());
}

#[test]
fn contradiction_names_both_chains() {
    let text = r#"{"entries":[{"name":"bad","records":[
        {"entity":"A","attributes":{"is_prufer":{"value":"true","provenance":{"kind":"axiom","citation":"x","external":false}}}},
        {"entity":"f","attributes":{"f_reg_to_reg":{"value":"true","provenance":{"kind":"axiom","citation":"y","external":false}}}},
        {"entity":"R","attributes":{"is_prufer":{"value":"false","provenance":{"kind":"axiom","citation":"z","external":false}}}}
    ]}]}"#;
    let kb = KnowledgeBase::from_json(text).unwrap();
    match apply_rules(&kb) {
        Err(Error::Inconsistent(msg)) => {
            assert!(msg.contains("R.is_prufer = false  <- axiom [z]"), "{msg}");
            assert!(msg.contains("R.is_prufer = true  <- rule T-main-1"), "{msg}");
        }
        other => panic!("expected inconsistency, got {other:?}"),
    }
}

#[test]
fn value_without_provenance_is_rejected() {
    let text = r#"{"entries":[{"name":"bad","records":[{"entity":"A","attributes":{"is_prufer":{"value":"true"}}}]}]}"#;
    assert!(matches!(KnowledgeBase::from_json(text), Err(Error::Input(_))));
    let text = r#"{"entries":[{"name":"bad","records":[{"entity":"A","attributes":{"is_noetherian":{"value":"unknown"}}}]}]}"#;
    assert!(KnowledgeBase::from_json(text).is_err());
}

#[test]
fn kb_round_trips_losslessly() {
    let kb = shipped_kb();
    let again = KnowledgeBase::from_json(&kb.to_json()).unwrap();
    assert_eq!(again, kb);
    let derived = apply_rules(&kb).unwrap();
    assert_eq!(KnowledgeBase::from_json(&derived.to_json()).unwrap(), derived);
}

#[test]
fn fixed_point_is_idempotent() {
    let once = apply_rules(&shipped_kb()).unwrap();
    assert_eq!(apply_rules(&once).unwrap(), once);
}

#[test]
fn bridge_agrees_with_computation() {
    let (checked, mismatches) = consistency_bridge(&shipped_kb(), resolve).unwrap();
    assert!(checked >= 15, "only {checked} attributes checked");
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

proptest! {
    /// Every registry rule mentions only vocabulary atoms, and an entry holding
    /// just the premises of one rule derives its consequence.
    #[test]
    fn single_rule_fires(idx in 0usize..10_000) {
        let rules = registry_rules();
        let rule = &rules[idx % rules.len()];
        let mut records: Vec<FactRecord> = Vec::new();
        for (a, v) in &rule.premises {
            let pos = match records.iter().position(|r| r.entity == a.entity) {
                Some(p) => p,
                None => {
                    records.push(FactRecord { entity: a.entity.clone(), ..Default::default() });
                    records.len() - 1
                }
            };
            records[pos].attributes.insert(a.attribute.clone(), Fact {
                value: (*v).into(),
                provenance: Some(Provenance::Axiom { citation: "test".into(), external: false }),
            });
        }
        let kb = KnowledgeBase { entries: vec![Entry {
            name: "e".into(), description: String::new(), instance: None, records, rules: Vec::new(),
        }] };
        match apply_rules(&kb) {
            Ok(out) => {
                let (a, v) = &rule.consequence;
                prop_assert_eq!(out.entries[0].value(a), Truth::from(*v));
            }
            // premises that contradict a theorem are never realized
            Err(Error::Inconsistent(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
