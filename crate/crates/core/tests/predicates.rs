use proptest::prelude::*;
use ringlab::amalgam::{amalgamation, trivial_extension, AmalgamInstance};
use ringlab::ideal::{all_ideals, max_spec, Ideal};
use ringlab::module::{localize_at_prime, module_from_ring, module_product};
use ringlab::predicates::*;
use ringlab::ring::{make_poly_quotient, make_product, make_quotient, make_zmod, Elem, FiniteRing, Polynomial};

fn e(n: u32) -> Elem {
    Elem(n)
}

fn gf2_poly(k: usize) -> FiniteRing {
    let f2 = make_zmod(2).unwrap();
    make_poly_quotient(&f2, &Polynomial::monomial(&f2, k)).unwrap()
}

fn example_44() -> AmalgamInstance {
    let r = gf2_poly(8);
    let x = r.indeterminate().unwrap();
    let (s, f) = make_quotient(&r, &Ideal::principal(&r, r.pow(x, 4))).unwrap();
    let xs = s.indeterminate().unwrap();
    amalgamation(&f, &Ideal::principal(&s, s.mul(xs, xs))).unwrap()
}

fn f2_trivext() -> FiniteRing {
    let f2 = make_zmod(2).unwrap();
    let m = module_product(&module_from_ring(&f2), &module_from_ring(&f2)).unwrap();
    trivial_extension(&f2, &m).unwrap().0
}

/// Tsang pair test written against freshly generated ideals, no shortcuts.
fn pair_test_oracle(ring: &FiniteRing) -> bool {
    ring.elements().all(|a| {
        ring.elements().all(|b| {
            let (aa, ab, bb) = (ring.mul(a, a), ring.mul(a, b), ring.mul(b, b));
            let sq = Ideal::generated(ring, &[aa, ab, bb]);
            let pa = Ideal::principal(ring, aa);
            let pb = Ideal::principal(ring, bb);
            let first = sq == pa || sq == pb;
            let second = !(sq == pa && ab == Elem::ZERO) || bb == Elem::ZERO;
            first && second
        })
    })
}

#[test]
fn element_classes() {
    let z8 = make_zmod(8).unwrap();
    assert_eq!(zero_divisors(&z8).to_vec(), vec![e(0), e(2), e(4), e(6)]);
    let r = gf2_poly(4);
    let reg = regular_elements(&r);
    assert_eq!(reg.len(), 8);
    assert_eq!(reg, *units(&r));
    assert!(is_total_quotient_ring(&make_zmod(6).unwrap()));
    assert!(is_total_quotient_ring(&gf2_poly(8)));
}

#[test]
fn regular_total_order_variants() {
    let z48 = make_zmod(48).unwrap();
    let two = Ideal::principal(&z48, e(2));
    assert!(regular_total_order(&z48, &two).unwrap());
    assert!(regular_total_order_by_pairs(&z48, &two).unwrap());
    assert!(matches!(
        regular_total_order(&z48, &Ideal::principal(&z48, e(4))),
        Err(ringlab::Error::Precondition(_))
    ));
    // Z(Z/12) = {0,2,3,4,6,8,9,10} is not inside Jac = (6)
    let z12 = make_zmod(12).unwrap();
    assert!(matches!(
        regular_total_order_fast(&z12, &Ideal::principal(&z12, e(2))),
        Err(ringlab::Error::Precondition(_))
    ));
    let z8 = make_zmod(8).unwrap();
    assert!(regular_total_order_fast(&z8, &Ideal::principal(&z8, e(2))).unwrap());
}

#[test]
fn chain_arithmetical_valuation() {
    assert!(is_chain_ring(&make_zmod(8).unwrap()));
    let z12 = make_zmod(12).unwrap();
    assert!(!is_chain_ring(&z12));
    assert!(is_arithmetical(&z12).unwrap());
    let t = f2_trivext();
    assert!(!is_arithmetical(&t).unwrap());
    assert!(is_valuation_domain(&make_zmod(5).unwrap()));
    assert!(!is_valuation_domain(&make_zmod(4).unwrap()));
}

#[test]
fn gaussian_examples() {
    assert!(is_gaussian(&make_zmod(4).unwrap()).unwrap());
    let t = f2_trivext();
    assert!(gaussian_local_test(&t).unwrap().is_none());
    assert!(pair_test_oracle(&t));
    assert!(matches!(gaussian_local_test(&make_zmod(6).unwrap()), Err(ringlab::Error::Precondition(_))));
}

#[test]
fn example_44_predicates() {
    let inst = example_44();
    let a = inst.a();
    assert!(is_prufer(a).unwrap());
    assert!(is_total_quotient_ring(a));
    let (_, w) = gaussian_failure(a).unwrap().expect("not Gaussian");
    assert!(w.recheck(), "{}", w.describe());
    let direct = gaussian_direct_check(a, 2, 20_000, 7).unwrap();
    let w = direct.witness.expect("content violation");
    assert!(w.recheck());
    assert!(!w.describe().is_empty());
}

#[test]
fn contents() {
    let z4 = make_zmod(4).unwrap();
    let p = Polynomial::from_ints(&z4, &[2, 2]);
    assert_eq!(content(&p), Ideal::principal(&z4, e(2)));
}

#[test]
fn direct_check_on_chain_rings() {
    for r in [make_zmod(4).unwrap(), gf2_poly(2), make_zmod(3).unwrap()] {
        let c = gaussian_direct_check(&r, 3, 0, 1).unwrap();
        assert_eq!(c.exhaustive_degree, Some(3));
        assert!(c.passed());
    }
}

fn small_ring() -> impl Strategy<Value = FiniteRing> {
    prop_oneof![
        (2u64..=40).prop_map(|n| make_zmod(n).unwrap()),
        (2usize..=5).prop_map(gf2_poly),
        (2u64..=6, 2u64..=6).prop_map(|(a, b)| make_product(&make_zmod(a).unwrap(), &make_zmod(b).unwrap()).unwrap()),
        Just(f2_trivext()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn predicate_invariants(r in small_ring()) {
        // every element of a finite ring is a unit or a zero-divisor, never both
        prop_assert!(units(&r).intersection(zero_divisors(&r)).is_empty());
        prop_assert!(is_total_quotient_ring(&r));
        prop_assert_eq!(&regular_elements(&r), units(&r));
        prop_assert!(is_prufer(&r).unwrap());

        let chain = is_chain_ring(&r);
        let arith = is_arithmetical(&r).unwrap();
        let gauss = is_gaussian(&r).unwrap();
        prop_assert!(!chain || arith);
        prop_assert!(!arith || gauss);

        // chain test by principal ideals agrees with all ideals being comparable
        let ideals = all_ideals(&r).unwrap();
        let total = ideals.iter().all(|a| ideals.iter().all(|b| a.is_subset(b) || b.is_subset(a)));
        prop_assert_eq!(chain, total);

        for m in max_spec(&r) {
            prop_assert_eq!(regular_total_order(&r, &m).unwrap(), regular_total_order_by_pairs(&r, &m).unwrap());
            if zero_divisors_in_jacobson(&r) {
                prop_assert_eq!(regular_total_order_fast(&r, &m).unwrap(), regular_total_order(&r, &m).unwrap());
            }
            let (local, _) = localize_at_prime(&r, &m).unwrap();
            prop_assert_eq!(gaussian_local_test(&local).unwrap().is_none(), pair_test_oracle(&local));
        }

        if is_domain(&r) {
            prop_assert!(is_field(&r));
            prop_assert!(gauss && arith);
        }

        let direct = gaussian_direct_check(&r, 3, 300, 11).unwrap();
        if gauss {
            prop_assert!(direct.passed());
        }
        if let Some(w) = &direct.witness {
            prop_assert!(w.recheck());
        }
    }
}
