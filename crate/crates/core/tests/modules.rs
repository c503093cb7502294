use proptest::prelude::*;
use ringlab::ideal::{max_spec, spec, Ideal};
use ringlab::module::*;
use ringlab::predicates::{regular_elements, zero_divisors};
use ringlab::ring::{hom_from_generators, make_poly_quotient, make_quotient, make_zmod, Elem, FiniteRing, Polynomial};
use ringlab::ElemSet;

fn e(n: u32) -> Elem {
    Elem(n)
}

fn gf2_poly(k: usize) -> FiniteRing {
    let f2 = make_zmod(2).unwrap();
    make_poly_quotient(&f2, &Polynomial::monomial(&f2, k)).unwrap()
}

fn f2_squared() -> FiniteModule {
    let f2 = make_zmod(2).unwrap();
    module_product(&module_from_ring(&f2), &module_from_ring(&f2)).unwrap()
}

/// `J = (6)` in `Z/24`, viewed over `Z/48` through the canonical surjection.
fn example_j() -> FiniteModule {
    let z48 = make_zmod(48).unwrap();
    let (z24, f) = make_quotient(&z48, &Ideal::principal(&z48, e(24))).unwrap();
    let j = module_from_ideal(&z24, &Ideal::principal(&z24, e(6))).unwrap();
    module_via_hom(&f, &j).unwrap()
}

fn brute_submodules(m: &FiniteModule) -> Vec<ElemSet> {
    let n = m.size();
    assert!(n <= 16);
    let r = m.base();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let set = ElemSet::from_elems(n, m.elements().filter(|x| mask >> x.0 & 1 == 1));
        let closed = set.iter().all(|a| {
            set.iter().all(|b| set.contains(m.add(a, b))) && r.elements().all(|s| set.contains(m.act(s, a)))
        });
        if closed {
            out.push(set);
        }
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

#[test]
fn constructors() {
    let z4 = make_zmod(4).unwrap();
    let m = module_from_ideal(&z4, &Ideal::principal(&z4, e(2))).unwrap();
    assert_eq!(m.size(), 2);
    assert_eq!(m.fmt_elem(e(1)), "2");
    assert_eq!(m.act(e(2), e(1)), m.zero());
    m.check_axioms().unwrap();

    let v = f2_squared();
    assert_eq!(v.size(), 4);
    v.check_axioms().unwrap();

    let j = example_j();
    assert_eq!(j.size(), 4);
    assert_eq!(j.base().size(), 48);
    j.check_axioms().unwrap();

    let q = module_quotient(&z4, &Ideal::principal(&z4, e(2))).unwrap();
    assert_eq!(q.size(), 2);
    q.check_axioms().unwrap();

    let z2 = make_zmod(2).unwrap();
    assert!(module_product(&m, &module_from_ring(&z2)).is_err());
}

#[test]
fn zero_divisors_and_torsion() {
    let z4 = make_zmod(4).unwrap();
    let m = module_from_ideal(&z4, &Ideal::principal(&z4, e(2))).unwrap();
    assert_eq!(zero_divisors_on(&m).to_vec(), vec![e(0), e(2)]);
    let z12 = make_zmod(12).unwrap();
    assert_eq!(zero_divisors_on(&module_from_ring(&z12)), *zero_divisors(&z12));

    // oracle: r * 6k ≡ 0 (mod 24) for some k in 1..=3
    let oracle: Vec<Elem> = (0..48u32).filter(|r| (1..=3).any(|k| r * 6 * k % 24 == 0)).map(Elem).collect();
    assert_eq!(zero_divisors_on(&example_j()).to_vec(), oracle);

    let f3 = make_zmod(3).unwrap();
    assert!(!is_torsion(&module_from_ring(&f3)));
    let zero = module_from_ideal(&f3, &Ideal::zero(&f3)).unwrap();
    assert!(is_torsion(&zero));
    assert!(!is_torsion(&example_j()));
}

#[test]
fn lattices() {
    let z4 = make_zmod(4).unwrap();
    assert!(is_uniserial(&module_from_ring(&z4)));
    let v = f2_squared();
    assert!(!is_uniserial(&v));
    assert_eq!(submodules(&v).unwrap().len(), 5);
    assert!(!has_distributive_lattice(&v).unwrap());
    let (a, b, c) = distributive_failure(&v).unwrap().unwrap();
    let lhs = a.sum(&b).intersection(&c);
    let rhs = a.intersection(&c).sum(&b.intersection(&c));
    assert_ne!(lhs, rhs);

    let r = gf2_poly(3);
    let x = r.indeterminate().unwrap();
    let xm = module_from_ideal(&r, &Ideal::principal(&r, x)).unwrap();
    assert!(is_uniserial(&xm));
    assert!(has_distributive_lattice(&xm).unwrap());
}

#[test]
fn ring_localization() {
    let z12 = make_zmod(12).unwrap();
    let two = Ideal::principal(&z12, e(2));
    let set = MultiplicativeSet::complement(&two);
    assert_eq!(localization_kernel(&set).members().to_vec(), vec![e(0), e(4), e(8)]);
    let (l, map) = localize_ring(&z12, &set).unwrap();
    assert_eq!(l.size(), 4);
    let z4 = make_zmod(4).unwrap();
    assert!(hom_from_generators(&z4, &l, &[(z4.one(), l.one())]).unwrap().is_bijective());
    assert_eq!(map.apply(e(5)), map.apply(e(1)));

    let (same, id) = localize_ring(&z12, &MultiplicativeSet::new(&z12, [])).unwrap();
    assert_eq!(same, z12);
    assert!(id.is_identity());

    let (l3, _) = localize_at_prime(&z12, &Ideal::principal(&z12, e(3))).unwrap();
    assert_eq!(l3.size(), 3);
    assert!(localize_at_prime(&z12, &Ideal::principal(&z12, e(4))).is_err());
}

#[test]
fn module_localization_and_support() {
    let j = example_j();
    let z48 = j.base().clone();
    let supp = support(&j);
    assert_eq!(supp, vec![Ideal::principal(&z48, e(2))]);
    // oracle: an odd u never kills a nonzero multiple of 6 mod 24, while u = 4 kills all
    assert!((1..48u32).step_by(2).all(|u| (1..=3).all(|k| u * 6 * k % 24 != 0)));
    assert!((1..=3).all(|k| 4 * 6 * k % 24 == 0));

    let f3 = make_zmod(3).unwrap();
    let zero = module_from_ideal(&f3, &Ideal::zero(&f3)).unwrap();
    assert!(support(&zero).is_empty());

    let v = f2_squared();
    let m = &max_spec(v.base())[0];
    assert_eq!(localize_module_at_prime(&v, m).unwrap().size(), 4);
}

#[test]
fn local_divisibility() {
    let f3 = make_zmod(3).unwrap();
    let zero = module_from_ideal(&f3, &Ideal::zero(&f3)).unwrap();
    assert!(is_locally_divisible(&zero));
    let f2 = make_zmod(2).unwrap();
    assert!(is_locally_divisible(&module_from_ring(&f2)));
    let z4 = make_zmod(4).unwrap();
    assert!(!is_locally_divisible(&module_from_ideal(&z4, &Ideal::principal(&z4, e(2))).unwrap()));
}

fn small_ring() -> impl Strategy<Value = FiniteRing> {
    prop_oneof![
        (2u64..=36).prop_map(|n| make_zmod(n).unwrap()),
        (2usize..=4).prop_map(gf2_poly),
    ]
}

fn small_module() -> impl Strategy<Value = FiniteModule> {
    (small_ring(), any::<prop::sample::Index>(), any::<bool>()).prop_map(|(r, idx, quotient)| {
        let ideals = ringlab::ideal::all_ideals(&r).unwrap();
        let i = &ideals[idx.index(ideals.len() - 1)];
        if quotient {
            module_quotient(&r, i).unwrap()
        } else {
            module_from_ideal(&r, i).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn regular_elements_stay_regular(r in small_ring(), gens in prop::collection::vec(0u32..64, 0..3)) {
        let gens: Vec<Elem> = gens.into_iter().map(|g| Elem(g % r.size() as u32)).collect();
        let set = MultiplicativeSet::new(&r, gens);
        prop_assume!(!set.contains(r.zero()));
        let (l, map) = localize_ring(&r, &set).unwrap();
        let reg = regular_elements(&r);
        let reg_l = regular_elements(&l);
        for x in reg.iter() {
            prop_assert!(reg_l.contains(map.apply(x)));
        }
        let avoids_zd = set.members().intersection(zero_divisors(&r)).is_empty();
        if avoids_zd {
            for x in r.elements() {
                prop_assert_eq!(reg.contains(x), reg_l.contains(map.apply(x)));
            }
        }
        for u in set.members().iter() {
            prop_assert!(l.is_unit(map.apply(u)));
        }
    }

    #[test]
    fn module_invariants(m in small_module()) {
        m.check_axioms().unwrap();
        if m.size() <= 16 {
            let subs: Vec<ElemSet> = submodules(&m).unwrap().iter().map(|s| s.members().clone()).collect();
            let brute = brute_submodules(&m);
            prop_assert_eq!(&subs, &brute);
            let pairwise = brute.iter().all(|a| brute.iter().all(|b| a.comparable(b)));
            prop_assert_eq!(is_uniserial(&m), pairwise);
        }
        let local_uniserial = max_spec(m.base())
            .iter()
            .all(|p| is_uniserial(&localize_module_at_prime(&m, p).unwrap()));
        prop_assert_eq!(has_distributive_lattice(&m).unwrap(), local_uniserial);
        let supp: Vec<Ideal> = spec(m.base())
            .into_iter()
            .filter(|p| localize_module_at_prime(&m, p).unwrap().size() > 1)
            .collect();
        prop_assert_eq!(support(&m), supp);
    }
}
