use ringlab::ideal::Ideal;
use ringlab::predicates::units;
use ringlab::ring::{
    hom_from_generators, make_hom, make_poly_quotient, make_product, make_quotient, make_zmod, Elem, FiniteRing,
    Polynomial,
};
use ringlab::Error;

fn e(n: u32) -> Elem {
    Elem(n)
}

fn gf2_poly(k: usize) -> FiniteRing {
    let f2 = make_zmod(2).unwrap();
    make_poly_quotient(&f2, &Polynomial::monomial(&f2, k)).unwrap()
}

#[test]
fn zmod_basics() {
    let r = make_zmod(6).unwrap();
    assert_eq!(r.size(), 6);
    assert_eq!(r.mul(e(2), e(3)), r.zero());
    assert!(r.is_unit(e(5)));
    assert_eq!(make_zmod(48).unwrap().size(), 48);
    assert!(matches!(make_zmod(1), Err(Error::Input(_))));
    assert!(matches!(make_zmod(0), Err(Error::Input(_))));
    r.check_axioms().unwrap();
}

#[test]
fn poly_quotients() {
    let r = gf2_poly(2);
    assert_eq!(r.size(), 4);
    let x = r.indeterminate().unwrap();
    assert_eq!(r.fmt_elem(x), "X");
    assert_eq!(r.mul(x, x), r.zero());
    let names: Vec<String> = r.elements().map(|a| r.fmt_elem(a)).collect();
    assert_eq!(names, ["0", "1", "X", "X+1"]);
    r.check_axioms().unwrap();

    let big = gf2_poly(8);
    assert_eq!(big.size(), 256);
    assert!(ringlab::ideal::is_local(&big));

    let z4 = make_zmod(4).unwrap();
    let lin = make_poly_quotient(&z4, &Polynomial::from_ints(&z4, &[-1, 1])).unwrap();
    assert_eq!(lin.size(), 4);
    assert_eq!(lin.indeterminate(), Some(lin.one()));
    let to_z4 = make_hom(&lin, &z4, lin.elements().collect()).unwrap();
    assert!(to_z4.is_bijective());

    let not_monic = Polynomial::from_ints(&z4, &[1, 2]);
    assert!(matches!(make_poly_quotient(&z4, &not_monic), Err(Error::Input(_))));
}

#[test]
fn products_and_quotients() {
    let p = make_product(&make_zmod(2).unwrap(), &make_zmod(3).unwrap()).unwrap();
    assert_eq!(p.size(), 6);
    p.check_axioms().unwrap();
    let z6 = make_zmod(6).unwrap();
    let crt = hom_from_generators(&z6, &p, &[(z6.one(), p.one())]).unwrap();
    assert!(crt.is_bijective());
    let (e1, e2) = (Elem(3), Elem(1)); // (1,0) and (0,1)
    assert_eq!(p.fmt_elem(e2), "(0, 1)");
    assert_eq!(p.fmt_elem(e1), "(1, 0)");
    assert_eq!(p.mul(e1, e2), p.zero());

    let big = make_product(&make_zmod(48).unwrap(), &make_zmod(24).unwrap()).unwrap();
    assert_eq!(big.size(), 1152);

    let z48 = make_zmod(48).unwrap();
    let (z24, proj) = make_quotient(&z48, &Ideal::principal(&z48, e(24))).unwrap();
    assert_eq!(z24.size(), 24);
    assert_eq!(proj.apply(z48.one()), z24.one());
    assert!(proj.is_surjective());
    let (same, id) = make_quotient(&z48, &Ideal::zero(&z48)).unwrap();
    assert_eq!(same, z48);
    assert!(id.is_identity());
    assert!(make_quotient(&z48, &Ideal::unit(&z48)).is_err());

    let r8 = gf2_poly(8);
    let x = r8.indeterminate().unwrap();
    let (r4, _) = make_quotient(&r8, &Ideal::principal(&r8, r8.pow(x, 4))).unwrap();
    assert_eq!(r4.size(), 16);
    let x4 = r4.indeterminate().unwrap();
    assert_eq!(r4.pow(x4, 4), r4.zero());
    assert_ne!(r4.pow(x4, 3), r4.zero());
    r4.check_axioms().unwrap();
}

#[test]
fn hom_validation() {
    let z6 = make_zmod(6).unwrap();
    assert!(make_hom(&z6, &z6, z6.elements().collect()).unwrap().is_identity());
    let z4 = make_zmod(4).unwrap();
    let z2 = make_zmod(2).unwrap();
    let red = hom_from_generators(&z4, &z2, &[(z4.one(), z2.one())]).unwrap();
    assert_eq!(red.apply(e(3)), e(1));
    let z3 = make_zmod(3).unwrap();
    match make_hom(&z2, &z3, vec![e(0), e(1)]) {
        Err(Error::Validation(msg)) => assert!(msg.contains('1'), "{msg}"),
        other => panic!("expected validation error, got {other:?}"),
    }
    assert!(hom_from_generators(&z2, &z3, &[(z2.one(), z3.one())]).is_err());
}

#[test]
fn unit_groups() {
    let z6 = make_zmod(6).unwrap();
    assert_eq!(units(&z6).to_vec(), vec![e(1), e(5)]);
    let r = gf2_poly(2);
    let shown: Vec<String> = units(&r).iter().map(|u| r.fmt_elem(u)).collect();
    assert_eq!(shown, ["1", "X+1"]);
    assert_eq!(units(&make_zmod(3).unwrap()).to_vec(), vec![e(1), e(2)]);
}

#[test]
fn gf4_is_a_field() {
    let f2 = make_zmod(2).unwrap();
    let f4 = make_poly_quotient(&f2, &Polynomial::from_ints(&f2, &[1, 1, 1])).unwrap();
    assert_eq!(units(&f4).len(), 3);
    assert!(ringlab::predicates::is_field(&f4));
    f4.check_axioms().unwrap();
}
