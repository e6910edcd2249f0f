use super::*;
use crate::coeff::{ints, FGModule, Ring};

fn z() -> Ring {
    Ring::Integers
}

fn m(ring: &Ring, f: &[i64]) -> FGModule {
    FGModule::from_i64(ring.clone(), f).unwrap()
}

fn zz() -> FGModule {
    m(&z(), &[0])
}

/// `Z →×k Z` in degrees `n, n+1`.
fn times(k: i64, n: i64) -> Complex {
    Complex::from_parts(z(), n, vec![zz(), zz()], vec![Matrix::from_i64(&[&[k]]), Matrix::zeros(0, 1)]).unwrap()
}

#[test]
fn d_squared_nonzero_is_rejected() {
    let err = Complex::from_parts(
        z(),
        0,
        vec![zz(), zz(), zz()],
        vec![Matrix::from_i64(&[&[1]]), Matrix::from_i64(&[&[1]]), Matrix::zeros(0, 1)],
    )
    .unwrap_err();
    assert!(matches!(err, Error::NotAComplex(_)));
}

#[test]
fn trimming_and_zero_complex() {
    let c = Complex::from_parts(
        z(),
        -2,
        vec![FGModule::zero(z()), zz(), FGModule::zero(z())],
        vec![Matrix::zeros(1, 0), Matrix::zeros(0, 1), Matrix::zeros(0, 0)],
    )
    .unwrap();
    assert_eq!(c, sphere(&zz(), -1));
    assert!(cylinder(&Complex::zero(z())).complex.is_zero());
}

#[test]
fn sphere_and_disk_homology() {
    let s = sphere(&zz(), 0);
    assert!(s.homology(0).is_isomorphic(&zz()));
    assert!(s.homology(1).is_zero() && s.homology(-1).is_zero());
    for e in [zz(), m(&z(), &[0, 6])] {
        assert!(disk(&e, 3).is_acyclic());
    }
    let inc = disk_inclusion(&zz(), 0);
    assert_eq!(inc.matrix(1), Matrix::identity(1));
}

#[test]
fn times_two_homology() {
    let c = times(2, 0);
    assert!(c.homology(0).is_zero());
    assert!(c.homology(1).is_isomorphic(&m(&z(), &[2])));
}

#[test]
fn cone_examples() {
    let e = m(&z(), &[0, 4]);
    let id = ChainMap::identity(&sphere(&e, 1));
    let c = cone(&id);
    assert_eq!(c.complex, disk(&e, 0));
    assert_eq!(c.u, disk_inclusion(&e, 0));

    let x = times(2, 0);
    let zero_in = ChainMap::zero(&Complex::zero(z()), &x);
    assert_eq!(cone(&zero_in).complex, x);

    assert!(cone(&ChainMap::identity(&x)).complex.is_acyclic());
    check_short_exact(&c.u, &c.v).unwrap();
}

#[test]
fn cylinder_of_sphere() {
    let s = sphere(&zz(), 0);
    let cyl = cylinder(&s);
    assert_eq!(cyl.complex.module(-1).rank(), 1);
    assert_eq!(cyl.complex.module(0).rank(), 2);
    assert!(cyl.complex.homology(-1).is_zero());
    assert!(cyl.complex.homology(0).is_isomorphic(&zz()));
    assert_eq!(cyl.sigma.compose(&cyl.i0), ChainMap::identity(&s));
    assert_eq!(cyl.sigma.compose(&cyl.i1), ChainMap::identity(&s));
    assert!(cyl.sigma.is_quasi_isomorphism());
    let codiagonal = ChainMap::identity(&s).hstack(&ChainMap::identity(&s));
    assert_eq!(cyl.sigma.compose(&cyl.i0.hstack(&cyl.i1)), codiagonal);
}

#[test]
fn shift_examples() {
    let c = times(3, 0);
    assert_eq!(shift(&c, 0), c);
    assert_eq!(shift(&shift(&c, 1), -1), c);
    assert_eq!(shift(&sphere(&zz(), 2), 5), sphere(&zz(), -3));
    assert_eq!(shift(&c, 1).d(-1), Matrix::from_i64(&[&[-3]]));
}

#[test]
fn hom_complex_examples() {
    let c = times(2, 0);
    let h = hom_complex(&sphere(&zz(), 0), &c).unwrap();
    assert_eq!(h, c);

    let z2 = m(&z(), &[2]);
    let s = sphere(&z2, 0);
    assert!(homotopy_classes(&s, &s, 0).unwrap().is_isomorphic(&z2));
    assert!(homotopy_classes(&s, &s, 1).unwrap().is_zero());
    assert!(homotopy_classes(&s, &s, -1).unwrap().is_zero());
}

#[test]
fn disk_is_contractible() {
    let d = disk(&zz(), 0);
    assert!(homotopy_classes(&d, &d, 0).unwrap().is_zero());
    let h = find_homotopy(&ChainMap::identity(&d), &ChainMap::zero(&d, &d)).unwrap();
    assert!(h.is_some());
}

#[test]
fn homotopy_detects_nontrivial_maps() {
    let s = sphere(&zz(), 0);
    let id = ChainMap::identity(&s);
    assert!(find_homotopy(&id, &ChainMap::zero(&s, &s)).unwrap().is_none());
    let h = find_homotopy(&id, &id).unwrap().unwrap();
    assert_eq!(h.from_map(), &id);
}

#[test]
fn hom_cycles_are_chain_maps() {
    let x = times(2, 0);
    let y = times(4, 0);
    let hc = HomComplex::new(&x, &y).unwrap();
    let f = ChainMap::new(
        x.clone(),
        y.clone(),
        [(0, Matrix::from_i64(&[&[1]])), (1, Matrix::from_i64(&[&[2]]))].into(),
    )
    .unwrap();
    let e = hc.element_of_map(0, &f);
    assert!(hc.complex().diff(0).apply(&e).iter().all(|v| v == &BigInt::from(0)));
    assert_eq!(hc.to_chain_map(0, &e).unwrap(), f);
}

#[test]
fn pushout_examples() {
    let e = zz();
    let inc = disk_inclusion(&e, 0);
    let s1 = inc.source().clone();
    let to_zero = ChainMap::zero(&s1, &Complex::zero(z()));
    let p = pushout(&inc, &to_zero).unwrap();
    assert_eq!(p.complex, sphere(&e, 0));

    let x = times(3, 0);
    let p = pushout(&ChainMap::identity(&x), &ChainMap::identity(&x)).unwrap();
    assert!(p.j.is_isomorphism());

    let a = sphere(&zz(), 0);
    let twice = ChainMap::new(a.clone(), a.clone(), [(0, Matrix::from_i64(&[&[2]]))].into()).unwrap();
    let p = pushout(&twice, &ChainMap::zero(&a, &Complex::zero(z()))).unwrap();
    assert!(p.complex.homology(0).is_isomorphic(&m(&z(), &[2])));
    assert_eq!(p.complex.bounds(), Some((0, 0)));
}

#[test]
fn pushout_long_exact_sequence() {
    let x = times(2, 0);
    let y = times(4, 0);
    let i = ChainMap::new(x.clone(), y, [(0, Matrix::from_i64(&[&[1]])), (1, Matrix::from_i64(&[&[2]]))].into()).unwrap();
    let f = ChainMap::identity(&x).scale(&BigInt::from(3));
    let p = pushout(&i, &f).unwrap();
    assert!(p.j.is_degreewise_injective());
    check_short_exact(&p.relation, &p.projection).unwrap();
    let les = LongExactSequence::new(&p.relation, &p.projection);
    assert!(les.is_exact(), "{:?}", les.failures());
}

#[test]
fn pullback_of_identity() {
    let x = times(5, 1);
    let p = pullback(&ChainMap::identity(&x), &ChainMap::identity(&x)).unwrap();
    assert!(p.to_b.is_isomorphism() && p.to_c.is_isomorphism());
}

#[test]
fn chain_map_rejects_noncommuting_components() {
    let x = times(2, 0);
    let err = ChainMap::new(x.clone(), x, [(0, Matrix::from_i64(&[&[1]]))].into()).unwrap_err();
    assert!(matches!(err, Error::NotAChainMap(_)));
}

#[test]
fn homology_map_and_classes() {
    let x = times(2, 0);
    let h = x.homology_data(1);
    assert_eq!(h.class_of(&ints(&[3])), ints(&[1]));
    let f = ChainMap::identity(&x).scale(&BigInt::from(3));
    assert!(f.homology_map(1).is_isomorphism());
    assert!(f.is_quasi_isomorphism());
}
