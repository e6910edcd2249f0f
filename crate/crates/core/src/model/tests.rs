use super::*;
use crate::coeff::{FGModule, Matrix, Ring};
use crate::complex::{chain_kernel, cone, disk, homotopy_classes, sphere, Complex};

fn z() -> Ring {
    Ring::Integers
}

fn m(ring: &Ring, f: &[i64]) -> FGModule {
    FGModule::from_i64(ring.clone(), f).unwrap()
}

fn zz() -> FGModule {
    m(&z(), &[0])
}

fn zmod(k: i64) -> FGModule {
    m(&z(), &[k])
}

fn times(k: i64, n: i64) -> Complex {
    Complex::from_parts(z(), n, vec![zz(), zz()], vec![Matrix::from_i64(&[&[k]]), Matrix::zeros(0, 1)]).unwrap()
}

#[test]
fn generating_sets() {
    let dd = DescentData::frees(&z());
    let i = generating_cofibrations(&dd, Some((0, 1))).unwrap();
    assert_eq!(i.len(), 2);
    assert_eq!(i[0], disk_inclusion(&zz(), 0));
    assert_eq!(i[1], disk_inclusion(&zz(), 1));
    assert!(generating_cofibrations(&dd, None).unwrap().is_empty());

    let two = DescentData::new(z(), vec![zz(), m(&z(), &[0, 0])], vec![]).unwrap();
    assert_eq!(generating_cofibrations(&two, Some((0, 0))).unwrap().len(), 2);

    let empty = DescentData::new(z(), vec![], vec![]).unwrap();
    assert_eq!(generating_cofibrations(&empty, Some((0, 0))), Err(Error::EmptyGenerators));

    // module category: J = J' only
    let j = generating_trivial_cofibrations(&dd, Some((0, 2))).unwrap();
    assert_eq!(j.len(), 3);
    assert!(j.iter().all(|f| f.source().is_zero()));
}

#[test]
fn trivial_cofibrations_are_injective_quasi_isos() {
    let h = Certified::free(&cone(&ChainMap::identity(&times(2, 0))).complex).unwrap();
    let dd = DescentData::new(z(), vec![zz()], vec![h]).unwrap();
    let j = generating_trivial_cofibrations(&dd, Some((-1, 1))).unwrap();
    assert_eq!(j.len(), 6);
    for f in &j {
        assert!(f.is_degreewise_injective());
        assert!(f.is_quasi_isomorphism());
    }
}

#[test]
fn lifting_examples() {
    let e = zz();
    let i = disk_inclusion(&e, 0);
    // p : D^0 Z ⊕ S^0 Z → S^0 Z, surjective with acyclic kernel
    let c = disk(&e, 0).direct_sum(&sphere(&e, 0));
    let p = ChainMap::new(
        c.clone(),
        sphere(&e, 0),
        [(0, Matrix::from_i64(&[&[1, 1]]))].into(),
    )
    .unwrap();
    assert!(chain_kernel(&p).complex.is_acyclic());
    let top = ChainMap::new(i.source().clone(), c.clone(), [(1, Matrix::from_i64(&[&[3]]))].into()).unwrap();
    let bottom = ChainMap::new(i.target().clone(), sphere(&e, 0), [(0, Matrix::from_i64(&[&[5]]))].into()).unwrap();
    let sq = LiftSquare::new(i.clone(), p.clone(), top.clone(), bottom.clone()).unwrap();
    let h = solve_lifting(&sq).unwrap().unwrap();
    assert_eq!(h.compose(&i), top);
    assert_eq!(p.compose(&h), bottom);
    let xi = lift_constructive(&sq).unwrap().unwrap();
    assert_eq!(xi.compose(&i), top);
    assert_eq!(p.compose(&xi), bottom);
    assert!(has_rlp(&i, &p).unwrap());

    // nothing maps onto a nonzero D from 0
    let d = sphere(&e, 0);
    let zero = Complex::zero(z());
    let p0 = ChainMap::zero(&zero, &d);
    let top0 = ChainMap::zero(i.source(), &zero);
    let bottom0 = ChainMap::new(i.target().clone(), d.clone(), [(0, Matrix::identity(1))].into()).unwrap();
    let sq = LiftSquare::new(i.clone(), p0, top0, bottom0).unwrap();
    assert!(solve_lifting(&sq).unwrap().is_none());

    // i = identity: the diagonal is top
    let x = times(2, 0);
    let y = times(4, 0);
    let f = ChainMap::new(x.clone(), y.clone(), [(0, Matrix::from_i64(&[&[1]])), (1, Matrix::from_i64(&[&[2]]))].into())
        .unwrap();
    let sq = LiftSquare::new(ChainMap::identity(&x), ChainMap::identity(&y), f.clone(), f.clone()).unwrap();
    assert_eq!(solve_lifting(&sq).unwrap().unwrap(), f);
}

#[test]
fn noncommuting_square_is_rejected() {
    let i = disk_inclusion(&zz(), 0);
    let d = i.target().clone();
    let top = ChainMap::zero(i.source(), &d);
    let err = LiftSquare::new(i, ChainMap::identity(&d), top, ChainMap::identity(&d)).unwrap_err();
    assert!(matches!(err, Error::InvariantViolation(_)));
}

#[test]
fn factorize_resolves_torsion() {
    let dd = DescentData::frees(&z());
    for p in [2, 3, 5] {
        let target = sphere(&zmod(p), 0);
        let f = ChainMap::zero(&Complex::zero(z()), &target);
        let fac = factorize(&f, &dd, 10).unwrap();
        assert_eq!(fac.certificate.number_of_cells(), 2);
        assert_eq!(fac.middle(), &shift_times(p));
        assert!(fac.p.is_quasi_isomorphism());
        assert!(fac.p.is_degreewise_surjective());
        let (z_, inc) = fac.certificate.replay().unwrap();
        assert_eq!(&z_, fac.middle());
        assert_eq!(inc, fac.i);
        assert_eq!(fac.p.compose(&fac.i), f);
    }
}

/// `Z →×p Z` in degrees -1, 0.
fn shift_times(p: i64) -> Complex {
    times(p, -1)
}

#[test]
fn factorize_trivial_cases() {
    let dd = DescentData::frees(&z());
    let inc = disk_inclusion(&zz(), 2);
    let fac = factorize(&inc, &dd, 10).unwrap();
    assert_eq!(fac.i, inc);
    assert!(fac.p.is_isomorphism());
    assert_eq!(fac.p, ChainMap::identity(inc.target()));

    let id = ChainMap::identity(&times(2, 0));
    let fac = factorize(&id, &dd, 10).unwrap();
    assert_eq!(fac.certificate.number_of_cells(), 0);
    assert_eq!(fac.i, id);
    assert_eq!(fac.p, id);
}

#[test]
fn factorize_budget() {
    let r = Ring::integers_mod(4).unwrap();
    let dd = DescentData::frees(&r);
    let target = sphere(&m(&r, &[2]), 0);
    let f = ChainMap::zero(&Complex::zero(r.clone()), &target);
    assert!(matches!(factorize(&f, &dd, 6), Err(Error::BudgetExceeded(_))));
    assert!(matches!(cofibrant_replacement(&target, &dd), Err(Error::NoResolution(_))));
}

#[test]
fn cofibrant_replacements() {
    let dd = DescentData::frees(&z());
    let c = times(3, 4);
    let rep = cofibrant_replacement(&c, &dd).unwrap();
    assert_eq!(rep.complex, c);
    assert_eq!(rep.q, ChainMap::identity(&c));
    rep.certificate.verify(&c, dd.generators()).unwrap();

    let rep = cofibrant_replacement(&sphere(&zmod(2), 0), &dd).unwrap();
    assert_eq!(rep.complex, times(2, -1));
    assert!(rep.q.is_quasi_isomorphism());
    rep.certificate.verify(&rep.complex, dd.generators()).unwrap();

    let zero = Complex::zero(z());
    assert!(cofibrant_replacement(&zero, &dd).unwrap().complex.is_zero());
}

#[test]
fn derived_hom_examples() {
    let dd = DescentData::frees(&z());
    let z2 = sphere(&zmod(2), 0);
    let z3 = sphere(&zmod(3), 0);
    assert!(derived_hom(&z2, &z2, 1, &dd).unwrap().is_isomorphic(&zmod(2)));
    assert!(derived_hom(&z2, &z2, 0, &dd).unwrap().is_isomorphic(&zmod(2)));
    assert!(derived_hom(&z2, &z2, 2, &dd).unwrap().is_zero());
    for n in -2..=3 {
        assert!(derived_hom(&z2, &z3, n, &dd).unwrap().is_zero());
    }
    // derived_hom(S^0 R, C, n) = H^n(C)
    let c = times(6, 0);
    for n in -1..=2 {
        assert!(derived_hom(&sphere(&zz(), 0), &c, n, &dd)
            .unwrap()
            .is_isomorphic(&c.homology(n)));
    }
    // Ext^1(Z/2, Z/2) is invisible to underived homotopy classes
    assert!(homotopy_classes(&z2, &z2, 1).unwrap().is_zero());
}

#[test]
fn fibration_examples() {
    let dd = DescentData::frees(&z());
    let c = times(2, 0).direct_sum(&disk(&zz(), 0));
    let proj = ChainMap::new(
        c.clone(),
        times(2, 0),
        [(0, Matrix::from_i64(&[&[1, 0]])), (1, Matrix::from_i64(&[&[1, 0]]))].into(),
    )
    .unwrap();
    let r = is_fibration(&proj, &dd, None).unwrap();
    assert!(r.is_fibration && r.consistent(), "{r:?}");

    let inc = disk_inclusion(&zz(), 0);
    let r = is_fibration(&inc, &dd, None).unwrap();
    assert!(!r.is_fibration && r.consistent(), "{r:?}");
    assert_eq!(r.surjectivity_failures, vec![(0, 0)]);

    let to_zero = ChainMap::zero(&c, &Complex::zero(z()));
    let r = is_fibration(&to_zero, &dd, None).unwrap();
    assert!(r.is_fibration && r.consistent());

    // ×2 on Z is not surjective
    let twice = ChainMap::new(sphere(&zz(), 0), sphere(&zz(), 0), [(0, Matrix::from_i64(&[&[2]]))].into()).unwrap();
    assert!(!is_fibration(&twice, &dd, None).unwrap().is_fibration);
}

#[test]
fn locality_and_flasqueness() {
    let dd = DescentData::frees(&z());
    for c in [times(2, 0), sphere(&zmod(2), 3), Complex::zero(z())] {
        assert!(is_g_local(&c, &dd, None).unwrap());
        assert!(is_h_flasque(&c, &dd, None).unwrap());
    }
    // A torsion generator: S^0 Z/2 is not local for 𝒢 = {Z, Z/2}, since
    // Hom_K(Z/2, Z/2[1]) = 0 while Ext^1 = Z/2.
    let dd2 = DescentData::new(z(), vec![zz(), zmod(2)], vec![]).unwrap();
    assert!(!is_g_local(&sphere(&zmod(2), 0), &dd2, None).unwrap());

    let f2 = Ring::integers_mod(2).unwrap();
    let e = m(&f2, &[0]);
    let h = Certified::disk(&e, -1);
    let ddf = DescentData::new(f2.clone(), vec![e.clone()], vec![h]).unwrap();
    assert!(is_h_flasque(&sphere(&e, 0), &ddf, None).unwrap());
    let err = is_h_flasque(&sphere(&e, 0), &ddf, Some((0, 0))).unwrap_err();
    assert!(matches!(err, Error::RangeTooNarrow { .. }));

    // a non-acyclic "H" makes its own sphere non-flasque
    let bad = Certified::free(&sphere(&zz(), 0)).unwrap();
    let ddb = DescentData::new(z(), vec![zz()], vec![bad]).unwrap();
    assert!(!is_h_flasque(&sphere(&zz(), 0), &ddb, None).unwrap());
}

#[test]
fn flasque_matches_lifting_against_j() {
    // C → 0 has the lifting property against J'' iff C is ℋ-flasque.
    let h = Certified::disk(&zz(), -1);
    let bad = Certified::free(&sphere(&zz(), 0)).unwrap();
    for (hh, c) in [
        (h.clone(), sphere(&zz(), 0)),
        (h, times(2, 0)),
        (bad.clone(), sphere(&zz(), 0)),
        (bad, times(3, 1)),
    ] {
        let dd = DescentData::new(z(), vec![zz()], vec![hh]).unwrap();
        let flasque = is_h_flasque(&c, &dd, None).unwrap();
        let to_zero = ChainMap::zero(&c, &Complex::zero(z()));
        let r = is_fibration(&to_zero, &dd, None).unwrap();
        assert_eq!(r.kernel_h_flasque, flasque);
        assert_eq!(r.rlp_against_j, flasque, "{c:?}");
    }
}

#[test]
fn descent_verification() {
    let dd = DescentData::frees(&z());
    assert!(verify_descent(&dd, &[]).unwrap().passed());

    let h = Certified::disk(&zz(), -1);
    assert_eq!(h.complex, cone(&ChainMap::identity(&sphere(&zz(), 0))).complex);
    let dd = DescentData::new(z(), vec![zz()], vec![h]).unwrap();
    let report = verify_descent(&dd, &[sphere(&zmod(2), 0), times(2, 0)]).unwrap();
    assert!(report.passed(), "{report:?}");

    let bad = Certified::free(&sphere(&zz(), 1)).unwrap();
    let dd = DescentData::new(z(), vec![zz()], vec![bad]).unwrap();
    let report = verify_descent(&dd, &[]).unwrap();
    assert!(!report.passed());
    let fail = report.failures().next().unwrap();
    assert_eq!(fail.name, "H[0] acyclic");
    assert!(fail.detail.contains("H^1"));

    // certificate that does not replay to the complex
    let mut wrong = Certified::disk(&zz(), 0);
    wrong.certificate.cells[1].attaching = Matrix::from_i64(&[&[2]]);
    let dd = DescentData::new(z(), vec![zz()], vec![wrong]).unwrap();
    let report = verify_descent(&dd, &[]).unwrap();
    assert_eq!(report.failures().map(|f| f.name.as_str()).collect::<Vec<_>>(), vec!["H[0] certificate"]);

    let empty = DescentData::new(z(), vec![], vec![]).unwrap();
    assert!(!verify_descent(&empty, &[]).unwrap().passed());
}

#[test]
fn certificate_pushforward_replays() {
    let e = zz();
    let inc = disk_inclusion(&e, 0);
    let cert = CellCertificate {
        base: inc.source().clone(),
        cells: vec![Cell {
            degree: 0,
            module: e.clone(),
            attaching: Matrix::identity(1),
        }],
        comparison: Comparison::Identity,
    };
    let (replayed, i) = cert.replay().unwrap();
    assert_eq!(i, inc);
    assert_eq!(&replayed, inc.target());
    let f = ChainMap::new(inc.source().clone(), times(3, 0), [(1, Matrix::from_i64(&[&[1]]))].into()).unwrap();
    let pushed = cert.pushforward(&f).unwrap();
    let (d, j) = pushed.replay().unwrap();
    assert_eq!(j.source(), f.target());
    assert!(j.is_degreewise_injective());
    let po = crate::complex::pushout(&inc, &f).unwrap();
    assert!(d.homology(0).is_isomorphic(&po.complex.homology(0)));
    assert!(d.homology(1).is_isomorphic(&po.complex.homology(1)));
}
