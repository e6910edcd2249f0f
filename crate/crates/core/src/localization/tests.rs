use super::*;
use crate::coeff::{FGModule, Matrix, Ring};
use crate::complex::{disk, sphere, sum_projections, Complex};
use crate::model::DescentData;

fn z() -> Ring {
    Ring::Integers
}

fn m(f: &[i64]) -> FGModule {
    FGModule::from_i64(z(), f).unwrap()
}

fn zz() -> FGModule {
    m(&[0])
}

fn times(k: i64) -> ChainMap {
    let s = sphere(&zz(), 0);
    ChainMap::new(s.clone(), s, [(0, Matrix::from_i64(&[&[k]]))].into()).unwrap()
}

fn two() -> (DescentData, TSet) {
    let dd = DescentData::frees(&z());
    let ts = TSet::new(vec![cone(&times(2)).complex], &dd).unwrap();
    (dd, ts)
}

#[test]
fn locality() {
    let (_, ts) = two();
    assert!(is_t_local(&sphere(&m(&[3]), 0), &ts, None).unwrap().is_local());
    let r = is_t_local(&sphere(&m(&[2]), 0), &ts, None).unwrap();
    assert!(!r.is_local());
    let w = &r.witnesses[0];
    assert_eq!(w.shift, 0);
    assert_eq!(w.group, m(&[2]));
    assert!(!w.map.is_zero());
    assert!(is_t_local(&Complex::zero(z()), &ts, None).unwrap().is_local());
    // Z is not local either: Ext^1(Z/2, Z) = Z/2
    let r = is_t_local(&sphere(&zz(), 0), &ts, None).unwrap();
    assert_eq!(r.witnesses.len(), 1);
    assert_eq!(r.witnesses[0].shift, 1);
    assert!(matches!(
        is_t_local(&sphere(&m(&[3]), 0), &ts, Some((0, 0))),
        Err(Error::RangeTooNarrow { .. })
    ));
}

#[test]
fn locality_is_invariant_under_quasi_isomorphism() {
    let (_, ts) = two();
    let a = sphere(&m(&[3]), 0);
    let b = cone(&times(3)).complex.direct_sum(&disk(&zz(), 4));
    assert_eq!(
        is_t_local(&a, &ts, None).unwrap().is_local(),
        is_t_local(&b, &ts, None).unwrap().is_local()
    );
    let a = sphere(&m(&[4]), 0);
    let b = cone(&times(4)).complex;
    assert!(!is_t_local(&a, &ts, None).unwrap().is_local());
    assert!(!is_t_local(&b, &ts, None).unwrap().is_local());
}

#[test]
fn localized_fibrations() {
    let (dd, ts) = two();
    let x = disk(&zz(), 0).direct_sum(&sphere(&zz(), 1));
    let with = |k: &FGModule| {
        let s = sphere(k, 0);
        sum_projections(&s, &x).1
    };
    assert!(localized_fibration_check(&with(&m(&[3])), &ts, &dd).unwrap());
    assert!(!localized_fibration_check(&with(&m(&[2])), &ts, &dd).unwrap());
    assert!(localized_fibration_check(&ChainMap::identity(&x), &ts, &dd).unwrap());
}

#[test]
fn tower_over_integers() {
    let (_, ts) = two();
    let c = sphere(&zz(), 0);
    let tower = t_cell_tower(&c, &ts, 3, None).unwrap();
    assert_eq!(tower.stages.len(), 4);
    for (k, j) in tower.maps.iter().enumerate() {
        assert!(j.is_degreewise_injective());
        assert_eq!(tower.log[k].len(), 1);
        assert_eq!(tower.log[k][0].shift, 1);
        assert_eq!(tower.stages[k + 1].homology(0), zz());
        // each step is multiplication by 2 on H^0
        let h = j.homology_map(0);
        assert_eq!(h.matrix()[(0, 0)].magnitude(), &2u32.into());
    }
    let total = tower.composite(3).homology_map(0);
    assert_eq!(total.matrix()[(0, 0)].magnitude(), &8u32.into());
    // the class re-emerges at every stage
    assert_eq!(tower.residual.len(), 1);
    assert!(!tower.converged());
}

#[test]
fn tower_stage_maps_are_invisible_to_local_objects() {
    let (_, ts) = two();
    let tower = t_cell_tower(&sphere(&zz(), 0), &ts, 2, None).unwrap();
    let probe = sphere(&m(&[3]), 0);
    for j in &tower.maps {
        let src = HomComplex::new(j.target(), &probe).unwrap();
        let tgt = HomComplex::new(j.source(), &probe).unwrap();
        let pre = src.precompose(j, &tgt);
        assert!(pre.is_quasi_isomorphism());
    }
}

#[test]
fn constant_towers() {
    let (_, ts) = two();
    let local = sphere(&m(&[3]), 0);
    let tower = t_cell_tower(&local, &ts, 2, None).unwrap();
    assert!(tower.stages.iter().all(|s| s == &local));
    assert!(tower.converged());
    let dd = DescentData::frees(&z());
    let empty = TSet::new(vec![], &dd).unwrap();
    let tower = t_cell_tower(&sphere(&zz(), 0), &empty, 2, None).unwrap();
    assert!(tower.stages.iter().all(|s| s == &sphere(&zz(), 0)));
}

#[test]
fn square_probes() {
    let x = disk(&zz(), 0).direct_sum(&sphere(&m(&[0, 4]), 1));
    let id = ChainMap::identity(&x);
    assert!(pushout_square_probe(&id, &id).unwrap().passed());

    // a quasi-isomorphism pushed out along a mono
    let s = sphere(&zz(), 1);
    let i = ChainMap::new(s.clone(), s.direct_sum(&disk(&zz(), -1)), [(1, Matrix::from_i64(&[&[1]]))].into()).unwrap();
    assert!(i.is_quasi_isomorphism());
    let f = ChainMap::new(s.clone(), sphere(&m(&[0, 6]), 1), [(1, Matrix::from_i64(&[&[2], &[3]]))].into()).unwrap();
    let r = pushout_square_probe(&i, &f).unwrap();
    assert!(r.passed(), "{r:?}");

    let i = crate::complex::disk_inclusion(&zz(), 0);
    let f = ChainMap::new(i.source().clone(), sphere(&m(&[5]), 1), [(1, Matrix::from_i64(&[&[1]]))].into()).unwrap();
    assert!(pushout_square_probe(&i, &f).unwrap().passed());
    assert!(pushout_square_probe(&f, &i).is_err());
}
