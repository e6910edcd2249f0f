use super::*;
use crate::coeff::{FGModule, Matrix, Ring};
use crate::complex::{disk, disk_inclusion, sphere, ChainMap, Complex};
use crate::model::{generating_trivial_cofibrations, verify_descent, Certified, DescentData};

fn z() -> Ring {
    Ring::Integers
}

fn m(f: &[i64]) -> FGModule {
    FGModule::from_i64(z(), f).unwrap()
}

fn zz() -> FGModule {
    m(&[0])
}

fn unit() -> Complex {
    sphere(&zz(), 0)
}

#[test]
fn unit_law() {
    let x = disk(&m(&[0, 3]), 1).direct_sum(&sphere(&m(&[2]), -1));
    let l = left_unitor(&x).unwrap();
    let r = right_unitor(&x).unwrap();
    assert!(l.is_isomorphism());
    assert!(r.is_isomorphism());
    assert_eq!(l.source(), &tensor(&unit(), &x).unwrap());
    assert_eq!(l.target(), &x);
}

#[test]
fn spheres_and_torsion() {
    let s = tensor(&sphere(&zz(), 1), &sphere(&zz(), 2)).unwrap();
    assert_eq!(s, sphere(&zz(), 3));
    let t = tensor(&sphere(&m(&[4]), 0), &sphere(&m(&[6]), 0)).unwrap();
    assert_eq!(t.module(0), &m(&[2]));
    // D^0 Z ⊗ S^0 Z/2 is still contractible
    let d = tensor(&disk(&zz(), 0), &sphere(&m(&[2]), 0)).unwrap();
    assert!(d.is_acyclic());
    assert_eq!(d.total_rank(), 2);
}

#[test]
fn koszul_sign_in_differential() {
    let d1 = disk(&zz(), 1);
    let t = TensorComplex::new(&d1, &d1).unwrap();
    let c = t.complex();
    assert!(c.is_acyclic());
    // d(x ⊗ y) has the term -x ⊗ dy for x of degree 1
    let b = t.block(1, 1).unwrap();
    let dd = c.d(2);
    let tgt = t.block(1, 2).unwrap();
    let col = b.offset;
    assert_eq!(dd[(tgt.offset, col)], (-1).into());
}

#[test]
fn braiding_signs() {
    let s1 = sphere(&zz(), 1);
    let tau = braiding(&s1, &s1).unwrap();
    assert_eq!(tau.matrix(2), Matrix::from_i64(&[&[-1]]));
    let s0 = sphere(&zz(), 0);
    assert_eq!(braiding(&s0, &s1).unwrap().matrix(1), Matrix::from_i64(&[&[1]]));

    let x = disk(&zz(), 1).direct_sum(&sphere(&m(&[3]), 0));
    let y = disk(&m(&[0, 2]), 0);
    let t = braiding(&x, &y).unwrap();
    let back = braiding(&y, &x).unwrap();
    assert_eq!(back.compose(&t), ChainMap::identity(t.source()));
}

#[test]
fn pentagon_and_triangle() {
    let w = disk(&zz(), 1);
    let x = sphere(&m(&[0, 2]), 0);
    let y = disk(&zz(), 0);
    let v = sphere(&zz(), -1);
    let id = ChainMap::identity;
    let a = |p: &Complex, q: &Complex, r: &Complex| associator(p, q, r).unwrap();
    let t = |f: &ChainMap, g: &ChainMap| tensor_chain_maps(f, g).unwrap();
    let wx = tensor(&w, &x).unwrap();
    let xy = tensor(&x, &y).unwrap();
    let yv = tensor(&y, &v).unwrap();
    // ((W X) Y) V → W (X (Y V)) two ways
    let top = a(&w, &x, &yv).compose(&a(&wx, &y, &v));
    let bottom = t(&id(&w), &a(&x, &y, &v))
        .compose(&a(&w, &xy, &v))
        .compose(&t(&a(&w, &x, &y), &id(&v)));
    assert_eq!(top, bottom);
    assert_eq!(bottom.target(), &tensor(&w, &tensor(&x, &yv).unwrap()).unwrap());

    // triangle: (X ⊗ 1) ⊗ Y → X ⊗ Y
    let one = unit();
    let lhs = t(&right_unitor(&x).unwrap(), &id(&y));
    let rhs = t(&id(&x), &left_unitor(&y).unwrap()).compose(&a(&x, &one, &y));
    assert_eq!(lhs, rhs);
}

#[test]
fn hexagon() {
    let x = sphere(&zz(), 1);
    let y = disk(&zz(), 0);
    let z_ = sphere(&m(&[0, 0]), 1);
    let a = |p: &Complex, q: &Complex, r: &Complex| associator(p, q, r).unwrap();
    let b = |p: &Complex, q: &Complex| braiding(p, q).unwrap();
    let t = |f: &ChainMap, g: &ChainMap| tensor_chain_maps(f, g).unwrap();
    let id = ChainMap::identity;
    let yz = tensor(&y, &z_).unwrap();
    // (XY)Z → X(YZ) → (YZ)X → Y(ZX)
    let left = a(&y, &z_, &x).compose(&b(&x, &yz)).compose(&a(&x, &y, &z_));
    // (XY)Z → (YX)Z → Y(XZ) → Y(ZX)
    let right = t(&id(&y), &b(&x, &z_))
        .compose(&a(&y, &x, &z_))
        .compose(&t(&b(&x, &y), &id(&z_)));
    assert_eq!(left, right);
}

#[test]
fn tensor_of_chain_maps_is_functorial() {
    let x = disk(&zz(), 0);
    let f = ChainMap::new(x.clone(), x.clone(), [(0, Matrix::from_i64(&[&[2]])), (1, Matrix::from_i64(&[&[2]]))].into())
        .unwrap();
    let g = ChainMap::new(sphere(&zz(), 1), sphere(&m(&[5]), 1), [(1, Matrix::from_i64(&[&[1]]))].into()).unwrap();
    let fg = tensor_chain_maps(&f, &g).unwrap();
    let ff = tensor_chain_maps(&f.compose(&f), &ChainMap::identity(g.source())).unwrap();
    let composed = tensor_chain_maps(&f, &ChainMap::identity(g.source()))
        .unwrap()
        .compose(&tensor_chain_maps(&f, &ChainMap::identity(g.source())).unwrap());
    assert_eq!(ff, composed);
    assert_eq!(fg.target(), &tensor(&x, &sphere(&m(&[5]), 1)).unwrap());
}

#[test]
fn pushout_product_of_disk_inclusions() {
    let a = disk_inclusion(&zz(), 0);
    let b = disk_inclusion(&zz(), 1);
    let pp = pushout_product(&a, &b).unwrap();
    let c = &pp.map;
    assert!(c.is_degreewise_injective());
    // coker(c) is coker(a) ⊗ coker(b) = S^0 Z ⊗ S^1 Z, degreewise
    let coker = crate::complex::chain_cokernel(c).complex;
    let expected = tensor(&sphere(&zz(), 0), &sphere(&zz(), 1)).unwrap();
    for n in -3..=3 {
        assert!(coker.module(n).is_isomorphic(expected.module(n)), "degree {n}");
    }
    let cert = pp.certify(&[zz()]).unwrap();
    let (replayed, incl) = cert.replay().unwrap();
    assert_eq!(incl.source(), &pp.domain);
    assert_eq!(replayed.total_rank(), c.target().total_rank());
}

#[test]
fn pushout_product_with_trivial_cofibration_is_trivial() {
    let dd = DescentData::frees(&z());
    let j = &generating_trivial_cofibrations(&dd, Some((0, 0))).unwrap()[0];
    let i = disk_inclusion(&zz(), 1);
    let pp = pushout_product(&i, j).unwrap();
    assert!(pp.map.is_degreewise_injective());
    assert!(pp.map.is_quasi_isomorphism());
}

#[test]
fn derived_tensor_computes_tor() {
    let dd = DescentData::frees(&z());
    let x = sphere(&m(&[2]), 0);
    let d = derived_tensor(&x, &x, &dd).unwrap();
    assert_eq!(d.complex.homology(0), m(&[2]));
    assert_eq!(d.complex.homology(-1), m(&[2]));
    // the underived product loses Tor
    assert!(tensor(&x, &x).unwrap().homology(-1).is_zero());
    assert!(d.replacement.q.is_quasi_isomorphism());

    let free = derived_tensor(&unit(), &x, &dd).unwrap();
    assert!(free.comparison.is_quasi_isomorphism());
}

#[test]
fn monoid_axiom() {
    let dd = DescentData::frees(&z());
    let c = sphere(&m(&[2]), 0).direct_sum(&disk(&zz(), 3));
    for j in generating_trivial_cofibrations(&dd, Some((-1, 2))).unwrap() {
        assert!(monoid_axiom_probe(&c, &j, &dd).unwrap());
    }
    let not_j = disk_inclusion(&zz(), 0);
    assert!(monoid_axiom_probe(&c, &not_j, &dd).is_err());
}

#[test]
fn weak_flat_resolution_of_torsion() {
    let t = sphere(&m(&[2]), 0);
    let r = weak_flat_resolution(&t, 1, &zz(), None, &[]).unwrap();
    let expected = Complex::from_parts(z(), -1, vec![zz(), zz()], vec![Matrix::from_i64(&[&[2]]), Matrix::zeros(0, 1)])
        .unwrap();
    assert_eq!(r.h, expected);
    assert!(r.u_quasi_iso);
    assert!(r.is_weakly_flat());
    r.certificate.verify(&r.h, &[zz()]).unwrap();

    // Z/2 ⊗ Z/2 has Tor, so the probe fails
    let probe = sphere(&m(&[2]), 0);
    let r = weak_flat_resolution(&t, 1, &zz(), None, &[unit(), probe]).unwrap();
    assert_eq!(r.probe_failures, vec![1]);
    assert!(!r.is_weakly_flat());

    // n = 0 is the unit
    let r0 = weak_flat_resolution(&t, 0, &zz(), None, &[]).unwrap();
    assert_eq!(r0.h, unit());
    assert!(r0.u.is_isomorphism());

    assert!(weak_flat_resolution(&disk(&zz(), 0), 1, &zz(), None, &[]).is_err());
}

#[test]
fn supplied_resolution_is_validated() {
    let t = sphere(&m(&[2]), 0);
    let bad = ShortResolution {
        a: zz(),
        b: zz(),
        incl: Matrix::from_i64(&[&[3]]),
        proj: Matrix::from_i64(&[&[1]]),
    };
    assert!(weak_flat_resolution(&t, 1, &zz(), Some(bad), &[]).is_err());
    let good = ShortResolution {
        a: zz(),
        b: zz(),
        incl: Matrix::from_i64(&[&[-2]]),
        proj: Matrix::from_i64(&[&[1]]),
    };
    assert!(weak_flat_resolution(&t, 1, &zz(), Some(good), &[]).unwrap().u_quasi_iso);
}

#[test]
fn extension_by_unit() {
    let dd = DescentData::frees(&z());
    let ext = extend_descent(&dd, &unit(), 2).unwrap();
    assert_eq!(ext.descent.generators(), &[zz()]);
    assert_eq!(ext.descent.acyclics().len(), 1);
    assert!(ext.descent.acyclics()[0].complex.is_acyclic());
    assert!(ext.flatness_failures.is_empty());
    assert!(verify_descent(&ext.descent, &[unit()]).unwrap().passed());
}

#[test]
fn extension_by_torsion() {
    let dd = DescentData::frees(&z());
    let t = sphere(&m(&[2]), 0);
    let ext = extend_descent(&dd, &t, 2).unwrap();
    // Z/2 ⊗ Z/2 = Z/2, so 𝒢[T] = {Z, Z/2}
    assert_eq!(ext.descent.generators(), &[zz(), m(&[2])]);
    assert_eq!(ext.descent.acyclics().len(), 2);
    assert!(!ext.flatness_failures.is_empty());
    let probes = [unit(), t.clone(), disk(&m(&[2]), 0)];
    let report = verify_descent(&ext.descent, &probes).unwrap();
    assert!(report.passed(), "{report:?}");

    let h = Certified::disk(&zz(), 0);
    let with_h = DescentData::new(z(), vec![zz()], vec![h]).unwrap();
    let ext = extend_descent(&with_h, &t, 1).unwrap();
    assert_eq!(ext.descent.acyclics().len(), 3);
    assert!(verify_descent(&ext.descent, &probes).unwrap().passed());
}
