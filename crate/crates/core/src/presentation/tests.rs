use super::*;
use crate::complex::{disk, disk_inclusion, sphere};

fn z() -> Ring {
    Ring::Integers
}

fn f2() -> Ring {
    Ring::integers_mod(2).unwrap()
}

fn free(r: &Ring, n: usize) -> FGModule {
    FGModule::free(r.clone(), n)
}

#[test]
fn category_shape() {
    let cat = AddCategory::standard(z());
    assert_eq!(cat.objects(), vec![free(&z(), 1), free(&z(), 2)]);
    assert_eq!(cat.hom_basis(1, 0).len(), 2);
    assert_eq!(cat.hom_basis(1, 1).len(), 4);
    assert!(AddCategory::new(z(), vec![2, 3]).is_err());
    assert!(AddCategory::new(z(), vec![1, 1]).is_err());
}

#[test]
fn restriction_values() {
    let cat = AddCategory::standard(z());
    let r = restrict(&sphere(&free(&z(), 1), 0), &cat);
    assert_eq!(r.value(1).module(0), &free(&z(), 2));
    assert!(r.functoriality_failures().is_empty());
    assert!(r.module(0).functoriality_failures().is_empty());
    assert!(AComplex::zero(&cat).is_zero());
    let t = restrict(&sphere(&FGModule::from_i64(z(), &[6]).unwrap(), 1), &cat);
    assert!(t.module(1).functoriality_failures().is_empty());
    assert_eq!(t.value(1).module(1).to_string(), "Z/6 ⊕ Z/6");
}

#[test]
fn broken_functor_is_rejected() {
    let cat = AddCategory::standard(z());
    let r = restrict(&sphere(&free(&z(), 1), 0), &cat);
    let mut inj = r.inj.clone();
    inj[1][0] = inj[1][1].clone();
    assert!(matches!(
        AComplex::new(cat, r.values.clone(), inj, r.proj.clone()),
        Err(Error::InvariantViolation(_))
    ));
}

#[test]
fn restriction_preserves_surjections() {
    let cat = AddCategory::standard(z());
    // D^0 Z → D^0 Z/3, degreewise surjective
    let d = disk(&free(&z(), 1), 0);
    let d3 = disk(&FGModule::from_i64(z(), &[3]).unwrap(), 0);
    let p = ChainMap::from_fn(&d, &d3, |n| Matrix::identity(d.rank(n)));
    assert!(p.is_degreewise_surjective());
    let rp = restrict_map(&p, &cat);
    assert!(rp.components().iter().all(ChainMap::is_degreewise_surjective));
}

#[test]
fn extension_of_representables() {
    for ring in [z(), f2()] {
        let cat = AddCategory::standard(ring.clone());
        for o in 0..cat.len() {
            let rep = AComplex::representable(&cat, o);
            let e = extend(&rep).unwrap();
            assert!(e.module(0).is_isomorphic(&cat.object(o)));
            assert!(e.degrees().all(|d| d == 0 || e.module(d).is_zero()));
            assert!(adjunction_counit(&sphere(&cat.object(o), 0), &cat).unwrap().is_isomorphism());
        }
        assert!(extend(&AComplex::zero(&cat)).unwrap().is_zero());
    }
}

#[test]
fn extend_after_restrict_is_identity_on_frees() {
    let cat = AddCategory::standard(z());
    let x = disk(&free(&z(), 2), 0).direct_sum(&sphere(&free(&z(), 1), 2));
    let eps = adjunction_counit(&x, &cat).unwrap();
    assert!(eps.is_isomorphism());
    // torsion values are fine too: the coend only uses the rank-1 value
    let t = sphere(&FGModule::from_i64(z(), &[4, 0]).unwrap(), 0);
    assert!(adjunction_counit(&t, &cat).unwrap().is_isomorphism());
}

#[test]
fn generating_cofibrations_are_preserved() {
    let cat = AddCategory::standard(z());
    let e = free(&z(), 2);
    let j = disk_inclusion(&e, 1);
    let ij = extend_map(&restrict_map(&j, &cat)).unwrap();
    let eps_s = adjunction_counit(j.source(), &cat).unwrap();
    let eps_d = adjunction_counit(j.target(), &cat).unwrap();
    assert!(eps_s.is_isomorphism() && eps_d.is_isomorphism());
    assert_eq!(eps_d.compose(&ij), j.compose(&eps_s));
}

#[test]
fn restrict_after_extend_on_representables() {
    let cat = AddCategory::standard(z());
    let rep = AComplex::representable(&cat, 1);
    let eta = adjunction_unit(&rep).unwrap();
    assert!(eta.components().iter().all(ChainMap::is_isomorphism));
}

#[test]
fn adjunction_triangles_and_counts() {
    let cat = AddCategory::standard(f2());
    let one = free(&f2(), 1);
    // Yoneda: X representable
    for o in 0..cat.len() {
        let x = AComplex::representable(&cat, o);
        for f in [sphere(&one, 0), disk(&one, 0), sphere(&free(&f2(), 2), 0)] {
            let report = adjunction_check(&x, &f, 1 << 12).unwrap();
            assert!(report.passed(), "{report:?}");
            let (left, right) = report.counts.unwrap();
            assert_eq!(left, right);
            let yoneda = enumerate_chain_maps(
                &sphere(&one, 0),
                &restrict(&f, &cat).value(o).clone(),
                1 << 12,
            )
            .unwrap()
            .len();
            assert_eq!(left, yoneda);
        }
    }
    // F = 0: both sides are singletons
    let x = restrict(&disk(&one, 0), &cat);
    let report = adjunction_check(&x, &Complex::zero(f2()), 1 << 12).unwrap();
    assert_eq!(report.counts, Some((1, 1)));
    assert!(report.passed());
}

#[test]
fn adjunction_over_the_integers_checks_triangles_only() {
    let cat = AddCategory::standard(z());
    let x = restrict(&disk(&free(&z(), 1), 0), &cat);
    let report = adjunction_check(&x, &sphere(&free(&z(), 1), 1), 1 << 12).unwrap();
    assert!(report.extend_triangle && report.restrict_triangle);
    assert_eq!(report.counts, None);
}

#[test]
fn full_faithfulness_on_cofibrant_instances() {
    let cat = AddCategory::standard(f2());
    let one = free(&f2(), 1);
    let xs = [sphere(&one, 0), disk(&one, 0), sphere(&free(&f2(), 2), 1)];
    for a in &xs {
        for b in &xs {
            let (x, y) = (restrict(a, &cat), restrict(b, &cat));
            assert!(extend_is_fully_faithful_on(&x, &y, 1 << 12).unwrap());
        }
    }
}

#[test]
fn enumeration_respects_budget() {
    let big = sphere(&free(&f2(), 3), 0);
    assert!(matches!(enumerate_chain_maps(&big, &big, 100), Err(Error::BudgetExceeded(_))));
    assert_eq!(enumerate_chain_maps(&big, &big, 1 << 9).unwrap().len(), 512);
    let zz = sphere(&free(&z(), 1), 0);
    assert!(matches!(enumerate_chain_maps(&zz, &zz, 100), Err(Error::InvariantViolation(_))));
}

#[test]
fn compact_additivity() {
    let x = disk(&free(&z(), 1), 0).direct_sum(&sphere(&free(&z(), 1), 1));
    let y = sphere(&FGModule::from_i64(z(), &[2]).unwrap(), 1);
    let single = compact_additivity_probe(&x, std::slice::from_ref(&y)).unwrap();
    assert!(single.isomorphism);
    assert_eq!(single.summands[0], single.total);

    let family = [
        sphere(&FGModule::from_i64(z(), &[2]).unwrap(), 1),
        sphere(&FGModule::from_i64(z(), &[3, 0]).unwrap(), 1),
        disk(&FGModule::from_i64(z(), &[4]).unwrap(), 0).direct_sum(&sphere(&free(&z(), 1), 0)),
    ];
    let report = compact_additivity_probe(&x, &family).unwrap();
    assert!(report.isomorphism);
    assert_eq!(report.total.to_string(), "Z ⊕ Z/6");

    let d = disk(&free(&z(), 1), 0);
    let report = compact_additivity_probe(&d, &family).unwrap();
    assert!(report.isomorphism);
    assert!(report.total.is_zero());

    assert!(compact_additivity_probe(&sphere(&FGModule::from_i64(z(), &[2]).unwrap(), 0), &family).is_err());
}
