use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::coeff::{FGModule, Matrix, Ring};
use crate::complex::{disk, sphere, ChainMap, Complex};
use crate::model::DescentData;
use crate::monoidal::{associator, right_unitor, tensor, tensor_chain_maps};

fn z() -> Ring {
    Ring::Integers
}

fn f2() -> Ring {
    Ring::integers_mod(2).unwrap()
}

fn free(r: &Ring, n: usize) -> FGModule {
    FGModule::free(r.clone(), n)
}

fn s(d: i64) -> Complex {
    sphere(&free(&z(), 1), d)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn coxeter_relations_hold_in_constructed_sequences() {
    let x = disk(&free(&z(), 1), 0).direct_sum(&s(1));
    let sym = sym_monoid(&x, 3).unwrap().seq;
    assert!(sym.coxeter_failures().is_empty());
    assert!(seq_shift_down(&sym, 1).coxeter_failures().is_empty());
    let day = day_tensor(&sym, &seq_shift_down(&sym.truncate(2), 1)).unwrap();
    assert!(day.coxeter_failures().is_empty());

    // s_0 = 1 and s_1 = -1 on a rank-one level 3 breaks the braid relation
    let c = sphere(&free(&z(), 1), 0);
    let levels = vec![c.clone(); 4];
    let id = ChainMap::identity(&c);
    let actions = vec![vec![], vec![], vec![id.clone()], vec![id.clone(), id.neg()]];
    assert!(matches!(
        SymSeq::new(z(), levels.clone(), actions),
        Err(crate::Error::InvalidEquivariance(_))
    ));
    let bad = vec![vec![], vec![], vec![id.scale(&BigInt::from(2))], vec![id.clone(), id.clone()]];
    assert!(SymSeq::new(z(), levels, bad).is_err());
}

#[test]
fn shift_down_ranks_and_concentration() {
    let x = sphere(&free(&z(), 2), 0);
    let x0 = SymSeq::concentrated(&x, 4);
    assert_eq!(x0.ranks(), vec![2, 0, 0, 0, 0]);
    assert_eq!(seq_shift_down(&x0, 0), x0);
    for i in 0..=4 {
        let ranks = seq_shift_down(&x0, i).ranks();
        for (n, r) in ranks.into_iter().enumerate() {
            let expected = if n == i { 2 * factorial(n) / factorial(n - i) } else { 0 };
            assert_eq!(r, expected, "X{{-{i}}} at level {n}");
        }
    }
    // on a sequence with every level populated the count is r·n!/(n-i)!
    let sym = sym_monoid(&sphere(&free(&z(), 1), 0), 4).unwrap().seq;
    for i in 0..=4 {
        for (n, r) in seq_shift_down(&sym, i).ranks().into_iter().enumerate() {
            let expected = if n >= i { factorial(n) / factorial(n - i) } else { 0 };
            assert_eq!(r, expected);
        }
    }
}

#[test]
fn iterated_shifts_compose() {
    let sym = sym_monoid(&s(1), 4).unwrap().seq;
    for (i, j) in [(1, 1), (1, 2), (2, 1), (0, 2)] {
        iterated_shift_iso(&sym, i, j).verify().unwrap();
    }
    let x = disk(&free(&z(), 1), 0);
    iterated_shift_iso(&seq_shift_down(&SymSeq::concentrated(&x, 3), 1), 1, 1)
        .verify()
        .unwrap();
}

#[test]
fn exterior_shift_isomorphism() {
    let x = s(1);
    let y = disk(&free(&z(), 1), 0);
    for (i, j) in [(0, 0), (1, 0), (1, 1), (1, 2), (2, 1)] {
        let iso = exterior_shift_iso(&x, &y, i, j, 3).unwrap();
        iso.verify().unwrap_or_else(|e| panic!("({i},{j}): {e}"));
    }
}

#[test]
fn shift_up_is_restriction() {
    let x0 = SymSeq::concentrated(&s(0), 3);
    let up = seq_shift_up(&x0, 1).unwrap();
    assert!(up.level(0).is_zero());
    assert!(matches!(seq_shift_up(&x0, 4), Err(crate::Error::InvariantViolation(_))));
    let sym = sym_monoid(&s(1), 4).unwrap().seq;
    let up2 = seq_shift_up(&sym, 2).unwrap();
    assert_eq!(up2.level(1), sym.level(3));
    assert_eq!(up2.transposition(2, 0), sym.transposition(4, 2));
}

/// Every levelwise map between sequences over `𝔽₂` concentrated in degree
/// 0 that is equivariant.
fn equivariant_maps(a: &SymSeq, b: &SymSeq) -> Vec<Vec<ChainMap>> {
    let mut out: Vec<Vec<ChainMap>> = vec![Vec::new()];
    for n in 0..=a.truncation().min(b.truncation()) {
        let (x, y) = (a.level(n), b.level(n));
        let (rows, cols) = (y.rank(0), x.rank(0));
        let mut next = Vec::new();
        for bits in 0u32..(1 << (rows * cols)) {
            let mut m = Matrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m[(r, c)] = BigInt::from((bits >> (r * cols + c)) & 1);
                }
            }
            let f = ChainMap::new(x.clone(), y.clone(), [(0, m)].into()).unwrap();
            if (0..n.saturating_sub(1)).all(|k| f.compose(a.transposition(n, k)) == b.transposition(n, k).compose(&f)) {
                for prefix in &out {
                    let mut v = prefix.clone();
                    v.push(f.clone());
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

#[test]
fn shift_adjunction_over_f2() {
    let r = f2();
    let a = sym_monoid(&sphere(&free(&r, 1), 0), 2).unwrap().seq;
    let b = sym_monoid(&sphere(&free(&r, 2), 0), 2).unwrap().seq;
    let i = 1;
    let down = seq_shift_down(&a, i);
    let up = seq_shift_up(&b, i).unwrap();
    let left = equivariant_maps(&down, &b);
    let right = equivariant_maps(&a.truncate(up.truncation()), &up);
    assert_eq!(left.len(), right.len());
    assert!(left.len() > 1);

    let eta = shift_unit(&a, i).unwrap();
    let eps = shift_counit(&b, i).unwrap();
    assert!(is_equivariant(&eta, &a.truncate(eta.len() - 1), &seq_shift_up(&down, i).unwrap()));
    assert!(is_equivariant(&eps, &seq_shift_down(&up, i), &b.truncate(eps.len() - 1)));

    let phi = |f: &Vec<ChainMap>| -> Vec<ChainMap> {
        let fi = shift_up_map(f, i);
        fi.iter().zip(&eta).map(|(g, e)| g.compose(e)).collect()
    };
    // ψ(g) = ε ∘ g{-i}, written out levelwise so that it reaches level N
    let psi = |g: &Vec<ChainMap>| -> Vec<ChainMap> {
        (0..=b.truncation())
            .map(|n| {
                if n < i {
                    return ChainMap::zero(down.level(n), b.level(n));
                }
                let m = super::perm::tuples(n, i)
                    .iter()
                    .map(|t| &b.act(n, &super::perm::coset_rep(n, t)).matrix(0) * &g[n - i].matrix(0))
                    .reduce(|acc, m| acc.hstack(&m))
                    .unwrap();
                ChainMap::new(down.level(n).clone(), b.level(n).clone(), [(0, m)].into()).unwrap()
            })
            .collect()
    };
    for f in &left {
        let g = phi(f);
        assert!(right.contains(&g));
        assert_eq!(&psi(&g), f);
    }
    for g in &right {
        assert_eq!(&phi(&psi(g)), g);
    }
}

#[test]
fn day_unit_and_ranks() {
    let unit = SymSeq::concentrated(&s(0), 3);
    let a = sym_monoid(&s(1), 3).unwrap().seq;
    let ua = day_tensor(&unit, &a).unwrap();
    for n in 0..=3 {
        assert_eq!(ua.level(n).total_rank(), a.level(n).total_rank());
    }
    let e = seq_shift_down(&SymSeq::concentrated(&sphere(&free(&z(), 2), 0), 4), 1);
    let f = sym_monoid(&sphere(&free(&z(), 3), 0), 4).unwrap().seq;
    let day = day_tensor(&e, &f).unwrap();
    let formula = day_rank_formula(&e, &f).unwrap();
    assert_eq!(day.ranks(), formula);
    // level n: n copies of 2·3^{n-1}
    for n in 1..=4 {
        assert_eq!(formula[n], n * 2 * 3usize.pow(n as u32 - 1));
    }
}

#[test]
fn day_braiding_is_an_equivariant_involution() {
    let e = sym_monoid(&s(1), 3).unwrap().seq;
    let f = seq_shift_down(&SymSeq::concentrated(&disk(&free(&z(), 1), 0), 3), 1);
    let ef = day_tensor(&e, &f).unwrap();
    let fe = day_tensor(&f, &e).unwrap();
    let there = day_braiding(&e, &f).unwrap();
    let back = day_braiding(&f, &e).unwrap();
    assert!(is_equivariant(&there, &ef, &fe));
    for (n, (a, b)) in there.iter().zip(&back).enumerate() {
        assert_eq!(b.compose(a), ChainMap::identity(ef.level(n)), "level {n}");
    }
}

#[test]
fn sym_levels() {
    let r0 = sym_monoid(&s(0), 3).unwrap();
    for n in 0..=3 {
        assert_eq!(r0.seq.level(n), &s(0));
        for k in 0..n.saturating_sub(1) {
            assert_eq!(r0.seq.transposition(n, k), &ChainMap::identity(&s(0)));
        }
    }
    let r1 = sym_monoid(&s(1), 2).unwrap();
    assert_eq!(r1.seq.level(2), &s(2));
    assert_eq!(r1.seq.transposition(2, 0), &ChainMap::identity(&s(2)).neg());
}

#[test]
fn sym_is_a_commutative_monoid() {
    for d in [0, 1] {
        let r = sym_monoid(&s(d), 4).unwrap();
        let report = validate_ring_spectrum(&r).unwrap();
        assert!(report.passed(), "d = {d}: {:?}", report.failures);
    }
    let x = disk(&free(&z(), 1), 0).direct_sum(&s(1));
    let r = sym_monoid(&x, 3).unwrap();
    assert!(validate_ring_spectrum(&r).unwrap().passed());
}

#[test]
fn ring_negative_controls() {
    let mut r = sym_monoid(&s(1), 3).unwrap();
    let m = r.mult[&(2, 1)].neg();
    r.mult.insert((2, 1), m);
    let report = validate_ring_spectrum(&r).unwrap();
    assert!(report.failures.contains(&"associativity at (1,1,1)".to_string()), "{:?}", report.failures);

    // dropping the Koszul sign breaks commutativity but nothing else
    let mut r = sym_monoid(&s(1), 2).unwrap();
    let plain = r.seq.transposition(2, 0).neg();
    r.seq = SymSeq::new(z(), r.seq.levels().to_vec(), vec![vec![], vec![], vec![plain]]).unwrap();
    let report = validate_ring_spectrum(&r).unwrap();
    assert!(!report.passed());
    assert!(report.failures.iter().all(|f| f.starts_with("commutativity")), "{:?}", report.failures);
    assert!(report.failures.contains(&"commutativity at (1,1)".to_string()));
}

#[test]
fn modules_over_sym() {
    let r = sym_monoid(&s(1), 3).unwrap();
    assert!(validate_module(&r, &zero_module(&r).unwrap()).unwrap().passed());
    let regular = ModuleSpectrumData {
        seq: r.seq.clone(),
        action: r.mult.clone(),
    };
    assert!(validate_module(&r, &regular).unwrap().passed());
    let mut broken = regular.clone();
    let a = broken.action[&(1, 1)].neg();
    broken.action.insert((1, 1), a);
    assert!(!validate_module(&r, &broken).unwrap().passed());
}

#[test]
fn free_commutative_monoid_property() {
    // M = Sym(S ⊕ S), f the first inclusion
    let sp = s(1);
    let two = sp.direct_sum(&sp);
    let sym = sym_monoid(&sp, 3).unwrap();
    let m = sym_monoid(&two, 3).unwrap();
    let f1 = ChainMap::from_fn(&sp, m.seq.level(1), |d| {
        let mut mat = Matrix::zeros(m.seq.level(1).rank(d), sp.rank(d));
        if sp.rank(d) > 0 {
            mat[(0, 0)] = BigInt::from(1);
        }
        mat
    });
    let phi = extend_to_monoid_map(&sym, &f1, &m).unwrap();
    assert_eq!(phi[1].matrix(1), f1.matrix(1));
    assert!(monoid_map_failures(&phi, &sym, &m).unwrap().is_empty());
    // uniqueness: another map agreeing on level 1 but not monoidal is caught
    let mut other = phi.clone();
    other[2] = other[2].neg();
    assert!(!monoid_map_failures(&other, &sym, &m).unwrap().is_empty());
}

#[test]
fn spectra_validate() {
    for d in [0, 1] {
        let e = sym_spectrum(&s(d), 4).unwrap();
        assert!(validate_spectrum(&e).unwrap().passed());
    }
    let zero = zero_spectrum(&s(1), 3).unwrap();
    assert!(validate_spectrum(&zero).unwrap().passed());
    let a = disk(&free(&z(), 1), 0).direct_sum(&s(-1));
    let e = sigma_infty(&a, &s(1), 3).unwrap();
    assert!(validate_spectrum(&e).unwrap().passed());
    assert_eq!(omega_infty(&e), tensor(&s(0), &a).unwrap());
}

#[test]
fn sign_flip_is_detected() {
    let e = sym_spectrum(&s(1), 3).unwrap();
    let flipped: Vec<Vec<ChainMap>> = e
        .seq()
        .actions()
        .iter()
        .enumerate()
        .map(|(n, acts)| if n == 2 { vec![acts[0].neg()] } else { acts.clone() })
        .collect();
    let seq = SymSeq::new(z(), e.seq().levels().to_vec(), flipped).unwrap();
    let bad = e.with_sequence(seq.clone());
    let report = validate_spectrum(&bad).unwrap();
    assert!(!report.passed());
    let found: Vec<_> = report.failures.iter().map(|f| (f.m, f.n, f.factor)).collect();
    assert!(found.contains(&(2, 0, Factor::Sphere)), "{found:?}");
    assert!(found.contains(&(1, 2, Factor::Level)), "{found:?}");
    assert!(report.failures.iter().all(|f| f.m + f.n >= 2));
    assert!(make_spectrum(s(1), seq, e.assembly().to_vec()).is_err());
}

fn levelwise_iso(f: &[ChainMap]) -> bool {
    f.iter().all(ChainMap::is_isomorphism)
}

#[test]
fn sigma_infty_levels() {
    let a = disk(&free(&z(), 1), 1).direct_sum(&s(0));
    let sp = s(1);
    let e = sigma_infty(&a, &sp, 3).unwrap();
    let tp = TensorPowers::new(&sp, 3).unwrap();
    for n in 0..=3 {
        assert_eq!(e.level(n), &tensor(tp.level(n), &a).unwrap());
    }
    // Σ^∞ 1 ≅ Sym(S) via the right unitor
    let unit = sigma_infty(&s(0), &sp, 3).unwrap();
    let sym = sym_spectrum(&sp, 3).unwrap();
    let ru: Vec<ChainMap> = (0..=3).map(|n| right_unitor(sym.level(n)).unwrap()).collect();
    assert!(levelwise_iso(&ru));
    assert!(spectrum_map_failures(&ru, &unit, &sym).unwrap().is_empty());
}

#[test]
fn tensoring_with_complexes() {
    let sp = s(1);
    let e = sym_spectrum(&sp, 3).unwrap();
    let a = disk(&free(&z(), 1), 0);
    let b = s(2);
    // E ⊗ 1 ≅ E
    let e1 = spectrum_tensor_complex(&e, &s(0)).unwrap();
    let ru: Vec<ChainMap> = (0..=3).map(|n| right_unitor(e.level(n)).unwrap()).collect();
    assert!(spectrum_map_failures(&ru, &e1, &e).unwrap().is_empty());
    // (E ⊗ A) ⊗ B ≅ E ⊗ (A ⊗ B)
    let lhs = spectrum_tensor_complex(&spectrum_tensor_complex(&e, &a).unwrap(), &b).unwrap();
    let rhs = spectrum_tensor_complex(&e, &tensor(&a, &b).unwrap()).unwrap();
    assert!(validate_spectrum(&lhs).unwrap().passed());
    let assoc: Vec<ChainMap> = (0..=3).map(|n| associator(e.level(n), &a, &b).unwrap()).collect();
    assert!(levelwise_iso(&assoc));
    assert!(spectrum_map_failures(&assoc, &lhs, &rhs).unwrap().is_empty());
}

#[test]
fn sigma_infty_preserves_quasi_isomorphisms() {
    // D^0 Z ⊕ S^0 Z → S^0 Z, projection
    let x = disk(&free(&z(), 1), 0).direct_sum(&s(0));
    let f = ChainMap::from_fn(&x, &s(0), |d| {
        let mut m = Matrix::zeros(s(0).rank(d), x.rank(d));
        if d == 0 {
            m[(0, 1)] = BigInt::from(1);
        }
        m
    });
    assert!(f.is_quasi_isomorphism());
    let sp = s(1);
    let maps = sigma_infty_map(&f, &sp, 3).unwrap();
    assert!(maps.iter().all(ChainMap::is_quasi_isomorphism));
    let (ex, ey) = (sigma_infty(&x, &sp, 3).unwrap(), sigma_infty(&s(0), &sp, 3).unwrap());
    assert!(spectrum_map_failures(&maps, &ex, &ey).unwrap().is_empty());
}

#[test]
fn shifted_spectra() {
    let e = sigma_infty(&disk(&free(&z(), 1), 0).direct_sum(&s(0)), &s(1), 4).unwrap();
    for i in 0..=2 {
        let ei = spectrum_shift_up(&e, i).unwrap();
        assert_eq!(ei.seq(), &seq_shift_up(e.seq(), i).unwrap());
        assert!(validate_spectrum(&ei).unwrap().passed(), "E{{{i}}}");
    }
    let twice = spectrum_shift_up(&spectrum_shift_up(&e, 1).unwrap(), 1).unwrap();
    assert_eq!(twice, spectrum_shift_up(&e, 2).unwrap());
}

#[test]
fn suspension_maps() {
    let sp = s(1);
    let e = sym_spectrum(&sp, 3).unwrap();
    let sigma = suspension_map(&e).unwrap();
    let source = spectrum_tensor_complex(&e, &sp).unwrap();
    let target = spectrum_shift_up(&e, 1).unwrap();
    assert!(spectrum_map_failures(&sigma, &source, &target).unwrap().is_empty());
    // on Sym(S) these are isomorphisms
    assert!(levelwise_iso(&sigma));

    let a = disk(&free(&z(), 1), 0).direct_sum(&s(0));
    let e = sigma_infty(&a, &sp, 3).unwrap();
    let sigma = suspension_map(&e).unwrap();
    let source = spectrum_tensor_complex(&e, &sp).unwrap();
    let target = spectrum_shift_up(&e, 1).unwrap();
    assert!(spectrum_map_failures(&sigma, &source, &target).unwrap().is_empty());
}

#[test]
fn iterated_suspension_cocycle() {
    let sp = s(1);
    let e = sigma_infty(&s(0).direct_sum(&s(1)), &sp, 3).unwrap();
    let zero = iterated_suspension(&e, 0).unwrap();
    for (n, f) in zero.iter().enumerate() {
        assert_eq!(f, &right_unitor(e.level(n)).unwrap());
    }
    assert_eq!(iterated_suspension(&e, 1).unwrap(), suspension_map(&e).unwrap());
    let tp = TensorPowers::new(&sp, 3).unwrap();
    let sym = sym_monoid(&sp, 3).unwrap();
    for (m, n) in [(1, 1), (1, 2), (2, 1)] {
        let total = iterated_suspension(&e, m + n).unwrap();
        let inner = iterated_suspension(&e, n).unwrap();
        let outer = iterated_suspension(&spectrum_shift_up(&e, n).unwrap(), m).unwrap();
        let mu = &sym.mult[&(n, m)];
        for k in 0..total.len() {
            let split = ChainMap::from_fn(
                &tensor(e.level(k), tp.level(n + m)).unwrap(),
                &tensor(e.level(k), mu.source()).unwrap(),
                |d| tensor_chain_maps(&ChainMap::identity(e.level(k)), mu).unwrap().matrix(d).transpose(),
            );
            let assoc = super::spectrum::associator_inverse(e.level(k), tp.level(n), tp.level(m)).unwrap();
            let grow = tensor_chain_maps(&inner[k], &ChainMap::identity(tp.level(m))).unwrap();
            let rhs = outer[k].compose(&grow).compose(&assoc).compose(&split);
            assert_eq!(total[k], rhs, "(m,n,k) = ({m},{n},{k})");
        }
    }
}

#[test]
fn weak_omega_detection() {
    for d in [0, 1, 2] {
        let sp = s(d);
        let e = shift_spectrum(&sp, 4).unwrap();
        let report = is_weak_omega_spectrum(&e, None, None, None).unwrap();
        assert!(report.is_weak_omega(), "d = {d}: {report:?}");
        let sigma = suspension_map(&e).unwrap();
        assert!(sigma.iter().all(ChainMap::is_quasi_isomorphism));
        // breaking σ_2
        let broken = e.with_assembly(2, ChainMap::zero(e.assembly()[2].source(), e.level(3)));
        let report = is_weak_omega_spectrum(&broken, None, None, None).unwrap();
        assert_eq!(report.adjoint_failures, vec![2]);
    }
    // S = unit: σ adjoint to identities
    let e = shift_spectrum(&s(0), 3).unwrap();
    let dd = DescentData::frees(&z());
    assert!(is_weak_omega_spectrum(&e, Some(&dd), None, None).unwrap().is_stably_fibrant());
    // for S of rank 2, Hom(S, S) is bigger than E_0 = Z
    let e = sym_spectrum(&s(0).direct_sum(&s(0)), 2).unwrap();
    assert!(!is_weak_omega_spectrum(&e, None, None, None).unwrap().is_weak_omega());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_tensor_powers_satisfy_coxeter(degrees in prop::collection::vec(-1i64..=1, 1..3)) {
        let x = degrees
            .iter()
            .fold(Complex::zero(z()), |acc, &d| acc.direct_sum(&s(d)));
        let sym = sym_monoid(&x, 3).unwrap();
        prop_assert!(sym.seq.coxeter_failures().is_empty());
        let down = seq_shift_down(&sym.seq, 1);
        prop_assert!(down.coxeter_failures().is_empty());
    }
}
