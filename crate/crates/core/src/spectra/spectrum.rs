use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::perm::{self, Perm};
use super::seq::{equivariance_failures, seq_shift_up, SymSeq};
use super::sym::{sym_monoid, TensorPowers};
use crate::coeff::Matrix;
use crate::complex::{ChainMap, Complex, HomComplex};
use crate::error::{Error, Result};
use crate::localization::{is_t_local, TSet};
use crate::model::{is_g_local, DescentData};
use crate::monoidal::{associator, braiding, left_unitor, right_unitor, tensor, tensor_chain_maps, TensorComplex};

/// A symmetric `S`-spectrum truncated at level `N`: a symmetric sequence
/// with assembly maps `σ_n : S ⊗ E_n → E_{n+1}` for `n < N`. In `E_{m+n}`
/// the `S`-factors of `S^{⊗m} ⊗ E_n` occupy the first `m` letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    s: Complex,
    seq: SymSeq,
    assembly: Vec<ChainMap>,
}

impl Spectrum {
    /// Skips the equivariance check; shapes must already match.
    pub fn new_unchecked(s: Complex, seq: SymSeq, assembly: Vec<ChainMap>) -> Self {
        Spectrum { s, seq, assembly }
    }

    pub fn s(&self) -> &Complex {
        &self.s
    }

    pub fn seq(&self) -> &SymSeq {
        &self.seq
    }

    pub fn truncation(&self) -> usize {
        self.seq.truncation()
    }

    pub fn level(&self, n: usize) -> &Complex {
        self.seq.level(n)
    }

    pub fn assembly(&self) -> &[ChainMap] {
        &self.assembly
    }

    /// Replaces `σ_n`, keeping everything else. For negative controls.
    pub fn with_assembly(&self, n: usize, sigma: ChainMap) -> Spectrum {
        let mut out = self.clone();
        out.assembly[n] = sigma;
        out
    }

    /// Replaces the sequence, keeping `S` and the assembly maps.
    pub fn with_sequence(&self, seq: SymSeq) -> Spectrum {
        Spectrum { seq, ..self.clone() }
    }
}

/// Which factor a failing transposition acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    Sphere,
    Level,
}

/// `Σ_{m,n} : S^{⊗m} ⊗ E_n → E_{m+n}` fails to commute with `s_k` acting
/// on the given factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceFailure {
    pub m: usize,
    pub n: usize,
    pub factor: Factor,
    pub k: usize,
}

impl std::fmt::Display for EquivarianceFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let on = match self.factor {
            Factor::Sphere => "S^m",
            Factor::Level => "E_n",
        };
        write!(f, "(m,n) = ({},{}): s_{} on {on}", self.m, self.n, self.k)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpectrumReport {
    pub coxeter: Vec<String>,
    pub failures: Vec<EquivarianceFailure>,
}

impl SpectrumReport {
    pub fn passed(&self) -> bool {
        self.coxeter.is_empty() && self.failures.is_empty()
    }
}

fn check_shapes(s: &Complex, seq: &SymSeq, assembly: &[ChainMap]) -> Result<()> {
    seq.ring().check_same(s.ring())?;
    if assembly.len() != seq.truncation() {
        return Err(Error::InvalidEquivariance(format!(
            "{} assembly maps for truncation {}",
            assembly.len(),
            seq.truncation()
        )));
    }
    for (n, sigma) in assembly.iter().enumerate() {
        if sigma.source() != &tensor(s, seq.level(n))? || sigma.target() != seq.level(n + 1) {
            return Err(Error::InvalidEquivariance(format!("σ_{n} is not a map S ⊗ E_{n} → E_{}", n + 1)));
        }
    }
    Ok(())
}

/// Checks the shapes, the Coxeter relations and the equivariance of every
/// iterated assembly map.
pub fn make_spectrum(s: Complex, seq: SymSeq, assembly: Vec<ChainMap>) -> Result<Spectrum> {
    check_shapes(&s, &seq, &assembly)?;
    let e = Spectrum { s, seq, assembly };
    let report = validate_spectrum(&e)?;
    if !report.passed() {
        let mut all = report.coxeter.clone();
        all.extend(report.failures.iter().map(ToString::to_string));
        return Err(Error::InvalidEquivariance(all.join("; ")));
    }
    Ok(e)
}

/// `Σ_{m,n}` for all `m + n ≤ N`, indexed `[m][n]`.
fn iterated_assembly(e: &Spectrum, tp: &TensorPowers) -> Result<Vec<Vec<ChainMap>>> {
    let big_n = e.truncation();
    let mut sig: Vec<Vec<ChainMap>> = vec![(0..=big_n).map(|n| left_unitor(e.level(n))).collect::<Result<_>>()?];
    for m in 1..=big_n {
        let mut row = Vec::new();
        for n in 0..=big_n - m {
            let step = tensor_chain_maps(&ChainMap::identity(tp.level(m - 1)), &e.assembly[n])?;
            let assoc = associator(tp.level(m - 1), &e.s, e.level(n))?;
            row.push(sig[m - 1][n + 1].compose(&step).compose(&assoc));
        }
        sig.push(row);
    }
    Ok(sig)
}

/// Every `(m, n, s_k)` at which an iterated assembly map fails to be
/// `𝔖_m × 𝔖_n`-equivariant.
pub fn validate_spectrum(e: &Spectrum) -> Result<SpectrumReport> {
    check_shapes(&e.s, &e.seq, &e.assembly)?;
    let coxeter = e.seq.coxeter_failures();
    let big_n = e.truncation();
    let tp = TensorPowers::new(&e.s, big_n)?;
    let sig = iterated_assembly(e, &tp)?;
    let mut failures = Vec::new();
    for m in 0..=big_n {
        for n in 0..=big_n - m {
            let sigma = &sig[m][n];
            for k in 0..m.saturating_sub(1) {
                let g = tp.permute(m, &perm::transposition(m, k));
                let lhs = sigma.compose(&tensor_chain_maps(&g, &ChainMap::identity(e.level(n)))?);
                if lhs != e.seq.transposition(m + n, k).compose(sigma) {
                    failures.push(EquivarianceFailure { m, n, factor: Factor::Sphere, k });
                }
            }
            for k in 0..n.saturating_sub(1) {
                let g = e.seq.transposition(n, k);
                let lhs = sigma.compose(&tensor_chain_maps(&ChainMap::identity(tp.level(m)), g)?);
                if lhs != e.seq.transposition(m + n, m + k).compose(sigma) {
                    failures.push(EquivarianceFailure { m, n, factor: Factor::Level, k });
                }
            }
        }
    }
    Ok(SpectrumReport { coxeter, failures })
}

/// Re-labels a map whose source is isomorphic to `source` with the same
/// basis layout.
fn retarget_source(f: &ChainMap, source: &Complex) -> ChainMap {
    debug_assert!(source.degrees().all(|d| source.rank(d) == f.source().rank(d)));
    ChainMap::from_fn(source, f.target(), |d| f.matrix(d))
}

/// `Sym(S)` as a spectrum, with `σ_n = μ_{1,n}`.
pub fn sym_spectrum(s: &Complex, truncation: usize) -> Result<Spectrum> {
    let r = sym_monoid(s, truncation)?;
    let assembly = (0..truncation)
        .map(|n| Ok(retarget_source(&r.mult[&(1, n)], &tensor(s, r.seq.level(n))?)))
        .collect::<Result<_>>()?;
    Ok(Spectrum {
        s: s.clone(),
        seq: r.seq,
        assembly,
    })
}

/// The zero spectrum.
pub fn zero_spectrum(s: &Complex, truncation: usize) -> Result<Spectrum> {
    let seq = SymSeq::zero(s.ring().clone(), truncation);
    let assembly = (0..truncation)
        .map(|n| Ok(ChainMap::zero(&tensor(s, seq.level(n))?, seq.level(n + 1))))
        .collect::<Result<_>>()?;
    Ok(Spectrum { s: s.clone(), seq, assembly })
}

/// The inverse of the associator, which is a signless permutation matrix.
pub(crate) fn associator_inverse(x: &Complex, y: &Complex, z: &Complex) -> Result<ChainMap> {
    let a = associator(x, y, z)?;
    Ok(ChainMap::from_fn(a.target(), a.source(), |d| a.matrix(d).transpose()))
}

/// `E ⊗ A = (E_n ⊗ A, σ_n ⊗ 1_A)`.
pub fn spectrum_tensor_complex(e: &Spectrum, a: &Complex) -> Result<Spectrum> {
    let id = ChainMap::identity(a);
    let levels: Vec<Complex> = e.seq.levels().iter().map(|l| tensor(l, a)).collect::<Result<_>>()?;
    let actions = e
        .seq
        .actions()
        .iter()
        .map(|acts| acts.iter().map(|g| tensor_chain_maps(g, &id)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let seq = SymSeq::new_unchecked(e.seq.ring().clone(), levels, actions);
    let assembly = e
        .assembly
        .iter()
        .enumerate()
        .map(|(n, sigma)| Ok(tensor_chain_maps(sigma, &id)?.compose(&associator_inverse(&e.s, e.level(n), a)?)))
        .collect::<Result<_>>()?;
    Ok(Spectrum {
        s: e.s.clone(),
        seq,
        assembly,
    })
}

/// `Σ^∞ A = Sym(S) ⊗ A`.
pub fn sigma_infty(a: &Complex, s: &Complex, truncation: usize) -> Result<Spectrum> {
    spectrum_tensor_complex(&sym_spectrum(s, truncation)?, a)
}

/// `Σ^∞ f`, levelwise `1 ⊗ f`.
pub fn sigma_infty_map(f: &ChainMap, s: &Complex, truncation: usize) -> Result<Vec<ChainMap>> {
    let tp = TensorPowers::new(s, truncation)?;
    (0..=truncation)
        .map(|n| tensor_chain_maps(&ChainMap::identity(tp.level(n)), f))
        .collect()
}

/// `Ω^∞ E = E_0`.
pub fn omega_infty(e: &Spectrum) -> Complex {
    e.level(0).clone()
}

/// The cycle sending letter 0 to letter `i` and `r` to `r - 1` for `1 ≤ r ≤ i`.
fn insert_at(len: usize, i: usize) -> Perm {
    (0..len)
        .map(|r| match r {
            0 => i,
            r if r <= i => r - 1,
            r => r,
        })
        .collect()
}

/// `E{i}`: `E{i}_n = E_{n+i}` with `𝔖_n` on the last `n` letters. The new
/// `S`-letter of the assembly map is moved behind the `i` extra letters.
pub fn spectrum_shift_up(e: &Spectrum, i: usize) -> Result<Spectrum> {
    let seq = seq_shift_up(&e.seq, i)?;
    let assembly = (0..seq.truncation())
        .map(|n| {
            let len = n + i + 1;
            e.seq.act(len, &insert_at(len, i)).compose(&e.assembly[n + i])
        })
        .collect();
    Ok(Spectrum {
        s: e.s.clone(),
        seq,
        assembly,
    })
}

/// `σ : E ⊗ S → E{1}`, levelwise `σ_n ∘ τ_{E_n,S}`, for `n < N`.
pub fn suspension_map(e: &Spectrum) -> Result<Vec<ChainMap>> {
    e.assembly
        .iter()
        .enumerate()
        .map(|(n, sigma)| Ok(sigma.compose(&braiding(e.level(n), &e.s)?)))
        .collect()
}

/// `σ^k : E ⊗ S^{⊗k} → E{k}` for levels `n ≤ N - k`, built one factor at a
/// time: `σ^k = σ_{E{k-1}} ∘ (σ^{k-1} ⊗ 1_S) ∘ α^{-1}`.
pub fn iterated_suspension(e: &Spectrum, k: usize) -> Result<Vec<ChainMap>> {
    let big_n = e.truncation();
    if k > big_n {
        return Err(Error::InvariantViolation(format!("σ^{k} needs truncation at least {k}")));
    }
    let tp = TensorPowers::new(&e.s, k)?;
    let mut current: Vec<ChainMap> = (0..=big_n).map(|n| right_unitor(e.level(n))).collect::<Result<_>>()?;
    for j in 1..=k {
        let susp = suspension_map(&spectrum_shift_up(e, j - 1)?)?;
        current = (0..=big_n - j)
            .map(|n| {
                let grow = tensor_chain_maps(&current[n], &ChainMap::identity(&e.s))?;
                let assoc = associator_inverse(e.level(n), tp.level(j - 1), &e.s)?;
                Ok(susp[n].compose(&grow).compose(&assoc))
            })
            .collect::<Result<_>>()?;
    }
    Ok(current)
}

/// Failures of levelwise maps `E → F` to be a map of spectra: equivariance
/// and `f_{n+1} ∘ σ_n = σ'_n ∘ (1_S ⊗ f_n)`.
pub fn spectrum_map_failures(f: &[ChainMap], e: &Spectrum, g: &Spectrum) -> Result<Vec<String>> {
    let mut out: Vec<String> = equivariance_failures(f, &e.seq, &g.seq)
        .into_iter()
        .map(|(n, k)| format!("level {n}: not equivariant for s_{k}"))
        .collect();
    let id = ChainMap::identity(&e.s);
    for n in 0..f.len().saturating_sub(1).min(e.assembly.len()).min(g.assembly.len()) {
        let lhs = f[n + 1].compose(&e.assembly[n]);
        let rhs = g.assembly[n].compose(&tensor_chain_maps(&id, &f[n])?);
        if lhs != rhs {
            out.push(format!("level {n}: does not commute with the assembly map"));
        }
    }
    Ok(out)
}

/// `σ̃_n : E_n → Hom(S, E_{n+1})`, `σ̃(x)(s) = (-1)^{|s||x|} σ_n(s ⊗ x)`.
pub fn adjoint_assembly(e: &Spectrum, n: usize) -> Result<ChainMap> {
    let (x, y) = (e.level(n), e.level(n + 1));
    let hc = HomComplex::new(&e.s, y)?;
    let tc = TensorComplex::new(&e.s, x)?;
    let sigma = &e.assembly[n];
    let mut comps = BTreeMap::new();
    for d in x.degrees() {
        let columns: Vec<Vec<BigInt>> = (0..x.rank(d))
            .map(|c| {
                let maps = e
                    .s
                    .degrees()
                    .map(|p| {
                        let mut m = Matrix::zeros(y.rank(p + d), e.s.rank(p));
                        let sign = if (p * d).rem_euclid(2) == 0 { 1 } else { -1 };
                        let image = sigma.matrix(p + d);
                        for a in 0..e.s.rank(p) {
                            if let Some(col) = tc.encode(p, d, a, c) {
                                for r in 0..y.rank(p + d) {
                                    m[(r, a)] = &image[(r, col)] * sign;
                                }
                            }
                        }
                        (p, m)
                    })
                    .collect();
                hc.element(d, &maps)
            })
            .collect();
        comps.insert(d, Matrix::from_columns(hc.complex().rank(d), &columns));
    }
    ChainMap::new(x.clone(), hc.complex().clone(), comps)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OmegaReport {
    /// Levels `n` whose adjoint `σ̃_n` is not a quasi-isomorphism.
    pub adjoint_failures: Vec<usize>,
    /// Levels that fail the requested locality checks.
    pub local_failures: Vec<usize>,
}

impl OmegaReport {
    pub fn is_weak_omega(&self) -> bool {
        self.adjoint_failures.is_empty()
    }

    /// Weak `Ω^∞` and levelwise local.
    pub fn is_stably_fibrant(&self) -> bool {
        self.is_weak_omega() && self.local_failures.is_empty()
    }
}

/// Whether every `σ̃_n` is a quasi-isomorphism. With `dd` or `ts` given,
/// the levels are also tested for `𝒢`- and `𝒯`-locality over `range`.
pub fn is_weak_omega_spectrum(
    e: &Spectrum,
    dd: Option<&DescentData>,
    ts: Option<&TSet>,
    range: Option<(i64, i64)>,
) -> Result<OmegaReport> {
    let mut report = OmegaReport::default();
    for n in 0..e.truncation() {
        if !adjoint_assembly(e, n)?.is_quasi_isomorphism() {
            report.adjoint_failures.push(n);
        }
    }
    for n in 0..=e.truncation() {
        let mut local = true;
        if let Some(dd) = dd {
            local &= is_g_local(e.level(n), dd, range)?;
        }
        if let Some(ts) = ts {
            local &= is_t_local(e.level(n), ts, range)?.is_local();
        }
        if !local {
            report.local_failures.push(n);
        }
    }
    Ok(report)
}

/// The shift spectrum over `S = sphere(R, d)`: `E_n = S^{⊗n}` collapsed to
/// a sphere in degree `dn`, `s_k` acting by `(-1)^{d}`, `σ_n` the canonical
/// isomorphism.
pub fn shift_spectrum(s: &Complex, truncation: usize) -> Result<Spectrum> {
    let Some((d, hi)) = s.bounds() else {
        return Err(Error::InvariantViolation("the shift spectrum needs a nonzero sphere".into()));
    };
    if d != hi || s.rank(d) != 1 {
        return Err(Error::InvariantViolation("the shift spectrum needs S = sphere(R, d)".into()));
    }
    let module = s.module(d).clone();
    let levels: Vec<Complex> = (0..=truncation)
        .map(|n| crate::complex::sphere(&module, d * n as i64))
        .collect();
    let sign = BigInt::from(if d.rem_euclid(2) == 0 { 1 } else { -1 });
    let seq = SymSeq::from_fn(s.ring(), levels, |n, _| ChainMap::identity(&crate::complex::sphere(&module, d * n as i64)).scale(&sign));
    let assembly = (0..truncation)
        .map(|n| {
            let src = tensor(s, seq.level(n))?;
            Ok(ChainMap::from_fn(&src, seq.level(n + 1), |k| {
                Matrix::identity(seq.level(n + 1).rank(k).min(src.rank(k)))
            }))
        })
        .collect::<Result<_>>()?;
    make_spectrum(s.clone(), seq, assembly)
}
