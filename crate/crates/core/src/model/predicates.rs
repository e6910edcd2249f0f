use crate::coeff::HomSpace;
use crate::complex::{chain_kernel, hull, sphere, ChainMap, Complex, HomComplex};
use crate::error::{Error, Result};

use super::factor::cofibrant_replacement;
use super::lifting::has_rlp;
use super::{generating_trivial_cofibrations, DescentData};

/// Outcome of [`is_fibration`] with the pieces that decide it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationReport {
    /// `(degree, generator index)` where `Hom(E, p^n)` is not surjective.
    pub surjectivity_failures: Vec<(i64, usize)>,
    pub kernel_g_local: bool,
    pub kernel_h_flasque: bool,
    /// Right lifting property against every map of `J` in the window.
    pub rlp_against_j: bool,
    pub is_fibration: bool,
}

impl FibrationReport {
    pub fn g_surjective(&self) -> bool {
        self.surjectivity_failures.is_empty()
    }

    /// Whether the characterization and the lifting computation agree.
    pub fn consistent(&self) -> bool {
        self.is_fibration == self.rlp_against_j
    }
}

fn check_range(given: Option<(i64, i64)>, needed: Option<(i64, i64)>) -> Result<Option<(i64, i64)>> {
    match (given, needed) {
        (None, needed) => Ok(needed),
        (Some(g), None) => Ok(Some(g)),
        (Some((gl, gh)), Some((nl, nh))) => {
            if gl <= nl && gh >= nh {
                Ok(Some((gl, gh)))
            } else {
                Err(Error::RangeTooNarrow {
                    given_lo: gl,
                    given_hi: gh,
                    needed_lo: nl,
                    needed_hi: nh,
                })
            }
        }
    }
}

/// Shifts `n` where `Hom(X, Y)^n` can be nonzero, widened by one.
fn hom_window(x: &Complex, y: &Complex) -> Option<(i64, i64)> {
    match (x.bounds(), y.bounds()) {
        (Some((xl, xh)), Some((yl, yh))) => Some((yl - xh - 1, yh - xl + 1)),
        _ => None,
    }
}

/// `Hom_K(H, C[n]) = 0` for every `H ∈ ℋ` and `n` in the range. `None`
/// uses the full window; a given range must cover it.
pub fn is_h_flasque(c: &Complex, dd: &DescentData, range: Option<(i64, i64)>) -> Result<bool> {
    let needed = hull(&dd.acyclics().iter().map(|h| hom_window(&h.complex, c)).collect::<Vec<_>>());
    let Some((lo, hi)) = check_range(range, needed)? else {
        return Ok(true);
    };
    for h in dd.acyclics() {
        let hc = HomComplex::new(&h.complex, c)?;
        if (lo..=hi).any(|n| !hc.complex().homology(n).is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For each `E ∈ 𝒢`, the map `Hom_K(E[-m], C) → Hom_D(E[-m], C)` induced by
/// a free resolution `P → S^0E` is an isomorphism for every `m` in range.
pub fn is_g_local(c: &Complex, dd: &DescentData, range: Option<(i64, i64)>) -> Result<bool> {
    dd.require_generators()?;
    let frees = DescentData::frees(dd.ring());
    for e in dd.generators() {
        let s = sphere(e, 0);
        let rep = cofibrant_replacement(&s, &frees)?;
        let hs = HomComplex::new(&s, c)?;
        let hp = HomComplex::new(&rep.complex, c)?;
        let qstar = hs.precompose(&rep.q, &hp);
        let needed = hull(&[hom_window(&s, c), hom_window(&rep.complex, c)]);
        let Some((lo, hi)) = check_range(range, needed)? else {
            continue;
        };
        if (lo..=hi).any(|m| !qstar.homology_map(m).is_isomorphism()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fibration test: degreewise `𝒢`-surjective with `𝒢`-local kernel,
/// cross-checked against the lifting property for `J` over the window.
pub fn is_fibration(p: &ChainMap, dd: &DescentData, range: Option<(i64, i64)>) -> Result<FibrationReport> {
    dd.require_generators()?;
    let window = range.or_else(|| p.window());
    let mut surjectivity_failures = Vec::new();
    if let Some((lo, hi)) = window {
        for n in lo..=hi {
            let f = p.component(n);
            for (k, e) in dd.generators().iter().enumerate() {
                let hs = HomSpace::new(e, f.source())?;
                let ht = HomSpace::new(e, f.target())?;
                if !hs.postcompose(&f, &ht).is_surjective() {
                    surjectivity_failures.push((n, k));
                }
            }
        }
    }
    let ker = chain_kernel(p).complex;
    let kernel_g_local = is_g_local(&ker, dd, None)?;
    let kernel_h_flasque = is_h_flasque(&ker, dd, None)?;

    let mut j_range = window;
    for h in dd.acyclics() {
        // Cyl(H)[n] sits in degrees [H.lo - 1 - n, H.hi - n].
        for side in [p.source(), p.target()] {
            if let (Some((hl, hh)), Some((cl, ch))) = (h.complex.bounds(), side.bounds()) {
                j_range = hull(&[j_range, Some((hl - 2 - ch, hh + 1 - cl))]);
            }
        }
    }
    let mut rlp_against_j = true;
    for j in generating_trivial_cofibrations(dd, j_range)? {
        if !has_rlp(&j, p)? {
            rlp_against_j = false;
            break;
        }
    }
    let is_fibration = surjectivity_failures.is_empty() && kernel_g_local;
    Ok(FibrationReport {
        surjectivity_failures,
        kernel_g_local,
        kernel_h_flasque,
        rlp_against_j,
        is_fibration,
    })
}
