//! Locality with respect to a set `𝒯` of complexes, localized fibrations,
//! and a finite tower that cones off derived maps out of `𝒯`.

use crate::coeff::{FGModule, Matrix};
use crate::complex::{
    check_short_exact, cone, hull, pushout, ChainMap, Complex, HomComplex, Homology, LongExactSequence,
};
use crate::error::{Error, Result};
use crate::model::{cofibrant_replacement, is_fibration, DescentData, Replacement};

/// `𝒯` with a cofibrant model `q : T' → T` for each member.
#[derive(Clone, Debug)]
pub struct TSet {
    complexes: Vec<Complex>,
    models: Vec<Replacement>,
}

impl TSet {
    pub fn new(complexes: Vec<Complex>, dd: &DescentData) -> Result<Self> {
        let models = complexes
            .iter()
            .map(|t| {
                dd.ring().check_same(t.ring())?;
                cofibrant_replacement(t, dd)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TSet { complexes, models })
    }

    pub fn complexes(&self) -> &[Complex] {
        &self.complexes
    }

    pub fn models(&self) -> &[Replacement] {
        &self.models
    }

    pub fn is_empty(&self) -> bool {
        self.complexes.is_empty()
    }
}

/// A nonzero class of `Hom_D(T, K[n])`, represented on the cofibrant model.
#[derive(Clone, Debug)]
pub struct Witness {
    pub t_index: usize,
    pub shift: i64,
    /// The group `Hom_D(T, K[n])`.
    pub group: FGModule,
    /// Index of the generator within `group`.
    pub generator: usize,
    /// `T' → K[n]`
    pub map: ChainMap,
}

#[derive(Clone, Debug)]
pub struct LocalityReport {
    pub range: Option<(i64, i64)>,
    pub witnesses: Vec<Witness>,
}

impl LocalityReport {
    pub fn is_local(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Shifts `n` where `Hom(T', K)^n` can be nonzero, widened by one.
fn joint_window(ts: &TSet, k: &Complex) -> Option<(i64, i64)> {
    let windows: Vec<_> = ts
        .models
        .iter()
        .map(|m| match (m.complex.bounds(), k.bounds()) {
            (Some((tl, th)), Some((kl, kh))) => Some((kl - th - 1, kh - tl + 1)),
            _ => None,
        })
        .collect();
    hull(&windows)
}

/// Every generator of every nonzero `Hom_D(T, K[n])`, `n` in range.
fn classes(k: &Complex, ts: &TSet, range: Option<(i64, i64)>) -> Result<Vec<Witness>> {
    let Some((lo, hi)) = range else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for (t_index, m) in ts.models.iter().enumerate() {
        let hc = HomComplex::new(&m.complex, k)?;
        for shift in lo..=hi {
            let h = Homology::new(hc.complex(), shift);
            for generator in 0..h.module.rank() {
                out.push(Witness {
                    t_index,
                    shift,
                    group: h.module.clone(),
                    generator,
                    map: hc.to_chain_map(shift, &h.cycle(generator))?,
                });
            }
        }
    }
    Ok(out)
}

/// `Hom_D(T, K[n]) = 0` for all `T ∈ 𝒯` and `n` in range. `None` uses the
/// joint window; a given range must cover it.
pub fn is_t_local(k: &Complex, ts: &TSet, range: Option<(i64, i64)>) -> Result<LocalityReport> {
    let needed = joint_window(ts, k);
    let range = match (range, needed) {
        (Some((gl, gh)), Some((nl, nh))) if gl > nl || gh < nh => {
            return Err(Error::RangeTooNarrow {
                given_lo: gl,
                given_hi: gh,
                needed_lo: nl,
                needed_hi: nh,
            })
        }
        (Some(g), _) => Some(g),
        (None, n) => n,
    };
    Ok(LocalityReport {
        range,
        witnesses: classes(k, ts, range)?,
    })
}

/// A fibration of the underlying structure whose kernel is `𝒯`-local.
pub fn localized_fibration_check(p: &ChainMap, ts: &TSet, dd: &DescentData) -> Result<bool> {
    if !is_fibration(p, dd, None)?.is_fibration {
        return Ok(false);
    }
    let ker = crate::complex::chain_kernel(p).complex;
    Ok(is_t_local(&ker, ts, None)?.is_local())
}

/// One coned-off class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub t_index: usize,
    pub shift: i64,
    pub generator: usize,
    pub group: FGModule,
}

impl From<&Witness> for Attachment {
    fn from(w: &Witness) -> Self {
        Attachment {
            t_index: w.t_index,
            shift: w.shift,
            generator: w.generator,
            group: w.group.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub stages: Vec<Complex>,
    /// `maps[k] : stages[k] → stages[k + 1]`
    pub maps: Vec<ChainMap>,
    /// `log[k]` lists the classes coned off to form `stages[k + 1]`.
    pub log: Vec<Vec<Attachment>>,
    /// Classes still alive in the last stage.
    pub residual: Vec<Attachment>,
    /// Shift range searched; `None` means each stage's own window.
    pub range: Option<(i64, i64)>,
}

impl Tower {
    pub fn last(&self) -> &Complex {
        self.stages.last().expect("a tower has a first stage")
    }

    /// `stages[0] → stages[k]`
    pub fn composite(&self, k: usize) -> ChainMap {
        let mut out = ChainMap::identity(&self.stages[0]);
        for m in &self.maps[..k] {
            out = m.compose(&out);
        }
        out
    }

    pub fn converged(&self) -> bool {
        self.residual.is_empty()
    }
}

/// Cones off every class in `classes` at once: the pushout of `C` along
/// `⊕ T'[-n] → ⊕ Cone(1_{T'})[-n]`.
fn attach(c: &Complex, ts: &TSet, classes: &[Witness]) -> Result<ChainMap> {
    let mut incl: Option<ChainMap> = None;
    let mut onto: Option<ChainMap> = None;
    for w in classes {
        let t = &ts.models[w.t_index].complex;
        let u = cone(&ChainMap::identity(t)).u.shift(-w.shift);
        let shifted = w.map.shift(-w.shift);
        let f = ChainMap::new(
            u.source().clone(),
            c.clone(),
            u.source().degrees().map(|n| (n, shifted.matrix(n))).collect(),
        )?;
        incl = Some(match incl {
            None => u,
            Some(i) => i.direct_sum(&u),
        });
        onto = Some(match onto {
            None => f,
            Some(g) => g.hstack(&f),
        });
    }
    match (incl, onto) {
        (Some(i), Some(f)) => Ok(pushout(&i, &f)?.j),
        _ => Ok(ChainMap::identity(c)),
    }
}

/// Stage `k + 1` cones off every class of `Hom_D(T, stage_k[n])` with `n`
/// in range, or in the stage's window when no range is given. Convergence is reported through the residual classes.
pub fn t_cell_tower(c: &Complex, ts: &TSet, steps: usize, range: Option<(i64, i64)>) -> Result<Tower> {
    let window = |k: &Complex| range.or_else(|| joint_window(ts, k));
    let mut stages = vec![c.clone()];
    let mut maps = Vec::new();
    let mut log = Vec::new();
    let mut alive = classes(c, ts, window(c))?;
    for _ in 0..steps {
        let stage = stages.last().expect("nonempty");
        let j = attach(stage, ts, &alive)?;
        log.push(alive.iter().map(Attachment::from).collect());
        let next = j.target().clone();
        alive = classes(&next, ts, window(&next))?;
        maps.push(j);
        stages.push(next);
    }
    Ok(Tower {
        stages,
        maps,
        log,
        residual: alive.iter().map(Attachment::from).collect(),
        range,
    })
}

/// Outcome of [`pushout_square_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    /// `0 → A → B ⊕ C → D → 0` is exact and its long exact sequence holds.
    pub sequence_exact: bool,
    /// The induced map `Cone(i) → Cone(j)` is a quasi-isomorphism.
    pub cones_quasi_isomorphic: bool,
    /// The cokernels of `i` and `j` are isomorphic degreewise.
    pub cokernels_isomorphic: bool,
    /// If `i` is a quasi-isomorphism then so is `j`.
    pub transfers_quasi_isomorphism: bool,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.sequence_exact && self.cones_quasi_isomorphic && self.cokernels_isomorphic && self.transfers_quasi_isomorphism
    }
}

/// For `B ←i A →f C` with `i` degreewise injective and pushout `j : C → D`,
/// checks the homology-level consequences of the square being a homotopy
/// pushout.
pub fn pushout_square_probe(i: &ChainMap, f: &ChainMap) -> Result<SquareReport> {
    if !i.is_degreewise_injective() {
        return Err(Error::InvalidMap("the left edge must be degreewise injective".into()));
    }
    let po = pushout(i, f)?;
    let sequence_exact = check_short_exact(&po.relation, &po.projection).is_ok()
        && LongExactSequence::new(&po.relation, &po.projection).is_exact();

    let ci = cone(i);
    let cj = cone(&po.j);
    let (a, b) = (i.source(), i.target());
    let (c, d) = (po.j.source(), po.j.target());
    let induced = ChainMap::new(
        ci.complex.clone(),
        cj.complex.clone(),
        hull(&[ci.complex.bounds(), cj.complex.bounds()])
            .map(|(lo, hi)| lo..=hi)
            .into_iter()
            .flatten()
            .map(|n| {
                let g = po.g.matrix(n);
                let fa = f.matrix(n + 1);
                let mut m = Matrix::zeros(d.rank(n) + c.rank(n + 1), b.rank(n) + a.rank(n + 1));
                m.set_block(0, 0, &g);
                m.set_block(d.rank(n), b.rank(n), &fa);
                (n, m)
            })
            .collect(),
    )?;
    let cones_quasi_isomorphic = induced.is_quasi_isomorphism();

    let ki = crate::complex::chain_cokernel(i).complex;
    let kj = crate::complex::chain_cokernel(&po.j).complex;
    let cokernels_isomorphic = hull(&[ki.bounds(), kj.bounds()])
        .is_none_or(|(lo, hi)| (lo..=hi).all(|n| ki.module(n).is_isomorphic(kj.module(n))));

    let transfers_quasi_isomorphism = !i.is_quasi_isomorphism() || po.j.is_quasi_isomorphism();
    Ok(SquareReport {
        sequence_exact,
        cones_quasi_isomorphic,
        cokernels_isomorphic,
        transfers_quasi_isomorphism,
    })
}

#[cfg(test)]
mod tests;
