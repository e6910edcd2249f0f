//! Bounded cochain complexes over a coefficient ring, chain maps and the
//! elementary constructions built from them.

mod constructions;
mod exact;
mod hom;
mod homology;
mod squares;

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::coeff::{FGModule, Matrix, ModuleMap, Ring};
use crate::error::{Error, Result};

pub use constructions::{cone, cylinder, disk, disk_inclusion, shift, sphere, Cone, Cylinder};
pub use exact::{check_short_exact, exact_at, LongExactSequence};
pub use hom::{find_homotopy, hom_complex, homotopy_classes, Components, HomBlock, HomComplex, Homotopy};
pub use homology::Homology;
pub use squares::{chain_cokernel, chain_kernel, pullback, pushout, ChainCokernel, ChainKernel, Pullback, Pushout};

/// Inclusive degree interval covering every given interval, if any.
pub(crate) fn hull(ranges: &[Option<(i64, i64)>]) -> Option<(i64, i64)> {
    ranges.iter().flatten().fold(None, |acc, &(a, b)| match acc {
        None => Some((a, b)),
        Some((lo, hi)) => Some((lo.min(a), hi.max(b))),
    })
}

/// Assembles a matrix from blocks placed on a grid of row and column sizes.
pub(crate) fn block_matrix(rows: &[usize], cols: &[usize], blocks: &[(usize, usize, &Matrix)]) -> Matrix {
    let r0: Vec<usize> = offsets(rows);
    let c0: Vec<usize> = offsets(cols);
    let mut m = Matrix::zeros(rows.iter().sum(), cols.iter().sum());
    for &(i, j, b) in blocks {
        debug_assert_eq!((b.rows(), b.cols()), (rows[i], cols[j]), "block ({i},{j}) has the wrong shape");
        m.set_block(r0[i], c0[j], b);
    }
    m
}

pub(crate) fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

/// A bounded cochain complex `... → C^n → C^{n+1} → ...`.
///
/// The stored range is trimmed so that the first and last modules are
/// nonzero; outside it every module is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    ring: Ring,
    lo: i64,
    modules: Vec<FGModule>,
    /// `diffs[k]` is the matrix of `d^{lo+k}`.
    diffs: Vec<Matrix>,
    zero: FGModule,
}

impl Complex {
    /// Builds a complex from sparse degree maps; absent entries are zero.
    pub fn new(ring: Ring, components: BTreeMap<i64, FGModule>, differentials: BTreeMap<i64, Matrix>) -> Result<Self> {
        for (n, m) in &components {
            if m.ring() != &ring {
                return Err(Error::RingMismatch(ring.to_string(), format!("{} (component {n})", m.ring())));
            }
        }
        let zero = FGModule::zero(ring.clone());
        let module = |n: i64| components.get(&n).unwrap_or(&zero);
        for (n, d) in &differentials {
            if d.rows() != module(n + 1).rank() || d.cols() != module(*n).rank() {
                return Err(Error::NotAComplex(format!(
                    "differential {n} is {}x{} but C^{} has {} generators and C^{n} has {}",
                    d.rows(),
                    d.cols(),
                    n + 1,
                    module(n + 1).rank(),
                    module(*n).rank()
                )));
            }
        }
        let (Some(&lo), Some(&hi)) = (components.keys().next(), components.keys().next_back()) else {
            return Ok(Complex::zero(ring));
        };
        let modules: Vec<FGModule> = (lo..=hi).map(|n| module(n).clone()).collect();
        let diffs = (lo..=hi)
            .map(|n| {
                differentials
                    .get(&n)
                    .cloned()
                    .unwrap_or_else(|| Matrix::zeros(module(n + 1).rank(), module(n).rank()))
            })
            .collect();
        Self::from_parts(ring, lo, modules, diffs)
    }

    /// Dense constructor: `modules[k]` sits in degree `lo + k` and `diffs[k]`
    /// is its outgoing differential (the last one must have zero rows).
    pub fn from_parts(ring: Ring, lo: i64, modules: Vec<FGModule>, diffs: Vec<Matrix>) -> Result<Self> {
        if modules.len() != diffs.len() {
            return Err(Error::NotAComplex("one differential per module is required".into()));
        }
        let zero = FGModule::zero(ring.clone());
        for (k, m) in modules.iter().enumerate() {
            ring.check_same(m.ring())?;
            let next = modules.get(k + 1).unwrap_or(&zero);
            let n = lo + k as i64;
            ModuleMap::new(m.clone(), next.clone(), diffs[k].clone())
                .map_err(|e| Error::NotAComplex(format!("differential {n}: {e}")))?;
        }
        let c = Self::assemble(ring, lo, modules, diffs);
        if let Some(n) = c.first_dd_failure() {
            return Err(Error::NotAComplex(format!("d^{} ∘ d^{n} is not zero", n + 1)));
        }
        Ok(c)
    }

    /// Internal constructor for complexes that are complexes by construction.
    pub(crate) fn from_parts_unchecked(ring: Ring, lo: i64, modules: Vec<FGModule>, diffs: Vec<Matrix>) -> Self {
        let c = Self::assemble(ring, lo, modules, diffs);
        debug_assert_eq!(c.first_dd_failure(), None, "constructed complex has d∘d ≠ 0");
        c
    }

    /// Builds the complex on `[lo, hi]` from degreewise closures.
    pub(crate) fn from_fn(
        ring: &Ring,
        range: Option<(i64, i64)>,
        module: impl Fn(i64) -> FGModule,
        diff: impl Fn(i64) -> Matrix,
    ) -> Self {
        let Some((lo, hi)) = range else {
            return Complex::zero(ring.clone());
        };
        let modules: Vec<FGModule> = (lo..=hi).map(&module).collect();
        let diffs = (lo..=hi)
            .map(|n| {
                if n == hi {
                    Matrix::zeros(0, modules[(n - lo) as usize].rank())
                } else {
                    diff(n)
                }
            })
            .collect();
        Self::from_parts_unchecked(ring.clone(), lo, modules, diffs)
    }

    fn assemble(ring: Ring, lo: i64, mut modules: Vec<FGModule>, diffs: Vec<Matrix>) -> Self {
        let zero = FGModule::zero(ring.clone());
        let mut diffs: Vec<Matrix> = diffs
            .into_iter()
            .enumerate()
            .map(|(k, d)| {
                let tgt = modules.get(k + 1).unwrap_or(&zero).clone();
                ModuleMap::new_unchecked(modules[k].clone(), tgt, d).matrix().clone()
            })
            .collect();
        let first = modules.iter().position(|m| !m.is_zero());
        let Some(first) = first else {
            return Complex::zero(ring);
        };
        let last = modules.iter().rposition(|m| !m.is_zero()).unwrap();
        modules.truncate(last + 1);
        diffs.truncate(last + 1);
        modules.drain(..first);
        diffs.drain(..first);
        let top = diffs.len() - 1;
        diffs[top] = Matrix::zeros(0, modules[top].rank());
        Complex {
            ring,
            lo: lo + first as i64,
            modules,
            diffs,
            zero,
        }
    }

    fn first_dd_failure(&self) -> Option<i64> {
        let (lo, hi) = self.bounds()?;
        (lo..hi).find(|&n| !self.diff(n + 1).compose(&self.diff(n)).is_zero())
    }

    pub fn zero(ring: Ring) -> Self {
        Complex {
            zero: FGModule::zero(ring.clone()),
            ring,
            lo: 0,
            modules: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Lowest and highest degrees with a nonzero module.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        (!self.modules.is_empty()).then(|| (self.lo, self.lo + self.modules.len() as i64 - 1))
    }

    /// Degrees of the support (empty for the zero complex).
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        match self.bounds() {
            Some((a, b)) => a..=b,
            #[allow(clippy::reversed_empty_ranges)]
            None => 1..=0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.modules.is_empty()
    }

    fn index(&self, n: i64) -> Option<usize> {
        let k = n.checked_sub(self.lo)?;
        (k >= 0 && (k as usize) < self.modules.len()).then_some(k as usize)
    }

    pub fn module(&self, n: i64) -> &FGModule {
        self.index(n).map_or(&self.zero, |k| &self.modules[k])
    }

    pub fn rank(&self, n: i64) -> usize {
        self.module(n).rank()
    }

    /// Matrix of `d^n : C^n → C^{n+1}`.
    pub fn d(&self, n: i64) -> Matrix {
        match self.index(n) {
            Some(k) => self.diffs[k].clone(),
            None => Matrix::zeros(self.rank(n + 1), self.rank(n)),
        }
    }

    pub fn diff(&self, n: i64) -> ModuleMap {
        ModuleMap::new_unchecked(self.module(n).clone(), self.module(n + 1).clone(), self.d(n))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &FGModule)> {
        self.modules.iter().enumerate().map(move |(k, m)| (self.lo + k as i64, m))
    }

    pub fn total_rank(&self) -> usize {
        self.modules.iter().map(FGModule::rank).sum()
    }

    pub fn is_degreewise_free(&self) -> bool {
        self.modules.iter().all(FGModule::is_free)
    }

    pub fn homology(&self, n: i64) -> FGModule {
        Homology::new(self, n).module
    }

    pub fn homology_data(&self, n: i64) -> Homology {
        Homology::new(self, n)
    }

    /// True when every homology module vanishes.
    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|n| self.homology(n).is_zero())
    }

    /// `C ⊕ D` with blocks ordered `(C, D)` in every degree.
    pub fn direct_sum(&self, other: &Complex) -> Complex {
        Complex::from_fn(
            &self.ring,
            hull(&[self.bounds(), other.bounds()]),
            |n| self.module(n).direct_sum(other.module(n)),
            |n| self.d(n).block_diag(&other.d(n)),
        )
    }

    pub fn shift(&self, k: i64) -> Complex {
        constructions::shift(self, k)
    }
}

/// A degreewise family of module maps commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    /// Only degrees where both modules are nonzero are stored.
    components: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Validates shapes, well-definedness and the chain condition. Missing
    /// components are zero.
    pub fn new(source: Complex, target: Complex, components: BTreeMap<i64, Matrix>) -> Result<Self> {
        source.ring.check_same(&target.ring)?;
        for (n, m) in &components {
            ModuleMap::new(source.module(*n).clone(), target.module(*n).clone(), m.clone())
                .map_err(|e| Error::NotAChainMap(format!("component {n}: {e}")))?;
        }
        let f = Self::assemble(source, target, |n| components.get(&n).cloned());
        if let Some(n) = f.first_chain_failure() {
            return Err(Error::NotAChainMap(format!("d ∘ f^{n} ≠ f^{} ∘ d", n + 1)));
        }
        Ok(f)
    }

    /// Internal constructor for maps that commute with d by construction.
    pub(crate) fn from_fn(source: &Complex, target: &Complex, f: impl Fn(i64) -> Matrix) -> Self {
        let m = Self::assemble(source.clone(), target.clone(), |n| Some(f(n)));
        debug_assert_eq!(m.first_chain_failure(), None, "constructed map is not a chain map");
        m
    }

    fn assemble(source: Complex, target: Complex, f: impl Fn(i64) -> Option<Matrix>) -> Self {
        let mut components = BTreeMap::new();
        for n in source.degrees() {
            if target.module(n).is_zero() {
                continue;
            }
            if let Some(m) = f(n) {
                let m = ModuleMap::new_unchecked(source.module(n).clone(), target.module(n).clone(), m);
                components.insert(n, m.matrix().clone());
            }
        }
        let mut out = ChainMap {
            source,
            target,
            components,
        };
        for n in out.source.degrees().filter(|n| !out.target.module(*n).is_zero()) {
            out.components
                .entry(n)
                .or_insert_with(|| Matrix::zeros(out.target.rank(n), out.source.rank(n)));
        }
        out
    }

    fn first_chain_failure(&self) -> Option<i64> {
        let (lo, hi) = hull(&[self.source.bounds(), self.target.bounds()])?;
        (lo - 1..=hi).find(|&n| {
            let lhs = self.target.diff(n).compose(&self.component(n));
            let rhs = self.component(n + 1).compose(&self.source.diff(n));
            lhs != rhs
        })
    }

    pub fn identity(c: &Complex) -> Self {
        Self::from_fn(c, c, |n| Matrix::identity(c.rank(n)))
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        Self::from_fn(source, target, |n| Matrix::zeros(target.rank(n), source.rank(n)))
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn matrix(&self, n: i64) -> Matrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.rank(n), self.source.rank(n)))
    }

    pub fn component(&self, n: i64) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.module(n).clone(), self.target.module(n).clone(), self.matrix(n))
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(Matrix::is_zero)
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        assert_eq!(first.target, self.source, "composing chain maps with mismatched complexes");
        Self::from_fn(&first.source, &self.target, |n| &self.matrix(n) * &first.matrix(n))
    }

    fn zip(&self, other: &ChainMap, op: impl Fn(&Matrix, &Matrix) -> Matrix) -> ChainMap {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        Self::from_fn(&self.source, &self.target, |n| op(&self.matrix(n), &other.matrix(n)))
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> ChainMap {
        Self::from_fn(&self.source, &self.target, |n| -&self.matrix(n))
    }

    pub fn scale(&self, c: &BigInt) -> ChainMap {
        Self::from_fn(&self.source, &self.target, |n| self.matrix(n).scale(c))
    }

    /// `f[k] : X[k] → Y[k]`, componentwise `f^{n+k}` (no sign).
    pub fn shift(&self, k: i64) -> ChainMap {
        Self::from_fn(&self.source.shift(k), &self.target.shift(k), |n| self.matrix(n + k))
    }

    /// `f ⊕ g : X ⊕ X' → Y ⊕ Y'`
    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        Self::from_fn(
            &self.source.direct_sum(&other.source),
            &self.target.direct_sum(&other.target),
            |n| self.matrix(n).block_diag(&other.matrix(n)),
        )
    }

    /// `(f; g) : X → Y ⊕ Y'`
    pub fn vstack(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(self.source, other.source);
        Self::from_fn(&self.source, &self.target.direct_sum(&other.target), |n| {
            self.matrix(n).vstack(&other.matrix(n))
        })
    }

    /// `(f g) : X ⊕ X' → Y`
    pub fn hstack(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(self.target, other.target);
        Self::from_fn(&self.source.direct_sum(&other.source), &self.target, |n| {
            self.matrix(n).hstack(&other.matrix(n))
        })
    }

    /// Degrees where either side is nonzero, widened by one on each end.
    pub(crate) fn window(&self) -> Option<(i64, i64)> {
        hull(&[self.source.bounds(), self.target.bounds()]).map(|(a, b)| (a - 1, b + 1))
    }

    /// `H^n(f)`
    pub fn homology_map(&self, n: i64) -> ModuleMap {
        let hs = Homology::new(&self.source, n);
        let ht = Homology::new(&self.target, n);
        hs.induced(&ht, &self.matrix(n))
    }

    pub fn is_quasi_isomorphism(&self) -> bool {
        let Some((lo, hi)) = self.window() else {
            return true;
        };
        (lo..=hi).all(|n| self.homology_map(n).is_isomorphism())
    }

    fn all_components(&self, pred: impl Fn(&ModuleMap) -> bool) -> bool {
        let Some((lo, hi)) = self.window() else {
            return true;
        };
        (lo..=hi).all(|n| pred(&self.component(n)))
    }

    pub fn is_degreewise_injective(&self) -> bool {
        self.all_components(ModuleMap::is_injective)
    }

    pub fn is_degreewise_surjective(&self) -> bool {
        self.all_components(ModuleMap::is_surjective)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.all_components(ModuleMap::is_isomorphism)
    }
}

/// Canonical maps of the direct sum `A ⊕ B`.
pub fn sum_inclusions(a: &Complex, b: &Complex) -> (ChainMap, ChainMap) {
    let s = a.direct_sum(b);
    let ia = ChainMap::from_fn(a, &s, |n| Matrix::identity(a.rank(n)).vstack(&Matrix::zeros(b.rank(n), a.rank(n))));
    let ib = ChainMap::from_fn(b, &s, |n| Matrix::zeros(a.rank(n), b.rank(n)).vstack(&Matrix::identity(b.rank(n))));
    (ia, ib)
}

pub fn sum_projections(a: &Complex, b: &Complex) -> (ChainMap, ChainMap) {
    let s = a.direct_sum(b);
    let pa = ChainMap::from_fn(&s, a, |n| Matrix::identity(a.rank(n)).hstack(&Matrix::zeros(a.rank(n), b.rank(n))));
    let pb = ChainMap::from_fn(&s, b, |n| Matrix::zeros(b.rank(n), a.rank(n)).hstack(&Matrix::identity(b.rank(n))));
    (pa, pb)
}

#[cfg(test)]
mod tests;
