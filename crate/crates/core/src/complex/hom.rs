use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{cylinder, hull, ChainMap, Complex};
use crate::coeff::{FGModule, HomSpace, Matrix};
use crate::error::{Error, Result};

/// The summand `Hom(X^p, Y^{p+n})` of `Hom(X, Y)^n`, at coordinate `offset`.
#[derive(Clone, Debug)]
pub struct HomBlock {
    pub p: i64,
    pub space: HomSpace,
    pub offset: usize,
}

/// `Hom(X, Y)^n = ⊕_p Hom(X^p, Y^{p+n})` with `D f = d∘f - (-1)^n f∘d`,
/// together with the block layout needed to move between coordinates and
/// families of matrices.
#[derive(Clone, Debug)]
pub struct HomComplex {
    source: Complex,
    target: Complex,
    complex: Complex,
    blocks: BTreeMap<i64, Vec<HomBlock>>,
}

/// Degree-n element of a Hom complex as matrices `f_p : X^p → Y^{p+n}`.
pub type Components = BTreeMap<i64, Matrix>;

impl HomComplex {
    pub fn new(x: &Complex, y: &Complex) -> Result<Self> {
        x.ring().check_same(y.ring())?;
        let range = match (x.bounds(), y.bounds()) {
            (Some((xl, xh)), Some((yl, yh))) => Some((yl - xh, yh - xl)),
            _ => None,
        };
        let mut blocks = BTreeMap::new();
        let mut modules = BTreeMap::new();
        if let Some((lo, hi)) = range {
            for n in lo..=hi {
                let mut list = Vec::new();
                let mut module = FGModule::zero(x.ring().clone());
                for p in x.degrees() {
                    let space = HomSpace::new(x.module(p), y.module(p + n))?;
                    if space.dim() == 0 {
                        continue;
                    }
                    list.push(HomBlock {
                        p,
                        offset: module.rank(),
                        space: space.clone(),
                    });
                    module = module.direct_sum(space.module());
                }
                blocks.insert(n, list);
                modules.insert(n, module);
            }
        }
        let mut hc = HomComplex {
            source: x.clone(),
            target: y.clone(),
            complex: Complex::zero(x.ring().clone()),
            blocks,
        };
        let diffs: Vec<Matrix> = match range {
            None => Vec::new(),
            Some((lo, hi)) => (lo..=hi)
                .map(|n| hc.induced_matrix(n, &hc, n + 1, |f| hc.apply_d(n, f)))
                .collect(),
        };
        if let Some((lo, _)) = range {
            hc.complex = Complex::from_parts_unchecked(x.ring().clone(), lo, modules.into_values().collect(), diffs);
        }
        Ok(hc)
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn blocks(&self, n: i64) -> &[HomBlock] {
        self.blocks.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.blocks(n).iter().map(|b| b.space.dim()).sum()
    }

    /// Matrices `f_p` of the degree-n element with the given coordinates.
    pub fn components(&self, n: i64, coeffs: &[BigInt]) -> Components {
        self.blocks(n)
            .iter()
            .map(|b| {
                let c = &coeffs[b.offset..b.offset + b.space.dim()];
                (b.p, b.space.to_matrix(c))
            })
            .collect()
    }

    /// Coordinates of a degree-n family `f_p`; missing entries are zero.
    pub fn element(&self, n: i64, maps: &Components) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.dim(n));
        for b in self.blocks(n) {
            match maps.get(&b.p) {
                Some(m) => out.extend(b.space.coords(m)),
                None => out.extend(std::iter::repeat_n(BigInt::zero(), b.space.dim())),
            }
        }
        out
    }

    /// `(D f)_p = d_Y f_p - (-1)^n f_{p+1} d_X`, a degree n+1 family.
    pub fn apply_d(&self, n: i64, f: &Components) -> Components {
        let (x, y) = (&self.source, &self.target);
        let zero = |p: i64| Matrix::zeros(y.rank(p + n), x.rank(p));
        let get = |p: i64| f.get(&p).cloned().unwrap_or_else(|| zero(p));
        let sign = BigInt::from(if n % 2 == 0 { 1 } else { -1 });
        x.degrees()
            .map(|p| {
                let a = &y.d(p + n) * &get(p);
                let b = (&get(p + 1) * &x.d(p)).scale(&sign);
                (p, &a - &b)
            })
            .collect()
    }

    /// Matrix of a linear operation on families, from degree `n` of `self`
    /// to degree `m` of `onto`.
    pub fn induced_matrix(&self, n: i64, onto: &HomComplex, m: i64, f: impl Fn(&Components) -> Components) -> Matrix {
        let dim = self.dim(n);
        let columns: Vec<Vec<BigInt>> = (0..dim)
            .map(|k| {
                let mut e = vec![BigInt::zero(); dim];
                e[k] = BigInt::one();
                onto.element(m, &f(&self.components(n, &e)))
            })
            .collect();
        Matrix::from_columns(onto.dim(m), &columns)
    }

    /// `f ↦ f ∘ q` as a chain map `Hom(X, Y) → Hom(P, Y)` for `q : P → X`.
    pub fn precompose(&self, q: &ChainMap, onto: &HomComplex) -> ChainMap {
        assert_eq!(q.target(), &self.source);
        assert_eq!(q.source(), &onto.source);
        ChainMap::from_fn(&self.complex, &onto.complex, |n| {
            self.induced_matrix(n, onto, n, |f| f.iter().map(|(p, m)| (*p, m * &q.matrix(*p))).collect())
        })
    }

    /// `f ↦ g ∘ f` as a chain map `Hom(X, Y) → Hom(X, Z)` for `g : Y → Z`.
    pub fn postcompose(&self, g: &ChainMap, onto: &HomComplex) -> ChainMap {
        assert_eq!(g.source(), &self.target);
        assert_eq!(g.target(), &onto.target);
        ChainMap::from_fn(&self.complex, &onto.complex, |n| {
            self.induced_matrix(n, onto, n, |f| f.iter().map(|(p, m)| (*p, &g.matrix(p + n) * m)).collect())
        })
    }

    /// The chain map `X → Y[n]` represented by a degree-n cycle.
    pub fn to_chain_map(&self, n: i64, coeffs: &[BigInt]) -> Result<ChainMap> {
        let comps = self.components(n, coeffs);
        let yn = self.target.shift(n);
        ChainMap::new(self.source.clone(), yn, comps)
    }

    /// Coordinates of `f : X → Y[n]` as a degree-n element.
    pub fn element_of_map(&self, n: i64, f: &ChainMap) -> Vec<BigInt> {
        let maps = self.source.degrees().map(|p| (p, f.matrix(p))).collect();
        self.element(n, &maps)
    }
}

pub fn hom_complex(x: &Complex, y: &Complex) -> Result<Complex> {
    Ok(HomComplex::new(x, y)?.complex)
}

/// `H^n(Hom(X, Y))`, the homotopy classes of maps `X → Y[n]`.
pub fn homotopy_classes(x: &Complex, y: &Complex, n: i64) -> Result<FGModule> {
    Ok(HomComplex::new(x, y)?.complex.homology(n))
}

/// A homotopy `from ≃ to` realized as a map out of the cylinder.
#[derive(Clone, Debug)]
pub struct Homotopy {
    from: ChainMap,
    to: ChainMap,
    witness: ChainMap,
}

impl Homotopy {
    pub fn new(from: ChainMap, to: ChainMap, witness: ChainMap) -> Result<Self> {
        let cyl = cylinder(from.source());
        if witness.source() != &cyl.complex || witness.target() != from.target() {
            return Err(Error::NotAChainMap("witness must be a map Cyl(X) → Y".into()));
        }
        if witness.compose(&cyl.i0) != from || witness.compose(&cyl.i1) != to {
            return Err(Error::InvariantViolation("witness does not restrict to the two maps".into()));
        }
        Ok(Homotopy { from, to, witness })
    }

    pub fn from_map(&self) -> &ChainMap {
        &self.from
    }

    pub fn to_map(&self) -> &ChainMap {
        &self.to
    }

    pub fn witness(&self) -> &ChainMap {
        &self.witness
    }
}

/// A homotopy `f ≃ g` if one exists. Solves `D h = g - f` in degree -1 of
/// the Hom complex and packages `(f, h, g)` as a map out of `Cyl(X)`.
pub fn find_homotopy(f: &ChainMap, g: &ChainMap) -> Result<Option<Homotopy>> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::NotAChainMap("maps must share source and target".into()));
    }
    let (x, y) = (f.source(), f.target());
    let hc = HomComplex::new(x, y)?;
    let target = hc.element(0, &x.degrees().map(|p| (p, g.sub(f).matrix(p))).collect());
    let h = if hc.dim(-1) == 0 {
        if hc.complex.module(0).is_zero_element(&target) {
            Components::new()
        } else {
            return Ok(None);
        }
    } else {
        match hc.complex.diff(-1).solve(&target) {
            Some(c) => hc.components(-1, &c),
            None => return Ok(None),
        }
    };
    let cyl = cylinder(x);
    let range = hull(&[cyl.complex.bounds()]);
    let mut witness = BTreeMap::new();
    if let Some((lo, hi)) = range {
        for n in lo..=hi {
            let hn = h
                .get(&(n + 1))
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(y.rank(n), x.rank(n + 1)));
            witness.insert(n, f.matrix(n).hstack(&hn).hstack(&g.matrix(n)));
        }
    }
    let witness = ChainMap::new(cyl.complex, y.clone(), witness)?;
    Homotopy::new(f.clone(), g.clone(), witness).map(Some)
}
