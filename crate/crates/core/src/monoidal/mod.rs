//! The tensor product of complexes with Koszul signs, its symmetry and
//! coherence maps, and the flatness machinery built on it.

mod flat;

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::coeff::{FGModule, Matrix, TensorSpace};
use crate::complex::{ChainMap, Complex};
use crate::error::Result;

pub use flat::{
    derived_tensor, extend_descent, monoid_axiom_probe, pushout_product, weak_flat_resolution, DerivedTensor,
    Extension, PushoutProduct, ShortResolution, WeakFlatResolution,
};

/// The summand `X^p ⊗ Y^q` of `(X ⊗ Y)^{p+q}`, at coordinate `offset`.
#[derive(Clone, Debug)]
pub struct TensorBlock {
    pub p: i64,
    pub q: i64,
    pub space: TensorSpace,
    pub offset: usize,
}

/// `X ⊗ Y` with its block layout; blocks are ordered by ascending `p`.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    left: Complex,
    right: Complex,
    complex: Complex,
    blocks: BTreeMap<i64, Vec<TensorBlock>>,
}

fn sign(k: i64) -> BigInt {
    BigInt::from(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

impl TensorComplex {
    pub fn new(x: &Complex, y: &Complex) -> Result<Self> {
        x.ring().check_same(y.ring())?;
        let range = match (x.bounds(), y.bounds()) {
            (Some((xl, xh)), Some((yl, yh))) => Some((xl + yl, xh + yh)),
            _ => None,
        };
        let mut blocks = BTreeMap::new();
        let mut modules = Vec::new();
        if let Some((lo, hi)) = range {
            for n in lo..=hi {
                let mut list = Vec::new();
                let mut module = FGModule::zero(x.ring().clone());
                for p in x.degrees() {
                    let q = n - p;
                    let space = TensorSpace::new(x.module(p), y.module(q))?;
                    if space.module().is_zero() {
                        continue;
                    }
                    list.push(TensorBlock {
                        p,
                        q,
                        offset: module.rank(),
                        space: space.clone(),
                    });
                    module = module.direct_sum(space.module());
                }
                blocks.insert(n, list);
                modules.push(module);
            }
        }
        let mut tc = TensorComplex {
            left: x.clone(),
            right: y.clone(),
            complex: Complex::zero(x.ring().clone()),
            blocks,
        };
        if let Some((lo, hi)) = range {
            let diffs = (lo..=hi)
                .map(|n| {
                    tc.assemble(n, &tc, n + 1, |b| {
                        let dx = x.d(b.p);
                        let dy = y.d(b.q);
                        let ix = Matrix::identity(x.rank(b.p));
                        let iy = Matrix::identity(y.rank(b.q));
                        vec![
                            ((b.p + 1, b.q), dx, iy, BigInt::from(1)),
                            ((b.p, b.q + 1), ix, dy, sign(b.p)),
                        ]
                    })
                })
                .collect();
            tc.complex = Complex::from_parts_unchecked(x.ring().clone(), lo, modules, diffs);
        }
        Ok(tc)
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn left(&self) -> &Complex {
        &self.left
    }

    pub fn right(&self) -> &Complex {
        &self.right
    }

    pub fn blocks(&self, n: i64) -> &[TensorBlock] {
        self.blocks.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn block(&self, p: i64, q: i64) -> Option<&TensorBlock> {
        self.blocks(p + q).iter().find(|b| b.p == p)
    }

    /// Matrix from degree `n` of `self` to degree `m` of `onto`. For each
    /// source block, `f` lists target blocks `(p, q)` with maps `a ⊗ b`
    /// and a sign.
    fn assemble(
        &self,
        n: i64,
        onto: &TensorComplex,
        m: i64,
        f: impl Fn(&TensorBlock) -> Vec<((i64, i64), Matrix, Matrix, BigInt)>,
    ) -> Matrix {
        let mut out = Matrix::zeros(onto.complex_rank(m), self.complex_rank(n));
        for b in self.blocks(n) {
            for ((p, q), a, c, s) in f(b) {
                let Some(t) = onto.block(p, q) else {
                    continue;
                };
                let blk = b.space.map_matrix(&a, &c, &t.space).scale(&s);
                out.set_block(t.offset, b.offset, &blk);
            }
        }
        out
    }

    /// Locates generator `a` of degree `s` as `(p, q, i, j)`: the pair
    /// `(i, j)` of block `X^p ⊗ Y^q`.
    pub fn decode(&self, s: i64, a: usize) -> Option<(i64, i64, usize, usize)> {
        let b = self
            .blocks(s)
            .iter()
            .find(|b| b.offset <= a && a < b.offset + b.space.pairs().len())?;
        let (i, j) = b.space.pairs()[a - b.offset];
        Some((b.p, b.q, i, j))
    }

    /// Coordinate of `e_i ⊗ f_j` in block `X^p ⊗ Y^q`.
    pub fn encode(&self, p: i64, q: i64, i: usize, j: usize) -> Option<usize> {
        let b = self.block(p, q)?;
        Some(b.offset + b.space.index_of(i, j)?)
    }

    fn complex_rank(&self, n: i64) -> usize {
        self.blocks(n).iter().map(|b| b.space.module().rank()).sum()
    }
}

/// `X ⊗ Y` with `d(x ⊗ y) = dx ⊗ y + (-1)^p x ⊗ dy`.
pub fn tensor(x: &Complex, y: &Complex) -> Result<Complex> {
    Ok(TensorComplex::new(x, y)?.complex)
}

/// `f ⊗ g : X ⊗ Y → X' ⊗ Y'`
pub fn tensor_chain_maps(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let src = TensorComplex::new(f.source(), g.source())?;
    let tgt = TensorComplex::new(f.target(), g.target())?;
    Ok(tensor_maps_between(&src, &tgt, f, g))
}

pub(crate) fn tensor_maps_between(src: &TensorComplex, tgt: &TensorComplex, f: &ChainMap, g: &ChainMap) -> ChainMap {
    ChainMap::from_fn(&src.complex, &tgt.complex, |n| {
        src.assemble(n, tgt, n, |b| vec![((b.p, b.q), f.matrix(b.p), g.matrix(b.q), BigInt::from(1))])
    })
}

/// A matrix sending each basis element of a source block to a signed basis
/// element of a target block.
fn permutation_map(
    src: &TensorComplex,
    tgt: &TensorComplex,
    n: i64,
    image: impl Fn(&TensorBlock, usize) -> Option<(usize, BigInt)>,
) -> Matrix {
    let mut m = Matrix::zeros(tgt.complex_rank(n), src.complex_rank(n));
    for b in src.blocks(n) {
        for k in 0..b.space.pairs().len() {
            if let Some((row, s)) = image(b, k) {
                m[(row, b.offset + k)] = s;
            }
        }
    }
    m
}

/// `τ : X ⊗ Y → Y ⊗ X`, `x ⊗ y ↦ (-1)^{pq} y ⊗ x`.
pub fn braiding(x: &Complex, y: &Complex) -> Result<ChainMap> {
    let src = TensorComplex::new(x, y)?;
    let tgt = TensorComplex::new(y, x)?;
    Ok(ChainMap::from_fn(&src.complex, &tgt.complex, |n| {
        permutation_map(&src, &tgt, n, |b, k| {
            let (i, j) = b.space.pairs()[k];
            let t = tgt.block(b.q, b.p)?;
            let idx = t.space.index_of(j, i)?;
            Some((t.offset + idx, sign(b.p * b.q)))
        })
    }))
}

/// `(X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z)`, sign-free.
pub fn associator(x: &Complex, y: &Complex, z: &Complex) -> Result<ChainMap> {
    let xy = TensorComplex::new(x, y)?;
    let yz = TensorComplex::new(y, z)?;
    let src = TensorComplex::new(&xy.complex, z)?;
    let tgt = TensorComplex::new(x, &yz.complex)?;
    Ok(ChainMap::from_fn(&src.complex, &tgt.complex, |n| {
        permutation_map(&src, &tgt, n, |b, k| {
            let (a, l) = b.space.pairs()[k];
            let (p, q, i, j) = xy.decode(b.p, a)?;
            let r = b.q;
            let inner = yz.block(q, r)?;
            let bi = inner.offset + inner.space.index_of(j, l)?;
            let outer = tgt.block(p, q + r)?;
            Some((outer.offset + outer.space.index_of(i, bi)?, BigInt::from(1)))
        })
    }))
}

/// `S^0R ⊗ X → X`
pub fn left_unitor(x: &Complex) -> Result<ChainMap> {
    let unit = crate::complex::sphere(&FGModule::free(x.ring().clone(), 1), 0);
    let src = TensorComplex::new(&unit, x)?;
    Ok(ChainMap::from_fn(&src.complex, x, |n| {
        let mut m = Matrix::zeros(x.rank(n), src.complex_rank(n));
        if let Some(b) = src.block(0, n) {
            for (k, &(_, j)) in b.space.pairs().iter().enumerate() {
                m[(j, b.offset + k)] = BigInt::from(1);
            }
        }
        m
    }))
}

/// `X ⊗ S^0R → X`
pub fn right_unitor(x: &Complex) -> Result<ChainMap> {
    let unit = crate::complex::sphere(&FGModule::free(x.ring().clone(), 1), 0);
    let src = TensorComplex::new(x, &unit)?;
    Ok(ChainMap::from_fn(&src.complex, x, |n| {
        let mut m = Matrix::zeros(x.rank(n), src.complex_rank(n));
        if let Some(b) = src.block(n, 0) {
            for (k, &(i, _)) in b.space.pairs().iter().enumerate() {
                m[(i, b.offset + k)] = BigInt::from(1);
            }
        }
        m
    }))
}

/// `X^{⊗n}`, with `X^{⊗0}` the unit.
pub fn tensor_power(x: &Complex, n: usize) -> Result<Complex> {
    let mut out = crate::complex::sphere(&FGModule::free(x.ring().clone(), 1), 0);
    for _ in 0..n {
        out = tensor(&out, x)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
