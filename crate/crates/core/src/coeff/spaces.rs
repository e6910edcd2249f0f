//! Hom and tensor products of finitely generated modules with explicit,
//! pair-indexed bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::Matrix;
use super::module::{reduce_mod, FGModule, ModuleMap};
use crate::error::Result;

/// One basis element of `Hom(M, N)`: the map sending source generator
/// `source_gen` to `scale` times target generator `target_gen`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPair {
    pub source_gen: usize,
    pub target_gen: usize,
    pub scale: BigInt,
}

/// `Hom(M, N)` with basis indexed by generator pairs.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: FGModule,
    target: FGModule,
    module: FGModule,
    pairs: Vec<HomPair>,
}

impl HomSpace {
    pub fn new(source: &FGModule, target: &FGModule) -> Result<Self> {
        source.ring().check_same(target.ring())?;
        let mut pairs = Vec::new();
        let mut orders = Vec::new();
        let t_orders = target.orders();
        for (i, o) in source.orders().iter().enumerate() {
            for (j, p) in t_orders.iter().enumerate() {
                let (order, scale) = if o.is_zero() {
                    (p.clone(), BigInt::from(1))
                } else if p.is_zero() {
                    // torsion into a torsion-free summand
                    continue;
                } else {
                    let g = o.gcd(p);
                    let s = p / &g;
                    (g, s)
                };
                if order == BigInt::from(1) {
                    continue;
                }
                orders.push(order);
                pairs.push(HomPair {
                    source_gen: i,
                    target_gen: j,
                    scale,
                });
            }
        }
        let (module, kept) = FGModule::from_orders(source.ring(), orders);
        debug_assert_eq!(kept.len(), pairs.len());
        Ok(HomSpace {
            source: source.clone(),
            target: target.clone(),
            module,
            pairs,
        })
    }

    pub fn module(&self) -> &FGModule {
        &self.module
    }

    pub fn source(&self) -> &FGModule {
        &self.source
    }

    pub fn target(&self) -> &FGModule {
        &self.target
    }

    pub fn pairs(&self) -> &[HomPair] {
        &self.pairs
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    /// Matrix of the homomorphism with the given coordinates.
    pub fn to_matrix(&self, coeffs: &[BigInt]) -> Matrix {
        assert_eq!(coeffs.len(), self.pairs.len());
        let mut m = Matrix::zeros(self.target.rank(), self.source.rank());
        for (c, p) in coeffs.iter().zip(&self.pairs) {
            if !c.is_zero() {
                m[(p.target_gen, p.source_gen)] += c * &p.scale;
            }
        }
        m
    }

    pub fn to_map(&self, coeffs: &[BigInt]) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.to_matrix(coeffs))
    }

    /// Coordinates of a well-defined homomorphism given by its matrix.
    pub fn coords(&self, m: &Matrix) -> Vec<BigInt> {
        let t_orders = self.target.orders();
        let mut out = Vec::with_capacity(self.pairs.len());
        for p in &self.pairs {
            let entry = reduce_mod(&m[(p.target_gen, p.source_gen)], &t_orders[p.target_gen]);
            let (q, r) = entry.div_rem(&p.scale);
            debug_assert!(r.is_zero(), "matrix is not a homomorphism");
            out.push(q);
        }
        self.module.reduced(&out)
    }

    /// `g ↦ post ∘ g` as a map `Hom(M, N) → Hom(M, N')`.
    pub fn postcompose(&self, post: &ModuleMap, onto: &HomSpace) -> ModuleMap {
        self.induced(onto, |g| post.matrix() * g)
    }

    /// `g ↦ g ∘ pre` as a map `Hom(M, N) → Hom(M', N)`.
    pub fn precompose(&self, pre: &ModuleMap, onto: &HomSpace) -> ModuleMap {
        self.induced(onto, |g| g * pre.matrix())
    }

    /// Linear map between Hom spaces defined by its action on matrices.
    pub fn induced(&self, onto: &HomSpace, f: impl Fn(&Matrix) -> Matrix) -> ModuleMap {
        let mut columns = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            let mut e = vec![BigInt::zero(); self.dim()];
            e[k] = BigInt::from(1);
            columns.push(onto.coords(&f(&self.to_matrix(&e))));
        }
        ModuleMap::new_unchecked(
            self.module.clone(),
            onto.module.clone(),
            Matrix::from_columns(onto.dim(), &columns),
        )
    }
}

/// `M ⊗ N` with basis `e_i ⊗ f_j` for pairs whose cyclic tensor is nonzero.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    left: FGModule,
    right: FGModule,
    module: FGModule,
    pairs: Vec<(usize, usize)>,
}

impl TensorSpace {
    pub fn new(left: &FGModule, right: &FGModule) -> Result<Self> {
        left.ring().check_same(right.ring())?;
        let mut pairs = Vec::new();
        let mut orders = Vec::new();
        let r_orders = right.orders();
        for (i, o) in left.orders().iter().enumerate() {
            for (j, p) in r_orders.iter().enumerate() {
                let g = o.gcd(p);
                if g == BigInt::from(1) {
                    continue;
                }
                pairs.push((i, j));
                orders.push(g);
            }
        }
        let (module, _) = FGModule::from_orders(left.ring(), orders);
        Ok(TensorSpace {
            left: left.clone(),
            right: right.clone(),
            module,
            pairs,
        })
    }

    pub fn module(&self) -> &FGModule {
        &self.module
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.binary_search(&(i, j)).ok()
    }

    /// Matrix of `f ⊗ g` from `self` to `onto`.
    pub fn map_matrix(&self, f: &Matrix, g: &Matrix, onto: &TensorSpace) -> Matrix {
        let mut m = Matrix::zeros(onto.pairs.len(), self.pairs.len());
        for (col, &(i, j)) in self.pairs.iter().enumerate() {
            for (row, &(k, l)) in onto.pairs.iter().enumerate() {
                let a = &f[(k, i)];
                if a.is_zero() {
                    continue;
                }
                let b = &g[(l, j)];
                if !b.is_zero() {
                    m[(row, col)] = a * b;
                }
            }
        }
        m
    }

    pub fn map(&self, f: &ModuleMap, g: &ModuleMap, onto: &TensorSpace) -> ModuleMap {
        debug_assert_eq!(f.source(), &self.left);
        debug_assert_eq!(g.source(), &self.right);
        ModuleMap::new_unchecked(
            self.module.clone(),
            onto.module.clone(),
            self.map_matrix(f.matrix(), g.matrix(), onto),
        )
    }
}

/// The module `Hom(M, N)`.
pub fn module_hom(m: &FGModule, n: &FGModule) -> Result<FGModule> {
    Ok(HomSpace::new(m, n)?.module)
}

/// The module `M ⊗ N`.
pub fn module_tensor(m: &FGModule, n: &FGModule) -> Result<FGModule> {
    Ok(TensorSpace::new(m, n)?.module)
}

/// `f ⊗ g : M ⊗ N → M' ⊗ N'`
pub fn tensor_maps(f: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap> {
    let src = TensorSpace::new(f.source(), g.source())?;
    let tgt = TensorSpace::new(f.target(), g.target())?;
    Ok(src.map(f, g, &tgt))
}
