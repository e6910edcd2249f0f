use num_bigint::BigInt;

use super::Complex;
use crate::coeff::{FGModule, Matrix, ModuleMap, Subquotient};

/// `H^n(C) = ker d^n / im d^{n-1}` with cycle representatives for each
/// generator and a map from cycles to classes.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i64,
    pub module: FGModule,
    /// Column `k` is a cycle representing generator `k` (`rank C^n × k`).
    pub cycles: Matrix,
    sq: Option<Subquotient>,
}

impl Homology {
    pub fn new(c: &Complex, n: i64) -> Self {
        let a = c.rank(n);
        if a == 0 {
            return Homology {
                degree: n,
                module: FGModule::zero(c.ring().clone()),
                cycles: Matrix::zeros(0, 0),
                sq: None,
            };
        }
        let basis = c.diff(n).kernel_lattice();
        let relations = c.d(n - 1).hstack(&c.module(n).relation_matrix());
        let sq = Subquotient::new(c.ring(), basis, relations);
        Homology {
            degree: n,
            module: sq.module.clone(),
            cycles: sq.gens.clone(),
            sq: Some(sq),
        }
    }

    /// Class of a cycle `z ∈ C^n`; panics if `z` is not a cycle.
    pub fn class_of(&self, z: &[BigInt]) -> Vec<BigInt> {
        match &self.sq {
            Some(sq) => sq.class_of(z),
            None => Vec::new(),
        }
    }

    pub fn is_cycle(&self, z: &[BigInt]) -> bool {
        self.sq.as_ref().is_none_or(|sq| sq.contains(z))
    }

    pub fn cycle(&self, k: usize) -> Vec<BigInt> {
        self.cycles.column(k)
    }

    /// The map `H^n(C) → H^n(D)` induced by a degree-n component `f`.
    pub fn induced(&self, onto: &Homology, f: &Matrix) -> ModuleMap {
        let columns: Vec<Vec<BigInt>> = (0..self.module.rank())
            .map(|k| onto.class_of(&f.mul_vec(&self.cycle(k))))
            .collect();
        ModuleMap::new_unchecked(
            self.module.clone(),
            onto.module.clone(),
            Matrix::from_columns(onto.module.rank(), &columns),
        )
    }
}
