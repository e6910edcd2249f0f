//! Exact arithmetic over the coefficient rings `Z` and `Z/m`: integer
//! matrices, Smith normal form, finitely generated modules and their maps.

mod matrix;
mod module;
mod snf;
mod spaces;

pub use matrix::Matrix;
pub use module::{Cokernel, FGModule, Kernel, ModuleMap, Ring};
pub(crate) use module::Subquotient;
pub use snf::{column_span_basis, kernel_basis, smith_normal_form, solve_in_lattice, solve_integer, Smith};
pub use spaces::{module_hom, module_tensor, tensor_maps, HomPair, HomSpace, TensorSpace};

use num_bigint::BigInt;

/// `solve_linear`: some `x` with `f(x) = y`, or `None`.
pub fn solve_linear(f: &ModuleMap, y: &[BigInt]) -> Option<Vec<BigInt>> {
    f.solve(y)
}

/// Shorthand used throughout: a vector of small integers as `BigInt`s.
pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
