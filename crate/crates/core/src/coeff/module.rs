use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::snf::{column_span_basis, kernel_basis, smith_normal_form, solve_in_lattice, solve_integer};
use crate::error::{Error, Result};

/// Coefficient ring: the integers or a finite cyclic ring `Z/m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    IntegersMod(BigInt),
}

impl Ring {
    pub fn integers_mod(m: impl Into<BigInt>) -> Result<Ring> {
        let m = m.into();
        if m < BigInt::from(2) {
            return Err(Error::InvalidRing(format!("modulus must be at least 2, got {m}")));
        }
        Ok(Ring::IntegersMod(m))
    }

    /// 0 for the integers, `m` for `Z/m`.
    pub fn characteristic(&self) -> BigInt {
        match self {
            Ring::Integers => BigInt::zero(),
            Ring::IntegersMod(m) => m.clone(),
        }
    }

    /// `Z/p` with `p` prime.
    pub fn is_field(&self) -> bool {
        match self {
            Ring::Integers => false,
            Ring::IntegersMod(m) => {
                let mut d = BigInt::from(2);
                while &d * &d <= *m {
                    if m.is_multiple_of(&d) {
                        return false;
                    }
                    d += 1;
                }
                true
            }
        }
    }

    /// Every submodule of a free module is free (Z and fields).
    pub fn is_hereditary(&self) -> bool {
        matches!(self, Ring::Integers) || self.is_field()
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// Reduces `x` to its canonical representative modulo a Z-order (0 = none).
#[inline]
pub(crate) fn reduce_mod(x: &BigInt, order: &BigInt) -> BigInt {
    if order.is_zero() {
        x.clone()
    } else {
        x.mod_floor(order)
    }
}

/// A finitely generated module given by one cyclic summand per generator.
///
/// Factor `0` is a free summand of the ring, `k >= 2` is `Z/k`; the value 1
/// is rejected. The stored order of factors is the generator order, so two
/// modules compare equal with `==` only if their presentations agree;
/// [`FGModule::is_isomorphic`] compares normal forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FGModule {
    ring: Ring,
    factors: Vec<BigInt>,
}

impl FGModule {
    pub fn new(ring: Ring, factors: Vec<BigInt>) -> Result<Self> {
        let m = ring.characteristic();
        let mut out = Vec::with_capacity(factors.len());
        for (i, f) in factors.into_iter().enumerate() {
            if f.is_negative() {
                return Err(Error::InvalidModule(format!("factors[{i}] = {f} is negative")));
            }
            if f.is_one() {
                return Err(Error::InvalidModule(format!(
                    "factors[{i}] = 1 is forbidden (a trivial summand must be omitted)"
                )));
            }
            if !m.is_zero() && !f.is_zero() && !m.is_multiple_of(&f) {
                return Err(Error::InvalidModule(format!(
                    "factors[{i}] = {f} does not divide the modulus {m}"
                )));
            }
            out.push(if !m.is_zero() && f == m { BigInt::zero() } else { f });
        }
        Ok(FGModule { ring, factors: out })
    }

    pub fn from_i64(ring: Ring, factors: &[i64]) -> Result<Self> {
        Self::new(ring, factors.iter().map(|&f| BigInt::from(f)).collect())
    }

    pub fn zero(ring: Ring) -> Self {
        FGModule {
            ring,
            factors: Vec::new(),
        }
    }

    pub fn free(ring: Ring, rank: usize) -> Self {
        FGModule {
            ring,
            factors: vec![BigInt::zero(); rank],
        }
    }

    /// Builds a module from Z-orders (0 = free over Z, `m` = free over `Z/m`),
    /// dropping order-1 generators. Returns the indices that were kept.
    pub(crate) fn from_orders(ring: &Ring, orders: impl IntoIterator<Item = BigInt>) -> (Self, Vec<usize>) {
        let m = ring.characteristic();
        let mut kept = Vec::new();
        let mut factors = Vec::new();
        for (i, o) in orders.into_iter().enumerate() {
            let o = o.abs();
            if o.is_one() {
                continue;
            }
            kept.push(i);
            factors.push(if !m.is_zero() && o == m { BigInt::zero() } else { o });
        }
        (
            FGModule {
                ring: ring.clone(),
                factors,
            },
            kept,
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Number of stored generators.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.factors.iter().all(Zero::is_zero)
    }

    /// Additive order of each generator as an integer (0 = infinite).
    pub fn orders(&self) -> Vec<BigInt> {
        let m = self.ring.characteristic();
        self.factors
            .iter()
            .map(|f| if f.is_zero() { m.clone() } else { f.clone() })
            .collect()
    }

    pub fn order(&self, i: usize) -> BigInt {
        if self.factors[i].is_zero() {
            self.ring.characteristic()
        } else {
            self.factors[i].clone()
        }
    }

    /// Invariant factors in divisibility-chain order, free summands last.
    pub fn normalized_factors(&self) -> Vec<BigInt> {
        let s = smith_normal_form(&Matrix::diagonal(&self.orders()));
        FGModule::from_orders(&self.ring, s.diagonal()).0.factors
    }

    pub fn normalized(&self) -> FGModule {
        FGModule {
            ring: self.ring.clone(),
            factors: self.normalized_factors(),
        }
    }

    pub fn is_isomorphic(&self, other: &FGModule) -> bool {
        self.ring == other.ring && self.normalized_factors() == other.normalized_factors()
    }

    pub fn direct_sum(&self, other: &FGModule) -> FGModule {
        debug_assert_eq!(self.ring, other.ring);
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        FGModule {
            ring: self.ring.clone(),
            factors,
        }
    }

    /// Number of elements, when finite.
    pub fn cardinality(&self) -> Option<BigInt> {
        self.orders()
            .iter()
            .try_fold(BigInt::one(), |acc, o| (!o.is_zero()).then(|| acc * o))
    }

    pub fn reduce(&self, x: &mut [BigInt]) {
        assert_eq!(x.len(), self.rank());
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = reduce_mod(xi, &self.order(i));
        }
    }

    pub fn reduced(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut v = x.to_vec();
        self.reduce(&mut v);
        v
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.reduced(x).iter().all(Zero::is_zero)
    }

    /// The diagonal relation matrix `diag(orders)`.
    pub(crate) fn relation_matrix(&self) -> Matrix {
        Matrix::diagonal(&self.orders())
    }
}

impl fmt::Display for FGModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // free part first, then the torsion invariant factors
        let mut factors = self.normalized_factors();
        factors.sort_by_key(|k| !k.is_zero());
        if factors.is_empty() {
            return write!(f, "0");
        }
        let m = self.ring.characteristic();
        let parts: Vec<String> = factors
            .iter()
            .map(|k| {
                if k.is_zero() {
                    if m.is_zero() {
                        "Z".to_string()
                    } else {
                        format!("Z/{m}")
                    }
                } else {
                    format!("Z/{k}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// A homomorphism of finitely generated modules.
///
/// Rows of the matrix index target generators and columns index source
/// generators. Entries are stored reduced modulo the target orders, so `==`
/// is equality of homomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleMap {
    source: FGModule,
    target: FGModule,
    matrix: Matrix,
}

/// Output of [`ModuleMap::kernel`].
#[derive(Clone, Debug)]
pub struct Kernel {
    pub module: FGModule,
    pub inclusion: ModuleMap,
}

/// Output of [`ModuleMap::cokernel`]: the projection and, for each new
/// generator, a lift to the target of the original map.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub module: FGModule,
    pub projection: ModuleMap,
    pub section: Matrix,
}

impl ModuleMap {
    pub fn new(source: FGModule, target: FGModule, matrix: Matrix) -> Result<Self> {
        source.ring.check_same(&target.ring)?;
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::InvalidMap(format!(
                "matrix is {}x{} but the map goes from {} to {} generators",
                matrix.rows(),
                matrix.cols(),
                source.rank(),
                target.rank()
            )));
        }
        let t_orders = target.orders();
        for (j, o) in source.orders().iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            for (i, p) in t_orders.iter().enumerate() {
                let v = &matrix[(i, j)] * o;
                if !reduce_mod(&v, p).is_zero() {
                    return Err(Error::InvalidMap(format!(
                        "column {j}: generator of order {o} is sent to an element whose entry {i} has order not dividing {o}"
                    )));
                }
            }
        }
        Ok(Self::new_unchecked(source, target, matrix))
    }

    /// Reduces entries but skips the well-definedness check.
    pub(crate) fn new_unchecked(source: FGModule, target: FGModule, mut matrix: Matrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.rank());
        debug_assert_eq!(matrix.cols(), source.rank());
        for (i, p) in target.orders().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for j in 0..matrix.cols() {
                let v = reduce_mod(&matrix[(i, j)], p);
                matrix[(i, j)] = v;
            }
        }
        ModuleMap { source, target, matrix }
    }

    pub fn identity(m: &FGModule) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.rank()))
    }

    pub fn zero(source: &FGModule, target: &FGModule) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(target.rank(), source.rank()),
        }
    }

    /// Multiplication by an integer on a module.
    pub fn scalar(m: &FGModule, c: i64) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.rank()).scale(&BigInt::from(c)))
    }

    pub fn source(&self) -> &FGModule {
        &self.source
    }

    pub fn target(&self) -> &FGModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        assert_eq!(first.target, self.source, "composing maps with mismatched modules");
        Self::new_unchecked(first.source.clone(), self.target.clone(), &self.matrix * &first.matrix)
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduced(&self.matrix.mul_vec(x))
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        Self::new_unchecked(self.source.clone(), self.target.clone(), &self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        Self::new_unchecked(self.source.clone(), self.target.clone(), &self.matrix - &other.matrix)
    }

    pub fn neg(&self) -> ModuleMap {
        Self::new_unchecked(self.source.clone(), self.target.clone(), -&self.matrix)
    }

    pub fn scale(&self, c: &BigInt) -> ModuleMap {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    /// `f ⊕ g : M ⊕ M' → N ⊕ N'`
    pub fn direct_sum(&self, other: &ModuleMap) -> ModuleMap {
        Self::new_unchecked(
            self.source.direct_sum(&other.source),
            self.target.direct_sum(&other.target),
            self.matrix.block_diag(&other.matrix),
        )
    }

    /// `(f g) : M ⊕ M' → N`
    pub fn hstack(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(self.target, other.target);
        Self::new_unchecked(
            self.source.direct_sum(&other.source),
            self.target.clone(),
            self.matrix.hstack(&other.matrix),
        )
    }

    /// `(f; g) : M → N ⊕ N'`
    pub fn vstack(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(self.source, other.source);
        Self::new_unchecked(
            self.source.clone(),
            self.target.direct_sum(&other.target),
            self.matrix.vstack(&other.matrix),
        )
    }

    /// `[F | diag(target orders)]`: the integer matrix whose solutions are
    /// the lifts of equations `f(x) = y`.
    fn augmented(&self) -> Matrix {
        self.matrix.hstack(&self.target.relation_matrix())
    }

    /// Basis of the lattice of integer lifts of kernel elements; it contains
    /// the relation lattice of the source.
    pub(crate) fn kernel_lattice(&self) -> Matrix {
        let a = self.source.rank();
        let ker = kernel_basis(&self.augmented());
        let idx: Vec<usize> = (0..a).collect();
        column_span_basis(&ker.select_rows(&idx))
    }

    pub fn kernel(&self) -> Kernel {
        let basis = self.kernel_lattice();
        let sq = Subquotient::new(self.source.ring(), basis, self.source.relation_matrix());
        let inclusion = ModuleMap::new_unchecked(sq.module.clone(), self.source.clone(), sq.gens.clone());
        Kernel {
            module: sq.module,
            inclusion,
        }
    }

    pub fn cokernel(&self) -> Cokernel {
        let b = self.target.rank();
        let sq = Subquotient::new(self.target.ring(), Matrix::identity(b), self.augmented());
        let projection = ModuleMap::new_unchecked(self.target.clone(), sq.module.clone(), sq.proj.clone());
        Cokernel {
            module: sq.module,
            projection,
            section: sq.gens,
        }
    }

    /// Image as a submodule of the target, with its inclusion.
    pub fn image(&self) -> Kernel {
        self.cokernel().projection.kernel()
    }

    /// Some `x` with `f(x) = y`, reduced in the source, or `None`.
    pub fn solve(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let w = solve_integer(&self.augmented(), y)?;
        Some(self.source.reduced(&w[..self.source.rank()]))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().module.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().module.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// `L / R` for a lattice `L ⊂ Z^a` with basis `basis` and a sublattice `R`
/// spanned by `relations`, put into invariant-factor form.
#[derive(Clone, Debug)]
pub(crate) struct Subquotient {
    pub module: FGModule,
    /// New generators in ambient coordinates (`a × k`).
    pub gens: Matrix,
    basis: Matrix,
    /// Coordinates in `basis` to coordinates in `module` (`k × r`).
    pub proj: Matrix,
}

impl Subquotient {
    pub fn new(ring: &Ring, basis: Matrix, relations: Matrix) -> Self {
        let r = basis.cols();
        let x = solve_in_lattice(&basis, &relations);
        let s = smith_normal_form(&x);
        let diag = s.diagonal();
        let orders = (0..r).map(|i| diag.get(i).cloned().unwrap_or_else(BigInt::zero));
        let (module, kept) = FGModule::from_orders(ring, orders);
        let gens = &basis * &s.u_inv.select_columns(&kept);
        let proj = s.u.select_rows(&kept);
        Subquotient {
            module,
            gens,
            basis,
            proj,
        }
    }

    /// Class of an ambient vector lying in `L`.
    pub fn class_of(&self, z: &[BigInt]) -> Vec<BigInt> {
        let w = solve_in_lattice(&self.basis, &Matrix::column_vector(z));
        self.module.reduced(&self.proj.mul_vec(&w.column(0)))
    }

    pub fn contains(&self, z: &[BigInt]) -> bool {
        solve_integer(&self.basis, z).is_some()
    }
}
