//! The small additive category `𝔸` of free modules of a few fixed ranks,
//! complexes of additive functors `𝔸^op → Mod`, and the adjunction
//! `i_! ⊣ i^*` between them and complexes of modules.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::coeff::{FGModule, HomSpace, Matrix, ModuleMap, Ring};
use crate::complex::{chain_cokernel, ChainCokernel, ChainMap, Complex, HomComplex, Homology};
use crate::error::{Error, Result};
use crate::model::CellCertificate;

/// Free modules `R^r`, one object per listed rank. Homs `R^a → R^b` are
/// `b × a` matrices; every one is an `R`-combination of `ι_i ∘ π_j`, where
/// `ι_i : R → R^b` and `π_j : R^a → R` are the biproduct structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddCategory {
    ring: Ring,
    ranks: Vec<usize>,
}

impl AddCategory {
    pub fn new(ring: Ring, ranks: Vec<usize>) -> Result<Self> {
        if !ranks.contains(&1) {
            return Err(Error::InvariantViolation("the category needs the rank-1 object".into()));
        }
        if ranks.contains(&0) {
            return Err(Error::InvariantViolation("objects must be nonzero".into()));
        }
        let mut sorted = ranks.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != ranks.len() {
            return Err(Error::InvariantViolation("repeated object".into()));
        }
        Ok(AddCategory { ring, ranks })
    }

    /// Ranks 1 and 2.
    pub fn standard(ring: Ring) -> Self {
        AddCategory { ring, ranks: vec![1, 2] }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn object(&self, o: usize) -> FGModule {
        FGModule::free(self.ring.clone(), self.ranks[o])
    }

    pub fn objects(&self) -> Vec<FGModule> {
        (0..self.len()).map(|o| self.object(o)).collect()
    }

    /// Index of `R` itself.
    pub fn unit(&self) -> usize {
        self.ranks.iter().position(|&r| r == 1).expect("checked on construction")
    }

    /// Elementary matrices `e_{ij} : R^{r_a} → R^{r_b}`, an `R`-basis of the hom set.
    pub fn hom_basis(&self, a: usize, b: usize) -> Vec<Matrix> {
        let (ra, rb) = (self.ranks[a], self.ranks[b]);
        let mut out = Vec::new();
        for i in 0..rb {
            for j in 0..ra {
                let mut m = Matrix::zeros(rb, ra);
                m[(i, j)] = BigInt::from(1);
                out.push(m);
            }
        }
        out
    }
}

/// `r` copies of `c`.
fn copies(c: &Complex, r: usize) -> Complex {
    (0..r).fold(Complex::zero(c.ring().clone()), |acc, _| acc.direct_sum(c))
}

/// The inclusion of copy `k` into `r` copies of `c`, or its projection.
fn copy_map(c: &Complex, r: usize, k: usize, inclusion: bool) -> ChainMap {
    let big = copies(c, r);
    let block = |d: i64| {
        let n = c.rank(d);
        let mut m = Matrix::zeros(n, n * r);
        m.set_block(0, k * n, &Matrix::identity(n));
        m
    };
    if inclusion {
        ChainMap::from_fn(c, &big, |d| block(d).transpose())
    } else {
        ChainMap::from_fn(&big, c, block)
    }
}

fn chain_sum(maps: impl IntoIterator<Item = ChainMap>) -> Option<ChainMap> {
    maps.into_iter().reduce(|a, b| a.add(&b))
}

/// An additive functor `𝔸^op → Ch(R)`, i.e. a complex of `𝔸`-modules:
/// a complex `M(o)` per object and the actions of the structure maps,
/// `M(ι_k) : M(R^r) → M(R)` and `M(π_k) : M(R) → M(R^r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AComplex {
    cat: AddCategory,
    values: Vec<Complex>,
    inj: Vec<Vec<ChainMap>>,
    proj: Vec<Vec<ChainMap>>,
}

impl AComplex {
    /// Checks the biproduct relations `M(ι_i) M(π_j) = δ_ij` and
    /// `Σ_i M(π_i) M(ι_i) = 1`, which make the action functorial.
    pub fn new(cat: AddCategory, values: Vec<Complex>, inj: Vec<Vec<ChainMap>>, proj: Vec<Vec<ChainMap>>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvariantViolation(m));
        if values.len() != cat.len() || inj.len() != cat.len() || proj.len() != cat.len() {
            return bad("one value and one set of structure maps per object".into());
        }
        let u = cat.unit();
        for (o, v) in values.iter().enumerate() {
            cat.ring.check_same(v.ring())?;
            let r = cat.ranks[o];
            if inj[o].len() != r || proj[o].len() != r {
                return bad(format!("object {o} needs {r} injections and projections"));
            }
            for k in 0..r {
                if inj[o][k].source() != v || inj[o][k].target() != &values[u] {
                    return bad(format!("M(ι_{k}) on object {o} has the wrong shape"));
                }
                if proj[o][k].source() != &values[u] || proj[o][k].target() != v {
                    return bad(format!("M(π_{k}) on object {o} has the wrong shape"));
                }
            }
        }
        let a = AComplex { cat, values, inj, proj };
        if let Some(f) = a.functoriality_failures().into_iter().next() {
            return bad(f);
        }
        Ok(a)
    }

    pub fn category(&self) -> &AddCategory {
        &self.cat
    }

    pub fn value(&self, o: usize) -> &Complex {
        &self.values[o]
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    /// `inj()[o][k] = M(ι_k)`
    pub fn inj(&self) -> &[Vec<ChainMap>] {
        &self.inj
    }

    /// `proj()[o][k] = M(π_k)`
    pub fn proj(&self) -> &[Vec<ChainMap>] {
        &self.proj
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Complex::is_zero)
    }

    /// Violations of the biproduct relations.
    pub fn functoriality_failures(&self) -> Vec<String> {
        let u = self.cat.unit();
        let mut out = Vec::new();
        for o in 0..self.cat.len() {
            let r = self.cat.ranks[o];
            for i in 0..r {
                for j in 0..r {
                    let lhs = self.inj[o][i].compose(&self.proj[o][j]);
                    let rhs = if i == j {
                        ChainMap::identity(&self.values[u])
                    } else {
                        ChainMap::zero(&self.values[u], &self.values[u])
                    };
                    if lhs != rhs {
                        out.push(format!("object {o}: M(ι_{i}) M(π_{j}) is wrong"));
                    }
                }
            }
            let total = chain_sum((0..r).map(|i| self.proj[o][i].compose(&self.inj[o][i])));
            if total.as_ref() != Some(&ChainMap::identity(&self.values[o])) {
                out.push(format!("object {o}: Σ M(π_i) M(ι_i) is not the identity"));
            }
        }
        out
    }

    /// `M(f) : M(R^{r_b}) → M(R^{r_a})` for `f : R^{r_a} → R^{r_b}`,
    /// `M(f) = Σ f_ij M(π_j) M(ι_i)`.
    pub fn action(&self, f: &Matrix, a: usize, b: usize) -> ChainMap {
        let mut out = ChainMap::zero(&self.values[b], &self.values[a]);
        for i in 0..f.rows() {
            for j in 0..f.cols() {
                if !f[(i, j)].is_zero() {
                    out = out.add(&self.proj[a][j].compose(&self.inj[b][i]).scale(&f[(i, j)]));
                }
            }
        }
        out
    }

    /// The degree-`n` slice.
    pub fn module(&self, n: i64) -> AModule {
        AModule {
            cat: self.cat.clone(),
            values: self.values.iter().map(|v| v.module(n).clone()).collect(),
            inj: self.inj.iter().map(|l| l.iter().map(|f| f.component(n)).collect()).collect(),
            proj: self.proj.iter().map(|l| l.iter().map(|f| f.component(n)).collect()).collect(),
        }
    }

    /// Degrees where some value is nonzero.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        crate::complex::hull(&self.values.iter().map(Complex::bounds).collect::<Vec<_>>())
    }

    pub fn zero(cat: &AddCategory) -> Self {
        restrict(&Complex::zero(cat.ring.clone()), cat)
    }

    /// `Hom_𝔸(-, R^{r_o})` in degree 0.
    pub fn representable(cat: &AddCategory, o: usize) -> Self {
        restrict(&crate::complex::sphere(&cat.object(o), 0), cat)
    }
}

/// An additive functor `𝔸^op → Mod`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AModule {
    cat: AddCategory,
    values: Vec<FGModule>,
    inj: Vec<Vec<ModuleMap>>,
    proj: Vec<Vec<ModuleMap>>,
}

impl AModule {
    pub fn value(&self, o: usize) -> &FGModule {
        &self.values[o]
    }

    /// `M(f)` for `f : R^{r_a} → R^{r_b}`.
    pub fn action(&self, f: &Matrix, a: usize, b: usize) -> ModuleMap {
        let mut out = ModuleMap::zero(&self.values[b], &self.values[a]);
        for i in 0..f.rows() {
            for j in 0..f.cols() {
                if !f[(i, j)].is_zero() {
                    out = out.add(&self.proj[a][j].compose(&self.inj[b][i]).scale(&f[(i, j)]));
                }
            }
        }
        out
    }

    /// Checks `M(1) = 1` and `M(g ∘ f) = M(f) ∘ M(g)` on all pairs of
    /// basis morphisms.
    pub fn functoriality_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.cat.len();
        for a in 0..n {
            let id = Matrix::identity(self.cat.ranks[a]);
            if self.action(&id, a, a) != ModuleMap::identity(&self.values[a]) {
                out.push(format!("identity of object {a}"));
            }
            for b in 0..n {
                for c in 0..n {
                    for f in self.cat.hom_basis(a, b) {
                        for g in self.cat.hom_basis(b, c) {
                            let lhs = self.action(&(&g * &f), a, c);
                            let rhs = self.action(&f, a, b).compose(&self.action(&g, b, c));
                            if lhs != rhs {
                                out.push(format!("composite {a} → {b} → {c}"));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// A natural transformation of complexes of `𝔸`-modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AMap {
    source: AComplex,
    target: AComplex,
    components: Vec<ChainMap>,
}

impl AMap {
    /// Checks naturality against the structure maps, which generate all homs.
    pub fn new(source: AComplex, target: AComplex, components: Vec<ChainMap>) -> Result<Self> {
        let u = source.cat.unit();
        if source.cat != target.cat || components.len() != source.cat.len() {
            return Err(Error::InvalidMap("components must match the objects".into()));
        }
        for (o, c) in components.iter().enumerate() {
            if c.source() != &source.values[o] || c.target() != &target.values[o] {
                return Err(Error::InvalidMap(format!("component {o} has the wrong shape")));
            }
            for k in 0..source.cat.ranks[o] {
                let via_inj = components[u].compose(&source.inj[o][k]) == target.inj[o][k].compose(c);
                let via_proj = c.compose(&source.proj[o][k]) == target.proj[o][k].compose(&components[u]);
                if !via_inj || !via_proj {
                    return Err(Error::InvalidMap(format!("not natural at object {o}")));
                }
            }
        }
        Ok(AMap {
            source,
            target,
            components,
        })
    }

    /// The unique candidate extending a map at the unit object:
    /// `η_o = Σ_k N(π_k) η_R M(ι_k)`.
    pub fn from_unit(source: &AComplex, target: &AComplex, at_unit: &ChainMap) -> Result<Self> {
        let components = (0..source.cat.len())
            .map(|o| {
                chain_sum((0..source.cat.ranks[o]).map(|k| target.proj[o][k].compose(at_unit).compose(&source.inj[o][k])))
                    .expect("objects are nonzero")
            })
            .collect();
        AMap::new(source.clone(), target.clone(), components)
    }

    pub fn source(&self) -> &AComplex {
        &self.source
    }

    pub fn target(&self) -> &AComplex {
        &self.target
    }

    pub fn component(&self, o: usize) -> &ChainMap {
        &self.components[o]
    }

    pub fn components(&self) -> &[ChainMap] {
        &self.components
    }

    pub fn compose(&self, first: &AMap) -> AMap {
        AMap {
            source: first.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().zip(&first.components).map(|(g, f)| g.compose(f)).collect(),
        }
    }

    pub fn identity(a: &AComplex) -> AMap {
        AMap {
            source: a.clone(),
            target: a.clone(),
            components: a.values.iter().map(ChainMap::identity).collect(),
        }
    }
}

/// `i^*F`: `Hom(R^r, F) = F^{⊕r}`, with `ι_k` acting as the `k`-th
/// projection and `π_k` as the `k`-th inclusion.
pub fn restrict(f: &Complex, cat: &AddCategory) -> AComplex {
    let values = cat.ranks.iter().map(|&r| copies(f, r)).collect();
    let inj = cat.ranks.iter().map(|&r| (0..r).map(|k| copy_map(f, r, k, false)).collect()).collect();
    let proj = cat.ranks.iter().map(|&r| (0..r).map(|k| copy_map(f, r, k, true)).collect()).collect();
    AComplex {
        cat: cat.clone(),
        values,
        inj,
        proj,
    }
}

/// `i^* g`, componentwise `g^{⊕r}`.
pub fn restrict_map(g: &ChainMap, cat: &AddCategory) -> AMap {
    let source = restrict(g.source(), cat);
    let target = restrict(g.target(), cat);
    let components = cat
        .ranks
        .iter()
        .enumerate()
        .map(|(o, &r)| {
            ChainMap::from_fn(&source.values[o], &target.values[o], |d| {
                let m = g.matrix(d);
                (1..r).fold(m.clone(), |acc, _| acc.block_diag(&m))
            })
        })
        .collect();
    AMap {
        source,
        target,
        components,
    }
}

/// The coend `∫^X M(X) ⊗ X` as a cokernel: `⊕_X M(X) ⊗ R^{r_X}` modulo
/// `M(f)m ⊗ e_l - m ⊗ f(e_l)` for basis morphisms `f` and basis vectors `e_l`.
struct Coend {
    /// `(object, l)` for each summand `M(X) ⊗ e_l` of the sum.
    summands: Vec<(usize, usize)>,
    sum: Complex,
    coker: ChainCokernel,
}

impl Coend {
    fn new(m: &AComplex) -> Result<Self> {
        let cat = &m.cat;
        let ring = cat.ring.clone();
        let summands: Vec<(usize, usize)> = (0..cat.len()).flat_map(|o| (0..cat.ranks[o]).map(move |l| (o, l))).collect();
        let sum = summands
            .iter()
            .fold(Complex::zero(ring.clone()), |acc, &(o, _)| acc.direct_sum(&m.values[o]));
        let offset = |k: usize, d: i64| -> usize { summands[..k].iter().map(|&(o, _)| m.values[o].rank(d)).sum() };
        let position = |o: usize, l: usize| summands.iter().position(|&s| s == (o, l)).expect("listed");

        // one relation summand M(b) per (a, b, e_ij, l)
        let mut rels: Vec<(usize, usize, usize, usize, usize)> = Vec::new();
        for a in 0..cat.len() {
            for b in 0..cat.len() {
                for i in 0..cat.ranks[b] {
                    for j in 0..cat.ranks[a] {
                        for l in 0..cat.ranks[a] {
                            rels.push((a, b, i, j, l));
                        }
                    }
                }
            }
        }
        let rel_source = rels
            .iter()
            .fold(Complex::zero(ring.clone()), |acc, &(_, b, ..)| acc.direct_sum(&m.values[b]));
        let rel_offset = |k: usize, d: i64| -> usize { rels[..k].iter().map(|&(_, b, ..)| m.values[b].rank(d)).sum() };
        let actions: Vec<ChainMap> = rels
            .iter()
            .map(|&(a, b, i, j, _)| {
                let mut f = Matrix::zeros(cat.ranks[b], cat.ranks[a]);
                f[(i, j)] = BigInt::from(1);
                m.action(&f, a, b)
            })
            .collect();
        let relation = ChainMap::new(
            rel_source.clone(),
            sum.clone(),
            rel_source
                .degrees()
                .chain(sum.degrees())
                .map(|d| {
                    let mut mat = Matrix::zeros(sum.rank(d), rel_source.rank(d));
                    for (k, &(a, b, i, j, l)) in rels.iter().enumerate() {
                        let col = rel_offset(k, d);
                        mat.set_block(offset(position(a, l), d), col, &actions[k].matrix(d));
                        if l == j {
                            let target = offset(position(b, i), d);
                            let id = Matrix::identity(m.values[b].rank(d)).scale(&BigInt::from(-1));
                            let existing = mat.block(target, col, id.rows(), id.cols());
                            mat.set_block(target, col, &(&existing + &id));
                        }
                    }
                    (d, mat)
                })
                .collect(),
        )?;
        let coker = chain_cokernel(&relation);
        Ok(Coend { summands, sum, coker })
    }

    fn offset(&self, m: &AComplex, k: usize, d: i64) -> usize {
        self.summands[..k].iter().map(|&(o, _)| m.values[o].rank(d)).sum()
    }

    /// A map out of the sum, given per summand, pushed down to the cokernel.
    fn descend(&self, m: &AComplex, target: &Complex, blocks: impl Fn(usize, usize) -> ChainMap) -> Result<ChainMap> {
        let on_sum = ChainMap::from_fn(&self.sum, target, |d| {
            let mut mat = Matrix::zeros(target.rank(d), self.sum.rank(d));
            for (k, &(o, l)) in self.summands.iter().enumerate() {
                mat.set_block(0, self.offset(m, k, d), &blocks(o, l).matrix(d));
            }
            mat
        });
        ChainMap::new(
            self.coker.complex.clone(),
            target.clone(),
            self.coker
                .complex
                .degrees()
                .map(|d| (d, &on_sum.matrix(d) * &self.coker.sections[&d]))
                .collect(),
        )
    }

    /// Inclusion of the summand `M(o) ⊗ e_l` followed by the projection.
    fn summand(&self, m: &AComplex, o: usize, l: usize) -> ChainMap {
        let k = self.summands.iter().position(|&s| s == (o, l)).expect("listed");
        let v = &m.values[o];
        let incl = ChainMap::from_fn(v, &self.sum, |d| {
            let mut mat = Matrix::zeros(self.sum.rank(d), v.rank(d));
            mat.set_block(self.offset(m, k, d), 0, &Matrix::identity(v.rank(d)));
            mat
        });
        self.coker.projection.compose(&incl)
    }
}

/// `i_!M`, the left Kan extension along `𝔸 → Mod`.
pub fn extend(m: &AComplex) -> Result<Complex> {
    Ok(Coend::new(m)?.coker.complex)
}

/// `i_!φ`.
pub fn extend_map(phi: &AMap) -> Result<ChainMap> {
    let (src, tgt) = (Coend::new(&phi.source)?, Coend::new(&phi.target)?);
    src.descend(&phi.source, &tgt.coker.complex, |o, l| {
        tgt.summand(&phi.target, o, l).compose(&phi.components[o])
    })
}

/// The unit `M → i^* i_! M`, `m ↦ ([m ⊗ e_1], …, [m ⊗ e_r])`.
pub fn adjunction_unit(m: &AComplex) -> Result<AMap> {
    let coend = Coend::new(m)?;
    let target = restrict(&coend.coker.complex, &m.cat);
    let components = (0..m.cat.len())
        .map(|o| {
            let r = m.cat.ranks[o];
            chain_sum((0..r).map(|l| {
                copy_map(&coend.coker.complex, r, l, true).compose(&coend.summand(m, o, l))
            }))
            .expect("objects are nonzero")
        })
        .collect();
    AMap::new(m.clone(), target, components)
}

/// The counit `i_! i^* F → F`, evaluation `φ ⊗ x ↦ φ(x)`.
pub fn adjunction_counit(f: &Complex, cat: &AddCategory) -> Result<ChainMap> {
    let m = restrict(f, cat);
    let coend = Coend::new(&m)?;
    coend.descend(&m, f, |o, l| copy_map(f, cat.ranks[o], l, false))
}

/// Every chain map `X → Y` over a finite coefficient ring, by brute force
/// over degreewise homomorphisms.
pub fn enumerate_chain_maps(x: &Complex, y: &Complex, budget: usize) -> Result<Vec<ChainMap>> {
    x.ring().check_same(y.ring())?;
    let mut spaces = Vec::new();
    let mut total: usize = 1;
    for d in x.degrees() {
        let space = HomSpace::new(x.module(d), y.module(d))?;
        for o in space.module().orders() {
            let o = o.to_usize().filter(|&o| o > 0).ok_or_else(|| {
                Error::InvariantViolation("hom sets are infinite; enumeration needs finite coefficients".into())
            })?;
            total = total
                .checked_mul(o)
                .filter(|&t| t <= budget)
                .ok_or_else(|| Error::BudgetExceeded(format!("more than {budget} degreewise maps")))?;
        }
        spaces.push((d, space));
    }
    let mut out = Vec::new();
    let orders: Vec<Vec<usize>> = spaces
        .iter()
        .map(|(_, s)| s.module().orders().iter().map(|o| o.to_usize().unwrap()).collect())
        .collect();
    let flat: Vec<usize> = orders.iter().flatten().copied().collect();
    let mut digits = vec![0usize; flat.len()];
    loop {
        let mut pos = 0;
        let comps = spaces
            .iter()
            .zip(&orders)
            .map(|((d, s), os)| {
                let coeffs: Vec<BigInt> = digits[pos..pos + os.len()].iter().map(|&v| BigInt::from(v)).collect();
                pos += os.len();
                (*d, s.to_matrix(&coeffs))
            })
            .collect();
        if let Ok(f) = ChainMap::new(x.clone(), y.clone(), comps) {
            out.push(f);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(out);
            }
            digits[k] += 1;
            if digits[k] < flat[k] {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Every natural transformation `X → Y`, by enumerating the component at
/// `R` (which determines the rest) and keeping the natural ones.
pub fn enumerate_natural_maps(x: &AComplex, y: &AComplex, budget: usize) -> Result<Vec<AMap>> {
    let u = x.cat.unit();
    Ok(enumerate_chain_maps(&x.values[u], &y.values[u], budget)?
        .iter()
        .filter_map(|c| AMap::from_unit(x, y, c).ok())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    /// `ε_{i_!X} ∘ i_!(η_X) = 1`
    pub extend_triangle: bool,
    /// `i^*(ε_F) ∘ η_{i^*F} = 1`
    pub restrict_triangle: bool,
    /// `(|Hom(i_!X, F)|, |Nat(X, i^*F)|)` when enumerable.
    pub counts: Option<(usize, usize)>,
    /// `g ↦ i^*(g) ∘ η_X` is a bijection, when enumerable.
    pub bijective: Option<bool>,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.extend_triangle && self.restrict_triangle && self.bijective != Some(false)
    }
}

/// Triangle identities for `X` and `F`, and over a finite ring the hom-set
/// bijection by enumeration (skipped when over budget or infinite).
pub fn adjunction_check(x: &AComplex, f: &Complex, budget: usize) -> Result<AdjunctionReport> {
    let cat = &x.cat;
    let eta_x = adjunction_unit(x)?;
    let ix = extend(x)?;
    let extend_triangle = adjunction_counit(&ix, cat)?.compose(&extend_map(&eta_x)?) == ChainMap::identity(&ix);

    let rf = restrict(f, cat);
    let eps_f = adjunction_counit(f, cat)?;
    let restrict_triangle = restrict_map(&eps_f, cat).compose(&adjunction_unit(&rf)?) == AMap::identity(&rf);

    let enumerated = match (enumerate_chain_maps(&ix, f, budget), enumerate_natural_maps(x, &rf, budget)) {
        (Ok(left), Ok(right)) => Some((left, right)),
        (Err(Error::BudgetExceeded(_) | Error::InvariantViolation(_)), _)
        | (_, Err(Error::BudgetExceeded(_) | Error::InvariantViolation(_))) => None,
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let (counts, bijective) = match enumerated {
        None => (None, None),
        Some((left, right)) => {
            let images: Vec<AMap> = left.iter().map(|g| restrict_map(g, cat).compose(&eta_x)).collect();
            let distinct = images.iter().enumerate().all(|(k, a)| !images[..k].contains(a));
            let inside = images.iter().all(|a| right.contains(a));
            (Some((left.len(), right.len())), Some(distinct && inside && left.len() == right.len()))
        }
    };
    Ok(AdjunctionReport {
        extend_triangle,
        restrict_triangle,
        counts,
        bijective,
    })
}

/// `Nat(X, Y) → Hom(i_!X, i_!Y)` is a bijection, by enumeration.
pub fn extend_is_fully_faithful_on(x: &AComplex, y: &AComplex, budget: usize) -> Result<bool> {
    let nat = enumerate_natural_maps(x, y, budget)?;
    let homs = enumerate_chain_maps(&extend(x)?, &extend(y)?, budget)?;
    let images = nat.iter().map(extend_map).collect::<Result<Vec<_>>>()?;
    let distinct = images.iter().enumerate().all(|(k, a)| !images[..k].contains(a));
    Ok(distinct && images.len() == homs.len() && images.iter().all(|g| homs.contains(g)))
}

/// Outcome of [`compact_additivity_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactnessReport {
    /// `[X, Y_i]` for each member.
    pub summands: Vec<FGModule>,
    /// `[X, ⊕ Y_i]`
    pub total: FGModule,
    /// The canonical map between them is an isomorphism.
    pub isomorphism: bool,
}

/// `⊕_i [X, Y_i] → [X, ⊕_i Y_i]` induced by the inclusions. `X` must be
/// bounded and degreewise free; it is certified as a cell complex first.
pub fn compact_additivity_probe(x: &Complex, family: &[Complex]) -> Result<CompactnessReport> {
    CellCertificate::for_free_complex(x)?.verify(x, &[FGModule::free(x.ring().clone(), 1)])?;
    let ring = x.ring().clone();
    let big = family.iter().fold(Complex::zero(ring.clone()), |acc, y| acc.direct_sum(y));
    let hc = HomComplex::new(x, &big)?;
    let h = Homology::new(hc.complex(), 0);
    let mut summands = Vec::new();
    let mut canonical = ModuleMap::zero(&FGModule::zero(ring.clone()), &h.module);
    let mut before = Complex::zero(ring.clone());
    for y in family {
        let incl = ChainMap::from_fn(y, &big, |d| {
            let mut m = Matrix::zeros(big.rank(d), y.rank(d));
            m.set_block(before.rank(d), 0, &Matrix::identity(y.rank(d)));
            m
        });
        let hi = HomComplex::new(x, y)?;
        let post = hi.postcompose(&incl, &hc);
        let hh = Homology::new(hi.complex(), 0);
        canonical = canonical.hstack(&hh.induced(&h, &post.matrix(0)));
        summands.push(hh.module.clone());
        before = before.direct_sum(y);
    }
    Ok(CompactnessReport {
        summands,
        total: h.module.clone(),
        isomorphism: canonical.is_isomorphism(),
    })
}

#[cfg(test)]
mod tests;
