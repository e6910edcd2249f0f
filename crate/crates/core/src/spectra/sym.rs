use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use super::perm;
use super::seq::SymSeq;
use crate::coeff::{FGModule, Matrix};
use crate::complex::{sphere, ChainMap, Complex};
use crate::error::Result;
use crate::monoidal::{associator, braiding, left_unitor, right_unitor, tensor, tensor_chain_maps, TensorComplex};

/// A basis element of `S^{⊗n}`: one `(degree, generator)` per factor.
type Word = Vec<(i64, usize)>;

/// `S^{⊗0}, …, S^{⊗N}`, left-nested, with every basis element decoded
/// into its factors.
#[derive(Clone, Debug)]
pub struct TensorPowers {
    s: Complex,
    levels: Vec<Complex>,
    words: Vec<BTreeMap<i64, Vec<Word>>>,
    index: Vec<HashMap<Word, usize>>,
}

impl TensorPowers {
    pub fn new(s: &Complex, truncation: usize) -> Result<Self> {
        let unit = sphere(&FGModule::free(s.ring().clone(), 1), 0);
        let mut levels = vec![unit];
        let mut words = vec![BTreeMap::from([(0, vec![Vec::new()])])];
        for n in 1..=truncation {
            let tc = TensorComplex::new(&levels[n - 1], s)?;
            let mut w = BTreeMap::new();
            for d in tc.complex().degrees() {
                let list: Vec<Word> = (0..tc.complex().rank(d))
                    .map(|a| {
                        let (p, q, i, j) = tc.decode(d, a).expect("coordinate in range");
                        let mut word = words[n - 1][&p][i].clone();
                        word.push((q, j));
                        word
                    })
                    .collect();
                w.insert(d, list);
            }
            words.push(w);
            levels.push(tc.complex().clone());
        }
        let index = words
            .iter()
            .map(|w| {
                w.values()
                    .flat_map(|list| list.iter().enumerate().map(|(a, word)| (word.clone(), a)))
                    .collect()
            })
            .collect();
        Ok(TensorPowers {
            s: s.clone(),
            levels,
            words,
            index,
        })
    }

    pub fn base(&self) -> &Complex {
        &self.s
    }

    pub fn level(&self, n: usize) -> &Complex {
        &self.levels[n]
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    fn words(&self, n: usize, d: i64) -> &[Word] {
        self.words[n].get(&d).map_or(&[], Vec::as_slice)
    }

    /// `g` moves the factor in position `r` to position `g[r]`, with the
    /// Koszul sign of the odd factors it moves past each other.
    pub fn permute(&self, n: usize, g: &[usize]) -> ChainMap {
        let c = &self.levels[n];
        ChainMap::from_fn(c, c, |d| {
            let mut m = Matrix::zeros(c.rank(d), c.rank(d));
            for (a, w) in self.words(n, d).iter().enumerate() {
                let mut image = w.clone();
                for (r, &x) in w.iter().enumerate() {
                    image[g[r]] = x;
                }
                let odd = perm::weighted_inversions(g, |x, y| (w[x].0 * w[y].0).rem_euclid(2) == 1);
                let sign = if odd % 2 == 0 { 1 } else { -1 };
                m[(self.index[n][&image], a)] = BigInt::from(sign);
            }
            m
        })
    }

    /// `S^{⊗p} ⊗ S^{⊗q} → S^{⊗(p+q)}`, concatenating words.
    pub fn concatenation(&self, p: usize, q: usize) -> Result<ChainMap> {
        let tc = TensorComplex::new(&self.levels[p], &self.levels[q])?;
        let target = &self.levels[p + q];
        Ok(ChainMap::from_fn(tc.complex(), target, |d| {
            let mut m = Matrix::zeros(target.rank(d), tc.complex().rank(d));
            for a in 0..tc.complex().rank(d) {
                let (pd, qd, i, j) = tc.decode(d, a).expect("coordinate in range");
                let mut word = self.words(p, pd)[i].clone();
                word.extend_from_slice(&self.words(q, qd)[j]);
                m[(self.index[p + q][&word], a)] = BigInt::from(1);
            }
            m
        }))
    }

    /// `Sym(S)`: `S^{⊗n}` with `𝔖_n` permuting factors.
    pub fn sequence(&self) -> SymSeq {
        SymSeq::from_fn(self.s.ring(), self.levels.clone(), |n, k| {
            self.permute(n, &perm::transposition(n, k))
        })
    }
}

/// A monoid in symmetric sequences: `R`, multiplications
/// `μ_{p,q} : R_p ⊗ R_q → R_{p+q}` for `p + q ≤ N`, and a unit `1 → R_0`.
#[derive(Clone, Debug)]
pub struct RingSpectrumData {
    pub seq: SymSeq,
    pub mult: BTreeMap<(usize, usize), ChainMap>,
    pub unit: ChainMap,
    pub commutative: bool,
}

/// Failed checks, each naming the levels involved.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub failures: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `Sym(S)` with concatenation as multiplication.
pub fn sym_monoid(s: &Complex, truncation: usize) -> Result<RingSpectrumData> {
    let tp = TensorPowers::new(s, truncation)?;
    let mut mult = BTreeMap::new();
    for p in 0..=truncation {
        for q in 0..=truncation - p {
            mult.insert((p, q), tp.concatenation(p, q)?);
        }
    }
    Ok(RingSpectrumData {
        unit: ChainMap::identity(tp.level(0)),
        seq: tp.sequence(),
        mult,
        commutative: true,
    })
}

fn unit_complex(r: &RingSpectrumData) -> Complex {
    sphere(&FGModule::free(r.seq.ring().clone(), 1), 0)
}

/// `χ_{p,q}`: the first `p` letters move behind the last `q`.
pub(crate) fn block_swap(p: usize, q: usize) -> perm::Perm {
    (0..p).map(|r| r + q).chain(0..q).collect()
}

/// Associativity, unit, equivariance and (if flagged) commutativity of
/// the multiplication, up to the truncation.
pub fn validate_ring_spectrum(r: &RingSpectrumData) -> Result<LawReport> {
    let mut failures: Vec<String> = r.seq.coxeter_failures();
    let n = r.seq.truncation();
    let lev = |k: usize| r.seq.level(k);
    let id = |k: usize| ChainMap::identity(lev(k));
    if r.unit.target() != lev(0) || r.unit.source() != &unit_complex(r) {
        failures.push("unit is not a map 1 → R_0".into());
        return Ok(LawReport { failures });
    }
    for p in 0..=n {
        for q in 0..=n - p {
            let Some(mu) = r.mult.get(&(p, q)) else {
                failures.push(format!("missing multiplication at ({p},{q})"));
                continue;
            };
            if mu.source() != &tensor(lev(p), lev(q))? || mu.target() != lev(p + q) {
                failures.push(format!("multiplication at ({p},{q}) has the wrong shape"));
                continue;
            }
            for k in 0..p.saturating_sub(1) {
                let lhs = mu.compose(&tensor_chain_maps(r.seq.transposition(p, k), &id(q))?);
                if lhs != r.seq.transposition(p + q, k).compose(mu) {
                    failures.push(format!("equivariance at ({p},{q}): s_{k} on the left factor"));
                }
            }
            for k in 0..q.saturating_sub(1) {
                let lhs = mu.compose(&tensor_chain_maps(&id(p), r.seq.transposition(q, k))?);
                if lhs != r.seq.transposition(p + q, p + k).compose(mu) {
                    failures.push(format!("equivariance at ({p},{q}): s_{k} on the right factor"));
                }
            }
        }
    }
    if !failures.is_empty() {
        return Ok(LawReport { failures });
    }
    let mu = |p: usize, q: usize| &r.mult[&(p, q)];
    for q in 0..=n {
        let left = mu(0, q).compose(&tensor_chain_maps(&r.unit, &id(q))?);
        if left != left_unitor(lev(q))? {
            failures.push(format!("left unit at level {q}"));
        }
        let right = mu(q, 0).compose(&tensor_chain_maps(&id(q), &r.unit)?);
        if right != right_unitor(lev(q))? {
            failures.push(format!("right unit at level {q}"));
        }
    }
    for p in 0..=n {
        for q in 0..=n - p {
            for s in 0..=n - p - q {
                let lhs = mu(p + q, s).compose(&tensor_chain_maps(mu(p, q), &id(s))?);
                let rhs = mu(p, q + s)
                    .compose(&tensor_chain_maps(&id(p), mu(q, s))?)
                    .compose(&associator(lev(p), lev(q), lev(s))?);
                if lhs != rhs {
                    failures.push(format!("associativity at ({p},{q},{s})"));
                }
            }
        }
    }
    if r.commutative {
        for p in 0..=n {
            for q in 0..=n - p {
                let lhs = mu(q, p).compose(&braiding(lev(p), lev(q))?);
                let rhs = r.seq.act(p + q, &block_swap(p, q)).compose(mu(p, q));
                if lhs != rhs {
                    failures.push(format!("commutativity at ({p},{q})"));
                }
            }
        }
    }
    Ok(LawReport { failures })
}

/// A left module `M` over a monoid `R`: `a_{p,q} : R_p ⊗ M_q → M_{p+q}`.
#[derive(Clone, Debug)]
pub struct ModuleSpectrumData {
    pub seq: SymSeq,
    pub action: BTreeMap<(usize, usize), ChainMap>,
}

/// Associativity, unit and equivariance of a module action.
pub fn validate_module(r: &RingSpectrumData, m: &ModuleSpectrumData) -> Result<LawReport> {
    let mut failures = m.seq.coxeter_failures();
    let n = r.seq.truncation().min(m.seq.truncation());
    let (rl, ml) = (|k: usize| r.seq.level(k), |k: usize| m.seq.level(k));
    for p in 0..=n {
        for q in 0..=n - p {
            let Some(a) = m.action.get(&(p, q)) else {
                failures.push(format!("missing action at ({p},{q})"));
                continue;
            };
            if a.source() != &tensor(rl(p), ml(q))? || a.target() != ml(p + q) {
                failures.push(format!("action at ({p},{q}) has the wrong shape"));
                continue;
            }
            for k in 0..p.saturating_sub(1) {
                let lhs = a.compose(&tensor_chain_maps(r.seq.transposition(p, k), &ChainMap::identity(ml(q)))?);
                if lhs != m.seq.transposition(p + q, k).compose(a) {
                    failures.push(format!("equivariance at ({p},{q}): s_{k} on the ring"));
                }
            }
            for k in 0..q.saturating_sub(1) {
                let lhs = a.compose(&tensor_chain_maps(&ChainMap::identity(rl(p)), m.seq.transposition(q, k))?);
                if lhs != m.seq.transposition(p + q, p + k).compose(a) {
                    failures.push(format!("equivariance at ({p},{q}): s_{k} on the module"));
                }
            }
        }
    }
    if !failures.is_empty() {
        return Ok(LawReport { failures });
    }
    let act = |p: usize, q: usize| &m.action[&(p, q)];
    for q in 0..=n {
        let lhs = act(0, q).compose(&tensor_chain_maps(&r.unit, &ChainMap::identity(ml(q)))?);
        if lhs != left_unitor(ml(q))? {
            failures.push(format!("unit at level {q}"));
        }
    }
    for p in 0..=n {
        for q in 0..=n - p {
            for s in 0..=n - p - q {
                let lhs = act(p + q, s).compose(&tensor_chain_maps(&r.mult[&(p, q)], &ChainMap::identity(ml(s)))?);
                let rhs = act(p, q + s)
                    .compose(&tensor_chain_maps(&ChainMap::identity(rl(p)), act(q, s))?)
                    .compose(&associator(rl(p), rl(q), ml(s))?);
                if lhs != rhs {
                    failures.push(format!("associativity at ({p},{q},{s})"));
                }
            }
        }
    }
    Ok(LawReport { failures })
}

/// The zero module over `r`.
pub fn zero_module(r: &RingSpectrumData) -> Result<ModuleSpectrumData> {
    let n = r.seq.truncation();
    let seq = SymSeq::zero(r.seq.ring().clone(), n);
    let mut action = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n - p {
            action.insert((p, q), ChainMap::zero(&tensor(r.seq.level(p), seq.level(q))?, seq.level(p + q)));
        }
    }
    Ok(ModuleSpectrumData { seq, action })
}

/// The monoid map `Sym(S) → M` extending `f : S → M_1`:
/// `φ_n = μ_{n-1,1} ∘ (φ_{n-1} ⊗ f)`.
pub fn extend_to_monoid_map(sym: &RingSpectrumData, f: &ChainMap, m: &RingSpectrumData) -> Result<Vec<ChainMap>> {
    let n = sym.seq.truncation().min(m.seq.truncation());
    let mut phi = vec![m.unit.clone()];
    for k in 1..=n {
        let step = m.mult[&(k - 1, 1)].compose(&tensor_chain_maps(&phi[k - 1], f)?);
        let src = sym.seq.level(k);
        phi.push(ChainMap::from_fn(src, step.target(), |d| step.matrix(d)));
        debug_assert_eq!(step.source(), src);
    }
    Ok(phi)
}

/// Whether levelwise maps `φ` form a map of monoids.
pub fn monoid_map_failures(phi: &[ChainMap], a: &RingSpectrumData, b: &RingSpectrumData) -> Result<Vec<String>> {
    let mut out: Vec<String> = super::seq::equivariance_failures(phi, &a.seq, &b.seq)
        .into_iter()
        .map(|(n, k)| format!("level {n}: not equivariant for s_{k}"))
        .collect();
    if phi[0].compose(&a.unit) != b.unit {
        out.push("unit not preserved".into());
    }
    let n = phi.len() - 1;
    for p in 0..=n {
        for q in 0..=n - p {
            let lhs = phi[p + q].compose(&a.mult[&(p, q)]);
            let rhs = b.mult[&(p, q)].compose(&tensor_chain_maps(&phi[p], &phi[q])?);
            if lhs != rhs {
                out.push(format!("multiplication at ({p},{q})"));
            }
        }
    }
    Ok(out)
}
