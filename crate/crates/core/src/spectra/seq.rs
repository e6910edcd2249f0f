use num_bigint::BigInt;

use super::perm::{self, Perm};
use crate::coeff::{Matrix, Ring};
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::monoidal::{braiding, tensor_chain_maps, TensorComplex};

/// A symmetric sequence truncated at level `N`: complexes `E_0, …, E_N`
/// with `𝔖_n` acting on `E_n` through the adjacent transpositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymSeq {
    ring: Ring,
    levels: Vec<Complex>,
    /// `actions[n][k]` is the action of `s_k = (k k+1)` on `E_n`.
    actions: Vec<Vec<ChainMap>>,
}

impl SymSeq {
    pub fn new(ring: Ring, levels: Vec<Complex>, actions: Vec<Vec<ChainMap>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidEquivariance("a symmetric sequence needs level 0".into()));
        }
        if actions.len() != levels.len() {
            return Err(Error::InvalidEquivariance(format!(
                "{} levels but {} action lists",
                levels.len(),
                actions.len()
            )));
        }
        for (n, (level, acts)) in levels.iter().zip(&actions).enumerate() {
            ring.check_same(level.ring())?;
            if acts.len() != n.saturating_sub(1) {
                return Err(Error::InvalidEquivariance(format!(
                    "level {n} needs {} transpositions, got {}",
                    n.saturating_sub(1),
                    acts.len()
                )));
            }
            for (k, s) in acts.iter().enumerate() {
                if s.source() != level || s.target() != level {
                    return Err(Error::InvalidEquivariance(format!(
                        "s_{k} on level {n} is not an endomorphism of the level"
                    )));
                }
            }
        }
        let seq = SymSeq { ring, levels, actions };
        if let Some(f) = seq.coxeter_failures().into_iter().next() {
            return Err(Error::InvalidEquivariance(f));
        }
        Ok(seq)
    }

    pub(crate) fn new_unchecked(ring: Ring, levels: Vec<Complex>, actions: Vec<Vec<ChainMap>>) -> Self {
        let seq = SymSeq { ring, levels, actions };
        debug_assert!(seq.coxeter_failures().is_empty(), "{:?}", seq.coxeter_failures());
        seq
    }

    /// Builds the actions from a function giving `s_k` on level `n`.
    pub(crate) fn from_fn(ring: &Ring, levels: Vec<Complex>, s: impl Fn(usize, usize) -> ChainMap) -> Self {
        let actions = (0..levels.len())
            .map(|n| (0..n.saturating_sub(1)).map(|k| s(n, k)).collect())
            .collect();
        Self::new_unchecked(ring.clone(), levels, actions)
    }

    pub fn zero(ring: Ring, truncation: usize) -> Self {
        let z = Complex::zero(ring.clone());
        let id = ChainMap::identity(&z);
        Self::from_fn(&ring, vec![z; truncation + 1], |_, _| id.clone())
    }

    /// `X{0}`: `X` in level 0, zero above.
    pub fn concentrated(x: &Complex, truncation: usize) -> Self {
        let mut levels = vec![Complex::zero(x.ring().clone()); truncation + 1];
        levels[0] = x.clone();
        let z = Complex::zero(x.ring().clone());
        Self::from_fn(x.ring(), levels, |_, _| ChainMap::identity(&z))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Complex {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Complex] {
        &self.levels
    }

    pub fn transposition(&self, n: usize, k: usize) -> &ChainMap {
        &self.actions[n][k]
    }

    pub fn actions(&self) -> &[Vec<ChainMap>] {
        &self.actions
    }

    /// The same sequence with fewer levels.
    pub fn truncate(&self, n: usize) -> SymSeq {
        let n = n.min(self.truncation());
        SymSeq {
            ring: self.ring.clone(),
            levels: self.levels[..=n].to_vec(),
            actions: self.actions[..=n].to_vec(),
        }
    }

    /// The action of an arbitrary permutation of `{0, …, n-1}` on `E_n`.
    pub fn act(&self, n: usize, g: &[usize]) -> ChainMap {
        debug_assert_eq!(g.len(), n);
        let mut out = ChainMap::identity(&self.levels[n]);
        for k in perm::reduced_word(g) {
            out = self.actions[n][k].compose(&out);
        }
        out
    }

    /// Violations of `s_k² = 1`, far commutation and the braid relation.
    pub fn coxeter_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (n, acts) in self.actions.iter().enumerate() {
            let id = ChainMap::identity(&self.levels[n]);
            for (i, s) in acts.iter().enumerate() {
                if s.compose(s) != id {
                    out.push(format!("level {n}: s_{i}^2 != 1"));
                }
                for (j, t) in acts.iter().enumerate().skip(i + 2) {
                    if s.compose(t) != t.compose(s) {
                        out.push(format!("level {n}: s_{i} s_{j} != s_{j} s_{i}"));
                    }
                }
                if let Some(t) = acts.get(i + 1) {
                    if s.compose(t).compose(s) != t.compose(s).compose(t) {
                        out.push(format!("level {n}: braid relation fails at s_{i}, s_{}", i + 1));
                    }
                }
            }
        }
        out
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.levels.iter().map(Complex::total_rank).collect()
    }
}

/// Whether levelwise maps `f_n : A_n → B_n` commute with every `s_k`.
pub fn is_equivariant(f: &[ChainMap], a: &SymSeq, b: &SymSeq) -> bool {
    equivariance_failures(f, a, b).is_empty()
}

/// `(level, k)` where `f_n ∘ s_k ≠ s_k ∘ f_n`.
pub fn equivariance_failures(f: &[ChainMap], a: &SymSeq, b: &SymSeq) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (n, fn_) in f.iter().enumerate() {
        for k in 0..n.saturating_sub(1) {
            if fn_.compose(a.transposition(n, k)) != b.transposition(n, k).compose(fn_) {
                out.push((n, k));
            }
        }
    }
    out
}

/// Direct sum of complexes with the coordinate offsets of each part.
pub(crate) struct Summands {
    pub parts: Vec<Complex>,
    pub total: Complex,
}

impl Summands {
    pub fn new(ring: &Ring, parts: Vec<Complex>) -> Self {
        let total = parts
            .iter()
            .fold(Complex::zero(ring.clone()), |acc, c| acc.direct_sum(c));
        Summands { parts, total }
    }

    pub fn offset(&self, k: usize, d: i64) -> usize {
        self.parts[..k].iter().map(|c| c.rank(d)).sum()
    }

    /// The map with block `(t, s)` given by each `(t, s, f)`.
    pub fn map_to(&self, onto: &Summands, blocks: &[(usize, usize, ChainMap)]) -> ChainMap {
        ChainMap::from_fn(&self.total, &onto.total, |d| {
            let mut m = Matrix::zeros(onto.total.rank(d), self.total.rank(d));
            for (t, s, f) in blocks {
                m.set_block(onto.offset(*t, d), self.offset(*s, d), &f.matrix(d));
            }
            m
        })
    }
}

/// `A{-i}`: level `n` is `𝔖_n ×_{𝔖_{n-i}} A_{n-i}`, one copy of `A_{n-i}`
/// per ordered `i`-tuple of distinct letters, `𝔖_{n-i}` acting on the last
/// `n - i` letters.
pub fn seq_shift_down(a: &SymSeq, i: usize) -> SymSeq {
    let ring = a.ring().clone();
    let nmax = a.truncation();
    let layouts: Vec<(Vec<Vec<usize>>, Summands)> = (0..=nmax)
        .map(|n| {
            if n < i {
                return (Vec::new(), Summands::new(&ring, Vec::new()));
            }
            let ts = perm::tuples(n, i);
            let parts = vec![a.level(n - i).clone(); ts.len()];
            (ts, Summands::new(&ring, parts))
        })
        .collect();
    let levels = layouts.iter().map(|(_, s)| s.total.clone()).collect();
    SymSeq::from_fn(&ring, levels, |n, k| {
        let (ts, sums) = &layouts[n];
        let g = perm::transposition(n, k);
        let blocks: Vec<(usize, usize, ChainMap)> = ts
            .iter()
            .enumerate()
            .map(|(s, t)| {
                let gt: Vec<usize> = t.iter().map(|&x| g[x]).collect();
                let target = ts.binary_search(&gt).expect("tuples are sorted");
                let rep = perm::coset_rep(n, t);
                let rep2 = perm::coset_rep(n, &gt);
                let tau = perm::compose(&perm::inverse(&rep2), &perm::compose(&g, &rep));
                let inner: Perm = tau[i..].iter().map(|&x| x - i).collect();
                (target, s, a.act(n - i, &inner))
            })
            .collect();
        sums.map_to(sums, &blocks)
    })
}

/// `A{i}`: level `n` is `A_{n+i}` with `𝔖_n` acting on the last `n`
/// letters. Needs `i ≤ N`.
pub fn seq_shift_up(a: &SymSeq, i: usize) -> Result<SymSeq> {
    if i > a.truncation() {
        return Err(Error::InvariantViolation(format!(
            "shift by {i} exceeds the truncation {}",
            a.truncation()
        )));
    }
    let levels = a.levels()[i..].to_vec();
    Ok(SymSeq::from_fn(a.ring(), levels, |n, k| a.transposition(n + i, k + i).clone()))
}

/// `f{-i} : A{-i} → B{-i}`, one copy of `f_{n-i}` per tuple.
pub fn shift_down_map(f: &[ChainMap], a: &SymSeq, b: &SymSeq, i: usize) -> Vec<ChainMap> {
    let (sa, sb) = (seq_shift_down(a, i), seq_shift_down(b, i));
    (0..f.len())
        .map(|n| {
            if n < i {
                return ChainMap::zero(sa.level(n), sb.level(n));
            }
            let copies = perm::tuples(n, i).len();
            ChainMap::from_fn(sa.level(n), sb.level(n), |d| {
                let m = f[n - i].matrix(d);
                (1..copies).fold(m.clone(), |acc, _| acc.block_diag(&m))
            })
        })
        .collect()
}

/// `f{i} : A{i} → B{i}`.
pub fn shift_up_map(f: &[ChainMap], i: usize) -> Vec<ChainMap> {
    f.get(i..).map_or_else(Vec::new, <[ChainMap]>::to_vec)
}

/// The unit `A → A{-i}{i}`: `A_n` onto the summand of the tuple `(0, …, i-1)`.
pub fn shift_unit(a: &SymSeq, i: usize) -> Result<Vec<ChainMap>> {
    let target = seq_shift_up(&seq_shift_down(a, i), i)?;
    Ok((0..=target.truncation())
        .map(|n| {
            let t = target.level(n);
            ChainMap::from_fn(a.level(n), t, |d| {
                let mut m = Matrix::zeros(t.rank(d), a.level(n).rank(d));
                m.set_block(0, 0, &Matrix::identity(a.level(n).rank(d)));
                m
            })
        })
        .collect())
}

/// The counit `B{i}{-i} → B`: the summand of the tuple `t` acts by its
/// coset representative.
pub fn shift_counit(b: &SymSeq, i: usize) -> Result<Vec<ChainMap>> {
    let source = seq_shift_down(&seq_shift_up(b, i)?, i);
    Ok((0..=source.truncation())
        .map(|n| {
            let s = source.level(n);
            if n < i {
                return ChainMap::zero(s, b.level(n));
            }
            let blocks: Vec<ChainMap> = perm::tuples(n, i)
                .iter()
                .map(|t| b.act(n, &perm::coset_rep(n, t)))
                .collect();
            ChainMap::from_fn(s, b.level(n), |d| {
                blocks
                    .iter()
                    .map(|g| g.matrix(d))
                    .reduce(|acc, m| acc.hstack(&m))
                    .unwrap_or_else(|| Matrix::zeros(b.level(n).rank(d), 0))
            })
        })
        .collect())
}

/// Layout of `(E ⊗ F)_n = ⊕_{P ⊔ Q = n} E_{|P|} ⊗ F_{|Q|}`: summands
/// ordered by `|P|`, then by `P` lexicographically.
pub(crate) struct DayLevel {
    pub index: Vec<(usize, Vec<usize>)>,
    pub sums: Summands,
}

impl DayLevel {
    pub fn new(e: &SymSeq, f: &SymSeq, n: usize) -> Result<Self> {
        let mut index = Vec::new();
        let mut parts = Vec::new();
        for p in 0..=n {
            for set in perm::subsets(n, p) {
                parts.push(TensorComplex::new(e.level(p), f.level(n - p))?.complex().clone());
                index.push((p, set));
            }
        }
        Ok(DayLevel {
            index,
            sums: Summands::new(e.ring(), parts),
        })
    }

    pub fn position(&self, set: &[usize]) -> usize {
        self.index
            .iter()
            .position(|(_, s)| s == set)
            .expect("every subset appears")
    }
}

/// Day convolution `E ⊗^𝔖 F`, truncated at the smaller truncation.
pub fn day_tensor(e: &SymSeq, f: &SymSeq) -> Result<SymSeq> {
    e.ring().check_same(f.ring())?;
    let nmax = e.truncation().min(f.truncation());
    let layouts = (0..=nmax).map(|n| DayLevel::new(e, f, n)).collect::<Result<Vec<_>>>()?;
    let levels = layouts.iter().map(|l| l.sums.total.clone()).collect();
    Ok(SymSeq::from_fn(e.ring(), levels, |n, k| {
        let lay = &layouts[n];
        let g = perm::transposition(n, k);
        let blocks: Vec<(usize, usize, ChainMap)> = lay
            .index
            .iter()
            .enumerate()
            .map(|(s, (p, set))| {
                let comp = perm::complement(n, set);
                let mut image: Vec<usize> = set.iter().map(|&x| g[x]).collect();
                image.sort_unstable();
                let alpha = perm::relabel(&g, set);
                let beta = perm::relabel(&g, &comp);
                let m = tensor_chain_maps(&e.act(*p, &alpha), &f.act(n - p, &beta)).expect("same ring");
                (lay.position(&image), s, m)
            })
            .collect();
        lay.sums.map_to(&lay.sums, &blocks)
    }))
}

/// The symmetry `E ⊗^𝔖 F → F ⊗^𝔖 E`: summand `(P, Q)` goes to `(Q, P)`
/// through the Koszul braiding.
pub fn day_braiding(e: &SymSeq, f: &SymSeq) -> Result<Vec<ChainMap>> {
    let nmax = e.truncation().min(f.truncation());
    (0..=nmax)
        .map(|n| {
            let src = DayLevel::new(e, f, n)?;
            let tgt = DayLevel::new(f, e, n)?;
            let blocks = src
                .index
                .iter()
                .enumerate()
                .map(|(s, (p, set))| {
                    let comp = perm::complement(n, set);
                    Ok((tgt.position(&comp), s, braiding(e.level(*p), f.level(n - p))?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(src.sums.map_to(&tgt.sums, &blocks))
        })
        .collect()
}

/// Levelwise `Σ_{p+q=n} C(n, p) · rank(E_p ⊗ F_q)`.
pub fn day_rank_formula(e: &SymSeq, f: &SymSeq) -> Result<Vec<usize>> {
    let nmax = e.truncation().min(f.truncation());
    (0..=nmax)
        .map(|n| {
            let mut total = 0;
            for p in 0..=n {
                let r = TensorComplex::new(e.level(p), f.level(n - p))?.complex().total_rank();
                total += binomial(n, p) * r;
            }
            Ok(total)
        })
        .collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// `X{-i} ⊗^𝔖 Y{-j} → (X ⊗ Y){-i-j}`: the summand `P` with tuples `a`, `b`
/// goes to the tuple `(P∘a, Q∘b)`, sign-free.
pub fn exterior_shift_iso(x: &Complex, y: &Complex, i: usize, j: usize, truncation: usize) -> Result<ShiftIso> {
    let xs = seq_shift_down(&SymSeq::concentrated(x, truncation), i);
    let ys = seq_shift_down(&SymSeq::concentrated(y, truncation), j);
    let source = day_tensor(&xs, &ys)?;
    let xy = TensorComplex::new(x, y)?;
    let target = seq_shift_down(&SymSeq::concentrated(xy.complex(), truncation), i + j);
    let n = i + j;
    let maps = (0..=truncation)
        .map(|m| {
            let (s, t) = (source.level(m), target.level(m));
            if m != n {
                return Ok(ChainMap::zero(s, t));
            }
            let lay = DayLevel::new(&xs, &ys, n)?;
            let ta = perm::tuples(i, i);
            let tb = perm::tuples(j, j);
            let tw = perm::tuples(n, n);
            let parts: Vec<TensorComplex> = lay
                .index
                .iter()
                .map(|(p, _)| TensorComplex::new(xs.level(*p), ys.level(n - p)))
                .collect::<Result<_>>()?;
            Ok(ChainMap::from_fn(s, t, |d| {
                let mut mat = Matrix::zeros(t.rank(d), s.rank(d));
                let width = xy.complex().rank(d);
                for (k, (p, set)) in lay.index.iter().enumerate() {
                    if *p != i {
                        continue;
                    }
                    let comp = perm::complement(n, set);
                    let base = lay.sums.offset(k, d);
                    let tc = &parts[k];
                    for c in 0..tc.complex().rank(d) {
                        let (pd, qd, ii, jj) = tc.decode(d, c).expect("coordinate in range");
                        let (rx, ry) = (x.rank(pd), y.rank(qd));
                        let (a, xi) = (ii / rx, ii % rx);
                        let (b, yj) = (jj / ry, jj % ry);
                        let mut w: Vec<usize> = ta[a].iter().map(|&r| set[r]).collect();
                        w.extend(tb[b].iter().map(|&r| comp[r]));
                        let wi = tw.binary_search(&w).expect("a permutation");
                        let inner = xy.encode(pd, qd, xi, yj).expect("nonzero pair");
                        mat[(wi * width + inner, base + c)] = BigInt::from(1);
                    }
                }
                mat
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ShiftIso { source, target, maps })
}

/// `A{-i}{-j} → A{-i-j}`: `(t, u) ↦ (t, c_t∘u)` with `c_t` the increasing
/// enumeration of the complement of `t`.
pub fn iterated_shift_iso(a: &SymSeq, i: usize, j: usize) -> ShiftIso {
    let inner = seq_shift_down(a, i);
    let source = seq_shift_down(&inner, j);
    let target = seq_shift_down(a, i + j);
    let maps = (0..=a.truncation())
        .map(|n| {
            let (s, t) = (source.level(n), target.level(n));
            if n < i + j {
                return ChainMap::zero(s, t);
            }
            let m = n - i - j;
            let outer = perm::tuples(n, j);
            let us = perm::tuples(n - j, i);
            let ws = perm::tuples(n, i + j);
            ChainMap::from_fn(s, t, |d| {
                let r = a.level(m).rank(d);
                let mut mat = Matrix::zeros(t.rank(d), s.rank(d));
                for (ti, tt) in outer.iter().enumerate() {
                    let comp = perm::complement(n, tt);
                    for (ui, u) in us.iter().enumerate() {
                        let mut w = tt.clone();
                        w.extend(u.iter().map(|&x| comp[x]));
                        let wi = ws.binary_search(&w).expect("distinct letters");
                        let col = (ti * us.len() + ui) * r;
                        for x in 0..r {
                            mat[(wi * r + x, col + x)] = BigInt::from(1);
                        }
                    }
                }
                mat
            })
        })
        .collect();
    ShiftIso { source, target, maps }
}

/// A levelwise map between symmetric sequences, meant to be an isomorphism.
#[derive(Clone, Debug)]
pub struct ShiftIso {
    pub source: SymSeq,
    pub target: SymSeq,
    pub maps: Vec<ChainMap>,
}

impl ShiftIso {
    /// Levelwise isomorphism of complexes, equivariant for every `s_k`.
    pub fn verify(&self) -> std::result::Result<(), String> {
        for (n, f) in self.maps.iter().enumerate() {
            if !f.is_isomorphism() {
                return Err(format!("level {n} is not an isomorphism"));
            }
        }
        match equivariance_failures(&self.maps, &self.source, &self.target).first() {
            Some((n, k)) => Err(format!("level {n}: not equivariant for s_{k}")),
            None => Ok(()),
        }
    }
}
