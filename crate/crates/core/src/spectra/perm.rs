//! Permutations of `{0, …, n-1}` as image vectors: `g[x]` is the image of `x`.

use itertools::Itertools;

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// The adjacent transposition `s_k = (k k+1)`.
pub fn transposition(n: usize, k: usize) -> Perm {
    let mut g = identity(n);
    g.swap(k, k + 1);
    g
}

/// `g ∘ h`
pub fn compose(g: &[usize], h: &[usize]) -> Perm {
    h.iter().map(|&x| g[x]).collect()
}

pub fn inverse(g: &[usize]) -> Perm {
    let mut out = vec![0; g.len()];
    for (x, &y) in g.iter().enumerate() {
        out[y] = x;
    }
    out
}

pub fn is_permutation(g: &[usize]) -> bool {
    let mut seen = vec![false; g.len()];
    g.iter().all(|&y| y < g.len() && !std::mem::replace(&mut seen[y], true))
}

/// Indices `k` with `g = s_{k_last} ∘ … ∘ s_{k_first}`, listed first to last.
/// Applying the transpositions in list order reproduces `g`.
pub fn reduced_word(g: &[usize]) -> Vec<usize> {
    let mut p = g.to_vec();
    let mut word = Vec::new();
    while let Some(k) = (0..p.len().saturating_sub(1)).find(|&k| p[k] > p[k + 1]) {
        p.swap(k, k + 1);
        word.push(k);
    }
    word
}

/// Ordered `i`-tuples of distinct elements of `{0, …, n-1}`, lexicographic.
pub fn tuples(n: usize, i: usize) -> Vec<Vec<usize>> {
    if i == 0 {
        return vec![Vec::new()];
    }
    (0..n).permutations(i).collect()
}

/// `p`-element subsets of `{0, …, n-1}`, lexicographic.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(p).collect()
}

pub fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    (0..n).filter(|x| !set.contains(x)).collect()
}

/// The coset representative sending `k ↦ t[k]` for `k < |t|` and the
/// remaining letters in order onto the complement of `t`.
pub fn coset_rep(n: usize, t: &[usize]) -> Perm {
    let mut g = t.to_vec();
    g.extend(complement(n, t));
    g
}

/// For a bijection `g` restricted to `set`, the permutation of
/// `{0, …, |set|-1}` it induces after relabelling `set` and `g(set)` in
/// increasing order.
pub fn relabel(g: &[usize], set: &[usize]) -> Perm {
    let mut image: Vec<usize> = set.iter().map(|&x| g[x]).collect();
    image.sort_unstable();
    set.iter()
        .map(|&x| image.binary_search(&g[x]).expect("image of the set"))
        .collect()
}

/// Number of inversions of `g` among the pairs for which `weight` holds.
pub fn weighted_inversions(g: &[usize], weight: impl Fn(usize, usize) -> bool) -> usize {
    let mut count = 0;
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            if g[a] > g[b] && weight(a, b) {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(n: usize) -> impl Strategy<Value = Perm> {
        Just(identity(n)).prop_shuffle()
    }

    proptest! {
        #[test]
        fn reduced_word_reconstructs(g in (1usize..6).prop_flat_map(perm)) {
            let n = g.len();
            let mut acc = identity(n);
            for k in reduced_word(&g) {
                acc = compose(&transposition(n, k), &acc);
            }
            prop_assert_eq!(acc, g.clone());
            let inv = weighted_inversions(&g, |_, _| true);
            prop_assert_eq!(reduced_word(&g).len(), inv);
        }

        #[test]
        fn relabel_is_a_homomorphism_on_stabilizers(g in (2usize..6).prop_flat_map(perm)) {
            let n = g.len();
            let inv = inverse(&g);
            prop_assert_eq!(compose(&g, &inv), identity(n));
            let set: Vec<usize> = (0..n).step_by(2).collect();
            let r = relabel(&g, &set);
            prop_assert!(is_permutation(&r));
        }
    }

    #[test]
    fn counts() {
        assert_eq!(tuples(4, 2).len(), 12);
        assert_eq!(tuples(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(coset_rep(4, &[2, 0]), vec![2, 0, 1, 3]);
    }
}
