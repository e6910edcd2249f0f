use num_bigint::BigInt;

use super::{hull, ChainMap, Homology};
use crate::coeff::{Matrix, ModuleMap};

/// Exactness of `M →f N →g P` at `N`: `g∘f = 0` and `ker g ⊂ im f`.
pub fn exact_at(f: &ModuleMap, g: &ModuleMap) -> bool {
    if !g.compose(f).is_zero() {
        return false;
    }
    let k = g.kernel();
    (0..k.module.rank()).all(|c| f.solve(&k.inclusion.matrix().column(c)).is_some())
}

/// Checks that `0 → A →α M →β Q → 0` is exact in every degree, returning
/// the first failing degree and node.
pub fn check_short_exact(alpha: &ChainMap, beta: &ChainMap) -> Result<(), String> {
    if alpha.target() != beta.source() {
        return Err("maps are not composable".into());
    }
    let Some((lo, hi)) = hull(&[alpha.window(), beta.window()]) else {
        return Ok(());
    };
    for n in lo..=hi {
        let (a, b) = (alpha.component(n), beta.component(n));
        if !a.is_injective() {
            return Err(format!("degree {n}: first map is not injective"));
        }
        if !b.is_surjective() {
            return Err(format!("degree {n}: second map is not surjective"));
        }
        if !exact_at(&a, &b) {
            return Err(format!("degree {n}: not exact in the middle"));
        }
    }
    Ok(())
}

/// The long exact homology sequence of a short exact sequence of complexes
/// `0 → A → M → Q → 0`, with explicit connecting maps.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    /// `(n, H^n(α), H^n(β), δ^n)` over the window of relevant degrees.
    pub rows: Vec<(i64, ModuleMap, ModuleMap, ModuleMap)>,
}

impl LongExactSequence {
    pub fn new(alpha: &ChainMap, beta: &ChainMap) -> Self {
        let (a, m, q) = (alpha.source(), alpha.target(), beta.target());
        let Some((lo, hi)) = hull(&[alpha.window(), beta.window()]) else {
            return LongExactSequence { rows: Vec::new() };
        };
        let rows = (lo..=hi)
            .map(|n| {
                let ha = alpha.homology_map(n);
                let hb = beta.homology_map(n);
                let hq = Homology::new(q, n);
                let ha1 = Homology::new(a, n + 1);
                let (b_n, a_n1, dm) = (beta.component(n), alpha.component(n + 1), m.d(n));
                let columns: Vec<Vec<BigInt>> = (0..hq.module.rank())
                    .map(|k| {
                        let lift = b_n.solve(&hq.cycle(k)).expect("second map is surjective");
                        let boundary = dm.mul_vec(&lift);
                        let pre = a_n1.solve(&boundary).expect("boundary lies in the image of the first map");
                        ha1.class_of(&pre)
                    })
                    .collect();
                let delta = ModuleMap::new_unchecked(
                    hq.module.clone(),
                    ha1.module.clone(),
                    Matrix::from_columns(ha1.module.rank(), &columns),
                );
                (n, ha, hb, delta)
            })
            .collect();
        LongExactSequence { rows }
    }

    /// Names of the nodes where exactness fails, e.g. `"H^0(M)"`.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (k, (n, ha, hb, delta)) in self.rows.iter().enumerate() {
            if !exact_at(ha, hb) {
                out.push(format!("H^{n}(M)"));
            }
            if !exact_at(hb, delta) {
                out.push(format!("H^{n}(Q)"));
            }
            if let Some((_, ha_next, _, _)) = self.rows.get(k + 1) {
                if !exact_at(delta, ha_next) {
                    out.push(format!("H^{}(A)", n + 1));
                }
            }
        }
        out
    }

    pub fn is_exact(&self) -> bool {
        self.failures().is_empty()
    }

    /// Number of nodes checked.
    pub fn node_count(&self) -> usize {
        3 * self.rows.len() - self.rows.len().min(1)
    }
}
