//! Seeded generators for small complexes and chain maps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{FGModule, Matrix, Ring};
use crate::complex::{sphere, ChainMap, Complex, HomComplex};
use crate::error::Result;

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.rng.gen_range(0..xs.len())]
    }

    /// A degreewise free complex: a sum of spheres and `R --c--> R` pieces,
    /// scrambled by elementary basis changes. Ranks are at most `max_rank`
    /// and at most `max_len` degrees are used.
    pub fn free_complex(&mut self, ring: &Ring, max_rank: usize, max_len: usize) -> Complex {
        let len = self.rng.gen_range(1..=max_len);
        let lo = self.range(-2, 1);
        let mut ranks = vec![0usize; len];
        // (degree index, row in k + 1, column in k, coefficient)
        let mut arrows: Vec<(usize, usize, usize, i64)> = Vec::new();
        let coeffs: &[i64] = if ring.characteristic().is_zero() { &[1, 2, 3, -2] } else { &[1] };
        for _ in 0..self.rng.gen_range(1..=4) {
            let k = self.rng.gen_range(0..len);
            if self.chance(0.5) && k + 1 < len && ranks[k] < max_rank && ranks[k + 1] < max_rank {
                let c = *self.pick(coeffs);
                arrows.push((k, ranks[k + 1], ranks[k], c));
                ranks[k] += 1;
                ranks[k + 1] += 1;
            } else if ranks[k] < max_rank {
                ranks[k] += 1;
            }
        }
        let mut diffs: Vec<Matrix> = (0..len)
            .map(|k| Matrix::zeros(if k + 1 < len { ranks[k + 1] } else { 0 }, ranks[k]))
            .collect();
        for (k, row, col, c) in arrows {
            diffs[k][(row, col)] = BigInt::from(c);
        }
        // x ↦ (1 + c e_ij) x in degree k
        for _ in 0..self.rng.gen_range(0..=6) {
            let k = self.rng.gen_range(0..len);
            if ranks[k] < 2 {
                continue;
            }
            let i = self.rng.gen_range(0..ranks[k]);
            let j = (i + self.rng.gen_range(1..ranks[k])) % ranks[k];
            let c = BigInt::from(*self.pick(&[-2i64, -1, 1, 2]));
            if k > 0 {
                let m = &mut diffs[k - 1];
                for col in 0..m.cols() {
                    let v = &m[(j, col)] * &c;
                    m[(i, col)] += v;
                }
            }
            let m = &mut diffs[k];
            for row in 0..m.rows() {
                let v = &m[(row, i)] * &c;
                m[(row, j)] -= v;
            }
        }
        let modulus = ring.characteristic();
        let components: BTreeMap<i64, FGModule> = (0..len)
            .map(|k| (lo + k as i64, FGModule::free(ring.clone(), ranks[k])))
            .collect();
        let differentials: BTreeMap<i64, Matrix> = diffs
            .into_iter()
            .enumerate()
            .map(|(k, mut d)| {
                if !modulus.is_zero() {
                    for r in 0..d.rows() {
                        for c in 0..d.cols() {
                            let v = ((&d[(r, c)] % &modulus) + &modulus) % &modulus;
                            d[(r, c)] = v;
                        }
                    }
                }
                (lo + k as i64, d)
            })
            .collect();
        Complex::new(ring.clone(), components, differentials).expect("generated differentials square to zero")
    }

    /// A free complex, plus a torsion sphere over the integers now and then.
    pub fn complex(&mut self, ring: &Ring, max_rank: usize, max_len: usize) -> Complex {
        let c = self.free_complex(ring, max_rank, max_len);
        if ring.characteristic().is_zero() && self.chance(0.3) {
            let k = *self.pick(&[2i64, 3, 4]);
            let (lo, hi) = c.bounds().unwrap_or((0, 0));
            let n = self.range(lo, hi);
            if c.rank(n) < max_rank {
                return c.direct_sum(&sphere(&FGModule::from_i64(ring.clone(), &[k]).expect("valid"), n));
            }
        }
        c
    }

    /// Small random entries, reduced in `C^n`.
    pub fn element(&mut self, c: &Complex, n: i64) -> Vec<BigInt> {
        let v: Vec<BigInt> = (0..c.rank(n)).map(|_| BigInt::from(self.range(-2, 2))).collect();
        c.module(n).reduced(&v)
    }

    /// A random degree-0 cycle of `Hom(X, Y)`: a combination of the homology
    /// representatives plus a random boundary.
    pub fn chain_map(&mut self, x: &Complex, y: &Complex) -> Result<ChainMap> {
        let hc = HomComplex::new(x, y)?;
        let h = hc.complex();
        let data = h.homology_data(0);
        let mut z = vec![BigInt::zero(); h.rank(0)];
        for k in 0..data.module.rank() {
            let a = BigInt::from(self.range(-2, 2));
            for (zi, ci) in z.iter_mut().zip(data.cycle(k)) {
                *zi += &a * ci;
            }
        }
        let w = self.element(h, -1);
        for (zi, bi) in z.iter_mut().zip(h.d(-1).mul_vec(&w)) {
            *zi += bi;
        }
        hc.to_chain_map(0, &h.module(0).reduced(&z))
    }
}
