//! Brute-force homotopy classes over F2, written without the hom complex:
//! enumerate all degree-n maps, keep the chain maps, enumerate all degree
//! n-1 maps and collect their boundaries.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;

use crate::complex::Complex;

type Bits = Vec<Vec<u8>>;

fn mat(c: &Complex, n: i64) -> Bits {
    let d = c.d(n);
    (0..d.rows())
        .map(|i| (0..d.cols()).map(|j| (&d[(i, j)] % 2u8).to_u8().unwrap_or(0) & 1).collect())
        .collect()
}

fn mul(a: &Bits, b: &Bits, rows: usize, inner: usize, cols: usize) -> Bits {
    let mut out = vec![vec![0u8; cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] ^= b[k][j];
            }
        }
    }
    out
}

fn add(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x ^ y).collect()).collect()
}

/// Blocks `f_p : X^p → Y^{p+n}` for `p` in `lo..=hi`, decoded from a bitmask.
struct Shape {
    lo: i64,
    dims: Vec<(usize, usize)>,
}

impl Shape {
    fn new(x: &Complex, y: &Complex, n: i64, lo: i64, hi: i64) -> Self {
        Shape {
            lo,
            dims: (lo..=hi).map(|p| (y.rank(p + n), x.rank(p))).collect(),
        }
    }

    fn bits(&self) -> usize {
        self.dims.iter().map(|(r, c)| r * c).sum()
    }

    fn decode(&self, mut mask: u64) -> Vec<Bits> {
        self.dims
            .iter()
            .map(|&(r, c)| {
                (0..r)
                    .map(|_| {
                        (0..c)
                            .map(|_| {
                                let b = (mask & 1) as u8;
                                mask >>= 1;
                                b
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    fn block<'a>(&self, f: &'a [Bits], p: i64) -> Option<&'a Bits> {
        usize::try_from(p - self.lo).ok().and_then(|k| f.get(k))
    }
}

/// `|[X, Y[n]]|` over F2 by enumeration; `None` when more than `max_bits`
/// bits would have to be enumerated.
pub fn homotopy_class_count(x: &Complex, y: &Complex, n: i64, max_bits: usize) -> Option<u64> {
    let (Some((xl, xh)), Some(_)) = (x.bounds(), y.bounds()) else {
        return Some(1);
    };
    let (lo, hi) = (xl - 1, xh + 1);
    let zero = |r: usize, c: usize| vec![vec![0u8; c]; r];

    // d_Y f_p + f_{p+1} d_X, the degree-p block of the differential of f
    let boundary = |shape: &Shape, f: &[Bits], deg: i64, p: i64| -> Bits {
        let (r, c) = (y.rank(p + deg + 1), x.rank(p));
        let mut out = zero(r, c);
        if let Some(fp) = shape.block(f, p) {
            out = add(&out, &mul(&mat(y, p + deg), fp, r, y.rank(p + deg), c));
        }
        if let Some(fq) = shape.block(f, p + 1) {
            out = add(&out, &mul(fq, &mat(x, p), r, x.rank(p + 1), c));
        }
        out
    };

    let maps = Shape::new(x, y, n, lo, hi);
    let homs = Shape::new(x, y, n - 1, lo, hi);
    if maps.bits() > max_bits || homs.bits() > max_bits {
        return None;
    }
    let mut cycles = 0u64;
    for mask in 0..(1u64 << maps.bits()) {
        let f = maps.decode(mask);
        if (lo..=hi).all(|p| boundary(&maps, &f, n, p).iter().flatten().all(|&b| b == 0)) {
            cycles += 1;
        }
    }
    let mut boundaries = BTreeSet::new();
    for mask in 0..(1u64 << homs.bits()) {
        let h = homs.decode(mask);
        let b: Vec<Bits> = (lo..=hi).map(|p| boundary(&homs, &h, n - 1, p)).collect();
        boundaries.insert(b);
    }
    Some(cycles / boundaries.len() as u64)
}
