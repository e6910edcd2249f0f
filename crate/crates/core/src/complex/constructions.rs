use num_bigint::BigInt;

use super::{block_matrix, hull, ChainMap, Complex};
use crate::coeff::{FGModule, Matrix};

/// `E` concentrated in degree `n`.
pub fn sphere(e: &FGModule, n: i64) -> Complex {
    Complex::from_parts_unchecked(e.ring().clone(), n, vec![e.clone()], vec![Matrix::zeros(0, e.rank())])
}

/// `E →id E` in degrees `n, n+1`.
pub fn disk(e: &FGModule, n: i64) -> Complex {
    Complex::from_parts_unchecked(
        e.ring().clone(),
        n,
        vec![e.clone(), e.clone()],
        vec![Matrix::identity(e.rank()), Matrix::zeros(0, e.rank())],
    )
}

/// The canonical inclusion `S^{n+1}E → D^nE`.
pub fn disk_inclusion(e: &FGModule, n: i64) -> ChainMap {
    ChainMap::from_fn(&sphere(e, n + 1), &disk(e, n), |_| Matrix::identity(e.rank()))
}

/// `C[k]^n = C^{n+k}` with differential `(-1)^k d`.
pub fn shift(c: &Complex, k: i64) -> Complex {
    let sign = BigInt::from(if k % 2 == 0 { 1 } else { -1 });
    Complex::from_fn(
        c.ring(),
        c.bounds().map(|(a, b)| (a - k, b - k)),
        |n| c.module(n + k).clone(),
        |n| c.d(n + k).scale(&sign),
    )
}

/// Output of [`cone`]: `Cone(p)` with `u : Y → Cone(p)` and `v : Cone(p) → X[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Complex,
    pub u: ChainMap,
    pub v: ChainMap,
}

/// `Cone(p)^n = Y^n ⊕ X^{n+1}` with `d(y, x) = (dy + px, -dx)`.
pub fn cone(p: &ChainMap) -> Cone {
    let (x, y) = (p.source(), p.target());
    let range = hull(&[y.bounds(), x.bounds().map(|(a, b)| (a - 1, b - 1))]);
    let complex = Complex::from_fn(
        y.ring(),
        range,
        |n| y.module(n).direct_sum(x.module(n + 1)),
        |n| {
            let dx = -&x.d(n + 1);
            let (dy, pn) = (y.d(n), p.matrix(n + 1));
            block_matrix(
                &[y.rank(n + 1), x.rank(n + 2)],
                &[y.rank(n), x.rank(n + 1)],
                &[(0, 0, &dy), (0, 1, &pn), (1, 1, &dx)],
            )
        },
    );
    let u = ChainMap::from_fn(y, &complex, |n| {
        Matrix::identity(y.rank(n)).vstack(&Matrix::zeros(x.rank(n + 1), y.rank(n)))
    });
    let v = ChainMap::from_fn(&complex, &shift(x, 1), |n| {
        Matrix::zeros(x.rank(n + 1), y.rank(n)).hstack(&Matrix::identity(x.rank(n + 1)))
    });
    Cone { complex, u, v }
}

/// Output of [`cylinder`].
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub complex: Complex,
    pub i0: ChainMap,
    pub i1: ChainMap,
    pub sigma: ChainMap,
}

/// `Cyl(C)^n = C^n ⊕ C^{n+1} ⊕ C^n` with `d(x, y, z) = (dx - y, -dy, y + dz)`.
pub fn cylinder(c: &Complex) -> Cylinder {
    let range = c.bounds().map(|(a, b)| (a - 1, b));
    let complex = Complex::from_fn(
        c.ring(),
        range,
        |n| c.module(n).direct_sum(c.module(n + 1)).direct_sum(c.module(n)),
        |n| {
            let (d, d1) = (c.d(n), -&c.d(n + 1));
            let id = Matrix::identity(c.rank(n + 1));
            let neg_id = -&id;
            let (a, b, e) = (c.rank(n), c.rank(n + 1), c.rank(n + 2));
            block_matrix(
                &[b, e, b],
                &[a, b, a],
                &[(0, 0, &d), (0, 1, &neg_id), (1, 1, &d1), (2, 1, &id), (2, 2, &d)],
            )
        },
    );
    let slot = |n: i64, k: usize| {
        let sizes = [c.rank(n), c.rank(n + 1), c.rank(n)];
        let id = Matrix::identity(c.rank(n));
        block_matrix(&sizes, &[c.rank(n)], &[(k, 0, &id)])
    };
    let i0 = ChainMap::from_fn(c, &complex, |n| slot(n, 0));
    let i1 = ChainMap::from_fn(c, &complex, |n| slot(n, 2));
    let sigma = ChainMap::from_fn(&complex, c, |n| {
        let id = Matrix::identity(c.rank(n));
        block_matrix(&[c.rank(n)], &[c.rank(n), c.rank(n + 1), c.rank(n)], &[(0, 0, &id), (0, 2, &id)])
    });
    Cylinder { complex, i0, i1, sigma }
}
