//! Smith normal form and the integer lattice routines built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::Matrix;

/// Result of [`smith_normal_form`]: `d = u * a * v` with `u`, `v` unimodular.
///
/// The inverses are tracked alongside so callers never need to invert a
/// unimodular matrix after the fact.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl Smith {
    /// Diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

/// Smith normal form with deterministic pivoting: smallest nonzero absolute
/// value in the active block, ties broken by lowest (row, column).
pub fn smith_normal_form(a: &Matrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = Matrix::identity(m);
    let mut u_inv = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    let mut v_inv = Matrix::identity(n);

    // Row operation `row_t += c * row_s`, mirrored on u and u^{-1}.
    let row_add = |d: &mut Matrix, u: &mut Matrix, ui: &mut Matrix, t: usize, s: usize, c: &BigInt| {
        d.add_row_multiple(t, s, c);
        u.add_row_multiple(t, s, c);
        ui.add_col_multiple(s, t, &-c);
    };
    // Column operation `col_t += c * col_s`, mirrored on v and v^{-1}.
    let col_add = |d: &mut Matrix, v: &mut Matrix, vi: &mut Matrix, t: usize, s: usize, c: &BigInt| {
        d.add_col_multiple(t, s, c);
        v.add_col_multiple(t, s, c);
        vi.add_row_multiple(s, t, &-c);
    };

    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pi, pj)) if d[(pi, pj)].abs() <= x.abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(d, u, u_inv, v, v_inv, rank);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = &d[(i, t)] / &d[(t, t)];
                row_add(&mut d, &mut u, &mut u_inv, i, t, &-q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = &d[(t, j)] / &d[(t, t)];
                col_add(&mut d, &mut v, &mut v_inv, j, t, &-q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: every remaining entry must be a multiple of the pivot.
            let p = d[(t, t)].clone();
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match offending {
                Some(i) => {
                    let one = BigInt::from(1);
                    row_add(&mut d, &mut u, &mut u_inv, t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank += 1;
    }
    finish(d, u, u_inv, v, v_inv, rank)
}

fn finish(d: Matrix, u: Matrix, u_inv: Matrix, v: Matrix, v_inv: Matrix, rank: usize) -> Smith {
    Smith {
        u,
        u_inv,
        d,
        v,
        v_inv,
        rank,
    }
}

/// Basis (as columns) of the integer kernel `{x : a x = 0}`.
pub fn kernel_basis(a: &Matrix) -> Matrix {
    let s = smith_normal_form(a);
    let idx: Vec<usize> = (s.rank..a.cols()).collect();
    s.v.select_columns(&idx)
}

/// A basis (full column rank) of the lattice spanned by the columns of `g`.
pub fn column_span_basis(g: &Matrix) -> Matrix {
    let s = smith_normal_form(g);
    // g = u^{-1} d v^{-1}, so the span of g equals the span of the first
    // `rank` columns of u^{-1} d.
    let mut b = Matrix::zeros(g.rows(), s.rank);
    for k in 0..s.rank {
        let dk = &s.d[(k, k)];
        for i in 0..g.rows() {
            b[(i, k)] = &s.u_inv[(i, k)] * dk;
        }
    }
    b
}

/// Some integer solution of `a x = y`, or `None`. Free coordinates in the
/// Smith basis are set to zero, which makes the answer deterministic.
pub fn solve_integer(a: &Matrix, y: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), y.len());
    let s = smith_normal_form(a);
    let c = s.u.mul_vec(y);
    let mut z = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            let (q, r) = ci.div_rem(&s.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&z))
}

/// Solves `b x = r` column by column for `b` of full column rank; panics if
/// some column of `r` is outside the lattice spanned by `b`.
pub fn solve_in_lattice(b: &Matrix, r: &Matrix) -> Matrix {
    let s = smith_normal_form(b);
    assert_eq!(s.rank, b.cols(), "lattice basis is not of full column rank");
    let ur = &s.u * r;
    let mut y = Matrix::zeros(b.cols(), r.cols());
    for j in 0..r.cols() {
        for i in 0..ur.rows() {
            let c = &ur[(i, j)];
            if i < s.rank {
                let (q, rem) = c.div_rem(&s.d[(i, i)]);
                assert!(rem.is_zero(), "vector is not in the lattice");
                y[(i, j)] = q;
            } else {
                assert!(c.is_zero(), "vector is not in the lattice");
            }
        }
    }
    &s.v * &y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &Matrix) -> Smith {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert_eq!(&s.u * &s.u_inv, Matrix::identity(a.rows()));
        assert_eq!(&s.v * &s.v_inv, Matrix::identity(a.cols()));
        s
    }

    #[test]
    fn diag_two_three() {
        let s = check(&Matrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.d, Matrix::from_i64(&[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn zero_matrix_keeps_identities() {
        let s = check(&Matrix::zeros(2, 3));
        assert_eq!(s.d, Matrix::zeros(2, 3));
        assert_eq!(s.u, Matrix::identity(2));
        assert_eq!(s.v, Matrix::identity(3));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&Matrix::identity(3));
        assert_eq!(s.d, Matrix::identity(3));
    }

    #[test]
    fn kernel_and_solve() {
        let a = Matrix::from_i64(&[&[2, 4, 6]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        assert_eq!(solve_integer(&Matrix::from_i64(&[&[2]]), &[BigInt::from(3)]), None);
        assert_eq!(
            solve_integer(&Matrix::from_i64(&[&[2]]), &[BigInt::from(4)]),
            Some(vec![BigInt::from(2)])
        );
    }

    #[test]
    fn span_basis_rank() {
        let g = Matrix::from_i64(&[&[2, 4, 0], &[0, 0, 3]]);
        let b = column_span_basis(&g);
        assert_eq!(b.cols(), 2);
        let x = solve_in_lattice(&b, &g);
        assert_eq!(&b * &x, g);
    }
}
