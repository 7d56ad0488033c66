//! Symmetric tridiagonal eigenproblems: Sturm bisection and inverse iteration.

use crate::num::Real;

/// Symmetric tridiagonal matrix: `diag[i]`, and `off[i]` coupling `i` and `i+1`.
pub(crate) struct SymTridiag<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Real> SymTridiag<T> {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    pub fn count_below(&self, x: T) -> usize {
        let tiny = T::min_positive_value().sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < T::zero() {
            count += 1;
        }
        for i in 1..self.len() {
            let q_prev = if q == T::zero() { tiny } else { q };
            let e = self.off[i - 1];
            q = self.diag[i] - x - e * e / q_prev;
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// The `index`-th eigenvalue (0-based, ascending) inside `[lo, hi]`,
    /// bisected to `abs_tol`.
    pub fn eigenvalue(&self, index: usize, mut lo: T, mut hi: T, abs_tol: T) -> T {
        for _ in 0..200 {
            if hi - lo <= abs_tol {
                break;
            }
            let mid = (lo + hi) * T::half();
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo + hi) * T::half()
    }

    /// Solves `(A - shift) y = rhs` by Gaussian elimination with partial
    /// pivoting (the factor gains a second superdiagonal).
    fn solve_shifted(&self, shift: T, rhs: &[T]) -> Vec<T> {
        let n = self.len();
        let tiny = T::epsilon() * T::epsilon();
        // rows as (sub, diag, sup1, sup2)
        let mut d: Vec<T> = self.diag.iter().map(|&v| v - shift).collect();
        let mut u1: Vec<T> = self.off.clone();
        u1.push(T::zero());
        let mut u2 = vec![T::zero(); n];
        let mut sub: Vec<T> = self.off.clone();
        let mut b = rhs.to_vec();
        for i in 0..n - 1 {
            let l = sub[i];
            if l.abs() > d[i].abs() {
                // swap rows i and i+1
                std::mem::swap(&mut d[i], &mut sub[i]);
                let (d1, s1, s2) = (d[i + 1], u1[i + 1], u2[i + 1]);
                let (old_u1, old_u2) = (u1[i], u2[i]);
                // new row i = old row i+1 = [sub, d1, s1] shifted by one column
                u1[i] = d1;
                u2[i] = s1;
                // new row i+1 = old row i
                d[i + 1] = old_u1;
                u1[i + 1] = old_u2;
                u2[i + 1] = s2;
                b.swap(i, i + 1);
                // now sub[i] holds old d[i] (the entry below the pivot)
            }
            let p = if d[i] == T::zero() { tiny } else { d[i] };
            d[i] = p;
            let f = sub[i] / p;
            d[i + 1] = d[i + 1] - f * u1[i];
            u1[i + 1] = u1[i + 1] - f * u2[i];
            b[i + 1] = b[i + 1] - f * b[i];
        }
        if d[n - 1] == T::zero() {
            d[n - 1] = tiny;
        }
        let mut y = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut acc = b[i];
            if i + 1 < n {
                acc = acc - u1[i] * y[i + 1];
            }
            if i + 2 < n {
                acc = acc - u2[i] * y[i + 2];
            }
            y[i] = acc / d[i];
        }
        y
    }

    /// Eigenvector of the eigenvalue nearest `lambda` by inverse iteration,
    /// scaled to unit Euclidean norm.
    pub fn eigenvector(&self, lambda: T) -> Vec<T> {
        let n = self.len();
        let mut v: Vec<T> = (0..n)
            .map(|i| T::one() + T::lit(((i * 7919) % 104_729) as f64 / 104_729.0) * T::lit(1e-3))
            .collect();
        for _ in 0..4 {
            let y = self.solve_shifted(lambda, &v);
            let norm = y.iter().fold(T::zero(), |s, x| s + *x * *x).sqrt();
            v = y.into_iter().map(|x| x / norm).collect();
        }
        v
    }
}
