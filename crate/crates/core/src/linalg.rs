//! Dense kernels for the fixed-size matching systems.

use crate::num::Real;

/// Determinant by LU factorisation with partial pivoting.
pub(crate) fn determinant<T: Real, const N: usize>(mut m: [[T; N]; N]) -> T {
    let mut det = T::one();
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        if m[pivot][col] == T::zero() {
            return T::zero();
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det = det * p;
        for row in col + 1..N {
            let factor = m[row][col] / p;
            if factor != T::zero() {
                for c in col..N {
                    m[row][c] = m[row][c] - factor * m[col][c];
                }
            }
        }
    }
    det
}

/// Approximate null vector of a (numerically) rank-deficient matrix.
///
/// Gaussian elimination with complete pivoting pushes the near-zero pivot to
/// the last position; the free variable is set to one and the rest follow by
/// back substitution. Returns the vector scaled to unit max-norm.
pub(crate) fn null_vector<T: Real, const N: usize>(mut m: [[T; N]; N]) -> [T; N] {
    let mut cols: [usize; N] = std::array::from_fn(|i| i);
    for step in 0..N {
        let (mut pr, mut pc, mut best) = (step, step, -T::one());
        for r in step..N {
            for c in step..N {
                let v = m[r][c].abs();
                if v > best {
                    best = v;
                    pr = r;
                    pc = c;
                }
            }
        }
        m.swap(step, pr);
        if pc != step {
            for row in m.iter_mut() {
                row.swap(step, pc);
            }
            cols.swap(step, pc);
        }
        let p = m[step][step];
        if p == T::zero() {
            break;
        }
        for r in step + 1..N {
            let factor = m[r][step] / p;
            if factor != T::zero() {
                for c in step..N {
                    m[r][c] = m[r][c] - factor * m[step][c];
                }
            }
        }
    }

    let mut y = [T::zero(); N];
    y[N - 1] = T::one();
    for r in (0..N - 1).rev() {
        let mut acc = T::zero();
        for c in r + 1..N {
            acc = acc + m[r][c] * y[c];
        }
        y[r] = if m[r][r] == T::zero() { T::zero() } else { -acc / m[r][r] };
    }

    let mut x = [T::zero(); N];
    for (i, &c) in cols.iter().enumerate() {
        x[c] = y[i];
    }
    let scale = x.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    x.map(|v| v / scale)
}

pub(crate) fn mat_vec<T: Real, const N: usize>(m: &[[T; N]; N], v: &[T; N]) -> [T; N] {
    std::array::from_fn(|r| m[r].iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + *a * *b))
}
