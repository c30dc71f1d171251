//! Exact linear algebra over Q(v,t): rank, inverse, solving and nullspaces
//! by fraction-free-ish Gaussian elimination with exact pivots.

use crate::scalars::RationalFunction;

pub type Matrix = Vec<Vec<RationalFunction>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![RationalFunction::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = RationalFunction::one();
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.len();
    let inner = if rows > 0 { a[0].len() } else { 0 };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = zeros(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add_ref(&a[i][k].mul_ref(&b[k][j]));
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, x: &[RationalFunction]) -> Vec<RationalFunction> {
    a.iter()
        .map(|row| {
            let mut s = RationalFunction::zero();
            for (c, xi) in row.iter().zip(x) {
                if !c.is_zero() && !xi.is_zero() {
                    s = s.add_ref(&c.mul_ref(xi));
                }
            }
            s
        })
        .collect()
}

/// Row echelon reduction in place; returns the pivot columns.
fn echelon(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        // find a pivot
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for j in c..cols {
            m[r][j] = m[r][j].mul_ref(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let s = m[r][j].mul_ref(&f);
                    m[i][j] = m[i][j].sub_ref(&s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut work = m.clone();
    echelon(&mut work).len()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut work: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            let mut id = vec![RationalFunction::zero(); n];
            id[i] = RationalFunction::one();
            r.extend(id);
            r
        })
        .collect();
    let pivots = echelon(&mut work);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of the right nullspace of `m` (solutions of `m x = 0`).
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<RationalFunction>> {
    let mut work = m.clone();
    let pivots = echelon(&mut work);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut x = vec![RationalFunction::zero(); cols];
        x[free] = RationalFunction::one();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = work[r][free].neg_ref();
        }
        basis.push(x);
    }
    basis
}

/// Solve `m x = b` for one solution; `None` when inconsistent.
pub fn solve(m: &Matrix, b: &[RationalFunction]) -> Option<Vec<RationalFunction>> {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    let mut work: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut work);
    // inconsistent when a pivot lands in the augmented column
    if pivots.iter().any(|&c| c == cols) {
        return None;
    }
    let mut x = vec![RationalFunction::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = work[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::RationalFunction as R;

    fn n(k: i64) -> R {
        R::from_int(k)
    }

    #[test]
    fn rank_and_nullspace() {
        // [[1,2],[2,4]] has rank 1, nullspace spanned by (-2, 1)
        let m = vec![vec![n(1), n(2)], vec![n(2), n(4)]];
        assert_eq!(rank(&m), 1);
        let ns = nullspace(&m, 2);
        assert_eq!(ns.len(), 1);
        let v = mat_vec(&m, &ns[0]);
        assert!(v.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_round_trip() {
        let v = R::v();
        let m = vec![vec![n(1), v.clone()], vec![n(0), n(1)]];
        let mi = inverse(&m).unwrap();
        let prod = mat_mul(&m, &mi);
        assert_eq!(prod, identity(2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = vec![vec![n(1), n(2)], vec![n(2), n(4)]];
        assert!(inverse(&m).is_none());
    }

    #[test]
    fn solve_consistent_system() {
        let m = vec![vec![n(1), n(1)], vec![n(0), n(1)]];
        let b = vec![n(3), n(1)];
        let x = solve(&m, &b).unwrap();
        assert_eq!(mat_vec(&m, &x), b);
    }
}
