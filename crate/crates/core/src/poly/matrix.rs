use num_traits::{One, Zero};

use super::{ExactRing, Rational};

/// Row-major dense matrix over the rationals.
pub type RationalMatrix = Vec<Vec<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut RationalMatrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| !Zero::is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][col].recip();
        for c in m[r].iter_mut() {
            *c *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !Zero::is_zero(&m[i][col]) {
                let f = m[i][col].clone();
                for j in col..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Rank and a basis of the right kernel of an `nrows x ncols` matrix.
pub fn rank_and_kernel(m: &RationalMatrix, ncols: usize) -> (usize, Vec<Vec<Rational>>) {
    let mut a = m.clone();
    let pivots = rref(&mut a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect();
    (pivots.len(), kernel)
}

/// Solutions of `m x = rhs`: a particular solution and a kernel basis, or
/// `None` when the system is inconsistent.
pub fn solve_linear(
    m: &RationalMatrix,
    rhs: &[Rational],
    ncols: usize,
) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut aug: RationalMatrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row[..ncols].to_vec();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][ncols].clone();
    }
    let (_, kernel) = rank_and_kernel(m, ncols);
    Some((x, kernel))
}

/// Fraction-free elimination; returns the echelon form, pivot count and the
/// sign of the row permutation.
fn bareiss<R: ExactRing>(m: &[Vec<R>]) -> (Vec<Vec<R>>, usize, bool) {
    let mut a: Vec<Vec<R>> = m.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut neg = false;
    if nrows == 0 || ncols == 0 {
        return (a, 0, false);
    }
    let mut prev = a[0][0].one_like();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !a[i][col].is_zero_elem()) else {
            continue;
        };
        if pr != r {
            a.swap(r, pr);
            neg = !neg;
        }
        for i in r + 1..nrows {
            for j in col + 1..ncols {
                let v = a[r][col].times(&a[i][j]).minus(&a[i][col].times(&a[r][j]));
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][col] = a[i][col].zero_like();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    (a, r, neg)
}

/// Determinant of a square matrix over any exact ring.
pub fn bareiss_determinant<R: ExactRing>(m: &[Vec<R>]) -> R {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "square matrix expected");
    if n == 0 {
        panic!("determinant of an empty matrix needs a ring witness");
    }
    let (a, rank, neg) = bareiss(m);
    if rank < n {
        return m[0][0].zero_like();
    }
    let d = a[n - 1][n - 1].clone();
    if neg {
        d.negated()
    } else {
        d
    }
}

/// Rank over the fraction field of the coefficient ring.
pub fn bareiss_rank<R: ExactRing>(m: &[Vec<R>]) -> usize {
    bareiss(m).1
}
