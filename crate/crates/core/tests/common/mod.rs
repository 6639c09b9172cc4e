//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

pub mod inputs;
pub mod kernel;

use sexticlab::poly::modp::{inv_mod, reduce_rational, PolyMod};
use sexticlab::poly::{Monomial, MultiPoly};
use sexticlab::triple_plane::{CubicSurface, SolutionSet};

/// Solutions `(v, beta, lambda)` of `sum_i v_i dG/dx_i = lambda * dF/dx3`
/// over F_p, split by whether `lambda` vanishes. `v` runs over all projective
/// points; for each one the conditions are linear in `(beta, lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpCounts {
    pub lambda_nonzero: u64,
    pub lambda_zero: u64,
}

fn quadratic_monomials() -> Vec<Monomial> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i..4 {
            out.push(Monomial::var(i).mul(&Monomial::var(j)));
        }
    }
    out
}

fn coeffs_mod(q: &MultiPoly, monos: &[Monomial], p: u64) -> Vec<u64> {
    monos
        .iter()
        .map(|m| reduce_rational(&q.coeff(m), p).expect("p-integral input"))
        .collect()
}

/// Rank of `rows` and whether the last column is in the span of the others;
/// also whether `lambda` (column `lambda_col`) is pinned down on the
/// solution set and to which value.
fn analyse(mut rows: [[u64; 6]; 10], ncols: usize, lambda_col: usize, p: u64) -> Option<(usize, Option<u64>)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, i);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..=ncols {
                    rows[i][j] = (rows[i][j] + p * p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[ncols] != 0) {
        return None;
    }
    let lambda = match pivots.iter().position(|&c| c == lambda_col) {
        Some(k) if (0..ncols).all(|c| c == lambda_col || pivots.contains(&c) || rows[k][c] == 0) => Some(rows[k][ncols]),
        _ => None,
    };
    Some((pivots.len(), lambda))
}

pub fn fp_center_counts(s: &CubicSurface, p: u64) -> FpCounts {
    let monos = quadratic_monomials();
    let f = s.poly();
    let q = f.derivative(3);
    let df: Vec<Vec<u64>> = (0..4).map(|i| coeffs_mod(&f.derivative(i), &monos, p)).collect();
    let qv = coeffs_mod(&q, &monos, p);
    // h[i][j] = x_j * d(dF/dx3)/dx_i
    let h: Vec<Vec<Vec<u64>>> = (0..4)
        .map(|i| {
            let dq = q.derivative(i);
            (0..4).map(|j| coeffs_mod(&(&MultiPoly::var(4, j) * &dq), &monos, p)).collect()
        })
        .collect();

    let mut counts = FpCounts { lambda_nonzero: 0, lambda_zero: 0 };
    let mut v = [0u64; 4];
    for last in 0..4 {
        let free = last as u32;
        for code in 0..p.pow(free) {
            let mut c = code;
            for x in v.iter_mut().take(last) {
                *x = c % p;
                c /= p;
            }
            v[last] = 1;
            for x in v.iter_mut().skip(last + 1) {
                *x = 0;
            }
            // columns: beta0..beta3, lambda; right-hand side: -sum v_i dF/dx_i
            let mut rows = [[0u64; 6]; 10];
            for (m, row) in rows.iter_mut().enumerate() {
                for j in 0..4 {
                    let mut e = v[j] * qv[m];
                    for i in 0..4 {
                        e += v[i] * h[i][j][m];
                    }
                    row[j] = e % p;
                }
                row[4] = (p - qv[m]) % p;
                let mut rhs = 0;
                for i in 0..4 {
                    rhs += v[i] * df[i][m];
                }
                row[5] = (p - rhs % p) % p;
            }
            let Some((rank, lambda)) = analyse(rows, 5, 4, p) else { continue };
            let size = p.pow(5 - rank as u32);
            match lambda {
                Some(0) => counts.lambda_zero += size,
                Some(_) => counts.lambda_nonzero += size,
                None => {
                    counts.lambda_zero += size / p;
                    counts.lambda_nonzero += size - size / p;
                }
            }
        }
    }
    counts
}

/// The F_p points predicted by an exact solution set: each class contributes
/// the roots of its modulus modulo `p`.
pub fn predicted_counts(set: &SolutionSet, p: u64) -> FpCounts {
    let roots = |list: &[sexticlab::triple_plane::CenterSolution]| -> u64 {
        list.iter()
            .map(|s| PolyMod::from_uni(s.field.modulus(), p).expect("p-integral modulus").count_distinct_roots() as u64)
            .sum()
    };
    FpCounts {
        lambda_nonzero: roots(&set.isolated),
        lambda_zero: roots(&set.degenerate),
    }
}
