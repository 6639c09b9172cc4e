use super::{ExactRing, MultiPoly, PolyError};

fn degree<R: ExactRing>(p: &[R]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero_elem())
}

fn trim<R: ExactRing>(mut p: Vec<R>) -> Vec<R> {
    while p.last().is_some_and(|c| c.is_zero_elem()) {
        p.pop();
    }
    p
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, computed without division.
fn pseudo_remainder<R: ExactRing>(a: &[R], b: &[R]) -> Vec<R> {
    let db = degree(b).expect("nonzero divisor");
    let lcb = &b[db];
    let mut r = trim(a.to_vec());
    let mut e = r.len() as i64 - db as i64;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<R> = r.iter().map(|c| c.times(lcb)).collect();
        for (i, c) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].minus(&lr.times(c));
        }
        r = trim(next);
        e -= 1;
    }
    if e > 0 {
        let f = lcb.pow(e as u32);
        r = r.iter().map(|c| c.times(&f)).collect();
    }
    r
}

/// Resultant of two polynomials given by coefficient vectors (low to high),
/// via the subresultant remainder sequence. Sign convention: the Sylvester
/// determinant with the rows of `a` first.
pub fn resultant_coeffs<R: ExactRing>(a: &[R], b: &[R]) -> R {
    let zero = a.first().or(b.first()).expect("empty input").zero_like();
    let (Some(da), Some(db)) = (degree(a), degree(b)) else {
        return zero;
    };
    let one = zero.one_like();
    let (mut a, mut b, mut sign_neg) = if da < db {
        (trim(b.to_vec()), trim(a.to_vec()), da % 2 == 1 && db % 2 == 1)
    } else {
        (trim(a.to_vec()), trim(b.to_vec()), false)
    };
    let db0 = degree(&b).unwrap();
    if db0 == 0 {
        let r = b[0].pow(degree(&a).unwrap() as u32);
        return if sign_neg { r.negated() } else { r };
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let da = degree(&a).unwrap();
        let db = degree(&b).unwrap();
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = pseudo_remainder(&a, &b);
        let denom = g.times(&h.pow(delta));
        a = b;
        if r.is_empty() {
            return zero;
        }
        b = r
            .iter()
            .map(|c| c.div_exact(&denom).expect("subresultant division is exact"))
            .collect();
        g = a[degree(&a).unwrap()].clone();
        if delta > 0 {
            h = g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact");
        }
        if degree(&b).unwrap() == 0 {
            break;
        }
    }
    let da = degree(&a).unwrap() as u32;
    let res = b[0]
        .pow(da)
        .div_exact(&h.pow(da - 1))
        .expect("subresultant division is exact");
    if sign_neg {
        res.negated()
    } else {
        res
    }
}

/// Sylvester matrix with the `deg b` shifted rows of `a` first.
pub fn sylvester_matrix<R: ExactRing>(a: &[R], b: &[R]) -> Vec<Vec<R>> {
    let m = degree(a).expect("nonzero polynomial");
    let n = degree(b).expect("nonzero polynomial");
    let zero = a[0].zero_like();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for k in 0..=m {
            row[i + m - k] = a[k].clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for k in 0..=n {
            row[i + n - k] = b[k].clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res_{x_var}(p, q)`, a polynomial free of `x_var`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<MultiPoly, PolyError> {
    let nvars = p.nvars().max(q.nvars());
    if var >= nvars {
        return Err(PolyError::VariableOutOfRange { index: var, nvars });
    }
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !p.uses_var(var) || !q.uses_var(var) {
        return Err(PolyError::ConstantInEliminationVariable(var));
    }
    let a: Vec<MultiPoly> = p.coefficients_in(var).into_iter().map(|c| c.with_nvars(nvars)).collect();
    let b: Vec<MultiPoly> = q.coefficients_in(var).into_iter().map(|c| c.with_nvars(nvars)).collect();
    Ok(resultant_coeffs(&a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{bareiss_determinant, int, Rational};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn matches_sylvester_determinant() {
        let cases: [(&[i64], &[i64]); 5] = [
            (&[1, 2, 3], &[4, 5]),
            (&[-1, 0, 0, 2], &[3, 1, 0, 1]),
            (&[2, 1], &[1, 1, 1, 1, 1]),
            (&[1, 0, 1], &[1, 0, 1]),
            (&[5, -3, 0, 0, 7, 1], &[0, 2, -1, 4]),
        ];
        for (a, b) in cases {
            let (a, b) = (ints(a), ints(b));
            let det = bareiss_determinant(&sylvester_matrix(&a, &b));
            assert_eq!(resultant_coeffs(&a, &b), det, "{a:?} {b:?}");
        }
    }

    #[test]
    fn constant_argument_rejected() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        assert_eq!(
            resultant(&x, &y, 1),
            Err(PolyError::ConstantInEliminationVariable(1))
        );
    }

    #[test]
    fn eliminates_a_variable() {
        // Res_y(y^2 - x, y - x) = x^2 - x
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let r = resultant(&(&y.pow(2) - &x), &(&y - &x), 1).unwrap();
        assert_eq!(r, &x.pow(2) - &x);
    }
}
