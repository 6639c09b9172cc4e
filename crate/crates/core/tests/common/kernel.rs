//! Kernel laws checked on concrete inputs; the drivers pick the inputs.

use num_traits::{One, Zero};
use sexticlab::parser::{parse_poly, print_poly};
use sexticlab::poly::{bareiss_determinant, int, resultant, resultant_coeffs, MultiPoly, Rational};
use sexticlab::singularities::{classify_at_rational_point, PlaneCurve, SingularityType};

pub type Law = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Law {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Determinant of the Sylvester matrix, rows of `a` first.
fn sylvester_det(a: &[Rational], b: &[Rational]) -> Rational {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let mut rows = Vec::with_capacity(size);
    for (count, src) in [(n, a), (m, b)] {
        for shift in 0..count {
            let mut row = vec![Rational::zero(); size];
            for (k, c) in src.iter().rev().enumerate() {
                row[shift + k] = c.clone();
            }
            rows.push(row);
        }
    }
    bareiss_determinant(&rows)
}

/// Agreement with the Sylvester determinant, symmetry and multiplicativity
/// for coefficient vectors (low to high) with nonzero leading terms.
pub fn resultant_laws(p: &[Rational], q: &[Rational], r: &[Rational]) -> Law {
    let res_pq = resultant_coeffs(p, q);
    ensure(res_pq == sylvester_det(p, q), || "differs from the Sylvester determinant".into())?;
    let odd = (p.len() - 1) * (q.len() - 1) % 2 == 1;
    let swapped = resultant_coeffs(q, p);
    ensure(swapped == if odd { -res_pq.clone() } else { res_pq.clone() }, || {
        "symmetry fails".into()
    })?;
    ensure(resultant_coeffs(&mul(p, r), q) == &res_pq * &resultant_coeffs(r, q), || {
        "multiplicativity fails".into()
    })
}

/// `p, q` in `x1` with coefficients `a + b*x0`, optionally times the common
/// factor `x1 - x0 - c`. Specializing `x0` commutes with `Res_x1`, and the
/// specialized resultant vanishes exactly when the specializations share a
/// root. Returns `Ok(false)` when a leading coefficient dies at `x0`.
pub fn specialization_law(
    p: &[(Rational, Rational)],
    q: &[(Rational, Rational)],
    shared: Option<i64>,
    x0: i64,
) -> Result<bool, String> {
    let x = |i| MultiPoly::var(2, i);
    let build = |cs: &[(Rational, Rational)]| {
        cs.iter().enumerate().fold(MultiPoly::zero(2), |acc, (k, (a, b))| {
            let coef = &MultiPoly::constant(2, a.clone()) + &x(0).scale(b);
            &acc + &(&coef * &x(1).pow(k as u32))
        })
    };
    let (mut pp, mut qq) = (build(p), build(q));
    if let Some(c) = shared {
        let factor = &x(1) - &(&x(0) + &MultiPoly::constant(2, int(c)));
        pp = &pp * &factor;
        qq = &qq * &factor;
    }
    let special = |f: &MultiPoly| f.substitute(0, &MultiPoly::constant(2, int(x0))).to_uni(1).unwrap();
    let (sp, sq) = (special(&pp), special(&qq));
    let keeps = |f: &MultiPoly, d: Option<usize>| f.degree_in(1).map(usize::from) == d;
    if !keeps(&pp, sp.degree()) || !keeps(&qq, sq.degree()) {
        return Ok(false);
    }
    let r = resultant(&pp, &qq, 1).map_err(|e| e.to_string())?;
    let at = r.eval(&[int(x0), Rational::zero()]);
    ensure(at == resultant_coeffs(sp.coeffs(), sq.coeffs()), || {
        "specialization does not commute with the resultant".into()
    })?;
    ensure(at.is_zero() == !sp.gcd(&sq).is_constant(), || "zero test disagrees with gcd".into())?;
    ensure(shared.is_none() || r.is_zero(), || "common factor but nonzero resultant".into())?;
    Ok(true)
}

/// `sum_i x_i dp/dx_i = d * p` for a form `p` of degree `d`.
pub fn euler_law(p: &MultiPoly, d: u32) -> Law {
    let n = p.nvars();
    ensure(p.is_homogeneous(), || format!("{p} is not homogeneous"))?;
    let lhs = (0..n).fold(MultiPoly::zero(n), |acc, i| &acc + &(&MultiPoly::var(n, i) * &p.derivative(i)));
    ensure(lhs == p.scale(&int(d as i64)), || format!("Euler identity fails for {p}"))
}

/// `parse(print(p)) = p` and printing is stable.
pub fn round_trip_law(p: &MultiPoly) -> Law {
    let text = print_poly(p);
    let back = parse_poly(&text).map_err(|e| format!("{text}: {e}"))?;
    ensure(&back == p, || format!("{text} parses to something else"))?;
    ensure(print_poly(&back) == text, || format!("{text} prints unstably"))
}

fn adjugate(a: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let m = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        a[rows[0]][cols[0]] * a[rows[1]][cols[1]] - a[rows[0]][cols[1]] * a[rows[1]][cols[0]]
    };
    std::array::from_fn(|i| std::array::from_fn(|j| if (i + j) % 2 == 0 { m(j, i) } else { -m(j, i) }))
}

pub fn det3(a: &[[i64; 3]; 3]) -> i64 {
    (0..3).map(|j| a[0][j] * adjugate(a)[j][0]).sum()
}

/// `f(Ax)` at `A^-1 p` has the same type as `f` at `p`, for a few curves
/// with known singularities at rational points.
pub fn projective_invariance_law(a: &[[i64; 3]; 3]) -> Law {
    let cases = [
        ("x1^2*x2-x0^3", [0, 0, 1], SingularityType::Cusp),
        ("x1^2*x2-x0^2*x2-x0^3", [0, 0, 1], SingularityType::Node),
        (
            "x1^2*x2^2-x0^4+x0^3*x1",
            [0, 0, 1],
            SingularityType::Other {
                multiplicity: 2,
                quadratic_rank: 1,
            },
        ),
        ("x1^2*x2-x0^3", [1, 1, 1], SingularityType::Smooth),
        ("(x0^3+x0*x2^2-x1^2*x2)^2-(x0^2+x1^2-x2^2)^3", [1, 0, 0], SingularityType::Node),
    ];
    let adj = adjugate(a);
    for (src, p, expected) in cases {
        let curve = PlaneCurve::new(parse_poly(src).unwrap()).unwrap();
        let moved = curve.transformed(a);
        let q: [Rational; 3] = std::array::from_fn(|i| int((0..3).map(|j| adj[i][j] * p[j]).sum()));
        let before = classify_at_rational_point(&curve, &p.map(int));
        let after = classify_at_rational_point(&moved, &q);
        ensure(before.as_ref() == Ok(&expected), || format!("{src} at {p:?}: {before:?}"))?;
        ensure(before == after, || format!("{src}: {before:?} became {after:?} under {a:?}"))?;
    }
    Ok(())
}
