use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::CubicSurface;
use crate::poly::{format_rational, Monomial, MultiPoly, Rational};

/// Row keys, in the order the rows are emitted.
pub const ROW_LABELS: [&str; 10] = ["x0x3", "x1x3", "x2x3", "x0x1", "x0x2", "x1x2", "x1^2", "x2^2", "x0^2", "x3^2"];

const ROW_MONOMIALS: [[u16; 4]; 10] = [
    [1, 0, 0, 1],
    [0, 1, 0, 1],
    [0, 0, 1, 1],
    [1, 1, 0, 0],
    [1, 0, 1, 0],
    [0, 1, 1, 0],
    [0, 2, 0, 0],
    [0, 0, 2, 0],
    [2, 0, 0, 0],
    [0, 0, 0, 2],
];

const U_NAMES: [&str; 5] = ["v0", "v1", "v2", "v3", ""];
const W_NAMES: [&str; 6] = ["b0", "b1", "b2", "b3", "mu", ""];

/// One equation `sum coeffs[a][b] * u[a] * w[b] = 0` with
/// `u = (v0, v1, v2, v3, 1)` and `w = (b0, b1, b2, b3, mu, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearRow {
    pub label: &'static str,
    pub coeffs: [[Rational; 6]; 5],
}

impl BilinearRow {
    /// Coefficients of `(b0, b1, b2, b3, mu, 1)` after plugging in `u`.
    pub fn contract<T, S, A>(&self, u: &[T; 5], zero: &T, scale: S, add: A) -> [T; 6]
    where
        T: Clone,
        S: Fn(&T, &Rational) -> T,
        A: Fn(&T, &T) -> T,
    {
        std::array::from_fn(|b| {
            let mut acc = zero.clone();
            for (a, ua) in u.iter().enumerate() {
                let c = &self.coeffs[a][b];
                if !c.is_zero() {
                    acc = add(&acc, &scale(ua, c));
                }
            }
            acc
        })
    }

    pub fn eval(&self, v: &[Rational; 4], beta: &[Rational; 4], mu: &Rational) -> Rational {
        let u = [&v[0], &v[1], &v[2], &v[3], &Rational::one()];
        let w = [&beta[0], &beta[1], &beta[2], &beta[3], mu, &Rational::one()];
        let mut acc = Rational::zero();
        for a in 0..5 {
            for b in 0..6 {
                acc += &self.coeffs[a][b] * u[a] * w[b];
            }
        }
        acc
    }

    /// Linear in `(v, mu)` once `beta` is fixed, and in `(beta, mu)` once `v` is.
    pub fn is_bilinear(&self) -> bool {
        self.coeffs[4][5].is_zero() && (0..4).all(|a| self.coeffs[a][4].is_zero())
    }

    /// Whether the two rows agree up to a nonzero rational factor.
    pub fn proportional_to(&self, other: &BilinearRow) -> bool {
        let flat = |r: &BilinearRow| r.coeffs.iter().flatten().cloned().collect::<Vec<_>>();
        let (x, y) = (flat(self), flat(other));
        let Some(k) = x.iter().position(|c| !c.is_zero()) else {
            return y.iter().all(Zero::is_zero);
        };
        if y[k].is_zero() {
            return false;
        }
        let ratio = &y[k] / &x[k];
        x.iter().zip(&y).all(|(a, b)| &(a * &ratio) == b)
    }
}

impl fmt::Display for BilinearRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in 0..6 {
            for a in 0..5 {
                let c = &self.coeffs[a][b];
                if c.is_zero() {
                    continue;
                }
                let vars: Vec<&str> = [W_NAMES[b], U_NAMES[a]].into_iter().filter(|s| !s.is_empty()).collect();
                let mag = c.abs();
                if c.is_negative() {
                    f.write_str("-")?;
                } else if !first {
                    f.write_str("+")?;
                }
                first = false;
                if vars.is_empty() || !mag.is_one() {
                    f.write_str(&format_rational(&mag))?;
                    if !vars.is_empty() {
                        f.write_str("*")?;
                    }
                }
                f.write_str(&vars.join("*"))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for BilinearRow {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BilinearRow", 2)?;
        st.serialize_field("label", self.label)?;
        st.serialize_field("equation", &format!("{self} = 0"))?;
        st.end()
    }
}

/// The ten coefficient equations of
/// `sum_i v_i dG/dx_i = lambda * dF/dx3`, with `lambda` traded for
/// `mu = lambda - sum_j beta_j v_j - v3`.
#[derive(Debug, Clone, Serialize)]
pub struct BilinearSystem {
    #[serde(skip)]
    pub surface: CubicSurface,
    pub rows: Vec<BilinearRow>,
}

impl BilinearSystem {
    pub fn row(&self, label: &str) -> Option<&BilinearRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// `lambda = mu + sum_j beta_j v_j + v3`.
    pub fn lambda(v: &[Rational; 4], beta: &[Rational; 4], mu: &Rational) -> Rational {
        let mut l = mu + &v[3];
        for j in 0..4 {
            l += &beta[j] * &v[j];
        }
        l
    }
}

/// Entry whose sign is fixed by normalization: a row containing `mu` reads
/// `form = mu`, any other row has a positive leading term, ordering terms by
/// `v` index with the beta-free term first.
fn sign_pivot(coeffs: &[[Rational; 6]; 5]) -> Rational {
    if !coeffs[4][4].is_zero() {
        return -&coeffs[4][4];
    }
    (0..5)
        .flat_map(|a| (0..6).rev().map(move |b| (a, b)))
        .map(|(a, b)| &coeffs[a][b])
        .find(|c| !c.is_zero())
        .cloned()
        .unwrap_or_else(Rational::zero)
}

pub fn build_condition_system(s: &CubicSurface) -> BilinearSystem {
    let q = s.polar();
    let zero = MultiPoly::zero(4);
    // forms[a][b]: the quadratic form multiplying u[a] * w[b].
    let mut forms: [[MultiPoly; 6]; 5] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
    for a in 0..4 {
        let mut own = s.poly().derivative(a);
        if a == 3 {
            own = &own - &q;
        }
        forms[a][5] = own;
        let dq = q.derivative(a);
        for (b, form) in forms[a].iter_mut().take(4).enumerate() {
            *form = &MultiPoly::var(4, b) * &dq;
        }
    }
    forms[4][4] = -&q;

    let rows = ROW_LABELS
        .iter()
        .zip(ROW_MONOMIALS)
        .map(|(&label, exps)| {
            let m = Monomial::new(exps);
            let mut coeffs: [[Rational; 6]; 5] = std::array::from_fn(|a| std::array::from_fn(|b| forms[a][b].coeff(&m)));
            let mut content = crate::poly::rational_content(coeffs.iter().flatten());
            if !content.is_zero() {
                if sign_pivot(&coeffs).is_negative() {
                    content = -content;
                }
                for c in coeffs.iter_mut().flatten() {
                    *c = &*c / &content;
                }
            }
            BilinearRow { label, coeffs }
        })
        .collect();
    BilinearSystem {
        surface: s.clone(),
        rows,
    }
}
