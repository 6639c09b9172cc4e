//! The family `y^2 = x^3 + a*x + b` over the `(a, b)`-plane: j-invariants,
//! the discriminant curve, and limits of j along arcs through the origin.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::number_field::{certify_irreducible, NfElem, NumberField};
use crate::poly::{format_rational, int, ExactRing, Rational, UniPoly};

pub const DEFAULT_TRUNCATION: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VersalError {
    #[error("singular fiber: 4a^3 + 27b^2 = 0")]
    SingularFiber,
    #[error("arc must pass through the origin")]
    NotThroughOrigin,
    #[error("both series vanish to order {0}")]
    ZeroArc(usize),
    #[error("series longer than the truncation order {0}")]
    TooLong(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VersalPoint {
    pub a: Rational,
    pub b: Rational,
}

impl VersalPoint {
    pub fn new(a: Rational, b: Rational) -> Self {
        VersalPoint { a, b }
    }

    fn discriminant(&self) -> Rational {
        int(4) * self.a.pow(3) + int(27) * self.b.pow(2)
    }
}

/// `j = 1728 * 4a^3 / (4a^3 + 27b^2)`.
pub fn j_invariant(p: &VersalPoint) -> Result<Rational, VersalError> {
    let d = p.discriminant();
    if d.is_zero() {
        return Err(VersalError::SingularFiber);
    }
    Ok(int(6912) * p.a.pow(3) / d)
}

/// Whether the fiber over `p` is singular, i.e. `4a^3 + 27b^2 = 0`.
pub fn discriminant_membership(p: &VersalPoint) -> bool {
    p.discriminant().is_zero()
}

/// Limit of j along an arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JValue {
    Finite(Rational),
    /// The arc approaches the discriminant faster than `a^3`.
    Infinite,
    Indeterminate { truncation: usize },
}

impl Serialize for JValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            JValue::Finite(r) => s.serialize_str(&format_rational(r)),
            JValue::Infinite => s.serialize_str("infinity"),
            JValue::Indeterminate { truncation } => {
                s.collect_str(&format_args!("indeterminate at truncation order {truncation}"))
            }
        }
    }
}

/// Coefficients that arcs can carry: rationals or number-field elements.
pub trait ArcCoeff: ExactRing {
    fn lift(&self, r: &Rational) -> Self;
    fn to_rational(&self) -> Option<Rational>;
}

impl ArcCoeff for Rational {
    fn lift(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl ArcCoeff for NfElem {
    fn lift(&self, r: &Rational) -> Self {
        self.field().from_rational(r)
    }
    fn to_rational(&self) -> Option<Rational> {
        self.as_rational()
    }
}

/// `(a(s), b(s))` known modulo `s^(truncation + 1)`; `a[k]` is the
/// coefficient of `s^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CuspArc<C = Rational> {
    pub a: Vec<C>,
    pub b: Vec<C>,
    pub truncation: usize,
}

impl<C: ArcCoeff> CuspArc<C> {
    pub fn new(mut a: Vec<C>, mut b: Vec<C>, truncation: usize) -> Result<Self, VersalError> {
        if a.len() > truncation + 1 || b.len() > truncation + 1 {
            return Err(VersalError::TooLong(truncation));
        }
        if a.first().is_some_and(|c| !c.is_zero_elem()) || b.first().is_some_and(|c| !c.is_zero_elem()) {
            return Err(VersalError::NotThroughOrigin);
        }
        let zero = a.first().or(b.first()).map(ExactRing::zero_like);
        if let Some(z) = zero {
            a.resize(truncation + 1, z.clone());
            b.resize(truncation + 1, z);
        }
        Ok(CuspArc { a, b, truncation })
    }

    fn order_a(&self) -> Option<usize> {
        order(&self.a)
    }

    fn order_b(&self) -> Option<usize> {
        order(&self.b)
    }
}

impl CuspArc<Rational> {
    /// Arc from the coefficients of `s, s^2, ...`.
    pub fn from_tail(a: &[Rational], b: &[Rational], truncation: usize) -> Result<Self, VersalError> {
        let with_zero = |t: &[Rational]| std::iter::once(Rational::zero()).chain(t.iter().cloned()).collect();
        CuspArc::new(with_zero(a), with_zero(b), truncation)
    }
}

fn order<C: ArcCoeff>(s: &[C]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero_elem())
}

/// Product of two series, keeping terms up to `s^len-1`.
fn mul_series<C: ArcCoeff>(x: &[C], y: &[C], len: usize) -> Vec<C> {
    let zero = x[0].zero_like();
    let mut out = vec![zero; len];
    for (i, xi) in x.iter().enumerate().take(len) {
        if xi.is_zero_elem() {
            continue;
        }
        for (j, yj) in y.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].plus(&xi.times(yj));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JLimit {
    pub limit: JValue,
    pub tangent_to_b_axis: bool,
}

/// Limit of `j(a(s), b(s))` as `s -> 0`, compared by weighted orders
/// `3*ord(a)` against `2*ord(b)`.
pub fn arc_j_limit<C: ArcCoeff>(arc: &CuspArc<C>) -> Result<JLimit, VersalError> {
    let t = arc.truncation;
    let (oa, ob) = (arc.order_a(), arc.order_b());
    let tangent = match (oa, ob) {
        (None, None) => return Err(VersalError::ZeroArc(t)),
        (Some(_), None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => y > x,
    };
    let limit = match (oa, ob) {
        (None, Some(_)) => JValue::Finite(Rational::zero()),
        (Some(x), None) => {
            // b = O(s^(t+1)), so 2*ord(b) >= 2t + 2.
            if 3 * x < 2 * t + 2 {
                JValue::Finite(int(1728))
            } else {
                JValue::Indeterminate { truncation: t }
            }
        }
        (Some(x), Some(y)) if 3 * x > 2 * y => JValue::Finite(Rational::zero()),
        (Some(x), Some(y)) if 3 * x < 2 * y => JValue::Finite(int(1728)),
        (Some(x), Some(y)) => equal_weight_limit(arc, x, y),
        (None, None) => unreachable!(),
    };
    Ok(JLimit {
        limit,
        tangent_to_b_axis: tangent,
    })
}

/// Both `a^3` and `b^2` start at `s^(3x) = s^(2y)`: compare the numerator
/// `6912 a^3` with the discriminant `4a^3 + 27b^2` term by term.
fn equal_weight_limit<C: ArcCoeff>(arc: &CuspArc<C>, x: usize, y: usize) -> JValue {
    let t = arc.truncation;
    let lead = 3 * x;
    // a^3 is known through s^(t + 2x) and b^2 through s^(t + y).
    let known = (t + 2 * x).min(t + y) + 1;
    let a2 = mul_series(&arc.a, &arc.a, known);
    let a3 = mul_series(&a2, &arc.a, known);
    let b2 = mul_series(&arc.b, &arc.b, known);
    let c = &arc.a[x];
    let four = c.lift(&int(4));
    let twenty_seven = c.lift(&int(27));
    let disc: Vec<C> = a3
        .iter()
        .zip(&b2)
        .map(|(p, q)| four.times(p).plus(&twenty_seven.times(q)))
        .collect();
    match order(&disc) {
        Some(k) if k == lead => {
            let num = c.lift(&int(6912)).times(&a3[lead]);
            let value = num.div_exact(&disc[lead]).expect("nonzero leading term");
            match value.to_rational() {
                Some(r) => JValue::Finite(r),
                None => JValue::Indeterminate { truncation: t },
            }
        }
        Some(_) => JValue::Infinite,
        None => JValue::Indeterminate { truncation: t },
    }
}

/// An arc realizing a prescribed limit, with coefficients in `field`.
#[derive(Debug, Clone)]
pub struct JArc {
    pub field: Arc<NumberField>,
    pub arc: CuspArc<NfElem>,
}

impl Serialize for JArc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let show = |series: &[NfElem]| -> String { series_text(series) };
        let mut st = s.serialize_struct("JArc", 4)?;
        st.serialize_field("a", &show(&self.arc.a))?;
        st.serialize_field("b", &show(&self.arc.b))?;
        st.serialize_field("field_modulus", &self.field.modulus().to_string())?;
        st.serialize_field("certificate", self.field.certificate())?;
        st.end()
    }
}

fn series_text(series: &[NfElem]) -> String {
    let mut parts = Vec::new();
    for (k, c) in series.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeff = match c.as_rational() {
            Some(r) if r.is_one() => String::new(),
            Some(r) => format!("{}*", format_rational(&r)),
            None => format!("({})*", c.rep().display_in("t")),
        };
        parts.push(format!("{coeff}s^{k}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn exact_cube_root(r: &Rational) -> Option<Rational> {
    let root = |n: &BigInt| -> Option<BigInt> {
        let c = n.abs().cbrt();
        (&c * &c * &c == n.abs()).then(|| if n.is_negative() { -c } else { c })
    };
    Some(Rational::new(root(r.numer())?, root(r.denom())?))
}

/// A tangent arc with limit `j0`: `(0, s^3)` for 0, `(s, s^2)` for 1728 and
/// `(alpha*s^2, s^3)` otherwise, where `alpha^3 = 27*j0 / (6912 - 4*j0)`.
pub fn find_arc_for_j(j0: &Rational) -> JArc {
    let t = DEFAULT_TRUNCATION;
    let monomial = |k: usize, c: NfElem| -> Vec<NfElem> {
        let mut v = vec![c.zero_like(); t + 1];
        v[k] = c;
        v
    };
    let (field, a, b) = if j0.is_zero() {
        let q = NumberField::rationals();
        (Arc::clone(&q), vec![q.zero(); t + 1], monomial(3, q.one()))
    } else if *j0 == int(1728) {
        let q = NumberField::rationals();
        (Arc::clone(&q), monomial(1, q.one()), monomial(2, q.one()))
    } else {
        let r = int(27) * j0 / (int(6912) - int(4) * j0);
        let (field, alpha) = match exact_cube_root(&r) {
            Some(c) => {
                let q = NumberField::rationals();
                let alpha = q.from_rational(&c);
                (q, alpha)
            }
            None => {
                let m = UniPoly::new(vec![-r, Rational::zero(), Rational::zero(), Rational::one()]);
                let k = certify_irreducible(&m).expect("monic cubic");
                let alpha = k.generator();
                (k, alpha)
            }
        };
        let one = field.one();
        (field, monomial(2, alpha), monomial(3, one))
    };
    let arc = CuspArc::new(a, b, t).expect("arc through the origin");
    JArc { field, arc }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn point(a: i64, b: i64) -> VersalPoint {
        VersalPoint::new(int(a), int(b))
    }

    fn arc(a: &[i64], b: &[i64]) -> CuspArc {
        let r = |v: &[i64]| v.iter().map(|&c| int(c)).collect::<Vec<_>>();
        CuspArc::from_tail(&r(a), &r(b), DEFAULT_TRUNCATION).unwrap()
    }

    #[test]
    fn j_values() {
        assert_eq!(j_invariant(&point(1, 0)), Ok(int(1728)));
        assert_eq!(j_invariant(&point(0, 1)), Ok(int(0)));
        assert_eq!(j_invariant(&point(1, 1)), Ok(rat(6912, 31)));
        assert_eq!(j_invariant(&point(-3, 2)), Err(VersalError::SingularFiber));
    }

    #[test]
    fn discriminant() {
        assert!(discriminant_membership(&point(0, 0)));
        assert!(discriminant_membership(&point(-3, 2)));
        assert!(!discriminant_membership(&point(1, 1)));
        assert!(!discriminant_membership(&point(3, 2)));
    }

    #[test]
    fn arc_limits() {
        let l = arc_j_limit(&arc(&[1], &[1])).unwrap();
        assert_eq!(l, JLimit { limit: JValue::Finite(int(0)), tangent_to_b_axis: false });
        let l = arc_j_limit(&arc(&[0, 1], &[0, 0, 1])).unwrap();
        assert_eq!(l, JLimit { limit: JValue::Finite(rat(6912, 31)), tangent_to_b_axis: true });
        let l = arc_j_limit(&arc(&[1], &[0, 1])).unwrap();
        assert_eq!(l, JLimit { limit: JValue::Finite(int(1728)), tangent_to_b_axis: true });
    }

    #[test]
    fn arcs_into_the_discriminant() {
        // a = -3s^2, b = 2s^3 + s^4 hugs the cuspidal curve: j blows up.
        let l = arc_j_limit(&arc(&[0, -3], &[0, 0, 2, 1])).unwrap();
        assert_eq!(l.limit, JValue::Infinite);
        // a = -3s^2, b = 2s^3 exactly on it, visible to any truncation.
        let l = arc_j_limit(&arc(&[0, -3], &[0, 0, 2])).unwrap();
        assert_eq!(l.limit, JValue::Indeterminate { truncation: DEFAULT_TRUNCATION });
        // only a, but too deep for b = O(s^13) to be ruled out.
        let mut a = vec![0; 8];
        a.push(1);
        let l = arc_j_limit(&arc(&a, &[])).unwrap();
        assert_eq!(l.limit, JValue::Indeterminate { truncation: DEFAULT_TRUNCATION });
        assert_eq!(arc_j_limit(&arc(&[], &[])), Err(VersalError::ZeroArc(DEFAULT_TRUNCATION)));
    }

    #[test]
    fn arc_validation() {
        assert_eq!(CuspArc::new(vec![int(1)], vec![], 3), Err(VersalError::NotThroughOrigin));
        assert_eq!(CuspArc::new(vec![int(0); 5], vec![], 3), Err(VersalError::TooLong(3)));
    }

    #[test]
    fn arcs_for_given_j() {
        for j0 in [int(0), int(1728), rat(6912, 31), int(1), int(-5), rat(7, 3)] {
            let found = find_arc_for_j(&j0);
            let l = arc_j_limit(&found.arc).unwrap();
            assert_eq!(l.limit, JValue::Finite(j0.clone()), "j0 = {j0}");
            if !j0.is_zero() {
                assert!(l.tangent_to_b_axis);
            }
        }
        let found = find_arc_for_j(&rat(6912, 31));
        assert_eq!(found.field.degree(), 1);
        assert_eq!(series_text(&found.arc.a), "s^2");
        let found = find_arc_for_j(&int(1));
        assert_eq!(found.field.degree(), 3);
        assert_eq!(series_text(&found.arc.a), "(t)*s^2");
    }
}
