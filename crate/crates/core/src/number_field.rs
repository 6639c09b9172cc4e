//! Arithmetic in `Q[t]/(m(t))` for a monic squarefree modulus `m`.
//!
//! When `m` is not known to be irreducible, zero tests may discover a proper
//! factor of `m`. Such tests return [`Split`]; [`with_splitting`] then reruns
//! the computation over each factor, so callers never work with a zero divisor
//! unknowingly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::poly::modp::{primes_below, PolyMod};
use crate::poly::{resultant, solve_linear, squarefree_part, ExactRing, MultiPoly, PolyError, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NfError {
    #[error("modulus must be monic")]
    NonMonic,
    #[error("modulus must have positive degree")]
    ConstantModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero divisor: common factor {0} with the modulus")]
    ZeroDivisor(UniPoly),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("positive-dimensional input")]
    PositiveDimensional,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Evidence for irreducibility of the modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Certificate {
    /// The modulus is irreducible modulo this prime.
    Certified { prime: u64 },
    Unverified { note: String },
}

/// A proper monic factor of a modulus, found while testing an element for zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub factor: UniPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    modulus: UniPoly,
    certificate: Certificate,
}

fn check_modulus(m: &UniPoly) -> Result<(), NfError> {
    match m.degree() {
        None | Some(0) => Err(NfError::ConstantModulus),
        Some(_) if !m.leading_coeff().is_one() => Err(NfError::NonMonic),
        Some(_) => Ok(()),
    }
}

/// Looks for a prime below 100 modulo which `m` stays irreducible.
pub fn certify_irreducible(m: &UniPoly) -> Result<Arc<NumberField>, NfError> {
    check_modulus(m)?;
    Ok(Arc::new(NumberField {
        certificate: find_certificate(m),
        modulus: m.clone(),
    }))
}

fn find_certificate(m: &UniPoly) -> Certificate {
    for p in primes_below(100) {
        if let Some(mp) = PolyMod::from_uni(m, p) {
            if mp.degree() == m.degree() && mp.is_irreducible() {
                return Certificate::Certified { prime: p };
            }
        }
    }
    let note = if m.degree() > Some(1) && !m.rational_roots().is_empty() {
        "reducible: has a rational root".to_string()
    } else if !m.is_squarefree() {
        "reducible: repeated factor".to_string()
    } else {
        "no prime below 100 certifies irreducibility".to_string()
    };
    Certificate::Unverified { note }
}

impl NumberField {
    /// Field with the given monic modulus, without attempting certification.
    pub fn unverified(m: UniPoly) -> Result<Arc<Self>, NfError> {
        check_modulus(&m)?;
        Ok(Arc::new(NumberField {
            modulus: m,
            certificate: Certificate::Unverified {
                note: "not checked".to_string(),
            },
        }))
    }

    /// `Q` itself, presented as `Q[t]/(t)`.
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField {
            modulus: UniPoly::x(),
            certificate: Certificate::Certified { prime: 2 },
        })
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.certificate, Certificate::Certified { .. })
    }

    pub fn elem(self: &Arc<Self>, rep: UniPoly) -> NfElem {
        let rep = if rep.degree() >= self.modulus.degree() {
            rep.rem(&self.modulus)
        } else {
            rep
        };
        NfElem {
            field: Arc::clone(self),
            rep,
        }
    }

    pub fn from_rational(self: &Arc<Self>, c: &Rational) -> NfElem {
        self.elem(UniPoly::constant(c.clone()))
    }

    pub fn zero(self: &Arc<Self>) -> NfElem {
        self.elem(UniPoly::zero())
    }

    pub fn one(self: &Arc<Self>) -> NfElem {
        self.elem(UniPoly::one())
    }

    /// The class of `t`.
    pub fn generator(self: &Arc<Self>) -> NfElem {
        self.elem(UniPoly::x())
    }

    /// The two fields obtained from a proper factor of the modulus.
    pub fn split(&self, factor: &UniPoly) -> [Arc<NumberField>; 2] {
        let g = factor.monic();
        let h = self.modulus.div_exact(&g).expect("factor divides the modulus").monic();
        [g, h].map(|m| {
            Arc::new(NumberField {
                certificate: find_certificate(&m),
                modulus: m,
            })
        })
    }
}

/// Runs `f` over `field`, splitting and retrying whenever `f` reports a zero
/// divisor. The returned fields partition the original modulus.
pub fn with_splitting<T, F>(field: Arc<NumberField>, mut f: F) -> Vec<(Arc<NumberField>, T)>
where
    F: FnMut(&Arc<NumberField>) -> Result<T, Split>,
{
    let mut out = Vec::new();
    let mut work = vec![field];
    while let Some(k) = work.pop() {
        match f(&k) {
            Ok(v) => out.push((k, v)),
            Err(Split { factor }) => work.extend(k.split(&factor)),
        }
    }
    out
}

/// Element of a [`NumberField`], stored as its reduced representative.
#[derive(Clone)]
pub struct NfElem {
    field: Arc<NumberField>,
    rep: UniPoly,
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.field.modulus == other.field.modulus
    }
}

impl Eq for NfElem {}

/// Outcome of a zero test over a possibly reducible modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroTest {
    Zero,
    NonZero,
    Split(UniPoly),
}

impl NfElem {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rep(&self) -> &UniPoly {
        &self.rep
    }

    /// Exact zero test of the representative.
    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.rep.is_constant().then(|| self.rep.coeff(0))
    }

    /// Zero, a unit, or a zero divisor revealing a factor of the modulus.
    pub fn zero_test(&self) -> ZeroTest {
        if self.rep.is_zero() {
            return ZeroTest::Zero;
        }
        let g = self.rep.gcd(&self.field.modulus);
        if g.is_constant() {
            ZeroTest::NonZero
        } else {
            ZeroTest::Split(g)
        }
    }

    /// `Ok(true)` for zero, `Ok(false)` for a unit, `Err` on a zero divisor.
    pub fn is_zero_d5(&self) -> Result<bool, Split> {
        match self.zero_test() {
            ZeroTest::Zero => Ok(true),
            ZeroTest::NonZero => Ok(false),
            ZeroTest::Split(factor) => Err(Split { factor }),
        }
    }

    /// Inverse of a nonzero element.
    pub fn invert(&self) -> Result<NfElem, NfError> {
        if self.rep.is_zero() {
            return Err(NfError::DivisionByZero);
        }
        let (g, s, _) = self.rep.ext_gcd(&self.field.modulus);
        if !g.is_constant() {
            return Err(NfError::ZeroDivisor(g));
        }
        Ok(self.field.elem(s))
    }

    /// Inverse for use inside [`with_splitting`]. Panics on the zero element.
    pub fn invert_d5(&self) -> Result<NfElem, Split> {
        match self.invert() {
            Ok(v) => Ok(v),
            Err(NfError::ZeroDivisor(factor)) => Err(Split { factor }),
            Err(e) => panic!("invert_d5: {e}"),
        }
    }

    pub fn scale(&self, c: &Rational) -> NfElem {
        self.field.elem(self.rep.scale(c))
    }

    pub fn pow(&self, mut exp: u32) -> NfElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Characteristic polynomial of multiplication by this element.
    pub fn charpoly(&self) -> UniPoly {
        let n = self.field.degree() as u32;
        if self.rep.is_constant() {
            let lin = UniPoly::new(vec![-self.rep.coeff(0), Rational::one()]);
            return lin.pow(n);
        }
        let m = MultiPoly::from_uni(2, 0, &self.field.modulus);
        let e = &MultiPoly::var(2, 1) - &MultiPoly::from_uni(2, 0, &self.rep);
        let r = resultant(&m, &e, 0).expect("both involve t");
        r.to_uni(1).expect("univariate").monic()
    }

    /// Squarefree part of the characteristic polynomial: the product of the
    /// minimal polynomials of the element over every factor of the modulus.
    pub fn minimal_polynomials(&self) -> UniPoly {
        squarefree_modulus(&self.charpoly())
    }

    /// The same representative reduced into another field, typically a factor
    /// field produced by a split.
    pub fn reduce_into(&self, field: &Arc<NumberField>) -> NfElem {
        field.elem(self.rep.clone())
    }
}

/// Checked version of `nf_invert` as a free function.
pub fn nf_invert(e: &NfElem) -> Result<NfElem, NfError> {
    e.invert()
}

impl<'a> Add<&'a NfElem> for &'a NfElem {
    type Output = NfElem;
    fn add(self, rhs: &'a NfElem) -> NfElem {
        debug_assert!(self.field.modulus == rhs.field.modulus);
        NfElem {
            field: Arc::clone(&self.field),
            rep: &self.rep + &rhs.rep,
        }
    }
}

impl<'a> Sub<&'a NfElem> for &'a NfElem {
    type Output = NfElem;
    fn sub(self, rhs: &'a NfElem) -> NfElem {
        debug_assert!(self.field.modulus == rhs.field.modulus);
        NfElem {
            field: Arc::clone(&self.field),
            rep: &self.rep - &rhs.rep,
        }
    }
}

impl<'a> Mul<&'a NfElem> for &'a NfElem {
    type Output = NfElem;
    fn mul(self, rhs: &'a NfElem) -> NfElem {
        debug_assert!(self.field.modulus == rhs.field.modulus);
        self.field.elem(&self.rep * &rhs.rep)
    }
}

impl Neg for &NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem {
            field: Arc::clone(&self.field),
            rep: -&self.rep,
        }
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rep.display_in("t"))
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ({})", self.rep, self.field.modulus)
    }
}

impl ExactRing for NfElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    /// Division by a unit; `None` for zero divisors.
    fn div_exact(&self, other: &Self) -> Option<Self> {
        Some(self * &other.invert().ok()?)
    }
}

/// Evaluates a rational polynomial at a point with coordinates in `K`.
pub fn eval_at(p: &MultiPoly, point: &[NfElem], field: &Arc<NumberField>) -> NfElem {
    p.eval_with(point, |c| field.from_rational(c))
}

/// Re-expresses `elems` with `generator` as the new class of `t`, provided
/// `generator` generates the whole algebra (squarefree characteristic
/// polynomial).
pub fn change_generator(generator: &NfElem, elems: &[NfElem]) -> Option<(Arc<NumberField>, Vec<NfElem>)> {
    let n = generator.field.degree();
    let c = generator.charpoly();
    if !c.is_squarefree() {
        return None;
    }
    let field = certify_irreducible(&c).ok()?;
    let mut powers = vec![generator.field.one()];
    for j in 1..n {
        let next = &powers[j - 1] * generator;
        powers.push(next);
    }
    let matrix: Vec<Vec<Rational>> = (0..n)
        .map(|i| powers.iter().map(|p| p.rep.coeff(i)).collect())
        .collect();
    let mut out = Vec::with_capacity(elems.len());
    for e in elems {
        let rhs: Vec<Rational> = (0..n).map(|i| e.rep.coeff(i)).collect();
        let (y, _) = solve_linear(&matrix, &rhs, n)?;
        out.push(field.elem(UniPoly::new(y)));
    }
    Some((field, out))
}

/// Univariate polynomial over `K`, coefficients low to high, not normalized.
pub type KPoly = Vec<NfElem>;

/// `p` as a polynomial in `x_var` with the other coordinates fixed.
pub fn specialize(p: &MultiPoly, var: usize, point: &[NfElem], field: &Arc<NumberField>) -> KPoly {
    p.coefficients_in(var)
        .iter()
        .map(|c| eval_at(c, point, field))
        .collect()
}

/// Strips leading zeros, testing each candidate leading coefficient.
pub fn kpoly_normalize(mut p: KPoly) -> Result<KPoly, Split> {
    while let Some(c) = p.last() {
        if c.is_zero_d5()? {
            p.pop();
        } else {
            break;
        }
    }
    Ok(p)
}

fn kpoly_rem(a: &KPoly, b: &KPoly) -> Result<KPoly, Split> {
    let db = b.len() - 1;
    let inv = b[db].invert_d5()?;
    let mut r = a.clone();
    while r.len() > db {
        let k = r.len() - 1;
        let q = &r[k] * &inv;
        for (i, c) in b.iter().enumerate() {
            let t = &q * c;
            r[k - db + i] = &r[k - db + i] - &t;
        }
        r.pop();
        r = kpoly_normalize(r)?;
    }
    Ok(r)
}

/// Monic gcd over `K`; the empty vector stands for the zero polynomial.
pub fn kpoly_gcd(a: &KPoly, b: &KPoly) -> Result<KPoly, Split> {
    let mut a = kpoly_normalize(a.clone())?;
    let mut b = kpoly_normalize(b.clone())?;
    while !b.is_empty() {
        let r = kpoly_rem(&a, &b)?;
        a = b;
        b = r;
    }
    if let Some(lc) = a.last() {
        let inv = lc.invert_d5()?;
        a = a.iter().map(|c| c * &inv).collect();
    }
    Ok(a)
}

/// Eliminates `x_eliminate` from a zero-dimensional system in two variables
/// and returns a monic polynomial in `x_keep` whose roots contain every
/// solution coordinate.
pub fn eliminate_to_minimal_poly(
    relations: &[MultiPoly],
    eliminate: usize,
    keep: usize,
) -> Result<UniPoly, NfError> {
    let (with, without): (Vec<&MultiPoly>, Vec<&MultiPoly>) =
        relations.iter().partition(|r| r.uses_var(eliminate));
    let mut acc = UniPoly::zero();
    for r in without {
        acc = acc.gcd(&r.to_uni(keep)?);
    }
    for (i, p) in with.iter().enumerate() {
        for q in &with[i + 1..] {
            let r = resultant(p, q, eliminate)?;
            acc = acc.gcd(&r.to_uni(keep)?);
        }
    }
    if acc.is_zero() {
        return Err(NfError::PositiveDimensional);
    }
    Ok(acc.monic())
}

/// Projective point with coordinates in a number field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicPoint {
    pub field: Arc<NumberField>,
    pub coords: Vec<NfElem>,
}

impl AlgebraicPoint {
    /// Scales so that the first nonzero coordinate becomes one.
    pub fn normalized(&self) -> Result<AlgebraicPoint, Split> {
        for c in &self.coords {
            if !c.is_zero_d5()? {
                let inv = c.invert_d5()?;
                return Ok(AlgebraicPoint {
                    field: Arc::clone(&self.field),
                    coords: self.coords.iter().map(|x| x * &inv).collect(),
                });
            }
        }
        Ok(self.clone())
    }
}

/// Squarefree monic part of a polynomial, usable as a modulus.
pub fn squarefree_modulus(p: &UniPoly) -> UniPoly {
    squarefree_part(p).monic()
}
