use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{format_rational, ExactRing, Monomial, PolyError, Rational, UniPoly, MAX_VARS};

/// Sparse polynomial in up to [`MAX_VARS`] variables with rational coefficients.
///
/// No zero coefficient is ever stored. Equality compares terms only; `nvars`
/// is the ambient variable count and does not take part in it.
#[derive(Clone, Default)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "x{index} outside {nvars} variables");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(index), Rational::one());
        p
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Same polynomial with a larger ambient variable count.
    pub fn with_nvars(mut self, nvars: usize) -> Self {
        assert!(nvars >= self.support_len() && nvars <= MAX_VARS);
        self.nvars = nvars;
        self
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if Zero::is_zero(&c) {
            return;
        }
        debug_assert!(m.support_len() <= self.nvars.max(m.support_len()));
        if m.support_len() > self.nvars {
            self.nvars = m.support_len();
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if Zero::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::ONE)
    }

    /// Leading term in graded-lex order.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Rational)> {
        self.terms.pop_last()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    pub fn support_len(&self) -> usize {
        self.terms.keys().map(Monomial::support_len).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> MultiPoly {
        MultiPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if Zero::is_zero(c) {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> MultiPoly {
        if Zero::is_zero(c) {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars.max(mono.support_len()),
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        ExactRing::pow(self, exp)
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                out.add_term(m.with_exp(var, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Coefficients with respect to `var`, indexed by power of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            out[e].add_term(m.with_exp(var, 0), c.clone());
        }
        out
    }

    /// Inverse of [`MultiPoly::coefficients_in`].
    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                debug_assert_eq!(m.exp(var), 0);
                out.add_term(m.with_exp(var, e as u16), a.clone());
            }
        }
        out
    }

    /// Substitutes `images[i]` for `x_i`; the result lives in `nvars` variables.
    pub fn compose(&self, images: &[MultiPoly], nvars: usize) -> MultiPoly {
        let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            let deg = self.degree_in(i).unwrap_or(0) as usize;
            let mut pw = vec![MultiPoly::one(nvars)];
            for k in 1..=deg {
                let next = &pw[k - 1] * img;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(nvars, c.clone());
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Substitutes `value` for `x_var`.
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> MultiPoly {
        let nvars = self.nvars.max(value.nvars);
        let images: Vec<MultiPoly> = (0..nvars)
            .map(|i| if i == var { value.clone() } else { MultiPoly::var(nvars, i) })
            .collect();
        self.compose(&images, nvars)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.eval_with(point, |c| c.clone())
    }

    /// Evaluates in any commutative ring that the coefficients map into.
    pub fn eval_with<T, F>(&self, point: &[T], lift: F) -> T
    where
        T: Clone,
        for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
        F: Fn(&Rational) -> T,
    {
        let one = lift(&Rational::one());
        let mut powers: Vec<Vec<T>> = Vec::with_capacity(point.len());
        for (i, x) in point.iter().enumerate() {
            let deg = self.degree_in(i).unwrap_or(0) as usize;
            let mut pw = vec![one.clone()];
            for k in 1..=deg {
                let next = &pw[k - 1] * x;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc = lift(&Rational::zero());
        for (m, c) in &self.terms {
            let mut t = lift(c);
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = d.leading_term()?;
        if d.is_constant() {
            return Some(self.scale(&lc.recip()));
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars.max(d.nvars));
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            let step = d.mul_monomial(&qm, &qc);
            rem = &rem - &step;
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Splits off the rational content: `self = content * primitive` where the
    /// primitive part has coprime integer coefficients and positive leading
    /// coefficient.
    pub fn content_and_primitive(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::zero(), self.clone());
        }
        let content = super::uni::rational_content(self.terms.values());
        let content = if self.leading_term().unwrap().1.is_negative() {
            -content
        } else {
            content
        };
        (content.clone(), self.scale(&content.recip()))
    }

    pub fn primitive(&self) -> MultiPoly {
        self.content_and_primitive().1
    }

    /// The univariate polynomial in `var`, provided no other variable occurs.
    pub fn to_uni(&self, var: usize) -> Result<UniPoly, PolyError> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(var).unwrap_or(0) as usize + 1];
        for (m, c) in &self.terms {
            if m.with_exp(var, 0) != Monomial::ONE {
                return Err(PolyError::NotUnivariate);
            }
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn from_uni(nvars: usize, var: usize, p: &UniPoly) -> MultiPoly {
        MultiPoly::from_terms(
            nvars,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(e, c)| (Monomial::ONE.with_exp(var, e as u16), c.clone())),
        )
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs<F: Fn(&Rational) -> Rational>(&self, f: F) -> MultiPoly {
        MultiPoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl ExactRing for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.nvars)
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
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
    fn div_exact(&self, other: &Self) -> Option<Self> {
        MultiPoly::div_exact(self, other)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.nvars = out.nvars.max(rhs.nvars);
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.nvars = out.nvars.max(rhs.nvars);
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars.max(rhs.nvars));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if m.is_one() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(4, i)
    }

    #[test]
    fn derivative_power_rule() {
        let p = x(0).pow(3);
        assert_eq!(p.derivative(0), x(0).pow(2).scale(&int(3)));
        assert!(p.derivative(1).is_zero());
        assert!(MultiPoly::constant(3, int(7)).derivative(0).is_zero());
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = &x(0) + &x(1).scale(&rat(1, 2));
        let b = &(&x(2) * &x(0)) - &MultiPoly::constant(4, int(3));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!((&prod + &x(3)).div_exact(&b), None);
    }

    #[test]
    fn display_is_canonical() {
        let p = &(&x(1) + &x(0)) - &MultiPoly::constant(4, rat(1, 2));
        assert_eq!(p.to_string(), "x0+x1-1/2");
        assert_eq!((-&x(0).pow(2)).to_string(), "-x0^2");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn coefficient_split_roundtrip() {
        let p = &(&x(0).pow(2) * &x(3)) + &(&x(1) * &x(3).pow(3));
        let cs = p.coefficients_in(3);
        assert_eq!(cs.len(), 4);
        assert_eq!(MultiPoly::from_coefficients_in(4, 3, &cs), p);
    }
}
