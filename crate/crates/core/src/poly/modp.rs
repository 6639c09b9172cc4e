//! Dense polynomials over a prime field `F_p` with `p < 2^32`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{Rational, UniPoly};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_below(limit: u64) -> impl Iterator<Item = u64> {
    (2..limit).filter(|&n| is_prime(n))
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn reduce_bigint(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Image of a rational in `F_p`, or `None` if `p` divides the denominator.
pub fn reduce_rational(r: &Rational, p: u64) -> Option<u64> {
    let d = reduce_bigint(r.denom(), p);
    if d == 0 {
        return None;
    }
    Some(reduce_bigint(r.numer(), p) * inv_mod(d, p) % p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMod {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyMod {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        assert!(p < (1 << 32), "modulus too large");
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyMod { p, coeffs }
    }

    pub fn from_bigints(ints: &[BigInt], p: u64) -> Self {
        Self::new(ints.iter().map(|c| reduce_bigint(c, p)).collect(), p)
    }

    /// Reduction of a rational polynomial, or `None` on a bad denominator.
    pub fn from_uni(f: &UniPoly, p: u64) -> Option<Self> {
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| reduce_rational(c, p))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new(coeffs, p))
    }

    pub fn x(p: u64) -> Self {
        Self::new(vec![0, 1], p)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % self.p)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p);
                Self::new(self.coeffs.iter().map(|c| c * inv % self.p).collect(), self.p)
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &Vec<u64>, k: usize| v.get(k).copied().unwrap_or(0);
        Self::new(
            (0..n)
                .map(|k| (get(&self.coeffs, k) + self.p - get(&other.coeffs, k)) % self.p)
                .collect(),
            self.p,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new(), self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self::new(out, self.p)
    }

    pub fn rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        let inv = inv_mod(*d.coeffs.last().unwrap(), self.p);
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let q = r[k] * inv % self.p;
            if q != 0 {
                for (i, &c) in d.coeffs.iter().enumerate() {
                    let idx = k - dd + i;
                    r[idx] = (r[idx] + self.p - q * c % self.p) % self.p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Self::new(r, self.p)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * (k as u64 % self.p) % self.p)
                .collect(),
            self.p,
        )
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// `base^exp mod self`.
    pub fn pow_rem(&self, base: &Self, mut exp: u128) -> Self {
        let mut acc = Self::new(vec![1], self.p).rem(self);
        let mut b = base.rem(self);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&b).rem(self);
            }
            b = b.mul(&b).rem(self);
            exp >>= 1;
        }
        acc
    }

    /// All roots in `F_p` by exhaustive evaluation.
    pub fn roots_bruteforce(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }

    /// Number of distinct roots in `F_p`.
    pub fn count_distinct_roots(&self) -> usize {
        match self.degree() {
            None => self.p as usize,
            Some(0) => 0,
            Some(_) => {
                let xp = self.pow_rem(&Self::x(self.p), self.p as u128);
                let g = self.gcd(&xp.sub(&Self::x(self.p)));
                g.degree().unwrap_or(0)
            }
        }
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let x = Self::x(self.p);
        let frob = |g: &Self, times: usize| -> Self {
            let mut h = g.clone();
            for _ in 0..times {
                h = f.pow_rem(&h, self.p as u128);
            }
            h
        };
        let xpn = frob(&x, n);
        if !xpn.sub(&x).rem(&f).is_zero() {
            return false;
        }
        for q in primes_below(n as u64 + 1).filter(|q| (n as u64).is_multiple_of(*q)) {
            let h = frob(&x, n / q as usize).sub(&x);
            if f.gcd(&h).degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

/// A prime not dividing the leading coefficient for which the integer
/// polynomial stays squarefree.
pub fn good_prime(ints: &[BigInt]) -> u64 {
    let lc = ints.last().expect("nonzero polynomial");
    for p in primes_below(1 << 20).skip(1) {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        if PolyMod::from_bigints(ints, p).is_squarefree() {
            return p;
        }
    }
    panic!("no good prime found for a squarefree polynomial")
}
