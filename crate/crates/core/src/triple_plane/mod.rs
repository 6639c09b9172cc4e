//! Cubic surfaces `x3^3 + c1*f2*x3 + c2*f3` viewed as triple covers of the
//! plane: the branch curve, the pencil-like family of cubics through the
//! canonical curve, and the search for projection centers.

mod solver;
mod system;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::elimination::rng_for;
use crate::poly::{int, rank_and_kernel, resultant, Monomial, MultiPoly, Rational};
use crate::singularities::{looks_reduced, PlaneCurve};

pub use solver::{solve_projection_centers, solve_projection_centers_with, CenterSolution, SolutionSet, DEFAULT_CHART_ORDER};
pub use system::{build_condition_system, BilinearRow, BilinearSystem, ROW_LABELS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("f{expected} must be a form of degree {expected} in x0, x1, x2")]
    DegreeMismatch { expected: u32 },
    #[error("coefficients c1 and c2 must be nonzero")]
    ZeroCoefficient,
    #[error("resultant vanishes identically; the surface is degenerate")]
    DegenerateSurface,
    #[error("no generic projection found while solving")]
    Degenerate,
}

/// Which coefficients `(c1, c2)` to put in front of `f2*x3` and `f3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `(c1, c2) = (-3, 2)`; the branch curve is `108*(f3^2 - f2^3)`.
    Lemma,
    /// `(c1, c2) = (1, 1)`.
    Corollary,
}

impl Convention {
    pub fn coefficients(self) -> (Rational, Rational) {
        match self {
            Convention::Lemma => (int(-3), int(2)),
            Convention::Corollary => (int(1), int(1)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicSurface {
    pub f2: MultiPoly,
    pub f3: MultiPoly,
    pub c1: Rational,
    pub c2: Rational,
    f: MultiPoly,
}

fn plane_form(p: &MultiPoly, d: u32) -> bool {
    p.is_homogeneous() && p.total_degree() == Some(d) && p.support_len() <= 3
}

pub fn build_cubic_surface(f2: &MultiPoly, f3: &MultiPoly, c1: &Rational, c2: &Rational) -> Result<CubicSurface, TripleError> {
    if !plane_form(f2, 2) {
        return Err(TripleError::DegreeMismatch { expected: 2 });
    }
    if !plane_form(f3, 3) {
        return Err(TripleError::DegreeMismatch { expected: 3 });
    }
    if c1.is_zero() || c2.is_zero() {
        return Err(TripleError::ZeroCoefficient);
    }
    let f2 = f2.clone().with_nvars(4);
    let f3 = f3.clone().with_nvars(4);
    let x3 = MultiPoly::var(4, 3);
    let f = &(&x3.pow(3) + &(&f2 * &x3).scale(c1)) + &f3.scale(c2);
    Ok(CubicSurface {
        f2,
        f3,
        c1: c1.clone(),
        c2: c2.clone(),
        f,
    })
}

impl CubicSurface {
    pub fn with_convention(f2: &MultiPoly, f3: &MultiPoly, convention: Convention) -> Result<Self, TripleError> {
        let (c1, c2) = convention.coefficients();
        build_cubic_surface(f2, f3, &c1, &c2)
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.f
    }

    /// `dF/dx3 = 3*x3^2 + c1*f2`.
    pub fn polar(&self) -> MultiPoly {
        self.f.derivative(3)
    }

    /// The quadric `dF/dx3` with its content removed.
    pub fn quadric(&self) -> MultiPoly {
        self.polar().primitive()
    }

    /// `-(4*c1^3*f2^3 + 27*c2^2*f3^2)` with the sign the kernel's resultant
    /// produces, i.e. `4*c1^3*f2^3 + 27*c2^2*f3^2`.
    pub fn expected_branch_curve(&self) -> MultiPoly {
        let a = self.f2.pow(3).scale(&(int(4) * self.c1.pow(3)));
        let b = self.f3.pow(2).scale(&(int(27) * self.c2.pow(2)));
        (&a + &b).with_nvars(3)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchLocus {
    #[serde(serialize_with = "crate::serialize_display")]
    pub sextic: MultiPoly,
    #[serde(serialize_with = "crate::serialize_display")]
    pub expected: MultiPoly,
    /// `sextic == 4*c1^3*f2^3 + 27*c2^2*f3^2` exactly.
    pub identity_holds: bool,
    pub reduced: bool,
}

/// `Res_x3(F, dF/dx3)` as a plane sextic.
pub fn branch_locus(s: &CubicSurface) -> Result<BranchLocus, TripleError> {
    let r = resultant(&s.f, &s.polar(), 3).map_err(|_| TripleError::DegenerateSurface)?;
    if r.is_zero() {
        return Err(TripleError::DegenerateSurface);
    }
    let sextic = r.with_nvars(3);
    let expected = s.expected_branch_curve();
    let curve = PlaneCurve::new(sextic.clone()).map_err(|_| TripleError::DegenerateSurface)?;
    let reduced = looks_reduced(&curve, &mut rng_for(&sextic.to_string(), 0));
    Ok(BranchLocus {
        identity_holds: sextic == expected,
        sextic,
        expected,
        reduced,
    })
}

/// `G(beta) = F + sum_j beta_j * x_j * dF/dx3`, stored by its linear pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyG {
    pub base: MultiPoly,
    pub directions: [MultiPoly; 4],
}

impl FamilyG {
    pub fn at(&self, beta: &[Rational; 4]) -> MultiPoly {
        let mut g = self.base.clone();
        for (b, d) in beta.iter().zip(&self.directions) {
            g = &g + &d.scale(b);
        }
        g
    }
}

pub fn family_g(s: &CubicSurface) -> FamilyG {
    let q = s.polar();
    FamilyG {
        base: s.f.clone(),
        directions: std::array::from_fn(|j| &MultiPoly::var(4, j) * &q),
    }
}

/// The twenty cubic monomials in x0..x3, grlex descending.
fn cubic_monomials() -> Vec<Monomial> {
    let mut out = Vec::with_capacity(20);
    for a in (0..=3u16).rev() {
        for b in (0..=3 - a).rev() {
            for c in (0..=3 - a - b).rev() {
                out.push(Monomial::new([a, b, c, 3 - a - b - c]));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Independence {
    pub rank: usize,
    /// A maximal independent subset of `F, x0*Q, x1*Q, x2*Q, x3*Q`.
    pub basis: Vec<String>,
}

/// Rank of the coefficient matrix of `{F, x_i*Q}` where `Q` is the quadric.
pub fn cubic_space_independence(s: &CubicSurface) -> Independence {
    cubic_span(&s.f, &s.quadric())
}

/// Rank of the span of `{f, x0*q, x1*q, x2*q, x3*q}` inside the cubics.
pub fn cubic_span(f: &MultiPoly, q: &MultiPoly) -> Independence {
    let mut gens = vec![("F".to_string(), f.clone())];
    for i in 0..4 {
        gens.push((format!("x{i}*Q"), &MultiPoly::var(4, i) * q));
    }
    let monos = cubic_monomials();
    let row = |p: &MultiPoly| monos.iter().map(|m| p.coeff(m)).collect::<Vec<_>>();
    let mut basis = Vec::new();
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    for (name, g) in &gens {
        kept.push(row(g));
        let (rank, _) = rank_and_kernel(&kept, monos.len());
        if rank < kept.len() {
            kept.pop();
        } else {
            basis.push(name.clone());
        }
    }
    Independence { rank: kept.len(), basis }
}
