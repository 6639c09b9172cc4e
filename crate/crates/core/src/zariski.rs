//! Sextics `a*f3^2 + b*f2^3` built from a conic and a cubic, and the check
//! that such a curve has exactly six cusps, all on the conic.

use serde::Serialize;
use thiserror::Error;

use crate::number_field::eval_at;
use crate::numerology::genus;
use crate::poly::{MultiPoly, Rational, UniPoly};
use crate::singularities::{
    is_smooth, singular_scheme, transversal_intersection, CurveError, PlaneCurve, SingularClass,
    SingularityReport, SingularityType,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZariskiError {
    #[error("f2 must be a form of degree 2")]
    ConicDegree,
    #[error("f3 must be a form of degree 3")]
    CubicDegree,
    #[error("coefficients a and b must be nonzero")]
    ZeroCoefficient,
    #[error("a*f3^2 + b*f2^3 vanishes identically")]
    ZeroSextic,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiInput {
    pub f2: MultiPoly,
    pub f3: MultiPoly,
    pub a: Rational,
    pub b: Rational,
}

impl ZariskiInput {
    /// `f3^2 - f2^3`.
    pub fn new(f2: MultiPoly, f3: MultiPoly) -> Self {
        ZariskiInput {
            f2,
            f3,
            a: Rational::from_integer(1.into()),
            b: Rational::from_integer((-1).into()),
        }
    }

    fn check(&self) -> Result<(), ZariskiError> {
        let form_of = |p: &MultiPoly, d| p.is_homogeneous() && p.total_degree() == Some(d) && p.support_len() <= 3;
        if !form_of(&self.f2, 2) {
            return Err(ZariskiError::ConicDegree);
        }
        if !form_of(&self.f3, 3) {
            return Err(ZariskiError::CubicDegree);
        }
        if num_traits::Zero::is_zero(&self.a) || num_traits::Zero::is_zero(&self.b) {
            return Err(ZariskiError::ZeroCoefficient);
        }
        Ok(())
    }
}

pub fn build_sextic(input: &ZariskiInput) -> Result<PlaneCurve, ZariskiError> {
    input.check()?;
    let f = &input.f3.pow(2).scale(&input.a) + &input.f2.pow(3).scale(&input.b);
    if f.is_zero() {
        return Err(ZariskiError::ZeroSextic);
    }
    Ok(PlaneCurve::new(f)?)
}

/// Checks the chain rule `d(a f3^2 + b f2^3) = 2a f3 df3 + 3b f2^2 df2` as an
/// exact identity in each variable.
pub fn gradient_identity_check(input: &ZariskiInput) -> bool {
    let f = &input.f3.pow(2).scale(&input.a) + &input.f2.pow(3).scale(&input.b);
    let two_a = &input.a * Rational::from_integer(2.into());
    let three_b = &input.b * Rational::from_integer(3.into());
    (0..3).all(|i| {
        let rhs = &(&input.f3 * &input.f3.derivative(i)).scale(&two_a)
            + &(&input.f2.pow(2) * &input.f2.derivative(i)).scale(&three_b);
        f.derivative(i) == rhs
    })
}

/// Minimal polynomials of the affine coordinates `x0/x2` and `x1/x2` of the
/// singular points.
#[derive(Debug, Clone, Serialize)]
pub struct CuspCoordinates {
    pub x0_minpoly: String,
    pub x1_minpoly: String,
    /// Whether the `x1` coordinates are the square roots of the `x0`
    /// coordinates, i.e. `x1_minpoly(t) = x0_minpoly(t^2)`.
    pub x1_is_sqrt_of_x0: bool,
    /// Whether `x0^2 + x1^2 = 1` at every singular point.
    pub on_unit_circle: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SexticReport {
    pub sextic: String,
    pub conic_smooth: bool,
    pub cubic_smooth: bool,
    pub transverse: bool,
    pub intersection_points: usize,
    pub gradient_identity_ok: bool,
    pub singular: Option<SingularityReport>,
    /// The singular locus is exactly the intersection of conic and cubic.
    pub singular_locus_is_intersection: bool,
    pub cusp_count: usize,
    pub all_cusps_classified: bool,
    pub all_cusps_on_conic: bool,
    pub genus: Option<i64>,
    pub irreducible: &'static str,
    pub cusp_coordinates: Option<CuspCoordinates>,
    pub verified: bool,
    pub failures: Vec<String>,
}

fn describe(class: &SingularClass) -> String {
    let kind = match &class.kind {
        SingularityType::Smooth => "smooth point".to_string(),
        SingularityType::Node => "node".to_string(),
        SingularityType::Cusp => "cusp".to_string(),
        SingularityType::Other {
            multiplicity,
            quadratic_rank,
        } => format!("point of multiplicity {multiplicity} (quadratic rank {quadratic_rank})"),
    };
    let coords: Vec<String> = class.coords.iter().map(ToString::to_string).collect();
    if class.degree() == 1 {
        format!("{kind} at [{}]", coords.join(":"))
    } else {
        format!(
            "{} conjugate {kind}s at [{}] with t a root of {}",
            class.degree(),
            coords.join(":"),
            class.field.modulus()
        )
    }
}

fn cusp_coordinates(report: &SingularityReport) -> Option<CuspCoordinates> {
    let mut m0 = UniPoly::one();
    let mut m1 = UniPoly::one();
    let mut circle = true;
    for class in report.classes.iter().filter(|c| c.kind == SingularityType::Cusp) {
        let inv = class.coords[2].invert().ok()?;
        let x0 = &class.coords[0] * &inv;
        let x1 = &class.coords[1] * &inv;
        m0 = &m0 * &x0.minimal_polynomials();
        m1 = &m1 * &x1.minimal_polynomials();
        let s = &(&x0 * &x0) + &(&x1 * &x1);
        circle &= (&s - &class.field.one()).is_zero();
    }
    let m0 = crate::number_field::squarefree_modulus(&m0);
    let m1 = crate::number_field::squarefree_modulus(&m1);
    let t2 = UniPoly::x().pow(2);
    Some(CuspCoordinates {
        x1_is_sqrt_of_x0: m0.compose(&t2).monic() == m1,
        x0_minpoly: m0.to_string(),
        x1_minpoly: m1.to_string(),
        on_unit_circle: circle,
    })
}

pub fn verify_six_cusps(input: &ZariskiInput, seed: u64) -> Result<SexticReport, ZariskiError> {
    let sextic = build_sextic(input)?;
    let conic = PlaneCurve::new(input.f2.clone())?;
    let cubic = PlaneCurve::new(input.f3.clone())?;
    let mut failures = Vec::new();

    let conic_smooth = match is_smooth(&conic) {
        Ok(v) => v,
        Err(CurveError::NonReduced) => false,
        Err(e) => return Err(e.into()),
    };
    let cubic_smooth = match is_smooth(&cubic) {
        Ok(v) => v,
        Err(CurveError::NonReduced) => false,
        Err(e) => return Err(e.into()),
    };
    let (transverse, intersection_points) = transversal_intersection(&conic, &cubic, seed)?;
    if !conic_smooth {
        failures.push("the conic is singular".to_string());
    }
    if !cubic_smooth {
        failures.push("the cubic is singular".to_string());
    }
    if !transverse {
        failures.push(format!(
            "conic and cubic are not transverse ({intersection_points} distinct intersection points)"
        ));
    }
    let gradient_identity_ok = gradient_identity_check(input);
    if !gradient_identity_ok {
        failures.push("gradient identity failed".to_string());
    }

    let singular = match singular_scheme(&sextic, seed) {
        Ok(r) => Some(r),
        Err(CurveError::NonReduced) => {
            failures.push("the sextic is non-reduced".to_string());
            None
        }
        Err(e) => return Err(e.into()),
    };

    let mut cusp_count = 0;
    let mut nodes = 0;
    let mut all_classified = true;
    let mut cusps_on_conic = true;
    let mut all_on_both = true;
    let mut off_intersection = Vec::new();
    if let Some(r) = &singular {
        for class in &r.classes {
            let on_conic = eval_at(&input.f2, &class.coords, &class.field).is_zero();
            let on_cubic = eval_at(&input.f3, &class.coords, &class.field).is_zero();
            match class.kind {
                SingularityType::Cusp => {
                    cusp_count += class.degree();
                    cusps_on_conic &= on_conic;
                }
                SingularityType::Node => {
                    nodes += class.degree();
                    all_classified = false;
                }
                _ => all_classified = false,
            }
            all_on_both &= on_conic && on_cubic;
            if !(on_conic && on_cubic) {
                off_intersection.push(describe(class));
            }
        }
    }
    let scheme_degree = singular.as_ref().map_or(0, |r| r.scheme_degree);
    let singular_locus_is_intersection =
        singular.is_some() && all_on_both && scheme_degree == intersection_points;
    let all_cusps_on_conic = singular.is_some() && cusps_on_conic;
    if singular.is_some() && !singular_locus_is_intersection {
        let mut msg = "singular locus differs from the conic-cubic intersection".to_string();
        if !off_intersection.is_empty() {
            msg.push_str(&format!("; extra singular points: {}", off_intersection.join(", ")));
        }
        failures.push(msg);
    }
    if !all_classified {
        failures.push("some singular points are not ordinary cusps".to_string());
    }
    if cusp_count != 6 {
        failures.push(format!("found {cusp_count} cusps instead of 6"));
    }
    let genus = (all_classified || nodes > 0)
        .then(|| genus(6, nodes as i64, cusp_count as i64))
        .filter(|g| *g >= 0 && singular.is_some());
    let cusp_coordinates = singular.as_ref().and_then(cusp_coordinates);
    let verified = failures.is_empty();
    Ok(SexticReport {
        sextic: sextic.poly().to_string(),
        conic_smooth,
        cubic_smooth,
        transverse,
        intersection_points,
        gradient_identity_ok,
        singular,
        singular_locus_is_intersection,
        cusp_count,
        all_cusps_classified: all_classified,
        all_cusps_on_conic,
        genus,
        irreducible: "assumed, not computed",
        cusp_coordinates,
        verified,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;
    use crate::poly::int;

    fn input(f2: &str, f3: &str) -> ZariskiInput {
        ZariskiInput::new(parse_poly(f2).unwrap(), parse_poly(f3).unwrap())
    }

    #[test]
    fn builds_expected_sextic() {
        let c = build_sextic(&input("x0^2", "x1^3")).unwrap();
        assert_eq!(c.poly(), &parse_poly("x1^6-x0^6").unwrap());
        let mut bad = input("x0^2", "x1^3");
        bad.a = int(0);
        bad.b = int(1);
        assert_eq!(build_sextic(&bad), Err(ZariskiError::ZeroCoefficient));
        assert_eq!(build_sextic(&input("x0", "x1^3")), Err(ZariskiError::ConicDegree));
    }

    #[test]
    fn gradient_identity() {
        assert!(gradient_identity_check(&input("x0^2", "x1^3")));
        assert!(gradient_identity_check(&input("x0^2+x1^2-x2^2", "x0^3+x0*x2^2-x1^2*x2")));
    }

    #[test]
    fn double_line_conic_fails() {
        let r = verify_six_cusps(&input("x0^2", "x0^3+x0*x2^2-x1^2*x2"), 0);
        match r {
            Ok(rep) => {
                assert!(!rep.conic_smooth);
                assert!(!rep.verified);
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn shared_component_rejected() {
        let r = verify_six_cusps(&input("x0^2+x1^2-x2^2", "x0^3+x0*x1^2-x0*x2^2"), 0);
        assert!(matches!(r, Err(ZariskiError::Curve(CurveError::SharedComponent))));
    }
}
