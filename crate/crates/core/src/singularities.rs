//! Singular points of projective plane curves and their classification.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::elimination::{rng_for, solve_zero_dim, PointClass, SolveError, MAX_ATTEMPTS};
use crate::number_field::{
    change_generator, eval_at, with_splitting, Certificate, NfElem, NfError, NumberField, Split,
};
use crate::poly::{format_rational, int, resultant, squarefree_part, MultiPoly, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("zero polynomial does not define a curve")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("plane curves use the variables x0, x1, x2 only")]
    TooManyVariables,
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("non-reduced curve")]
    NonReduced,
    #[error("curves share a component")]
    SharedComponent,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("all coordinates of the point are zero")]
    ZeroPoint,
    #[error("no generic coordinate change found after {MAX_ATTEMPTS} attempts")]
    Degenerate,
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    NumberField(#[from] NfError),
}

/// A projective plane curve `f(x0, x1, x2) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCurve {
    f: MultiPoly,
    degree: u32,
}

impl PlaneCurve {
    pub fn new(f: MultiPoly) -> Result<Self, CurveError> {
        if f.is_zero() {
            return Err(CurveError::ZeroPolynomial);
        }
        if f.support_len() > 3 {
            return Err(CurveError::TooManyVariables);
        }
        if !f.is_homogeneous() {
            return Err(CurveError::NotHomogeneous);
        }
        let degree = f.total_degree().unwrap();
        if degree == 0 {
            return Err(CurveError::WrongDegree {
                expected: 1,
                found: 0,
            });
        }
        Ok(PlaneCurve {
            f: f.with_nvars(3),
            degree,
        })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `f(A x)` for an integer matrix `A`.
    pub fn transformed(&self, a: &[[i64; 3]; 3]) -> PlaneCurve {
        PlaneCurve {
            f: self.f.compose(&linear_images(a), 3),
            degree: self.degree,
        }
    }
}

fn linear_images(a: &[[i64; 3]; 3]) -> Vec<MultiPoly> {
    (0..3)
        .map(|i| {
            (0..3).fold(MultiPoly::zero(3), |acc, j| {
                &acc + &MultiPoly::var(3, j).scale(&int(a[i][j]))
            })
        })
        .collect()
}

fn det3(a: &[[i64; 3]; 3]) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

fn random_gl3<R: Rng>(rng: &mut R) -> [[i64; 3]; 3] {
    loop {
        let mut a = [[0i64; 3]; 3];
        for row in a.iter_mut() {
            for c in row.iter_mut() {
                *c = rng.gen_range(-3..=3);
            }
        }
        if det3(&a) != 0 {
            return a;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SingularityType {
    Smooth,
    Node,
    Cusp,
    Other { multiplicity: u32, quadratic_rank: u32 },
}

/// A Galois orbit of singular points: coordinates live in `Q[t]/(m)`.
#[derive(Debug, Clone)]
pub struct SingularClass {
    pub field: Arc<NumberField>,
    /// Projective coordinates in the original frame.
    pub coords: [NfElem; 3],
    pub kind: SingularityType,
}

impl SingularClass {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RationalPoint {
    pub coords: [String; 3],
    pub kind: SingularityType,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldPoint {
    pub modulus: String,
    pub degree: usize,
    pub certificate: Certificate,
    /// Coordinates as polynomials in the class `t` of the modulus.
    pub coords: [String; 3],
    pub kind: SingularityType,
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularityReport {
    /// Number of geometric singular points.
    pub scheme_degree: usize,
    /// Degree of the gcd of the raw eliminants; each point is counted with
    /// its local Jacobian length along the projection.
    pub raw_eliminant_degree: usize,
    /// True when the squarefree eliminant has exactly one singular point over
    /// each of its roots.
    pub reduced: bool,
    pub rational_points: Vec<RationalPoint>,
    pub field_points: Vec<FieldPoint>,
    pub shear_used: [[i64; 3]; 3],
    #[serde(skip)]
    pub classes: Vec<SingularClass>,
}

fn restricted_to_line(f: &MultiPoly, a: &[i64; 3], b: &[i64; 3]) -> UniPoly {
    let s = MultiPoly::var(1, 0);
    let images: Vec<MultiPoly> = (0..3)
        .map(|i| &MultiPoly::constant(1, int(a[i])) + &s.scale(&int(b[i])))
        .collect();
    f.compose(&images, 1).to_uni(0).expect("univariate")
}

/// True unless every tested line meets the curve with a repeated root.
pub(crate) fn looks_reduced<R: Rng>(c: &PlaneCurve, rng: &mut R) -> bool {
    for _ in 0..MAX_ATTEMPTS {
        let a: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        let b: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        let r = restricted_to_line(&c.f, &a, &b);
        if r.degree() == Some(c.degree as usize) && r.is_squarefree() {
            return true;
        }
    }
    false
}

fn canonical_key(tag: &str, polys: &[&MultiPoly]) -> String {
    let mut s = tag.to_string();
    for p in polys {
        s.push('|');
        s.push_str(&p.to_string());
    }
    s
}

/// Evaluates `A * (y0, y1, 1)` over a field.
fn apply_matrix(a: &[[i64; 3]; 3], y: &[NfElem; 3]) -> [NfElem; 3] {
    std::array::from_fn(|i| {
        let mut acc = y[0].scale(&int(a[i][0]));
        for j in 1..3 {
            acc = &acc + &y[j].scale(&int(a[i][j]));
        }
        acc
    })
}

/// Singular points of a reduced plane curve.
pub fn singular_scheme(c: &PlaneCurve, seed: u64) -> Result<SingularityReport, CurveError> {
    let mut rng = rng_for(&canonical_key("singular", &[&c.f]), seed);
    if !looks_reduced(c, &mut rng) {
        return Err(CurveError::NonReduced);
    }
    if c.degree == 1 {
        return Ok(SingularityReport {
            scheme_degree: 0,
            raw_eliminant_degree: 0,
            reduced: true,
            rational_points: Vec::new(),
            field_points: Vec::new(),
            shear_used: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            classes: Vec::new(),
        });
    }
    for _ in 0..MAX_ATTEMPTS {
        let a = random_gl3(&mut rng);
        let g = c.transformed(&a);
        // No singular point on the line at infinity: it meets the curve in
        // distinct points away from [0:1:0].
        let at_inf = restricted_to_line(&g.f, &[0, 1, 0], &[1, 0, 0]);
        if at_inf.degree() != Some(c.degree as usize) || !at_inf.is_squarefree() {
            continue;
        }
        let one = MultiPoly::one(2);
        let dehom = [MultiPoly::var(2, 0), MultiPoly::var(2, 1), one];
        let partials: Vec<MultiPoly> = (0..3)
            .map(|i| g.f.derivative(i).compose(&dehom, 2))
            .collect();
        let classes = match solve_zero_dim(&partials, 2, &mut rng) {
            Ok(v) => v,
            Err(SolveError::Degenerate) => continue,
            Err(SolveError::PositiveDimensional) => return Err(CurveError::NonReduced),
        };
        let raw = raw_eliminant(&partials);
        let Some(raw) = raw else { continue };
        return Ok(build_report(c, &a, classes, &raw));
    }
    Err(CurveError::Degenerate)
}

/// Gcd of the pairwise resultants of the affine partials, eliminating `x1`.
fn raw_eliminant(partials: &[MultiPoly]) -> Option<UniPoly> {
    let mut g = UniPoly::zero();
    for i in 0..partials.len() {
        for j in i + 1..partials.len() {
            if !partials[i].uses_var(1) || !partials[j].uses_var(1) {
                continue;
            }
            let r = resultant(&partials[i], &partials[j], 1).ok()?;
            g = g.gcd(&r.to_uni(0).ok()?);
        }
    }
    Some(g)
}

fn build_report(c: &PlaneCurve, a: &[[i64; 3]; 3], classes: Vec<PointClass>, raw: &UniPoly) -> SingularityReport {
    let mut out = Vec::new();
    for class in classes {
        let field = class.field;
        let y = [class.coords[0].clone(), class.coords[1].clone(), field.one()];
        let x = apply_matrix(a, &y);
        for (f, kind) in classify_class(c, &x, &field) {
            let coords: [NfElem; 3] = std::array::from_fn(|i| x[i].reduce_into(&f));
            let (field, coords) = readable_generator(&f, coords);
            out.push(SingularClass { field, coords, kind });
        }
    }
    out.sort_by_key(|c| (c.degree(), c.field.modulus().to_string(), format!("{:?}", c.coords)));
    let scheme_degree: usize = out.iter().map(SingularClass::degree).sum();
    let radical_degree = if raw.is_zero() {
        0
    } else {
        squarefree_part(raw).degree().unwrap_or(0)
    };
    let mut rational_points = Vec::new();
    let mut field_points = Vec::new();
    for class in &out {
        if class.field.degree() == 1 {
            let coords = normalize_rational(&class.coords);
            rational_points.push(RationalPoint {
                coords: coords.map(|r| format_rational(&r)),
                kind: class.kind.clone(),
            });
        } else {
            field_points.push(FieldPoint {
                modulus: class.field.modulus().to_string(),
                degree: class.field.degree(),
                certificate: class.field.certificate().clone(),
                coords: std::array::from_fn(|i| class.coords[i].to_string()),
                kind: class.kind.clone(),
            });
        }
    }
    rational_points.sort_by(|p, q| p.coords.cmp(&q.coords));
    SingularityReport {
        scheme_degree,
        raw_eliminant_degree: raw.degree().unwrap_or(0),
        reduced: radical_degree == scheme_degree,
        rational_points,
        field_points,
        shear_used: *a,
        classes: out,
    }
}

/// Rewrites a class so that an affine coordinate, when it generates the
/// field, becomes the generator, and scales to a unit last coordinate.
fn readable_generator(k: &Arc<NumberField>, coords: [NfElem; 3]) -> (Arc<NumberField>, [NfElem; 3]) {
    let Some(pivot) = (0..3).rev().find(|&i| coords[i].invert().is_ok()) else {
        return (Arc::clone(k), coords);
    };
    let inv = coords[pivot].invert().expect("unit");
    let scaled: [NfElem; 3] = std::array::from_fn(|i| &coords[i] * &inv);
    if k.degree() == 1 {
        return (Arc::clone(k), scaled);
    }
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let candidates = [
        scaled[others[0]].clone(),
        scaled[others[1]].clone(),
        &scaled[others[0]] + &scaled[others[1]],
        &scaled[others[0]] - &scaled[others[1]].scale(&int(2)),
    ];
    for g in &candidates {
        if let Some((f, xs)) = change_generator(g, &scaled) {
            return (f, [xs[0].clone(), xs[1].clone(), xs[2].clone()]);
        }
    }
    (Arc::clone(k), scaled)
}

/// Scales a rational projective point so its last nonzero coordinate is one.
fn normalize_rational(coords: &[NfElem; 3]) -> [Rational; 3] {
    let r: [Rational; 3] = std::array::from_fn(|i| coords[i].as_rational().expect("rational point"));
    let pivot = r.iter().rev().find(|c| !c.is_zero()).cloned().unwrap_or_else(Rational::one);
    r.map(|c| c / &pivot)
}

/// True iff the curve has no singular points.
pub fn is_smooth(c: &PlaneCurve) -> Result<bool, CurveError> {
    Ok(singular_scheme(c, 0)?.scheme_degree == 0)
}

/// Taylor coefficient of `x_j^a x_l^b` at the point.
fn taylor(f: &MultiPoly, j: usize, l: usize, a: u32, b: u32, p: &[NfElem], k: &Arc<NumberField>) -> NfElem {
    let mut d = f.clone();
    for _ in 0..a {
        d = d.derivative(j);
    }
    for _ in 0..b {
        d = d.derivative(l);
    }
    let fact = |n: u32| (1..=n as i64).product::<i64>();
    eval_at(&d, p, k).scale(&Rational::new(1.into(), (fact(a) * fact(b)).into()))
}

fn classify_d5(c: &PlaneCurve, p: &[NfElem; 3], k: &Arc<NumberField>) -> Result<Result<SingularityType, CurveError>, Split> {
    let mut chart = None;
    for (i, x) in p.iter().enumerate() {
        if !x.is_zero_d5()? {
            chart = Some(i);
            break;
        }
    }
    let Some(i) = chart else {
        return Ok(Err(CurveError::ZeroPoint));
    };
    let inv = p[i].invert_d5()?;
    let q: Vec<NfElem> = p.iter().map(|x| x * &inv).collect();
    if !eval_at(&c.f, &q, k).is_zero_d5()? {
        return Ok(Err(CurveError::PointNotOnCurve));
    }
    let (j, l) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let t = |a, b| taylor(&c.f, j, l, a, b, &q, k);
    if !t(1, 0).is_zero_d5()? || !t(0, 1).is_zero_d5()? {
        return Ok(Ok(SingularityType::Smooth));
    }
    let (h20, h11, h02) = (t(2, 0), t(1, 1), t(0, 2));
    let disc = &(&h11 * &h11) - &(&h20 * &h02).scale(&int(4));
    if !disc.is_zero_d5()? {
        return Ok(Ok(SingularityType::Node));
    }
    let rank_zero = h20.is_zero_d5()? && h11.is_zero_d5()? && h02.is_zero_d5()?;
    if rank_zero {
        let mut m = 3;
        'order: while m <= c.degree {
            for a in 0..=m {
                if !t(a, m - a).is_zero_d5()? {
                    break 'order;
                }
            }
            m += 1;
        }
        return Ok(Ok(SingularityType::Other {
            multiplicity: m,
            quadratic_rank: 0,
        }));
    }
    // Direction of the tangent line.
    let (du, dv) = if h20.is_zero_d5()? {
        (k.one(), k.zero())
    } else {
        (-&h11, h20.scale(&int(2)))
    };
    let mut cubic = k.zero();
    for a in 0..=3u32 {
        let term = &(&t(a, 3 - a) * &du.pow(a)) * &dv.pow(3 - a);
        cubic = &cubic + &term;
    }
    Ok(Ok(if cubic.is_zero_d5()? {
        SingularityType::Other {
            multiplicity: 2,
            quadratic_rank: 1,
        }
    } else {
        SingularityType::Cusp
    }))
}

fn classify_class(c: &PlaneCurve, p: &[NfElem; 3], k: &Arc<NumberField>) -> Vec<(Arc<NumberField>, SingularityType)> {
    with_splitting(Arc::clone(k), |f| {
        let q: [NfElem; 3] = std::array::from_fn(|i| p[i].reduce_into(f));
        classify_d5(c, &q, f)
    })
    .into_iter()
    .map(|(f, r)| (f, r.expect("singular points lie on the curve")))
    .collect()
}

/// Local type of the curve at a point given over a number field.
pub fn classify_at_point(c: &PlaneCurve, p: &[NfElem; 3]) -> Result<SingularityType, CurveError> {
    let k = Arc::clone(p[0].field());
    match classify_d5(c, p, &k) {
        Ok(r) => r,
        Err(Split { factor }) => Err(NfError::ZeroDivisor(factor).into()),
    }
}

/// Rational-point convenience wrapper for [`classify_at_point`].
pub fn classify_at_rational_point(c: &PlaneCurve, p: &[Rational; 3]) -> Result<SingularityType, CurveError> {
    let q = NumberField::rationals();
    classify_at_point(c, &p.clone().map(|x| q.from_rational(&x)))
}

/// Whether two curves meet transversally, and in how many distinct points.
pub fn transversal_intersection(p: &PlaneCurve, q: &PlaneCurve, seed: u64) -> Result<(bool, usize), CurveError> {
    let mut rng = rng_for(&canonical_key("transversal", &[&p.f, &q.f]), seed);
    let full = (p.degree * q.degree) as usize;
    let mut best = None;
    let mut valid = 0;
    for _ in 0..MAX_ATTEMPTS {
        let a = random_gl3(&mut rng);
        let (pa, qa) = (p.transformed(&a), q.transformed(&a));
        let corner = [int(0), int(1), int(0)];
        if pa.f.eval(&corner).is_zero() || qa.f.eval(&corner).is_zero() {
            continue;
        }
        let dehom = [MultiPoly::var(2, 0), MultiPoly::var(2, 1), MultiPoly::one(2)];
        let (pd, qd) = (pa.f.compose(&dehom, 2), qa.f.compose(&dehom, 2));
        let r = resultant(&pd, &qd, 1).map_err(|_| CurveError::Degenerate)?;
        if r.is_zero() {
            return Err(CurveError::SharedComponent);
        }
        let r = r.to_uni(0).expect("univariate");
        if r.degree() != Some(full) {
            continue;
        }
        if r.is_squarefree() {
            return Ok((true, full));
        }
        let distinct = squarefree_part(&r).degree().unwrap_or(0);
        best = Some(best.map_or(distinct, |b: usize| b.max(distinct)));
        valid += 1;
        if valid == 3 {
            break;
        }
    }
    match best {
        Some(n) => Ok((false, n)),
        None => Err(CurveError::Degenerate),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::new(parse_poly(s).unwrap()).unwrap()
    }

    #[test]
    fn fermat_sextic_is_smooth() {
        assert!(is_smooth(&curve("x0^6+x1^6+x2^6")).unwrap());
        assert!(is_smooth(&curve("x0^2+x1^2-x2^2")).unwrap());
        assert!(is_smooth(&curve("x0^3+x0*x2^2-x1^2*x2")).unwrap());
    }

    #[test]
    fn cuspidal_cubic() {
        let c = curve("x0^3-x1^2*x2");
        let r = singular_scheme(&c, 0).unwrap();
        assert_eq!(r.scheme_degree, 1);
        assert_eq!(r.rational_points.len(), 1);
        assert_eq!(r.rational_points[0].coords, ["0", "0", "1"].map(String::from));
        assert_eq!(r.rational_points[0].kind, SingularityType::Cusp);
    }

    #[test]
    fn nodal_cubic() {
        let c = curve("x0^3+x0^2*x2-x1^2*x2");
        let t = classify_at_rational_point(&c, &[int(0), int(0), int(1)]).unwrap();
        assert_eq!(t, SingularityType::Node);
    }

    #[test]
    fn line_pair_and_double_line() {
        assert!(!is_smooth(&curve("x0*x1")).unwrap());
        assert_eq!(is_smooth(&curve("x0^2")), Err(CurveError::NonReduced));
    }

    #[test]
    fn point_checks() {
        let c = curve("x0^3-x1^2*x2");
        assert_eq!(
            classify_at_rational_point(&c, &[int(1), int(0), int(1)]),
            Err(CurveError::PointNotOnCurve)
        );
        assert_eq!(
            classify_at_rational_point(&c, &[int(0), int(0), int(0)]),
            Err(CurveError::ZeroPoint)
        );
        assert_eq!(
            classify_at_rational_point(&c, &[int(1), int(1), int(1)]).unwrap(),
            SingularityType::Smooth
        );
    }

    #[test]
    fn higher_singularities() {
        // tacnode y^2 = x^4
        let c = curve("x1^2*x2^2-x0^4");
        assert_eq!(
            classify_at_rational_point(&c, &[int(0), int(0), int(1)]).unwrap(),
            SingularityType::Other {
                multiplicity: 2,
                quadratic_rank: 1
            }
        );
        // ordinary triple point
        let c = curve("x0^3-x1^3");
        assert_eq!(
            classify_at_rational_point(&c, &[int(0), int(0), int(1)]).unwrap(),
            SingularityType::Other {
                multiplicity: 3,
                quadratic_rank: 0
            }
        );
    }

    #[test]
    fn intersections() {
        assert_eq!(transversal_intersection(&curve("x0"), &curve("x1"), 0).unwrap(), (true, 1));
        assert_eq!(
            transversal_intersection(&curve("x0^2+x1^2-x2^2"), &curve("x1-x2"), 0).unwrap(),
            (false, 1)
        );
        assert_eq!(
            transversal_intersection(&curve("x0^2+x1^2-x2^2"), &curve("x0^3+x0*x2^2-x1^2*x2"), 0)
                .unwrap(),
            (true, 6)
        );
        assert_eq!(
            transversal_intersection(&curve("x0^2+x1^2-x2^2"), &curve("x0^3+x0*x1^2-x0*x2^2"), 0),
            Err(CurveError::SharedComponent)
        );
    }
}
