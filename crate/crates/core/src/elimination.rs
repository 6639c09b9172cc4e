//! Solving zero-dimensional polynomial systems in at most three variables by
//! iterated resultants.
//!
//! Each level shears the last variable into the others, eliminates it with
//! resultants of random combinations, solves the smaller system and lifts
//! every solution class with a gcd over its number field. Solutions come back
//! grouped into classes: all conjugate roots of one squarefree modulus.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::number_field::{
    certify_irreducible, eval_at, kpoly_gcd, specialize, with_splitting, NfElem, NumberField, Split,
};
use crate::poly::{int, resultant, MultiPoly, UniPoly};

/// Attempts per elimination level before giving up on finding a generic shear.
pub const MAX_ATTEMPTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("positive-dimensional solution set")]
    PositiveDimensional,
    #[error("no generic projection found after {MAX_ATTEMPTS} attempts")]
    Degenerate,
}

/// Deterministic generator keyed by some canonical input text and a seed.
pub fn rng_for(input: &str, seed: u64) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(input.as_bytes());
    h.update(seed.to_le_bytes());
    ChaCha8Rng::from_seed(h.finalize().into())
}

/// All conjugates of one solution: coordinates are classes in `Q[t]/(m)`.
#[derive(Clone, Debug)]
pub struct PointClass {
    pub field: Arc<NumberField>,
    pub coords: Vec<NfElem>,
}

impl PointClass {
    /// Number of geometric points in the class.
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// The coordinates as rationals when the class is a single rational point.
    pub fn rational_coords(&self) -> Option<Vec<crate::poly::Rational>> {
        if self.field.degree() != 1 {
            return None;
        }
        self.coords.iter().map(|c| c.as_rational()).collect()
    }
}

enum Failure {
    Retry,
    LooksPositiveDimensional,
    PositiveDimensional,
}

/// Solves `polys = 0` in the affine space of the first `nvars` variables.
pub fn solve_zero_dim<R: Rng>(
    polys: &[MultiPoly],
    nvars: usize,
    rng: &mut R,
) -> Result<Vec<PointClass>, SolveError> {
    assert!((1..=3).contains(&nvars), "between one and three variables");
    let polys: Vec<MultiPoly> = polys.iter().map(|p| p.clone().with_nvars(nvars)).collect();
    let classes = solve_rec(&polys, nvars, rng)?;
    let mut out = Vec::with_capacity(classes.len());
    for class in classes.into_iter().flat_map(split_rational) {
        let field = certify_irreducible(class.field.modulus()).expect("monic modulus");
        let coords: Vec<NfElem> = class.coords.iter().map(|c| c.reduce_into(&field)).collect();
        for p in &polys {
            debug_assert!(eval_at(p, &coords, &field).is_zero(), "lifted point is not a solution");
        }
        out.push(PointClass { field, coords });
    }
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.field.modulus().to_string().cmp(&b.field.modulus().to_string()))
    });
    Ok(out)
}

/// Separates the rational roots of a class modulus into their own classes.
fn split_rational(class: PointClass) -> Vec<PointClass> {
    let m = class.field.modulus();
    if m.degree() == Some(1) {
        return vec![class];
    }
    let roots = m.rational_roots();
    let mut rest = m.clone();
    let mut out = Vec::new();
    for r in roots {
        let lin = UniPoly::new(vec![-r, crate::poly::Rational::from_integer(1.into())]);
        rest = rest.div_exact(&lin).expect("root of the modulus");
        let field = NumberField::unverified(lin).expect("monic");
        out.push(PointClass {
            coords: class.coords.iter().map(|c| c.reduce_into(&field)).collect(),
            field,
        });
    }
    if !rest.is_constant() {
        let field = NumberField::unverified(rest).expect("monic");
        out.push(PointClass {
            coords: class.coords.iter().map(|c| c.reduce_into(&field)).collect(),
            field,
        });
    }
    out
}

fn solve_rec<R: Rng>(polys: &[MultiPoly], k: usize, rng: &mut R) -> Result<Vec<PointClass>, SolveError> {
    let polys: Vec<MultiPoly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if polys.is_empty() {
        return Err(SolveError::PositiveDimensional);
    }
    if polys.iter().any(MultiPoly::is_constant) {
        return Ok(Vec::new());
    }
    if k == 1 {
        return Ok(solve_univariate(&polys));
    }
    if polys.len() == 1 {
        return Err(SolveError::PositiveDimensional);
    }
    let mut suspicious = 0;
    for _ in 0..MAX_ATTEMPTS {
        match attempt(&polys, k, rng) {
            Ok(v) => return Ok(v),
            Err(Failure::PositiveDimensional) => return Err(SolveError::PositiveDimensional),
            Err(Failure::LooksPositiveDimensional) => suspicious += 1,
            Err(Failure::Retry) => {}
        }
    }
    if suspicious == MAX_ATTEMPTS {
        Err(SolveError::PositiveDimensional)
    } else {
        Err(SolveError::Degenerate)
    }
}

fn solve_univariate(polys: &[MultiPoly]) -> Vec<PointClass> {
    let mut g = UniPoly::zero();
    for p in polys {
        g = g.gcd(&p.to_uni(0).expect("univariate at the last level"));
    }
    let m = crate::number_field::squarefree_modulus(&g);
    if m.is_constant() {
        return Vec::new();
    }
    let field = NumberField::unverified(m).expect("monic nonconstant");
    let t = field.generator();
    vec![PointClass { field, coords: vec![t] }]
}

fn random_nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    let v = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

enum Fiber {
    Empty,
    Point(NfElem),
    Several,
    Everything,
}

fn attempt<R: Rng>(polys: &[MultiPoly], k: usize, rng: &mut R) -> Result<Vec<PointClass>, Failure> {
    let last = k - 1;
    let shear: Vec<i64> = (0..last).map(|_| random_nonzero(rng, 5)).collect();
    let images: Vec<MultiPoly> = (0..k)
        .map(|j| {
            let y = MultiPoly::var(k, j);
            if j < last {
                &y + &MultiPoly::var(k, last).scale(&int(shear[j]))
            } else {
                y
            }
        })
        .collect();
    let sheared: Vec<MultiPoly> = polys.iter().map(|p| p.compose(&images, k)).collect();

    let combos: Vec<MultiPoly> = if sheared.len() == 2 {
        sheared.clone()
    } else {
        (0..3)
            .map(|_| {
                sheared.iter().fold(MultiPoly::zero(k), |acc, p| {
                    &acc + &p.scale(&int(rng.gen_range(1..=9)))
                })
            })
            .collect()
    };
    for h in &combos {
        let cs = h.coefficients_in(last);
        if cs.len() < 2 || !cs.last().unwrap().is_constant() {
            return Err(Failure::Retry);
        }
    }
    let mut eliminated = Vec::new();
    for a in 0..combos.len() {
        for b in a + 1..combos.len() {
            let r = resultant(&combos[a], &combos[b], last).expect("both involve the variable");
            if !r.is_zero() {
                eliminated.push(r.with_nvars(last));
            }
        }
    }
    if eliminated.is_empty() {
        return Err(Failure::LooksPositiveDimensional);
    }
    let base = match solve_rec(&eliminated, last, rng) {
        Ok(v) => v,
        Err(SolveError::PositiveDimensional) => return Err(Failure::LooksPositiveDimensional),
        Err(SolveError::Degenerate) => return Err(Failure::Retry),
    };

    let mut out = Vec::new();
    for class in base {
        let fibers = with_splitting(Arc::clone(&class.field), |field| {
            let coords: Vec<NfElem> = class.coords.iter().map(|c| c.reduce_into(field)).collect();
            lift_fiber(&sheared, last, &coords, field)
        });
        for (field, fiber) in fibers {
            let coords: Vec<NfElem> = class.coords.iter().map(|c| c.reduce_into(&field)).collect();
            match fiber {
                Fiber::Empty => {}
                Fiber::Everything => return Err(Failure::PositiveDimensional),
                Fiber::Several => return Err(Failure::Retry),
                Fiber::Point(y_last) => {
                    let mut x: Vec<NfElem> = coords
                        .iter()
                        .zip(&shear)
                        .map(|(y, &c)| y + &y_last.scale(&int(c)))
                        .collect();
                    x.push(y_last);
                    out.push(PointClass { field, coords: x });
                }
            }
        }
    }
    Ok(out)
}

fn lift_fiber(
    sheared: &[MultiPoly],
    last: usize,
    coords: &[NfElem],
    field: &Arc<NumberField>,
) -> Result<Fiber, Split> {
    let mut g = Vec::new();
    for p in sheared {
        let s = specialize(p, last, coords, field);
        g = kpoly_gcd(&g, &s)?;
        if g.len() == 1 {
            return Ok(Fiber::Empty);
        }
    }
    Ok(match g.len() {
        0 => Fiber::Everything,
        1 => Fiber::Empty,
        2 => Fiber::Point(-&g[0]),
        _ => Fiber::Several,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;
    use crate::poly::Rational;

    fn solve(src: &[&str], n: usize) -> Result<Vec<PointClass>, SolveError> {
        let polys: Vec<MultiPoly> = src.iter().map(|s| parse_poly(s).unwrap()).collect();
        solve_zero_dim(&polys, n, &mut rng_for("test", 0))
    }

    #[test]
    fn circle_and_line() {
        let sols = solve(&["x^2+y^2-1", "x-y"], 2).unwrap();
        assert_eq!(sols.iter().map(PointClass::degree).sum::<usize>(), 2);
    }

    #[test]
    fn rational_points_recovered() {
        let sols = solve(&["x^2-1", "y-2*x", "x*y-2"], 2).unwrap();
        let mut pts: Vec<Vec<Rational>> = sols.iter().filter_map(PointClass::rational_coords).collect();
        pts.sort();
        assert_eq!(pts, vec![vec![int(-1), int(-2)], vec![int(1), int(2)]]);
    }

    #[test]
    fn three_variables() {
        let sols = solve(&["x^2+y^2+z^2-3", "x-y", "y-z"], 3).unwrap();
        assert_eq!(sols.iter().map(PointClass::degree).sum::<usize>(), 2);
        let mut rational: Vec<_> = sols.iter().filter_map(PointClass::rational_coords).collect();
        rational.sort();
        assert_eq!(rational, vec![vec![int(-1); 3], vec![int(1); 3]]);
    }

    #[test]
    fn empty_and_positive_dimensional() {
        assert!(solve(&["x^2+1-x^2", "y"], 2).unwrap().is_empty());
        assert_eq!(solve(&["x*y", "x*y^2"], 2).unwrap_err(), SolveError::PositiveDimensional);
        assert_eq!(solve(&["x-y"], 2).unwrap_err(), SolveError::PositiveDimensional);
    }

    #[test]
    fn conic_meets_cubic_in_six_points() {
        let sols = solve(&["x^2+y^2-1", "x^3+x-y^2"], 2).unwrap();
        assert_eq!(sols.iter().map(PointClass::degree).sum::<usize>(), 6);
    }
}
