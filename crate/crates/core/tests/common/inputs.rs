//! Fixed inputs and hand-derived data.

use rand::Rng;
use sexticlab::parser::parse_poly;
use sexticlab::poly::{int, Monomial, MultiPoly, Rational};
use sexticlab::triple_plane::{BilinearRow, Convention, CubicSurface};

pub fn conic() -> MultiPoly {
    parse_poly("x0^2+x1^2-x2^2").unwrap()
}

pub fn cubic() -> MultiPoly {
    parse_poly("x0^3+x0*x2^2-x1^2*x2").unwrap()
}

pub fn corollary_surface() -> CubicSurface {
    CubicSurface::with_convention(&conic(), &cubic(), Convention::Corollary).unwrap()
}

/// Row from `(coefficient, u index, w index)` triples with
/// `u = (v0, v1, v2, v3, 1)` and `w = (b0, b1, b2, b3, mu, 1)`.
pub fn hand_row(label: &'static str, terms: &[(i64, usize, usize)]) -> BilinearRow {
    let mut coeffs: [[Rational; 6]; 5] = std::array::from_fn(|_| std::array::from_fn(|_| int(0)));
    for &(c, a, b) in terms {
        coeffs[a][b] += int(c);
    }
    BilinearRow { label, coeffs }
}

const ONE: usize = 5;
const MU: usize = 4;

/// The ten rows written out by hand; the right-hand sides
/// `lambda - sum beta_j v_j - v3` are moved over as `-mu`.
pub fn hand_rows() -> Vec<BilinearRow> {
    vec![
        hand_row("x0x3", &[(1, 0, ONE), (1, 0, 3), (3, 3, 0)]),
        hand_row("x1x3", &[(1, 1, ONE), (1, 1, 3), (3, 3, 1)]),
        hand_row("x2x3", &[(1, 2, ONE), (1, 2, 3), (-3, 3, 2)]),
        hand_row("x0x1", &[(1, 0, 1), (1, 1, 0)]),
        hand_row("x0x2", &[(1, 0, 2), (1, 2, ONE), (-1, 2, 0)]),
        hand_row("x1x2", &[(1, 1, ONE), (-1, 1, 2), (1, 2, 1)]),
        hand_row("x1^2", &[(2, 1, 1), (-1, 2, ONE), (-1, 4, MU)]),
        hand_row("x2^2", &[(-1, 0, ONE), (2, 2, 2), (-1, 4, MU)]),
        hand_row("x0^2", &[(3, 0, ONE), (2, 0, 0), (-1, 4, MU)]),
        hand_row("x3^2", &[(2, 3, 3), (-1, 4, MU)]),
    ]
}

pub fn random_form<R: Rng>(rng: &mut R, degree: u16, bound: i64) -> MultiPoly {
    let mut p = MultiPoly::zero(3);
    for a in 0..=degree {
        for b in 0..=degree - a {
            p.add_term(Monomial::new([a, b, degree - a - b, 0]), int(rng.gen_range(-bound..=bound)));
        }
    }
    p
}

