mod common;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use sexticlab::poly::{int, rat, Monomial, MultiPoly, Rational};

use common::kernel::{
    det3, euler_law, projective_invariance_law, resultant_laws, round_trip_law, specialization_law,
};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn check(law: Result<(), String>) -> Result<(), TestCaseError> {
    law.map_err(TestCaseError::fail)
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Coefficients low to high with a nonzero leading one.
fn uni(max_degree: usize) -> impl Strategy<Value = Vec<Rational>> {
    (prop::collection::vec(coeff(), 0..=max_degree), (1i64..=9, any::<bool>())).prop_map(|(mut v, (lead, neg))| {
        v.push(int(if neg { -lead } else { lead }));
        v
    })
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn resultant_symmetry_and_multiplicativity(p in uni(5), q in uni(5), r in uni(3)) {
        check(resultant_laws(&p, &q, &r))?;
    }

    #[test]
    fn resultant_specialization(
        p in prop::collection::vec((coeff(), coeff()), 2..=4),
        q in prop::collection::vec((coeff(), coeff()), 2..=4),
        shared in prop::option::of(-3i64..=3),
        x0 in -4i64..=4,
    ) {
        let applicable = specialization_law(&p, &q, shared, x0).map_err(TestCaseError::fail)?;
        prop_assume!(applicable);
    }
}

/// Random form of the given degree; leftover degree goes to the last variable.
fn homogeneous(nvars: usize, degree: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u16..=degree as u16, nvars), coeff()), 1..8).prop_map(
        move |terms| {
            let terms = terms.into_iter().map(|(mut e, c)| {
                let mut left = degree;
                for x in e.iter_mut().take(nvars - 1) {
                    *x = (*x).min(left as u16);
                    left -= u32::from(*x);
                }
                e[nvars - 1] = left as u16;
                (Monomial::from_slice(&e), c)
            });
            MultiPoly::from_terms(nvars, terms)
        },
    )
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn euler_identity((d, p) in (1usize..=4, 0u32..=6).prop_flat_map(|(n, d)| (Just(d), homogeneous(n, d)))) {
        check(euler_law(&p, d))?;
    }
}

/// Up to ten terms in at most four variables, total degree at most 8.
fn any_poly() -> impl Strategy<Value = MultiPoly> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec((prop::collection::vec(0u16..=8, n), (-99i64..=99, 1i64..=30)), 0..10).prop_map(
            move |terms| {
                let terms = terms.into_iter().map(|(mut e, (num, den))| {
                    let mut left = 8u16;
                    for x in e.iter_mut() {
                        *x = (*x).min(left);
                        left -= *x;
                    }
                    (Monomial::from_slice(&e), rat(num, den))
                });
                MultiPoly::from_terms(n, terms)
            },
        )
    })
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn parser_round_trip(p in any_poly()) {
        check(round_trip_law(&p))?;
    }
}

fn gl3() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-4i64..=4)).prop_filter("invertible", |a| det3(a) != 0)
}

proptest! {
    #![proptest_config(config(20))]

    #[test]
    fn classification_is_projectively_invariant(a in gl3()) {
        check(projective_invariance_law(&a))?;
    }
}
