//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use sexticlab::cli;
use sexticlab::numerology::{moduli_report, plucker_dual, CurveClass};
use sexticlab::poly::{int, rat, Monomial, MultiPoly, Rational};
use sexticlab::triple_plane::{
    branch_locus, build_condition_system, cubic_space_independence, Convention, CubicSurface,
};
use sexticlab::versal::{
    arc_j_limit, find_arc_for_j, j_invariant, CuspArc, JValue, VersalPoint, DEFAULT_TRUNCATION,
};

use common::inputs::{conic, corollary_surface, cubic, hand_rows, random_form};
use common::kernel::{
    det3, euler_law, projective_invariance_law, resultant_laws, round_trip_law, specialization_law,
};
use common::{fp_center_counts, predicted_counts};

const CONIC: &str = "x0^2+x1^2-x2^2";
const CUBIC: &str = "x0^3+x0*x2^2-x1^2*x2";

type Outcome = Result<String, String>;

fn require(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    require(t < limit, format!("{what} took {t:.1?}, limit {limit:?}"))
}

fn cli_json(args: &[&str]) -> (i32, Value) {
    let argv = ["sexticlab", "--json"].into_iter().chain(args.iter().copied());
    let out = cli::run(argv);
    let v = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.exit_code, v)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (code, v) = cli_json(&["sextic-verify", "--f2", CONIC, "--f3", CUBIC]);
    within(start, Duration::from_secs(10), "sextic-verify")?;
    let r = &v["result"];
    let singular = &r["singular"];
    let points = singular["rational_points"]
        .as_array()
        .into_iter()
        .chain(singular["field_points"].as_array())
        .flatten();
    let all_cusps = points.clone().all(|p| p["kind"]["type"] == "cusp");
    let checks = [
        (r["conic_smooth"] == true, "conic smooth"),
        (r["cubic_smooth"] == true, "cubic smooth"),
        (r["transverse"] == true && r["intersection_points"] == 6, "transverse in 6 points"),
        (r["singular_locus_is_intersection"] == true, "singular scheme = V(f2, f3)"),
        (singular["scheme_degree"] == 6, "scheme degree 6"),
        (singular["reduced"] == true, "singular scheme reduced"),
        (all_cusps, "every singular point an ordinary cusp"),
        (r["cusp_count"] == 6 && r["all_cusps_on_conic"] == true, "6 cusps on the conic"),
        (r["genus"] == 4, "genus 4"),
        (code == 0 && v["status"] == "ok", "status ok"),
    ];
    let failed: Vec<&str> = checks.iter().filter(|(ok, _)| !ok).map(|(_, name)| *name).collect();
    if failed.is_empty() {
        Ok("six cusps on the conic, genus 4".into())
    } else {
        Err(format!(
            "failed: {}; scheme degree {}, genus {}, report: {}",
            failed.join(", "),
            singular["scheme_degree"],
            r["genus"],
            r["failures"]
        ))
    }
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut inputs = vec![(conic(), cubic())];
    while inputs.len() < 21 {
        let (f2, f3) = (random_form(&mut rng, 2, 9), random_form(&mut rng, 3, 9));
        if !f2.is_zero() && !f3.is_zero() {
            inputs.push((f2, f3));
        }
    }
    for (i, (f2, f3)) in inputs.iter().enumerate() {
        let start = Instant::now();
        let lemma = CubicSurface::with_convention(f2, f3, Convention::Lemma).map_err(|e| e.to_string())?;
        let b = branch_locus(&lemma).map_err(|e| format!("input {i}: {e}"))?;
        let target = (&f3.pow(2) - &f2.pow(3)).scale(&int(108));
        require(b.sextic == target, format!("input {i}: lemma branch curve is {}", b.sextic))?;
        let cor = CubicSurface::with_convention(f2, f3, Convention::Corollary).map_err(|e| e.to_string())?;
        let b = branch_locus(&cor).map_err(|e| format!("input {i}: {e}"))?;
        let target = &f2.pow(3).scale(&int(4)) + &f3.pow(2).scale(&int(27));
        require(b.sextic == target, format!("input {i}: corollary branch curve is {}", b.sextic))?;
        within(start, Duration::from_secs(5), "one instance")?;
    }
    Ok("108(f3^2-f2^3) and 4f2^3+27f3^2 on 21 inputs".into())
}

fn criterion_3() -> Outcome {
    let sys = build_condition_system(&corollary_surface());
    let hand = hand_rows();
    let matched: Vec<&str> = sys
        .rows
        .iter()
        .zip(&hand)
        .filter(|(a, b)| a.label == b.label && a.coeffs == b.coeffs)
        .map(|(a, _)| a.label)
        .collect();
    require(
        matched.len() == 10 && sys.rows.len() == 10,
        format!("{}/10 rows match: {matched:?}", matched.len()),
    )?;
    Ok("10/10 rows match exactly".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let (code, v) = cli_json(&["centers", "--f2", CONIC, "--f3", CUBIC]);
    let sols = &v["result"]["solutions"];
    let isolated = sols["isolated"].as_array().cloned().unwrap_or_default();
    require(code == 0, format!("exit code {code}"))?;
    require(sols["complete"] == true, "solution set not complete")?;
    require(isolated.len() == 1, format!("{} solutions", isolated.len()))?;
    require(
        isolated[0]["v"] == serde_json::json!(["0", "0", "0", "1"]),
        format!("v = {}", isolated[0]["v"]),
    )?;
    require(
        isolated[0]["beta"] == serde_json::json!(["0", "0", "0", "0"]),
        format!("beta = {}", isolated[0]["beta"]),
    )?;
    let s = corollary_surface();
    let set = sexticlab::triple_plane::solve_projection_centers(&build_condition_system(&s), 0)
        .map_err(|e| e.to_string())?;
    for p in [101, 103, 107] {
        let brute = fp_center_counts(&s, p);
        let predicted = predicted_counts(&set, p);
        require(brute == predicted, format!("p = {p}: enumeration {brute:?}, solver {predicted:?}"))?;
        require(
            brute.lambda_nonzero == 1,
            format!("p = {p}: {} centers over F_p", brute.lambda_nonzero),
        )?;
    }
    within(start, Duration::from_secs(60), "centers")?;
    Ok("unique center [0:0:0:1], beta = 0; F_101, F_103, F_107 agree".into())
}

fn criterion_5() -> Outcome {
    let report = |k| moduli_report(CurveClass::new(6, 0, k).map_err(|e| e.to_string())?).map_err(|e| e.to_string());
    let r6 = report(6)?;
    require(
        r6.moduli_upper_bound == 7 && r6.rho == 4 && r6.dim_mg == 9 && r6.expected_severi_dim == 15,
        format!("(6,0,6): {r6:?}"),
    )?;
    let r9 = report(9)?;
    require(r9.moduli_upper_bound == 1, format!("(6,0,9): {r9:?}"))?;
    let r8 = report(8)?;
    require(r8.moduli_upper_bound == 3 && r8.rho - 8 == 0, format!("(6,0,8): {r8:?}"))?;
    let r7 = report(7)?;
    require(r7.moduli_upper_bound == 5, format!("(6,0,7): {r7:?}"))?;
    let (code, v) = cli_json(&["numerology", "--n", "6", "--d", "0", "--k", "6"]);
    require(code == 0 && v["result"]["moduli_upper_bound"] == 7, "numerology command")?;
    Ok("bounds 7, 5, 3, 1; rho 4, dim M4 9, Severi 15".into())
}

fn criterion_6() -> Outcome {
    for ((n, d, k), expected) in [((3, 0, 0), (6, 0, 9)), ((6, 0, 9), (3, 0, 0)), ((2, 0, 0), (2, 0, 0))] {
        let c = CurveClass::new(n, d, k).map_err(|e| e.to_string())?;
        let dual = plucker_dual(c).map_err(|e| e.to_string())?;
        let got = (dual.n_star, dual.d_star, dual.k_star);
        require(got == expected, format!("({n},{d},{k}) -> {got:?}"))?;
        let g = sexticlab::numerology::genus(got.0, got.1, got.2);
        require(g == c.genus(), format!("({n},{d},{k}): genus {} vs {g}", c.genus()))?;
    }
    Ok("duals (6,0,9), (3,0,0), (2,0,0), genus preserved".into())
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-40..=40), rng.gen_range(1..=12))
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != int(0) {
            return r;
        }
    }
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let a: Vec<Rational> = (0..rng.gen_range(0..DEFAULT_TRUNCATION)).map(|_| small_rational(&mut rng)).collect();
        let mut b = vec![nonzero_rational(&mut rng)];
        b.extend((0..rng.gen_range(0..DEFAULT_TRUNCATION - 1)).map(|_| small_rational(&mut rng)));
        let arc = CuspArc::from_tail(&a, &b, DEFAULT_TRUNCATION).map_err(|e| e.to_string())?;
        let l = arc_j_limit(&arc).map_err(|e| e.to_string())?;
        require(
            l.limit == JValue::Finite(int(0)) && !l.tangent_to_b_axis,
            format!("arc {i}: {l:?}"),
        )?;
    }
    let mut targets = vec![int(0), int(1728), rat(6912, 31)];
    while targets.len() < 10 {
        targets.push(rat(rng.gen_range(-5000..=5000), rng.gen_range(1..=50)));
    }
    for j0 in &targets {
        let found = find_arc_for_j(j0);
        let l = arc_j_limit(&found.arc).map_err(|e| e.to_string())?;
        require(l.limit == JValue::Finite(j0.clone()), format!("j0 = {j0}: {l:?}"))?;
    }
    for _ in 0..50 {
        let (a, b, t) = (small_rational(&mut rng), small_rational(&mut rng), nonzero_rational(&mut rng));
        let p = VersalPoint::new(a.clone(), b.clone());
        let q = VersalPoint::new(&t * &t * a, &t * &t * &t * b);
        require(j_invariant(&p) == j_invariant(&q), format!("scaling fails at {p:?}, t = {t}"))?;
    }
    within(start, Duration::from_secs(5), "arc checks")?;
    Ok("100 transverse arcs give 0; 10 round trips; 50 scalings".into())
}

fn random_uni(rng: &mut ChaCha8Rng, max_degree: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = (0..rng.gen_range(0..=max_degree))
        .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        .collect();
    let lead = rng.gen_range(1..=9);
    v.push(int(if rng.gen() { lead } else { -lead }));
    v
}

fn random_form_in(rng: &mut ChaCha8Rng, nvars: usize, degree: u32) -> MultiPoly {
    let terms = (0..rng.gen_range(1..8)).map(|_| {
        let mut e = vec![0u16; nvars];
        let mut left = degree as u16;
        for x in e.iter_mut().take(nvars - 1) {
            *x = rng.gen_range(0..=left);
            left -= *x;
        }
        e[nvars - 1] = left;
        (Monomial::from_slice(&e), rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
    });
    MultiPoly::from_terms(nvars, terms)
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..100 {
        let (p, q, r) = (random_uni(&mut rng, 5), random_uni(&mut rng, 5), random_uni(&mut rng, 3));
        resultant_laws(&p, &q, &r).map_err(|e| format!("pair {i}: {e}"))?;
    }
    let mut specialized = 0;
    while specialized < 100 {
        let pairs = |rng: &mut ChaCha8Rng| -> Vec<(Rational, Rational)> {
            (0..rng.gen_range(2..=4))
                .map(|_| (int(rng.gen_range(-9..=9)), int(rng.gen_range(-9..=9))))
                .collect()
        };
        let (p, q) = (pairs(&mut rng), pairs(&mut rng));
        let shared = rng.gen_bool(0.5).then(|| rng.gen_range(-3..=3));
        if specialization_law(&p, &q, shared, rng.gen_range(-4..=4))? {
            specialized += 1;
        }
    }
    for i in 0..100 {
        let (n, d) = (rng.gen_range(1..=4), rng.gen_range(0..=6));
        euler_law(&random_form_in(&mut rng, n, d), d).map_err(|e| format!("form {i}: {e}"))?;
    }
    for i in 0..1000 {
        let n = rng.gen_range(1..=4);
        let (dp, dq) = (rng.gen_range(0..=8), rng.gen_range(0..=8));
        let p = random_form_in(&mut rng, n, dp);
        let q = random_form_in(&mut rng, n, dq);
        round_trip_law(&(&p + &q)).map_err(|e| format!("polynomial {i}: {e}"))?;
    }
    let mut changes = 0;
    while changes < 20 {
        let a: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-4..=4)));
        if det3(&a) != 0 {
            projective_invariance_law(&a)?;
            changes += 1;
        }
    }
    within(start, Duration::from_secs(60), "kernel suites")?;
    Ok("resultant, Euler, round-trip and invariance suites".into())
}

fn criterion_9() -> Outcome {
    let ind = cubic_space_independence(&corollary_surface());
    require(ind.rank == 5, format!("rank {}", ind.rank))?;
    Ok("rank of {F, x_i Q} is 5".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("six-cusp sextic", criterion_1),
        ("branch-locus identity", criterion_2),
        ("bilinear system rows", criterion_3),
        ("unique projection center", criterion_4),
        ("numerology table", criterion_5),
        ("Plucker duals", criterion_6),
        ("j-limit properties", criterion_7),
        ("kernel properties", criterion_8),
        ("independence rank", criterion_9),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {} PASS {name} ({t:.2?}): {msg}", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {} FAIL {name} ({t:.2?}): {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
