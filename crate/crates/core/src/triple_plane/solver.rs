//! Chart-by-chart solution of the bilinear system.
//!
//! In the chart where `v[order[c]] = 1` and `v[order[..c]] = 0`, the system
//! is linear in `w = (beta, mu)` with coefficients polynomial in the free
//! coordinates. Rows with a constant pivot are eliminated symbolically; the
//! remaining system is consistent at `v` only where its augmented matrix drops
//! rank, so the candidate `v` are the common zeros of the relevant minors.
//! Each candidate class is then solved exactly over its residue field.

use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::system::BilinearSystem;
use super::TripleError;
use crate::elimination::{rng_for, solve_zero_dim, SolveError};
use crate::number_field::{certify_irreducible, with_splitting, NfElem, NumberField, Split};
use crate::poly::{
    bareiss_determinant, bareiss_rank, format_rational, groebner_basis, is_unit_ideal, is_zero_dimensional, MultiPoly,
    Rational,
};

const GROEBNER_PAIR_LIMIT: usize = 5000;

/// Charts `v3 = 1`, then `v3 = 0, v2 = 1`, and so on.
pub const DEFAULT_CHART_ORDER: [usize; 4] = [3, 2, 1, 0];

/// A projection center `v` with its `beta`; `v` is scaled so that its last
/// nonzero coordinate is 1.
#[derive(Debug, Clone)]
pub struct CenterSolution {
    pub field: Arc<NumberField>,
    pub v: [NfElem; 4],
    pub beta: [NfElem; 4],
    pub mu: NfElem,
    pub lambda: NfElem,
}

fn show(e: &NfElem) -> String {
    match e.as_rational() {
        Some(r) => format_rational(&r),
        None => e.rep().display_in("t"),
    }
}

impl CenterSolution {
    /// Number of conjugate solutions in the class.
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn rational_v(&self) -> Option<[Rational; 4]> {
        let v: Vec<Rational> = self.v.iter().map(NfElem::as_rational).collect::<Option<_>>()?;
        (self.degree() == 1).then(|| v.try_into().unwrap())
    }

    pub fn rational_beta(&self) -> Option<[Rational; 4]> {
        let b: Vec<Rational> = self.beta.iter().map(NfElem::as_rational).collect::<Option<_>>()?;
        (self.degree() == 1).then(|| b.try_into().unwrap())
    }

    /// Substitutes back into every row.
    pub fn satisfies(&self, sys: &BilinearSystem) -> bool {
        let k = &self.field;
        let u: [NfElem; 5] = [
            self.v[0].clone(),
            self.v[1].clone(),
            self.v[2].clone(),
            self.v[3].clone(),
            k.one(),
        ];
        let w = [&self.beta[0], &self.beta[1], &self.beta[2], &self.beta[3], &self.mu];
        sys.rows.iter().all(|row| {
            let c = row.contract(&u, &k.zero(), |x, r| x.scale(r), |x, y| x + y);
            let mut acc = c[5].clone();
            for (cb, wb) in c.iter().zip(w) {
                acc = &acc + &(cb * wb);
            }
            acc.is_zero()
        })
    }

    fn key(&self) -> (usize, String, Vec<String>) {
        let mut parts: Vec<String> = self.v.iter().map(show).collect();
        parts.extend(self.beta.iter().map(show));
        (self.degree(), self.field.modulus().to_string(), parts)
    }
}

impl Serialize for CenterSolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CenterSolution", 6)?;
        st.serialize_field("modulus", &self.field.modulus().to_string())?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("certificate", self.field.certificate())?;
        st.serialize_field("v", &self.v.iter().map(show).collect::<Vec<_>>())?;
        st.serialize_field("beta", &self.beta.iter().map(show).collect::<Vec<_>>())?;
        st.serialize_field("lambda", &show(&self.lambda))?;
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionSet {
    /// Solutions with `lambda != 0`.
    pub isolated: Vec<CenterSolution>,
    /// Solutions of the ten rows with `lambda = 0`, excluded from `isolated`.
    pub degenerate: Vec<CenterSolution>,
    pub components: Vec<String>,
    /// Every chart ended in finitely many points or a described component.
    pub complete: bool,
}

impl SolutionSet {
    /// Number of geometric solutions with `lambda != 0`.
    pub fn point_count(&self) -> usize {
        self.isolated.iter().map(CenterSolution::degree).sum()
    }

    pub fn satisfies(&self, sys: &BilinearSystem) -> bool {
        self.isolated.iter().chain(&self.degenerate).all(|s| s.satisfies(sys))
    }
}

pub fn solve_projection_centers(sys: &BilinearSystem, seed: u64) -> Result<SolutionSet, TripleError> {
    solve_projection_centers_with(sys, DEFAULT_CHART_ORDER, seed)
}

/// Solves chart by chart in the given coordinate order.
pub fn solve_projection_centers_with(
    sys: &BilinearSystem,
    order: [usize; 4],
    seed: u64,
) -> Result<SolutionSet, TripleError> {
    let mut sorted = order;
    sorted.sort_unstable();
    assert_eq!(sorted, [0, 1, 2, 3], "chart order must be a permutation");

    let canonical: String = sys.rows.iter().map(|r| format!("{r};")).collect();
    let mut rng = rng_for(&canonical, seed);
    let mut set = SolutionSet {
        isolated: Vec::new(),
        degenerate: Vec::new(),
        components: Vec::new(),
        complete: true,
    };
    for c in 0..4 {
        let chart = Chart::new(order, c);
        match chart.candidates(sys, &mut rng)? {
            Candidates::Points(classes) => {
                for (field, free) in classes {
                    chart.solve_class(sys, field, &free, &mut set);
                }
            }
            Candidates::Component(text) => {
                set.components.push(format!("{}: {text}", chart.describe()));
                set.complete = false;
            }
        }
    }
    set.isolated.sort_by_cached_key(CenterSolution::key);
    set.degenerate.sort_by_cached_key(CenterSolution::key);
    Ok(set)
}

struct Chart {
    one: usize,
    zeros: Vec<usize>,
    free: Vec<usize>,
}

enum Candidates {
    Points(Vec<(Arc<NumberField>, Vec<NfElem>)>),
    Component(String),
}

enum Fiber {
    Inconsistent,
    Unique(Vec<NfElem>),
    Family(usize),
}

enum Outcome {
    Nothing,
    Solution(CenterSolution),
    Family([NfElem; 4], usize),
}

impl Chart {
    fn new(order: [usize; 4], c: usize) -> Self {
        let mut free = order[c + 1..].to_vec();
        free.sort_unstable();
        Chart {
            one: order[c],
            zeros: order[..c].to_vec(),
            free,
        }
    }

    fn describe(&self) -> String {
        let mut s = format!("chart v{}=1", self.one);
        for z in &self.zeros {
            s.push_str(&format!(", v{z}=0"));
        }
        s
    }

    /// `(v0, v1, v2, v3, 1)` as polynomials in the free coordinates.
    fn u_polys(&self) -> [MultiPoly; 5] {
        let n = self.free.len().max(1);
        std::array::from_fn(|i| {
            if i == 4 || i == self.one {
                MultiPoly::one(n)
            } else if let Some(k) = self.free.iter().position(|&f| f == i) {
                MultiPoly::var(n, k)
            } else {
                MultiPoly::zero(n)
            }
        })
    }

    fn candidates<R: rand::Rng>(&self, sys: &BilinearSystem, rng: &mut R) -> Result<Candidates, TripleError> {
        let u = self.u_polys();
        let zero = MultiPoly::zero(u[0].nvars());
        let rows: Vec<Vec<MultiPoly>> = sys
            .rows
            .iter()
            .map(|r| r.contract(&u, &zero, |p, c| p.scale(c), |p, q| p + q).to_vec())
            .collect();
        let (rows, alive) = eliminate_constant_pivots(rows);

        if self.free.is_empty() {
            return Ok(Candidates::Points(vec![(NumberField::rationals(), Vec::new())]));
        }
        if rows.is_empty() {
            return Ok(Candidates::Component("consistent for every v".into()));
        }
        let a: Vec<Vec<MultiPoly>> = rows.iter().map(|r| alive.iter().map(|&c| r[c].clone()).collect()).collect();
        let m: Vec<Vec<MultiPoly>> = rows.iter().map(|r| alive.iter().chain([&5]).map(|&c| r[c].clone()).collect()).collect();
        let rank_a = if alive.is_empty() { 0 } else { bareiss_rank(&a) };
        let rank_m = bareiss_rank(&m);
        if rank_a == rank_m {
            return Ok(Candidates::Component(format!(
                "consistent for generic v, beta in an affine space of dimension {}",
                alive.len() - rank_a
            )));
        }
        let minors = augmented_minors(&m, rank_m);
        let nfree = self.free.len();
        let system = match groebner_basis(&minors, GROEBNER_PAIR_LIMIT) {
            Some(g) if is_unit_ideal(&g) => return Ok(Candidates::Points(Vec::new())),
            Some(g) if !is_zero_dimensional(&g, nfree) => {
                return Ok(Candidates::Component(format!(
                    "rank-{rank_a} locus of the reduced system is positive-dimensional"
                )))
            }
            Some(g) => g,
            None => minors,
        };
        match solve_zero_dim(&system, nfree, rng) {
            Ok(classes) => Ok(Candidates::Points(classes.into_iter().map(|c| (c.field, c.coords)).collect())),
            Err(SolveError::PositiveDimensional) => Ok(Candidates::Component(format!(
                "rank-{} locus of the reduced system is positive-dimensional",
                rank_a
            ))),
            Err(SolveError::Degenerate) => Err(TripleError::Degenerate),
        }
    }

    fn solve_class(&self, sys: &BilinearSystem, field: Arc<NumberField>, free: &[NfElem], set: &mut SolutionSet) {
        let pieces = with_splitting(field, |k| {
            let coords: Vec<NfElem> = free.iter().map(|c| c.reduce_into(k)).collect();
            let v: [NfElem; 4] = std::array::from_fn(|i| {
                if i == self.one {
                    k.one()
                } else if let Some(j) = self.free.iter().position(|&f| f == i) {
                    coords[j].clone()
                } else {
                    k.zero()
                }
            });
            solve_at(sys, k, v)
        });
        for (k, outcome) in pieces {
            let field = certify_irreducible(k.modulus()).expect("monic modulus");
            let r = |e: &NfElem| e.reduce_into(&field);
            match outcome {
                Outcome::Nothing => {}
                Outcome::Family(v, dim) => {
                    let v: Vec<String> = v.iter().map(|e| show(&r(e))).collect();
                    set.components.push(format!(
                        "{}: v=[{}] over Q[t]/({}), beta in an affine space of dimension {dim}",
                        self.describe(),
                        v.join(":"),
                        field.modulus()
                    ));
                }
                Outcome::Solution(s) => {
                    let s = CenterSolution {
                        v: std::array::from_fn(|i| r(&s.v[i])),
                        beta: std::array::from_fn(|i| r(&s.beta[i])),
                        mu: r(&s.mu),
                        lambda: r(&s.lambda),
                        field,
                    };
                    if s.lambda.is_zero() {
                        set.degenerate.push(s);
                    } else {
                        set.isolated.push(s);
                    }
                }
            }
        }
    }
}

/// Pivots on constant entries in the unknown columns `0..5` until none is
/// left. Returns the remaining nonzero rows and the unknown columns still in
/// play; column 5 is the constant term.
fn eliminate_constant_pivots(mut rows: Vec<Vec<MultiPoly>>) -> (Vec<Vec<MultiPoly>>, Vec<usize>) {
    let mut alive: Vec<usize> = (0..5).collect();
    loop {
        let pivot = rows.iter().enumerate().find_map(|(r, row)| {
            alive
                .iter()
                .find(|&&c| row[c].is_constant() && !row[c].is_zero())
                .map(|&c| (r, c))
        });
        let Some((r, c)) = pivot else { break };
        let prow = rows.remove(r);
        let inv = prow[c].constant_term().recip();
        for row in rows.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].scale(&inv);
            for j in 0..6 {
                row[j] = &row[j] - &(&factor * &prow[j]);
            }
        }
        alive.retain(|&a| a != c);
    }
    rows.retain(|row| alive.iter().chain([&5]).any(|&c| !row[c].is_zero()));
    (rows, alive)
}

/// The `r x r` minors of `m` that use its last column, without duplicates.
fn augmented_minors(m: &[Vec<MultiPoly>], r: usize) -> Vec<MultiPoly> {
    let ncols = m[0].len();
    let mut out: Vec<MultiPoly> = Vec::new();
    for rows in subsets(m.len(), r) {
        for cols in subsets(ncols - 1, r - 1) {
            let sub: Vec<Vec<MultiPoly>> = rows
                .iter()
                .map(|&i| cols.iter().chain([&(ncols - 1)]).map(|&j| m[i][j].clone()).collect())
                .collect();
            let d = bareiss_determinant(&sub);
            if !d.is_zero() {
                let d = d.primitive();
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Solves for `(beta, mu)` at a fixed `v` over `k`.
fn solve_at(sys: &BilinearSystem, k: &Arc<NumberField>, v: [NfElem; 4]) -> Result<Outcome, Split> {
    let u: [NfElem; 5] = [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), k.one()];
    let rows: Vec<Vec<NfElem>> = sys
        .rows
        .iter()
        .map(|row| {
            let mut c = row.contract(&u, &k.zero(), |x, r| x.scale(r), |x, y| x + y).to_vec();
            c[5] = -&c[5];
            c
        })
        .collect();
    let w = match linear_solve(rows, 5)? {
        Fiber::Inconsistent => return Ok(Outcome::Nothing),
        Fiber::Family(dim) => return Ok(Outcome::Family(v, dim)),
        Fiber::Unique(w) => w,
    };
    let beta: [NfElem; 4] = std::array::from_fn(|j| w[j].clone());
    let mut lambda = &w[4] + &v[3];
    for j in 0..4 {
        lambda = &lambda + &(&beta[j] * &v[j]);
    }
    let mut s = CenterSolution {
        field: Arc::clone(k),
        v,
        beta,
        mu: w[4].clone(),
        lambda,
    };
    for i in (0..4).rev() {
        if !s.v[i].is_zero_d5()? {
            let inv = s.v[i].invert_d5()?;
            s.v = std::array::from_fn(|j| &s.v[j] * &inv);
            s.mu = &s.mu * &inv;
            s.lambda = &s.lambda * &inv;
            break;
        }
    }
    s.lambda.is_zero_d5()?;
    Ok(Outcome::Solution(s))
}

/// Gauss-Jordan on an augmented matrix with `ncols` unknowns.
fn linear_solve(mut rows: Vec<Vec<NfElem>>, ncols: usize) -> Result<Fiber, Split> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let mut found = None;
        for (i, row) in rows.iter().enumerate().skip(r) {
            if !row[c].is_zero_d5()? {
                found = Some(i);
                break;
            }
        }
        let Some(i) = found else { continue };
        rows.swap(r, i);
        let inv = rows[r][c].invert_d5()?;
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..=ncols {
                let t = &f * &rows[r][j];
                rows[i][j] = &rows[i][j] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    for row in &rows[r..] {
        if !row[ncols].is_zero_d5()? {
            return Ok(Fiber::Inconsistent);
        }
    }
    if pivots.len() < ncols {
        return Ok(Fiber::Family(ncols - pivots.len()));
    }
    Ok(Fiber::Unique(rows[..ncols].iter().map(|row| row[ncols].clone()).collect()))
}
