//! Closed-form invariants of plane curves with nodes and cusps.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumerologyError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("negative genus {0}")]
    NegativeGenus(i64),
    #[error("class data not Plücker-consistent")]
    NotPluckerConsistent,
}

/// Degree `n` with `d` nodes and `k` cusps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub n: i64,
    pub d: i64,
    pub k: i64,
}

impl CurveClass {
    pub fn new(n: i64, d: i64, k: i64) -> Result<Self, NumerologyError> {
        if n < 1 {
            return Err(NumerologyError::ZeroDegree);
        }
        if d < 0 || k < 0 {
            return Err(NumerologyError::NotPluckerConsistent);
        }
        let c = CurveClass { n, d, k };
        let g = c.genus();
        if g < 0 {
            return Err(NumerologyError::NegativeGenus(g));
        }
        Ok(c)
    }

    /// Geometric genus `(n-1)(n-2)/2 - d - k`.
    pub fn genus(&self) -> i64 {
        genus(self.n, self.d, self.k)
    }
}

pub fn genus(n: i64, d: i64, k: i64) -> i64 {
    (n - 1) * (n - 2) / 2 - d - k
}

/// Brill-Noether number `rho(2, g, n) = 3n - 2g - 6`.
pub fn brill_noether(g: i64, n: i64) -> i64 {
    3 * n - 2 * g - 6
}

pub fn moduli_dimension(g: i64) -> i64 {
    match g {
        0 => 0,
        1 => 1,
        _ => 3 * g - 3,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliReport {
    pub class: CurveClass,
    pub g: i64,
    pub rho: i64,
    pub dim_mg: i64,
    pub expected_severi_dim: i64,
    pub moduli_upper_bound: i64,
    pub fiber_lower_bound: i64,
}

pub fn moduli_report(c: CurveClass) -> Result<ModuliReport, NumerologyError> {
    let g = c.genus();
    if g < 0 {
        return Err(NumerologyError::NegativeGenus(g));
    }
    let rho = brill_noether(g, c.n);
    let dim_mg = moduli_dimension(g);
    Ok(ModuliReport {
        class: c,
        g,
        rho,
        dim_mg,
        expected_severi_dim: 3 * c.n + g - 1 - c.k,
        moduli_upper_bound: dim_mg.min(dim_mg + rho - c.k),
        fiber_lower_bound: 8.max(8 + rho - c.k),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualInvariants {
    pub n_star: i64,
    pub d_star: i64,
    pub k_star: i64,
}

/// Degree, nodes and cusps of the dual curve.
pub fn plucker_dual(c: CurveClass) -> Result<DualInvariants, NumerologyError> {
    let g = c.genus();
    let n_star = c.n * (c.n - 1) - 2 * c.d - 3 * c.k;
    let k_star = 3 * c.n * (c.n - 2) - 6 * c.d - 8 * c.k;
    if n_star < 1 || k_star < 0 {
        return Err(NumerologyError::NotPluckerConsistent);
    }
    let d_star = (n_star - 1) * (n_star - 2) / 2 - g - k_star;
    if d_star < 0 {
        return Err(NumerologyError::NotPluckerConsistent);
    }
    Ok(DualInvariants {
        n_star,
        d_star,
        k_star,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumRow {
    pub report: ModuliReport,
    /// `rho - k = 0`: the moduli map is expected to be dominant.
    pub dominant: bool,
}

/// Cuspidal sextics with 9, 8, 7 and 6 cusps.
pub fn stratification_table() -> Vec<StratumRow> {
    [9, 8, 7, 6]
        .into_iter()
        .map(|k| {
            let report = moduli_report(CurveClass { n: 6, d: 0, k }).expect("valid sextic class");
            StratumRow {
                dominant: report.rho == k,
                report,
            }
        })
        .collect()
}

/// Plain-text rendering of [`stratification_table`].
pub fn render_table(rows: &[StratumRow]) -> String {
    let mut out = format!(
        "{:>3} {:>3} {:>3} {:>4} {:>6} {:>9} {:>6}\n",
        "k", "g", "rho", "dimM", "bound", "severi", "fiber"
    );
    for r in rows {
        let m = &r.report;
        out.push_str(&format!(
            "{:>3} {:>3} {:>3} {:>4} {:>6} {:>9} {:>6}{}\n",
            m.class.k,
            m.g,
            m.rho,
            m.dim_mg,
            m.moduli_upper_bound,
            m.expected_severi_dim,
            m.fiber_lower_bound,
            if r.dominant { "  dominant" } else { "" }
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_cuspidal_sextic() {
        let r = moduli_report(CurveClass::new(6, 0, 6).unwrap()).unwrap();
        assert_eq!((r.g, r.rho, r.dim_mg, r.expected_severi_dim, r.moduli_upper_bound), (4, 4, 9, 15, 7));
    }

    #[test]
    fn table_bounds() {
        let bounds: Vec<i64> = stratification_table().iter().map(|r| r.report.moduli_upper_bound).collect();
        assert_eq!(bounds, vec![1, 3, 5, 7]);
        let dominant: Vec<i64> = stratification_table()
            .iter()
            .filter(|r| r.dominant)
            .map(|r| r.report.class.k)
            .collect();
        assert_eq!(dominant, vec![8]);
    }

    #[test]
    fn dual_of_cubic() {
        let d = plucker_dual(CurveClass::new(3, 0, 0).unwrap()).unwrap();
        assert_eq!((d.n_star, d.d_star, d.k_star), (6, 0, 9));
        let dd = plucker_dual(CurveClass::new(6, 0, 9).unwrap()).unwrap();
        assert_eq!((dd.n_star, dd.d_star, dd.k_star), (3, 0, 0));
        let c = plucker_dual(CurveClass::new(2, 0, 0).unwrap()).unwrap();
        assert_eq!((c.n_star, c.d_star, c.k_star), (2, 0, 0));
    }

    #[test]
    fn negative_genus_rejected() {
        assert_eq!(CurveClass::new(3, 2, 0), Err(NumerologyError::NegativeGenus(-1)));
    }
}
