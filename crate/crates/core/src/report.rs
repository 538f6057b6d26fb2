//! Machine-readable outputs: the L-polynomial document, the per-instance
//! statistics document, the angle table and the sweep summary.
//!
//! Everything rendered here is a pure function of the instance, so repeated
//! runs produce identical bytes.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve_oracle::CurveParams;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::field_arith::poly::Poly;
use crate::lfunction::{l_polynomial_from, special_value_from, verify_functional_equation, LPoly, SpecialValueReport};
use crate::statistics::{
    log_sin2_average, log_sin2_limit, mean_cos, min_angle_bound, min_margin, moment, star_discrepancy,
    AngleEnsemble, Measure,
};
use crate::Limits;

/// Number of moments reported.
pub const MOMENTS: u32 = 8;

/// Column order of the sweep CSV.
pub const SWEEP_COLUMNS: [&str; 20] = [
    "q",
    "a",
    "gamma",
    "rank",
    "b",
    "special_value_float",
    "log_special_value",
    "log_ratio",
    "discrepancy",
    "min_margin",
    "log_sin2_avg",
    "M1",
    "M2",
    "M3",
    "M4",
    "M5",
    "M6",
    "M7",
    "M8",
    "error",
];

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LPolyDocument {
    pub q: u64,
    pub a: u32,
    pub gamma: u64,
    pub coeffs: Vec<String>,
    pub degree: usize,
    pub rank: usize,
    pub epsilon: i8,
    pub special_value: String,
    pub special_value_numerator: String,
    pub log_special_value: f64,
    pub log_ratio: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StatsDocument {
    pub q: u64,
    pub a: u32,
    pub gamma: u64,
    pub rank: usize,
    pub b: usize,
    pub special_value: String,
    pub log_special_value: f64,
    pub log_ratio: f64,
    pub log_ratio_upper: f64,
    pub bs_ratio: f64,
    pub moments: Vec<f64>,
    pub xi_moments: Vec<f64>,
    pub discrepancy: f64,
    pub xi_discrepancy: f64,
    pub min_margin: f64,
    pub min_angle_bound: f64,
    pub log_sin2_avg: f64,
    pub log_sin2_limit: f64,
    pub mean_cos: f64,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub params: CurveParams,
    pub family: Family,
    pub lpoly: LPoly,
    pub special: SpecialValueReport,
    pub epsilon: i8,
    pub ensemble: AngleEnsemble,
}

impl Instance {
    pub fn compute(params: &CurveParams) -> Result<Instance> {
        let family = Family::new(params)?;
        let lpoly = l_polynomial_from(&family)?;
        let epsilon = verify_functional_equation(&lpoly)?;
        let special = special_value_from(&family, &lpoly)?;
        let ensemble = AngleEnsemble::from_family(&family);
        Ok(Instance {
            params: params.clone(),
            family,
            lpoly,
            special,
            epsilon,
            ensemble,
        })
    }

    pub fn lpoly_document(&self) -> LPolyDocument {
        let j = self.lpoly.to_json();
        LPolyDocument {
            q: j.q,
            a: j.a,
            gamma: j.gamma,
            coeffs: j.coeffs,
            degree: self.lpoly.degree(),
            rank: self.special.rank,
            epsilon: self.epsilon,
            special_value: self.special.special_value.to_string(),
            special_value_numerator: self.special.numerator.to_string(),
            log_special_value: self.special.log_special_value,
            log_ratio: self.special.log_ratio,
        }
    }

    pub fn stats_document(&self) -> Result<StatsDocument> {
        let e = &self.ensemble;
        let p = &self.params;
        Ok(StatsDocument {
            q: p.q,
            a: p.a,
            gamma: p.gamma.index(),
            rank: self.special.rank,
            b: self.special.b,
            special_value: self.special.special_value.to_string(),
            log_special_value: self.special.log_special_value,
            log_ratio: self.special.log_ratio,
            log_ratio_upper: self.special.log_ratio_upper,
            bs_ratio: self.special.log_ratio,
            moments: (1..=MOMENTS).map(|n| moment(e, n, Measure::Nu)).collect(),
            xi_moments: (1..=MOMENTS).map(|n| moment(e, n, Measure::Xi)).collect(),
            discrepancy: star_discrepancy(e, Measure::Nu)?,
            xi_discrepancy: star_discrepancy(e, Measure::Xi)?,
            min_margin: min_margin(e),
            min_angle_bound: min_angle_bound(p.q, p.p, p.a),
            log_sin2_avg: log_sin2_average(e)?,
            log_sin2_limit: log_sin2_limit(),
            mean_cos: mean_cos(e, Measure::Nu),
        })
    }

    /// CSV of (place polynomial, degree, Kln real value, θ).
    pub fn angles_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["place", "degree", "kln_real", "theta"]).unwrap();
        for (v, s) in self.family.places.places.iter().zip(&self.ensemble.samples) {
            w.write_record([
                poly_string(&v.poly),
                v.degree.to_string(),
                s.kln_real.to_string(),
                s.theta.to_string(),
            ])
            .unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    pub fn file_stem(&self) -> String {
        stem(self.params.q, self.params.a, self.params.gamma.index())
    }

    /// (file name, contents) for every per-instance output.
    pub fn files(&self) -> Result<Vec<(String, String)>> {
        let s = self.file_stem();
        Ok(vec![
            (format!("lpoly_{s}.json"), to_json(&self.lpoly_document())),
            (format!("stats_{s}.json"), to_json(&self.stats_document()?)),
            (format!("angles_{s}.csv"), self.angles_csv()),
        ])
    }
}

pub fn stem(q: u64, a: u32, gamma: u64) -> String {
    format!("q{q}_a{a}_g{gamma}")
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// "t^2 + 2t + 1", with F_q elements written as their indices.
pub fn poly_string(f: &Poly) -> String {
    let mut out = String::new();
    for (i, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        let coef = c.index();
        match (i, coef) {
            (0, _) => write!(out, "{coef}").unwrap(),
            (1, 1) => out.push('t'),
            (1, _) => write!(out, "{coef}t").unwrap(),
            (_, 1) => write!(out, "t^{i}").unwrap(),
            _ => write!(out, "{coef}t^{i}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Debug)]
pub struct SweepEntry {
    pub q: u64,
    pub a: u32,
    pub gamma: u64,
    pub outcome: std::result::Result<Instance, Error>,
}

/// Every (q, a, γ) with γ running over F_q^× when `gammas` is None.
pub fn grid(qs: &[u64], as_: &[u32], gammas: Option<&[u64]>) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    for &q in qs {
        for &a in as_ {
            let gs: Vec<u64> = match gammas {
                Some(g) => g.to_vec(),
                None => (1..q).collect(),
            };
            for g in gs {
                out.push((q, a, g));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Compute every instance of the grid on `jobs` worker threads.
pub fn run_sweep(points: &[(u64, u32, u64)], limits: Limits, jobs: usize) -> Vec<SweepEntry> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let mut entries: Vec<SweepEntry> = pool.install(|| {
        points
            .par_iter()
            .map(|&(q, a, gamma)| SweepEntry {
                q,
                a,
                gamma,
                outcome: CurveParams::with_limits(q, a, gamma, limits)
                    .and_then(|p| Instance::compute(&p)),
            })
            .collect()
    });
    entries.sort_by_key(|e| (e.q, e.a, e.gamma));
    entries
}

/// The sweep summary CSV, one row per instance in (q, a, γ) order.
pub fn sweep_csv(entries: &[SweepEntry]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SWEEP_COLUMNS).unwrap();
    for e in entries {
        let mut row = vec![e.q.to_string(), e.a.to_string(), e.gamma.to_string()];
        match &e.outcome {
            Ok(inst) => {
                let s = inst.stats_document()?;
                row.push(s.rank.to_string());
                row.push(s.b.to_string());
                row.push(format!("{:e}", inst.special.float_value));
                row.push(s.log_special_value.to_string());
                row.push(s.log_ratio.to_string());
                row.push(s.discrepancy.to_string());
                row.push(s.min_margin.to_string());
                row.push(s.log_sin2_avg.to_string());
                row.extend(s.moments.iter().map(|m| m.to_string()));
                row.push(String::new());
            }
            Err(err) => {
                row.extend(std::iter::repeat_n(String::new(), SWEEP_COLUMNS.len() - 4));
                row.push(err.to_string());
            }
        }
        w.write_record(&row).unwrap();
    }
    Ok(String::from_utf8(w.into_inner().unwrap()).unwrap())
}
