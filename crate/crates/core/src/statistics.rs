//! Sato–Tate statistics of the angles θ_γ(v).
//!
//! Two ensembles are considered.  ν_a puts mass 1/|P_q(a)| on each θ_v;
//! ξ_a puts mass d_v/(q^a − 1) on the angle of Frob_v^{a/d_v}, i.e. on
//! (a/d_v)·θ_v folded back into [0, π].

use std::f64::consts::PI;

use serde::Serialize;

use crate::curve_oracle::CurveParams;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::lfunction::SpecialValueReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Measure {
    Nu,
    Xi,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub place: usize,
    pub degree: u32,
    pub theta: f64,
    pub kln_real: f64,
    /// 1 − Kln²/(4q^d), computed as (1 − x)(1 + x).
    pub sin2: f64,
}

#[derive(Clone, Debug)]
pub struct AngleEnsemble {
    pub q: u64,
    pub p: u64,
    pub a: u32,
    pub gamma: u64,
    pub samples: Vec<Sample>,
}

pub fn angle_ensemble(params: &CurveParams) -> Result<AngleEnsemble> {
    Ok(AngleEnsemble::from_family(&Family::new(params)?))
}

/// Angle of the k-th power of a unitary element with angle θ, in [0, π].
pub fn lifted_angle(theta: f64, k: u32) -> f64 {
    let r = (k as f64 * theta).rem_euclid(2.0 * PI);
    if r <= PI {
        r
    } else {
        2.0 * PI - r
    }
}

/// Sato–Tate CDF x/π − sin(2x)/(2π).
pub fn sato_tate_cdf(x: f64) -> f64 {
    x / PI - (2.0 * x).sin() / (2.0 * PI)
}

/// log(e/4), the Sato–Tate mean of log sin²θ.
pub fn log_sin2_limit() -> f64 {
    1.0 - 4f64.ln()
}

impl AngleEnsemble {
    pub fn from_family(fam: &Family) -> AngleEnsemble {
        let samples = fam
            .places
            .places
            .iter()
            .zip(&fam.klns)
            .enumerate()
            .map(|(i, (v, kl))| {
                let x = kl.real_value / (2.0 * (kl.field_size as f64).sqrt());
                Sample {
                    place: i,
                    degree: v.degree,
                    theta: kl.theta,
                    kln_real: kl.real_value,
                    sin2: (1.0 - x) * (1.0 + x),
                }
            })
            .collect();
        AngleEnsemble {
            q: fam.params.q,
            p: fam.params.p,
            a: fam.params.a,
            gamma: fam.params.gamma.index(),
            samples,
        }
    }

    /// Ensemble from raw angles, all of degree 1 (for tests and tooling).
    pub fn from_angles(q: u64, p: u64, a: u32, thetas: &[f64]) -> AngleEnsemble {
        let samples = thetas
            .iter()
            .enumerate()
            .map(|(i, &t)| Sample {
                place: i,
                degree: 1,
                theta: t,
                kln_real: 2.0 * (q as f64).sqrt() * t.cos(),
                sin2: t.sin().powi(2),
            })
            .collect();
        AngleEnsemble {
            q,
            p,
            a,
            gamma: 1,
            samples,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// (weight, angle) pairs of the chosen measure.
    pub fn weighted(&self, m: Measure) -> Vec<(f64, f64)> {
        match m {
            Measure::Nu => {
                let w = 1.0 / self.samples.len() as f64;
                self.samples.iter().map(|s| (w, s.theta)).collect()
            }
            Measure::Xi => {
                let total: u64 = self.samples.iter().map(|s| s.degree as u64).sum();
                self.samples
                    .iter()
                    .map(|s| {
                        (
                            s.degree as f64 / total as f64,
                            lifted_angle(s.theta, self.a / s.degree),
                        )
                    })
                    .collect()
            }
        }
    }

    /// Sum of the ξ weights: Σ d_v / (q^a − 1).
    pub fn xi_weight_total(&self) -> (u64, u64) {
        let total: u64 = self.samples.iter().map(|s| s.degree as u64).sum();
        (total, self.q.pow(self.a) - 1)
    }
}

/// U_n(cos θ) = sin((n+1)θ)/sin θ by the three-term recurrence.
pub fn chebyshev_u(n: u32, theta: f64) -> f64 {
    let c = theta.cos();
    let (mut prev, mut cur) = (1.0, 2.0 * c);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = 2.0 * c * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Empirical n-th moment ∫ U_n(cos θ) dν.
pub fn moment(ens: &AngleEnsemble, n: u32, m: Measure) -> f64 {
    ens.weighted(m)
        .iter()
        .map(|&(w, t)| w * chebyshev_u(n, t))
        .sum()
}

/// Star discrepancy against the Sato–Tate CDF, evaluated at the jumps of the
/// empirical distribution.
pub fn star_discrepancy(ens: &AngleEnsemble, m: Measure) -> Result<f64> {
    if ens.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let mut pts = ens.weighted(m);
    pts.sort_by(|x, y| x.1.total_cmp(&y.1));
    let mut cum = 0.0;
    let mut d: f64 = 0.0;
    for (w, t) in pts {
        let f = sato_tate_cdf(t);
        d = d.max((cum - f).abs());
        cum += w;
        d = d.max((cum - f).abs());
    }
    Ok(d)
}

/// (1/|P|) Σ_v log sin² θ_v.
pub fn log_sin2_average(ens: &AngleEnsemble) -> Result<f64> {
    if ens.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    Ok(ens.samples.iter().map(|s| s.sin2.ln()).sum::<f64>() / ens.len() as f64)
}

/// Smallest distance of an angle to {0, π}.
pub fn min_margin(ens: &AngleEnsemble) -> f64 {
    ens.samples
        .iter()
        .map(|s| s.theta.min(PI - s.theta))
        .fold(f64::INFINITY, f64::min)
}

/// The lower bound (q^a)^{−2(p−1)} for `min_margin`.
pub fn min_angle_bound(q: u64, p: u64, a: u32) -> f64 {
    (q as f64).powf(-(2.0 * (p as f64 - 1.0)) * a as f64)
}

/// Mean of cos θ under the measure; Sato–Tate gives 0.
pub fn mean_cos(ens: &AngleEnsemble, m: Measure) -> f64 {
    ens.weighted(m).iter().map(|&(w, t)| w * t.cos()).sum()
}

/// 1/N + Σ_{n=1}^{2N−1} (n+1)/(n(n+2))·|M_n|.
pub fn erdos_turan_rhs(ens: &AngleEnsemble, big_n: u32, m: Measure) -> f64 {
    let mut s = 1.0 / big_n as f64;
    for n in 1..2 * big_n {
        let nf = n as f64;
        s += (nf + 1.0) / (nf * (nf + 2.0)) * moment(ens, n, m).abs();
    }
    s
}

/// log L* / (b log q).
pub fn brauer_siegel_ratio(params: &CurveParams) -> Result<f64> {
    Ok(crate::lfunction::special_value(params)?.log_ratio)
}

pub fn brauer_siegel_ratio_from(r: &SpecialValueReport) -> f64 {
    r.log_ratio
}
