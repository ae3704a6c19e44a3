//! Statistical baselines: the decision function, the logarithmic test (LT),
//! the likelihood-ratio test (LRT), and threshold calibration to a target
//! false-alarm probability.

use crate::channels::{BoxDomain, Scenario};
use crate::{Error, Hypothesis, Result};

/// The decision function: accept `H0` iff the score strictly exceeds the
/// threshold; ties go to `H1`.
pub fn decide(score: f64, delta: f64) -> Hypothesis {
    if score > delta {
        Hypothesis::H0
    } else {
        Hypothesis::H1
    }
}

/// LT soft score: log density of the legitimate class at `x`.
pub fn lt_score(scenario: &Scenario, x: &[f64]) -> Result<f64> {
    scenario.log_density(Hypothesis::H0, x)
}

/// The alternative-hypothesis density used by the LRT.
#[derive(Debug, Clone, PartialEq)]
pub enum Alternative {
    /// Uniform over the given domain box (the artificial negative class).
    Uniform(BoxDomain),
    /// The scenario's own class-1 density.
    ScenarioClass1,
}

/// LRT soft score: `log p0(x) - log p1(x)`.
pub fn lrt_score(scenario: &Scenario, alternative: &Alternative, x: &[f64]) -> Result<f64> {
    let p0 = scenario.log_density(Hypothesis::H0, x)?;
    let p1 = match alternative {
        Alternative::Uniform(domain) => {
            if !domain.contains(x) {
                return Err(Error::Domain("point outside the uniform alternative domain".into()));
            }
            -domain.log_volume()
        }
        Alternative::ScenarioClass1 => scenario.log_density(Hypothesis::H1, x)?,
    };
    Ok(p0 - p1)
}

/// How a threshold was chosen.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Calibration {
    pub target_fa: f64,
    pub realized_fa: f64,
    pub method: &'static str,
    /// Set when score ties make the target unattainable (realized FA off by
    /// more than 1/n).
    pub degenerate: bool,
}

/// A decision threshold, possibly with calibration metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Threshold {
    pub delta: f64,
    pub calibration: Option<Calibration>,
}

impl Threshold {
    pub fn fixed(delta: f64) -> Self {
        Threshold { delta, calibration: None }
    }
}

/// Empirical-quantile calibration: pick `delta` so that the fraction of H0
/// scores with `u <= delta` (the rejected ones) approximates `target_fa`.
///
/// With distinct scores the realized FA is within 1/n of the target; heavy
/// ties may make it unattainable, which is flagged as degenerate.
pub fn calibrate_threshold(scores_on_h0: &[f64], target_fa: f64) -> Result<Threshold> {
    if scores_on_h0.is_empty() {
        return Err(Error::Config("calibration needs a nonempty score list".into()));
    }
    if !(target_fa > 0.0 && target_fa < 1.0) {
        return Err(Error::Config(format!("target FA must lie in (0, 1), got {target_fa}")));
    }
    if scores_on_h0.iter().any(|s| s.is_nan()) {
        return Err(Error::Numerical("NaN score in calibration data".into()));
    }
    let n = scores_on_h0.len();
    let mut sorted = scores_on_h0.to_vec();
    sorted.sort_by(f64::total_cmp);

    let k = (target_fa * n as f64).floor() as usize; // rejects the k smallest
    let delta = if k == 0 {
        // Below every score: nothing rejected.
        f64::NEG_INFINITY
    } else {
        sorted[k - 1]
    };
    let realized = sorted.iter().filter(|&&s| s <= delta).count() as f64 / n as f64;
    let degenerate = (realized - target_fa).abs() > 1.0 / n as f64 + 1e-12;
    Ok(Threshold {
        delta,
        calibration: Some(Calibration {
            target_fa,
            realized_fa: realized,
            method: "empirical-quantile",
            degenerate,
        }),
    })
}
