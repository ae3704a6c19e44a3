//! One-class classifiers for physical-layer authentication that are trained to
//! operate as the logarithmic test (LT), together with the statistical
//! baselines (LT / LRT), three synthetic channel scenarios, and a
//! detection-error-tradeoff evaluation engine.
//!
//! The verifier observes an `M`-dimensional channel-feature vector and must
//! decide whether it came from the legitimate transmitter (hypothesis `H0`)
//! or an intruder (`H1`). Only the legitimate class is known, either as a
//! density ([`channels`]) or as a dataset; the machine-learned verifiers
//! ([`nn`], [`svm`], [`autoencoder`]) are trained on the legitimate dataset
//! alone, optionally augmented with a uniform artificial negative class, and
//! [`eval`] checks how closely their decisions track the LT.

pub mod autoencoder;
pub mod channels;
pub mod config;
pub mod error;
pub mod eval;
pub mod experiment;
mod linalg;
pub(crate) mod math;
pub mod nn;
pub mod rng;
pub mod stattests;
pub mod svg;
pub mod svm;

pub use error::{Error, Result};

/// The two decision alternatives: `H0` is the legitimate transmitter
/// (positive class), `H1` the intruder (negative class).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Hypothesis {
    H0,
    H1,
}

impl Hypothesis {
    /// Class label as a 0/1 integer.
    pub fn label(self) -> u8 {
        match self {
            Hypothesis::H0 => 0,
            Hypothesis::H1 => 1,
        }
    }

    pub fn from_label(label: u8) -> Result<Self> {
        match label {
            0 => Ok(Hypothesis::H0),
            1 => Ok(Hypothesis::H1),
            other => Err(Error::Config(format!("label must be 0 or 1, got {other}"))),
        }
    }
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Hypothesis::H0 => write!(f, "H0"),
            Hypothesis::H1 => write!(f, "H1"),
        }
    }
}
