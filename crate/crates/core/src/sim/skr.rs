use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pexit::{bi_awgn_capacity, reconciliation_efficiency};

/// Inputs of the secret key rate `(1 - FER)(beta I_AB - chi_BE)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkrInputs {
    pub fer: f64,
    pub beta: f64,
    /// Alice-Bob mutual information, bits per symbol.
    pub i_ab: f64,
    /// Eve's Holevo information, bits per symbol.
    pub chi_be: f64,
}

impl SkrInputs {
    pub fn new(fer: f64, beta: f64, i_ab: f64, chi_be: f64) -> Result<Self> {
        let s = Self { fer, beta, i_ab, chi_be };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.fer) {
            return Err(Error::validation("SKR inputs", format!("fer = {} is outside [0, 1]", self.fer)));
        }
        for (name, v) in [("beta", self.beta), ("I_AB", self.i_ab), ("chi_BE", self.chi_be)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::validation("SKR inputs", format!("{name} = {v} must be finite and non-negative")));
            }
        }
        Ok(())
    }
}

/// `(1 - fer)(beta I_AB - chi_BE)`; negative when no key can be distilled.
pub fn secret_key_rate(s: &SkrInputs) -> f64 {
    (1.0 - s.fer) * (s.beta * s.i_ab - s.chi_be)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatingPoint {
    pub rate: f64,
    pub es_n0_db: f64,
    pub fer: f64,
    pub beta: f64,
    pub i_ab: f64,
    pub chi_be: f64,
    pub skr: f64,
    /// False when `skr < 0` or `beta > 1`.
    pub valid: bool,
}

/// Evaluates a code of rate `rate` at `es_n0_db`, taking `I_AB` as the
/// BI-AWGN capacity there and `beta = R / I_AB`.
pub fn operating_point(rate: f64, es_n0_db: f64, fer: f64, chi_be: f64) -> Result<OperatingPoint> {
    let beta = reconciliation_efficiency(rate, es_n0_db)?;
    let i_ab = bi_awgn_capacity(es_n0_db);
    let inputs = SkrInputs::new(fer, beta, i_ab, chi_be)?;
    let skr = secret_key_rate(&inputs);
    Ok(OperatingPoint {
        rate,
        es_n0_db,
        fer,
        beta,
        i_ab,
        chi_be,
        skr,
        valid: skr >= 0.0 && beta <= 1.0,
    })
}
