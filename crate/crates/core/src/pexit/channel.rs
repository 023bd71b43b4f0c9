//! BI-AWGN channel quantities in the SNR conventions used throughout.
//!
//! `Es/N0 = R * Eb/N0`. With unit-energy BPSK the channel LLR is a
//! consistent Gaussian with `sigma_ch^2 = 8 Es/N0`.

use num_rational::Rational64;

use super::jfn::JFunction;
use crate::error::{Error, Result};

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Channel quality at a given `Eb/N0` for a code of rate `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelQuality {
    pub eb_n0_db: f64,
    pub rate: Rational64,
}

impl ChannelQuality {
    pub fn new(eb_n0_db: f64, rate: Rational64) -> Self {
        Self { eb_n0_db, rate }
    }

    pub fn from_es_n0_db(es_n0_db: f64, rate: Rational64) -> Self {
        Self::new(es_to_eb_db(es_n0_db, rate_f64(rate)), rate)
    }

    pub fn es_n0_db(&self) -> f64 {
        eb_to_es_db(self.eb_n0_db, rate_f64(self.rate))
    }

    /// `sqrt(8 R Eb/N0)`, the LLR standard deviation of a transmitted node.
    pub fn sigma_ch(&self) -> f64 {
        (8.0 * rate_f64(self.rate) * db_to_linear(self.eb_n0_db)).sqrt()
    }

    /// Channel MI of a node; zero for punctured nodes.
    pub fn channel_mi(&self, punctured: bool) -> f64 {
        if punctured {
            0.0
        } else {
            JFunction::standard().value(self.sigma_ch())
        }
    }
}

fn rate_f64(rate: Rational64) -> f64 {
    rational_to_f64(rate)
}

pub fn eb_to_es_db(eb_n0_db: f64, rate: f64) -> f64 {
    eb_n0_db + linear_to_db(rate)
}

pub fn es_to_eb_db(es_n0_db: f64, rate: f64) -> f64 {
    es_n0_db - linear_to_db(rate)
}

/// BI-AWGN capacity in bits per channel use at the given `Es/N0`.
pub fn bi_awgn_capacity(es_n0_db: f64) -> f64 {
    JFunction::standard().value((8.0 * db_to_linear(es_n0_db)).sqrt())
}

/// `beta = R / I_AB` with `I_AB` the BI-AWGN capacity at `es_n0_db`.
pub fn reconciliation_efficiency(rate: f64, es_n0_db: f64) -> Result<f64> {
    if !es_n0_db.is_finite() {
        return Err(Error::domain("reconciliation_efficiency", "SNR must be finite"));
    }
    let capacity = bi_awgn_capacity(es_n0_db);
    if capacity <= 0.0 {
        return Err(Error::domain(
            "reconciliation_efficiency",
            format!("capacity is zero at Es/N0 = {es_n0_db} dB"),
        ));
    }
    Ok(rate / capacity)
}

/// `Es/N0` in dB at which the BI-AWGN capacity equals `rate`.
pub fn capacity_limit_es_n0_db(rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::domain("capacity_limit", format!("rate must lie in (0, 1), got {rate}")));
    }
    let sigma = JFunction::standard().inverse(rate);
    Ok(linear_to_db(sigma * sigma / 8.0))
}

/// Shannon limit in `Eb/N0` dB for the BI-AWGN channel at `rate`.
pub fn capacity_limit_eb_n0_db(rate: f64) -> Result<f64> {
    Ok(es_to_eb_db(capacity_limit_es_n0_db(rate)?, rate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn saturated_channel() {
        assert_abs_diff_eq!(bi_awgn_capacity(40.0), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(reconciliation_efficiency(0.3, 40.0).unwrap(), 0.3, epsilon = 1e-12);
    }

    #[test]
    fn efficiency_is_one_at_capacity() {
        let es = 1.5;
        let r = bi_awgn_capacity(es);
        assert_abs_diff_eq!(reconciliation_efficiency(r, es).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn efficiency_for_rate_one_fiftieth() {
        // capacity 0.025 at the SNR from inverting J
        let es = capacity_limit_es_n0_db(0.025).unwrap();
        assert_abs_diff_eq!(bi_awgn_capacity(es), 0.025, epsilon = 1e-12);
        assert_abs_diff_eq!(reconciliation_efficiency(1.0 / 50.0, es).unwrap(), 0.8, epsilon = 1e-9);
    }

    #[test]
    fn vanishing_capacity_is_an_error() {
        assert!(reconciliation_efficiency(0.1, -4000.0).is_err());
        assert!(reconciliation_efficiency(0.1, f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn half_rate_shannon_limit() {
        // BI-AWGN limit for R = 1/2 is about 0.187 dB Eb/N0
        let lim = capacity_limit_eb_n0_db(0.5).unwrap();
        assert!((lim - 0.187).abs() < 0.005, "{lim}");
    }

    #[test]
    fn es_eb_conversion() {
        let ch = ChannelQuality::new(1.0, Rational64::new(1, 10));
        assert_abs_diff_eq!(ch.es_n0_db(), -9.0, epsilon = 1e-12);
        let back = ChannelQuality::from_es_n0_db(-9.0, Rational64::new(1, 10));
        assert_abs_diff_eq!(back.eb_n0_db, 1.0, epsilon = 1e-12);
    }
}
