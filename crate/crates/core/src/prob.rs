//! Per-variable Bernoulli parameters and the induced product distribution.

use crate::math;
use crate::vars::State;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Independent Bernoulli parameters, one per variable, each strictly inside
/// `(0, 1)` so that every state has positive probability.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector {
    p: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProbError {
    OutOfRange { index: usize, value: f64 },
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for ProbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbError::OutOfRange { index, value } => {
                write!(f, "probability {value} at index {index} is not in (0,1)")
            }
            ProbError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} probabilities, got {got}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ProbError {}

impl ProbabilityVector {
    pub fn new(p: Vec<f64>) -> Result<Self, ProbError> {
        for (index, &value) in p.iter().enumerate() {
            if !(value > 0.0 && value < 1.0) {
                return Err(ProbError::OutOfRange { index, value });
            }
        }
        Ok(ProbabilityVector { p })
    }

    pub fn uniform(k: usize, p: f64) -> Result<Self, ProbError> {
        ProbabilityVector::new(vec![p; k])
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.p[i]
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }

    pub fn logit_of(&self, i: usize) -> f64 {
        logit(self.p[i])
    }

    /// `P(y | p)` as a plain product in variable-index order; every caller
    /// that compares probabilities uses this one routine so results agree
    /// bit for bit.
    pub fn state_probability(&self, y: &State) -> f64 {
        debug_assert_eq!(self.p.len(), y.len());
        let mut prod = 1.0;
        for (i, &p) in self.p.iter().enumerate() {
            prod *= if y.get(i) { p } else { 1.0 - p };
        }
        prod
    }

    /// `ln P(y | p)` as a sum of per-variable log weights.
    pub fn state_log_probability(&self, y: &State) -> f64 {
        let mut sum = 0.0;
        for (i, &p) in self.p.iter().enumerate() {
            sum += math::ln(if y.get(i) { p } else { 1.0 - p });
        }
        sum
    }
}

/// Natural-log inverse sigmoid, `ln(p / (1 - p))`.
pub fn logit(p: f64) -> f64 {
    math::ln(p / (1.0 - p))
}

/// Sigmoid, inverse of [`logit`].
pub fn sigmoid(a: f64) -> f64 {
    1.0 / (1.0 + math::exp(-a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_boundary_values() {
        assert!(ProbabilityVector::new(vec![0.5, 1.0]).is_err());
        assert!(ProbabilityVector::new(vec![0.0]).is_err());
        assert!(ProbabilityVector::new(vec![0.5, 0.999]).is_ok());
    }

    #[test]
    fn logit_closed_forms() {
        assert_eq!(logit(0.5), 0.0);
        assert!((logit(0.9) - 9.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn logit_round_trips_and_is_monotone() {
        let mut prev = f64::NEG_INFINITY;
        for i in 1..100 {
            let p = i as f64 / 100.0;
            let l = logit(p);
            assert!((sigmoid(l) - p).abs() < 1e-12);
            assert!(l > prev);
            prev = l;
        }
    }

    #[test]
    fn state_probability_is_the_plain_product() {
        let p = ProbabilityVector::new(vec![0.9, 0.2, 0.6]).unwrap();
        let y = State::new(vec![true, false, true]);
        assert!((p.state_probability(&y) - 0.9 * 0.8 * 0.6).abs() < 1e-15);
    }
}
