//! Scalar abstraction for ranking scores.
//!
//! Ranks are computed generically so that the same code serves `f32`/`f64`
//! in production and exact rationals in tests and oracles.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num};

/// A numeric type a candidate rank can be expressed in.
pub trait Score: Num + FromPrimitive + PartialOrd + Copy + Debug + Send + Sync {
    /// Builds `numer / denom` in this scalar type.
    fn from_fraction(numer: u64, denom: u64) -> Self {
        Self::from_u64(numer).expect("numerator representable")
            / Self::from_u64(denom).expect("denominator representable")
    }

    /// Lossy view used for display and serialization.
    fn to_f64(self) -> f64;
}

impl Score for f32 {
    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Score for f64 {
    fn to_f64(self) -> f64 {
        self
    }
}

impl Score for Ratio<i64> {
    fn from_fraction(numer: u64, denom: u64) -> Self {
        Ratio::new(numer as i64, denom as i64)
    }

    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl Score for Ratio<i128> {
    fn from_fraction(numer: u64, denom: u64) -> Self {
        Ratio::new(numer as i128, denom as i128)
    }

    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}
