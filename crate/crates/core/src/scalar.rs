//! Scalar abstraction shared by the analysis modules.
//!
//! Every closed-form relation in the analysis path uses only field
//! operations, so it runs unchanged on floats and on exact rationals.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Num, Signed};

/// Exact rational scalar. Denominators stay small for realistic tables.
pub type Rational = Ratio<i128>;

/// A real field element usable as a probability.
pub trait Real: Copy + Num + Signed + PartialOrd + Debug + Send + Sync + 'static {
    /// Conversion from a double. Rationals take the closest simple fraction.
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;

    fn from_usize(n: usize) -> Self {
        Self::from_f64(n as f64)
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Sum of an iterator of values.
    fn sum_of<I: IntoIterator<Item = Self>>(iter: I) -> Self {
        iter.into_iter().fold(Self::zero(), |acc, x| acc + x)
    }
}

macro_rules! impl_real_float {
    ($($t:ty),*) => {
        $(
            impl Real for $t {
                fn from_f64(x: f64) -> Self {
                    x as $t
                }
                fn to_f64(self) -> f64 {
                    self as f64
                }
            }
        )*
    };
}

impl_real_float!(f32, f64);

impl Real for Rational {
    fn from_f64(x: f64) -> Self {
        // Decimal inputs like 0.898 come back as 449/500; the fallback keeps
        // huge or pathological values from panicking.
        Ratio::approximate_float(x).unwrap_or_else(|| Ratio::from_integer(x.round() as i128))
    }

    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn from_usize(n: usize) -> Self {
        Ratio::from_integer(n as i128)
    }
}
