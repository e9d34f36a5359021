//! Exact arithmetic in the golden quadratic field Q(√5) together with
//! high-precision interval scalars used to certify numerical claims.
//!
//! Everything in this crate is deterministic and allocation-heavy rather than
//! clever: values are exact rationals, exact field elements, or dyadic
//! intervals with outward rounding. No floating point is used anywhere.

pub mod dyadic;
pub mod fib;
pub mod golden;
pub mod interval;
pub mod logmag;

pub use dyadic::Dyadic;
pub use fib::fibonacci;
pub use golden::{c_value, golden_phi, GoldenNumber};
pub use interval::ApproxScalar;
pub use logmag::{GoldenMonomial, LogMagnitude, Sign};

pub type Rational = num_rational::BigRational;
pub type Int = num_bigint::BigInt;

/// Convenience: rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}
