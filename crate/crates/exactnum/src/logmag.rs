//! Log-domain magnitudes `sign · φ^exponent` and exact monomials
//! `(2/√5)^m · φ^n`, the shapes every decay bound in the reports takes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::golden::{golden_phi, GoldenNumber};
use crate::interval::ApproxScalar;
use crate::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

/// `sign · φ^exponent` with an exact rational exponent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogMagnitude {
    pub sign: Sign,
    pub exponent: Rational,
}

impl LogMagnitude {
    pub fn zero() -> Self {
        LogMagnitude { sign: Sign::Zero, exponent: Rational::zero() }
    }

    pub fn phi_pow(e: i64) -> Self {
        LogMagnitude { sign: Sign::Pos, exponent: crate::ratio(e, 1) }
    }

    pub fn phi_pow_rational(e: Rational) -> Self {
        LogMagnitude { sign: Sign::Pos, exponent: e }
    }

    /// Multiplication adds exponents exactly.
    pub fn mul(&self, rhs: &LogMagnitude) -> LogMagnitude {
        let sign = match (self.sign, rhs.sign) {
            (Sign::Zero, _) | (_, Sign::Zero) => return LogMagnitude::zero(),
            (Sign::Pos, Sign::Pos) | (Sign::Neg, Sign::Neg) => Sign::Pos,
            _ => Sign::Neg,
        };
        LogMagnitude { sign, exponent: &self.exponent + &rhs.exponent }
    }

    /// Numeric enclosure. Supports integer and half-integer exponents, which
    /// is all that ever occurs in this artifact.
    pub fn to_approx(&self, prec: u32) -> ApproxScalar {
        match self.sign {
            Sign::Zero => ApproxScalar::zero(prec),
            sign => {
                let two = BigInt::from(2);
                let doubled = &self.exponent * Rational::from(two.clone());
                assert!(
                    doubled.is_integer(),
                    "LogMagnitude exponent must be integer or half-integer"
                );
                let d: BigInt = doubled.to_integer();
                let d_i64: i64 = i64::try_from(&d).expect("exponent out of range");
                let phi2d = golden_phi().powi(d_i64.abs());
                let mut v = ApproxScalar::from_golden(&phi2d, prec + 4).sqrt();
                if d_i64 < 0 {
                    v = ApproxScalar::one(prec + 4).div(&v);
                }
                if sign == Sign::Neg {
                    v = v.neg();
                }
                v
            }
        }
    }
}

impl fmt::Display for LogMagnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Zero => write!(f, "0"),
            Sign::Pos => write!(f, "phi^{}", self.exponent),
            Sign::Neg => write!(f, "-phi^{}", self.exponent),
        }
    }
}

/// Exact positive monomial `(2/√5)^m · φ^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GoldenMonomial {
    /// Power of 2/√5.
    pub m: i64,
    /// Power of φ.
    pub n: i64,
}

impl GoldenMonomial {
    pub fn one() -> Self {
        GoldenMonomial { m: 0, n: 0 }
    }

    pub fn is_one(&self) -> bool {
        self.m == 0 && self.n == 0
    }

    /// One factor `c(a) = (2/√5)·φ^{2a}`.
    pub fn c_factor(a: u64) -> Self {
        GoldenMonomial { m: 1, n: 2 * a as i64 }
    }

    pub fn mul(&self, rhs: &GoldenMonomial) -> Self {
        GoldenMonomial { m: self.m + rhs.m, n: self.n + rhs.n }
    }

    pub fn div(&self, rhs: &GoldenMonomial) -> Self {
        GoldenMonomial { m: self.m - rhs.m, n: self.n - rhs.n }
    }

    /// Exact value in Q(√5).
    pub fn to_golden(&self) -> GoldenNumber {
        let two_over_sqrt5 = GoldenNumber::new(Rational::zero(), crate::ratio(2, 5));
        let phi = golden_phi();
        &two_over_sqrt5.powi(self.m) * &phi.powi(self.n)
    }

    /// Exact comparison against φ^k.
    pub fn cmp_phi_pow(&self, k: i64) -> std::cmp::Ordering {
        let lhs = self.to_golden();
        let rhs = golden_phi().powi(k);
        lhs.cmp_exact(&rhs)
    }

    pub fn cmp_exact(&self, rhs: &GoldenMonomial) -> std::cmp::Ordering {
        // (2/√5)^Δm · φ^Δn vs 1
        self.div(rhs).to_golden().cmp_exact(&GoldenNumber::one())
    }

    pub fn to_approx(&self, prec: u32) -> ApproxScalar {
        ApproxScalar::from_golden(&self.to_golden(), prec)
    }
}

impl fmt::Display for GoldenMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        match (self.m, self.n) {
            (0, n) => write!(f, "phi^{n}"),
            (m, 0) => write!(f, "(2/sqrt5)^{m}"),
            (m, n) => write!(f, "(2/sqrt5)^{m}*phi^{n}"),
        }
    }
}
