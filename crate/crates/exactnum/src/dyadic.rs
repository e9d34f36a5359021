//! Arbitrary-precision dyadic numbers `mant · 2^exp` with directed rounding.
//!
//! These are the endpoints of every certified enclosure in this crate. All
//! rounding is explicit: `round_down` / `round_up` truncate the mantissa to a
//! requested bit width toward -∞ / +∞.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Dyadic {
    pub mant: BigInt,
    pub exp: i64,
}

/// Floor of `m / 2^k` (shift toward -∞).
fn floor_shr(m: &BigInt, k: u64) -> BigInt {
    if k == 0 {
        return m.clone();
    }
    let mag = m.magnitude() >> k;
    match m.sign() {
        Sign::NoSign => BigInt::zero(),
        Sign::Plus => BigInt::from(mag),
        Sign::Minus => {
            let lost = m.magnitude() & ((BigUint::one() << k) - BigUint::one());
            let mut q = BigInt::from(mag);
            if !lost.is_zero() {
                q += 1;
            }
            -q
        }
    }
}

/// Ceiling of `m / 2^k`.
fn ceil_shr(m: &BigInt, k: u64) -> BigInt {
    -floor_shr(&-m, k)
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }.normalized()
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic::new(n, 0)
    }

    /// Strip trailing zero bits so representations stay small.
    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant = floor_shr(&self.mant, tz); // exact: low bits are zero
            self.exp += tz as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn bits(&self) -> u64 {
        self.mant.magnitude().bits()
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Exact sum.
    pub fn add(&self, rhs: &Dyadic) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, rhs: &Dyadic) -> Self {
        self.add(&rhs.neg())
    }

    /// Exact product.
    pub fn mul(&self, rhs: &Dyadic) -> Self {
        Dyadic::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }

    /// Exact multiplication by 2^k.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn cmp(&self, rhs: &Dyadic) -> Ordering {
        // Compare via the sign of the exact difference.
        let d = self.sub(rhs);
        if d.mant.is_zero() {
            Ordering::Equal
        } else if d.mant.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp(b) == Ordering::Greater {
            b.clone()
        } else {
            a.clone()
        }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp(b) == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        }
    }

    /// Largest dyadic with `prec` mantissa bits that is ≤ self.
    pub fn round_down(&self, prec: u32) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        Dyadic::new(floor_shr(&self.mant, k), self.exp + k as i64)
    }

    /// Smallest dyadic with `prec` mantissa bits that is ≥ self.
    pub fn round_up(&self, prec: u32) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        Dyadic::new(ceil_shr(&self.mant, k), self.exp + k as i64)
    }

    /// Directed quotient at `prec` bits: result ≤ exact quotient.
    pub fn div_down(&self, rhs: &Dyadic, prec: u32) -> Self {
        assert!(!rhs.is_zero(), "dyadic division by zero");
        // Scale the numerator so the integer quotient carries prec+2 bits.
        let scale = (prec as i64 + 2) + rhs.bits() as i64 - self.bits() as i64;
        let scale = scale.max(0) as u64;
        let num = &self.mant << scale;
        let q = floor_div(&num, &rhs.mant);
        Dyadic::new(q, self.exp - rhs.exp - scale as i64).round_down(prec + 4)
    }

    /// Directed quotient at `prec` bits: result ≥ exact quotient.
    pub fn div_up(&self, rhs: &Dyadic, prec: u32) -> Self {
        assert!(!rhs.is_zero(), "dyadic division by zero");
        let scale = (prec as i64 + 2) + rhs.bits() as i64 - self.bits() as i64;
        let scale = scale.max(0) as u64;
        let num = &self.mant << scale;
        let q = ceil_div(&num, &rhs.mant);
        Dyadic::new(q, self.exp - rhs.exp - scale as i64).round_up(prec + 4)
    }

    /// Largest dyadic at roughly `prec` bits with square ≤ self. Requires self ≥ 0.
    pub fn sqrt_down(&self, prec: u32) -> Self {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let (n, k) = self.sqrt_scaled(prec);
        let s = BigInt::from(n.sqrt());
        Dyadic::new(s, -(k as i64))
    }

    /// Smallest dyadic at roughly `prec` bits with square ≥ self. Requires self ≥ 0.
    pub fn sqrt_up(&self, prec: u32) -> Self {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let (n, k) = self.sqrt_scaled_up(prec);
        let s = n.sqrt();
        let s = if &s * &s == n { s } else { s + BigUint::one() };
        Dyadic::new(BigInt::from(s), -(k as i64))
    }

    /// Returns (N, t) with N ≤ self·4^t, N holding ≥ 2(prec+2) bits.
    fn sqrt_scaled(&self, prec: u32) -> (BigUint, u64) {
        let want = 2 * (prec as i64 + 2);
        // self = m·2^e; N = m·2^(e+k) with k even, so N = self·4^(k/2).
        let mut k = (want - self.bits() as i64 - self.exp).max(0);
        if k % 2 != 0 {
            k += 1;
        }
        let shift = self.exp + k;
        let n = if shift >= 0 {
            self.mant.magnitude() << shift as u64
        } else {
            self.mant.magnitude() >> (-shift) as u64 // floor: ok for lower bound
        };
        (n, (k / 2) as u64)
    }

    fn sqrt_scaled_up(&self, prec: u32) -> (BigUint, u64) {
        let want = 2 * (prec as i64 + 2);
        let mut k = (want - self.bits() as i64 - self.exp).max(0);
        if k % 2 != 0 {
            k += 1;
        }
        let shift = self.exp + k;
        let n = if shift >= 0 {
            self.mant.magnitude() << shift as u64
        } else {
            let down = self.mant.magnitude() >> (-shift) as u64;
            let lost = self.mant.magnitude() & ((BigUint::one() << (-shift) as u64) - BigUint::one());
            if lost.is_zero() {
                down
            } else {
                down + BigUint::one()
            }
        };
        (n, (k / 2) as u64)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Deterministic decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        // decimal exponent estimate: value ≈ mant·2^exp
        let bits = self.bits() as i64 + self.exp; // value < 2^bits
        // d10 ≈ floor(bits·log10(2))
        let d10 = ((bits as f64) * 0.30102999566398119) as i64;
        // We want an integer i = round(value · 10^(digits - 1 - d10_adjusted)).
        let mut shift10 = digits as i64 - 1 - d10;
        let mut scaled = self.scale_pow10_round(shift10);
        // Adjust so scaled has exactly `digits` digits.
        loop {
            let s = scaled.magnitude().to_string();
            if s.len() as i64 > digits as i64 {
                shift10 -= 1;
                scaled = self.scale_pow10_round(shift10);
            } else if (s.len() as i64) < digits as i64 && !scaled.is_zero() {
                shift10 += 1;
                scaled = self.scale_pow10_round(shift10);
            } else {
                break;
            }
        }
        let neg = scaled.is_negative();
        let ds = scaled.magnitude().to_string();
        let exp10 = (ds.len() as i64 - 1) - shift10;
        let mantissa = if ds.len() > 1 {
            format!("{}.{}", &ds[..1], &ds[1..])
        } else {
            ds.clone()
        };
        format!("{}{}e{}", if neg { "-" } else { "" }, mantissa, exp10)
    }

    /// round(value · 10^s) as BigInt (half away from zero).
    fn scale_pow10_round(&self, s: i64) -> BigInt {
        let ten = BigInt::from(10);
        // value·10^s = mant · 2^exp · 10^s
        let mut num = self.mant.clone();
        let mut den = BigInt::one();
        if s >= 0 {
            num *= ten.pow(s as u32);
        } else {
            den *= ten.pow((-s) as u32);
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        // round-half-away
        let two = BigInt::from(2);
        let (q, r) = (num.clone()).div_rem(&den);
        let r2 = r.abs() * &two;
        if r2 >= den {
            if num.is_negative() {
                q - BigInt::one()
            } else {
                q + BigInt::one()
            }
        } else {
            q
        }
    }
}

/// Floor division for BigInt (toward -∞).
pub fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if !r.is_zero() && (r.is_negative() != b.is_negative()) {
        q - BigInt::one()
    } else {
        q
    }
}

/// Ceiling division for BigInt (toward +∞).
pub fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -floor_div(&-a, b)
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn floor_and_ceil_shifts() {
        assert_eq!(floor_shr(&BigInt::from(-5), 1), BigInt::from(-3));
        assert_eq!(ceil_shr(&BigInt::from(-5), 1), BigInt::from(-2));
        assert_eq!(floor_shr(&BigInt::from(5), 1), BigInt::from(2));
        assert_eq!(ceil_shr(&BigInt::from(5), 1), BigInt::from(3));
    }

    #[test]
    fn arithmetic_is_exact() {
        let x = d(3, -2); // 0.75
        let y = d(5, -3); // 0.625
        assert_eq!(x.add(&y), d(11, -3));
        assert_eq!(x.mul(&y), d(15, -5));
        assert_eq!(x.sub(&y), d(1, -3));
    }

    #[test]
    fn directed_division_brackets_quotient() {
        let a = d(1, 0);
        let b = d(3, 0);
        let lo = a.div_down(&b, 64);
        let hi = a.div_up(&b, 64);
        assert!(lo.cmp(&hi) != Ordering::Greater);
        // 3·lo ≤ 1 ≤ 3·hi
        assert!(lo.mul(&b).cmp(&a) != Ordering::Greater);
        assert!(hi.mul(&b).cmp(&a) != Ordering::Less);
        // tight to ~2^-64
        let width = hi.sub(&lo);
        assert!(width.cmp(&d(1, -60)) == Ordering::Less);
    }

    #[test]
    fn sqrt_brackets() {
        for v in [2i64, 3, 5, 7, 10, 1 << 20] {
            let x = d(v, 0);
            let lo = x.sqrt_down(96);
            let hi = x.sqrt_up(96);
            assert!(lo.mul(&lo).cmp(&x) != Ordering::Greater, "v={v}");
            assert!(hi.mul(&hi).cmp(&x) != Ordering::Less, "v={v}");
            assert!(hi.sub(&lo).cmp(&d(1, -90)) == Ordering::Less);
        }
        // subnormal-ish inputs
        let x = d(5, -200);
        let lo = x.sqrt_down(80);
        let hi = x.sqrt_up(80);
        assert!(lo.mul(&lo).cmp(&x) != Ordering::Greater);
        assert!(hi.mul(&hi).cmp(&x) != Ordering::Less);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(d(1, -1).to_decimal(3), "5.00e-1");
        assert_eq!(d(3, 0).to_decimal(4), "3.000e0");
        assert_eq!(d(-1024, 0).to_decimal(2), "-1.0e3");
    }
}
