//! The field Q(√5): elements `a + b √5` with rational `a`, `b`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rational};

/// An element of Q(√5), stored as `a + b·√5` with reduced rationals.
///
/// Equality is field equality; the representation is canonical because
/// `BigRational` keeps itself reduced and `1, √5` are a basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GoldenNumber {
    pub a: Rational,
    pub b: Rational,
}

impl GoldenNumber {
    pub fn new(a: Rational, b: Rational) -> Self {
        GoldenNumber { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        GoldenNumber { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(Int::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// √5 itself.
    pub fn sqrt5() -> Self {
        GoldenNumber { a: Rational::zero(), b: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b√5`.
    pub fn conj(&self) -> Self {
        GoldenNumber { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² - 5b²` (a rational).
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from(Int::from(5)) * &self.b * &self.b
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt5)");
        GoldenNumber { a: &self.a / &n, b: -&self.b / &n }
    }

    /// Integer power (negative exponents via the inverse).
    pub fn powi(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().powi(-e);
        }
        let mut base = self.clone();
        let mut acc = GoldenNumber::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign of the real value `a + b√5` (-1, 0, +1), decided exactly.
    pub fn signum(&self) -> i32 {
        let (sa, sb) = (rat_sign(&self.a), rat_sign(&self.b));
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: compare a² with 5b²; value sign follows the larger
        // magnitude side.
        let a2 = &self.a * &self.a;
        let b25 = Rational::from(Int::from(5)) * &self.b * &self.b;
        match a2.cmp(&b25) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> std::cmp::Ordering {
        match (self - other).signum() {
            s if s < 0 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }
}

fn rat_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// φ = (1+√5)/2.
pub fn golden_phi() -> GoldenNumber {
    GoldenNumber::new(crate::ratio(1, 2), crate::ratio(1, 2))
}

/// `c(a) = (2/√5)·φ^{2a}`, the normalizing scalar attached to a gap exponent.
pub fn c_value(a: u64) -> GoldenNumber {
    let two_over_sqrt5 = GoldenNumber::new(Rational::zero(), crate::ratio(2, 5));
    &two_over_sqrt5 * &golden_phi().powi(2 * a as i64)
}

impl fmt::Debug for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt5)", self.a, self.b)
    }
}

impl fmt::Display for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt5", self.b)
        } else {
            write!(f, "{} + {}*sqrt5", self.a, self.b)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: GoldenNumber) -> GoldenNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GoldenNumber> for GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: &GoldenNumber) -> GoldenNumber {
                (&self).$method(rhs)
            }
        }
        impl $trait<GoldenNumber> for &GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: GoldenNumber) -> GoldenNumber {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&GoldenNumber> for &GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}
forward_binop!(Add, add);

impl Sub<&GoldenNumber> for &GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}
forward_binop!(Sub, sub);

impl Mul<&GoldenNumber> for &GoldenNumber {
    type Output = GoldenNumber;
    fn mul(self, rhs: &GoldenNumber) -> GoldenNumber {
        let five = Rational::from(Int::from(5));
        GoldenNumber {
            a: &self.a * &rhs.a + &five * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}
forward_binop!(Mul, mul);

impl Div<&GoldenNumber> for &GoldenNumber {
    type Output = GoldenNumber;
    fn div(self, rhs: &GoldenNumber) -> GoldenNumber {
        self * &rhs.inv()
    }
}
forward_binop!(Div, div);

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber { a: -self.a, b: -self.b }
    }
}

impl Neg for &GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber { a: -self.a.clone(), b: -self.b.clone() }
    }
}

impl AddAssign<&GoldenNumber> for GoldenNumber {
    fn add_assign(&mut self, rhs: &GoldenNumber) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&GoldenNumber> for GoldenNumber {
    fn sub_assign(&mut self, rhs: &GoldenNumber) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&GoldenNumber> for GoldenNumber {
    fn mul_assign(&mut self, rhs: &GoldenNumber) {
        *self = &*self * rhs;
    }
}

impl From<i64> for GoldenNumber {
    fn from(n: i64) -> Self {
        GoldenNumber::from_int(n)
    }
}

impl From<BigInt> for GoldenNumber {
    fn from(n: BigInt) -> Self {
        GoldenNumber::from_rational(Rational::from(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fib::fibonacci;
    use proptest::prelude::*;

    #[test]
    fn phi_is_half_plus_half_sqrt5() {
        let phi = golden_phi();
        assert_eq!(phi.a, crate::ratio(1, 2));
        assert_eq!(phi.b, crate::ratio(1, 2));
    }

    #[test]
    fn phi_minimal_polynomial() {
        let phi = golden_phi();
        let p = &(&phi * &phi) - &phi;
        assert_eq!(p, GoldenNumber::one());
        // φ·(φ-1) = 1, i.e. 1/φ = φ - 1.
        let lhs = &phi * &(&phi - &GoldenNumber::one());
        assert_eq!(lhs, GoldenNumber::one());
        assert_eq!(phi.inv(), &phi - &GoldenNumber::one());
    }

    #[test]
    fn c_value_at_zero() {
        // (2/√5) rationalized is (2/5)√5.
        let c0 = c_value(0);
        assert_eq!(c0.a, Rational::zero());
        assert_eq!(c0.b, crate::ratio(2, 5));
    }

    #[test]
    fn c_value_ratio_is_phi_squared() {
        let phi2 = golden_phi().powi(2);
        for a in 0..50 {
            assert_eq!(&c_value(a + 1) / &c_value(a), phi2);
        }
    }

    #[test]
    fn c_value_close_to_twice_fibonacci() {
        // Binet in exact form: c(a) - 2 F(2a) = (2/√5) φ^{-2a}.
        let two_over_sqrt5 = GoldenNumber::new(Rational::zero(), crate::ratio(2, 5));
        for a in 0u64..30 {
            let f = GoldenNumber::from(fibonacci(2 * a)) * GoldenNumber::from_int(2);
            let lhs = &c_value(a) - &f;
            let rhs = &two_over_sqrt5 * &golden_phi().powi(-2 * a as i64);
            assert_eq!(lhs, rhs, "a = {a}");
        }
    }

    #[test]
    fn c_value_positive_and_increasing() {
        let mut prev = GoldenNumber::zero();
        for a in 0..=100 {
            let c = c_value(a);
            assert!(c.is_positive());
            assert!(c.cmp_exact(&prev) == std::cmp::Ordering::Greater);
            prev = c;
        }
    }

    #[test]
    fn sign_of_mixed_terms() {
        // 9/4 - √5 > 0 since 81/16 > 5; 2 - √5 < 0.
        assert_eq!(GoldenNumber::new(crate::ratio(9, 4), crate::ratio(-1, 1)).signum(), 1);
        assert_eq!(GoldenNumber::new(crate::ratio(2, 1), crate::ratio(-1, 1)).signum(), -1);
        assert_eq!(GoldenNumber::zero().signum(), 0);
    }

    fn arb_golden() -> impl Strategy<Value = GoldenNumber> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
            .prop_map(|(an, ad, bn, bd)| GoldenNumber::new(crate::ratio(an, ad), crate::ratio(bn, bd)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_golden(), y in arb_golden(), z in arb_golden()) {
            // Associativity and distributivity.
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            // Inverses.
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv(), GoldenNumber::one());
            }
            prop_assert_eq!(&x + &(-&x), GoldenNumber::zero());
        }

        #[test]
        fn conjugation_is_multiplicative(x in arb_golden(), y in arb_golden()) {
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        }
    }
}
