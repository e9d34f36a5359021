//! `ApproxScalar`: a certified enclosure `[lo, hi]` of a real number, with all
//! operations outward-rounded at a declared working precision.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::dyadic::Dyadic;
use crate::golden::GoldenNumber;
use crate::Rational;

#[derive(Clone)]
pub struct ApproxScalar {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub prec: u32,
}

impl ApproxScalar {
    pub fn exact(d: Dyadic, prec: u32) -> Self {
        ApproxScalar { lo: d.clone(), hi: d, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::exact(Dyadic::one(), prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::exact(Dyadic::from_int(n), prec)
    }

    pub fn from_interval(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo.cmp(&hi) != Ordering::Greater, "inverted interval");
        ApproxScalar { lo, hi, prec }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let num = Dyadic::from_bigint(r.numer().clone());
        let den = Dyadic::from_bigint(r.denom().clone());
        ApproxScalar {
            lo: num.div_down(&den, prec),
            hi: num.div_up(&den, prec),
            prec,
        }
    }

    /// Enclosure of `a + b·√5`, tight to ~2^-prec relative width.
    ///
    /// The two terms can cancel almost completely (that is the point of the
    /// telescoping identities), so the working precision is raised until the
    /// result is relatively tight.
    pub fn from_golden(g: &GoldenNumber, prec: u32) -> Self {
        if g.is_zero() {
            return ApproxScalar::zero(prec);
        }
        let mut p = prec + 8;
        loop {
            let five = Dyadic::from_int(5);
            let s5 = ApproxScalar::from_interval(five.sqrt_down(p), five.sqrt_up(p), p);
            let a = ApproxScalar::from_rational(&g.a, p);
            let b = ApproxScalar::from_rational(&g.b, p);
            let enc = a.add(&b.mul(&s5));
            let width = enc.width();
            let magnitude = Dyadic::max(&enc.lo.abs(), &enc.hi.abs());
            // width ≤ magnitude · 2^-prec, compared exactly.
            if width.cmp(&magnitude.shl(-(prec as i64))) != std::cmp::Ordering::Greater {
                return ApproxScalar { lo: enc.lo, hi: enc.hi, prec };
            }
            p = p.saturating_mul(2);
            assert!(p < 2_000_000, "from_golden failed to stabilize");
        }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.add(&self.hi).shl(-1)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_certainly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_certainly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn certainly_lt(&self, other: &ApproxScalar) -> bool {
        self.hi.cmp(&other.lo) == Ordering::Less
    }

    pub fn certainly_le(&self, other: &ApproxScalar) -> bool {
        self.hi.cmp(&other.lo) != Ordering::Greater
    }

    /// True if the enclosures overlap (values could be equal).
    pub fn possibly_eq(&self, other: &ApproxScalar) -> bool {
        !(self.certainly_lt(other) || other.certainly_lt(self))
    }

    fn out(&self, lo: Dyadic, hi: Dyadic) -> ApproxScalar {
        ApproxScalar {
            lo: lo.round_down(self.prec),
            hi: hi.round_up(self.prec),
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> ApproxScalar {
        ApproxScalar { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }

    pub fn add(&self, rhs: &ApproxScalar) -> ApproxScalar {
        let prec = self.prec.max(rhs.prec);
        ApproxScalar { prec, ..self.clone() }.out(self.lo.add(&rhs.lo), self.hi.add(&rhs.hi))
    }

    pub fn sub(&self, rhs: &ApproxScalar) -> ApproxScalar {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &ApproxScalar) -> ApproxScalar {
        let cands = [
            self.lo.mul(&rhs.lo),
            self.lo.mul(&rhs.hi),
            self.hi.mul(&rhs.lo),
            self.hi.mul(&rhs.hi),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            lo = Dyadic::min(&lo, c);
            hi = Dyadic::max(&hi, c);
        }
        self.out(lo, hi)
    }

    pub fn square(&self) -> ApproxScalar {
        let m = self.mul(self);
        if self.contains_zero() {
            ApproxScalar { lo: Dyadic::zero(), hi: m.hi, prec: m.prec }
        } else {
            m
        }
    }

    /// None if the divisor encloses zero.
    pub fn try_div(&self, rhs: &ApproxScalar) -> Option<ApproxScalar> {
        if rhs.contains_zero() {
            return None;
        }
        let p = self.prec.max(rhs.prec);
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&rhs.lo, &rhs.hi] {
                let dn = a.div_down(b, p);
                let up = a.div_up(b, p);
                lo = Some(match lo {
                    None => dn.clone(),
                    Some(x) => Dyadic::min(&x, &dn),
                });
                hi = Some(match hi {
                    None => up.clone(),
                    Some(x) => Dyadic::max(&x, &up),
                });
            }
        }
        Some(ApproxScalar { lo: lo.unwrap(), hi: hi.unwrap(), prec: p })
    }

    /// Division by an interval known not to contain zero.
    pub fn div(&self, rhs: &ApproxScalar) -> ApproxScalar {
        self.try_div(rhs).expect("interval division by enclosure of zero")
    }

    /// Square root; the lower endpoint is clamped at zero to absorb rounding
    /// dust on provably-nonnegative quantities. Panics if hi < 0.
    pub fn sqrt(&self) -> ApproxScalar {
        assert!(
            !self.hi.is_negative(),
            "sqrt of certainly-negative interval"
        );
        let lo = if self.lo.is_negative() { Dyadic::zero() } else { self.lo.sqrt_down(self.prec + 2) };
        let hi = self.hi.sqrt_up(self.prec + 2);
        self.out(lo, hi)
    }

    pub fn powi(&self, e: u32) -> ApproxScalar {
        let mut acc = ApproxScalar::one(self.prec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Enclosure of exp(x) by scaling-and-squaring plus a truncated series
    /// with a rigorous tail bound.
    pub fn exp(&self) -> ApproxScalar {
        let p = self.prec;
        let half = Dyadic::new(BigInt::one(), -1);
        // Reduce until |x| ≤ 1/2.
        let mut k = 0u32;
        let mut y = self.clone();
        while Dyadic::max(&y.lo.abs(), &y.hi.abs()).cmp(&half) == Ordering::Greater {
            y = ApproxScalar { lo: y.lo.shl(-1), hi: y.hi.shl(-1), prec: p };
            k += 1;
            assert!(k < 128, "exp argument out of supported range");
        }
        // Series sum_{n<=N} y^n/n! with |tail| <= 2·(1/2)^{N+1}/(N+1)!.
        let mut n_terms = 4u32;
        let mut tail = tail_bound(n_terms);
        let eps = Dyadic::new(BigInt::one(), -(p as i64 + 8));
        while tail.cmp(&eps) == Ordering::Greater {
            n_terms += 2;
            tail = tail_bound(n_terms);
            assert!(n_terms < 4096);
        }
        let mut sum = ApproxScalar::one(p);
        let mut term = ApproxScalar::one(p);
        let mut fact = BigInt::one();
        for n in 1..=n_terms {
            fact *= n;
            term = term.mul(&y);
            let f = ApproxScalar::exact(Dyadic::from_bigint(fact.clone()), p);
            sum = sum.add(&term.div(&f));
        }
        let t = ApproxScalar::from_interval(tail.neg(), tail.clone(), p);
        let mut r = sum.add(&t);
        for _ in 0..k {
            r = r.mul(&r);
        }
        r
    }

    /// Enclosure of exp(x) − 1 (keeps precision for small x).
    pub fn exp_m1(&self) -> ApproxScalar {
        self.exp().sub(&ApproxScalar::one(self.prec))
    }

    /// Enclosure of atan(x).
    pub fn atan(&self) -> ApproxScalar {
        let lo = atan_point_enclosure(&self.lo, self.prec);
        let hi = atan_point_enclosure(&self.hi, self.prec);
        ApproxScalar { lo: lo.lo, hi: hi.hi, prec: self.prec }
    }

    /// Enclosure of π.
    pub fn pi(prec: u32) -> ApproxScalar {
        // Machin: π = 16·atan(1/5) − 4·atan(1/239).
        let p = prec + 16;
        let a5 = atan_inverse_integer(5, p);
        let a239 = atan_inverse_integer(239, p);
        let sixteen = ApproxScalar::from_int(16, p);
        let four = ApproxScalar::from_int(4, p);
        let r = sixteen.mul(&a5).sub(&four.mul(&a239));
        ApproxScalar { lo: r.lo.round_down(prec), hi: r.hi.round_up(prec), prec }
    }

    /// Angle in [0, π] whose cosine direction is (c, s) with s ≥ 0:
    /// atan2(s, c) for the upper half plane.
    pub fn half_plane_angle(s: &ApproxScalar, c: &ApproxScalar) -> ApproxScalar {
        let prec = s.prec.max(c.prec);
        assert!(!s.hi.is_negative(), "half_plane_angle wants s >= 0");
        if c.is_certainly_positive() {
            return s.div(c).atan();
        }
        let pi = ApproxScalar::pi(prec);
        if c.is_certainly_negative() {
            return pi.sub(&s.div(&c.neg()).atan());
        }
        if s.is_certainly_positive() {
            // angle = π/2 − atan(c/s)
            let half_pi = pi.mul(&ApproxScalar::exact(Dyadic::new(BigInt::one(), -1), prec));
            return half_pi.sub(&c.div(s).atan());
        }
        // Degenerate: cannot separate. Full range.
        ApproxScalar { lo: Dyadic::zero(), hi: pi.hi, prec }
    }

    /// Enclosure of the n-th root (x ≥ 0, n ≥ 1) by bisection.
    pub fn nth_root(&self, n: u32) -> ApproxScalar {
        assert!(n >= 1);
        assert!(!self.hi.is_negative(), "nth_root of negative interval");
        if n == 1 {
            return self.clone();
        }
        let p = self.prec;
        let root_dir = |target: &Dyadic, up: bool| -> Dyadic {
            if !target.is_positive() {
                return Dyadic::zero();
            }
            // Bracket [0, b] with b^n >= target.
            let mut b = Dyadic::one();
            while pow_dyadic(&b, n).cmp(target) == Ordering::Less {
                b = b.shl(1);
            }
            let mut lo = Dyadic::zero();
            let mut hi = b;
            for _ in 0..(p + 8) {
                let mid = lo.add(&hi).shl(-1).round_down(p + 16);
                if pow_dyadic(&mid, n).cmp(target) == Ordering::Less {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if up {
                hi
            } else {
                lo
            }
        };
        let lo = root_dir(&self.lo, false);
        let hi = root_dir(&self.hi, true);
        self.out(lo, hi)
    }

    /// Midpoint rendered with `digits` significant digits (deterministic).
    pub fn dec(&self, digits: u32) -> String {
        self.midpoint().to_decimal(digits)
    }

    pub fn bounds_dec(&self, digits: u32) -> String {
        format!("[{}, {}]", self.lo.to_decimal(digits), self.hi.to_decimal(digits))
    }
}

fn pow_dyadic(x: &Dyadic, n: u32) -> Dyadic {
    let mut acc = Dyadic::one();
    let mut base = x.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        n >>= 1;
    }
    acc
}

/// 2·(1/2)^{N+1}/(N+1)! as an upper-bound dyadic.
fn tail_bound(n: u32) -> Dyadic {
    let mut fact = BigInt::one();
    for i in 1..=(n as i64 + 1) {
        fact *= i;
    }
    let one = Dyadic::new(BigInt::one(), -(n as i64)); // 2·2^{-(n+1)}
    one.div_up(&Dyadic::from_bigint(fact), 64)
}

/// atan at a dyadic point, by argument halving and the alternating series.
fn atan_point_enclosure(x: &Dyadic, prec: u32) -> ApproxScalar {
    let p = prec + 16;
    let ax = ApproxScalar::exact(x.clone(), p);
    atan_interval_small(&reduce_atan(&ax, p).0, p, reduce_atan(&ax, p).1, prec)
}

/// atan(1/m) for integer m ≥ 2 (arguments already small).
fn atan_inverse_integer(m: i64, prec: u32) -> ApproxScalar {
    let p = prec + 8;
    let one = ApproxScalar::one(p);
    let x = one.div(&ApproxScalar::from_int(m, p));
    atan_interval_small(&x, p, 0, prec)
}

/// Repeated halving: atan(x) = 2·atan(x / (1 + sqrt(1+x²))).
fn reduce_atan(x: &ApproxScalar, p: u32) -> (ApproxScalar, u32) {
    let quarter = Dyadic::new(BigInt::one(), -2);
    let mut y = x.clone();
    let mut k = 0u32;
    while Dyadic::max(&y.lo.abs(), &y.hi.abs()).cmp(&quarter) == Ordering::Greater {
        let one = ApproxScalar::one(p);
        let denom = one.add(&one.add(&y.square()).sqrt());
        y = y.div(&denom);
        k += 1;
        assert!(k < 64, "atan reduction failed to converge");
    }
    (y, k)
}

/// Alternating series for |x| ≤ 1/4, then scale by 2^k; final rounding at `prec`.
fn atan_interval_small(x: &ApproxScalar, p: u32, k: u32, prec: u32) -> ApproxScalar {
    debug_assert!(Dyadic::max(&x.lo.abs(), &x.hi.abs()).cmp(&Dyadic::new(BigInt::one(), -1)) != Ordering::Greater);
    let eps = Dyadic::new(BigInt::one(), -(p as i64 + 4));
    let x2 = x.square();
    let mut term = x.clone();
    let mut sum = ApproxScalar::zero(p);
    let mut n = 0u32;
    loop {
        let denom = ApproxScalar::from_int((2 * n + 1) as i64, p);
        let contrib = term.div(&denom);
        sum = if n % 2 == 0 { sum.add(&contrib) } else { sum.sub(&contrib) };
        // Alternating series: remaining error within |term·x²/(2n+3)|.
        let next = term.mul(&x2);
        let bound = Dyadic::max(&next.lo.abs(), &next.hi.abs());
        if bound.cmp(&eps) != Ordering::Greater {
            let err = ApproxScalar::from_interval(bound.neg(), bound, p);
            sum = sum.add(&err);
            break;
        }
        term = next;
        n += 1;
        assert!(n < 16384, "atan series did not converge");
    }
    let scaled = ApproxScalar {
        lo: sum.lo.shl(k as i64),
        hi: sum.hi.shl(k as i64),
        prec: p,
    };
    ApproxScalar { lo: scaled.lo.round_down(prec), hi: scaled.hi.round_up(prec), prec }
}

impl fmt::Debug for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bounds_dec(12))
    }
}

impl fmt::Display for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dec(12))
    }
}
