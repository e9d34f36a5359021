//! Dense 9×9 matrices over the scalar types used in the lab: exact integers,
//! exact golden numbers, and certified interval scalars.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use exactnum::{ApproxScalar, GoldenNumber, Rational};

/// Minimal ring interface shared by the scalar types we put in matrices.
pub trait Ring: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_is_zero(&self) -> bool;
}

impl Ring for BigInt {
    fn ring_zero() -> Self {
        BigInt::zero()
    }
    fn ring_one() -> Self {
        BigInt::one()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for Rational {
    fn ring_zero() -> Self {
        Rational::zero()
    }
    fn ring_one() -> Self {
        Rational::one()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for GoldenNumber {
    fn ring_zero() -> Self {
        GoldenNumber::zero()
    }
    fn ring_one() -> Self {
        GoldenNumber::one()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for ApproxScalar {
    fn ring_zero() -> Self {
        ApproxScalar::zero(64)
    }
    fn ring_one() -> Self {
        ApproxScalar::one(64)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn ring_is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

pub type Vector9<T> = Vec<T>;

#[derive(Clone, PartialEq)]
pub struct Matrix9<T> {
    elems: Vec<T>, // row-major, 81 entries
}

impl<T: Ring> Matrix9<T> {
    pub fn zero() -> Self {
        Matrix9 { elems: vec![T::ring_zero(); 81] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..9 {
            *m.at_mut(i, i) = T::ring_one();
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut elems = Vec::with_capacity(81);
        for r in 0..9 {
            for c in 0..9 {
                elems.push(f(r, c));
            }
        }
        Matrix9 { elems }
    }

    /// Rows given as integer literals (for the paper's displayed matrices).
    pub fn from_rows_i64(rows: [[i64; 9]; 9]) -> Self
    where
        T: From64,
    {
        Self::from_fn(|r, c| T::from_i64(rows[r][c]))
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.elems[r * 9 + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.elems[r * 9 + c]
    }

    pub fn mul(&self, rhs: &Matrix9<T>) -> Matrix9<T> {
        Matrix9::from_fn(|r, c| {
            let mut acc = T::ring_zero();
            for k in 0..9 {
                acc = acc.ring_add(&self.at(r, k).ring_mul(rhs.at(k, c)));
            }
            acc
        })
    }

    pub fn add(&self, rhs: &Matrix9<T>) -> Matrix9<T> {
        Matrix9::from_fn(|r, c| self.at(r, c).ring_add(rhs.at(r, c)))
    }

    pub fn sub(&self, rhs: &Matrix9<T>) -> Matrix9<T> {
        Matrix9::from_fn(|r, c| self.at(r, c).ring_sub(rhs.at(r, c)))
    }

    pub fn scale(&self, s: &T) -> Matrix9<T> {
        Matrix9::from_fn(|r, c| self.at(r, c).ring_mul(s))
    }

    pub fn mat_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), 9);
        (0..9)
            .map(|r| {
                let mut acc = T::ring_zero();
                for k in 0..9 {
                    acc = acc.ring_add(&self.at(r, k).ring_mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix9<T> {
        let mut acc = Matrix9::identity();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> Matrix9<T> {
        Matrix9::from_fn(|r, c| self.at(c, r).clone())
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..9).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn map<U: Ring>(&self, mut f: impl FnMut(&T) -> U) -> Matrix9<U> {
        Matrix9::from_fn(|r, c| f(self.at(r, c)))
    }

    /// Σ entries² — the exact square of the Frobenius norm.
    pub fn frobenius_sq(&self) -> T {
        let mut acc = T::ring_zero();
        for x in &self.elems {
            acc = acc.ring_add(&x.ring_mul(x));
        }
        acc
    }

    pub fn is_entrywise_zero(&self) -> bool {
        self.elems.iter().all(|x| x.ring_is_zero())
    }
}

/// Conversion from small integers, so the paper's displays can be entered once.
pub trait From64 {
    fn from_i64(n: i64) -> Self;
}

impl From64 for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl From64 for GoldenNumber {
    fn from_i64(n: i64) -> Self {
        GoldenNumber::from_int(n)
    }
}

impl From64 for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from(BigInt::from(n))
    }
}

impl Matrix9<BigInt> {
    pub fn to_golden(&self) -> Matrix9<GoldenNumber> {
        self.map(|x| GoldenNumber::from(x.clone()))
    }

    pub fn to_rational(&self) -> Matrix9<Rational> {
        self.map(|x| Rational::from(x.clone()))
    }

    /// Exact determinant by fraction-free elimination over the rationals.
    pub fn determinant(&self) -> Rational {
        self.to_rational().determinant()
    }
}

impl Matrix9<Rational> {
    pub fn determinant(&self) -> Rational {
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..9 {
            // Find a pivot.
            let Some(p) = (col..9).find(|&r| !m.at(r, col).is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                for c in 0..9 {
                    let tmp = m.at(p, c).clone();
                    *m.at_mut(p, c) = m.at(col, c).clone();
                    *m.at_mut(col, c) = tmp;
                }
                det = -det;
            }
            let pivot = m.at(col, col).clone();
            det *= &pivot;
            for r in (col + 1)..9 {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) / &pivot;
                for c in col..9 {
                    let delta = &factor * m.at(col, c);
                    *m.at_mut(r, c) = m.at(r, c) - delta;
                }
            }
        }
        det
    }
}

impl Matrix9<GoldenNumber> {
    /// Rank by Gaussian elimination over the field Q(√5).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..9 {
            let Some(p) = (row..9).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..9 {
                    let tmp = m.at(p, c).clone();
                    *m.at_mut(p, c) = m.at(row, c).clone();
                    *m.at_mut(row, c) = tmp;
                }
            }
            let pivot = m.at(row, col).clone();
            for r in (row + 1)..9 {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = &(m.at(r, col).clone()) / &pivot;
                for c in col..9 {
                    let delta = &factor * m.at(row, c);
                    *m.at_mut(r, c) = &(m.at(r, c).clone()) - &delta;
                }
            }
            rank += 1;
            row += 1;
            if row == 9 {
                break;
            }
        }
        rank
    }

    pub fn trace(&self) -> GoldenNumber {
        let mut acc = GoldenNumber::zero();
        for i in 0..9 {
            acc += self.at(i, i);
        }
        acc
    }

    pub fn to_approx(&self, prec: u32) -> Matrix9<ApproxScalar> {
        self.map(|g| ApproxScalar::from_golden(g, prec))
    }

    /// Interval enclosure of the Frobenius norm.
    pub fn frobenius_norm(&self, prec: u32) -> ApproxScalar {
        ApproxScalar::from_golden(&self.frobenius_sq(), prec).sqrt()
    }
}

impl Matrix9<ApproxScalar> {
    pub fn frobenius_norm(&self) -> ApproxScalar {
        self.frobenius_sq().sqrt()
    }
}

impl<T: Ring + std::fmt::Display> std::fmt::Debug for Matrix9<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..9 {
            for c in 0..9 {
                write!(f, "{}{}", self.at(r, c), if c < 8 { " " } else { "" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Standard basis vector e_k (1-based index, matching the paper's labels).
pub fn basis_vector<T: Ring>(k: usize) -> Vec<T> {
    assert!((1..=9).contains(&k));
    let mut v = vec![T::ring_zero(); 9];
    v[k - 1] = T::ring_one();
    v
}
