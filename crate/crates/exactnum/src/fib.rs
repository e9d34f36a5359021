//! Fibonacci numbers by fast doubling.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// F(0) = 0, F(1) = 1, F(n) = F(n-1) + F(n-2).
pub fn fibonacci(n: u64) -> BigInt {
    fib_pair(n).0
}

/// Returns (F(n), F(n+1)).
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fib_pair(n / 2);
    // F(2k) = F(k)·(2F(k+1) − F(k)); F(2k+1) = F(k)² + F(k+1)².
    let c = &a * (&b * 2 - &a);
    let d = &a * &a + &b * &b;
    if n % 2 == 0 {
        (c, d)
    } else {
        (d.clone(), c + d)
    }
}
