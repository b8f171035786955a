//! Arbitrary-precision oracle for the score formula, built on big-integer
//! fixed point with 320 fractional bits. Uses no floating-point math beyond
//! the exact conversion of the inputs and the final rounding.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

const BITS: u64 = 320;

fn one() -> BigInt {
    BigInt::one() << BITS
}

/// Exact fixed-point image of a finite non-negative f64.
pub fn from_f64(x: f64) -> BigInt {
    assert!(x.is_finite() && x >= 0.0);
    if x == 0.0 {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
    let shift = e + BITS as i64;
    let m = BigInt::from(mant);
    if shift >= 0 {
        m << shift as u64
    } else {
        m >> (-shift) as u64
    }
}

pub fn to_f64(v: &BigInt) -> f64 {
    let shifted = v >> (BITS - 64);
    shifted.to_f64().expect("finite") / 18_446_744_073_709_551_616.0
}

fn mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> BITS
}

fn div(a: &BigInt, b: &BigInt) -> BigInt {
    (a << BITS) / b
}

/// 2 * atanh(z) for 0 <= z < 1 by its power series.
fn two_atanh(z: &BigInt) -> BigInt {
    let z2 = mul(z, z);
    let mut power = z.clone();
    let mut sum = BigInt::zero();
    let mut n = 1u64;
    while !power.is_zero() {
        sum += &power / BigInt::from(n);
        power = mul(&power, &z2);
        n += 2;
    }
    sum * 2
}

fn ln2() -> BigInt {
    two_atanh(&div(&one(), &(one() * 3)))
}

/// Natural log of x >= 1.
pub fn ln(x: &BigInt) -> BigInt {
    assert!(*x >= one());
    let mut k = 0u64;
    let mut y = x.clone();
    let two = one() * 2;
    while y >= two {
        y >>= 1;
        k += 1;
    }
    let z = div(&(&y - one()), &(&y + one()));
    ln2() * k + two_atanh(&z)
}

/// e^x for x >= 0.
pub fn exp(x: &BigInt) -> BigInt {
    assert!(!x.is_negative());
    let l2 = ln2();
    let k = x / &l2;
    let r = x - &l2 * &k;
    let mut term = one();
    let mut sum = BigInt::zero();
    let mut n = 1u64;
    while !term.is_zero() {
        sum += &term;
        term = mul(&term, &r) / BigInt::from(n);
        n += 1;
    }
    sum << k.to_u64().expect("small exponent")
}

/// exp(mean(ln(1 + s_i))) - 1 in arbitrary precision.
pub fn crafter_score(rates: &[f64]) -> f64 {
    let mut total = BigInt::zero();
    for &s in rates {
        total += ln(&(from_f64(s) + one()));
    }
    let mean = total / BigInt::from(rates.len());
    to_f64(&(exp(&mean) - one()))
}

