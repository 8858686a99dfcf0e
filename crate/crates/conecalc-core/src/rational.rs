//! Exact rational scalars and the small combinatorial helpers used throughout.
//!
//! The coefficient carrier is `num_rational::BigRational`, which keeps values
//! in lowest terms with a positive denominator. No floating point enters any
//! exact computation; conversions to `f64` happen only at reporting boundaries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact scalar used everywhere in the library.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat<T: Into<BigInt>>(v: T) -> Rat {
    Rat::from_integer(v.into())
}

/// Fraction `num / den` in lowest terms. Panics if `den == 0`.
pub fn ratio<A: Into<BigInt>, B: Into<BigInt>>(num: A, den: B) -> Rat {
    Rat::new(num.into(), den.into())
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Double factorial n!! with the conventions (-1)!! = 0!! = 1.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// base^e by repeated squaring.
pub fn pow_rat(base: &Rat, e: u32) -> Rat {
    let mut result = Rat::one();
    let mut sq = base.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    result
}

/// Rational-to-float conversion that survives numerators/denominators beyond
/// the f64 exponent range by shifting both sides down first.
pub fn rat_to_f64(x: &Rat) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let numer_bits = x.numer().bits() as i64;
    let denom_bits = x.denom().bits() as i64;
    let shift = (numer_bits.min(denom_bits) - 900).max(0) as u64;
    let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Smallest convenient rational upper bound on sqrt(x), for nonnegative x.
/// Used to build exact-norm scalings: the result r satisfies r >= sqrt(x).
pub fn ceil_sqrt(x: &Rat) -> Rat {
    assert!(!x.is_negative(), "ceil_sqrt of a negative rational");
    if x.is_zero() {
        return Rat::zero();
    }
    // sqrt(p/q) = sqrt(pq)/q <= (isqrt(pq)+1)/q
    let pq = x.numer() * x.denom();
    Rat::new(pq.sqrt() + 1, x.denom().clone())
}

/// Exact ceiling of a rational, as a big integer.
pub fn ceil_rat(x: &Rat) -> BigInt {
    x.ceil().to_integer()
}
