//! Exact scalar tower: big rationals, cyclotomic numbers and quotient-ring
//! extensions, plus the expression mini-language and complex embedding.

pub mod complex;
pub mod cyclotomic;
pub mod parse;
pub mod scalar;
pub mod sqrt;

pub use complex::{eval_complex, eval_complex_at_root, ComplexApprox};
pub use cyclotomic::CyclotomicNumber;
pub use parse::{parse_scalar, ParseError};
pub use scalar::{scalar_arith, AlgebraicScalar, ArithKind, Modulus};
pub use sqrt::{scalar_sqrt, sqrt_rational};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rational = num_rational::BigRational;

/// Errors raised by exact scalar arithmetic.
#[derive(Debug, Clone, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero divisor under reducible modulus; discovered factor of m: {factor}")]
    ZeroDivisor { factor: String },
    #[error("incompatible quotient moduli: {0} vs {1}")]
    ModulusMismatch(String, String),
    #[error("adjoining a root over an existing quotient ring is not supported")]
    NestedRoot,
    #[error("{0}")]
    Invalid(String),
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Euler totient for small arguments.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as u32
}

/// Distinct prime factors, ascending.
pub fn prime_factors(n: u32) -> Vec<u32> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

pub fn gcd_u32(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exact integer factorial.
pub fn factorial(n: u32) -> Int {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    acc
}

/// Exact binomial coefficient.
pub fn binomial(n: u32, k: u32) -> Int {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k as u64 {
        num *= n as u64 - j;
        den *= j + 1;
    }
    num / den
}

/// d! / (r! s! t!) with r + s + t = d.
pub fn trinomial(d: u32, r: u32, s: u32, t: u32) -> Int {
    debug_assert_eq!(r + s + t, d);
    factorial(d) / (factorial(r) * factorial(s) * factorial(t))
}

/// Integer square root of a nonnegative BigInt.
pub fn int_sqrt(n: &Int) -> Int {
    assert!(!n.is_negative());
    n.sqrt()
}
