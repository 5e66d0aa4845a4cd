//! Exact square roots of rationals inside the cyclotomic tower.
//!
//! sqrt(-1) = zeta_4, sqrt(2) = zeta_8 + zeta_8^-1, and sqrt(p) for odd
//! primes p comes from the quadratic Gauss sum with the classical sign.
//! Composite arguments multiply the prime pieces; the global branch rule
//! (positive real part, else positive imaginary part) then holds without any
//! numeric correction because each factor is the positive root. Arguments
//! whose squarefree part would push the level past `MAX_DENSE_LEVEL` fall
//! back to adjoining a root of t^2 - r.

use super::cyclotomic::CyclotomicNumber;
use super::scalar::{AlgebraicScalar, Modulus};
use super::{lcm_u32, ArithError, Int, Rational};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest cyclotomic level the dense representation is willing to use.
pub const MAX_DENSE_LEVEL: u32 = 240;

fn legendre(k: u32, p: u32) -> i32 {
    // p odd prime, 1 <= k < p
    let mut r = 1u64;
    let mut b = k as u64 % p as u64;
    let mut e = (p as u64 - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Positive square root of an odd prime p, via the Gauss sum.
fn sqrt_odd_prime(p: u32) -> CyclotomicNumber {
    let mut g = CyclotomicNumber::zero();
    for k in 1..p {
        let term = CyclotomicNumber::zeta_pow(p, k as i64);
        g = if legendre(k, p) == 1 {
            g.add(&term)
        } else {
            g.sub(&term)
        };
    }
    if p % 4 == 1 {
        // g = sqrt(p) already
        g
    } else {
        // g = i sqrt(p); multiply by -i
        g.mul(&CyclotomicNumber::zeta_pow(4, -1))
    }
}

fn sqrt_two() -> CyclotomicNumber {
    CyclotomicNumber::zeta(8).add(&CyclotomicNumber::zeta_pow(8, -1))
}

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Cyclotomic level needed for the dense route on squarefree s (s > 1).
fn dense_level(parts: &[u64], negative: bool) -> Option<u32> {
    let mut level: u32 = if negative { 4 } else { 1 };
    for &p in parts {
        let l = match p {
            2 => 8,
            p if p % 4 == 1 => p as u32,
            p => 4 * p as u32,
        };
        if p > MAX_DENSE_LEVEL as u64 {
            return None;
        }
        level = lcm_u32(level, l);
        if level > MAX_DENSE_LEVEL {
            return None;
        }
    }
    Some(level)
}

/// Exact s with s^2 = r. Branch: the complex embedding of s has positive real
/// part, or positive imaginary part when the real part vanishes.
pub fn sqrt_rational(r: &Rational) -> AlgebraicScalar {
    assert!(!r.is_zero(), "sqrt of zero is excluded by contract");
    // sqrt(n/d) = sqrt(n*d) / d
    let n = r.numer().clone();
    let d = r.denom().clone();
    let negative = n.is_negative();
    let nd: Int = n.abs() * &d;
    // split square part from squarefree part
    let (square_root, squarefree) = split_square(&nd);
    let scale = Rational::new(square_root, d);
    let sf_parts: Vec<u64> = if squarefree.is_one() {
        vec![]
    } else {
        match squarefree.to_u64() {
            Some(v) => factor_u64(v).into_iter().map(|(p, _)| p).collect(),
            None => {
                return adjoin_sqrt(r);
            }
        }
    };
    if dense_level(&sf_parts, negative).is_none() {
        return adjoin_sqrt(r);
    }
    let mut acc = CyclotomicNumber::from_rational(scale);
    for &p in &sf_parts {
        let piece = if p == 2 { sqrt_two() } else { sqrt_odd_prime(p as u32) };
        acc = acc.mul(&piece);
    }
    if negative {
        acc = acc.mul(&CyclotomicNumber::zeta(4));
    }
    AlgebraicScalar::from_cyclotomic(acc.reduce_level())
}

/// n = a^2 * b with b squarefree; returns (a, b). Falls back to (1, n) when n
/// is too large to factor quickly.
fn split_square(n: &Int) -> (Int, Int) {
    if let Some(v) = n.to_u64() {
        let mut a = 1u64;
        let mut b = 1u64;
        for (p, e) in factor_u64(v) {
            a *= p.pow(e / 2);
            if e % 2 == 1 {
                b *= p;
            }
        }
        (Int::from(a), Int::from(b))
    } else {
        // cheap perfect-square check, otherwise give up on splitting
        let s = n.sqrt();
        if &(&s * &s) == n {
            (s, Int::one())
        } else {
            (Int::one(), n.clone())
        }
    }
}

/// Fallback: adjoin a root of t^2 - r.
fn adjoin_sqrt(r: &Rational) -> AlgebraicScalar {
    let m = Modulus::new(vec![
        CyclotomicNumber::from_rational(-r.clone()),
        CyclotomicNumber::zero(),
        CyclotomicNumber::one(),
    ])
    .expect("t^2 - r is a valid modulus for nonzero r");
    AlgebraicScalar::adjoined_root(m)
}

/// Square root of a general scalar: rational arguments go through
/// `sqrt_rational`; other cyclotomic values adjoin t^2 - s. Values already in
/// a quotient ring are rejected.
pub fn scalar_sqrt(s: &AlgebraicScalar) -> Result<AlgebraicScalar, ArithError> {
    if s.is_zero() {
        return Err(ArithError::Invalid("sqrt of zero".into()));
    }
    if let Some(q) = s.as_rational() {
        return Ok(sqrt_rational(&q));
    }
    match s.as_cyclotomic() {
        Some(c) => {
            let m = Modulus::new(vec![
                c.neg(),
                CyclotomicNumber::zero(),
                CyclotomicNumber::one(),
            ])?;
            Ok(AlgebraicScalar::adjoined_root(m))
        }
        None => Err(ArithError::NestedRoot),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn sqrt_minus_three_is_gauss_sum() {
        let s = sqrt_rational(&rat_int(-3));
        let expect = AlgebraicScalar::from_cyclotomic(
            CyclotomicNumber::zeta(3).sub(&CyclotomicNumber::zeta_pow(3, 2)),
        );
        assert_eq!(s, expect);
        assert_eq!(s.mul(&s), AlgebraicScalar::from_int(-3));
    }

    #[test]
    fn sqrt_two_form() {
        let s = sqrt_rational(&rat_int(2));
        let expect = AlgebraicScalar::from_cyclotomic(
            CyclotomicNumber::zeta(8).add(&CyclotomicNumber::zeta_pow(8, 7)),
        );
        assert_eq!(s, expect);
    }

    #[test]
    fn sqrt_one() {
        assert!(sqrt_rational(&rat_int(1)).is_one());
    }

    #[test]
    fn sqrt_squares_back() {
        for (n, d) in [(5i64, 1i64), (-2, 1), (8, 5), (-6, 5), (49, 4), (30, 1), (-30, 25)] {
            let r = rat(n, d);
            let s = sqrt_rational(&r);
            assert_eq!(s.mul(&s).as_rational().unwrap(), r, "sqrt({}/{})", n, d);
        }
    }

    #[test]
    fn sqrt_large_prime_adjoins() {
        let r = rat_int(999983);
        let s = sqrt_rational(&r);
        assert!(s.modulus().is_some());
        assert_eq!(s.mul(&s).as_rational().unwrap(), r);
    }
}
