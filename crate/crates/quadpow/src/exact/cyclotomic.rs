//! Dense cyclotomic arithmetic: elements of Q(zeta_N) as coefficient vectors
//! over the power basis {zeta_N^e : 0 <= e < phi(N)}, reduced modulo the N-th
//! cyclotomic polynomial.
//!
//! Values at different levels are combined by lifting to the lcm level.
//! `reduce_level` walks the level down to the conductor, so equal values get
//! identical representations after canonicalization.

use super::{euler_phi, prime_factors, ArithError, Rational};
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

/// Precomputed data for one cyclotomic level.
struct LevelData {
    phi: usize,
    /// Monic cyclotomic polynomial Phi_n, length phi + 1.
    poly: Vec<Rational>,
    /// Reductions of x^k mod Phi_n for k in phi..n, each of length phi.
    red: Vec<Vec<Rational>>,
}

static LEVELS: Lazy<RwLock<HashMap<u32, Arc<LevelData>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

fn poly_mul_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Quotient of exact polynomial division (remainder must vanish).
fn poly_div_exact_q(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn].clone();
    assert!(!lead.is_zero());
    let mut quot = vec![Rational::zero(); rem.len() - dn];
    for k in (dn..rem.len()).rev() {
        let c = &rem[k] / &lead;
        if !c.is_zero() {
            quot[k - dn] = c.clone();
            for j in 0..=dn {
                let v = &den[j] * &c;
                rem[k - dn + j] -= v;
            }
        }
    }
    assert!(rem.iter().all(Rational::is_zero), "inexact division");
    quot
}

fn cyclotomic_poly(n: u32) -> Vec<Rational> {
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    let mut num = vec![Rational::zero(); n as usize + 1];
    num[0] = -Rational::one();
    num[n as usize] = Rational::one();
    let mut acc = num;
    for d in super::divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = level_data(d).poly.clone();
        acc = poly_div_exact_q(&acc, &phi_d);
    }
    acc
}

fn level_data(n: u32) -> Arc<LevelData> {
    assert!(n >= 1, "cyclotomic level must be positive");
    if let Some(d) = LEVELS.read().unwrap().get(&n) {
        return d.clone();
    }
    let poly = if n == 1 {
        vec![-Rational::one(), Rational::one()]
    } else {
        cyclotomic_poly(n)
    };
    let phi = poly.len() - 1;
    debug_assert_eq!(phi as u32, euler_phi(n));
    // x^phi = -(lower part of Phi_n); then shift-and-reduce upward.
    let mut red: Vec<Vec<Rational>> = Vec::with_capacity(n as usize - phi);
    if (phi as u32) < n {
        let base: Vec<Rational> = poly[..phi].iter().map(|c| -c.clone()).collect();
        red.push(base);
        for _ in (phi as u32 + 1)..n {
            let prev = red.last().unwrap().clone();
            let mut next = vec![Rational::zero(); phi];
            // multiply by x: shift, then fold the overflowing top term
            let top = prev[phi - 1].clone();
            for i in (1..phi).rev() {
                next[i] = prev[i - 1].clone();
            }
            if !top.is_zero() {
                for (i, c) in red[0].iter().enumerate() {
                    next[i] += &top * c;
                }
            }
            red.push(next);
        }
    }
    let data = Arc::new(LevelData { phi, poly, red });
    LEVELS.write().unwrap().insert(n, data.clone());
    data
}

/// Exact element of Q(zeta_level).
#[derive(Clone)]
pub struct CyclotomicNumber {
    level: u32,
    /// Length phi(level); coeffs[e] multiplies zeta_level^e.
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        CyclotomicNumber {
            level: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        CyclotomicNumber {
            level: 1,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        CyclotomicNumber {
            level: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(super::rat_int(n))
    }

    /// zeta_n^k, reduced to the canonical basis at level n.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as usize;
        let data = level_data(n);
        let mut coeffs = vec![Rational::zero(); data.phi];
        if e < data.phi {
            coeffs[e] = Rational::one();
        } else {
            coeffs.clone_from(&data.red[e - data.phi]);
        }
        CyclotomicNumber { level: n, coeffs }
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// Some(q) iff the value lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Reduce a raw coefficient list (indexed by zeta powers, any length) at level n.
    fn from_raw(n: u32, raw: Vec<Rational>) -> Self {
        let data = level_data(n);
        let mut folded = vec![Rational::zero(); (n as usize).max(1)];
        for (k, c) in raw.into_iter().enumerate() {
            if !c.is_zero() {
                folded[k % n as usize] += c;
            }
        }
        let mut coeffs = vec![Rational::zero(); data.phi];
        for (k, c) in folded.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < data.phi {
                coeffs[k] += c;
            } else {
                for (i, r) in data.red[k - data.phi].iter().enumerate() {
                    if !r.is_zero() {
                        coeffs[i] += &c * r;
                    }
                }
            }
        }
        CyclotomicNumber { level: n, coeffs }
    }

    /// Embed into Q(zeta_m); requires level | m.
    pub fn lift_to(&self, m: u32) -> Self {
        if m == self.level {
            return self.clone();
        }
        assert!(
            m % self.level == 0,
            "lift target {} not a multiple of level {}",
            m,
            self.level
        );
        let stride = (m / self.level) as usize;
        let mut raw = vec![Rational::zero(); (self.coeffs.len() - 1) * stride + 1];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[e * stride] = c.clone();
            }
        }
        Self::from_raw(m, raw)
    }

    fn common_level(&self, other: &Self) -> u32 {
        super::lcm_u32(self.level, other.level)
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.common_level(other);
        let mut a = self.lift_to(m);
        let b = other.lift_to(m);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.common_level(other);
        let a = self.lift_to(m);
        let b = other.lift_to(m);
        if let Some(q) = a.as_rational() {
            let mut out = b.clone();
            for c in out.coeffs.iter_mut() {
                *c *= q;
            }
            return out;
        }
        if let Some(q) = b.as_rational() {
            let mut out = a.clone();
            for c in out.coeffs.iter_mut() {
                *c *= q;
            }
            return out;
        }
        let raw = poly_mul_q(&a.coeffs, &b.coeffs);
        Self::from_raw(m, raw)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CyclotomicNumber {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_n.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self {
                level: self.level,
                coeffs: {
                    let mut v = vec![Rational::zero(); self.coeffs.len()];
                    v[0] = Rational::one() / q;
                    v
                },
            });
        }
        let data = level_data(self.level);
        // extended Euclid on (value, Phi_n) over Q[x]
        let mut r0: Vec<Rational> = self.coeffs.clone();
        trim(&mut r0);
        let mut r1: Vec<Rational> = data.poly.clone();
        let mut s0 = vec![Rational::one()];
        let mut s1: Vec<Rational> = vec![];
        while !r1.is_empty() {
            let (q, rem) = poly_divmod_q(&r0, &r1);
            let s_next = poly_sub_q(&s0, &poly_mul_trim(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_next;
        }
        // r0 = gcd (a nonzero constant since Phi_n is irreducible), s0 its Bezout factor
        debug_assert_eq!(r0.len(), 1);
        let inv_g = Rational::one() / &r0[0];
        let mut coeffs = vec![Rational::zero(); data.phi];
        for (i, c) in s0.iter().enumerate() {
            if i < data.phi {
                coeffs[i] = c * &inv_g;
            } else {
                for (j, r) in data.red[i - data.phi].iter().enumerate() {
                    coeffs[j] += c * &inv_g * r;
                }
            }
        }
        Ok(CyclotomicNumber {
            level: self.level,
            coeffs,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self, ArithError> {
        if e == 0 {
            return Ok(Self::one());
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Galois action sigma_a: zeta -> zeta^a; requires gcd(a, level) = 1.
    pub fn galois(&self, a: u32) -> Self {
        debug_assert_eq!(super::gcd_u32(a, self.level), 1);
        let n = self.level;
        let mut raw = vec![Rational::zero(); n as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(e as u64 * a as u64 % n as u64) as usize] += c;
            }
        }
        Self::from_raw(n, raw)
    }

    /// Try to rewrite at level m (m | level). Returns None when the value is
    /// not contained in Q(zeta_m).
    fn try_level(&self, m: u32) -> Option<Self> {
        let n = self.level;
        debug_assert!(n % m == 0);
        if let Some(q) = self.as_rational() {
            return Some(Self::from_rational(q.clone()));
        }
        let stride = (n / m) as usize;
        let phi_m = euler_phi(m) as usize;
        let phi_n = self.coeffs.len();
        // columns: representations of zeta_n^{stride * f} in the level-n basis
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(phi_m);
        for f in 0..phi_m {
            let z = Self::zeta_pow(n, (stride * f) as i64);
            cols.push(z.coeffs);
        }
        // solve sum_f d_f * cols[f] = self.coeffs exactly
        let mut aug: Vec<Vec<Rational>> = (0..phi_n)
            .map(|r| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let mut piv_rows: Vec<usize> = Vec::new();
        let mut row = 0usize;
        for col in 0..phi_m {
            if let Some(p) = (row..phi_n).find(|&r| !aug[r][col].is_zero()) {
                aug.swap(row, p);
                let inv = Rational::one() / &aug[row][col];
                for v in aug[row][col..].iter_mut() {
                    *v *= &inv;
                }
                for r in 0..phi_n {
                    if r != row && !aug[r][col].is_zero() {
                        let f = aug[r][col].clone();
                        for c2 in col..=phi_m {
                            let sub = &aug[row][c2] * &f;
                            aug[r][c2] -= sub;
                        }
                    }
                }
                piv_rows.push(row);
                row += 1;
            } else {
                // basis columns are independent; this cannot happen
                return None;
            }
        }
        // consistency: remaining rows must have zero RHS
        for r in row..phi_n {
            if !aug[r][phi_m].is_zero() {
                return None;
            }
        }
        let mut coeffs = vec![Rational::zero(); phi_m];
        for (col, &r) in piv_rows.iter().enumerate() {
            coeffs[col] = aug[r][phi_m].clone();
        }
        Some(CyclotomicNumber { level: m, coeffs })
    }

    /// Canonical form: level reduced to the conductor of the value.
    pub fn reduce_level(&self) -> Self {
        let mut cur = self.clone();
        loop {
            if cur.level == 1 {
                return cur;
            }
            if let Some(q) = cur.as_rational() {
                return Self::from_rational(q.clone());
            }
            let mut changed = false;
            for p in prime_factors(cur.level) {
                let m = cur.level / p;
                if let Some(lower) = cur.try_level(m) {
                    cur = lower;
                    changed = true;
                    break;
                }
            }
            if !changed {
                return cur;
            }
        }
    }

    /// Sum of absolute values of the basis coefficients (cheap magnitude bound).
    pub fn coeff_l1(&self) -> Rational {
        let mut acc = Rational::zero();
        for c in &self.coeffs {
            acc += c.abs();
        }
        acc
    }
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn poly_mul_trim(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = poly_mul_q(a, b);
    trim(&mut out);
    out
}

fn poly_sub_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

fn poly_divmod_q(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dn = den.len() - 1;
    if rem.len() <= dn {
        return (vec![], rem);
    }
    let lead = den[dn].clone();
    let mut quot = vec![Rational::zero(); rem.len() - dn];
    for k in (dn..rem.len()).rev() {
        let c = &rem[k] / &lead;
        if !c.is_zero() {
            quot[k - dn] = c.clone();
            for j in 0..=dn {
                let v = &den[j] * &c;
                rem[k - dn + j] -= v;
            }
        }
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.coeffs == other.coeffs;
        }
        let m = self.common_level(other);
        self.lift_to(m).coeffs == other.lift_to(m).coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo(level={}, {:?})", self.level, self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    #[test]
    fn zeta_powers_wrap() {
        let z = CyclotomicNumber::zeta(5);
        let mut p = CyclotomicNumber::one();
        for _ in 0..5 {
            p = p.mul(&z);
        }
        assert!(p.is_one());
    }

    #[test]
    fn omega_relation() {
        let w = CyclotomicNumber::zeta(3);
        let sum = CyclotomicNumber::one().add(&w).add(&w.mul(&w));
        assert!(sum.is_zero());
    }

    #[test]
    fn prime_root_sums_vanish() {
        for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let mut acc = CyclotomicNumber::zero();
            for k in 0..p {
                acc = acc.add(&CyclotomicNumber::zeta_pow(p, k as i64));
            }
            assert!(acc.is_zero(), "sum of {}-th roots of unity", p);
        }
    }

    #[test]
    fn mixed_level_arithmetic() {
        // zeta_3 * zeta_4 = zeta_12^7
        let a = CyclotomicNumber::zeta(3);
        let b = CyclotomicNumber::zeta(4);
        assert_eq!(a.mul(&b), CyclotomicNumber::zeta_pow(12, 7));
    }

    #[test]
    fn inverse_roundtrip() {
        let v = CyclotomicNumber::zeta(7)
            .scale(&rat_int(3))
            .add(&CyclotomicNumber::from_int(2));
        let inv = v.inverse().unwrap();
        assert!(v.mul(&inv).is_one());
    }

    #[test]
    fn level_reduction_finds_conductor() {
        // zeta_12^4 = zeta_3
        let v = CyclotomicNumber::zeta_pow(12, 4);
        let r = v.reduce_level();
        assert_eq!(r.level(), 3);
        assert_eq!(r, CyclotomicNumber::zeta(3));
        // a rational hidden at level 40
        let w = CyclotomicNumber::zeta_pow(40, 0).scale(&rat_int(9));
        assert_eq!(w.reduce_level().level(), 1);
    }

    #[test]
    fn galois_is_ring_automorphism() {
        let v = CyclotomicNumber::zeta(8).add(&CyclotomicNumber::from_int(1));
        let w = CyclotomicNumber::zeta_pow(8, 5).scale(&rat_int(2));
        let a = 3;
        assert_eq!(v.mul(&w).galois(a), v.galois(a).mul(&w.galois(a)));
    }
}
