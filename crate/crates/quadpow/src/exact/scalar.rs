//! AlgebraicScalar: an element of Q(zeta_N) or of a quotient ring
//! Q(zeta_N)[t]/(m(t)) for a monic squarefree m. Every coefficient in the
//! system is one of these.

use super::cyclotomic::CyclotomicNumber;
use super::{ArithError, Rational};
use std::fmt;
use std::sync::Arc;

/// Monic squarefree quotient modulus m(t) with cyclotomic coefficients.
#[derive(Debug, Clone)]
pub struct Modulus {
    /// Coefficients from constant upward; last entry is 1 (monic). deg >= 1.
    coeffs: Vec<CyclotomicNumber>,
}

impl Modulus {
    /// Build from arbitrary coefficients: normalizes monic and takes the
    /// squarefree part. Errors when the polynomial is constant.
    pub fn new(coeffs: Vec<CyclotomicNumber>) -> Result<Self, ArithError> {
        let mut c = coeffs;
        while c.last().map_or(false, CyclotomicNumber::is_zero) {
            c.pop();
        }
        if c.len() < 2 {
            return Err(ArithError::Invalid(
                "quotient modulus must have degree >= 1".into(),
            ));
        }
        let lead_inv = c.last().unwrap().inverse()?;
        for x in c.iter_mut() {
            *x = x.mul(&lead_inv);
        }
        let sf = squarefree_part(&c)?;
        if sf.len() < 2 {
            return Err(ArithError::Invalid(
                "squarefree part of modulus is constant".into(),
            ));
        }
        Ok(Modulus { coeffs: sf })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CyclotomicNumber] {
        &self.coeffs
    }
}

impl PartialEq for Modulus {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .all(|(a, b)| a == b)
    }
}

// ---- polynomial helpers over the cyclotomic field ----

pub(crate) fn ctrim(v: &mut Vec<CyclotomicNumber>) {
    while v.last().map_or(false, CyclotomicNumber::is_zero) {
        v.pop();
    }
}

pub(crate) fn cpoly_mul(a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![CyclotomicNumber::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] = out[i + j].add(&ai.mul(bj));
            }
        }
    }
    out
}

pub(crate) fn cpoly_sub(a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
    let mut out = vec![CyclotomicNumber::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].sub(c);
    }
    ctrim(&mut out);
    out
}

pub(crate) fn cpoly_divmod(
    num: &[CyclotomicNumber],
    den: &[CyclotomicNumber],
) -> Result<(Vec<CyclotomicNumber>, Vec<CyclotomicNumber>), ArithError> {
    let mut rem = num.to_vec();
    ctrim(&mut rem);
    let mut d = den.to_vec();
    ctrim(&mut d);
    if d.is_empty() {
        return Err(ArithError::DivisionByZero);
    }
    let dn = d.len() - 1;
    if rem.len() <= dn {
        return Ok((vec![], rem));
    }
    let lead_inv = d[dn].inverse()?;
    let mut quot = vec![CyclotomicNumber::zero(); rem.len() - dn];
    for k in (dn..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = rem[k].mul(&lead_inv);
        quot[k - dn] = c.clone();
        for j in 0..=dn {
            let v = d[j].mul(&c);
            rem[k - dn + j] = rem[k - dn + j].sub(&v);
        }
    }
    ctrim(&mut rem);
    ctrim(&mut quot);
    Ok((quot, rem))
}

pub(crate) fn cpoly_gcd(
    a: &[CyclotomicNumber],
    b: &[CyclotomicNumber],
) -> Result<Vec<CyclotomicNumber>, ArithError> {
    let mut r0 = a.to_vec();
    ctrim(&mut r0);
    let mut r1 = b.to_vec();
    ctrim(&mut r1);
    while !r1.is_empty() {
        let (_, rem) = cpoly_divmod(&r0, &r1)?;
        r0 = r1;
        r1 = rem;
    }
    // monic normalization
    if let Some(last) = r0.last().cloned() {
        let inv = last.inverse()?;
        for c in r0.iter_mut() {
            *c = c.mul(&inv);
        }
    }
    Ok(r0)
}

fn cpoly_derivative(a: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
    let mut out = Vec::with_capacity(a.len().saturating_sub(1));
    for (i, c) in a.iter().enumerate().skip(1) {
        out.push(c.scale(&super::rat_int(i as i64)));
    }
    ctrim(&mut out);
    out
}

/// p / gcd(p, p'): the squarefree part, monic.
pub(crate) fn squarefree_part(
    p: &[CyclotomicNumber],
) -> Result<Vec<CyclotomicNumber>, ArithError> {
    let g = cpoly_gcd(p, &cpoly_derivative(p))?;
    if g.len() <= 1 {
        let mut out = p.to_vec();
        ctrim(&mut out);
        let inv = out.last().unwrap().inverse()?;
        for c in out.iter_mut() {
            *c = c.mul(&inv);
        }
        return Ok(out);
    }
    let (q, r) = cpoly_divmod(p, &g)?;
    debug_assert!(r.is_empty());
    let mut out = q;
    let inv = out.last().unwrap().inverse()?;
    for c in out.iter_mut() {
        *c = c.mul(&inv);
    }
    Ok(out)
}

// ---- the scalar itself ----

/// Exact element of Q(zeta_N) or Q(zeta_N)[t]/(m(t)).
#[derive(Clone)]
pub struct AlgebraicScalar {
    modulus: Option<Arc<Modulus>>,
    /// Coefficients of the value as a polynomial in t; length 1 when no
    /// modulus is present, otherwise at least 1 and less than deg m + 1.
    value: Vec<CyclotomicNumber>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

impl AlgebraicScalar {
    pub fn zero() -> Self {
        AlgebraicScalar {
            modulus: None,
            value: vec![CyclotomicNumber::zero()],
        }
    }

    pub fn one() -> Self {
        AlgebraicScalar {
            modulus: None,
            value: vec![CyclotomicNumber::one()],
        }
    }

    pub fn from_cyclotomic(c: CyclotomicNumber) -> Self {
        AlgebraicScalar {
            modulus: None,
            value: vec![c],
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::from_cyclotomic(CyclotomicNumber::from_rational(q))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(super::rat_int(n))
    }

    pub fn zeta(n: u32) -> Self {
        Self::from_cyclotomic(CyclotomicNumber::zeta(n))
    }

    pub fn zeta_pow(n: u32, k: i64) -> Self {
        Self::from_cyclotomic(CyclotomicNumber::zeta_pow(n, k))
    }

    /// The class of t in Q[t]/(m), after squarefree/monic normalization of m.
    pub fn adjoined_root(m: Modulus) -> Self {
        let deg = m.degree();
        let mut value = vec![CyclotomicNumber::zero(); 2.min(deg + 1)];
        if deg == 1 {
            // t is congruent to -m[0]
            return AlgebraicScalar {
                modulus: None,
                value: vec![m.coeffs()[0].neg()],
            };
        }
        value[1] = CyclotomicNumber::one();
        AlgebraicScalar {
            modulus: Some(Arc::new(m)),
            value,
        }
    }

    pub fn modulus(&self) -> Option<&Modulus> {
        self.modulus.as_deref()
    }

    pub fn value_coeffs(&self) -> &[CyclotomicNumber] {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.iter().all(CyclotomicNumber::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.value[0].is_one() && self.value[1..].iter().all(CyclotomicNumber::is_zero)
    }

    /// Some(q) iff the value is an honest rational (t-degree 0, conductor 1).
    pub fn as_rational(&self) -> Option<Rational> {
        if self.value[1..].iter().all(CyclotomicNumber::is_zero) {
            self.value[0].reduce_level().as_rational().cloned()
        } else {
            None
        }
    }

    /// Some(c) iff the value has t-degree 0.
    pub fn as_cyclotomic(&self) -> Option<&CyclotomicNumber> {
        if self.value[1..].iter().all(CyclotomicNumber::is_zero) {
            Some(&self.value[0])
        } else {
            None
        }
    }

    fn merge_modulus(
        &self,
        other: &Self,
    ) -> Result<Option<Arc<Modulus>>, ArithError> {
        match (&self.modulus, &other.modulus) {
            (None, None) => Ok(None),
            (Some(m), None) => Ok(Some(m.clone())),
            (None, Some(m)) => Ok(Some(m.clone())),
            (Some(a), Some(b)) => {
                if a == b || a.as_ref() == b.as_ref() {
                    Ok(Some(a.clone()))
                } else {
                    Err(ArithError::ModulusMismatch(
                        format!("{:?}", a.coeffs()),
                        format!("{:?}", b.coeffs()),
                    ))
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("scalar add on mismatched rings")
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        let m = self.merge_modulus(other)?;
        let n = self.value.len().max(other.value.len());
        let mut value = vec![CyclotomicNumber::zero(); n];
        for (i, c) in self.value.iter().enumerate() {
            value[i] = value[i].add(c);
        }
        for (i, c) in other.value.iter().enumerate() {
            value[i] = value[i].add(c);
        }
        Ok(AlgebraicScalar { modulus: m, value }.normalized())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        AlgebraicScalar {
            modulus: self.modulus.clone(),
            value: self.value.iter().map(CyclotomicNumber::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("scalar mul on mismatched rings")
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let m = self.merge_modulus(other)?;
        let raw = cpoly_mul(&self.value, &other.value);
        Ok(Self::reduce_value(m, raw))
    }

    fn reduce_value(m: Option<Arc<Modulus>>, raw: Vec<CyclotomicNumber>) -> Self {
        let mut v = raw;
        if let Some(modulus) = &m {
            if v.len() > modulus.degree() {
                let (_, rem) =
                    cpoly_divmod(&v, modulus.coeffs()).expect("monic modulus division");
                v = rem;
            }
        }
        if v.is_empty() {
            v.push(CyclotomicNumber::zero());
        }
        AlgebraicScalar { modulus: m, value: v }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.value.len() > 1
            && self.value.last().map_or(false, CyclotomicNumber::is_zero)
        {
            self.value.pop();
        }
        self
    }

    pub fn scale_rat(&self, q: &Rational) -> Self {
        AlgebraicScalar {
            modulus: self.modulus.clone(),
            value: self.value.iter().map(|c| c.scale(q)).collect(),
        }
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        match &self.modulus {
            None => Ok(Self::from_cyclotomic(self.value[0].inverse()?)),
            Some(m) => {
                if let Some(c) = self.as_cyclotomic() {
                    return Ok(AlgebraicScalar {
                        modulus: self.modulus.clone(),
                        value: vec![c.inverse()?],
                    });
                }
                // extended Euclid of (value, m) over K[t]
                let mut r0 = self.value.clone();
                ctrim(&mut r0);
                let mut r1 = m.coeffs().to_vec();
                let mut s0: Vec<CyclotomicNumber> = vec![CyclotomicNumber::one()];
                let mut s1: Vec<CyclotomicNumber> = vec![];
                while !r1.is_empty() {
                    let (q, rem) = cpoly_divmod(&r0, &r1)?;
                    let qs1 = cpoly_mul(&q, &s1);
                    let s_next = cpoly_sub(&s0, &qs1);
                    r0 = r1;
                    r1 = rem;
                    s0 = s1;
                    s1 = s_next;
                }
                if r0.len() > 1 {
                    // nonunit gcd: a factor of m, so the value is a zero divisor
                    return Err(ArithError::ZeroDivisor {
                        factor: format!(
                            "{}",
                            PolyDisplay(&r0)
                        ),
                    });
                }
                let g_inv = r0[0].inverse()?;
                let scaled: Vec<CyclotomicNumber> =
                    s0.iter().map(|c| c.mul(&g_inv)).collect();
                Ok(Self::reduce_value(self.modulus.clone(), scaled))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        let m = self.merge_modulus(other)?;
        let rhs = AlgebraicScalar {
            modulus: m.clone(),
            value: other.value.clone(),
        };
        let inv = rhs.inverse()?;
        let lhs = AlgebraicScalar {
            modulus: m,
            value: self.value.clone(),
        };
        lhs.checked_mul(&inv)
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
                acc = acc.checked_mul(&b)?;
            }
            k >>= 1;
            if k > 0 {
                b = b.checked_mul(&b)?;
            }
        }
        Ok(acc)
    }

    pub fn pow_u32(&self, e: u32) -> Self {
        self.pow(e as i64).expect("nonnegative power")
    }

    /// Canonical form: every cyclotomic coefficient reduced to its conductor.
    pub fn canonicalize(&self) -> Self {
        AlgebraicScalar {
            modulus: self.modulus.clone(),
            value: self.value.iter().map(CyclotomicNumber::reduce_level).collect(),
        }
        .normalized()
    }
}

/// The spec-level arithmetic entry point with checked errors.
pub fn scalar_arith(
    a: &AlgebraicScalar,
    b: &AlgebraicScalar,
    kind: ArithKind,
) -> Result<AlgebraicScalar, ArithError> {
    let r = match kind {
        ArithKind::Add => a.checked_add(b)?,
        ArithKind::Sub => a.checked_add(&b.neg())?,
        ArithKind::Mul => a.checked_mul(b)?,
        ArithKind::Div => a.div(b)?,
    };
    Ok(r.canonicalize())
}

impl PartialEq for AlgebraicScalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.modulus, &other.modulus) {
            (None, None) => self.value[0] == other.value[0],
            (Some(a), Some(b)) => {
                if !(a == b || a.as_ref() == b.as_ref()) {
                    return false;
                }
                let n = self.value.len().max(other.value.len());
                (0..n).all(|i| {
                    let x = self.value.get(i);
                    let y = other.value.get(i);
                    match (x, y) {
                        (Some(x), Some(y)) => x == y,
                        (Some(x), None) => x.is_zero(),
                        (None, Some(y)) => y.is_zero(),
                        (None, None) => true,
                    }
                })
            }
            (Some(_), None) => self
                .as_cyclotomic()
                .map_or(false, |c| c == &other.value[0]),
            (None, Some(_)) => other
                .as_cyclotomic()
                .map_or(false, |c| c == &self.value[0]),
        }
    }
}

struct PolyDisplay<'a>(&'a [CyclotomicNumber]);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})*t^{}", c, i)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus.is_none() {
            write!(f, "Scalar({:?})", self.value[0])
        } else {
            write!(f, "Scalar({:?} mod m)", self.value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn golden_ratio_relation() {
        // phi^2 - phi = 1 with phi = (1 + sqrt 5)/2
        let sqrt5 = crate::exact::sqrt::sqrt_rational(&rat_int(5));
        let phi = sqrt5
            .add(&AlgebraicScalar::one())
            .scale_rat(&rat(1, 2));
        let lhs = phi.mul(&phi).sub(&phi);
        assert!(lhs.is_one());
    }

    #[test]
    fn quotient_ring_square() {
        // t^2 = -1/2 in Q[t]/(t^2 + 1/2)
        let m = Modulus::new(vec![
            CyclotomicNumber::from_rational(rat(1, 2)),
            CyclotomicNumber::zero(),
            CyclotomicNumber::one(),
        ])
        .unwrap();
        let t = AlgebraicScalar::adjoined_root(m);
        let sq = t.mul(&t);
        assert_eq!(sq, AlgebraicScalar::from_rational(rat(-1, 2)));
    }

    #[test]
    fn zero_divisor_reports_factor() {
        // m = t^2 - 1 is squarefree but reducible; t - 1 is a zero divisor
        let m = Modulus::new(vec![
            CyclotomicNumber::from_int(-1),
            CyclotomicNumber::zero(),
            CyclotomicNumber::one(),
        ])
        .unwrap();
        let t = AlgebraicScalar::adjoined_root(m);
        let z = t.sub(&AlgebraicScalar::one());
        match z.inverse() {
            Err(ArithError::ZeroDivisor { .. }) => {}
            other => panic!("expected zero divisor, got {:?}", other),
        }
    }

    #[test]
    fn modulus_squarefree_normalization() {
        // (t-1)^2 (t+2) collapses to (t-1)(t+2) = t^2 + t - 2
        let coeffs = [2i64, -3, 0, 1]
            .iter()
            .map(|&n| CyclotomicNumber::from_int(n))
            .collect::<Vec<_>>();
        let m = Modulus::new(coeffs).unwrap();
        assert_eq!(m.degree(), 2);
        assert_eq!(
            m.coeffs()[0],
            CyclotomicNumber::from_int(-2)
        );
        assert_eq!(m.coeffs()[1], CyclotomicNumber::from_int(1));
    }
}
