//! Dense univariate polynomials over an exact coefficient ring. Used for the
//! formal parameters of the constructions and case-analysis modules.

use crate::exact::{AlgebraicScalar, ArithError, Rational};
use crate::forms::Coeff;
use num_traits::Zero;
use std::fmt;

/// Polynomials with exact division on coefficients.
pub trait CoeffField: Coeff {
    fn inv(&self) -> Result<Self, ArithError>;
}

impl CoeffField for Rational {
    fn inv(&self) -> Result<Self, ArithError> {
        if Zero::is_zero(self) {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(<Rational as num_traits::One>::one() / self)
        }
    }
}

impl CoeffField for AlgebraicScalar {
    fn inv(&self) -> Result<Self, ArithError> {
        self.inverse()
    }
}

impl CoeffField for crate::exact::CyclotomicNumber {
    fn inv(&self) -> Result<Self, ArithError> {
        self.inverse()
    }
}

/// Canonical dense univariate polynomial, no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct ParamPoly<C = Rational> {
    coeffs: Vec<C>,
}

impl<C: Coeff> ParamPoly<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        let mut p = ParamPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        ParamPoly { coeffs: vec![] }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, C::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = vec![C::zero(); self.coeffs.len().max(o.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        Self::new(out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        ParamPoly {
            coeffs: self.coeffs.iter().map(C::neg).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, d: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = d;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horner evaluation in the coefficient ring.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut acc = C::zero();
            for _ in 0..i {
                acc = acc.add(c);
            }
            out.push(acc);
        }
        Self::new(out)
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        ParamPoly { coeffs: out }
    }

    /// Largest k with x^k dividing self, and the quotient.
    pub fn strip_var_power(&self) -> (usize, Self) {
        if self.is_zero() {
            return (0, Self::zero());
        }
        let k = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0);
        (k, Self::new(self.coeffs[k..].to_vec()))
    }

    /// Substitute x^2 -> u when only even powers appear.
    pub fn even_part_in_square(&self) -> Option<Self> {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % 2 == 1 && !c.is_zero() {
                return None;
            }
        }
        Some(Self::new(
            self.coeffs.iter().step_by(2).cloned().collect(),
        ))
    }
}

impl<C: CoeffField> ParamPoly<C> {
    pub fn divmod(&self, den: &Self) -> Result<(Self, Self), ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let dn = den.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dn {
            return Ok((Self::zero(), self.clone()));
        }
        let lead_inv = den.coeffs[dn].inv()?;
        let mut quot = vec![C::zero(); rem.len() - dn];
        for k in (dn..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = rem[k].mul(&lead_inv);
            quot[k - dn] = c.clone();
            for j in 0..=dn {
                let v = den.coeffs[j].mul(&c);
                rem[k - dn + j] = rem[k - dn + j].sub(&v);
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn divides(&self, other: &Self) -> Result<bool, ArithError> {
        if self.is_zero() {
            return Ok(other.is_zero());
        }
        let (_, r) = other.divmod(self)?;
        Ok(r.is_zero())
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self, ArithError> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Result<Self, ArithError> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(l) => {
                let inv = l.inv()?;
                Ok(self.scale(&inv))
            }
        }
    }

    /// self / gcd(self, self'): the squarefree part, monic.
    pub fn squarefree_part(&self) -> Result<Self, ArithError> {
        let g = self.gcd(&self.derivative())?;
        if g.degree() == Some(0) || g.is_zero() {
            return self.monic();
        }
        let (q, r) = self.divmod(&g)?;
        debug_assert!(r.is_zero());
        q.monic()
    }
}

impl<C: Coeff> Coeff for ParamPoly<C> {
    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn one() -> Self {
        ParamPoly::one()
    }
    fn is_zero(&self) -> bool {
        ParamPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        ParamPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ParamPoly::sub(self, o)
    }
    fn neg(&self) -> Self {
        ParamPoly::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        ParamPoly::mul(self, o)
    }
}

impl ParamPoly<Rational> {
    /// Evaluate a rational polynomial at an algebraic scalar.
    pub fn eval_scalar(&self, x: &AlgebraicScalar) -> AlgebraicScalar {
        let mut acc = AlgebraicScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&AlgebraicScalar::from_rational(c.clone()));
        }
        acc
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let cs = if num_traits::One::is_one(c.denom()) {
                format!("{}", c.numer())
            } else {
                format!("{}/{}", c.numer(), c.denom())
            };
            let part = match i {
                0 => cs,
                1 if cs == "1" => var.to_string(),
                1 => format!("{}*{}", cs, var),
                _ if cs == "1" => format!("{}^{}", var, i),
                _ => format!("{}*{}^{}", cs, var, i),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for ParamPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn p(coeffs: &[i64]) -> ParamPoly<Rational> {
        ParamPoly::new(coeffs.iter().map(|&n| rat_int(n)).collect())
    }

    #[test]
    fn divmod_roundtrip() {
        let a = p(&[2, 0, -3, 1, 4]);
        let b = p(&[1, 2, 1]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let common = p(&[1, 1]); // 1 + x
        let a = common.mul(&p(&[3, 0, 1]));
        let b = common.mul(&p(&[-2, 1]));
        let g = a.gcd(&b).unwrap();
        assert_eq!(g, common.monic().unwrap());
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        let a = p(&[1, 1]).pow(3).mul(&p(&[-5, 1]));
        let sf = a.squarefree_part().unwrap();
        assert_eq!(sf, p(&[1, 1]).mul(&p(&[-5, 1])).monic().unwrap());
    }

    #[test]
    fn even_square_substitution() {
        let a = p(&[5, 0, 10, 0, 1]);
        let u = a.even_part_in_square().unwrap();
        assert_eq!(u, p(&[5, 10, 1]));
        assert!(p(&[1, 1]).even_part_in_square().is_none());
    }

    #[test]
    fn eval_scalar_matches() {
        let a = p(&[5, 10, 0, 1]);
        let x = AlgebraicScalar::from_rational(rat(1, 2));
        assert_eq!(
            a.eval_scalar(&x).as_rational().unwrap(),
            rat(5, 1) + rat(10, 2) + rat(1, 8)
        );
    }
}
