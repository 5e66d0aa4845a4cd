//! Sparse polynomials over Q in the three formal parameters (lambda, alpha,
//! beta), with the beta-exponent reduction used once the normalized shape's
//! relation beta^{d-1} = 1 is in force.

use crate::exact::{AlgebraicScalar, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Variable indices into the exponent triple.
pub const LAMBDA: usize = 0;
pub const ALPHA: usize = 1;
pub const BETA: usize = 2;

#[derive(Clone, PartialEq, Default)]
pub struct MultiParamPoly {
    /// exponent triple (lambda, alpha, beta) -> coefficient
    terms: BTreeMap<[u32; 3], Rational>,
}

impl MultiParamPoly {
    pub fn zero() -> Self {
        MultiParamPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(crate::exact::rat_int(1))
    }

    pub fn constant(q: Rational) -> Self {
        let mut p = Self::zero();
        if !q.is_zero() {
            p.terms.insert([0, 0, 0], q);
        }
        p
    }

    pub fn var(v: usize) -> Self {
        let mut e = [0u32; 3];
        e[v] = 1;
        let mut p = Self::zero();
        p.terms.insert(e, crate::exact::rat_int(1));
        p
    }

    pub fn monomial(e: [u32; 3], q: Rational) -> Self {
        let mut p = Self::zero();
        if !q.is_zero() {
            p.terms.insert(e, q);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, e: [u32; 3], q: Rational) {
        if q.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(q);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, q) in &o.terms {
            out.insert_add(*e, q.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        MultiParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, q)| (*e, -q.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, q1) in &self.terms {
            for (e2, q2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out.insert_add(e, q1 * q2);
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        MultiParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient by the binomial relation beta^k = 1: beta exponents mod k.
    pub fn reduce_beta(&self, k: u32) -> Self {
        assert!(k >= 1);
        let mut out = Self::zero();
        for (e, q) in &self.terms {
            out.insert_add([e[0], e[1], e[2] % k], q.clone());
        }
        out
    }

    /// Exact evaluation at algebraic scalars.
    pub fn eval(
        &self,
        lambda: &AlgebraicScalar,
        alpha: &AlgebraicScalar,
        beta: &AlgebraicScalar,
    ) -> AlgebraicScalar {
        let mut acc = AlgebraicScalar::zero();
        for (e, q) in &self.terms {
            let mut t = AlgebraicScalar::from_rational(q.clone());
            if e[0] > 0 {
                t = t.mul(&lambda.pow_u32(e[0]));
            }
            if e[1] > 0 {
                t = t.mul(&alpha.pow_u32(e[1]));
            }
            if e[2] > 0 {
                t = t.mul(&beta.pow_u32(e[2]));
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// When every term has odd lambda- and alpha-exponent, factor out
    /// lambda * alpha and return the cofactor re-indexed in
    /// (mu, nu, beta) = (lambda^2, alpha^2, beta).
    pub fn extract_odd_lambda_alpha(&self) -> Option<Self> {
        let mut out = Self::zero();
        for (e, q) in &self.terms {
            if e[0] % 2 != 1 || e[1] % 2 != 1 {
                return None;
            }
            out.insert_add([(e[0] - 1) / 2, (e[1] - 1) / 2, e[2]], q.clone());
        }
        Some(out)
    }

    /// When every term has even lambda- and odd alpha-exponent, factor out
    /// alpha and re-index in (mu, nu, beta).
    pub fn extract_even_lambda_odd_alpha(&self) -> Option<Self> {
        let mut out = Self::zero();
        for (e, q) in &self.terms {
            if e[0] % 2 != 0 || e[1] % 2 != 1 {
                return None;
            }
            out.insert_add([e[0] / 2, (e[1] - 1) / 2, e[2]], q.clone());
        }
        Some(out)
    }
}

impl fmt::Debug for MultiParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, q) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", q)?;
            for (v, name) in ["L", "a", "B"].iter().enumerate() {
                if e[v] > 0 {
                    write!(f, "*{}^{}", name, e[v])?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_scalar, rat_int};

    #[test]
    fn ring_basics() {
        let l = MultiParamPoly::var(LAMBDA);
        let b = MultiParamPoly::var(BETA);
        let p = l.add(&b).mul(&l.sub(&b));
        // lambda^2 - beta^2
        assert_eq!(p.num_terms(), 2);
        let q = p.add(&b.mul(&b));
        assert_eq!(q, l.mul(&l));
    }

    #[test]
    fn beta_reduction() {
        let b = MultiParamPoly::var(BETA);
        let p = b.pow(5).sub(&MultiParamPoly::one());
        // beta^5 - 1 with beta^4 = 1 leaves beta - 1
        let r = p.reduce_beta(4);
        assert_eq!(r, b.sub(&MultiParamPoly::one()));
    }

    #[test]
    fn eval_matches_construction() {
        let l = MultiParamPoly::var(LAMBDA);
        let a = MultiParamPoly::var(ALPHA);
        let p = l.mul(&a).scale(&rat_int(3)).add(&MultiParamPoly::one());
        let v = p.eval(
            &parse_scalar("i").unwrap(),
            &parse_scalar("sqrt(2)").unwrap(),
            &AlgebraicScalar::one(),
        );
        assert_eq!(v, parse_scalar("1 + 3*i*sqrt(2)").unwrap());
    }
}
