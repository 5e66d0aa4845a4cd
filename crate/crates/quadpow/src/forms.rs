//! Dense binary-form algebra over the exact scalar tower: products, powers,
//! substitution, synching, the Psi construction, quadratic gcd and honesty.

use crate::exact::{
    trinomial, AlgebraicScalar, ArithError, CyclotomicNumber, Rational,
};
use num_traits::{One, Zero};
use std::fmt;

/// Coefficient ring used by the generic form algebra. AlgebraicScalar is the
/// main instance; formal-parameter rings plug in for the case analysis.
pub trait Coeff: Clone + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
}

impl Coeff for AlgebraicScalar {
    fn zero() -> Self {
        AlgebraicScalar::zero()
    }
    fn one() -> Self {
        AlgebraicScalar::one()
    }
    fn is_zero(&self) -> bool {
        AlgebraicScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        AlgebraicScalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        AlgebraicScalar::sub(self, o)
    }
    fn neg(&self) -> Self {
        AlgebraicScalar::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        AlgebraicScalar::mul(self, o)
    }
}

impl Coeff for CyclotomicNumber {
    fn zero() -> Self {
        CyclotomicNumber::zero()
    }
    fn one() -> Self {
        CyclotomicNumber::one()
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        CyclotomicNumber::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CyclotomicNumber::sub(self, o)
    }
    fn neg(&self) -> Self {
        CyclotomicNumber::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        CyclotomicNumber::mul(self, o)
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

/// Degree-k form as a dense coefficient vector; coeffs[i] multiplies
/// x^{k-i} y^i.
#[derive(Clone, PartialEq)]
pub struct GenForm<C> {
    coeffs: Vec<C>,
}

pub type BinaryForm = GenForm<AlgebraicScalar>;

impl<C: Coeff> GenForm<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        GenForm { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        GenForm {
            coeffs: vec![C::zero(); degree + 1],
        }
    }

    /// c * x^{k-i} y^i
    pub fn monomial(degree: usize, i: usize, c: C) -> Self {
        let mut f = Self::zero(degree);
        f.coeffs[i] = c;
        f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree(), o.degree(), "degree mismatch in form add");
        GenForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        GenForm {
            coeffs: self.coeffs.iter().map(C::neg).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        GenForm {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Dense convolution product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = vec![C::zero(); self.degree() + o.degree() + 1];
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
        GenForm { coeffs: out }
    }

    /// f^d by repeated squaring with dense convolution.
    pub fn pow(&self, d: u32) -> Self {
        if d == 0 {
            return GenForm {
                coeffs: vec![C::one()],
            };
        }
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut k = d;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.unwrap()
    }

    /// Swap x and y: coefficient reversal.
    pub fn swap_vars(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        GenForm { coeffs }
    }

    /// Proportionality test by exact 2x2 minors; both forms must be nonzero.
    pub fn proportional(&self, o: &Self) -> bool {
        if self.degree() != o.degree() {
            return false;
        }
        let n = self.coeffs.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let m = self.coeffs[i]
                    .mul(&o.coeffs[j])
                    .sub(&self.coeffs[j].mul(&o.coeffs[i]));
                if !m.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Substitute (x, y) -> (a x + b y, c x + d y).
    pub fn compose(&self, m: &GenLinearChange<C>) -> Self {
        let k = self.degree();
        // powers of the two images
        let row = GenForm::new(vec![m.a.clone(), m.b.clone()]);
        let col = GenForm::new(vec![m.c.clone(), m.d.clone()]);
        let mut row_pows: Vec<GenForm<C>> = Vec::with_capacity(k + 1);
        let mut col_pows: Vec<GenForm<C>> = Vec::with_capacity(k + 1);
        let unit = GenForm::new(vec![C::one()]);
        row_pows.push(unit.clone());
        col_pows.push(unit);
        for i in 1..=k {
            row_pows.push(row_pows[i - 1].mul(&row));
            col_pows.push(col_pows[i - 1].mul(&col));
        }
        let mut out = GenForm::zero(k);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = row_pows[k - i].mul(&col_pows[i]).scale(c);
            // term has degree k already except when k = 0
            let mut padded = term;
            while padded.coeffs.len() < k + 1 {
                padded.coeffs.push(C::zero());
            }
            out = out.add(&padded);
        }
        out
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[deg {}](", self.degree())?;
        let mut first = true;
        let k = self.degree();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*x^{}y^{}", c, k - i, i)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

/// Invertible 2x2 substitution (x, y) -> (a x + b y, c x + d y).
#[derive(Clone, PartialEq)]
pub struct GenLinearChange<C> {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
}

pub type LinearChange = GenLinearChange<AlgebraicScalar>;

impl<C: Coeff> GenLinearChange<C> {
    pub fn new(a: C, b: C, c: C, d: C) -> Self {
        GenLinearChange { a, b, c, d }
    }

    pub fn identity() -> Self {
        GenLinearChange {
            a: C::one(),
            b: C::zero(),
            c: C::zero(),
            d: C::one(),
        }
    }

    pub fn det(&self) -> C {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    /// Matrix product: applying `self` then `other` equals applying
    /// `self.then(other)`... composition follows compose(compose(f, M), M')
    /// = compose(f, M * M') with the substitution-matrix product M * M'.
    pub fn matmul(&self, o: &Self) -> Self {
        GenLinearChange {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }
}

impl fmt::Debug for LinearChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Ordered list of nonzero forms of a common degree.
#[derive(Clone, Debug)]
pub struct FormSet {
    forms: Vec<BinaryForm>,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum FormError {
    #[error("forms have mixed degrees")]
    MixedDegrees,
    #[error("form {0} is zero")]
    ZeroForm(usize),
    #[error("forms {0} and {1} are proportional")]
    Dishonest(usize, usize),
    #[error("{0}")]
    Arith(#[from] ArithError),
    #[error("{0}")]
    Invalid(String),
}

impl FormSet {
    pub fn new(forms: Vec<BinaryForm>) -> Result<Self, FormError> {
        if forms.is_empty() {
            return Err(FormError::Invalid("empty form set".into()));
        }
        let k = forms[0].degree();
        for (i, f) in forms.iter().enumerate() {
            if f.degree() != k {
                return Err(FormError::MixedDegrees);
            }
            if f.is_zero() {
                return Err(FormError::ZeroForm(i));
            }
        }
        Ok(FormSet { forms })
    }

    pub fn forms(&self) -> &[BinaryForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.forms[0].degree()
    }

    /// Pairwise non-proportionality; returns the first offending pair.
    pub fn honest(&self) -> Result<(), (usize, usize)> {
        for i in 0..self.forms.len() {
            for j in (i + 1)..self.forms.len() {
                if self.forms[i].proportional(&self.forms[j]) {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }
}

// ---- spec-level operations on AlgebraicScalar forms ----

pub fn form_power(f: &BinaryForm, d: u32) -> BinaryForm {
    f.pow(d)
}

pub fn compose(f: &BinaryForm, m: &LinearChange) -> BinaryForm {
    f.compose(m)
}

/// Roots-of-unity filter: the part of p with coefficient indices congruent to
/// r mod m, computed from the twisted average (1/m) sum_j zeta^{-rj} p(x, zeta^j y).
pub fn synch(p: &BinaryForm, m: u32, r: u32) -> BinaryForm {
    assert!(m >= 2 && (r as usize) < m as usize);
    let k = p.degree();
    let mut acc = GenForm::zero(k);
    for j in 0..m {
        // p(x, zeta^j y) scales coeff i by zeta^{ji}
        let mut coeffs = Vec::with_capacity(k + 1);
        for (i, c) in p.coeffs().iter().enumerate() {
            let tw = AlgebraicScalar::zeta_pow(m, (j as i64) * (i as i64));
            coeffs.push(c.mul(&tw));
        }
        let twisted =
            GenForm::new(coeffs).scale(&AlgebraicScalar::zeta_pow(m, -((r as i64) * (j as i64))));
        acc = acc.add(&twisted);
    }
    acc.scale(&AlgebraicScalar::from_rational(crate::exact::rat(
        1,
        m as i64,
    )))
}

/// Direct coefficient filter; the oracle `synch` must match.
pub fn synch_filter(p: &BinaryForm, m: u32, r: u32) -> BinaryForm {
    let mut out = GenForm::zero(p.degree());
    for (i, c) in p.coeffs().iter().enumerate() {
        if i as u32 % m == r {
            out.coeffs[i] = c.clone();
        }
    }
    out
}

/// Psi(v, m, d; alpha) = (1/m) sum_j zeta^{-vj} (zeta^{-j} x^2 + alpha x y + zeta^j y^2)^d,
/// computed by the summation definition with repeated-squaring powers.
pub fn psi(v: i64, m: u32, d: u32, alpha: &AlgebraicScalar) -> BinaryForm {
    assert!(m >= 2 && d >= 1);
    let mut acc = GenForm::zero(2 * d as usize);
    for j in 0..m {
        let f = GenForm::new(vec![
            AlgebraicScalar::zeta_pow(m, -(j as i64)),
            alpha.clone(),
            AlgebraicScalar::zeta_pow(m, j as i64),
        ]);
        let p = f.pow(d).scale(&AlgebraicScalar::zeta_pow(m, -v * j as i64));
        acc = acc.add(&p);
    }
    acc.scale(&AlgebraicScalar::from_rational(crate::exact::rat(
        1,
        m as i64,
    )))
}

/// Psi with a formal parameter: returns, per monomial x^{2d-i} y^i, the exact
/// polynomial in alpha (rational coefficients). Derived from the trinomial
/// theorem with the synching filter t - r ≡ -(i + v) ... the surviving
/// triples (r, s, t) satisfy r + s + t = d, s + 2t = i, t ≡ r + v (mod m).
pub fn psi_formal(v: i64, m: u32, d: u32) -> Vec<crate::poly::ParamPoly<Rational>> {
    let deg = 2 * d as usize;
    let mut out: Vec<Vec<Rational>> = vec![vec![<Rational as Zero>::zero(); d as usize + 1]; deg + 1];
    for t in 0..=d {
        for s in 0..=(d - t) {
            let r = d - t - s;
            let i = (s + 2 * t) as usize;
            let diff = t as i64 - r as i64 - v;
            if diff.rem_euclid(m as i64) != 0 {
                continue;
            }
            let c = Rational::from_integer(trinomial(d, r, s, t));
            out[i][s as usize] += c;
        }
    }
    out.into_iter()
        .map(crate::poly::ParamPoly::new)
        .collect()
}

/// GCD descriptor for two quadratics.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadGcd {
    /// resultant != 0
    Coprime,
    /// exactly one common root; the common linear factor
    Linear(BinaryForm),
    /// proportional forms
    Proportional,
}

/// Resultant of two binary quadratics (degree-2 forms).
pub fn quad_resultant(f: &BinaryForm, g: &BinaryForm) -> AlgebraicScalar {
    assert!(f.degree() == 2 && g.degree() == 2);
    let (a0, a1, a2) = (f.coeff(0), f.coeff(1), f.coeff(2));
    let (b0, b1, b2) = (g.coeff(0), g.coeff(1), g.coeff(2));
    // res = (a0 b2 - a2 b0)^2 - (a0 b1 - a1 b0)(a1 b2 - a2 b1)
    let d02 = a0.mul(b2).sub(&a2.mul(b0));
    let d01 = a0.mul(b1).sub(&a1.mul(b0));
    let d12 = a1.mul(b2).sub(&a2.mul(b1));
    d02.mul(&d02).sub(&d01.mul(&d12))
}

/// Exact gcd of two nonzero quadratics via the Euclidean remainder sequence
/// on the dehomogenizations; no radical adjunction is ever needed.
pub fn quad_gcd(f: &BinaryForm, g: &BinaryForm) -> Result<QuadGcd, FormError> {
    assert!(f.degree() == 2 && g.degree() == 2);
    if f.is_zero() || g.is_zero() {
        return Err(FormError::Invalid("quad_gcd needs nonzero forms".into()));
    }
    if f.proportional(g) {
        return Ok(QuadGcd::Proportional);
    }
    if !quad_resultant(f, g).is_zero() {
        return Ok(QuadGcd::Coprime);
    }
    // shared root exists and the forms are not proportional: linear gcd.
    // handle the common y factor first (both leading x^2 coefficients zero)
    if f.coeff(0).is_zero() && g.coeff(0).is_zero() {
        return Ok(QuadGcd::Linear(GenForm::new(vec![
            AlgebraicScalar::zero(),
            AlgebraicScalar::one(),
        ])));
    }
    // dehomogenize p(t) = f(t, 1) and run one Euclidean step at a time
    let fp = [f.coeff(2).clone(), f.coeff(1).clone(), f.coeff(0).clone()];
    let gp = [g.coeff(2).clone(), g.coeff(1).clone(), g.coeff(0).clone()];
    // make sure the first has degree 2
    let (p, q) = if !fp[2].is_zero() { (fp, gp) } else { (gp, fp) };
    let rem = if q[2].is_zero() {
        q.to_vec()
    } else {
        // p - (p2/q2) q has degree <= 1
        let ratio = p[2].div(&q[2]).map_err(ArithError::from)?;
        vec![
            p[0].sub(&q[0].mul(&ratio)),
            p[1].sub(&q[1].mul(&ratio)),
        ]
    };
    let (c0, c1) = match rem.len() {
        2 => (rem[0].clone(), rem[1].clone()),
        3 => (rem[0].clone(), rem[1].clone()),
        _ => unreachable!(),
    };
    if c1.is_zero() {
        // remainder is a constant; resultant said zero, so it must vanish,
        // leaving gcd = q itself -- impossible for non-proportional quadratics
        return Err(FormError::Invalid(
            "inconsistent quadratic gcd computation".into(),
        ));
    }
    // linear factor c1 t + c0 -> homogenize to c1 x + c0 y
    Ok(QuadGcd::Linear(GenForm::new(vec![c1, c0])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_scalar, rat_int};

    pub(crate) fn form(coeffs: &[&str]) -> BinaryForm {
        GenForm::new(
            coeffs
                .iter()
                .map(|s| parse_scalar(s).unwrap())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn square_of_x_plus_y() {
        let f = form(&["1", "1"]);
        let sq = f.pow(2);
        assert_eq!(sq, form(&["1", "2", "1"]));
    }

    #[test]
    fn pythagorean_squares() {
        let a = form(&["1", "0", "-1"]).pow(2);
        let b = form(&["0", "2", "0"]).pow(2);
        let c = form(&["1", "0", "1"]).pow(2);
        assert!(a.add(&b).sub(&c).is_zero());
    }

    #[test]
    fn compose_identity() {
        let f = form(&["3", "-1", "2"]);
        assert_eq!(f.compose(&LinearChange::identity()), f);
    }

    #[test]
    fn compose_omega_scaling_has_period_three() {
        let f = form(&["1", "0", "1"]);
        let m = LinearChange::new(
            parse_scalar("omega").unwrap(),
            AlgebraicScalar::zero(),
            AlgebraicScalar::zero(),
            parse_scalar("omega^2").unwrap(),
        );
        let mut g = f.clone();
        for _ in 0..3 {
            g = g.compose(&m);
        }
        assert_eq!(g, f);
        assert_ne!(f.compose(&m), f);
    }

    #[test]
    fn compose_difference_of_squares() {
        let f = form(&["1", "0", "-1"]);
        let m = LinearChange::new(
            AlgebraicScalar::one(),
            AlgebraicScalar::one(),
            AlgebraicScalar::one(),
            AlgebraicScalar::from_int(-1),
        );
        assert_eq!(f.compose(&m), form(&["0", "4", "0"]));
    }

    #[test]
    fn synch_even_part() {
        let f = form(&["1", "1"]).pow(4);
        let even = synch(&f, 2, 0);
        assert_eq!(even, form(&["1", "0", "6", "0", "1"]));
    }

    #[test]
    fn synch_partition() {
        let p = form(&["2", "-1", "3", "5"]);
        let m = 3u32;
        let mut acc = GenForm::zero(3);
        for r in 0..m {
            acc = acc.add(&synch(&p, m, r));
        }
        assert_eq!(acc, p);
    }

    #[test]
    fn psi_043_closed_form() {
        // Psi(0,4,3;alpha) = (alpha^3 + 6 alpha) x^3 y^3 as a polynomial identity
        let polys = psi_formal(0, 4, 3);
        for (i, p) in polys.iter().enumerate() {
            if i == 3 {
                assert_eq!(p.coeff(1), rat_int(6));
                assert_eq!(p.coeff(3), rat_int(1));
                assert_eq!(p.degree(), Some(3));
                assert_eq!(p.coeff(0), rat_int(0));
                assert_eq!(p.coeff(2), rat_int(0));
            } else {
                assert!(p.is_zero(), "unexpected monomial at i={}", i);
            }
        }
    }

    #[test]
    fn psi_exact_matches_formal_at_sample() {
        let alpha = parse_scalar("1/2 - omega").unwrap();
        let direct = psi(2, 4, 5, &alpha);
        let formal = psi_formal(2, 4, 5);
        for (i, p) in formal.iter().enumerate() {
            let expect = p.eval_scalar(&alpha);
            assert_eq!(direct.coeff(i), &expect, "monomial {}", i);
        }
    }

    #[test]
    fn quad_gcd_cases() {
        let c = quad_gcd(&form(&["1", "0", "-1"]), &form(&["0", "2", "0"])).unwrap();
        assert_eq!(c, QuadGcd::Coprime);
        let l = quad_gcd(&form(&["1", "1", "0"]), &form(&["0", "1", "1"])).unwrap();
        match l {
            QuadGcd::Linear(f) => assert!(f.proportional(&form(&["1", "1"]))),
            other => panic!("expected linear gcd, got {:?}", other),
        }
        let p = quad_gcd(&form(&["1", "0", "0"]), &form(&["3", "0", "0"])).unwrap();
        assert_eq!(p, QuadGcd::Proportional);
    }

    #[test]
    fn honesty() {
        let bad = FormSet::new(vec![form(&["1", "0", "0"]), form(&["2", "0", "0"])]).unwrap();
        assert_eq!(bad.honest(), Err((0, 1)));
        let good = FormSet::new(vec![
            form(&["1", "0", "1"]),
            form(&["omega", "0", "omega^2"]),
            form(&["omega^2", "0", "omega"]),
            form(&["0", "1", "0"]),
        ])
        .unwrap();
        assert!(good.honest().is_ok());
    }
}
