//! Certified generators for dependent power sets and the bound calculators,
//! plus the named-identity catalog.

pub mod catalog;

pub use catalog::{catalog, catalog_names, threefold_family, CatalogEntry};

use crate::dependence::{verify_identity, PowerIdentity};
use crate::exact::scalar::Modulus;
use crate::exact::{
    binomial, divisors, rat_int, AlgebraicScalar, CyclotomicNumber, Rational,
};
use crate::forms::{psi_formal, BinaryForm, GenForm};
use crate::poly::ParamPoly;
use num_traits::ToPrimitive;

#[derive(Debug, Clone, thiserror::Error)]
pub enum BuildError {
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("unknown catalog name '{name}'; available: {available}")]
    UnknownName { name: String, available: String },
    #[error("internal: built identity failed verification: {0}")]
    Failed(String),
}

// ---- Theta and Phi ----

/// Theta_e(d) = 1 + min over t >= 1 of (t d / e + floor(e / t)); the minimum
/// is attained for some t <= e. Ties break toward smaller t.
pub fn theta(e: u32, d: u32) -> Result<(u32, u32), BuildError> {
    if e == 0 || d == 0 || d % e != 0 {
        return Err(BuildError::Parameter(format!(
            "theta requires e | d, got e={}, d={}",
            e, d
        )));
    }
    let mut best: Option<(u32, u32)> = None;
    for t in 1..=e {
        let v = t * (d / e) + e / t;
        if best.map_or(true, |(bv, _)| v < bv) {
            best = Some((v, t));
        }
    }
    let (v, t) = best.unwrap();
    Ok((1 + v, t))
}

/// A bound value together with the provenance of the result justifying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub value: u32,
    pub tag: String,
}

/// Bounds on the least r admitting an honest degree-k set with dependent
/// d-th powers.
#[derive(Debug, Clone)]
pub struct PhiBounds {
    pub k: u32,
    pub d: u32,
    pub lower: Bound,
    pub upper: Bound,
    pub exact: Option<u32>,
    pub lower_candidates: Vec<Bound>,
    pub upper_candidates: Vec<Bound>,
}

/// Aggregate every applicable lower and upper bound; every bound carries a
/// provenance tag.
pub fn phi_bounds(k: u32, d: u32) -> PhiBounds {
    assert!(k >= 1 && d >= 2);
    let mut lowers: Vec<Bound> = vec![Bound {
        value: 3,
        tag: "dimension-trivial".into(),
    }];
    let mut uppers: Vec<Bound> = Vec::new();

    if k == 1 {
        // classical Vandermonde criterion: exactly d + 2
        lowers.push(Bound {
            value: d + 2,
            tag: "linear-vandermonde".into(),
        });
        uppers.push(Bound {
            value: d + 2,
            tag: "linear-vandermonde".into(),
        });
    }
    if d >= 3 {
        lowers.push(Bound {
            value: 4,
            tag: "liouville".into(),
        });
        // least integer strictly above 1 + sqrt(d + 1)
        let mut v = 2u32;
        while ((v - 1) as u64) * ((v - 1) as u64) <= d as u64 + 1 {
            v += 1;
        }
        lowers.push(Bound {
            value: v,
            tag: "hayman".into(),
        });
    }
    if k == 2 && d >= 6 {
        lowers.push(Bound {
            value: 5,
            tag: "four-power-classification".into(),
        });
    }

    if k >= 2 && d == 2 {
        uppers.push(Bound {
            value: 3,
            tag: "pythagorean-squares".into(),
        });
    }
    if k >= 2 && d >= 4 {
        uppers.push(Bound {
            value: d / 2 + 2,
            tag: "psi-half-d".into(),
        });
    }
    if k >= 2 && (3..=5).contains(&d) {
        uppers.push(Bound {
            value: 4,
            tag: "small-d-exact".into(),
        });
    }
    if k >= 2 && (d == 6 || d == 7) {
        uppers.push(Bound {
            value: 5,
            tag: "sextic-septic-exact".into(),
        });
    }
    if k >= 2 && d == 14 {
        uppers.push(Bound {
            value: 6,
            tag: "icosahedral-14".into(),
        });
    }
    // synching constructions exist in degree e for each divisor e <= k of d;
    // padding by x-multiplication raises them to degree k
    for e in divisors(d) {
        if e <= k {
            if let Ok((v, _)) = theta(e, d) {
                uppers.push(Bound {
                    value: v,
                    tag: format!("molluzzo-synch({})", e),
                });
            }
        }
    }

    let lower = lowers
        .iter()
        .max_by_key(|b| b.value)
        .cloned()
        .expect("nonempty lower set");
    let upper = uppers
        .iter()
        .min_by_key(|b| b.value)
        .cloned()
        .unwrap_or(Bound {
            value: u32::MAX,
            tag: "none".into(),
        });
    assert!(
        3 <= lower.value && lower.value <= upper.value,
        "bound aggregation out of order for k={}, d={}",
        k,
        d
    );
    let exact = (lower.value == upper.value).then_some(lower.value);
    PhiBounds {
        k,
        d,
        lower,
        upper,
        exact,
        lower_candidates: lowers,
        upper_candidates: uppers,
    }
}

// ---- the coefficient polynomials of the Psi construction ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// Coefficient polynomial of x^{d+m} y^{d-m} in Psi(0, m, d; alpha) with
/// m = s + 1 and d = 2s + 1 (odd) or d = 2s (even); computed from the
/// trinomial expansion.
pub fn a_poly(s: u32, parity: Parity) -> Result<ParamPoly<Rational>, BuildError> {
    let (d, m) = match parity {
        Parity::Odd => {
            if s < 2 {
                return Err(BuildError::Parameter("odd branch needs s >= 2".into()));
            }
            (2 * s + 1, s + 1)
        }
        Parity::Even => {
            if s < 3 {
                return Err(BuildError::Parameter("even branch needs s >= 3".into()));
            }
            (2 * s, s + 1)
        }
    };
    let polys = psi_formal(0, m, d);
    Ok(polys[(d - m) as usize].clone())
}

// ---- construction recipes ----

#[derive(Debug, Clone)]
pub enum ConstructionRecipe {
    /// d = e e', m = t e': m forms x^e + zeta_m^j y^e against binomial
    /// monomials.
    Molluzzo { e: u32, ep: u32, t: u32 },
    /// s + 1 even quadratics whose 2s-th powers sum to a multiple of (xy)^{2s}.
    Monomial { s: u32 },
    /// Real trigonometric family at a numeric angle; verified numerically.
    Quadrature { s: u32, theta: f64 },
    /// Trinomial synching at odd degree d = 2s + 1.
    PsiOdd { s: u32 },
    /// Trinomial synching at even degree d = 2s.
    PsiEven { s: u32 },
    /// Five 14th powers plus the monomial, the icosahedral identity.
    Icosa14,
    /// A named corpus entry.
    Catalog { name: String },
}

/// An exactly verified construction output.
#[derive(Debug, Clone)]
pub struct BuiltIdentity {
    pub identity: PowerIdentity,
    pub recipe: String,
    pub term_count: usize,
    pub tag: String,
}

/// Numeric check result for the quadrature family.
#[derive(Debug, Clone)]
pub struct QuadratureIdentity {
    pub s: u32,
    pub theta: f64,
    pub term_count: usize,
    /// max |residual coefficient| / max(1, max |coefficient|)
    pub relative_residual: f64,
}

#[derive(Debug, Clone)]
pub enum Construction {
    Exact(BuiltIdentity),
    Numeric(QuadratureIdentity),
}

fn verified(
    identity: PowerIdentity,
    recipe: String,
    tag: String,
) -> Result<BuiltIdentity, BuildError> {
    if !verify_identity(&identity).passed() {
        return Err(BuildError::Failed(recipe));
    }
    Ok(BuiltIdentity {
        term_count: identity.len(),
        identity,
        recipe,
        tag,
    })
}

pub fn build(recipe: &ConstructionRecipe) -> Result<Construction, BuildError> {
    match recipe {
        ConstructionRecipe::Molluzzo { e, ep, t } => {
            build_molluzzo(*e, *ep, *t).map(Construction::Exact)
        }
        ConstructionRecipe::Monomial { s } => build_monomial(*s).map(Construction::Exact),
        ConstructionRecipe::Quadrature { s, theta } => {
            build_quadrature(*s, *theta).map(Construction::Numeric)
        }
        ConstructionRecipe::PsiOdd { s } => build_psi(*s, Parity::Odd).map(Construction::Exact),
        ConstructionRecipe::PsiEven { s } => build_psi(*s, Parity::Even).map(Construction::Exact),
        ConstructionRecipe::Icosa14 => build_icosa14().map(Construction::Exact),
        ConstructionRecipe::Catalog { name } => {
            let entry = catalog(name)?;
            Ok(Construction::Exact(BuiltIdentity {
                identity: entry.identity.clone(),
                recipe: format!("catalog({})", entry.name),
                term_count: entry.identity.len(),
                tag: entry.tag.to_string(),
            }))
        }
    }
}

fn build_molluzzo(e: u32, ep: u32, t: u32) -> Result<BuiltIdentity, BuildError> {
    if e == 0 || ep == 0 || t == 0 {
        return Err(BuildError::Parameter("molluzzo needs e, e', t >= 1".into()));
    }
    let d = e * ep;
    let m = t * ep;
    let mut terms: Vec<(AlgebraicScalar, BinaryForm)> = Vec::new();
    let deg = e as usize;
    for j in 0..m {
        let mut coeffs: Vec<AlgebraicScalar> = vec![AlgebraicScalar::zero(); deg + 1];
        coeffs[0] = AlgebraicScalar::one();
        coeffs[deg] = AlgebraicScalar::zeta_pow(m, j as i64);
        terms.push((AlgebraicScalar::one(), GenForm::new(coeffs)));
    }
    for i in 0..=(e / t) {
        let lambda = AlgebraicScalar::from_rational(
            -Rational::from_integer(binomial(d, i * m)) * rat_int(m as i64),
        );
        let mono = GenForm::monomial(deg, (i * t) as usize, AlgebraicScalar::one());
        terms.push((lambda, mono));
    }
    let identity = PowerIdentity::new(d, terms)
        .map_err(|err| BuildError::Failed(format!("molluzzo: {err}")))?;
    verified(
        identity,
        format!("molluzzo({},{},{})", e, ep, t),
        "binomial synching family".into(),
    )
}

fn build_monomial(s: u32) -> Result<BuiltIdentity, BuildError> {
    if s < 1 {
        return Err(BuildError::Parameter("monomial needs s >= 1".into()));
    }
    let d = 2 * s;
    let n = 2 * s + 2;
    let mut terms: Vec<(AlgebraicScalar, BinaryForm)> = Vec::new();
    for j in 0..=s {
        let f = GenForm::new(vec![
            AlgebraicScalar::zeta_pow(n, -(j as i64)),
            AlgebraicScalar::zero(),
            AlgebraicScalar::zeta_pow(n, j as i64),
        ]);
        terms.push((AlgebraicScalar::one(), f));
    }
    let lambda = AlgebraicScalar::from_rational(
        -Rational::from_integer(binomial(2 * s, s)) * rat_int(s as i64 + 1),
    );
    terms.push((lambda, GenForm::monomial(2, 1, AlgebraicScalar::one())));
    let identity = PowerIdentity::new(d, terms)
        .map_err(|err| BuildError::Failed(format!("monomial: {err}")))?;
    verified(
        identity,
        format!("monomial({})", s),
        "even-quadratic synching family".into(),
    )
}

fn build_quadrature(s: u32, theta_angle: f64) -> Result<QuadratureIdentity, BuildError> {
    if s < 1 {
        return Err(BuildError::Parameter("quadrature needs s >= 1".into()));
    }
    let d = (2 * s) as usize;
    // forms over f64: cos_j (x^2 - y^2) + sin_j (2xy)
    let conv = |a: &[f64], b: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let pow = |f: &[f64], e: usize| -> Vec<f64> {
        let mut acc = vec![1.0];
        for _ in 0..e {
            acc = conv(&acc, f);
        }
        acc
    };
    let mut residual = vec![0.0f64; 2 * d + 1];
    for j in 0..=s {
        let ang = (j as f64) * std::f64::consts::PI / (s as f64 + 1.0) + theta_angle;
        let f = vec![ang.cos(), 2.0 * ang.sin(), -ang.cos()];
        for (i, c) in pow(&f, d).iter().enumerate() {
            residual[i] += c;
        }
    }
    let scale = (s as f64 + 1.0)
        * binomial(2 * s, s).to_f64().unwrap()
        * 0.25f64.powi(s as i32);
    let base = pow(&[1.0, 0.0, 1.0], d);
    let mut max_coeff = 1.0f64;
    for (i, c) in base.iter().enumerate() {
        residual[i] -= scale * c;
        max_coeff = max_coeff.max((scale * c).abs());
    }
    let rel = residual.iter().map(|c| c.abs()).fold(0.0f64, f64::max) / max_coeff;
    if rel > 1e-10 {
        return Err(BuildError::Failed(format!(
            "quadrature({}, {}) residual {} exceeds 1e-10",
            s, theta_angle, rel
        )));
    }
    Ok(QuadratureIdentity {
        s,
        theta: theta_angle,
        term_count: s as usize + 2,
        relative_residual: rel,
    })
}

fn build_psi(s: u32, parity: Parity) -> Result<BuiltIdentity, BuildError> {
    let (d, m) = match parity {
        Parity::Odd => (2 * s + 1, s + 1),
        Parity::Even => (2 * s, s + 1),
    };
    let a = a_poly(s, parity)?;
    // nonzero-root part: strip the alpha^k factor, then squarefree
    let (_, stripped) = a.strip_var_power();
    if stripped.degree().unwrap_or(0) == 0 {
        return Err(BuildError::Parameter(
            "nonzero-root polynomial is constant".into(),
        ));
    }
    let sf = stripped
        .squarefree_part()
        .map_err(|e| BuildError::Failed(format!("squarefree: {e}")))?;
    let modulus = Modulus::new(
        sf.coeffs()
            .iter()
            .map(|q| CyclotomicNumber::from_rational(q.clone()))
            .collect(),
    )
    .map_err(|e| BuildError::Failed(format!("modulus: {e}")))?;
    let alpha = AlgebraicScalar::adjoined_root(modulus);
    // B(alpha0): the (xy)^d coefficient polynomial evaluated at the root
    let b_poly = psi_formal(0, m, d)[d as usize].clone();
    let b_val = b_poly.eval_scalar(&alpha);
    if b_val.is_zero() {
        return Err(BuildError::Failed("central coefficient vanished".into()));
    }
    let mut terms: Vec<(AlgebraicScalar, BinaryForm)> = Vec::new();
    for j in 0..m {
        let f = GenForm::new(vec![
            AlgebraicScalar::zeta_pow(m, -(j as i64)),
            alpha.clone(),
            AlgebraicScalar::zeta_pow(m, j as i64),
        ]);
        terms.push((AlgebraicScalar::one(), f));
    }
    terms.push((
        b_val.scale_rat(&rat_int(-(m as i64))),
        GenForm::monomial(2, 1, AlgebraicScalar::one()),
    ));
    let identity = PowerIdentity::new(d, terms)
        .map_err(|err| BuildError::Failed(format!("psi: {err}")))?;
    let name = match parity {
        Parity::Odd => format!("psi-odd({})", s),
        Parity::Even => format!("psi-even({})", s),
    };
    verified(identity, name, "trinomial synching family".into())
}

fn build_icosa14() -> Result<BuiltIdentity, BuildError> {
    let i = AlgebraicScalar::zeta(4);
    let mut terms: Vec<(AlgebraicScalar, BinaryForm)> = Vec::new();
    for j in 0..5i64 {
        let f = GenForm::new(vec![
            AlgebraicScalar::zeta_pow(5, j),
            i.clone(),
            AlgebraicScalar::zeta_pow(5, -j),
        ]);
        terms.push((AlgebraicScalar::one(), f));
    }
    let five_pow7 = rat_int(5)
        * rat_int(5)
        * rat_int(5)
        * rat_int(5)
        * rat_int(5)
        * rat_int(5)
        * rat_int(5);
    terms.push((
        AlgebraicScalar::from_rational(-five_pow7),
        GenForm::monomial(2, 1, AlgebraicScalar::one()),
    ));
    let identity = PowerIdentity::new(14, terms)
        .map_err(|err| BuildError::Failed(format!("icosa14: {err}")))?;
    verified(
        identity,
        "icosa14".into(),
        "icosahedral fourteenth powers".into(),
    )
}

/// The shared-factor phenomenon of Psi(0, 5, 14; alpha).
#[derive(Debug, Clone)]
pub struct IcosaSpecialReport {
    /// Coefficient polynomial of x^24 y^4 + x^4 y^24.
    pub a: ParamPoly<Rational>,
    /// Coefficient polynomial of x^19 y^9 + x^9 y^19.
    pub b: ParamPoly<Rational>,
    pub common_factor: ParamPoly<Rational>,
    pub specialized: BuiltIdentity,
}

pub fn icosa_special() -> Result<IcosaSpecialReport, BuildError> {
    let polys = psi_formal(0, 5, 14);
    let a = polys[4].clone();
    let b = polys[9].clone();
    let g = a
        .gcd(&b)
        .map_err(|e| BuildError::Failed(format!("gcd: {e}")))?;
    // 1 + alpha^2 must divide the common factor
    let one_plus_sq = ParamPoly::new(vec![rat_int(1), rat_int(0), rat_int(1)]);
    let divides = one_plus_sq
        .divides(&g)
        .map_err(|e| BuildError::Failed(format!("division: {e}")))?;
    if !divides {
        return Err(BuildError::Failed(
            "expected 1 + alpha^2 to divide the common coefficient factor".into(),
        ));
    }
    if num_traits::Zero::is_zero(&a.coeff(0)) {
        return Err(BuildError::Failed("constant term of A vanished".into()));
    }
    Ok(IcosaSpecialReport {
        a,
        b,
        common_factor: g,
        specialized: build_icosa14()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_scalar;
    use num_traits::Zero;

    #[test]
    fn theta_fixtures() {
        assert_eq!(theta(9, 9).unwrap().0, 7);
        assert_eq!(theta(8, 72).unwrap().0, 18);
        assert_eq!(theta(9, 72).unwrap().0, 18);
        assert_eq!(theta(12, 72).unwrap().0, 19);
        for d in 2..=40 {
            assert_eq!(theta(1, d).unwrap().0, d + 2, "theta(1, {})", d);
        }
        assert!(theta(5, 12).is_err());
    }

    #[test]
    fn theta_closed_form_square_case() {
        for d in 2..=200u32 {
            let expect = 1 + ((4 * d + 1) as f64).sqrt().floor() as u32;
            assert_eq!(theta(d, d).unwrap().0, expect, "theta({0},{0})", d);
        }
    }

    #[test]
    fn phi_fixtures() {
        assert_eq!(phi_bounds(2, 5).exact, Some(4));
        assert_eq!(phi_bounds(2, 7).exact, Some(5));
        assert_eq!(phi_bounds(15, 15).upper.value, 8);
        assert_eq!(phi_bounds(2, 2).exact, Some(3));
        assert_eq!(phi_bounds(1, 9).exact, Some(11));
        let b14 = phi_bounds(2, 14);
        assert_eq!(b14.lower.value, 5);
        assert_eq!(b14.upper.value, 6);
        assert_eq!(b14.exact, None);
    }

    #[test]
    fn phi_monotone_in_k() {
        for d in 2..=30 {
            for k in 1..=12 {
                assert!(
                    phi_bounds(k + 1, d).upper.value <= phi_bounds(k, d).upper.value,
                    "k={}, d={}",
                    k,
                    d
                );
            }
        }
    }

    #[test]
    fn a_poly_fixtures() {
        let a2 = a_poly(2, Parity::Odd).unwrap();
        assert_eq!(a2.coeff(2), rat_int(10));
        assert_eq!(a2.coeff(0), rat_int(5));
        assert_eq!(a2.degree(), Some(2));
        let a3 = a_poly(3, Parity::Odd).unwrap();
        assert_eq!(a3.coeff(3), rat_int(35));
        assert_eq!(a3.coeff(1), rat_int(42));
        let e3 = a_poly(3, Parity::Even).unwrap();
        assert_eq!(e3.coeff(2), rat_int(15));
        assert_eq!(e3.coeff(0), rat_int(6));
    }

    #[test]
    fn a_poly_leading_terms_match_binomials() {
        for s in 2..=8u32 {
            let a = a_poly(s, Parity::Odd).unwrap();
            assert_eq!(
                a.coeff(s as usize),
                Rational::from_integer(binomial(2 * s + 1, s))
            );
            assert_eq!(
                a.coeff(s as usize - 2),
                Rational::from_integer(binomial(2 * s, s - 2)) * rat_int(2 * s as i64 + 1)
            );
        }
        for s in 3..=8u32 {
            let a = a_poly(s, Parity::Even).unwrap();
            assert_eq!(
                a.coeff(s as usize - 1),
                Rational::from_integer(binomial(2 * s, s - 1))
            );
            assert_eq!(
                a.coeff(s as usize - 3),
                Rational::from_integer(binomial(2 * s - 1, s - 3)) * rat_int(2 * s as i64)
            );
        }
    }

    #[test]
    fn molluzzo_and_monomial_builds() {
        let b = build(&ConstructionRecipe::Molluzzo { e: 3, ep: 2, t: 2 }).unwrap();
        match b {
            Construction::Exact(x) => assert_eq!(x.term_count, 4 + 1 + 1),
            _ => unreachable!(),
        }
        for s in 1..=6 {
            let b = build(&ConstructionRecipe::Monomial { s }).unwrap();
            match b {
                Construction::Exact(x) => assert_eq!(x.term_count, s as usize + 2),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn quadrature_numeric() {
        for s in 1..=6 {
            let b = build(&ConstructionRecipe::Quadrature { s, theta: 0.3142 }).unwrap();
            match b {
                Construction::Numeric(q) => {
                    assert!(q.relative_residual <= 1e-10);
                    assert_eq!(q.term_count, s as usize + 2);
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn psi_small_builds() {
        let b = build(&ConstructionRecipe::PsiOdd { s: 2 }).unwrap();
        match b {
            Construction::Exact(x) => assert_eq!(x.term_count, 4),
            _ => unreachable!(),
        }
        let b = build(&ConstructionRecipe::PsiEven { s: 3 }).unwrap();
        match b {
            Construction::Exact(x) => assert_eq!(x.term_count, 5),
            _ => unreachable!(),
        }
    }

    #[test]
    fn icosa_special_report() {
        let r = icosa_special().unwrap();
        assert!(!r.common_factor.is_zero());
        assert!(!Zero::is_zero(&r.a.coeff(0)));
        // specialization at alpha = i gives 5^6 (xy)^14 per Psi normalization
        let i = AlgebraicScalar::zeta(4);
        let psi_at_i = crate::forms::psi(0, 5, 14, &i);
        for (idx, c) in psi_at_i.coeffs().iter().enumerate() {
            if idx == 14 {
                assert_eq!(c, &parse_scalar("5^6").unwrap());
            } else {
                assert!(c.is_zero(), "index {}", idx);
            }
        }
    }
}
