//! Mechanization of the tame/wild classification for four quadratics with an
//! even power sum: formal-parameter expansions, minor analysis in b, and the
//! branch-by-branch wild parameter solve, at concrete exponents d.

pub mod multipoly;

pub use multipoly::MultiParamPoly;
#[cfg(test)]
use multipoly::{ALPHA, BETA, LAMBDA};

use crate::dependence::{verify_identity, PowerIdentity};
use crate::exact::{
    binomial, rat, rat_int, scalar_sqrt, sqrt_rational, trinomial, AlgebraicScalar, ArithError,
    Rational,
};
use crate::forms::{BinaryForm, GenForm};
use crate::poly::ParamPoly;
use crate::sylvester::{two_power_decompose, SylvesterError};
use num_traits::{One, Zero};

#[derive(Debug, Clone, thiserror::Error)]
pub enum CaseError {
    #[error("d must be at least 4, got {0}")]
    SmallDegree(u32),
    #[error("{0}")]
    Arith(#[from] ArithError),
    #[error("{0}")]
    Sylvester(#[from] SylvesterError),
    #[error("candidate polynomial of unexpected degree {0}; only rational/quadratic extraction is supported")]
    CandidateDegree(usize),
    #[error("internal: {0}")]
    Internal(String),
}

// ---- formal coefficients of the wild normal form ----

/// Exact coefficients of p = (x^2 - la xy + y^2)^d + l (x^2 + a xy + B y^2)^d
/// and of the swap difference, as polynomials in (lambda, alpha, beta).
#[derive(Debug, Clone)]
pub struct WildCoefficients {
    pub d: u32,
    /// a_i for i = 0..2d
    pub a: Vec<MultiParamPoly>,
    /// b_i for i = 0..2d, from (x^2+a xy+B y^2)^d - (B x^2+a xy+y^2)^d
    pub b: Vec<MultiParamPoly>,
}

pub fn wild_coefficients(d: u32) -> Result<WildCoefficients, CaseError> {
    if d < 4 {
        return Err(CaseError::SmallDegree(d));
    }
    let n = 2 * d as usize + 1;
    let mut a = vec![MultiParamPoly::zero(); n];
    let mut b = vec![MultiParamPoly::zero(); n];
    for t in 0..=d {
        for s in 0..=(d - t) {
            let r = d - t - s;
            let i = (s + 2 * t) as usize;
            let c = Rational::from_integer(trinomial(d, r, s, t));
            // (x^2 - lambda alpha xy + y^2)^d: cross term (-lambda alpha)^s
            let sign = if s % 2 == 0 { c.clone() } else { -c.clone() };
            a[i] = a[i].add(&MultiParamPoly::monomial([s, s, 0], sign));
            // lambda (x^2 + alpha xy + beta y^2)^d
            a[i] = a[i].add(&MultiParamPoly::monomial([1, s, t], c.clone()));
            // (x^2 + a xy + B y^2)^d - (B x^2 + a xy + y^2)^d
            b[i] = b[i].add(&MultiParamPoly::monomial([0, s, t], c.clone()));
            b[i] = b[i].sub(&MultiParamPoly::monomial([0, s, r], c));
        }
    }
    Ok(WildCoefficients { d, a, b })
}

// ---- small root extraction ----

/// Nonzero roots of a rational polynomial after stripping the variable
/// power; only degrees <= 2 occur in this analysis.
fn low_degree_nonzero_roots(p: &ParamPoly<Rational>) -> Result<Vec<AlgebraicScalar>, CaseError> {
    if p.is_zero() {
        return Ok(vec![]);
    }
    let (_, q) = p.strip_var_power();
    match q.degree() {
        None | Some(0) => Ok(vec![]),
        Some(1) => {
            let root = -q.coeff(0) / q.coeff(1);
            Ok(vec![AlgebraicScalar::from_rational(root)])
        }
        Some(2) => {
            let a = q.coeff(2);
            let bq = q.coeff(1);
            let c = q.coeff(0);
            let disc = &bq * &bq - Rational::from_integer(4.into()) * &a * &c;
            if disc.is_zero() {
                let root = -&bq / (&a * Rational::from_integer(2.into()));
                return Ok(vec![AlgebraicScalar::from_rational(root)]);
            }
            let sq = sqrt_rational(&disc);
            let inv2a = AlgebraicScalar::from_rational(
                Rational::one() / (&a * Rational::from_integer(2.into())),
            );
            let nb = AlgebraicScalar::from_rational(-bq);
            Ok(vec![nb.add(&sq).mul(&inv2a), nb.sub(&sq).mul(&inv2a)])
        }
        Some(n) => Err(CaseError::CandidateDegree(n)),
    }
}

// ---- the wild analysis ----

#[derive(Debug, Clone)]
pub struct WildSolution {
    pub lambda: AlgebraicScalar,
    pub alpha: AlgebraicScalar,
    pub beta: AlgebraicScalar,
    /// The even form f1^d + lambda f2^d.
    pub p: BinaryForm,
    /// The four-term identity from the y -> -y third representation.
    pub identity: PowerIdentity,
}

#[derive(Debug, Clone)]
pub struct WildContradiction {
    pub reason: String,
    /// Exact a7^2 under the merged substitutions, when that stage is reached.
    pub a7_squared: Option<AlgebraicScalar>,
}

#[derive(Debug, Clone)]
pub struct WildReport {
    pub d: u32,
    pub a3: MultiParamPoly,
    pub b3: MultiParamPoly,
    pub a5: Option<MultiParamPoly>,
    pub a7: Option<MultiParamPoly>,
    pub solutions: Vec<WildSolution>,
    pub contradiction: Option<WildContradiction>,
    pub notes: Vec<String>,
}

/// mu-constraint polynomial for one branch: substitute the branch's
/// (nu, beta) as functions of mu into Q(mu, nu, beta) and clear denominators.
/// Branch A (beta = -1): nu = 12 / ((d-2)(1-mu)).
/// Branch B (beta = 1/mu): nu = -6 / (mu (d-2)).
fn branch_mu_polynomial(q: &MultiParamPoly, d: u32, minus_one_beta: bool) -> ParamPoly<Rational> {
    let dm2 = rat_int(d as i64 - 2);
    let mut bmax = 0u32;
    let mut cmax = 0u32;
    for (e, _) in q.terms() {
        bmax = bmax.max(e[1]);
        cmax = cmax.max(e[2]);
    }
    let mut acc = ParamPoly::zero();
    for (e, coeff) in q.terms() {
        let (a, bv, c) = (e[0], e[1], e[2]);
        if minus_one_beta {
            // times (1-mu)^{bmax}: coeff 12^b (d-2)^{-b} (-1)^c mu^a (1-mu)^{bmax-b}
            let mut k = coeff.clone();
            for _ in 0..bv {
                k = k * rat_int(12) / &dm2;
            }
            if c % 2 == 1 {
                k = -k;
            }
            let mut term = ParamPoly::constant(k);
            term = term.mul(&ParamPoly::var().pow(a));
            let one_minus_mu = ParamPoly::new(vec![rat_int(1), rat_int(-1)]);
            term = term.mul(&one_minus_mu.pow(bmax - bv));
            acc = acc.add(&term);
        } else {
            // times mu^{bmax + cmax}: coeff (-6)^b (d-2)^{-b} mu^{a - b - c + bmax + cmax}
            let mut k = coeff.clone();
            for _ in 0..bv {
                k = k * rat_int(-6) / &dm2;
            }
            let exp = a + (bmax - bv) + (cmax - c);
            let term = ParamPoly::constant(k).mul(&ParamPoly::var().pow(exp));
            acc = acc.add(&term);
        }
    }
    acc
}

/// Assemble and verify the four-term identity attached to one wild solution.
fn wild_solution(
    d: u32,
    lambda: AlgebraicScalar,
    alpha: AlgebraicScalar,
    beta: AlgebraicScalar,
) -> Result<WildSolution, CaseError> {
    let la = lambda.mul(&alpha);
    let f1 = GenForm::new(vec![
        AlgebraicScalar::one(),
        la.neg(),
        AlgebraicScalar::one(),
    ]);
    let f2 = GenForm::new(vec![AlgebraicScalar::one(), alpha.clone(), beta.clone()]);
    let p = f1.pow(d).add(&f2.pow(d).scale(&lambda));
    for (i, c) in p.coeffs().iter().enumerate() {
        if i % 2 == 1 && !c.is_zero() {
            return Err(CaseError::Internal(format!(
                "wild candidate is not even at index {}",
                i
            )));
        }
    }
    let flip = |f: &BinaryForm| -> BinaryForm {
        GenForm::new(vec![
            f.coeff(0).clone(),
            f.coeff(1).neg(),
            f.coeff(2).clone(),
        ])
    };
    let identity = PowerIdentity::new(
        d,
        vec![
            (AlgebraicScalar::one(), f1.clone()),
            (lambda.clone(), f2.clone()),
            (AlgebraicScalar::one().neg(), flip(&f1)),
            (lambda.neg(), flip(&f2)),
        ],
    )
    .map_err(|e| CaseError::Internal(format!("wild identity: {e}")))?;
    if !verify_identity(&identity).passed() {
        return Err(CaseError::Internal(
            "wild third-representation identity failed".into(),
        ));
    }
    Ok(WildSolution {
        lambda,
        alpha,
        beta,
        p,
        identity,
    })
}

/// Solve the odd-coefficient condition chain at a concrete exponent.
pub fn wild_analyze(d: u32) -> Result<WildReport, CaseError> {
    let wc = wild_coefficients(d)?;
    if !wc.a[1].is_zero() {
        return Err(CaseError::Internal("a1 does not vanish identically".into()));
    }
    let mut notes = Vec::new();
    if wc.b[1].reduce_beta(d - 1).is_zero() {
        notes.push("b1 vanishes under beta^{d-1} = 1".into());
    }
    let a3 = wc.a[3].clone();
    let b3 = wc.b[3].clone();
    let a5 = wc.a.get(5).cloned();
    let a7 = wc.a.get(7).cloned();
    let mut report = WildReport {
        d,
        a3,
        b3,
        a5: a5.clone(),
        a7: a7.clone(),
        solutions: Vec::new(),
        contradiction: None,
        notes,
    };

    if d == 4 {
        // only the beta = 1/lambda^2 branch applies; beta^3 = 1 pins
        // lambda^2 to a primitive cube root. Take beta = omega^2 as the
        // cousin-canonical choice, so lambda = +-omega^2 and
        // alpha^2 = -3 omega^2.
        let omega = AlgebraicScalar::zeta(3);
        let omega2 = AlgebraicScalar::zeta_pow(3, 2);
        let alpha = sqrt_rational(&rat_int(-3)).mul(&omega);
        for sign in [1i64, -1] {
            let lambda = if sign == 1 {
                omega2.clone()
            } else {
                omega2.neg()
            };
            report
                .solutions
                .push(wild_solution(d, lambda, alpha.clone(), omega2.clone())?);
        }
        report.notes.push(
            "beta^3 = 1 with beta != 1; beta = omega^2 chosen as cousin representative".into(),
        );
        return Ok(report);
    }

    // d >= 5: impose a5 = 0 along both branches
    let q = a5
        .as_ref()
        .expect("a5 exists for d >= 3")
        .extract_odd_lambda_alpha()
        .ok_or_else(|| CaseError::Internal("a5 is not odd in lambda and alpha".into()))?;
    let mut mu_roots: Vec<AlgebraicScalar> = Vec::new();
    if d % 2 == 1 {
        let r_a = branch_mu_polynomial(&q, d, true);
        for root in low_degree_nonzero_roots(&r_a)? {
            if !mu_roots.contains(&root) {
                mu_roots.push(root);
            }
        }
    }
    let r_b = branch_mu_polynomial(&q, d, false);
    for root in low_degree_nonzero_roots(&r_b)? {
        if !mu_roots.contains(&root) {
            mu_roots.push(root);
        }
    }
    // discard mu = 1 (lambda^2 = 1 is excluded by the normal form)
    mu_roots.retain(|m| *m != AlgebraicScalar::one());
    let minus_one = AlgebraicScalar::from_int(-1);
    if !mu_roots.contains(&minus_one) {
        return Err(CaseError::Internal(
            "expected mu = -1 among the a5 = 0 roots".into(),
        ));
    }
    for extra in mu_roots.iter().filter(|m| **m != minus_one) {
        report.notes.push(format!(
            "discarded branch root mu = {} (fails beta closure)",
            extra
        ));
    }
    // merged branch: mu = -1, beta = -1, alpha^2 = 6/(d-2)
    if d % 2 == 0 {
        report.contradiction = Some(WildContradiction {
            reason: "merged branch forces beta = -1, but beta^{d-1} = 1 fails for even d".into(),
            a7_squared: None,
        });
        return Ok(report);
    }
    if d % 4 == 1 {
        report
            .notes
            .push("lambda = +-i consistent: d = 1 mod 4".into());
    } else {
        report
            .notes
            .push("d = 3 mod 4: lambda = +-i survives only if a7 also vanishes".into());
    }
    let nu = rat(6, d as i64 - 2);
    let alpha = sqrt_rational(&nu);
    let beta = minus_one.clone();
    let lambda = AlgebraicScalar::zeta(4);
    if d == 5 {
        for l in [lambda.clone(), lambda.neg()] {
            report
                .solutions
                .push(wild_solution(d, l, alpha.clone(), beta.clone())?);
        }
        return Ok(report);
    }
    // d >= 7 odd: evaluate a7 under the merged substitutions
    let a7v = a7
        .as_ref()
        .expect("a7 exists for d >= 4")
        .eval(&lambda, &alpha, &beta);
    if a7v.is_zero() {
        // would continue the chain; does not occur for d in range
        return Err(CaseError::Internal(format!(
            "a7 vanished unexpectedly at d = {}",
            d
        )));
    }
    report.contradiction = Some(WildContradiction {
        reason: format!(
            "a7 does not vanish under beta = -1, lambda^2 = -1, alpha^2 = 6/{}",
            d - 2
        ),
        a7_squared: Some(a7v.mul(&a7v)),
    });
    Ok(report)
}

// ---- the tame analysis ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TameBranchKind {
    /// (x^2+y^2)^{2e} + b C(2e,e) (xy)^{2e}, d = 2e even.
    EvenPower,
    /// (x^2 + b xy + y^2)^d + (x^2 - b xy + y^2)^d.
    SymmetricPair,
}

#[derive(Debug, Clone)]
pub enum TameVerdict {
    /// Realized as a four-quadratic dependency; identity attached.
    Realized(PowerIdentity),
    /// Substituting back leaves rank 3; a nonvanishing minor witness.
    Excluded { witness_minor: String },
}

#[derive(Debug, Clone)]
pub struct TameCandidate {
    /// b^2 for the symmetric branch, None for the even-power branch.
    pub b_squared: Option<AlgebraicScalar>,
    pub b: AlgebraicScalar,
    pub verdict: TameVerdict,
}

#[derive(Debug, Clone)]
pub struct TameBranchReport {
    pub kind: TameBranchKind,
    /// All 3x3 minors of the sliding-window matrix, as polynomials in b.
    pub minors: Vec<ParamPoly<Rational>>,
    pub minor_gcd: ParamPoly<Rational>,
    pub candidates: Vec<TameCandidate>,
}

/// Closed-form exclusion anchors computed for d >= 6.
#[derive(Debug, Clone)]
pub struct TameWitnesses {
    /// The corner minor in b matches
    /// -(b^8/(9(d-1))) C(d+1,5) (12 + b^2(d-3)) (24 + b^2(2d-7)).
    pub corner_minor_matches: bool,
    pub minor_123_at_u1: Rational,
    pub expected_minor_123: Rational,
    pub det3_at_u2: Rational,
    pub expected_det3: Rational,
}

#[derive(Debug, Clone)]
pub struct TameReport {
    pub d: u32,
    pub branches: Vec<TameBranchReport>,
    pub witnesses: Option<TameWitnesses>,
}

/// Normalized a_j(b) for the symmetric pair, from the binomial closed form
/// p = 2 sum_{2i <= d} C(d,2i) (x^2+y^2)^{d-2i} (xy)^{2i} b^{2i}.
fn symmetric_pair_normalized(d: u32) -> Vec<ParamPoly<Rational>> {
    let n = d as usize;
    let mut coeff = vec![ParamPoly::<Rational>::zero(); n + 1];
    for i in 0..=(d / 2) {
        let outer = Rational::from_integer(binomial(d, 2 * i)) * rat_int(2);
        let m = d - 2 * i;
        let b_pow = ParamPoly::var().pow(2 * i).scale(&outer);
        for j in 0..=m {
            // (x^2+y^2)^{d-2i} contributes C(m, j) to x^{2(m-j)} y^{2j};
            // shifting by (xy)^{2i} lands on y-exponent 2(j + i)
            let idx = (j + i) as usize;
            let c = Rational::from_integer(binomial(m, j));
            coeff[idx] = coeff[idx].add(&b_pow.scale(&c));
        }
    }
    (0..=n)
        .map(|j| {
            let inv = Rational::one() / Rational::from_integer(binomial(d, j as u32));
            coeff[j].scale(&inv)
        })
        .collect()
}

fn all_minors(a: &[ParamPoly<Rational>]) -> Vec<ParamPoly<Rational>> {
    let rows: Vec<[ParamPoly<Rational>; 3]> = (0..a.len() - 2)
        .map(|i| [a[i].clone(), a[i + 1].clone(), a[i + 2].clone()])
        .collect();
    let det3 = |x: &[ParamPoly<Rational>; 3],
                y: &[ParamPoly<Rational>; 3],
                z: &[ParamPoly<Rational>; 3]| {
        let t0 = x[0].mul(&y[1].mul(&z[2]).sub(&y[2].mul(&z[1])));
        let t1 = x[1].mul(&y[0].mul(&z[2]).sub(&y[2].mul(&z[0])));
        let t2 = x[2].mul(&y[0].mul(&z[1]).sub(&y[1].mul(&z[0])));
        t0.sub(&t1).add(&t2)
    };
    let mut out = Vec::new();
    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            for k in (j + 1)..rows.len() {
                out.push(det3(&rows[i], &rows[j], &rows[k]));
            }
        }
    }
    out
}

fn minor_gcd(minors: &[ParamPoly<Rational>]) -> Result<ParamPoly<Rational>, CaseError> {
    let mut g = ParamPoly::zero();
    for m in minors {
        g = g.gcd(m).map_err(CaseError::Arith)?;
        if let Some(0) = g.degree() {
            break;
        }
    }
    Ok(g)
}

/// Rank of the sliding-window matrix at a concrete b^2 (symmetric branch,
/// entries even in b) or b (even-power branch).
fn rank_at(
    a: &[ParamPoly<Rational>],
    value: &AlgebraicScalar,
    in_square: bool,
) -> Result<usize, CaseError> {
    let eval_one = |p: &ParamPoly<Rational>| -> Result<AlgebraicScalar, CaseError> {
        let poly = if in_square {
            p.even_part_in_square()
                .ok_or_else(|| CaseError::Internal("entry not even in b".into()))?
        } else {
            p.clone()
        };
        Ok(poly.eval_scalar(value))
    };
    let vals: Vec<AlgebraicScalar> = a.iter().map(eval_one).collect::<Result<_, _>>()?;
    let rows: Vec<Vec<AlgebraicScalar>> = (0..vals.len() - 2)
        .map(|i| vec![vals[i].clone(), vals[i + 1].clone(), vals[i + 2].clone()])
        .collect();
    let m = crate::matrix::ScalarMatrix::from_rows(rows);
    Ok(m.rank()?)
}

/// Assemble the four-term identity for a realized tame candidate.
fn realize(
    d: u32,
    input_pair: [(AlgebraicScalar, BinaryForm); 2],
    p: &BinaryForm,
) -> Result<Option<PowerIdentity>, CaseError> {
    let decs = two_power_decompose(p)?;
    let Some(dec) = decs.first() else {
        return Ok(None);
    };
    let [(l1, f1), (l2, f2)] = input_pair;
    let terms = vec![
        (l1, f1),
        (l2, f2),
        (dec.pairs[0].0.neg(), dec.pairs[0].1.clone()),
        (dec.pairs[1].0.neg(), dec.pairs[1].1.clone()),
    ];
    let id = PowerIdentity::new(d, terms)
        .map_err(|e| CaseError::Internal(format!("tame identity: {e}")))?;
    if !verify_identity(&id).passed() {
        return Err(CaseError::Internal(
            "tame identity failed verification".into(),
        ));
    }
    Ok(Some(id))
}

fn symmetric_branch(d: u32) -> Result<TameBranchReport, CaseError> {
    let a = symmetric_pair_normalized(d);
    let minors = all_minors(&a);
    let g = minor_gcd(&minors)?;
    // minors are even in b: work in u = b^2
    let g_u = g
        .even_part_in_square()
        .ok_or_else(|| CaseError::Internal("minor gcd is not even in b".into()))?;
    let mut candidates = Vec::new();
    for u in low_degree_nonzero_roots(&g_u)? {
        let b = scalar_sqrt(&u)?;
        let rank = rank_at(&a, &u, true)?;
        let verdict = if rank <= 2 {
            let f_plus = GenForm::new(vec![
                AlgebraicScalar::one(),
                b.clone(),
                AlgebraicScalar::one(),
            ]);
            let f_minus = GenForm::new(vec![
                AlgebraicScalar::one(),
                b.neg(),
                AlgebraicScalar::one(),
            ]);
            let p = f_plus.pow(d).add(&f_minus.pow(d));
            match realize(
                d,
                [
                    (AlgebraicScalar::one(), f_plus),
                    (AlgebraicScalar::one(), f_minus),
                ],
                &p,
            )? {
                Some(id) => TameVerdict::Realized(id),
                None => TameVerdict::Excluded {
                    witness_minor: "rank 2 but only square kernel quadratics".into(),
                },
            }
        } else {
            // find a nonvanishing minor at this candidate as the witness
            let mut witness = String::from("unidentified");
            for (idx, m) in minors.iter().enumerate() {
                let mu = m
                    .even_part_in_square()
                    .ok_or_else(|| CaseError::Internal("minor not even in b".into()))?;
                let v = mu.eval_scalar(&u);
                if !v.is_zero() {
                    witness = format!("minor #{idx} = {v}");
                    break;
                }
            }
            TameVerdict::Excluded {
                witness_minor: witness,
            }
        };
        candidates.push(TameCandidate {
            b_squared: Some(u),
            b,
            verdict,
        });
    }
    Ok(TameBranchReport {
        kind: TameBranchKind::SymmetricPair,
        minors,
        minor_gcd: g,
        candidates,
    })
}

fn even_power_branch(d: u32) -> Result<TameBranchReport, CaseError> {
    debug_assert!(d % 2 == 0);
    let e = d / 2;
    // a_j(b) = 1 + b at j = e, else 1
    let a: Vec<ParamPoly<Rational>> = (0..=d)
        .map(|j| {
            if j == e {
                ParamPoly::new(vec![rat_int(1), rat_int(1)])
            } else {
                ParamPoly::constant(rat_int(1))
            }
        })
        .collect();
    let minors = all_minors(&a);
    let g = minor_gcd(&minors)?;
    let mut candidates = Vec::new();
    for bval in low_degree_nonzero_roots(&g)? {
        let rank = rank_at(&a, &bval, false)?;
        let verdict = if rank <= 2 {
            let base = GenForm::new(vec![
                AlgebraicScalar::one(),
                AlgebraicScalar::zero(),
                AlgebraicScalar::one(),
            ]);
            let mono = GenForm::monomial(2, 1, AlgebraicScalar::one());
            let scale = bval.scale_rat(&Rational::from_integer(binomial(d, e)));
            let p = base.pow(d).add(&mono.pow(d).scale(&scale));
            match realize(
                d,
                [(AlgebraicScalar::one(), base), (scale.clone(), mono)],
                &p,
            )? {
                Some(id) => TameVerdict::Realized(id),
                None => TameVerdict::Excluded {
                    witness_minor: "rank 2 but only square kernel quadratics".into(),
                },
            }
        } else {
            TameVerdict::Excluded {
                witness_minor: "full rank after substitution".into(),
            }
        };
        candidates.push(TameCandidate {
            b_squared: None,
            b: bval,
            verdict,
        });
    }
    Ok(TameBranchReport {
        kind: TameBranchKind::EvenPower,
        minors,
        minor_gcd: g,
        candidates,
    })
}

/// Closed-form exclusion anchors for d >= 6.
fn tame_witnesses(d: u32) -> Result<TameWitnesses, CaseError> {
    let a = symmetric_pair_normalized(d);
    let n = d as usize;
    let det3 = |r0: usize, r1: usize, r2: usize| -> ParamPoly<Rational> {
        let row = |i: usize| [a[i].clone(), a[i + 1].clone(), a[i + 2].clone()];
        let (x, y, z) = (row(r0), row(r1), row(r2));
        let t0 = x[0].mul(&y[1].mul(&z[2]).sub(&y[2].mul(&z[1])));
        let t1 = x[1].mul(&y[0].mul(&z[2]).sub(&y[2].mul(&z[0])));
        let t2 = x[2].mul(&y[0].mul(&z[1]).sub(&y[1].mul(&z[0])));
        t0.sub(&t1).add(&t2)
    };
    // rows 1, 2, 4 of the stack (r_0, r_1, r_{d-3}, r_{d-2})
    let corner = det3(0, 1, n - 2);
    let dd = d as i64;
    let expected_corner = {
        let b8 = ParamPoly::<Rational>::var().pow(8);
        let f1 = ParamPoly::new(vec![rat_int(12), rat_int(0), rat_int(dd - 3)]);
        let f2 = ParamPoly::new(vec![rat_int(24), rat_int(0), rat_int(2 * dd - 7)]);
        let scale =
            -Rational::from_integer(binomial(d + 1, 5)) / (rat_int(9) * rat_int(dd - 1));
        b8.mul(&f1).mul(&f2).scale(&scale)
    };
    let corner_minor_matches = corner == expected_corner;
    // rows 1, 2, 3 of the same stack at u1 = -12/(d-3)
    let u1 = rat(-12, dd - 3);
    let m123 = det3(0, 1, n - 3)
        .even_part_in_square()
        .ok_or_else(|| CaseError::Internal("minor not even".into()))?;
    let minor_123_at_u1 = horner_rat(&m123, &u1);
    let expected_minor_123 = rat_int(55296) * rat_int(dd) * rat_int(dd) * rat_int(dd + 1)
        * rat_int(dd - 4)
        / (rat_int(25) * pow_rat(dd - 3, 5));
    // leading 3-row determinant at u2 = -24/(2d-7)
    let u2 = rat(-24, 2 * dd - 7);
    let det_top = det3(0, 1, 2)
        .even_part_in_square()
        .ok_or_else(|| CaseError::Internal("det not even".into()))?;
    let det3_at_u2 = horner_rat(&det_top, &u2);
    let expected_det3 = -rat_int(3538944)
        * rat_int(dd - 5)
        * rat_int(dd - 4)
        * rat_int(dd)
        * rat_int(1 + dd)
        * pow_rat(2 * dd - 1, 2)
        / (rat_int(175) * pow_rat(2 * dd - 7, 6));
    Ok(TameWitnesses {
        corner_minor_matches,
        minor_123_at_u1,
        expected_minor_123,
        det3_at_u2,
        expected_det3,
    })
}

fn pow_rat(base: i64, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= rat_int(base);
    }
    acc
}

fn horner_rat(p: &ParamPoly<Rational>, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Tame classification at a concrete exponent: minor polynomials, nonzero-b
/// candidates, realization checks, and (for d >= 6) the closed-form witnesses.
pub fn tame_analyze(d: u32) -> Result<TameReport, CaseError> {
    if d < 4 {
        return Err(CaseError::SmallDegree(d));
    }
    let mut branches = vec![symmetric_branch(d)?];
    if d % 2 == 0 {
        branches.push(even_power_branch(d)?);
    }
    let witnesses = if d >= 6 { Some(tame_witnesses(d)?) } else { None };
    Ok(TameReport {
        d,
        branches,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_scalar;

    fn sc(s: &str) -> AlgebraicScalar {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn a1_vanishes_and_b1_needs_beta_relation() {
        for d in [4u32, 5, 7] {
            let wc = wild_coefficients(d).unwrap();
            assert!(wc.a[1].is_zero());
            assert!(!wc.b[1].is_zero());
            assert!(wc.b[1].reduce_beta(d - 1).is_zero());
        }
    }

    #[test]
    fn a3_closed_form() {
        // a3 = (lambda alpha d(d-1)/6) ((d-2) alpha^2 (1 - lambda^2) + 6(beta - 1))
        for d in 4..=12u32 {
            let wc = wild_coefficients(d).unwrap();
            let l = MultiParamPoly::var(LAMBDA);
            let al = MultiParamPoly::var(ALPHA);
            let be = MultiParamPoly::var(BETA);
            let one = MultiParamPoly::one();
            let dd = d as i64;
            let inner = al
                .mul(&al)
                .mul(&one.sub(&l.mul(&l)))
                .scale(&rat_int(dd - 2))
                .add(&be.sub(&one).scale(&rat_int(6)));
            let expect = l.mul(&al).scale(&rat(dd * (dd - 1), 6)).mul(&inner);
            assert_eq!(wc.a[3], expect, "a3 at d = {}", d);
        }
    }

    #[test]
    fn b3_closed_form() {
        // b3 = (alpha d(d-1)/6) (1 - beta^{d-3}) (6 beta + alpha^2 (d-2))
        for d in 4..=12u32 {
            let wc = wild_coefficients(d).unwrap();
            let al = MultiParamPoly::var(ALPHA);
            let be = MultiParamPoly::var(BETA);
            let one = MultiParamPoly::one();
            let dd = d as i64;
            let expect = al
                .scale(&rat(dd * (dd - 1), 6))
                .mul(&one.sub(&be.pow(d - 3)))
                .mul(
                    &be.scale(&rat_int(6))
                        .add(&al.mul(&al).scale(&rat_int(dd - 2))),
                );
            assert_eq!(wc.b[3], expect, "b3 at d = {}", d);
        }
    }

    #[test]
    fn flip_difference_relation() {
        // a_i - a_{2d-i} = lambda b_i for i in {1,3,5,7}
        for d in [4u32, 6, 9, 12] {
            let wc = wild_coefficients(d).unwrap();
            let l = MultiParamPoly::var(LAMBDA);
            for i in [1usize, 3, 5, 7] {
                let lhs = wc.a[i].sub(&wc.a[2 * d as usize - i]);
                let rhs = l.mul(&wc.b[i]);
                assert_eq!(lhs, rhs, "i = {}, d = {}", i, d);
            }
        }
    }

    #[test]
    fn alpha_flip_symmetry() {
        // p_{l,a,B}(x,y) = p_{l,-a,B}(x,-y): a_i(l,a,B) = (-1)^i a_i(l,-a,B)
        for d in 4..=10u32 {
            let wc = wild_coefficients(d).unwrap();
            for (i, ai) in wc.a.iter().enumerate() {
                let mut flipped = MultiParamPoly::zero();
                for (e, q) in ai.terms() {
                    let sign = if e[1] % 2 == 0 { q.clone() } else { -q.clone() };
                    flipped = flipped.add(&MultiParamPoly::monomial(*e, sign));
                }
                let expect = if i % 2 == 0 { ai.clone() } else { ai.neg() };
                assert_eq!(flipped, expect, "alpha flip at i = {}, d = {}", i, d);
            }
        }
    }

    #[test]
    fn swap_symmetry_under_beta_relation() {
        // p_{l,a,B}(x,y) = p_{lB, a/B, 1/B}(y,x) under beta^{d-1} = 1:
        // substitute (lambda, alpha, beta) -> (lambda beta, alpha beta^{k-1}, beta^{k-1})
        // with k = d-1 (inverses via the cyclic relation) into a_{2d-i}.
        for d in 4..=10u32 {
            let wc = wild_coefficients(d).unwrap();
            let k = d - 1;
            for i in 0..=(2 * d as usize) {
                let mut subst = MultiParamPoly::zero();
                for (e, q) in wc.a[2 * d as usize - i].terms() {
                    let exps = [e[0], e[1], e[0] + e[1] * (k - 1) + e[2] * (k - 1)];
                    subst = subst.add(&MultiParamPoly::monomial(exps, q.clone()));
                }
                assert_eq!(
                    subst.reduce_beta(k),
                    wc.a[i].reduce_beta(k),
                    "swap relation at i = {}, d = {}",
                    i,
                    d
                );
            }
        }
    }

    #[test]
    fn wild_d4_solutions() {
        let r = wild_analyze(4).unwrap();
        assert_eq!(r.solutions.len(), 2);
        assert!(r.contradiction.is_none());
        let omega2 = sc("omega^2");
        for s in &r.solutions {
            assert!(s.lambda == omega2 || s.lambda == omega2.neg());
            assert_eq!(s.alpha.mul(&s.alpha), sc("-3*omega^2"));
            assert_eq!(s.beta, omega2);
            assert!(verify_identity(&s.identity).passed());
        }
    }

    #[test]
    fn wild_d5_solutions() {
        let r = wild_analyze(5).unwrap();
        assert_eq!(r.solutions.len(), 2);
        for s in &r.solutions {
            assert!(s.lambda == sc("i") || s.lambda == sc("-i"));
            assert_eq!(s.alpha.mul(&s.alpha), sc("2"));
            assert_eq!(s.beta, sc("-1"));
        }
    }

    #[test]
    fn wild_d9_contradiction() {
        let r = wild_analyze(9).unwrap();
        assert!(r.solutions.is_empty());
        let c = r.contradiction.expect("contradiction at d = 9");
        // a7^2 = -128 K^2 / (3675 (d-2)^5), K = (2d-1)(d^3-d)(d-3)(d-5)
        let d = 9i64;
        let k = rat_int(2 * d - 1) * rat_int(d * d * d - d) * rat_int(d - 3) * rat_int(d - 5);
        let expect = rat_int(-128) * &k * &k / (rat_int(3675) * pow_rat(d - 2, 5));
        assert_eq!(c.a7_squared.unwrap(), AlgebraicScalar::from_rational(expect));
    }

    #[test]
    fn wild_even_d_contradiction() {
        for d in [6u32, 8, 10] {
            let r = wild_analyze(d).unwrap();
            assert!(r.solutions.is_empty(), "d = {}", d);
            assert!(r.contradiction.is_some(), "d = {}", d);
        }
    }

    #[test]
    fn b5_vanishes_under_merged_branch() {
        for d in [5u32, 9, 13, 17, 21, 25, 29] {
            let wc = wild_coefficients(d).unwrap();
            let alpha = sqrt_rational(&rat(6, d as i64 - 2));
            let v = wc.b[5].eval(
                &AlgebraicScalar::one(),
                &alpha,
                &AlgebraicScalar::from_int(-1),
            );
            assert!(v.is_zero(), "b5 at d = {}", d);
        }
    }

    #[test]
    fn tame_d4_candidates() {
        let r = tame_analyze(4).unwrap();
        let sym = &r.branches[0];
        assert_eq!(sym.kind, TameBranchKind::SymmetricPair);
        let us: Vec<AlgebraicScalar> = sym
            .candidates
            .iter()
            .map(|c| c.b_squared.clone().unwrap())
            .collect();
        assert_eq!(us.len(), 2);
        assert!(us.contains(&sc("-12")));
        assert!(us.contains(&sc("-24")));
        for c in &sym.candidates {
            assert!(matches!(c.verdict, TameVerdict::Realized(_)));
        }
        let even = &r.branches[1];
        assert_eq!(even.candidates.len(), 1);
        assert_eq!(even.candidates[0].b, sc("-3"));
        assert!(matches!(even.candidates[0].verdict, TameVerdict::Realized(_)));
    }

    #[test]
    fn tame_d4_determinant_closed_form() {
        // single 3x3 determinant: -(b^8/27)(12 + b^2)(24 + b^2)
        let r = tame_analyze(4).unwrap();
        let sym = &r.branches[0];
        assert_eq!(sym.minors.len(), 1);
        let expect = ParamPoly::<Rational>::var()
            .pow(8)
            .mul(&ParamPoly::new(vec![rat_int(12), rat_int(0), rat_int(1)]))
            .mul(&ParamPoly::new(vec![rat_int(24), rat_int(0), rat_int(1)]))
            .scale(&rat(-1, 27));
        assert_eq!(sym.minors[0], expect);
    }

    #[test]
    fn tame_d5_candidate() {
        let r = tame_analyze(5).unwrap();
        assert_eq!(r.branches.len(), 1);
        let sym = &r.branches[0];
        assert_eq!(sym.candidates.len(), 1);
        assert_eq!(sym.candidates[0].b_squared.clone().unwrap(), sc("-8"));
        assert!(matches!(sym.candidates[0].verdict, TameVerdict::Realized(_)));
    }

    #[test]
    fn tame_d7_excluded_with_witnesses() {
        let r = tame_analyze(7).unwrap();
        assert!(r.branches[0].candidates.is_empty());
        let w = r.witnesses.unwrap();
        assert!(w.corner_minor_matches);
        assert_eq!(w.minor_123_at_u1, w.expected_minor_123);
        assert_eq!(w.det3_at_u2, w.expected_det3);
        assert!(!w.expected_det3.is_zero());
    }

    #[test]
    fn symmetric_closed_form_matches_direct_power() {
        for d in 4..=9u32 {
            let a = symmetric_pair_normalized(d);
            // direct: (x^2 + b xy + y^2)^d + (x^2 - b xy + y^2)^d over Q[b]
            let b = ParamPoly::<Rational>::var();
            let one = ParamPoly::<Rational>::one();
            let fp = GenForm::new(vec![one.clone(), b.clone(), one.clone()]);
            let fm = GenForm::new(vec![one.clone(), b.neg(), one.clone()]);
            let p = fp.pow(d).add(&fm.pow(d));
            for j in 0..=d as usize {
                let inv = Rational::one() / Rational::from_integer(binomial(d, j as u32));
                assert_eq!(
                    a[j],
                    p.coeff(2 * j).scale(&inv),
                    "j = {}, d = {}",
                    j,
                    d
                );
            }
        }
    }
}
