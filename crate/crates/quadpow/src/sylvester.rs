//! The 2-Sylvester rank test, recovery of two-power representations, and
//! simultaneous diagonalization of quadratic pairs.
//!
//! For an even form p = sum_j binom(d,j) a_j x^{2d-2j} y^{2j}, the sliding
//! window matrix (a_i, a_{i+1}, a_{i+2}) has a non-square kernel quadratic
//! h(u,v) exactly when p is a sum of two d-th powers of even quadratics.

use crate::exact::{binomial, scalar_sqrt, AlgebraicScalar, ArithError, Rational};
use crate::forms::{quad_gcd, BinaryForm, FormError, GenForm, LinearChange, QuadGcd};
use crate::matrix::ScalarMatrix;

#[derive(Debug, Clone, thiserror::Error)]
pub enum SylvesterError {
    #[error("form is not even: odd coefficient at index {0}")]
    NotEven(usize),
    #[error("degree must be 2d with d >= 3, got {0}")]
    BadDegree(usize),
    #[error("zero form")]
    ZeroForm,
    #[error("{0}")]
    Arith(#[from] ArithError),
    #[error("{0}")]
    Form(#[from] FormError),
    #[error("forms share a factor; diagonalization needs relatively prime quadratics")]
    CommonFactor,
    #[error("internal: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionKind {
    /// h with two distinct finite roots.
    Generic,
    /// h = u (gamma u - v): one summand is a power of y^2.
    EllDegenerate,
}

impl DecompositionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecompositionKind::Generic => "generic-h",
            DecompositionKind::EllDegenerate => "ell-degenerate",
        }
    }
}

/// p = mu_1 g_1^d + mu_2 g_2^d with even quadratics g_i.
#[derive(Clone, Debug)]
pub struct TwoPowerDecomposition {
    pub kind: DecompositionKind,
    pub pairs: [(AlgebraicScalar, BinaryForm); 2],
}

impl TwoPowerDecomposition {
    pub fn expand(&self, d: u32) -> BinaryForm {
        let a = self.pairs[0].1.pow(d).scale(&self.pairs[0].0);
        let b = self.pairs[1].1.pow(d).scale(&self.pairs[1].0);
        a.add(&b)
    }
}

/// Matrix, rank, kernel, and any recovered decompositions for an even form.
#[derive(Clone, Debug)]
pub struct SylvesterReport {
    /// d, for input degree 2d.
    pub half_degree: u32,
    /// Normalized coefficients a_0..a_d.
    pub normalized: Vec<AlgebraicScalar>,
    /// Rows (a_i, a_{i+1}, a_{i+2}) for i = 0..d-2.
    pub matrix: Vec<[AlgebraicScalar; 3]>,
    pub rank: usize,
    pub kernel: Vec<[AlgebraicScalar; 3]>,
    pub decompositions: Vec<TwoPowerDecomposition>,
    /// Kernel dimension >= 2: infinitely many decompositions; the list above
    /// holds representatives only.
    pub family: bool,
}

fn extract_normalized(p: &BinaryForm) -> Result<(u32, Vec<AlgebraicScalar>), SylvesterError> {
    if p.is_zero() {
        return Err(SylvesterError::ZeroForm);
    }
    let deg = p.degree();
    if deg % 2 != 0 || deg < 6 {
        return Err(SylvesterError::BadDegree(deg));
    }
    let d = (deg / 2) as u32;
    for (i, c) in p.coeffs().iter().enumerate() {
        if i % 2 == 1 && !c.is_zero() {
            return Err(SylvesterError::NotEven(i));
        }
    }
    let mut a = Vec::with_capacity(d as usize + 1);
    for j in 0..=d {
        let inv = Rational::new(1.into(), binomial(d, j));
        a.push(p.coeff(2 * j as usize).scale_rat(&inv));
    }
    Ok((d, a))
}

/// Build the (d-1) x 3 sliding-window matrix with exact rank and kernel.
pub fn sylvester_matrix(p: &BinaryForm) -> Result<SylvesterReport, SylvesterError> {
    let (d, a) = extract_normalized(p)?;
    let rows: Vec<[AlgebraicScalar; 3]> = (0..(d as usize - 1))
        .map(|i| [a[i].clone(), a[i + 1].clone(), a[i + 2].clone()])
        .collect();
    let m = ScalarMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect());
    let rank = m.rank()?;
    let kernel: Vec<[AlgebraicScalar; 3]> = m
        .kernel()?
        .into_iter()
        .map(|v| [v[0].clone(), v[1].clone(), v[2].clone()])
        .collect();
    Ok(SylvesterReport {
        half_degree: d,
        normalized: a,
        matrix: rows,
        rank,
        kernel: kernel.clone(),
        decompositions: Vec::new(),
        family: kernel.len() >= 2,
    })
}

/// Is the kernel quadratic h non-square? disc = c1^2 - 4 c0 c2.
fn is_nonsquare(h: &[AlgebraicScalar; 3]) -> bool {
    let disc = h[1]
        .mul(&h[1])
        .sub(&h[0].mul(&h[2]).scale_rat(&crate::exact::rat_int(4)));
    !disc.is_zero()
}

/// Recover the decomposition attached to one non-square kernel quadratic.
fn decomposition_from_kernel(
    d: u32,
    a: &[AlgebraicScalar],
    h: &[AlgebraicScalar; 3],
    p: &BinaryForm,
) -> Result<Option<TwoPowerDecomposition>, SylvesterError> {
    let dec = if !h[2].is_zero() {
        // monic roots of z^2 + (c1/c2) z + (c0/c2)
        let c1 = h[1].div(&h[2])?;
        let c0 = h[0].div(&h[2])?;
        let disc = c1.mul(&c1).sub(&c0.scale_rat(&crate::exact::rat_int(4)));
        if disc.is_zero() {
            return Ok(None);
        }
        let sq = scalar_sqrt(&disc)?;
        let half = crate::exact::rat(1, 2);
        let gamma1 = c1.neg().add(&sq).scale_rat(&half);
        let gamma2 = c1.neg().sub(&sq).scale_rat(&half);
        // mu_1 + mu_2 = a_0 ; mu_1 gamma_1 + mu_2 gamma_2 = a_1
        let denom = gamma1.sub(&gamma2);
        let a0 = a[0].clone();
        let a1 = a[1].clone();
        let mu1 = a1.sub(&a0.mul(&gamma2)).div(&denom)?;
        let mu2 = a0.sub(&mu1);
        if mu1.is_zero() || mu2.is_zero() {
            return Ok(None);
        }
        let g1 = GenForm::new(vec![
            AlgebraicScalar::one(),
            AlgebraicScalar::zero(),
            gamma1,
        ]);
        let g2 = GenForm::new(vec![
            AlgebraicScalar::one(),
            AlgebraicScalar::zero(),
            gamma2,
        ]);
        TwoPowerDecomposition {
            kind: DecompositionKind::Generic,
            pairs: [(mu1, g1), (mu2, g2)],
        }
    } else {
        // h = u (c0 u + c1 v): degenerate branch with one pure y^{2d} term
        if h[1].is_zero() {
            return Ok(None); // h = c0 u^2 is square
        }
        let gamma1 = h[0].neg().div(&h[1])?;
        let mu1 = a[0].clone();
        if mu1.is_zero() {
            return Ok(None);
        }
        let gpow = gamma1.pow(d as i64)?;
        let mu2 = a[d as usize].sub(&mu1.mul(&gpow));
        if mu2.is_zero() {
            return Ok(None);
        }
        let g1 = GenForm::new(vec![
            AlgebraicScalar::one(),
            AlgebraicScalar::zero(),
            gamma1,
        ]);
        let g2 = GenForm::new(vec![
            AlgebraicScalar::zero(),
            AlgebraicScalar::zero(),
            AlgebraicScalar::one(),
        ]);
        TwoPowerDecomposition {
            kind: DecompositionKind::EllDegenerate,
            pairs: [(mu1, g1), (mu2, g2)],
        }
    };
    // re-expansion must reproduce p exactly
    if dec.expand(d) != *p {
        return Err(SylvesterError::Internal(
            "recovered decomposition does not re-expand to the input".into(),
        ));
    }
    Ok(Some(dec))
}

/// All decompositions into mu_1 g_1^d + mu_2 g_2^d with g_i even, derived
/// from the full kernel. Kernel dimension >= 2 yields a parameterized family
/// (representatives are reported and `family` is set).
pub fn enumerate_even_representations(
    p: &BinaryForm,
) -> Result<SylvesterReport, SylvesterError> {
    let mut report = sylvester_matrix(p)?;
    let d = report.half_degree;
    let a = report.normalized.clone();
    match report.kernel.len() {
        0 => {}
        1 => {
            let h = report.kernel[0].clone();
            if is_nonsquare(&h) {
                if let Some(dec) = decomposition_from_kernel(d, &a, &h, p)? {
                    report.decompositions.push(dec);
                }
            }
        }
        _ => {
            // pick representative non-square combinations of the basis
            let basis = report.kernel.clone();
            let mut samples: Vec<[AlgebraicScalar; 3]> = basis.clone();
            // a couple of simple combinations to dodge square representatives
            let combo = |s: i64, u: &[AlgebraicScalar; 3], v: &[AlgebraicScalar; 3]| {
                let sv = AlgebraicScalar::from_int(s);
                [
                    u[0].add(&v[0].mul(&sv)),
                    u[1].add(&v[1].mul(&sv)),
                    u[2].add(&v[2].mul(&sv)),
                ]
            };
            samples.push(combo(1, &basis[0], &basis[1]));
            samples.push(combo(-1, &basis[0], &basis[1]));
            for h in samples {
                if is_nonsquare(&h) {
                    if let Some(dec) = decomposition_from_kernel(d, &a, &h, p)? {
                        report.decompositions.push(dec);
                        if report.decompositions.len() >= 3 {
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Decompositions only (empty when rank is 3 or only square kernel vectors
/// exist).
pub fn two_power_decompose(
    p: &BinaryForm,
) -> Result<Vec<TwoPowerDecomposition>, SylvesterError> {
    Ok(enumerate_even_representations(p)?.decompositions)
}

/// Result of simultaneously diagonalizing two relatively prime quadratics.
#[derive(Clone, Debug)]
pub struct DiagonalizationResult {
    pub change: LinearChange,
    pub g1: BinaryForm,
    pub g2: BinaryForm,
}

fn quad_rank(f: &BinaryForm) -> usize {
    // rank of the symmetric matrix [[a, b/2], [b/2, c]]
    let a = f.coeff(0);
    let b = f.coeff(1);
    let c = f.coeff(2);
    let disc = b.mul(b).sub(&a.mul(c).scale_rat(&crate::exact::rat_int(4)));
    if !disc.is_zero() {
        2
    } else if f.is_zero() {
        0
    } else {
        1
    }
}

/// The double root direction of a rank-1 quadratic, as a linear form.
fn rank1_line(f: &BinaryForm) -> BinaryForm {
    let a = f.coeff(0);
    let b = f.coeff(1);
    if !a.is_zero() {
        GenForm::new(vec![a.scale_rat(&crate::exact::rat_int(2)), b.clone()])
    } else {
        // a = 0 and b^2 = 4ac forces b = 0: f = c y^2
        GenForm::new(vec![AlgebraicScalar::zero(), AlgebraicScalar::one()])
    }
}

/// Pencil-based simultaneous diagonalization: columns of M are eigenvectors
/// of adj(A1) A2; at most one square-root adjunction (the eigenvalue
/// discriminant).
pub fn simultaneous_diagonalize(
    f1: &BinaryForm,
    f2: &BinaryForm,
) -> Result<DiagonalizationResult, SylvesterError> {
    assert!(f1.degree() == 2 && f2.degree() == 2);
    match quad_gcd(f1, f2)? {
        QuadGcd::Coprime => {}
        _ => return Err(SylvesterError::CommonFactor),
    }
    let r1 = quad_rank(f1);
    let r2 = quad_rank(f2);
    if r1 == 1 && r2 == 1 {
        // f_i = const * l_i^2: map (l1, l2) -> (x, y) via the adjugate
        let l1 = rank1_line(f1);
        let l2 = rank1_line(f2);
        let (p1, q1) = (l1.coeff(0).clone(), l1.coeff(1).clone());
        let (p2, q2) = (l2.coeff(0).clone(), l2.coeff(1).clone());
        let m = LinearChange::new(q2.clone(), q1.neg(), p2.neg(), p1.clone());
        let g1 = f1.compose(&m);
        let g2 = f2.compose(&m);
        if !g1.coeff(1).is_zero() || !g2.coeff(1).is_zero() {
            return Err(SylvesterError::Internal("rank-1 pair not diagonalized".into()));
        }
        return Ok(DiagonalizationResult { change: m, g1, g2 });
    }
    // ensure the first form has rank 2; remember whether we swapped
    let (fa, fb, swapped) = if r1 == 2 {
        (f1, f2, false)
    } else {
        (f2, f1, true)
    };
    let two_inv = crate::exact::rat(1, 2);
    let a1 = fa.coeff(0).clone();
    let b1 = fa.coeff(1).scale_rat(&two_inv);
    let c1 = fa.coeff(2).clone();
    let a2 = fb.coeff(0).clone();
    let b2 = fb.coeff(1).scale_rat(&two_inv);
    let c2 = fb.coeff(2).clone();
    // B = adj(A1) * A2 with A = [[a, b], [b, c]]
    let m00 = c1.mul(&a2).sub(&b1.mul(&b2));
    let m01 = c1.mul(&b2).sub(&b1.mul(&c2));
    let m10 = a1.mul(&b2).sub(&b1.mul(&a2));
    let m11 = a1.mul(&c2).sub(&b1.mul(&b2));
    let tr = m00.add(&m11);
    let det = m00.mul(&m11).sub(&m01.mul(&m10));
    let disc = tr.mul(&tr).sub(&det.scale_rat(&crate::exact::rat_int(4)));
    if disc.is_zero() {
        // repeated eigenvalue on a coprime pair only happens for proportional
        // forms, which gcd screening already rejected
        return Err(SylvesterError::Internal(
            "degenerate pencil for relatively prime quadratics".into(),
        ));
    }
    let sq = scalar_sqrt(&disc)?;
    let half = crate::exact::rat(1, 2);
    let z1 = tr.add(&sq).scale_rat(&half);
    let z2 = tr.sub(&sq).scale_rat(&half);
    let eigvec = |z: &AlgebraicScalar| -> (AlgebraicScalar, AlgebraicScalar) {
        // kernel of (B - z I)
        let v = (m01.clone(), z.sub(&m00));
        if !v.0.is_zero() || !v.1.is_zero() {
            v
        } else {
            (z.sub(&m11), m10.clone())
        }
    };
    let (vx1, vy1) = eigvec(&z1);
    let (vx2, vy2) = eigvec(&z2);
    let m = LinearChange::new(vx1, vx2, vy1, vy2);
    if !m.is_invertible() {
        return Err(SylvesterError::Internal("eigenvector matrix is singular".into()));
    }
    let g1 = f1.compose(&m);
    let g2 = f2.compose(&m);
    if !g1.coeff(1).is_zero() || !g2.coeff(1).is_zero() {
        return Err(SylvesterError::Internal(
            "pencil eigenvectors failed to clear the cross terms".into(),
        ));
    }
    let _ = swapped;
    Ok(DiagonalizationResult { change: m, g1, g2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_scalar;

    fn form(coeffs: &[&str]) -> BinaryForm {
        GenForm::new(coeffs.iter().map(|s| parse_scalar(s).unwrap()).collect())
    }

    fn sc(s: &str) -> AlgebraicScalar {
        parse_scalar(s).unwrap()
    }

    /// (x^2+y^2)^4 + 6 b (xy)^4
    fn even_power_family(b: i64) -> BinaryForm {
        let base = form(&["1", "0", "1"]).pow(4);
        let mono = form(&["0", "1", "0"])
            .pow(4)
            .scale(&AlgebraicScalar::from_int(6 * b));
        base.add(&mono)
    }

    #[test]
    fn tame2_matrix_rows_and_rank() {
        let rep = sylvester_matrix(&even_power_family(1)).unwrap();
        assert_eq!(rep.rank, 3);
        let want = [
            ["1", "1", "2"],
            ["1", "2", "1"],
            ["2", "1", "1"],
        ];
        for (row, w) in rep.matrix.iter().zip(want.iter()) {
            for (x, s) in row.iter().zip(w.iter()) {
                assert_eq!(x, &sc(s));
            }
        }
        let rep3 = sylvester_matrix(&even_power_family(-3)).unwrap();
        assert_eq!(rep3.rank, 2);
    }

    #[test]
    fn cube_sum_degenerate_kernel() {
        // x^6 + y^6: a = (1, 0, 0, 1); kernel (0, 1, 0); h = uv
        let p = form(&["1", "0", "0"])
            .pow(3)
            .add(&form(&["0", "0", "1"]).pow(3));
        let rep = enumerate_even_representations(&p).unwrap();
        assert_eq!(rep.rank, 2);
        assert_eq!(rep.kernel.len(), 1);
        assert!(rep.kernel[0][0].is_zero());
        assert!(rep.kernel[0][1].is_one());
        assert!(rep.kernel[0][2].is_zero());
        assert_eq!(rep.decompositions.len(), 1);
        assert_eq!(rep.decompositions[0].kind, DecompositionKind::EllDegenerate);
    }

    #[test]
    fn octic_18_decomposition() {
        // x^8 + 4 x^6 y^2 - 12 x^4 y^4 + 4 x^2 y^6 + y^8
        let p = form(&["1", "0", "4", "0", "-12", "0", "4", "0", "1"]);
        let decs = two_power_decompose(&p).unwrap();
        assert_eq!(decs.len(), 1);
        let dec = &decs[0];
        // up to mu-normalization this is (x^2+y^2)^4 - 18 (xy)^4, i.e. the
        // omega pair: mu_i = -omega^{+-1}, gamma_i = omega^{+-1}
        let gammas: Vec<_> = dec.pairs.iter().map(|(_, g)| g.coeff(2).clone()).collect();
        assert!(gammas.contains(&sc("omega")));
        assert!(gammas.contains(&sc("omega^2")));
        for (mu, g) in &dec.pairs {
            if *g.coeff(2) == sc("omega") {
                assert_eq!(mu, &sc("-omega"));
            } else {
                assert_eq!(mu, &sc("-omega^2"));
            }
        }
    }

    #[test]
    fn q1_has_no_decomposition() {
        let p = form(&["-1", "0", "-14", "0", "-42", "0", "-14", "0", "-1"]);
        let rep = enumerate_even_representations(&p).unwrap();
        assert_eq!(rep.rank, 3);
        assert!(rep.decompositions.is_empty());
    }

    #[test]
    fn q2_has_exactly_one() {
        let s3 = "sqrt(-3)";
        let p = form(&[
            s3,
            "0",
            &format!("-14*{}", s3),
            "0",
            "0",
            "0",
            &format!("14*{}", s3),
            "0",
            &format!("-{}", s3),
        ]);
        let rep = enumerate_even_representations(&p).unwrap();
        assert_eq!(rep.rank, 2);
        assert_eq!(rep.decompositions.len(), 1);
    }

    #[test]
    fn diagonalize_already_even() {
        let f1 = form(&["1", "0", "1"]);
        let f2 = form(&["3", "0", "-1"]);
        let r = simultaneous_diagonalize(&f1, &f2).unwrap();
        assert!(r.g1.coeff(1).is_zero() && r.g2.coeff(1).is_zero());
    }

    #[test]
    fn diagonalize_hyperbolic_pair() {
        let f1 = form(&["1", "0", "-1"]);
        let f2 = form(&["0", "2", "0"]);
        let r = simultaneous_diagonalize(&f1, &f2).unwrap();
        assert!(r.g1.coeff(1).is_zero() && r.g2.coeff(1).is_zero());
        assert!(!r.change.det().is_zero());
    }

    #[test]
    fn diagonalize_rejects_common_factor() {
        let f1 = form(&["1", "1", "0"]);
        let f2 = form(&["0", "1", "1"]);
        assert!(matches!(
            simultaneous_diagonalize(&f1, &f2),
            Err(SylvesterError::CommonFactor)
        ));
    }

    #[test]
    fn gerardin_diagonal_images() {
        // x^2 + xy - y^2 and x^2 - xy - y^2 diagonalize to multiples of x^2, y^2
        let f1 = form(&["1", "1", "-1"]);
        let f2 = form(&["1", "-1", "-1"]);
        let r = simultaneous_diagonalize(&f1, &f2).unwrap();
        assert!(r.g1.coeff(1).is_zero() && r.g2.coeff(1).is_zero());
    }
}
