//! Linear-dependence engine for power sets: kernels, identity verification,
//! flips, cousins, and power-sum certificates.

use crate::exact::{AlgebraicScalar, ArithError};
use crate::forms::{BinaryForm, FormError, FormSet, GenForm, LinearChange};
use crate::matrix::ScalarMatrix;

/// One term lambda * f^d of a power identity.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityTerm {
    pub lambda: AlgebraicScalar,
    pub form: BinaryForm,
}

/// Which side of the two-sided presentation a term is displayed on. The
/// stored assertion is always the one-sided sum = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Asserts sum_j lambda_j f_j^d = 0 for an honest set of forms of a common
/// degree, with all lambda_j nonzero.
#[derive(Clone, Debug)]
pub struct PowerIdentity {
    exponent: u32,
    terms: Vec<IdentityTerm>,
    sides: Vec<Side>,
}

impl PartialEq for PowerIdentity {
    fn eq(&self, other: &Self) -> bool {
        self.exponent == other.exponent && self.terms == other.terms
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum IdentityError {
    #[error("term {0} has zero coefficient")]
    ZeroLambda(usize),
    #[error("{0}")]
    Form(#[from] FormError),
    #[error("forms {0} and {1} are proportional")]
    Dishonest(usize, usize),
    #[error("identity needs at least one term")]
    Empty,
    #[error("singular linear change")]
    SingularChange,
    #[error("{0}")]
    Arith(#[from] ArithError),
    #[error("permutation is not a bijection on term indices")]
    BadPermutation,
}

impl PowerIdentity {
    pub fn new(
        exponent: u32,
        terms: Vec<(AlgebraicScalar, BinaryForm)>,
    ) -> Result<Self, IdentityError> {
        if terms.is_empty() {
            return Err(IdentityError::Empty);
        }
        for (i, (l, _)) in terms.iter().enumerate() {
            if l.is_zero() {
                return Err(IdentityError::ZeroLambda(i));
            }
        }
        let set = FormSet::new(terms.iter().map(|(_, f)| f.clone()).collect())?;
        if let Err((i, j)) = set.honest() {
            return Err(IdentityError::Dishonest(i, j));
        }
        let sides = vec![Side::Left; terms.len()];
        Ok(PowerIdentity {
            exponent,
            terms: terms
                .into_iter()
                .map(|(lambda, form)| IdentityTerm { lambda, form })
                .collect(),
            sides,
        })
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn terms(&self) -> &[IdentityTerm] {
        &self.terms
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn form_set(&self) -> FormSet {
        FormSet::new(self.terms.iter().map(|t| t.form.clone()).collect())
            .expect("identity invariant guarantees a valid form set")
    }

    /// The residual sum_j lambda_j f_j^d, exactly.
    pub fn residual(&self) -> BinaryForm {
        let deg = self.terms[0].form.degree() * self.exponent as usize;
        let mut acc = GenForm::zero(deg);
        for t in &self.terms {
            acc = acc.add(&t.form.pow(self.exponent).scale(&t.lambda));
        }
        acc
    }

    /// Negate-and-transpose the chosen terms across the displayed equality.
    /// The one-sided assertion is unchanged; flipping twice with the same
    /// subset restores the original presentation.
    pub fn flip(&self, movers: &[usize]) -> Self {
        let mut out = self.clone();
        for &i in movers {
            out.sides[i] = match out.sides[i] {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            };
        }
        out
    }

    /// Cousin transform: terms permuted by pi, scaled by c_j, and all forms
    /// substituted through M: g_j = c_j (f_{pi(j)} o M) with
    /// lambda'_j = lambda_{pi(j)} c_j^{-d}.
    pub fn cousin_apply(
        &self,
        pi: &[usize],
        c: &[AlgebraicScalar],
        m: &LinearChange,
    ) -> Result<Self, IdentityError> {
        let n = self.terms.len();
        if pi.len() != n || c.len() != n {
            return Err(IdentityError::BadPermutation);
        }
        let mut seen = vec![false; n];
        for &p in pi {
            if p >= n || seen[p] {
                return Err(IdentityError::BadPermutation);
            }
            seen[p] = true;
        }
        if !m.is_invertible() {
            return Err(IdentityError::SingularChange);
        }
        let d = self.exponent;
        let mut terms = Vec::with_capacity(n);
        for (j, &p) in pi.iter().enumerate() {
            if c[j].is_zero() {
                return Err(IdentityError::ZeroLambda(j));
            }
            let g = self.terms[p].form.compose(m).scale(&c[j]);
            let scale = c[j].pow(-(d as i64))?;
            let lambda = self.terms[p].lambda.mul(&scale);
            terms.push((lambda, g));
        }
        PowerIdentity::new(d, terms)
    }
}

/// Outcome of verifying an identity: failure is a result, not an error.
#[derive(Clone, Debug)]
pub enum VerifyOutcome {
    Pass,
    Fail { residual: BinaryForm },
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, VerifyOutcome::Pass)
    }
}

/// Compute sum lambda_j f_j^d exactly; pass iff identically zero.
pub fn verify_identity(identity: &PowerIdentity) -> VerifyOutcome {
    let r = identity.residual();
    if r.is_zero() {
        VerifyOutcome::Pass
    } else {
        VerifyOutcome::Fail { residual: r }
    }
}

/// Dependence report for the d-th powers of an honest form set.
#[derive(Clone, Debug)]
pub struct DependenceReport {
    pub rank: usize,
    pub kernel: Vec<Vec<AlgebraicScalar>>,
    pub dependent: bool,
}

/// Exact kernel of the (kd+1) x r coefficient matrix of {f_j^d}.
pub fn power_kernel(set: &FormSet, d: u32) -> Result<DependenceReport, IdentityError> {
    if let Err((i, j)) = set.honest() {
        return Err(IdentityError::Dishonest(i, j));
    }
    let k = set.degree();
    let rows = k * d as usize + 1;
    let cols = set.len();
    let mut m = ScalarMatrix::zero(rows, cols);
    for (j, f) in set.forms().iter().enumerate() {
        let p = f.pow(d);
        for (i, c) in p.coeffs().iter().enumerate() {
            m.set(i, j, c.clone());
        }
    }
    let kernel = m.kernel()?;
    let rank = cols - kernel.len();
    Ok(DependenceReport {
        rank,
        dependent: !kernel.is_empty(),
        kernel,
    })
}

/// Exact power sums sum_j f_j^e for each requested exponent.
pub fn power_sum_check(set: &FormSet, exps: &[u32]) -> Vec<(u32, bool, BinaryForm)> {
    exps.iter()
        .map(|&e| {
            let deg = set.degree() * e as usize;
            let mut acc = GenForm::zero(deg);
            for f in set.forms() {
                acc = acc.add(&f.pow(e));
            }
            (e, acc.is_zero(), acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_scalar;
    use crate::forms::GenForm;

    fn form(coeffs: &[&str]) -> BinaryForm {
        GenForm::new(coeffs.iter().map(|s| parse_scalar(s).unwrap()).collect())
    }

    fn sc(s: &str) -> AlgebraicScalar {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn quartic18_kernel() {
        let set = FormSet::new(vec![
            form(&["1", "0", "1"]),
            form(&["omega", "0", "omega^2"]),
            form(&["omega^2", "0", "omega"]),
            form(&["0", "1", "0"]),
        ])
        .unwrap();
        let rep = power_kernel(&set, 4).unwrap();
        assert!(rep.dependent);
        assert_eq!(rep.kernel.len(), 1);
        let v = &rep.kernel[0];
        // kernel spanned by (1, 1, 1, -18)
        let last_inv = v[3].inverse().unwrap();
        let normalized: Vec<AlgebraicScalar> =
            v.iter().map(|x| x.mul(&last_inv).mul(&sc("-18"))).collect();
        assert_eq!(normalized[0], sc("1"));
        assert_eq!(normalized[1], sc("1"));
        assert_eq!(normalized[2], sc("1"));
        assert_eq!(normalized[3], sc("-18"));
    }

    #[test]
    fn two_squares_independent() {
        let set = FormSet::new(vec![form(&["1", "0", "0"]), form(&["0", "0", "1"])]).unwrap();
        let rep = power_kernel(&set, 2).unwrap();
        assert!(!rep.dependent);
        assert_eq!(rep.rank, 2);
    }

    #[test]
    fn vandermonde_threshold() {
        // honest linear forms x + j y, j = 1..d+2 -> kernel dimension exactly 1
        let d = 4u32;
        let forms: Vec<BinaryForm> = (1..=(d + 2) as i64)
            .map(|j| {
                GenForm::new(vec![
                    AlgebraicScalar::one(),
                    AlgebraicScalar::from_int(j),
                ])
            })
            .collect();
        let set = FormSet::new(forms).unwrap();
        let rep = power_kernel(&set, d).unwrap();
        assert_eq!(rep.kernel.len(), 1);
    }

    #[test]
    fn verify_and_perturb() {
        // pythagorean as a one-sided identity
        let id = PowerIdentity::new(
            2,
            vec![
                (sc("1"), form(&["1", "0", "-1"])),
                (sc("1"), form(&["0", "2", "0"])),
                (sc("-1"), form(&["1", "0", "1"])),
            ],
        )
        .unwrap();
        assert!(verify_identity(&id).passed());
        let broken = PowerIdentity::new(
            2,
            vec![
                (sc("1"), form(&["1", "0", "-1"])),
                (sc("1"), form(&["0", "3", "0"])),
                (sc("-1"), form(&["1", "0", "1"])),
            ],
        )
        .unwrap();
        match verify_identity(&broken) {
            VerifyOutcome::Fail { residual } => {
                assert_eq!(residual.coeff(2), &sc("5"));
            }
            VerifyOutcome::Pass => panic!("perturbed identity must fail"),
        }
    }

    #[test]
    fn flip_is_involution() {
        let id = PowerIdentity::new(
            2,
            vec![
                (sc("1"), form(&["1", "0", "-1"])),
                (sc("1"), form(&["0", "2", "0"])),
                (sc("-1"), form(&["1", "0", "1"])),
            ],
        )
        .unwrap();
        let f = id.flip(&[1, 2]);
        assert_eq!(f.sides()[1], Side::Right);
        assert!(verify_identity(&f).passed());
        let back = f.flip(&[1, 2]);
        assert_eq!(back.sides(), id.sides());
    }

    #[test]
    fn cousin_identity_transform() {
        let id = PowerIdentity::new(
            2,
            vec![
                (sc("1"), form(&["1", "0", "-1"])),
                (sc("1"), form(&["0", "2", "0"])),
                (sc("-1"), form(&["1", "0", "1"])),
            ],
        )
        .unwrap();
        let n = id.len();
        let pi: Vec<usize> = (0..n).collect();
        let c = vec![sc("1"); n];
        let out = id.cousin_apply(&pi, &c, &LinearChange::identity()).unwrap();
        assert_eq!(out, id);
        // a genuine change keeps verification
        let m = LinearChange::new(sc("1"), sc("i"), sc("2"), sc("-1"));
        let c2 = vec![sc("3"), sc("-1/2"), sc("i")];
        let pi2 = vec![2usize, 0, 1];
        let out2 = id.cousin_apply(&pi2, &c2, &m).unwrap();
        assert!(verify_identity(&out2).passed());
    }

    #[test]
    fn power_sums() {
        let set = FormSet::new(vec![form(&["1", "0", "0"])]).unwrap();
        let res = power_sum_check(&set, &[1]);
        assert!(!res[0].1);
    }
}
