//! Numeric complex embedding of scalars, with tracked error bounds.
//!
//! The backend is double precision: requested precisions above
//! `EFFECTIVE_PRECISION_BITS` are clamped, and the `err` field of the result
//! is the authoritative bound. Klein-set geometry and quadrature checks all
//! operate at tolerances far above what doubles deliver.

use super::cyclotomic::CyclotomicNumber;
use super::scalar::AlgebraicScalar;
use num_complex::Complex64;
use num_traits::ToPrimitive;

pub const EFFECTIVE_PRECISION_BITS: u32 = 48;

/// A complex approximation with a rigorous absolute error bound.
#[derive(Debug, Clone, Copy)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
    pub err: f64,
    /// Which complex root of the quotient modulus was used, if any.
    pub root_index: Option<u32>,
}

impl ComplexApprox {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn agrees_with(&self, z: Complex64, extra_tol: f64) -> bool {
        (self.value() - z).norm() <= self.err + extra_tol
    }
}

fn rational_to_f64(q: &super::Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // fall back through a scaled division for extreme magnitudes
        let n = q.numer().to_f64().unwrap_or(f64::MAX);
        let d = q.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

fn eval_cyclotomic(c: &CyclotomicNumber) -> (Complex64, f64) {
    let n = c.level() as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0f64;
    for (e, q) in c.coeffs().iter().enumerate() {
        if num_traits::Zero::is_zero(q) {
            continue;
        }
        let qf = rational_to_f64(q);
        let theta = 2.0 * std::f64::consts::PI * (e as f64) / n;
        let unit = Complex64::new(theta.cos(), theta.sin());
        acc += unit * qf;
        // |q| * (trig error + rounding) + conversion error of q itself
        err += qf.abs() * 4.0 * f64::EPSILON + qf.abs().max(1.0) * f64::EPSILON;
    }
    (acc, err * 4.0 + f64::MIN_POSITIVE)
}

/// Roots of a complex-coefficient polynomial by Durand-Kerner iteration with
/// Newton polishing. Coefficients from constant upward; leading must be
/// nonzero. Returns the roots in an arbitrary order.
pub(crate) fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return vec![];
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if deg == 1 {
        return vec![-monic[0]];
    }
    // initial radius from the Cauchy bound
    let radius = 1.0
        + monic[..deg]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (deg as f64) + 0.4;
            Complex64::new(theta.cos(), theta.sin()) * radius * 0.7
        })
        .collect();
    let eval = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    for _ in 0..300 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() < 1e-300 {
                den = Complex64::new(1e-300, 0.0);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 * radius.max(1.0) {
            break;
        }
    }
    // one round of Newton polishing where the derivative allows it
    let deriv = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in monic.iter().enumerate().skip(1).rev() {
            acc = acc * x + c * (k as f64);
        }
        acc
    };
    for zi in z.iter_mut() {
        let d = deriv(*zi);
        if d.norm() > 1e-8 {
            *zi -= eval(*zi) / d;
        }
    }
    z
}

/// The complex roots of the modulus, sorted lexicographically by (re, im) so
/// the root index is stable across runs.
fn modulus_roots(m: &super::scalar::Modulus) -> Vec<Complex64> {
    let coeffs: Vec<Complex64> = m
        .coeffs()
        .iter()
        .map(|c| eval_cyclotomic(c).0)
        .collect();
    let mut roots = complex_roots(&coeffs);
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    roots
}

/// Evaluate at the designated root of the modulus (index 0 when absent).
pub fn eval_complex_at_root(
    a: &AlgebraicScalar,
    precision: u32,
    root_index: u32,
) -> ComplexApprox {
    let _clamped = precision.min(EFFECTIVE_PRECISION_BITS);
    match a.modulus() {
        None => {
            let (v, err) = eval_cyclotomic(&a.value_coeffs()[0]);
            ComplexApprox {
                re: v.re,
                im: v.im,
                err,
                root_index: None,
            }
        }
        Some(m) => {
            let roots = modulus_roots(m);
            let idx = (root_index as usize).min(roots.len().saturating_sub(1));
            let t = roots[idx];
            let mut acc = Complex64::new(0.0, 0.0);
            let mut err = 0.0f64;
            for c in a.value_coeffs().iter().rev() {
                let (cv, cerr) = eval_cyclotomic(c);
                let mag = acc.norm();
                acc = acc * t + cv;
                err = err * t.norm() + cerr + mag * 1e-13;
            }
            // allow for root inaccuracy via the value's sensitivity to t
            let mut dacc = Complex64::new(0.0, 0.0);
            for (k, c) in a.value_coeffs().iter().enumerate().skip(1).rev() {
                let (cv, _) = eval_cyclotomic(c);
                dacc = dacc * t + cv * (k as f64);
            }
            err += dacc.norm() * 1e-11 + 1e-13;
            ComplexApprox {
                re: acc.re,
                im: acc.im,
                err,
                root_index: Some(idx as u32),
            }
        }
    }
}

pub fn eval_complex(a: &AlgebraicScalar, precision: u32) -> ComplexApprox {
    eval_complex_at_root(a, precision, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_scalar;

    #[test]
    fn zeta4_is_i() {
        let v = eval_complex(&AlgebraicScalar::zeta(4), 53);
        assert!((v.re - 0.0).abs() < 1e-15 && (v.im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sqrt2_embedding() {
        let v = eval_complex(&parse_scalar("zeta(8,1)+zeta(8,-1)").unwrap(), 53);
        assert!((v.re - std::f64::consts::SQRT_2).abs() < 1e-14);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn omega_embedding() {
        let v = eval_complex(&AlgebraicScalar::zeta(3), 53);
        assert!((v.re + 0.5).abs() < 1e-14);
        assert!((v.im - 0.8660254037844386).abs() < 1e-12);
    }

    #[test]
    fn eval_is_homomorphic_within_bounds() {
        let a = parse_scalar("sqrt(-6/5)").unwrap();
        let b = parse_scalar("1 - 2*zeta(5,2)").unwrap();
        let va = eval_complex(&a, 53);
        let vb = eval_complex(&b, 53);
        let vab = eval_complex(&a.mul(&b), 53);
        let prod = va.value() * vb.value();
        let tol = va.err * vb.value().norm() + vb.err * va.value().norm() + va.err * vb.err;
        assert!(vab.agrees_with(prod, tol + 1e-12));
    }

    #[test]
    fn quotient_root_eval() {
        // root(t^2 - 2) at designated roots embeds to +-sqrt(2)
        let v = parse_scalar("root(-2,0,1)").unwrap();
        let r0 = eval_complex_at_root(&v, 53, 0);
        let r1 = eval_complex_at_root(&v, 53, 1);
        assert!((r0.re + std::f64::consts::SQRT_2).abs() < 1e-9);
        assert!((r1.re - std::f64::consts::SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn branch_convention() {
        // sqrt picks positive real part, or positive imaginary on the axis
        for text in ["sqrt(2)", "sqrt(5)", "sqrt(30)", "sqrt(6/5)"] {
            let v = eval_complex(&parse_scalar(text).unwrap(), 53);
            assert!(v.re > 0.0, "{} should have positive real part", text);
        }
        for text in ["sqrt(-2)", "sqrt(-3)", "sqrt(-30)", "sqrt(-6/5)"] {
            let v = eval_complex(&parse_scalar(text).unwrap(), 53);
            assert!(v.re.abs() < 1e-12 && v.im > 0.0, "{} branch", text);
        }
    }
}
