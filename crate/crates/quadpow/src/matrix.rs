//! Exact dense matrices over the scalar tower with fraction-free (Bareiss)
//! elimination. No floating-point rank decisions anywhere.

use crate::exact::{AlgebraicScalar, ArithError};

#[derive(Clone, Debug)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<AlgebraicScalar>,
}

impl ScalarMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![AlgebraicScalar::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows_in: Vec<Vec<AlgebraicScalar>>) -> Self {
        let rows = rows_in.len();
        let cols = rows_in.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows * cols);
        for r in rows_in {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        ScalarMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &AlgebraicScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: AlgebraicScalar) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Fraction-free Gaussian elimination (Bareiss). Returns the rank and the
    /// pivot column of each eliminated row; `self` becomes upper echelon.
    pub fn bareiss_echelon(&mut self) -> Result<(usize, Vec<usize>), ArithError> {
        let mut pivots = Vec::new();
        let mut prev = AlgebraicScalar::one();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let pivot = self.at(row, col).clone();
            for r in (row + 1)..self.rows {
                for c in (col + 1)..self.cols {
                    let num = pivot
                        .mul(self.at(r, c))
                        .sub(&self.at(r, col).mul(self.at(row, c)));
                    let v = num.div(&prev)?;
                    self.set(r, c, v);
                }
                self.set(r, col, AlgebraicScalar::zero());
            }
            prev = pivot;
            pivots.push(col);
            row += 1;
        }
        Ok((row, pivots))
    }

    pub fn rank(&self) -> Result<usize, ArithError> {
        let mut m = self.clone();
        Ok(m.bareiss_echelon()?.0)
    }

    /// Exact null-space basis. Kernel vectors are canonicalized by scaling
    /// the last nonzero coordinate to 1.
    pub fn kernel(&self) -> Result<Vec<Vec<AlgebraicScalar>>, ArithError> {
        let mut m = self.clone();
        let (rank, pivots) = m.bareiss_echelon()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![AlgebraicScalar::zero(); self.cols];
            v[fc] = AlgebraicScalar::one();
            // back-substitute pivot rows from the bottom
            for i in (0..rank).rev() {
                let pc = pivots[i];
                let mut acc = AlgebraicScalar::zero();
                for c in (pc + 1)..self.cols {
                    if !v[c].is_zero() && !m.at(i, c).is_zero() {
                        acc = acc.add(&m.at(i, c).mul(&v[c]));
                    }
                }
                if !acc.is_zero() {
                    v[pc] = acc.neg().div(m.at(i, pc))?;
                }
            }
            // normalize the last nonzero coordinate to 1
            if let Some(last) = v.iter().rposition(|x| !x.is_zero()) {
                let inv = v[last].inverse()?;
                for x in v.iter_mut() {
                    *x = x.mul(&inv);
                }
            }
            basis.push(v);
        }
        Ok(basis)
    }

    pub fn det(&self) -> Result<AlgebraicScalar, ArithError> {
        assert_eq!(self.rows, self.cols, "det of a non-square matrix");
        let mut m = self.clone();
        // Bareiss leaves the determinant as the last pivot product ratio;
        // track sign from row swaps by re-implementing the sweep.
        let n = self.rows;
        let mut sign_negative = false;
        let mut prev = AlgebraicScalar::one();
        for k in 0..n {
            if m.at(k, k).is_zero() {
                let Some(p) = ((k + 1)..n).find(|&r| !m.at(r, k).is_zero()) else {
                    return Ok(AlgebraicScalar::zero());
                };
                m.swap_rows(k, p);
                sign_negative = !sign_negative;
            }
            let pivot = m.at(k, k).clone();
            for r in (k + 1)..n {
                for c in (k + 1)..n {
                    let num = pivot
                        .mul(m.at(r, c))
                        .sub(&m.at(r, k).mul(m.at(k, c)));
                    let v = num.div(&prev)?;
                    m.set(r, c, v);
                }
                m.set(r, k, AlgebraicScalar::zero());
            }
            prev = pivot;
        }
        let d = m.at(n - 1, n - 1).clone();
        Ok(if sign_negative { d.neg() } else { d })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_scalar;

    fn mat(rows: &[&[&str]]) -> ScalarMatrix {
        ScalarMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_scalar(s).unwrap()).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(&[
            &["1", "1", "-2"],
            &["1", "-2", "1"],
            &["-2", "1", "1"],
        ]);
        assert_eq!(m.rank().unwrap(), 2);
        let k = m.kernel().unwrap();
        assert_eq!(k.len(), 1);
        // kernel spanned by (1,1,1)
        assert_eq!(k[0][0], k[0][2]);
        assert_eq!(k[0][1], k[0][2]);
        assert!(k[0][2].is_one());
    }

    #[test]
    fn determinant_with_cyclotomics() {
        let m = mat(&[&["1", "omega"], &["omega^2", "1"]]);
        // 1 - omega^3 = 0
        assert!(m.det().unwrap().is_zero());
        let m2 = mat(&[&["1", "omega"], &["omega", "1"]]);
        let d = m2.det().unwrap();
        let expect = parse_scalar("1 - omega^2").unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn kernel_satisfies_system() {
        let m = mat(&[
            &["2", "1", "0", "3"],
            &["0", "1", "1", "-1"],
        ]);
        for v in m.kernel().unwrap() {
            for r in 0..m.rows() {
                let mut acc = AlgebraicScalar::zero();
                for c in 0..m.cols() {
                    acc = acc.add(&m.at(r, c).mul(&v[c]));
                }
                assert!(acc.is_zero());
            }
        }
        assert_eq!(m.kernel().unwrap().len(), 2);
    }
}
