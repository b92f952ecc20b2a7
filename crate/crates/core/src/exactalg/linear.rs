use num_traits::Zero;

use super::{ExactError, Rational};

/// Square system `matrix * x = rhs` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub matrix: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

impl LinearSystem {
    pub fn new(matrix: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Self {
        LinearSystem { matrix, rhs }
    }

    pub fn solve(&self) -> Result<Vec<Rational>, ExactError> {
        solve_linear(&self.matrix, &self.rhs)
    }
}

/// Exact Gaussian elimination with partial pivoting on the first nonzero entry.
pub fn solve_linear(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>, ExactError> {
    let n = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    if rhs.len() != n || matrix.iter().any(|r| r.len() != n) {
        return Err(ExactError::ShapeMismatch { rows: n, cols, rhs: rhs.len() });
    }
    let mut a: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(ExactError::SingularMatrix)?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col][col..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *v -= &f * p;
            }
        }
    }
    Ok(a.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}
