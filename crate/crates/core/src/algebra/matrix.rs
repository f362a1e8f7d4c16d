//! Dense matrices over the rationals and exact Gaussian elimination.

use std::fmt;

use num_traits::{One, Zero};

use super::rational::{abs_numer, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("rows of unequal length".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Solves `self * x = rhs` exactly.
    ///
    /// Gaussian elimination with partial pivoting on the largest numerator
    /// magnitude. Fails with [`Error::Singular`] when no nonzero pivot exists.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.rows;
        if self.cols != n {
            return Err(Error::Shape(format!(
                "linear_solve needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        if rhs.len() != n {
            return Err(Error::Shape(format!(
                "right-hand side of length {} for {n} equations",
                rhs.len()
            )));
        }

        // Augmented rows.
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(rhs[i].clone());
                row
            })
            .collect();

        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[r][col].is_zero())
                .max_by(|&r, &s| abs_numer(&a[r][col]).cmp(&abs_numer(&a[s][col])))
                .ok_or(Error::Singular { column: col })?;
            a.swap(col, pivot);

            let inv = a[col][col].recip();
            for v in a[col][col..].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= &factor * p;
                }
            }
        }
        Ok(a.into_iter().map(|mut row| row.pop().expect("augmented")).collect())
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Free-function form of [`RatMatrix::solve`].
pub fn linear_solve(a: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    a.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use rand::{Rng, SeedableRng};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_solve() {
        let x = RatMatrix::identity(2).solve(&[rat(5, 3), int(-2)]).unwrap();
        assert_eq!(x, vec![rat(5, 3), int(-2)]);
    }

    #[test]
    fn two_by_two_from_signature_system() {
        let a = m(&[&[-21, -3], &[18, 9]]);
        let x = linear_solve(&a, &[int(0), int(1)]).unwrap();
        assert_eq!(x, vec![rat(-1, 45), rat(7, 45)]);
    }

    #[test]
    fn diagonal() {
        let x = m(&[&[2, 0], &[0, 2]]).solve(&[int(1), int(1)]).unwrap();
        assert_eq!(x, vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn singular_is_reported() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(matches!(a.solve(&[int(1), int(1)]), Err(Error::Singular { .. })));
        let z = RatMatrix::zeros(3, 3);
        assert!(matches!(z.solve(&[int(0), int(0), int(0)]), Err(Error::Singular { column: 0 })));
    }

    #[test]
    fn shape_errors() {
        assert!(RatMatrix::zeros(2, 3).solve(&[int(0), int(0)]).is_err());
        assert!(RatMatrix::identity(2).solve(&[int(0)]).is_err());
        assert!(RatMatrix::from_rows(vec![vec![int(1)], vec![]]).is_err());
    }

    #[test]
    fn random_systems_round_trip() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in [1usize, 3, 8, 22, 30] {
            // Unit lower triangular times upper triangular with nonzero
            // diagonal is invertible; scramble with random rational entries.
            let mut lo = RatMatrix::identity(n);
            let mut up = RatMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    if j < i {
                        lo[(i, j)] = rat(rng.gen_range(-9..=9), rng.gen_range(1..=5));
                    }
                    if j > i {
                        up[(i, j)] = rat(rng.gen_range(-9..=9), rng.gen_range(1..=5));
                    }
                }
                let mut d = 0;
                while d == 0 {
                    d = rng.gen_range(-9..=9);
                }
                up[(i, i)] = rat(d, rng.gen_range(1..=5));
            }
            let mut a = RatMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let mut s = Rational::zero();
                    for k in 0..n {
                        s += &lo[(i, k)] * &up[(k, j)];
                    }
                    a[(i, j)] = s;
                }
            }
            let b: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=7))).collect();
            let x = a.solve(&b).unwrap();
            assert_eq!(a.mul_vec(&x).unwrap(), b, "n = {n}");
        }
    }
}
