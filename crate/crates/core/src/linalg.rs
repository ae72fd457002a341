//! Dense linear algebra over a [`Field`] (row reduction) and determinants
//! over any [`Scalar`] (cofactor expansion, for small symbolic matrices).

use std::fmt;

use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(S::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        })
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(S::zero(), |acc, k| acc + self.get(i, k).clone() * v[k].clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + other.get(i, j).clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() - other.get(i, j).clone()
        })
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| k.clone() * self.get(i, j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn determinant(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let idx: Vec<usize> = (0..self.cols).collect();
        self.minor_det(0, &idx)
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> S {
        match cols.len() {
            0 => S::one(),
            1 => self.get(row, cols[0]).clone(),
            _ => {
                let mut acc = S::zero();
                for (k, &c) in cols.iter().enumerate() {
                    let entry = self.get(row, c);
                    if entry.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = entry.clone() * self.minor_det(row + 1, &rest);
                    acc = if k % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    pub fn render(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!("({})", rows.join("; "))
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Reduced row echelon form and its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<S> {
    pub reduced: Matrix<S>,
    pub pivots: Vec<usize>,
}

impl<S: Field> Matrix<S> {
    pub fn echelon(&self) -> Echelon<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // Largest magnitude pivot keeps the float backend stable and is
            // harmless for exact scalars.
            let best = (r..m.rows)
                .filter(|&i| !m.get(i, c).is_zero())
                .max_by(|&i, &j| {
                    let a = m.get(i, c).to_f64().map_or(0.0, f64::abs);
                    let b = m.get(j, c).to_f64().map_or(0.0, f64::abs);
                    a.total_cmp(&b).then(j.cmp(&i))
                });
            let Some(p) = best else { continue };
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, p * m.cols + j);
            }
            let inv = S::one() / m.get(r, c).clone();
            for j in 0..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let Echelon { reduced, pivots } = self.echelon();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![S::zero(); self.cols];
                v[free] = S::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(row, free).clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self · x = rhs`, if one exists.
    pub fn solve(&self, rhs: &[S]) -> Option<Vec<S>> {
        assert_eq!(rhs.len(), self.rows, "dimension mismatch");
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs[i].clone()
            }
        });
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(row, self.cols).clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational, RelationIdeal};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&ker[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = q(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.solve(&[int(3), int(1)]), Some(vec![int(2), int(1)]));
        let s = q(&[&[1, 1], &[2, 2]]);
        assert_eq!(s.solve(&[int(1), int(3)]), None);
    }

    #[test]
    fn determinants() {
        let m = q(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(m.determinant(), int(6));
        let ring = RelationIdeal::free("det", &["x", "y"]);
        let (x, y) = (ring.generator(0), ring.generator(1));
        let s = Matrix::from_rows(vec![vec![x.clone(), y.clone()], vec![-y.clone(), x.clone()]]);
        assert_eq!(s.determinant(), x.square() + y.square());
    }

    #[test]
    fn float_rank_tolerates_noise() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0 + 1e-13]]);
        assert_eq!(m.rank(), 1);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..4, 12)) {
            let m = Matrix::from_fn(3, 4, |i, j| rat(entries[i * 4 + j], 1));
            let ker = m.nullspace();
            prop_assert_eq!(m.rank() + ker.len(), 4);
            for v in &ker {
                prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
            }
        }
    }
}
