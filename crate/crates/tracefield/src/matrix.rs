//! Small dense matrices and vectors over a [`Scalar`].
//!
//! Sizes here are 2..4 for forms and group elements and 9 for the adjoint
//! span checks, so everything is straightforward dense arithmetic. Exact
//! mode gets decided pivoting; float mode pivots by magnitude.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vector<T> {
    pub entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn identity_like(sample: &T, n: usize) -> Self {
        Matrix::from_fn(n, |i, j| {
            if i == j {
                sample.one_like()
            } else {
                sample.zero_like()
            }
        })
    }

    pub fn zero_like(sample: &T, n: usize) -> Self {
        Matrix::from_fn(n, |_, _| sample.zero_like())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn sample(&self) -> &T {
        &self.data[0]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j).clone()).collect())
            .collect()
    }

    pub fn flatten(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|v| f(v)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let n = self.n;
        Matrix::from_fn(n, |i, j| {
            let mut acc = self.data[0].zero_like();
            for k in 0..n {
                acc = acc.add(&self.at(i, k).mul(o.at(k, j)));
            }
            acc
        })
    }

    pub fn apply(&self, v: &Vector<T>) -> Vector<T> {
        assert_eq!(self.n, v.entries.len());
        Vector {
            entries: (0..self.n)
                .map(|i| {
                    let mut acc = self.data[0].zero_like();
                    for k in 0..self.n {
                        acc = acc.add(&self.at(i, k).mul(&v.entries[k]));
                    }
                    acc
                })
                .collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self.at(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self.at(j, i).conj())
    }

    pub fn conj_entries(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn trace(&self) -> T {
        let mut acc = self.data[0].zero_like();
        for i in 0..self.n {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    pub fn det(&self) -> T {
        let n = self.n;
        let mut m = self.data.clone();
        let mut det = self.data[0].one_like();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| {
                    m[a * n + col]
                        .pivot_weight()
                        .partial_cmp(&m[b * n + col].pivot_weight())
                        .unwrap()
                })
                .unwrap();
            if m[pivot * n + col].is_zero() {
                return self.data[0].zero_like();
            }
            if pivot != col {
                for j in 0..n {
                    m.swap(col * n + j, pivot * n + j);
                }
                det = det.neg();
            }
            let p = m[col * n + col].clone();
            det = det.mul(&p);
            let pinv = p.inv().expect("nonzero pivot");
            for i in col + 1..n {
                let f = m[i * n + col].mul(&pinv);
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = f.mul(&m[col * n + j]);
                    m[i * n + j] = m[i * n + j].sub(&delta);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut m = self.data.clone();
        let mut inv = Matrix::identity_like(&self.data[0], n).data;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| {
                    m[a * n + col]
                        .pivot_weight()
                        .partial_cmp(&m[b * n + col].pivot_weight())
                        .unwrap()
                })
                .unwrap();
            if m[pivot * n + col].is_zero() {
                return Err(Error::SingularTransform);
            }
            if pivot != col {
                for j in 0..n {
                    m.swap(col * n + j, pivot * n + j);
                    inv.swap(col * n + j, pivot * n + j);
                }
            }
            let pinv = m[col * n + col].inv()?;
            for j in 0..n {
                m[col * n + j] = m[col * n + j].mul(&pinv);
                inv[col * n + j] = inv[col * n + j].mul(&pinv);
            }
            for i in 0..n {
                if i == col || m[i * n + col].is_zero() {
                    continue;
                }
                let f = m[i * n + col].clone();
                for j in 0..n {
                    let dm = f.mul(&m[col * n + j]);
                    m[i * n + j] = m[i * n + j].sub(&dm);
                    let di = f.mul(&inv[col * n + j]);
                    inv[i * n + j] = inv[i * n + j].sub(&di);
                }
            }
        }
        Ok(Matrix { n, data: inv })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Matrix::identity_like(&self.data[0], self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.data.iter().all(|v| v.is_small(tol))
    }

    pub fn approx(&self) -> Matrix<Complex64> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|v| v.approx()).collect(),
        }
    }

    /// Largest float magnitude of an entry; exact matrices report 1.0
    /// (their comparisons are tolerance-free, and evaluating certified
    /// embeddings just to scale a zero tolerance would be pure waste).
    pub fn max_norm(&self) -> f64 {
        if T::EXACT {
            return 1.0;
        }
        self.data
            .iter()
            .map(|v| v.approx().norm())
            .fold(0.0, f64::max)
    }
}

impl<T: Scalar> Vector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Vector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn at(&self, i: usize) -> &T {
        &self.entries[i]
    }

    pub fn scale(&self, c: &T) -> Self {
        Vector {
            entries: self.entries.iter().map(|v| v.mul(c)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Vector {
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Vector {
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Vector {
            entries: self.entries.iter().map(|v| v.neg()).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Vector {
            entries: self.entries.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| v.is_zero())
    }

    pub fn approx(&self) -> Vec<Complex64> {
        self.entries.iter().map(|v| v.approx()).collect()
    }

    /// Bilinear cross product in dimension 3 (no conjugation).
    pub fn cross(&self, o: &Self) -> Self {
        assert_eq!(self.len(), 3);
        let (a, b) = (&self.entries, &o.entries);
        Vector {
            entries: vec![
                a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
                a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
                a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
            ],
        }
    }

    /// Projectively equal: v = c w for some nonzero scalar c (float: tol).
    pub fn projectively_equal(&self, o: &Self, tol: f64) -> bool {
        // all 2x2 minors vanish
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                let m = self.entries[i]
                    .mul(&o.entries[j])
                    .sub(&self.entries[j].mul(&o.entries[i]));
                let scale = self.entries[i].approx().norm().max(1.0)
                    * o.entries[j].approx().norm().max(1.0);
                if !m.is_small(tol * scale) {
                    return false;
                }
            }
        }
        !self.is_zero() && !o.is_zero()
    }
}

/// Greedy maximal independent subset of flattened matrices, viewed as
/// vectors over the scalar field. Returns the indices kept and the rank.
/// Exact scalars eliminate exactly; float uses the tolerance relative to
/// the largest eliminated magnitude.
pub fn greedy_span<T: Scalar>(vectors: &[Vec<T>], tol: f64) -> (Vec<usize>, usize) {
    if vectors.is_empty() {
        return (vec![], 0);
    }
    let dim = vectors[0].len();
    let mut basis: Vec<Vec<T>> = vec![]; // reduced rows
    let mut pivots: Vec<usize> = vec![];
    let mut kept = vec![];
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        let scale0 = if T::EXACT {
            1.0
        } else {
            w.iter().map(|x| x.approx().norm()).fold(0.0, f64::max)
        };
        for (row, &p) in basis.iter().zip(&pivots) {
            let f = w[p].div(&row[p]).expect("pivot nonzero");
            if f.is_zero() {
                continue;
            }
            for j in 0..dim {
                let delta = f.mul(&row[j]);
                w[j] = w[j].sub(&delta);
            }
        }
        let pivot = (0..dim).max_by(|&a, &b| {
            w[a].pivot_weight()
                .partial_cmp(&w[b].pivot_weight())
                .unwrap()
        });
        if let Some(p) = pivot {
            let threshold = if T::EXACT { 0.0 } else { tol * scale0.max(1.0) };
            let nonzero = if T::EXACT {
                !w[p].is_zero()
            } else {
                w[p].approx().norm() > threshold
            };
            if nonzero {
                basis.push(w);
                pivots.push(p);
                kept.push(idx);
                if basis.len() == dim {
                    break;
                }
            }
        }
    }
    let rank = kept.len();
    (kept, rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::NumberField;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn float_matrix_algebra() {
        let m = Matrix::from_rows(vec![
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(3.0, 0.0), c(4.0, 0.0)],
        ]);
        assert!((m.det() - c(-2.0, 0.0)).norm() < 1e-12);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).sub(&Matrix::identity_like(&c(0.0, 0.0), 2)).is_zero_within(1e-12));
        let p = m.pow(-2).unwrap();
        let q = inv.mul(&inv);
        assert!(p.sub(&q).is_zero_within(1e-12));
    }

    #[test]
    fn exact_matrix_inverse() {
        let f = NumberField::gaussian();
        let i = f.generator();
        let m = Matrix::from_rows(vec![
            vec![f.from_i64(1), i.clone()],
            vec![f.from_i64(0), f.from_i64(1)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(*inv.at(0, 1), i.neg());
        assert_eq!(m.det(), f.from_i64(1));
    }

    #[test]
    fn greedy_span_ranks() {
        let rows = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(2.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ];
        let (kept, rank) = greedy_span(&rows, 1e-9);
        assert_eq!(rank, 2);
        assert_eq!(kept, vec![0, 2]);
    }

    #[test]
    fn projective_equality() {
        let v = Vector::new(vec![c(1.0, 0.0), c(2.0, 1.0), c(0.0, 0.0)]);
        let w = v.scale(&c(0.0, 3.0));
        assert!(v.projectively_equal(&w, 1e-12));
        let u = Vector::new(vec![c(1.0, 0.0), c(2.0, 1.1), c(0.0, 0.0)]);
        assert!(!v.projectively_equal(&u, 1e-9));
    }
}
