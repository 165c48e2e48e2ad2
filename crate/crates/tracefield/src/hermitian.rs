//! Hermitian forms of signature (n,1), the Siegel and ball models of
//! complex hyperbolic space, inner products, polar vectors, distance and
//! horospherical coordinates.
//!
//! The inner product convention is `<z,w> = w* H z`: linear in the first
//! variable, antilinear in the second. The default form is the antidiagonal
//! Siegel form J, in which `<z,w> = z1 conj(w3) + z2 conj(w2) + z3 conj(w1)`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointType {
    Positive,
    Null,
    Negative,
}

/// A Hermitian matrix with its validated size; signature is computed on
/// demand by exact congruence reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianForm<T> {
    matrix: Matrix<T>,
}

impl<T: Scalar> HermitianForm<T> {
    pub fn new(matrix: Matrix<T>, tol: f64) -> Result<Self> {
        let diff = matrix.sub(&matrix.conj_transpose());
        if !diff.is_zero_within(tol * matrix.max_norm().max(1.0)) {
            return Err(Error::schema("", "matrix is not Hermitian"));
        }
        Ok(HermitianForm { matrix })
    }

    /// The Siegel form J (antidiagonal ones) in dimension 3.
    pub fn siegel(sample: &T) -> Self {
        let o = sample.zero_like();
        let l = sample.one_like();
        HermitianForm {
            matrix: Matrix::from_rows(vec![
                vec![o.clone(), o.clone(), l.clone()],
                vec![o.clone(), l.clone(), o.clone()],
                vec![l, o.clone(), o],
            ]),
        }
    }

    /// The ball form diag(1, 1, -1).
    pub fn ball(sample: &T) -> Self {
        HermitianForm {
            matrix: Matrix::from_fn(3, |i, j| {
                if i != j {
                    sample.zero_like()
                } else if i == 2 {
                    sample.one_like().neg()
                } else {
                    sample.one_like()
                }
            }),
        }
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        HermitianForm {
            matrix: Matrix::from_fn(n, |i, j| {
                if i == j {
                    entries[i].clone()
                } else {
                    entries[0].zero_like()
                }
            }),
        }
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// <z,w> = w* H z.
    pub fn inner(&self, z: &Vector<T>, w: &Vector<T>) -> T {
        let n = self.n();
        assert!(z.len() == n && w.len() == n, "dimension mismatch");
        let mut acc = self.matrix.sample().zero_like();
        for k in 0..n {
            let wk = w.at(k).conj();
            for l in 0..n {
                if self.matrix.at(k, l).is_zero() {
                    continue;
                }
                acc = acc.add(&wk.mul(&self.matrix.at(k, l).mul(z.at(l))));
            }
        }
        acc
    }

    /// Sign of <v,v>, which is always real.
    pub fn point_type(&self, v: &Vector<T>, tol: f64) -> Result<PointType> {
        assert!(!v.is_zero(), "point type of the zero vector");
        let q = self.inner(v, v);
        let scale = if T::EXACT {
            1.0
        } else {
            v.approx().iter().map(|c| c.norm_sqr()).sum::<f64>().max(1.0)
        };
        match q.sign_real(tol * scale)? {
            Ordering::Greater => Ok(PointType::Positive),
            Ordering::Equal => Ok(PointType::Null),
            Ordering::Less => Ok(PointType::Negative),
        }
    }

    /// Signature (p, q) by congruence diagonalization. Exact scalars decide
    /// every sign; a zero diagonal block means the form is degenerate.
    pub fn signature(&self, tol: f64) -> Result<(usize, usize)> {
        let n = self.n();
        let mut h = self.matrix.clone();
        let scale = h.max_norm().max(1.0);
        let mut pos = 0usize;
        let mut neg = 0usize;
        let mut start = 0usize;
        while start < n {
            // find a usable diagonal entry
            let mut pivot: Option<usize> = None;
            for i in start..n {
                if !is_negligible(h.at(i, i), tol, scale) {
                    pivot = Some(i);
                    break;
                }
            }
            if pivot.is_none() {
                // all remaining diagonal entries vanish; create one from an
                // off-diagonal entry via v = e_i + conj(H_ij) e_j
                let mut offdiag: Option<(usize, usize)> = None;
                'search: for i in start..n {
                    for j in start..n {
                        if i != j && !is_negligible(h.at(i, j), tol, scale) {
                            offdiag = Some((i, j));
                            break 'search;
                        }
                    }
                }
                match offdiag {
                    None => {
                        // the remaining block is zero
                        return Err(Error::DegenerateForm);
                    }
                    Some((i, j)) => {
                        let c = h.at(i, j).conj();
                        // row_i += conj(c) row_j ; col_i += c col_j
                        for k in 0..n {
                            let add = c.conj().mul(h.at(j, k));
                            let v = h.at(i, k).add(&add);
                            h.set(i, k, v);
                        }
                        for k in 0..n {
                            let add = h.at(k, j).mul(&c);
                            let v = h.at(k, i).add(&add);
                            h.set(k, i, v);
                        }
                        pivot = Some(i);
                    }
                }
            }
            let p = pivot.unwrap();
            if p != start {
                // symmetric swap
                for k in 0..n {
                    let a = h.at(p, k).clone();
                    let b = h.at(start, k).clone();
                    h.set(p, k, b);
                    h.set(start, k, a);
                }
                for k in 0..n {
                    let a = h.at(k, p).clone();
                    let b = h.at(k, start).clone();
                    h.set(k, p, b);
                    h.set(k, start, a);
                }
            }
            let d = h.at(start, start).clone();
            match d.sign_real(tol * scale)? {
                Ordering::Greater => pos += 1,
                Ordering::Less => neg += 1,
                Ordering::Equal => return Err(Error::DegenerateForm),
            }
            let dinv = d.inv()?;
            // eliminate row/column `start`
            for i in start + 1..n {
                let f = h.at(i, start).mul(&dinv);
                if f.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let delta = f.mul(h.at(start, k));
                    let v = h.at(i, k).sub(&delta);
                    h.set(i, k, v);
                }
                for k in 0..n {
                    let delta = h.at(k, start).mul(&f.conj());
                    let v = h.at(k, i).sub(&delta);
                    h.set(k, i, v);
                }
            }
            start += 1;
        }
        Ok((pos, neg))
    }

    /// Hyperbolic distance between two negative-type points, from
    /// cosh^2(d/2) = <q1,q2><q2,q1> / (<q1,q1><q2,q2>).
    pub fn distance(&self, q1: &Vector<T>, q2: &Vector<T>, tol: f64) -> Result<f64> {
        if self.point_type(q1, tol)? != PointType::Negative
            || self.point_type(q2, tol)? != PointType::Negative
        {
            return Err(Error::NotInteriorPoint);
        }
        let num = self.inner(q1, q2).mul(&self.inner(q2, q1));
        let den = self.inner(q1, q1).mul(&self.inner(q2, q2));
        let r = num.div(&den)?.approx().re;
        Ok(2.0 * r.max(1.0).sqrt().acosh())
    }

    /// Polar vector of the complex line through two non-proportional points:
    /// the (unique up to scale) vector orthogonal to both. In exact mode the
    /// result is normalized to have last nonzero coordinate 1.
    pub fn polar_vector(&self, p: &Vector<T>, q: &Vector<T>, tol: f64) -> Result<Vector<T>> {
        assert_eq!(self.n(), 3, "polar vectors are defined in dimension 3");
        let hp = mat_vec(&self.matrix, p).conj();
        let hq = mat_vec(&self.matrix, q).conj();
        let mut c = hp.cross(&hq);
        let scale = if T::EXACT {
            1.0
        } else {
            p.approx().iter().chain(q.approx().iter()).map(|v| v.norm()).fold(1.0, f64::max)
        };
        if c.entries.iter().all(|v| v.is_small(tol * scale)) {
            return Err(Error::ProportionalPoints);
        }
        if T::EXACT {
            let last = c.entries.iter().rposition(|v| !v.is_zero()).unwrap();
            let inv = c.entries[last].inv()?;
            c = c.scale(&inv);
        }
        Ok(c)
    }

    /// M* H M = H and det M = 1.
    pub fn is_special_unitary(&self, m: &Matrix<T>, tol: f64) -> bool {
        self.is_unitary(m, tol) && {
            let det = m.det();
            det.sub(&det.one_like()).is_small(tol * 10.0)
        }
    }

    /// M* H M = H.
    pub fn is_unitary(&self, m: &Matrix<T>, tol: f64) -> bool {
        let lhs = m.conj_transpose().mul(&self.matrix).mul(m);
        let scale = self.matrix.max_norm().max(1.0) * m.max_norm().max(1.0).powi(2);
        lhs.sub(&self.matrix).is_zero_within(tol * scale)
    }

    /// M* H M = c H for a positive real c; returns c.
    pub fn similitude_factor(&self, m: &Matrix<T>, tol: f64) -> Option<T> {
        let lhs = m.conj_transpose().mul(&self.matrix).mul(m);
        // find a nonzero reference entry of H
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                if !self.matrix.at(i, j).is_zero() {
                    let c = lhs.at(i, j).div(self.matrix.at(i, j)).ok()?;
                    let scaled = self.matrix.scale(&c);
                    let scale = lhs.max_norm().max(1.0);
                    if lhs.sub(&scaled).is_zero_within(tol * scale)
                        && c.is_real(tol)
                        && c.sign_real(tol).ok()? == Ordering::Greater
                    {
                        return Some(c);
                    }
                    return None;
                }
            }
        }
        None
    }

    /// Transported form C*^-1 H C^-1, the form preserved by C M C^-1 when
    /// M preserves H.
    pub fn transport(&self, c: &Matrix<T>) -> Result<HermitianForm<T>> {
        let cinv = c.inverse()?;
        Ok(HermitianForm {
            matrix: cinv.conj_transpose().mul(&self.matrix).mul(&cinv),
        })
    }
}

fn mat_vec<T: Scalar>(m: &Matrix<T>, v: &Vector<T>) -> Vector<T> {
    m.apply(v)
}

fn is_negligible<T: Scalar>(v: &T, tol: f64, scale: f64) -> bool {
    v.is_small(tol * scale)
}

/// C M C^-1.
pub fn cayley_conjugate<T: Scalar>(m: &Matrix<T>, c: &Matrix<T>) -> Result<Matrix<T>> {
    let cinv = c.inverse().map_err(|_| Error::SingularTransform)?;
    Ok(c.mul(m).mul(&cinv))
}

/// The Cayley matrix between the ball and Siegel models:
/// C* diag(1,1,-1) C = 2J where C = [[1,0,1],[0,1+i,0],[1,0,-1]].
/// Requires the imaginary unit of the scalar type; for a matrix M that is
/// unitary for the ball form, C^-1 M C is unitary for J.
pub fn cayley_ball_to_siegel<T: Scalar>(i_unit: &T) -> Result<Matrix<T>> {
    let sq = i_unit.mul(i_unit);
    if !sq.add(&i_unit.one_like()).is_small(1e-12) {
        return Err(Error::schema("", "provided element does not square to -1"));
    }
    let o = i_unit.zero_like();
    let l = i_unit.one_like();
    Ok(Matrix::from_rows(vec![
        vec![l.clone(), o.clone(), l.clone()],
        vec![o.clone(), l.add(i_unit), o.clone()],
        vec![l.clone(), o.clone(), l.neg()],
    ]))
}

/// A point of the boundary of the Siegel domain: infinity, or the
/// horospherical pair (z, t) stored as (z, it) with it purely imaginary.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryPoint<T> {
    Infinity,
    Finite { z: T, it: T },
}

impl<T: Scalar> BoundaryPoint<T> {
    pub fn origin(sample: &T) -> Self {
        BoundaryPoint::Finite {
            z: sample.zero_like(),
            it: sample.zero_like(),
        }
    }

    pub fn finite(z: T, it: T, tol: f64) -> Result<Self> {
        if !it.add(&it.conj()).is_small(tol) {
            return Err(Error::schema("", "it must be purely imaginary"));
        }
        Ok(BoundaryPoint::Finite { z, it })
    }

    /// The standard null lift: infinity -> (1,0,0),
    /// (z,t) -> ( -(|z|^2 - it)/2, z, 1 ).
    pub fn lift(&self, sample: &T) -> Vector<T> {
        match self {
            BoundaryPoint::Infinity => Vector::new(vec![
                sample.one_like(),
                sample.zero_like(),
                sample.zero_like(),
            ]),
            BoundaryPoint::Finite { z, it } => {
                let half = sample.from_rational_like(&crate::rational::rat(1, 2));
                let first = it.sub(&z.abs_sq()).mul(&half);
                Vector::new(vec![first, z.clone(), sample.one_like()])
            }
        }
    }

    /// Reads a boundary point off a null vector; errors when the vector is
    /// not null for J (checked via the purely-imaginary condition on it).
    pub fn from_lift(v: &Vector<T>, tol: f64) -> Result<Self> {
        assert_eq!(v.len(), 3);
        let scale = if T::EXACT {
            1.0
        } else {
            v.approx().iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0)
        };
        if v.at(2).is_small(tol * scale) {
            if !v.at(1).is_small((tol * scale).sqrt() * 10.0) {
                return Err(Error::schema("", "vector is not a null lift"));
            }
            return Ok(BoundaryPoint::Infinity);
        }
        let inv = v.at(2).inv()?;
        let x = v.at(0).mul(&inv);
        let z = v.at(1).mul(&inv);
        // x = (it - |z|^2)/2  =>  it = 2x + |z|^2
        let two = v.at(2).from_i64_like(2);
        let it = two.mul(&x).add(&z.abs_sq());
        if !it.add(&it.conj()).is_small(tol * scale * 4.0) {
            return Err(Error::schema("", "vector is not a null lift"));
        }
        Ok(BoundaryPoint::Finite { z, it })
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    /// Image under a matrix, as a boundary point.
    pub fn apply(&self, m: &Matrix<T>, tol: f64) -> Result<Self> {
        let v = m.apply(&self.lift(m.sample()));
        BoundaryPoint::from_lift(&v, tol)
    }
}

/// Lift of horospherical coordinates (z, t, u): ( -( |z|^2 + u - it )/2, z, 1 ),
/// with <v,v>_J = -u. `it` must be purely imaginary and `u` real nonnegative.
pub fn horospherical_lift<T: Scalar>(z: &T, it: &T, u: &T) -> Vector<T> {
    let half = z.from_rational_like(&crate::rational::rat(1, 2));
    let first = it.sub(&z.abs_sq()).sub(u).mul(&half);
    Vector::new(vec![first, z.clone(), z.one_like()])
}
