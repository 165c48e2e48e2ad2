//! The scalar abstraction shared by exact and float mode.
//!
//! Geometry and group-theory code is generic over [`Scalar`]; the two
//! implementations are [`FieldElement`] (exact) and `Complex64` (float).
//! Tolerance-taking predicates let one generic code path serve both modes:
//! exact scalars ignore the tolerance and answer exactly.

use num_complex::Complex64;
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, Sign};
use crate::rational::{rational_to_f64, Rational};

pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, r: &Rational) -> Self;
    fn from_i64_like(&self, n: i64) -> Self {
        self.from_rational_like(&Rational::from_integer(n.into()))
    }

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn conj(&self) -> Self;

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    fn is_zero(&self) -> bool;

    /// Exact mode: is exactly zero. Float mode: |x| <= tol.
    fn is_small(&self, tol: f64) -> bool;

    /// Exact mode: exact equality. Float mode: |x - y| <= tol.
    fn eq_approx(&self, o: &Self, tol: f64) -> bool {
        self.sub(o).is_small(tol)
    }

    /// Fixed by conjugation (float: up to tol).
    fn is_real(&self, tol: f64) -> bool {
        self.sub(&self.conj()).is_small(tol)
    }

    /// Numeric value of the canonical embedding.
    fn approx(&self) -> Complex64;

    /// Sign of a real scalar; exact mode certifies by interval refinement.
    /// Callers must have established realness first.
    fn sign_real(&self, tol: f64) -> Result<Ordering>;

    /// |x|^2 = x conj(x), a real scalar.
    fn abs_sq(&self) -> Self {
        self.mul(&self.conj())
    }

    /// Pivot preference for elimination: float magnitude, or 1/0 exactness.
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.approx().norm().max(f64::MIN_POSITIVE)
        }
    }

    /// The three cube roots, when representable in this scalar type.
    /// Float mode always succeeds; exact mode only for rational perfect
    /// cubes (the general cube root leaves the field).
    fn cube_roots(&self) -> Option<[Self; 3]>;

    /// Injects a complex double, when this scalar type can hold one
    /// (float mode only; exact scalars refuse approximate data).
    fn from_c64_like(&self, c: Complex64) -> Option<Self>;

    const EXACT: bool;
}

impl Scalar for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if self.norm() == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Complex64::new(1.0, 0.0) / self)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn is_small(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn approx(&self) -> Complex64 {
        *self
    }
    fn sign_real(&self, tol: f64) -> Result<Ordering> {
        if self.re.abs() <= tol {
            Ok(Ordering::Equal)
        } else if self.re > 0.0 {
            Ok(Ordering::Greater)
        } else {
            Ok(Ordering::Less)
        }
    }
    fn cube_roots(&self) -> Option<[Self; 3]> {
        let r = self.norm().cbrt();
        let theta = self.arg() / 3.0;
        let w = 2.0 * std::f64::consts::PI / 3.0;
        Some([
            Complex64::from_polar(r, theta),
            Complex64::from_polar(r, theta + w),
            Complex64::from_polar(r, theta + 2.0 * w),
        ])
    }
    fn from_c64_like(&self, c: Complex64) -> Option<Self> {
        Some(c)
    }
    const EXACT: bool = false;
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        self.field().from_i64(0)
    }
    fn one_like(&self) -> Self {
        self.field().from_i64(1)
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        self.field().from_rational(r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        FieldElement::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FieldElement::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FieldElement::mul(self, o)
    }
    fn neg(&self) -> Self {
        FieldElement::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        FieldElement::inv(self)
    }
    fn conj(&self) -> Self {
        FieldElement::conj(self)
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn is_small(&self, _tol: f64) -> bool {
        FieldElement::is_zero(self)
    }
    fn is_real(&self, _tol: f64) -> bool {
        FieldElement::is_real(self)
    }
    fn approx(&self) -> Complex64 {
        FieldElement::approx(self)
    }
    fn sign_real(&self, _tol: f64) -> Result<Ordering> {
        match FieldElement::sign_real(self)? {
            Sign::Negative => Ok(Ordering::Less),
            Sign::Zero => Ok(Ordering::Equal),
            Sign::Positive => Ok(Ordering::Greater),
        }
    }
    fn pivot_weight(&self) -> f64 {
        // exact elimination only needs nonzero pivots; avoid the certified
        // embedding that the default weight would compute
        if FieldElement::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
    fn cube_roots(&self) -> Option<[Self; 3]> {
        // in-field cube roots exist in general only after a field extension;
        // the rational perfect-cube case is the one needed downstream
        let r = self.as_rational()?;
        let num = nth_root_exact(r.numer(), 3)?;
        let den = nth_root_exact(r.denom(), 3)?;
        let root = self.from_rational_like(&Rational::new(num, den));
        let omega = self.field().omega()?;
        let omega2 = omega.mul(&omega);
        Some([root.clone(), root.mul(&omega), root.mul(&omega2)])
    }
    fn from_c64_like(&self, _c: Complex64) -> Option<Self> {
        None
    }
    const EXACT: bool = true;
}

fn nth_root_exact(n: &num_bigint::BigInt, k: u32) -> Option<num_bigint::BigInt> {
    use num_traits::Signed;
    let neg = n.is_negative();
    let a = n.abs();
    let r = a.nth_root(k);
    if num_traits::pow::pow(r.clone(), k as usize) != a {
        return None;
    }
    Some(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::NumberField;
    use crate::rational::rat;

    #[test]
    fn float_scalar_basics() {
        let z = Complex64::new(3.0, 4.0);
        assert!(z.abs_sq().eq_approx(&Complex64::new(25.0, 0.0), 1e-12));
        let zinv = Scalar::inv(&z).unwrap();
        assert!(z.mul(&zinv).eq_approx(&z.one_like(), 1e-12));
        let roots = Complex64::new(8.0, 0.0).cube_roots().unwrap();
        for r in roots {
            assert!((r * r * r - Complex64::new(8.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn exact_scalar_through_trait() {
        let f = NumberField::gaussian();
        let i = f.generator();
        assert!(Scalar::is_real(&i.mul(&i), 0.0));
        assert_eq!(
            Scalar::sign_real(&i.abs_sq(), 0.0).unwrap(),
            Ordering::Greater
        );
        let half = f.from_rational(rat(1, 2));
        assert_eq!(half.add(&half), f.from_i64(1));
        assert!(FieldElement::cube_roots(&f.from_i64(8)).is_none()); // no omega in Q(i)
    }
}
