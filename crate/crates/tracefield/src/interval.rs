//! Certified complex interval arithmetic over exact rational endpoints.
//!
//! Boxes (rectangles with rational corners) support ring operations with
//! exact outward semantics: every operation returns a box containing the
//! image set, computed with exact rational arithmetic, so enclosures are
//! certificates rather than estimates. A Krawczyk operator certifies and
//! refines isolating boxes for simple roots of rational polynomials.

use num_traits::{One, Signed, Zero};

use crate::poly::Poly;
use crate::rational::{dyadic_round, rational_to_f64, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn add(&self, o: &Self) -> Self {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        RatInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Self {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        RatInterval::new(lo, hi)
    }

    pub fn intersect(&self, o: &Self) -> Option<Self> {
        let lo = if self.lo > o.lo { self.lo.clone() } else { o.lo.clone() };
        let hi = if self.hi < o.hi { self.hi.clone() } else { o.hi.clone() };
        if lo <= hi {
            Some(RatInterval::new(lo, hi))
        } else {
            None
        }
    }

    pub fn strictly_inside(&self, outer: &Self) -> bool {
        self.lo > outer.lo && self.hi < outer.hi
    }

    /// Outward rounding onto the dyadic grid 2^-bits.
    pub fn round_out(&self, bits: u32) -> Self {
        RatInterval::new(
            dyadic_round(&self.lo, bits, false),
            dyadic_round(&self.hi, bits, true),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexBox {
    pub re: RatInterval,
    pub im: RatInterval,
}

impl ComplexBox {
    pub fn new(re: RatInterval, im: RatInterval) -> Self {
        ComplexBox { re, im }
    }

    pub fn point(re: Rational, im: Rational) -> Self {
        ComplexBox::new(RatInterval::point(re), RatInterval::point(im))
    }

    pub fn centered(re: &Rational, im: &Rational, half_width: &Rational) -> Self {
        ComplexBox::new(
            RatInterval::new(re - half_width, re + half_width),
            RatInterval::new(im - half_width, im + half_width),
        )
    }

    pub fn width(&self) -> Rational {
        let wr = self.re.width();
        let wi = self.im.width();
        if wr > wi {
            wr
        } else {
            wi
        }
    }

    pub fn midpoint(&self) -> (Rational, Rational) {
        (self.re.midpoint(), self.im.midpoint())
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexBox::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexBox::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> Self {
        ComplexBox::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        ComplexBox::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        ComplexBox::new(re, im)
    }

    pub fn intersect(&self, o: &Self) -> Option<Self> {
        Some(ComplexBox::new(
            self.re.intersect(&o.re)?,
            self.im.intersect(&o.im)?,
        ))
    }

    pub fn strictly_inside(&self, outer: &Self) -> bool {
        self.re.strictly_inside(&outer.re) && self.im.strictly_inside(&outer.im)
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.intersect(o).is_some()
    }

    pub fn round_out(&self, bits: u32) -> Self {
        ComplexBox::new(self.re.round_out(bits), self.im.round_out(bits))
    }

    pub fn approx(&self) -> num_complex::Complex64 {
        let (r, i) = self.midpoint();
        num_complex::Complex64::new(rational_to_f64(&r), rational_to_f64(&i))
    }

    pub fn contains_point(&self, re: &Rational, im: &Rational) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }
}

/// Interval Horner evaluation of a rational polynomial on a box.
pub fn eval_poly_box(p: &Poly, x: &ComplexBox) -> ComplexBox {
    let mut acc = ComplexBox::point(Rational::zero(), Rational::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&ComplexBox::point(c.clone(), Rational::zero()));
    }
    acc
}

/// One Krawczyk step: K(X) = m - y p(m) + (1 - y p'(X)) (X - m),
/// with m the exact rational midpoint and y the exact inverse of p'(m).
fn krawczyk_step(p: &Poly, dp: &Poly, x: &ComplexBox) -> Option<ComplexBox> {
    let (mr, mi) = x.midpoint();
    let (pr, pi) = p.eval_complex_rational(&mr, &mi);
    let (dr, di) = dp.eval_complex_rational(&mr, &mi);
    let denom = &dr * &dr + &di * &di;
    if denom.is_zero() {
        return None;
    }
    // y = 1 / p'(m), exact complex rational
    let yr = &dr / &denom;
    let yi = -&di / &denom;
    let y = ComplexBox::point(yr.clone(), yi.clone());
    let m = ComplexBox::point(mr.clone(), mi.clone());
    let ypm = y.mul(&ComplexBox::point(pr, pi));
    let dpx = eval_poly_box(dp, x);
    let one = ComplexBox::point(Rational::one(), Rational::zero());
    let factor = one.sub(&y.mul(&dpx));
    let k = m.sub(&ypm).add(&factor.mul(&x.sub(&ComplexBox::point(mr, mi))));
    Some(k)
}

/// Certifies that `start` (or a slight enlargement of it) isolates exactly
/// one simple root of `p`. Returns a certified isolating box.
pub fn certify_root(p: &Poly, center: (Rational, Rational), half_width: Rational) -> Option<ComplexBox> {
    let dp = p.derivative();
    let mut hw = half_width;
    for _ in 0..12 {
        let x = ComplexBox::centered(&center.0, &center.1, &hw);
        if let Some(k) = krawczyk_step(p, &dp, &x) {
            if k.strictly_inside(&x) {
                return k.intersect(&x);
            }
        }
        hw = hw * Rational::new(3.into(), 1.into());
    }
    None
}

/// Contracts a certified isolating box until its width is at most 2^-bits.
pub fn refine_root(p: &Poly, mut x: ComplexBox, bits: u32) -> ComplexBox {
    let dp = p.derivative();
    let target = Rational::new(1.into(), num_bigint::BigInt::one() << bits);
    let round_bits = bits + 24;
    for _ in 0..200 {
        if x.width() <= target {
            break;
        }
        match krawczyk_step(p, &dp, &x) {
            Some(k) => match k.intersect(&x) {
                Some(next) => {
                    let next = next.round_out(round_bits);
                    if next.width() >= x.width() {
                        break;
                    }
                    x = next;
                }
                None => break,
            },
            None => break,
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i64};

    fn poly(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| rat_i64(c)).collect())
    }

    #[test]
    fn certify_and_refine_sqrt3i() {
        // x^2 + 3, root near 1.732 i
        let p = poly(&[3, 0, 1]);
        let b = certify_root(&p, (rat_i64(0), rat(17, 10)), rat(1, 8)).expect("certify");
        assert!(b.im.lo > rat_i64(1) && b.im.hi < rat_i64(2));
        let b = refine_root(&p, b, 60);
        let target = Rational::new(1.into(), num_bigint::BigInt::one() << 60u32);
        assert!(b.width() <= target);
        // certified: 3 + (box)^2 contains 0
        let img = eval_poly_box(&p, &b);
        assert!(img.re.contains_zero() && img.im.contains_zero());
    }

    #[test]
    fn box_multiplication_encloses() {
        let a = ComplexBox::centered(&rat_i64(2), &rat_i64(-1), &rat(1, 100));
        let b = ComplexBox::centered(&rat_i64(3), &rat_i64(5), &rat(1, 100));
        let prod = a.mul(&b);
        // (2 - i)(3 + 5i) = 11 + 7i
        assert!(prod.contains_point(&rat_i64(11), &rat_i64(7)));
    }

    #[test]
    fn reject_ambiguous_double_root_region() {
        // x^2 - 2: a huge box around 0 holding both roots never certifies
        let p = poly(&[-2, 0, 1]);
        let dp = p.derivative();
        let x = ComplexBox::centered(&rat_i64(0), &rat_i64(0), &rat_i64(3));
        if let Some(k) = krawczyk_step(&p, &dp, &x) {
            assert!(!k.strictly_inside(&x));
        }
    }
}
