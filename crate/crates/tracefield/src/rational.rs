//! Arbitrary-precision rationals and a handful of parsing/formatting helpers.
//!
//! `Rational` is `num_rational::BigRational`, which keeps gcd(num, den) = 1
//! and den > 0 as internal invariants. All exact-mode wire formats print
//! rationals as `"p/q"` strings (or `"p"` when q = 1), never as floats.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"`, or a decimal like `"-1.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::schema("", format!("cannot parse rational from {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::schema("", "zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let i: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let abs = Rational::new(i.abs() * &scale + f, scale);
        return Ok(if neg { -abs } else { abs });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Falls back to a quotient of lossy conversions for huge operands.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Exact conversion; every finite f64 is a dyadic rational.
pub fn f64_to_rational(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::schema("", format!("non-finite float {x}")))
}

/// Nearest rational with denominator bounded by `max_den`, by continued
/// fractions. Used to lift numerically solved coefficients back to Q;
/// every use site re-verifies the result exactly afterwards.
pub fn reconstruct_rational(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::from(x.floor() as i64), BigInt::one());
    let mut frac = x - x.floor();
    for _ in 0..64 {
        if q1.to_u64().map(|q| q > max_den).unwrap_or(true) {
            break;
        }
        let approx = rational_to_f64(&Rational::new(p1.clone(), q1.clone()));
        if (approx - x).abs() < 1e-12 * x.abs().max(1.0) {
            return Some(Rational::new(p1, q1));
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let a = BigInt::from(a as i64);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    let cand = Rational::new(p1, q1.clone());
    if q1.to_u64().map(|q| q <= max_den).unwrap_or(false)
        && (rational_to_f64(&cand) - x).abs() < 1e-9 * x.abs().max(1.0)
    {
        Some(cand)
    } else {
        None
    }
}

/// Rounds `r` to a dyadic with denominator 2^bits, toward -inf or +inf.
/// Keeps interval endpoints from accumulating huge denominators.
pub fn dyadic_round(r: &Rational, bits: u32, up: bool) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = r * Rational::from_integer(scale.clone());
    let floor = scaled.floor();
    let out = if up && scaled != floor {
        floor + Rational::one()
    } else {
        floor
    };
    out / Rational::from_integer(scale)
}
