//! Dense univariate polynomials over Q.
//!
//! Implements exactly what the number-field layer needs: ring arithmetic,
//! Euclidean division, gcd, a decision procedure for irreducibility up to
//! degree 4, cyclotomic polynomials, Sturm real-root counting, and a plain
//! Durand-Kerner solver for float approximations of all complex roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::rational::{rational_to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    /// Coefficients, low degree first. Normalized: no trailing zeros.
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0 by convention of the callers.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + other.coeff(i));
        }
        Poly::new(v)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - other.coeff(i));
        }
        Poly::new(v)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; the divisor's leading coefficient must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dn = divisor.coeffs.len();
        if rem.len() < dn {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = Rational::one() / divisor.leading();
        let mut quot = vec![Rational::zero(); rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dn - 1] * &lead_inv;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * d;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dn - 1);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = Rational::one() / a.leading();
            a.scale(&inv)
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i + 1)))
                .collect(),
        )
    }

    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at an exact complex rational point (re, im).
    pub fn eval_complex_rational(&self, re: &Rational, im: &Rational) -> (Rational, Rational) {
        let mut ar = Rational::zero();
        let mut ai = Rational::zero();
        for c in self.coeffs.iter().rev() {
            let nr = &ar * re - &ai * im + c;
            let ni = &ar * im + &ai * re;
            ar = nr;
            ai = ni;
        }
        (ar, ai)
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + Complex64::new(rational_to_f64(c), 0.0);
        }
        acc
    }

    /// Substitute x -> x/m and clear denominators: m^n p(x/m), monic if p is.
    fn integerize_monic(&self) -> Vec<BigInt> {
        assert!(self.is_monic());
        let mut m = BigInt::one();
        for c in &self.coeffs {
            m = num_integer::lcm(m, c.denom().clone());
        }
        let n = self.degree();
        let mr = Rational::from_integer(m);
        // coefficient of x^i picks up m^(n-i)
        let mut pow = Rational::one();
        let mut out = vec![BigInt::zero(); n + 1];
        for i in (0..=n).rev() {
            let v = self.coeff(i) * &pow;
            debug_assert!(v.denom().is_one());
            out[i] = v.numer().clone();
            pow *= &mr;
        }
        out
    }

    /// All complex roots, by Durand-Kerner. Desk-scale degrees only.
    pub fn roots_f64(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 {
            return vec![];
        }
        let lead = rational_to_f64(&self.leading());
        let coeffs: Vec<Complex64> = self
            .coeffs
            .iter()
            .map(|c| Complex64::new(rational_to_f64(c) / lead, 0.0))
            .collect();
        let eval = |z: Complex64| {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in coeffs.iter().rev() {
                acc = acc * z + c;
            }
            acc
        };
        let radius = 1.0
            + coeffs
                .iter()
                .take(n)
                .map(|c| c.norm())
                .fold(0.0f64, f64::max);
        let mut roots: Vec<Complex64> = (0..n)
            .map(|k| {
                // deterministic start: scaled roots of unity, slightly rotated
                let angle = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
                Complex64::from_polar(radius * 0.7, angle)
            })
            .collect();
        for _ in 0..400 {
            let mut delta_max = 0.0f64;
            for i in 0..n {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if j != i {
                        denom *= roots[i] - roots[j];
                    }
                }
                if denom.norm() < 1e-300 {
                    continue;
                }
                let step = eval(roots[i]) / denom;
                roots[i] -= step;
                delta_max = delta_max.max(step.norm());
            }
            if delta_max < 1e-14 {
                break;
            }
        }
        roots
    }

    /// Number of distinct real roots, by Sturm's theorem (whole real line).
    pub fn count_real_roots(&self) -> usize {
        let p = self.squarefree_part();
        if p.degree() == 0 {
            return 0;
        }
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let last = &seq[seq.len() - 1];
            if last.is_zero() {
                seq.pop();
                break;
            }
            let prev = &seq[seq.len() - 2];
            let (_, r) = prev.div_rem(last);
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        let sign_at_inf = |q: &Poly, plus: bool| -> i32 {
            let lead = q.leading();
            if lead.is_zero() {
                return 0;
            }
            let mut s = if lead.is_positive() { 1 } else { -1 };
            if !plus && q.degree() % 2 == 1 {
                s = -s;
            }
            s
        };
        let changes = |plus: bool| -> usize {
            let mut count = 0;
            let mut prev = 0;
            for q in &seq {
                let s = sign_at_inf(q, plus);
                if s != 0 {
                    if prev != 0 && s != prev {
                        count += 1;
                    }
                    prev = s;
                }
            }
            count
        };
        changes(false) - changes(true)
    }
}

/// Outcome of the desk-scale irreducibility test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible(String),
    /// Degree above 4: accepted with a warning flag, not verified.
    Unverified,
}

/// Decides irreducibility over Q for monic polynomials of degree <= 4;
/// degree >= 5 returns `Unverified`.
pub fn irreducibility(p: &Poly) -> Irreducibility {
    assert!(p.is_monic());
    let n = p.degree();
    if n == 0 {
        return Irreducibility::Reducible("constant polynomial".into());
    }
    if n == 1 {
        return Irreducibility::Irreducible;
    }
    if n > 4 {
        return Irreducibility::Unverified;
    }
    let c = p.integerize_monic();
    if c[0].is_zero() {
        return Irreducibility::Reducible("root at 0".into());
    }
    for d in divisors(&c[0]) {
        for r in [d.clone(), -d] {
            if eval_int(&c, &r).is_zero() {
                return Irreducibility::Reducible(format!("rational root {r}"));
            }
        }
    }
    match n {
        2 | 3 => Irreducibility::Irreducible,
        4 => {
            // remaining factorizations are monic quadratic pairs over Z
            let (c3, c2, c1, c0) = (&c[3], &c[2], &c[1], &c[0]);
            for b in divisors(c0).into_iter().flat_map(|d| [d.clone(), -d]) {
                let bp = c0 / &b;
                // a + a' = c3 and a a' = c2 - b - b'
                let s = c3.clone();
                let prod = c2 - &b - &bp;
                let disc = &s * &s - BigInt::from(4) * &prod;
                if disc.sign() == num_bigint::Sign::Minus {
                    continue;
                }
                let root = disc.sqrt();
                if &root * &root != disc {
                    continue;
                }
                for root in [root.clone(), -root] {
                    let two = BigInt::from(2);
                    let a_num = &s + &root;
                    if (&a_num % &two).is_zero() {
                        let a = a_num / &two;
                        let ap = &s - &a;
                        if &a * &bp + &ap * &b == *c1 {
                            return Irreducibility::Reducible(format!(
                                "quadratic factor x^2 + {a} x + {b}"
                            ));
                        }
                    }
                }
            }
            Irreducibility::Irreducible
        }
        _ => unreachable!(),
    }
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Positive divisors by trial division. Constants here come from minimal
/// polynomials typed by hand, so this stays cheap.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = vec![];
    let mut d = BigInt::one();
    let limit = n.sqrt();
    while d <= limit {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
        if out.len() > 100_000 {
            break;
        }
    }
    out
}

/// n-th cyclotomic polynomial, by exact division of x^n - 1.
pub fn cyclotomic(n: u32) -> Poly {
    assert!(n >= 1);
    let mut num = Poly::monomial(Rational::one(), n as usize);
    num = num.sub(&Poly::one());
    let mut result = num;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic(d);
            let (q, r) = result.div_rem(&phi_d);
            debug_assert!(r.is_zero());
            result = q;
        }
    }
    result
}
