//! Number fields E = Q(alpha) presented by a monic irreducible minimal
//! polynomial together with a certified complex root, stable under complex
//! conjugation.
//!
//! Every field element is a rational coordinate vector over the power basis
//! 1, alpha, ..., alpha^(d-1). The embedding into C is certified: `embed`
//! returns a rational rectangle of requested width that provably contains
//! the image, and sign queries on real elements refine until decided, so
//! exact-mode answers never depend on floating point.

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{certify_root, eval_poly_box, refine_root, ComplexBox};
use crate::linalg;
use crate::poly::{irreducibility, Irreducibility, Poly};
use crate::rational::{
    f64_to_rational, rational_to_f64, reconstruct_rational, Rational,
};

/// Sign of a real quantity decided by certified refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

pub struct NumberField {
    minpoly: Poly,
    degree: usize,
    /// Certified isolating boxes for all roots, pairwise disjoint,
    /// ordered by (re.lo, im.lo). Refined in place on demand.
    root_boxes: RwLock<Vec<ComplexBox>>,
    /// Index of the selected root alpha in `root_boxes`.
    selected: usize,
    /// Coordinates of conj(alpha) over the power basis.
    conj_coords: Vec<Rational>,
    /// conj_pows[j] = coordinates of conj(alpha)^j.
    conj_pows: Vec<Vec<Rational>>,
    /// power_table[k] = coordinates of alpha^(d+k), k = 0..d-2.
    power_table: Vec<Vec<Rational>>,
    /// Known field automorphisms, as coordinate vectors of images of alpha.
    /// Always contains identity and conjugation; constructors that know the
    /// full Galois action (quadratic, cyclotomic, composed) record it here.
    automorphisms: Vec<Vec<Rational>>,
    /// True when irreducibility of the minimal polynomial was not verified
    /// (degree > 4); arithmetic proceeds but results are conditional on it.
    pub warn_unchecked: bool,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "NumberField(degree {}, minpoly {:?}, alpha ~ {})",
            self.degree,
            self.minpoly.coeffs(),
            self.approx_root()
        )
    }
}

impl NumberField {
    /// Creates the field from a monic minimal polynomial and a hint locating
    /// the intended root. `conj_hint`, when given, must be the coordinate
    /// vector of conj(alpha); otherwise the conjugation is discovered and
    /// verified, or the construction fails with `ConjugationNotInternal`.
    pub fn new(
        minpoly: Poly,
        root_hint: Complex64,
        conj_hint: Option<Vec<Rational>>,
    ) -> Result<Arc<NumberField>> {
        if !minpoly.is_monic() || minpoly.degree() == 0 {
            return Err(Error::ReducibleMinimalPolynomial(
                "minimal polynomial must be monic of degree >= 1".into(),
            ));
        }
        let mut warn_unchecked = false;
        match irreducibility(&minpoly) {
            Irreducibility::Irreducible => {}
            Irreducibility::Reducible(why) => {
                return Err(Error::ReducibleMinimalPolynomial(why));
            }
            Irreducibility::Unverified => {
                if !minpoly.is_squarefree() {
                    return Err(Error::ReducibleMinimalPolynomial(
                        "polynomial is not squarefree".into(),
                    ));
                }
                warn_unchecked = true;
            }
        }
        let degree = minpoly.degree();

        if degree == 1 {
            // the rationals; alpha is itself rational
            let alpha = -minpoly.coeff(0);
            let boxes = vec![ComplexBox::point(alpha, Rational::zero())];
            return Ok(Arc::new(NumberField {
                minpoly,
                degree,
                root_boxes: RwLock::new(boxes),
                selected: 0,
                conj_coords: vec![Rational::one()],
                conj_pows: vec![vec![Rational::one()]],
                power_table: vec![],
                automorphisms: vec![vec![Rational::one()]],
                warn_unchecked,
            }));
        }

        let (boxes, roots) = certified_root_boxes(&minpoly)?;
        let selected = roots
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                (*a - root_hint)
                    .norm()
                    .partial_cmp(&(*b - root_hint).norm())
                    .unwrap()
            })
            .map(|(i, _)| i)
            .ok_or(Error::AmbiguousRoot)?;
        // the hint must clearly prefer one root
        let dist: Vec<f64> = roots.iter().map(|r| (*r - root_hint).norm()).collect();
        let best = dist[selected];
        for (i, d) in dist.iter().enumerate() {
            if i != selected && (*d - best).abs() < 1e-9 * (1.0 + best) {
                return Err(Error::AmbiguousRoot);
            }
        }

        let power_table = build_power_table(&minpoly);

        let conj_coords = match conj_hint {
            Some(c) => {
                if c.len() != degree {
                    return Err(Error::schema("", "conjugation vector has wrong length"));
                }
                c
            }
            None => discover_conjugation(&minpoly, &roots, selected)
                .ok_or(Error::ConjugationNotInternal)?,
        };
        // exact check: substituting the candidate into the minimal polynomial
        // must vanish mod minpoly, making x -> g(x) a ring endomorphism
        let g = Poly::new(conj_coords.clone());
        if !compose_mod(&minpoly, &g, &minpoly).is_zero() {
            return Err(Error::ConjugationNotInternal);
        }

        let field = NumberField {
            minpoly,
            degree,
            root_boxes: RwLock::new(boxes),
            selected,
            conj_coords: conj_coords.clone(),
            conj_pows: vec![],
            power_table,
            automorphisms: vec![],
            warn_unchecked,
        };
        // certified check that g(alpha) is the complex conjugate root
        if !field.image_is_root(&g, &field.box_of(selected).conj()) {
            return Err(Error::ConjugationNotInternal);
        }
        let mut field = field;
        field.conj_pows = element_powers(&field, &conj_coords);
        let ident = identity_coords(degree);
        field.automorphisms = vec![ident, conj_coords];
        // closed-form automorphisms for quadratics and split biquadratics,
        // so fields parsed from descriptors still know their Galois action
        for cand in closed_form_automorphisms(&field.minpoly) {
            let g = Poly::new(cand.clone());
            if compose_mod(&field.minpoly, &g, &field.minpoly).is_zero()
                && !field.automorphisms.contains(&cand)
            {
                field.automorphisms.push(cand);
            }
        }
        let arc = Arc::new(field);
        // conjugation must be an involution
        let alpha = arc.generator_of(&arc);
        let back = alpha.conj().conj();
        if back != alpha {
            return Err(Error::ConjugationNotInternal);
        }
        Ok(arc)
    }

    /// The rationals, presented as Q = Q[x]/(x).
    pub fn rationals() -> Arc<NumberField> {
        NumberField::new(Poly::x(), Complex64::new(0.0, 0.0), None).unwrap()
    }

    /// Q(sqrt(c)) for a squarefree nonsquare integer c; the selected root is
    /// the positive real square root for c > 0 and i sqrt|c| for c < 0.
    pub fn quadratic(c: i64) -> Result<Arc<NumberField>> {
        let minpoly = Poly::new(vec![
            Rational::from_integer(BigInt::from(-c)),
            Rational::zero(),
            Rational::one(),
        ]);
        let hint = if c >= 0 {
            Complex64::new((c as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, ((-c) as f64).sqrt())
        };
        let conj = if c >= 0 {
            vec![Rational::zero(), Rational::one()]
        } else {
            vec![Rational::zero(), -Rational::one()]
        };
        let f = NumberField::new(minpoly, hint, Some(conj))?;
        let mut autos = f.automorphisms.clone();
        let neg = vec![Rational::zero(), -Rational::one()];
        if !autos.contains(&neg) {
            autos.push(neg);
        }
        Ok(with_automorphisms(f, autos))
    }

    /// Q(i).
    pub fn gaussian() -> Arc<NumberField> {
        NumberField::quadratic(-1).unwrap()
    }

    /// Cyclotomic field Q(zeta_n), zeta_n = exp(2 pi i / n).
    pub fn cyclotomic(n: u32) -> Result<Arc<NumberField>> {
        let phi = crate::poly::cyclotomic(n);
        let d = phi.degree();
        let angle = 2.0 * std::f64::consts::PI / n as f64;
        let hint = Complex64::from_polar(1.0, angle);
        // conj(zeta) = zeta^(n-1), reduced mod Phi_n
        let conj = reduce_power_mod(&phi, n as usize - 1);
        let f = NumberField::new(phi.clone(), hint, Some(conj))?;
        let mut autos = vec![];
        for k in 1..n as usize {
            if num_integer::gcd(k, n as usize) == 1 {
                autos.push(reduce_power_mod(&phi, k));
            }
        }
        debug_assert_eq!(autos.len(), d);
        Ok(with_automorphisms(f, autos))
    }

    pub fn minpoly(&self) -> &Poly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn automorphisms(&self) -> &[Vec<Rational>] {
        &self.automorphisms
    }

    /// Coordinates of conj(alpha) over the power basis.
    pub fn conjugation_coords(&self) -> &[Rational] {
        &self.conj_coords
    }

    /// All roots as f64 approximations (midpoints of certified boxes).
    pub fn roots_approx(&self) -> Vec<Complex64> {
        self.root_boxes.read().unwrap().iter().map(|b| b.approx()).collect()
    }

    pub fn selected_root_index(&self) -> usize {
        self.selected
    }

    pub fn approx_root(&self) -> Complex64 {
        self.box_of(self.selected).approx()
    }

    fn box_of(&self, i: usize) -> ComplexBox {
        self.root_boxes.read().unwrap()[i].clone()
    }

    /// Certified box of root `i`, refined until width <= 2^-bits.
    pub fn refined_root_box(&self, i: usize, bits: u32) -> ComplexBox {
        let target = Rational::new(BigInt::one(), BigInt::one() << bits);
        {
            let boxes = self.root_boxes.read().unwrap();
            if boxes[i].width() <= target {
                return boxes[i].clone();
            }
        }
        let mut boxes = self.root_boxes.write().unwrap();
        if boxes[i].width() > target {
            if self.degree == 1 {
                // a point already
            } else {
                boxes[i] = refine_root(&self.minpoly, boxes[i].clone(), bits);
            }
        }
        boxes[i].clone()
    }

    /// Certified: image of alpha under the polynomial map `g` equals the
    /// root isolated by `target_box` (a certified isolating box). The image
    /// is an exact root of the minimal polynomial, so once its enclosure
    /// meets `target_box` while avoiding every root box disjoint from it,
    /// isolation proves equality.
    fn image_is_root(&self, g: &Poly, target_box: &ComplexBox) -> bool {
        for bits in [30u32, 60, 120, 240] {
            let alpha = self.refined_root_box(self.selected, bits);
            let img = eval_poly_box(g, &alpha);
            if !img.overlaps(target_box) {
                return false;
            }
            let others = self.root_boxes.read().unwrap().clone();
            let mut overlap_others = false;
            for b in others.iter() {
                if !b.overlaps(target_box) && img.overlaps(b) {
                    overlap_others = true;
                }
            }
            if !overlap_others {
                return true;
            }
        }
        false
    }

    /// Which root does the element map to, numerically (for place matching).
    pub fn root_index_of_element(&self, coords: &[Rational]) -> Option<usize> {
        let g = Poly::new(coords.to_vec());
        let alpha = self.refined_root_box(self.selected, 60);
        let img = eval_poly_box(&g, &alpha).approx();
        let roots = self.roots_approx();
        let mut best = None;
        let mut best_d = f64::INFINITY;
        for (i, r) in roots.iter().enumerate() {
            let d = (img - r).norm();
            if d < best_d {
                best_d = d;
                best = Some(i);
            }
        }
        best
    }

    pub fn same_field(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        if Arc::ptr_eq(self, other) {
            return true;
        }
        self.minpoly == other.minpoly
            && self
                .box_of(self.selected)
                .overlaps(&other.box_of(other.selected))
    }

    pub fn zero_of(self: &Arc<Self>, _f: &Arc<Self>) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coords: vec![Rational::zero(); self.degree],
        }
    }

    pub fn element(self: &Arc<Self>, coords: Vec<Rational>) -> Result<FieldElement> {
        if coords.len() != self.degree {
            return Err(Error::schema(
                "",
                format!(
                    "coordinate vector has length {}, field degree is {}",
                    coords.len(),
                    self.degree
                ),
            ));
        }
        Ok(FieldElement {
            field: self.clone(),
            coords,
        })
    }

    pub fn from_rational(self: &Arc<Self>, r: Rational) -> FieldElement {
        let mut coords = vec![Rational::zero(); self.degree];
        coords[0] = r;
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn from_i64(self: &Arc<Self>, n: i64) -> FieldElement {
        self.from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn generator(self: &Arc<Self>) -> FieldElement {
        self.generator_of(self)
    }

    fn generator_of(&self, arc: &Arc<Self>) -> FieldElement {
        let mut coords = vec![Rational::zero(); self.degree];
        if self.degree == 1 {
            coords[0] = -self.minpoly.coeff(0);
        } else {
            coords[1] = Rational::one();
        }
        FieldElement {
            field: arc.clone(),
            coords,
        }
    }

    /// Finds y in the field with y^2 = c (c rational), if one exists.
    /// Searches embedding sign patterns, reconstructs candidate coordinates
    /// numerically, and verifies y^2 = c exactly before returning.
    pub fn sqrt_of_rational(self: &Arc<Self>, c: &Rational) -> Option<FieldElement> {
        if c.is_zero() {
            return Some(self.from_rational(Rational::zero()));
        }
        // rational square root first
        if let (Some(ns), Some(ds)) = (perfect_sqrt(c.numer()), perfect_sqrt(c.denom())) {
            if !c.is_negative() {
                return Some(self.from_rational(Rational::new(ns, ds)));
            }
        }
        let d = self.degree;
        if d == 1 {
            return None;
        }
        let cf = rational_to_f64(c);
        let w = if cf >= 0.0 {
            Complex64::new(cf.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-cf).sqrt())
        };
        let roots = self.roots_approx();
        for mask in 0..(1u32 << (d - 1)) {
            let targets: Vec<Complex64> = (0..d)
                .map(|k| {
                    let sign = if k == 0 {
                        1.0
                    } else if (mask >> (k - 1)) & 1 == 1 {
                        -1.0
                    } else {
                        1.0
                    };
                    w * sign
                })
                .collect();
            if let Some(coords) = recognize_from_embeddings(&roots, &targets) {
                if let Ok(y) = self.element(coords) {
                    if &y.mul(&y) == &self.from_rational(c.clone()) {
                        return Some(y);
                    }
                    let yn = y.neg();
                    if &yn.mul(&yn) == &self.from_rational(c.clone()) {
                        return Some(yn);
                    }
                }
            }
        }
        None
    }

    /// A primitive cube root of unity in the field, if the field has one.
    pub fn omega(self: &Arc<Self>) -> Option<FieldElement> {
        let y = self.sqrt_of_rational(&Rational::from_integer(BigInt::from(-3)))?;
        let two = Rational::from_integer(BigInt::from(2));
        let omega = y
            .sub(&self.from_i64(1))
            .scale(&(Rational::one() / two));
        debug_assert!(omega.mul(&omega).add(&omega).add(&self.from_i64(1)).is_zero());
        Some(omega)
    }

    /// The imaginary unit as a field element, if the field contains it.
    pub fn imaginary_unit(self: &Arc<Self>) -> Option<FieldElement> {
        let i = self.sqrt_of_rational(&Rational::from_integer(BigInt::from(-1)))?;
        // select the root embedding to +i rather than -i
        let b = i.embed(40);
        if b.im.lo.is_positive() {
            Some(i)
        } else {
            Some(i.neg())
        }
    }

    /// Compositum of two fields: returns Q(gamma) with gamma = alpha + c beta
    /// for the first workable small c, plus the images of alpha and beta
    /// inside the new field. Conjugation is composed from the factors.
    pub fn compose(
        f1: &Arc<NumberField>,
        f2: &Arc<NumberField>,
    ) -> Result<(Arc<NumberField>, FieldElement, FieldElement)> {
        let d1 = f1.degree;
        let d2 = f2.degree;
        let dim = d1 * d2;
        for c in [1i64, -1, 2, -2, 3, -3, 5, -5] {
            let cr = Rational::from_integer(BigInt::from(c));
            // multiplication-by-gamma matrix on the tensor basis
            let m = tensor_mult_matrix(f1, f2, &cr);
            // powers of gamma as tensor coordinates
            let mut pows: Vec<Vec<Rational>> = Vec::with_capacity(dim);
            let mut v = vec![Rational::zero(); dim];
            v[0] = Rational::one();
            for _ in 0..dim {
                pows.push(v.clone());
                v = mat_apply(&m, &v);
            }
            // gamma primitive iff the powers are independent
            let vt: Vec<Vec<Rational>> = (0..dim)
                .map(|i| (0..dim).map(|k| pows[k][i].clone()).collect())
                .collect();
            let alpha_t = tensor_unit(d1, d2, 1, 0);
            let beta_t = tensor_unit(d1, d2, 0, 1);
            let (alpha_c, beta_c) = match (
                linalg::solve_square(&vt, &alpha_t),
                linalg::solve_square(&vt, &beta_t),
            ) {
                (Some(a), Some(b)) => (a, b),
                _ => continue,
            };
            let minpoly = Poly::new(linalg::char_poly(&m));
            let hint = f1.approx_root() + Complex64::new(c as f64, 0.0) * f2.approx_root();
            // conj(gamma) = conj(alpha) + c conj(beta), pushed through the
            // tensor coordinates and re-expressed in powers of gamma
            let conj_t = tensor_conj_gamma(f1, f2, &cr);
            let conj_gamma = match linalg::solve_square(&vt, &conj_t) {
                Some(x) => x,
                None => continue,
            };
            let field = match NumberField::new(minpoly, hint, Some(conj_gamma)) {
                Ok(f) => f,
                Err(Error::ReducibleMinimalPolynomial(_)) => continue,
                Err(e) => return Err(e),
            };
            let alpha = field.element(alpha_c)?;
            let beta = field.element(beta_c)?;
            // sanity: the images satisfy their minimal polynomials
            if !eval_poly_elem(f1.minpoly(), &alpha).is_zero()
                || !eval_poly_elem(f2.minpoly(), &beta).is_zero()
            {
                continue;
            }
            // compose the automorphism catalogs when both factors know theirs
            let mut autos = vec![];
            for a1 in &f1.automorphisms {
                for a2 in &f2.automorphisms {
                    let img1 = eval_poly_elem(&Poly::new(a1.clone()), &alpha);
                    let img2 = eval_poly_elem(&Poly::new(a2.clone()), &beta);
                    let img = img1.add(&img2.scale(&cr));
                    let g = Poly::new(img.coords.clone());
                    if compose_mod(field.minpoly(), &g, field.minpoly()).is_zero() {
                        autos.push(img.coords.clone());
                    }
                }
            }
            let field = with_automorphisms(field, autos);
            let alpha = field.element(alpha.coords)?;
            let beta = field.element(beta.coords)?;
            return Ok((field, alpha, beta));
        }
        Err(Error::DegenerateConfiguration(
            "no primitive element alpha + c beta found for small c".into(),
        ))
    }
}

/// An element of a number field: rational coordinates over the power basis.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})a")?,
                _ => write!(f, "({c})a^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coords == other.coords
    }
}

impl FieldElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(
            self.field.same_field(&other.field),
            "field mismatch: operands belong to different number fields"
        );
    }

    /// Checked variant used at input boundaries.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !self.field.same_field(&other.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        FieldElement {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        FieldElement {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| a * r).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let d = self.field.degree;
        if d == 1 {
            return FieldElement {
                field: self.field.clone(),
                coords: vec![&self.coords[0] * &other.coords[0]],
            };
        }
        let mut conv = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut out = conv[..d].to_vec();
        for k in 0..d - 1 {
            let c = &conv[d + k];
            if c.is_zero() {
                continue;
            }
            for (j, t) in self.field.power_table[k].iter().enumerate() {
                out[j] += c * t;
            }
        }
        FieldElement {
            field: self.field.clone(),
            coords: out,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = Poly::new(self.coords.clone());
        let (g, _, v) = ext_gcd(self.field.minpoly(), &a);
        if g.degree() != 0 {
            return Err(Error::InternalContradiction(
                "zero divisor found: modulus is reducible".into(),
            ));
        }
        let ginv = Rational::one() / g.coeff(0);
        let inv = v.scale(&ginv);
        let (_, r) = inv.div_rem(self.field.minpoly());
        let mut coords = r.coeffs().to_vec();
        coords.resize(self.field.degree, Rational::zero());
        Ok(FieldElement {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn conj(&self) -> Self {
        let d = self.field.degree;
        let mut out = vec![Rational::zero(); d];
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, p) in self.field.conj_pows[j].iter().enumerate() {
                out[k] += c * p;
            }
        }
        FieldElement {
            field: self.field.clone(),
            coords: out,
        }
    }

    pub fn pow(&self, mut e: i64) -> Result<Self> {
        let mut base = if e < 0 {
            e = -e;
            self.inv()?
        } else {
            self.clone()
        };
        let mut acc = self.field.from_i64(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// True when the element is fixed by conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Certified enclosure of the embedding, width at most 2^-bits.
    pub fn embed(&self, bits: u32) -> ComplexBox {
        let g = Poly::new(self.coords.clone());
        let target = Rational::new(BigInt::one(), BigInt::one() << bits);
        let mut extra = 8u32;
        for _ in 0..10 {
            let alpha = self
                .field
                .refined_root_box(self.field.selected, bits + extra);
            let out = eval_poly_box(&g, &alpha);
            if out.width() <= target {
                return out;
            }
            extra *= 2;
        }
        let alpha = self.field.refined_root_box(self.field.selected, bits + extra);
        eval_poly_box(&g, &alpha)
    }

    pub fn approx(&self) -> Complex64 {
        if self.field.degree == 1 {
            return Complex64::new(rational_to_f64(&self.coords[0]), 0.0);
        }
        self.embed(53).approx()
    }

    /// Certified sign of a real element (errors if the element is not real).
    pub fn sign_real(&self) -> Result<Sign> {
        if !self.is_real() {
            return Err(Error::InternalContradiction(
                "sign requested for a non-real element".into(),
            ));
        }
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(if r.is_positive() { Sign::Positive } else { Sign::Negative });
        }
        let mut bits = 30u32;
        for _ in 0..12 {
            let b = self.embed(bits);
            if b.re.is_positive() {
                return Ok(Sign::Positive);
            }
            if b.re.is_negative() {
                return Ok(Sign::Negative);
            }
            bits *= 2;
        }
        Err(Error::InternalContradiction(
            "sign of nonzero real element did not resolve".into(),
        ))
    }

    /// |e|^2 = e conj(e), always real.
    pub fn norm_sq(&self) -> Self {
        self.mul(&self.conj())
    }
}

/// A rational-linear basis of a subfield, closed under multiplication.
/// Rows are kept in canonical reduced echelon form, so two subfields are
/// equal iff their `rref` matrices are equal.
#[derive(Debug, Clone)]
pub struct SubfieldBasis {
    field: Arc<NumberField>,
    basis: Vec<FieldElement>,
    rref: Vec<Vec<Rational>>,
}

impl PartialEq for SubfieldBasis {
    fn eq(&self, other: &Self) -> bool {
        self.span_equals(other)
    }
}

impl SubfieldBasis {
    pub fn ambient(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn rref_rows(&self) -> &[Vec<Rational>] {
        &self.rref
    }

    pub fn span_equals(&self, other: &SubfieldBasis) -> bool {
        self.field.same_field(&other.field) && self.rref == other.rref
    }

    pub fn is_subfield_of(&self, other: &SubfieldBasis) -> bool {
        self.basis
            .iter()
            .all(|b| other.contains(b).is_some())
    }

    /// Membership test with certificate: the rational coordinates of `a`
    /// over the basis, when `a` lies in the span.
    pub fn contains(&self, a: &FieldElement) -> Option<Vec<Rational>> {
        if !self.field.same_field(a.field()) {
            return None;
        }
        linalg::solve_in_span(&self.rref, a.coords())
    }

    /// Re-verifies a membership certificate by exact arithmetic.
    pub fn verify_certificate(&self, a: &FieldElement, cert: &[Rational]) -> bool {
        if cert.len() != self.basis.len() {
            return false;
        }
        let mut acc = self.field.from_i64(0);
        for (c, b) in cert.iter().zip(&self.basis) {
            acc = acc.add(&b.scale(c));
        }
        &acc == a
    }
}

/// The smallest subfield containing Q and all generators: starts from
/// {1} and the generators, then alternates multiplicative closure and
/// inverse closure with row reduction until the span stabilizes.
pub fn subfield_generated(
    field: &Arc<NumberField>,
    gens: &[FieldElement],
) -> Result<SubfieldBasis> {
    for g in gens {
        if !field.same_field(g.field()) {
            return Err(Error::FieldMismatch);
        }
    }
    let mut rows: Vec<Vec<Rational>> = vec![identity_coords(field.degree())];
    rows.extend(gens.iter().map(|g| g.coords().to_vec()));
    let mut rref = linalg::rref(&rows);
    loop {
        let basis: Vec<FieldElement> = rref
            .iter()
            .map(|r| field.element(r.clone()).unwrap())
            .collect();
        let mut extended = rref.clone();
        for i in 0..basis.len() {
            for j in i..basis.len() {
                extended.push(basis[i].mul(&basis[j]).coords().to_vec());
            }
            if !basis[i].is_zero() {
                extended.push(basis[i].inv()?.coords().to_vec());
            }
        }
        let next = linalg::rref(&extended);
        if next.len() == rref.len() {
            let basis = next
                .iter()
                .map(|r| field.element(r.clone()).unwrap())
                .collect();
            return Ok(SubfieldBasis {
                field: field.clone(),
                basis,
                rref: next,
            });
        }
        rref = next;
    }
}

// ---------------------------------------------------------------------------
// helpers

fn identity_coords(d: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    v[0] = Rational::one();
    v
}

fn with_automorphisms(f: Arc<NumberField>, autos: Vec<Vec<Rational>>) -> Arc<NumberField> {
    // fields are immutable after construction; rebuilding is the clean way
    // to attach a richer automorphism catalog from a constructor
    let mut inner = NumberField {
        minpoly: f.minpoly.clone(),
        degree: f.degree,
        root_boxes: RwLock::new(f.root_boxes.read().unwrap().clone()),
        selected: f.selected,
        conj_coords: f.conj_coords.clone(),
        conj_pows: f.conj_pows.clone(),
        power_table: f.power_table.clone(),
        automorphisms: f.automorphisms.clone(),
        warn_unchecked: f.warn_unchecked,
    };
    let mut seen = inner.automorphisms.clone();
    for a in autos {
        if !seen.contains(&a) {
            seen.push(a);
        }
    }
    inner.automorphisms = seen;
    Arc::new(inner)
}

/// Automorphism candidates available in closed form: the conjugate root of
/// a quadratic, and for x^4 + a x^2 + b with b a rational square (the
/// compositum of two rational quadratics, gamma = sqrt(u) + sqrt(v)), the
/// four sign changes gamma -> +-sqrt(u) +- sqrt(v).
fn closed_form_automorphisms(p: &Poly) -> Vec<Vec<Rational>> {
    let d = p.degree();
    let mut out = vec![];
    if d == 2 {
        // other root of x^2 + bx + c is -b - alpha
        out.push(vec![-p.coeff(1), -Rational::one()]);
        return out;
    }
    if d != 4 || !p.coeff(1).is_zero() || !p.coeff(3).is_zero() {
        return out;
    }
    let c0 = p.coeff(0);
    let c2 = p.coeff(2);
    let num_sq = c0.numer() * c0.denom();
    if num_sq < num_bigint::BigInt::from(0) {
        return out;
    }
    let s_num = num_sq.sqrt();
    if &s_num * &s_num != num_sq {
        return out;
    }
    let s = Rational::new(s_num, c0.denom().clone());
    // u + v = -c2 / 2, u - v = +- s
    let half = Rational::new(1.into(), 2.into());
    let sum = -&c2 * &half;
    for s in [s.clone(), -s] {
        let u = (&sum + &s) * &half;
        let v = (&sum - &s) * &half;
        if u == v {
            continue;
        }
        // sqrt(u) = (gamma^3 - (u + 3v) gamma) / (2 (u - v)), sqrt(v) likewise
        let denom = (&u - &v) * Rational::new(2.into(), 1.into());
        let su = |g3: &Rational, g1: &Rational| -> Vec<Rational> {
            vec![
                Rational::zero(),
                g1 / &denom,
                Rational::zero(),
                g3 / &denom,
            ]
        };
        let sqrt_u = su(&Rational::one(), &(-(&u + &v * Rational::new(3.into(), 1.into()))));
        // sqrt(v) = gamma - sqrt(u)
        let mut sqrt_v = vec![Rational::zero(); 4];
        sqrt_v[1] = Rational::one();
        for (k, c) in sqrt_u.iter().enumerate() {
            sqrt_v[k] -= c;
        }
        for (e1, e2) in [(1i64, -1i64), (-1, 1), (-1, -1)] {
            let mut img = vec![Rational::zero(); 4];
            for k in 0..4 {
                img[k] = &sqrt_u[k] * Rational::new(e1.into(), 1.into())
                    + &sqrt_v[k] * Rational::new(e2.into(), 1.into());
            }
            out.push(img);
        }
    }
    out
}

/// x^k reduced mod p, as a coordinate vector of length deg(p).
fn reduce_power_mod(p: &Poly, k: usize) -> Vec<Rational> {
    let (_, r) = Poly::monomial(Rational::one(), k).div_rem(p);
    let mut coords = r.coeffs().to_vec();
    coords.resize(p.degree(), Rational::zero());
    coords
}

/// alpha^(d+k) for k = 0..d-2, reduced.
fn build_power_table(p: &Poly) -> Vec<Vec<Rational>> {
    let d = p.degree();
    (0..d.saturating_sub(1))
        .map(|k| reduce_power_mod(p, d + k))
        .collect()
}

/// q(g(x)) mod p.
fn compose_mod(q: &Poly, g: &Poly, p: &Poly) -> Poly {
    let mut acc = Poly::zero();
    for c in q.coeffs().iter().rev() {
        acc = acc.mul(g);
        let (_, r) = acc.div_rem(p);
        acc = r.add(&Poly::constant(c.clone()));
    }
    let (_, r) = acc.div_rem(p);
    r
}

/// Powers of an element given by coords, as coordinate vectors (0..d-1).
fn element_powers(field: &NumberField, coords: &[Rational]) -> Vec<Vec<Rational>> {
    let d = field.degree;
    let p = field.minpoly();
    let g = Poly::new(coords.to_vec());
    let mut pows = Vec::with_capacity(d);
    let mut acc = Poly::one();
    for _ in 0..d {
        let mut v = acc.coeffs().to_vec();
        v.resize(d, Rational::zero());
        pows.push(v);
        acc = acc.mul(&g);
        let (_, r) = acc.div_rem(p);
        acc = r;
    }
    pows
}

fn eval_poly_elem(p: &Poly, x: &FieldElement) -> FieldElement {
    let mut acc = x.field().from_i64(0);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&x.field().from_rational(c.clone()));
    }
    acc
}

fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Certified, pairwise disjoint isolating boxes for all roots, ordered by
/// (re.lo, im.lo), together with f64 approximations in the same order.
fn certified_root_boxes(p: &Poly) -> Result<(Vec<ComplexBox>, Vec<Complex64>)> {
    let approx = p.roots_f64();
    let mut boxes = Vec::with_capacity(approx.len());
    for r in &approx {
        let center = (
            f64_to_rational(r.re).map_err(|_| Error::AmbiguousRoot)?,
            f64_to_rational(r.im).map_err(|_| Error::AmbiguousRoot)?,
        );
        let b = certify_root(p, center, Rational::new(BigInt::one(), BigInt::from(1u64 << 24)))
            .ok_or(Error::AmbiguousRoot)?;
        boxes.push(b);
    }
    // refine until pairwise disjoint
    for bits in [30u32, 60, 120, 240] {
        let mut disjoint = true;
        'outer: for i in 0..boxes.len() {
            for j in i + 1..boxes.len() {
                if boxes[i].overlaps(&boxes[j]) {
                    disjoint = false;
                    break 'outer;
                }
            }
        }
        if disjoint {
            break;
        }
        for b in boxes.iter_mut() {
            *b = refine_root(p, b.clone(), bits);
        }
    }
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            if boxes[i].overlaps(&boxes[j]) {
                return Err(Error::AmbiguousRoot);
            }
        }
    }
    let mut order: Vec<usize> = (0..boxes.len()).collect();
    order.sort_by(|&a, &b| {
        (boxes[a].re.lo.clone(), boxes[a].im.lo.clone())
            .partial_cmp(&(boxes[b].re.lo.clone(), boxes[b].im.lo.clone()))
            .unwrap()
    });
    let boxes: Vec<ComplexBox> = order.iter().map(|&i| boxes[i].clone()).collect();
    let roots: Vec<Complex64> = boxes.iter().map(|b| b.approx()).collect();
    Ok((boxes, roots))
}

/// Lagrange interpolation of the conjugation permutation on the roots,
/// rationally reconstructed. Returns candidate coordinates of conj(alpha);
/// the caller verifies exactly.
fn discover_conjugation(
    p: &Poly,
    roots: &[Complex64],
    _selected: usize,
) -> Option<Vec<Rational>> {
    let d = roots.len();
    // permutation induced by complex conjugation on the root list
    let mut perm = vec![usize::MAX; d];
    for (k, r) in roots.iter().enumerate() {
        let target = r.conj();
        let (m, dist) = roots
            .iter()
            .enumerate()
            .map(|(i, s)| (i, (s - target).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())?;
        if dist > 1e-6 {
            return None;
        }
        perm[k] = m;
    }
    let vals: Vec<Complex64> = perm.iter().map(|&m| roots[m]).collect();
    let _ = p;
    recognize_from_embeddings(roots, &vals)
}

/// Solves for rational coordinates c with sum c_j root_k^j = target_k for
/// every root, then reconstructs rationals from the float solution. This is
/// plain Lagrange interpolation; callers must verify candidates exactly.
pub fn recognize_from_embeddings(
    roots: &[Complex64],
    targets: &[Complex64],
) -> Option<Vec<Rational>> {
    let d = roots.len();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); d];
    for k in 0..d {
        // Lagrange basis polynomial for node k
        let mut basis = vec![Complex64::new(1.0, 0.0)];
        let mut denom = Complex64::new(1.0, 0.0);
        for (j, r) in roots.iter().enumerate() {
            if j == k {
                continue;
            }
            denom *= roots[k] - r;
            let mut next = vec![Complex64::new(0.0, 0.0); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i] -= b * r;
                next[i + 1] += b;
            }
            basis = next;
        }
        if denom.norm() < 1e-12 {
            return None;
        }
        let w = targets[k] / denom;
        for (i, b) in basis.iter().enumerate() {
            coeffs[i] += w * b;
        }
    }
    let mut out = Vec::with_capacity(d);
    for c in coeffs {
        if c.im.abs() > 1e-6 * (1.0 + c.re.abs()) {
            return None;
        }
        out.push(reconstruct_rational(c.re, 1_000_000)?);
    }
    Some(out)
}

fn tensor_unit(d1: usize, d2: usize, i: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d1 * d2];
    if i < d1 && j < d2 {
        v[i * d2 + j] = Rational::one();
    }
    v
}

fn mat_apply(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(a, b)| a * b)
                .fold(Rational::zero(), |acc, x| acc + x)
        })
        .collect()
}

/// Matrix of multiplication by gamma = alpha + c beta on the tensor basis
/// alpha^i beta^j (row-major over (i, j)).
fn tensor_mult_matrix(f1: &NumberField, f2: &NumberField, c: &Rational) -> Vec<Vec<Rational>> {
    let d1 = f1.degree;
    let d2 = f2.degree;
    let dim = d1 * d2;
    let a_red = |i: usize| -> Vec<Rational> {
        if i < d1 {
            let mut v = vec![Rational::zero(); d1];
            v[i] = Rational::one();
            v
        } else {
            reduce_power_mod(f1.minpoly(), i)
        }
    };
    let b_red = |j: usize| -> Vec<Rational> {
        if j < d2 {
            let mut v = vec![Rational::zero(); d2];
            v[j] = Rational::one();
            v
        } else {
            reduce_power_mod(f2.minpoly(), j)
        }
    };
    let mut m = vec![vec![Rational::zero(); dim]; dim];
    for i in 0..d1 {
        for j in 0..d2 {
            let col = i * d2 + j;
            // alpha * basis
            let ar = a_red(i + 1);
            for (ii, av) in ar.iter().enumerate() {
                if !av.is_zero() {
                    m[ii * d2 + j][col] += av;
                }
            }
            // c * beta * basis
            let br = b_red(j + 1);
            for (jj, bv) in br.iter().enumerate() {
                if !bv.is_zero() {
                    m[i * d2 + jj][col] += c * bv;
                }
            }
        }
    }
    m
}

/// Tensor coordinates of conj(alpha) + c conj(beta).
fn tensor_conj_gamma(f1: &NumberField, f2: &NumberField, c: &Rational) -> Vec<Rational> {
    let d1 = f1.degree;
    let d2 = f2.degree;
    let mut v = vec![Rational::zero(); d1 * d2];
    for (i, a) in f1.conj_coords.iter().enumerate() {
        if !a.is_zero() {
            v[i * d2] += a;
        }
    }
    for (j, b) in f2.conj_coords.iter().enumerate() {
        if !b.is_zero() {
            v[j] += c * b;
        }
    }
    v
}

/// Extended gcd over Q[x]: returns (g, u, v) with u a + v b = g.
fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i64};

    fn q_isqrt3() -> Arc<NumberField> {
        NumberField::quadratic(-3).unwrap()
    }

    #[test]
    fn quadratic_imaginary_basics() {
        let f = q_isqrt3();
        let a = f.generator();
        // alpha^2 = -3
        assert_eq!(a.mul(&a), f.from_i64(-3));
        // conj(alpha) = -alpha
        assert_eq!(a.conj(), a.neg());
        // (1 + alpha)^-1 = (1 - alpha)/4
        let e = f.from_i64(1).add(&a);
        let inv = e.inv().unwrap();
        let expected = f.from_i64(1).sub(&a).scale(&rat(1, 4));
        assert_eq!(inv, expected);
        assert_eq!(e.mul(&inv), f.from_i64(1));
    }

    #[test]
    fn rationals_degree_one() {
        let q = NumberField::rationals();
        assert_eq!(q.degree(), 1);
        let x = q.from_rational(rat(7, 3));
        assert_eq!(x.conj(), x);
        assert_eq!(x.mul(&x), q.from_rational(rat(49, 9)));
    }

    #[test]
    fn create_via_new_discovers_conjugation() {
        // x^2 + 3 with hint 1.7i, conjugation discovered as -alpha
        let p = Poly::new(vec![rat_i64(3), rat_i64(0), rat_i64(1)]);
        let f = NumberField::new(p, Complex64::new(0.0, 1.7), None).unwrap();
        let a = f.generator();
        assert_eq!(a.conj(), a.neg());
        assert!(!f.warn_unchecked);
    }

    #[test]
    fn embeddings_are_certified() {
        let f = q_isqrt3();
        let a = f.generator();
        let b = a.embed(40);
        assert!(rational_to_f64(&b.width()) <= 2f64.powi(-40));
        assert!((b.approx() - Complex64::new(0.0, 3.0f64.sqrt())).norm() < 1e-10);
        let half = f.from_i64(1).add(&a).scale(&rat(1, 2));
        let hb = half.embed(40);
        assert!((hb.approx() - Complex64::new(0.5, 0.8660254)).norm() < 1e-6);
        // homomorphism up to widening: embed(a*b) overlaps embed(a)embed(b)
        let prod = a.mul(&half);
        let pb = prod.embed(30);
        let wide = a.embed(30).mul(&half.embed(30));
        assert!(pb.overlaps(&wide));
    }

    #[test]
    fn sign_of_real_elements() {
        let f = NumberField::quadratic(15).unwrap();
        let s = f.generator(); // sqrt 15 > 0
        assert_eq!(s.sign_real().unwrap(), Sign::Positive);
        let e = f.from_i64(4).sub(&s); // 4 - sqrt15 ~ 0.127
        assert_eq!(e.sign_real().unwrap(), Sign::Positive);
        let e = f.from_i64(-4).add(&s); // sqrt15 - 4 < 0
        assert_eq!(e.sign_real().unwrap(), Sign::Negative);
        assert_eq!(f.from_i64(0).sign_real().unwrap(), Sign::Zero);
    }

    #[test]
    fn subfields_of_biquadratic() {
        // Q(sqrt15, i), the arithmetic example field
        let (e, sqrt15, i) = NumberField::compose(
            &NumberField::quadratic(15).unwrap(),
            &NumberField::gaussian(),
        )
        .unwrap();
        assert_eq!(e.degree(), 4);
        assert_eq!(sqrt15.mul(&sqrt15), e.from_i64(15));
        assert_eq!(i.mul(&i), e.from_i64(-1));
        assert_eq!(i.conj(), i.neg());
        assert_eq!(sqrt15.conj(), sqrt15);

        let f = subfield_generated(&e, &[sqrt15.clone()]).unwrap();
        assert_eq!(f.dimension(), 2);
        // i is not in the real subfield Q(sqrt15)
        assert!(f.contains(&i).is_none());
        // (4+sqrt15)^2 = 31 + 8 sqrt15 is, with certificate
        let g = e.from_i64(4).add(&sqrt15);
        let g2 = g.mul(&g);
        let cert = f.contains(&g2).expect("membership");
        assert!(f.verify_certificate(&g2, &cert));
        // spot value: coordinates over {1, sqrt15} after echelon reduction
        let one = f.contains(&e.from_i64(31).add(&sqrt15.scale(&rat_i64(8)))).unwrap();
        assert_eq!(one, cert);

        let full = subfield_generated(&e, &[sqrt15.clone(), i.clone()]).unwrap();
        assert_eq!(full.dimension(), 4);
    }

    #[test]
    fn subfield_of_cyclotomic12() {
        let f = NumberField::cyclotomic(12).unwrap();
        assert_eq!(f.degree(), 4);
        let z = f.generator();
        let gen = z.add(&z.inv().unwrap()); // 2 cos(pi/6) = sqrt3
        let sub = subfield_generated(&f, &[gen.clone()]).unwrap();
        assert_eq!(sub.dimension(), 2);
        // (zeta + zeta^-1)^2 = 3
        assert_eq!(gen.mul(&gen), f.from_i64(3));
        // idempotence: regenerating from the basis returns the same span
        let again = subfield_generated(&f, sub.basis()).unwrap();
        assert!(sub.span_equals(&again));
    }

    #[test]
    fn trivial_subfield_is_q() {
        let f = q_isqrt3();
        let sub = subfield_generated(&f, &[]).unwrap();
        assert_eq!(sub.dimension(), 1);
        let c = sub.contains(&f.from_rational(rat(7, 3))).unwrap();
        assert_eq!(c, vec![rat(7, 3)]);
    }

    #[test]
    fn sqrt_and_special_elements() {
        let (e, _s, i) = NumberField::compose(
            &NumberField::quadratic(15).unwrap(),
            &NumberField::gaussian(),
        )
        .unwrap();
        let i2 = e.imaginary_unit().unwrap();
        assert_eq!(i2.mul(&i2), e.from_i64(-1));
        assert!(i2 == i || i2 == i.neg());
        // +i, not -i
        assert!(i2.embed(30).im.lo.is_positive());
        assert!(e.omega().is_none());

        let c12 = NumberField::cyclotomic(12).unwrap();
        let w = c12.omega().unwrap();
        let w3 = w.pow(3).unwrap();
        assert_eq!(w3, c12.from_i64(1));
        assert!(w != c12.from_i64(1));
    }

    #[test]
    fn cyclotomic24_conjugation() {
        let f = NumberField::cyclotomic(24).unwrap();
        assert_eq!(f.degree(), 8);
        assert!(f.warn_unchecked); // degree 8: accepted with warning
        let z = f.generator();
        assert_eq!(z.conj(), z.inv().unwrap());
        // zeta^6 = i
        let i = z.pow(6).unwrap();
        assert_eq!(i.mul(&i), f.from_i64(-1));
    }

    #[test]
    fn reject_reducible_and_ambiguous() {
        let p = Poly::new(vec![rat_i64(-1), rat_i64(0), rat_i64(1)]); // x^2-1
        assert!(matches!(
            NumberField::new(p, Complex64::new(1.0, 0.0), None),
            Err(Error::ReducibleMinimalPolynomial(_))
        ));
        // hint exactly between the two roots of x^2+3
        let p = Poly::new(vec![rat_i64(3), rat_i64(0), rat_i64(1)]);
        assert!(matches!(
            NumberField::new(p, Complex64::new(5.0, 0.0), None),
            Err(Error::AmbiguousRoot)
        ));
    }
}
