//! Arithmetic of unitary groups over CM fields: Galois-conjugate Hermitian
//! forms, admissible pairs, integrality over the ring of integers, trace
//! growth of loxodromic elements, and the trace-field dichotomy.
//!
//! Forms here have any size (n+1); only the cross-module SU(2,1) pipelines
//! are pinned to 3x3. Signature computations at non-identity places never
//! need the place to be induced by an internal automorphism: leading data
//! stays in E and only certified signs at the selected root are consulted.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hermitian::HermitianForm;
use crate::interval::eval_poly_box;
use crate::linalg;
use crate::matrix::Matrix;
use crate::numberfield::{subfield_generated, FieldElement, NumberField, SubfieldBasis};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::words::{enumerate_words, Word};

/// A CM extension E/F: E totally imaginary of degree 2d, F = E ^ conj
/// totally real of degree d, with one representative root per conjugate
/// pair of embeddings (the identity place first).
#[derive(Debug, Clone)]
pub struct CMExtension {
    e: Arc<NumberField>,
    f_basis: SubfieldBasis,
    /// Root indices of the representative embeddings tau_i, tau_1 = id.
    places: Vec<usize>,
}

impl CMExtension {
    pub fn new(e: Arc<NumberField>) -> Result<Self> {
        let deg = e.degree();
        if deg % 2 != 0 || deg == 0 {
            return Err(Error::NotCmExtension(format!(
                "degree {deg} is not twice a totally real degree"
            )));
        }
        if e.minpoly().count_real_roots() != 0 {
            return Err(Error::NotCmExtension(
                "E has a real embedding, so it is not totally imaginary".into(),
            ));
        }
        // fixed field of conjugation, as the kernel of (conj - id) over Q
        let d = deg / 2;
        let mut rows: Vec<Vec<Rational>> = vec![];
        for j in 0..deg {
            let mut coords = vec![Rational::zero(); deg];
            coords[j] = Rational::one();
            let b = e.element(coords.clone())?;
            let diff = b.conj().sub(&b);
            rows.push(diff.coords().to_vec());
        }
        // kernel of the transpose action: solve (C - I) x = 0 where columns
        // are images; build the matrix with rows = images and take the null
        // space of its transpose via rref of the stacked system
        let mat: Vec<Vec<Rational>> = (0..deg)
            .map(|i| (0..deg).map(|j| rows[j][i].clone()).collect())
            .collect();
        let kernel = rational_nullspace(&mat);
        if kernel.len() != d {
            return Err(Error::NotCmExtension(format!(
                "fixed field of conjugation has degree {} but E has degree {deg}",
                kernel.len()
            )));
        }
        let kernel_elems: Result<Vec<FieldElement>> =
            kernel.into_iter().map(|c| e.element(c)).collect();
        let f_basis = subfield_generated(&e, &kernel_elems?)?;
        if f_basis.dimension() != d {
            return Err(Error::NotCmExtension(
                "fixed field is not closed of the expected degree".into(),
            ));
        }
        // F totally real: a primitive element's minimal polynomial has all
        // real roots
        let prim = primitive_element(&f_basis)?;
        let minpoly_f = minimal_polynomial_over_q(&prim)?;
        if minpoly_f.degree() != d || minpoly_f.count_real_roots() != d {
            return Err(Error::NotCmExtension(
                "fixed field of conjugation is not totally real".into(),
            ));
        }
        // pair the roots under conjugation and pick representatives
        let roots = e.roots_approx();
        let mut used = vec![false; roots.len()];
        let mut places = vec![e.selected_root_index()];
        used[e.selected_root_index()] = true;
        let partner = |k: usize, roots: &[Complex64]| -> usize {
            let target = roots[k].conj();
            roots
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    (*a - target)
                        .norm()
                        .partial_cmp(&(*b - target).norm())
                        .unwrap()
                })
                .map(|(i, _)| i)
                .unwrap()
        };
        used[partner(e.selected_root_index(), &roots)] = true;
        for k in 0..roots.len() {
            if !used[k] {
                used[k] = true;
                used[partner(k, &roots)] = true;
                places.push(k);
            }
        }
        if places.len() != d {
            return Err(Error::NotCmExtension(
                "could not pair embeddings under conjugation".into(),
            ));
        }
        Ok(CMExtension { e, f_basis, places })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.e
    }

    pub fn fixed_field(&self) -> &SubfieldBasis {
        &self.f_basis
    }

    pub fn place_count(&self) -> usize {
        self.places.len()
    }

    pub fn place_root_index(&self, i: usize) -> usize {
        self.places[i]
    }

    pub fn place_approx(&self, i: usize) -> Complex64 {
        self.e.roots_approx()[self.places[i]]
    }

    /// Certified sign of the image of a conjugation-fixed element under the
    /// i-th place.
    pub fn sign_at_place(&self, x: &FieldElement, place: usize) -> Result<Ordering> {
        if !x.is_real() {
            return Err(Error::InternalContradiction(
                "sign at a place requested for an element outside F".into(),
            ));
        }
        if x.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(r) = x.as_rational() {
            return Ok(if r.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            });
        }
        let g = Poly::new(x.coords().to_vec());
        let root = self.places[place];
        let mut bits = 30u32;
        for _ in 0..12 {
            let b = self.e.refined_root_box(root, bits);
            let img = eval_poly_box(&g, &b);
            if img.re.is_positive() {
                return Ok(Ordering::Greater);
            }
            if img.re.is_negative() {
                return Ok(Ordering::Less);
            }
            bits *= 2;
        }
        Err(Error::InternalContradiction(
            "sign of a nonzero element did not resolve at the place".into(),
        ))
    }

    /// The image of the form under the i-th place as an exact matrix over
    /// E, when the place is induced by a recorded automorphism of E.
    pub fn galois_conjugate_form(
        &self,
        h: &Matrix<FieldElement>,
        place: usize,
    ) -> Result<Matrix<FieldElement>> {
        if place == 0 {
            return Ok(h.clone());
        }
        // a place is the conjugate pair {tau, conj tau}: match either
        let target = self.places[place];
        let roots = self.e.roots_approx();
        let conj_target = roots
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                (*a - roots[target].conj())
                    .norm()
                    .partial_cmp(&(*b - roots[target].conj()).norm())
                    .unwrap()
            })
            .map(|(i, _)| i)
            .unwrap_or(target);
        let auto = self
            .e
            .automorphisms()
            .iter()
            .find(|g| {
                let idx = self.e.root_index_of_element(g);
                idx == Some(target) || idx == Some(conj_target)
            })
            .cloned()
            .ok_or_else(|| {
                Error::FieldRepresentationFailure(format!(
                    "place {place} is not induced by a recorded automorphism of E; \
                     signatures remain available via certified embeddings"
                ))
            })?;
        let g_elt = self.e.element(auto)?;
        let out = h.map(|entry| apply_polynomial_map(entry, &g_elt));
        // tau commutes with conjugation on a CM field, so the image must
        // still be Hermitian
        if out != out.conj_transpose() {
            return Err(Error::InternalContradiction(
                "Galois image of a Hermitian form lost Hermitian symmetry".into(),
            ));
        }
        Ok(out)
    }

    /// Signature of ^tau_i H by congruence diagonalization with certified
    /// sign decisions at the place. Works for every place, internal
    /// automorphism or not.
    pub fn signature_at_place(
        &self,
        h: &Matrix<FieldElement>,
        place: usize,
    ) -> Result<(usize, usize)> {
        let n = h.n();
        let mut m = h.clone();
        let mut pos = 0usize;
        let mut neg = 0usize;
        let mut start = 0usize;
        while start < n {
            let mut pivot: Option<usize> = None;
            for i in start..n {
                if !m.at(i, i).is_zero() {
                    pivot = Some(i);
                    break;
                }
            }
            if pivot.is_none() {
                let mut offdiag: Option<(usize, usize)> = None;
                'search: for i in start..n {
                    for jj in start..n {
                        if i != jj && !m.at(i, jj).is_zero() {
                            offdiag = Some((i, jj));
                            break 'search;
                        }
                    }
                }
                match offdiag {
                    None => return Err(Error::DegenerateForm),
                    Some((i, jj)) => {
                        let c = m.at(i, jj).conj();
                        for k in 0..n {
                            let add = c.conj().mul(m.at(jj, k));
                            let v = m.at(i, k).add(&add);
                            m.set(i, k, v);
                        }
                        for k in 0..n {
                            let add = m.at(k, jj).mul(&c);
                            let v = m.at(k, i).add(&add);
                            m.set(k, i, v);
                        }
                        pivot = Some(i);
                    }
                }
            }
            let p = pivot.unwrap();
            if p != start {
                for k in 0..n {
                    let a = m.at(p, k).clone();
                    let b = m.at(start, k).clone();
                    m.set(p, k, b);
                    m.set(start, k, a);
                }
                for k in 0..n {
                    let a = m.at(k, p).clone();
                    let b = m.at(k, start).clone();
                    m.set(k, p, b);
                    m.set(k, start, a);
                }
            }
            let d = m.at(start, start).clone();
            match self.sign_at_place(&d, place)? {
                Ordering::Greater => pos += 1,
                Ordering::Less => neg += 1,
                Ordering::Equal => return Err(Error::DegenerateForm),
            }
            let dinv = d.inv()?;
            for i in start + 1..n {
                let f = m.at(i, start).mul(&dinv);
                if f.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let delta = f.mul(m.at(start, k));
                    let v = m.at(i, k).sub(&delta);
                    m.set(i, k, v);
                }
                for k in 0..n {
                    let delta = m.at(k, start).mul(&f.conj());
                    let v = m.at(k, i).sub(&delta);
                    m.set(k, i, v);
                }
            }
            start += 1;
        }
        Ok((pos, neg))
    }
}

/// Admissibility verdict with the per-place signatures.
#[derive(Debug, Clone)]
pub struct AdmissiblePair {
    pub admissible: bool,
    pub signatures: Vec<(usize, usize)>,
}

/// (H, E/F) is admissible when H has signature (n,1) at the identity place
/// (up to an overall sign, which does not change the unitary group) and is
/// definite at every other place (the compact condition).
pub fn is_admissible(h: &Matrix<FieldElement>, ext: &CMExtension) -> Result<AdmissiblePair> {
    let n = h.n() - 1;
    let mut signatures = vec![];
    let s0 = ext.signature_at_place(h, 0)?;
    if s0 != (n, 1) && s0 != (1, n) {
        return Err(Error::WrongSignatureAtIdentity);
    }
    signatures.push(s0);
    let mut admissible = true;
    for place in 1..ext.place_count() {
        let s = ext.signature_at_place(h, place)?;
        if s.0 != 0 && s.1 != 0 {
            admissible = false;
        }
        signatures.push(s);
    }
    Ok(AdmissiblePair {
        admissible,
        signatures,
    })
}

/// A Z-basis of an order in E (the maximal order when constructed by
/// [`maximal_order`]), with exact membership tests.
#[derive(Debug, Clone)]
pub struct IntegralBasis {
    field: Arc<NumberField>,
    basis: Vec<FieldElement>,
    /// Rows of the basis in power-basis coordinates, for solving.
    rows: Vec<Vec<Rational>>,
}

impl IntegralBasis {
    /// Wraps user-supplied elements, verifying each is an algebraic integer
    /// and that they span a full-rank lattice.
    pub fn from_elements(field: &Arc<NumberField>, elems: Vec<FieldElement>) -> Result<Self> {
        if elems.len() != field.degree() {
            return Err(Error::NoIntegralBasis(
                "integral basis must have one element per field degree".into(),
            ));
        }
        for b in &elems {
            let mp = minimal_polynomial_over_q(b)?;
            if !poly_is_integer_monic(&mp) {
                return Err(Error::NoIntegralBasis(
                    "a supplied basis element is not an algebraic integer".into(),
                ));
            }
        }
        let rows: Vec<Vec<Rational>> = elems.iter().map(|b| b.coords().to_vec()).collect();
        if linalg::rref(&rows).len() != field.degree() {
            return Err(Error::NoIntegralBasis(
                "supplied basis elements are linearly dependent".into(),
            ));
        }
        Ok(IntegralBasis {
            field: field.clone(),
            basis: elems,
            rows,
        })
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// Coordinates of x over the basis, when x lies in the spanned lattice
    /// tensor Q; integrality means all coordinates are integers.
    pub fn coordinates(&self, x: &FieldElement) -> Option<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = (0..self.field.degree())
            .map(|i| self.rows.iter().map(|r| r[i].clone()).collect())
            .collect();
        linalg::solve_square(&cols, x.coords())
    }

    pub fn contains_integral(&self, x: &FieldElement) -> bool {
        match self.coordinates(x) {
            Some(c) => c.iter().all(|r| r.denom().is_one()),
            None => false,
        }
    }
}

/// The ring of integers O_E for fields of degree at most 4, computed by
/// saturating the order generated by a scaled integral generator at every
/// prime whose square divides the discriminant. Each enlargement is found
/// by testing all index-p denominators, so the result is provably maximal.
pub fn maximal_order(field: &Arc<NumberField>) -> Result<IntegralBasis> {
    let d = field.degree();
    if d > 4 {
        return Err(Error::NoIntegralBasis(format!(
            "maximal orders are constructed only for degree <= 4 (got {d}); \
             supply an integral basis explicitly"
        )));
    }
    // theta = c alpha is an algebraic integer for c clearing denominators
    let mut c = BigInt::one();
    for coeff in field.minpoly().coeffs() {
        c = num_integer::lcm(c, coeff.denom().clone());
    }
    let theta = field.generator().scale(&Rational::from_integer(c));
    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|k| theta.pow(k as i64).unwrap().coords().to_vec())
        .collect();
    loop {
        rows = linalg::lattice_hnf(&rows);
        let basis: Vec<FieldElement> = rows
            .iter()
            .map(|r| field.element(r.clone()).unwrap())
            .collect();
        let disc = order_discriminant(&basis)?;
        let mut enlarged = false;
        for p in primes_with_square_dividing(&disc)? {
            if let Some(extra) = find_denominator_p(&basis, &p)? {
                rows.push(extra.coords().to_vec());
                enlarged = true;
                break;
            }
        }
        if !enlarged {
            return Ok(IntegralBasis {
                field: field.clone(),
                basis,
                rows,
            });
        }
    }
}

/// Trace form discriminant det(Tr(b_i b_j)) of an order basis.
fn order_discriminant(basis: &[FieldElement]) -> Result<BigInt> {
    let d = basis.len();
    let gram: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| field_trace(&basis[i].mul(&basis[j])))
                .collect()
        })
        .collect();
    let det = rational_det(&gram);
    if !det.denom().is_one() {
        return Err(Error::InternalContradiction(
            "order discriminant is not an integer".into(),
        ));
    }
    if det.is_zero() {
        return Err(Error::InternalContradiction(
            "order basis is degenerate".into(),
        ));
    }
    Ok(det.numer().clone())
}

/// Tr_{E/Q}: the trace of the multiplication-by-x operator.
pub fn field_trace(x: &FieldElement) -> Rational {
    let d = x.field().degree();
    let mut tr = Rational::zero();
    for k in 0..d {
        let mut coords = vec![Rational::zero(); d];
        coords[k] = Rational::one();
        let basis_elt = x.field().element(coords).unwrap();
        tr += x.mul(&basis_elt).coords()[k].clone();
    }
    tr
}

/// Primes p with p^2 dividing n, by trial division. Errors if the residual
/// cofactor cannot be certified squarefree at desk scale.
fn primes_with_square_dividing(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut n = n.abs();
    let mut out = vec![];
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &p * &p <= n && p <= limit {
        if (&n % &p).is_zero() {
            let mut mult = 0;
            while (&n % &p).is_zero() {
                n = &n / &p;
                mult += 1;
            }
            if mult >= 2 {
                out.push(p.clone());
            }
        }
        p += 1u32;
    }
    if n > BigInt::one() {
        // residual cofactor with no factor below 1e6: it contributes a
        // square only if it is one, which we can test directly
        let r = n.sqrt();
        if &r * &r == n {
            return Err(Error::NoIntegralBasis(
                "discriminant has a large square cofactor; cannot certify maximality".into(),
            ));
        }
    }
    Ok(out)
}

/// Searches for an algebraic integer of the form (sum e_i b_i)/p with
/// e in F_p^d, first nonzero coordinate 1. Any index-p enlargement of a
/// non-maximal order contains such an element.
fn find_denominator_p(basis: &[FieldElement], p: &BigInt) -> Result<Option<FieldElement>> {
    let d = basis.len();
    let pr = Rational::from_integer(p.clone());
    let pu = p
        .to_string()
        .parse::<u64>()
        .map_err(|_| Error::NoIntegralBasis("saturation prime too large".into()))?;
    let mut e = vec![0u64; d];
    loop {
        // advance to next vector with first nonzero = 1
        let mut k = d;
        while k > 0 {
            k -= 1;
            e[k] += 1;
            if e[k] < pu {
                break;
            }
            e[k] = 0;
            if k == 0 {
                return Ok(None);
            }
        }
        if let Some(first) = e.iter().position(|&x| x != 0) {
            if e[first] != 1 {
                continue;
            }
        } else {
            continue;
        }
        let mut cand = basis[0].zero_like();
        for (ei, b) in e.iter().zip(basis) {
            if *ei != 0 {
                cand = cand.add(&b.scale(&Rational::from_integer(BigInt::from(*ei))));
            }
        }
        let cand = cand.scale(&(Rational::one() / pr.clone()));
        let mp = minimal_polynomial_over_q(&cand)?;
        if poly_is_integer_monic(&mp) {
            return Ok(Some(cand));
        }
    }
}

/// True iff every entry of the matrix is integral over the given order.
pub fn is_integral(m: &Matrix<FieldElement>, order: &IntegralBasis) -> bool {
    m.flatten().iter().all(|x| order.contains_integral(x))
}

/// Minimal polynomial of a field element over Q, monic.
pub fn minimal_polynomial_over_q(x: &FieldElement) -> Result<Poly> {
    let d = x.field().degree();
    let mut pows: Vec<Vec<Rational>> = vec![];
    let mut acc = x.field().from_i64(1);
    for _ in 0..=d {
        pows.push(acc.coords().to_vec());
        acc = acc.mul(x);
    }
    for k in 1..=d {
        let basis = linalg::rref(&pows[..k].to_vec());
        if basis.len() < k {
            continue;
        }
        if let Some(coeffs) = solve_in_rows(&pows[..k], &pows[k]) {
            let mut poly = vec![Rational::zero(); k + 1];
            poly[k] = Rational::one();
            for (j, c) in coeffs.iter().enumerate() {
                poly[j] = -c.clone();
            }
            return Ok(Poly::new(poly));
        }
    }
    Err(Error::InternalContradiction(
        "element has no minimal polynomial of degree <= field degree".into(),
    ))
}

fn solve_in_rows(rows: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    // solve sum c_i rows[i] = target by square elimination on the stacked
    // transpose (rows are short, dimension <= 4)
    let k = rows.len();
    let dim = target.len();
    let mut aug: Vec<Vec<Rational>> = (0..dim)
        .map(|r| {
            let mut row: Vec<Rational> = rows.iter().map(|v| v[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = vec![];
    let mut used = vec![false; dim];
    for var in 0..k {
        let r = (0..dim).find(|&r| !used[r] && !aug[r][var].is_zero())?;
        used[r] = true;
        let pinv = Rational::one() / aug[r][var].clone();
        for j in 0..=k {
            aug[r][j] = &aug[r][j] * &pinv;
        }
        for rr in 0..dim {
            if rr != r && !aug[rr][var].is_zero() {
                let f = aug[rr][var].clone();
                for j in 0..=k {
                    let delta = &f * &aug[r][j];
                    aug[rr][j] -= delta;
                }
            }
        }
        pivots.push((var, r));
    }
    for r in 0..dim {
        if !used[r] && !aug[r][k].is_zero() {
            return None;
        }
    }
    let mut out = vec![Rational::zero(); k];
    for (var, r) in pivots {
        out[var] = aug[r][k].clone();
    }
    Some(out)
}

fn poly_is_integer_monic(p: &Poly) -> bool {
    p.is_monic() && p.coeffs().iter().all(|c| c.denom().is_one())
}

fn rational_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        det *= piv.clone();
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &piv;
            for j in col..n {
                let delta = &f * &a[col][j];
                a[i][j] -= delta;
            }
        }
    }
    det
}

fn rational_nullspace(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let rref = linalg::rref(m);
    let pivot_cols: Vec<usize> = rref
        .iter()
        .map(|r| r.iter().position(|v| !v.is_zero()).unwrap())
        .collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); n];
            v[fc] = Rational::one();
            for (row, &pc) in rref.iter().zip(&pivot_cols) {
                v[pc] = -row[fc].clone();
            }
            v
        })
        .collect()
}

fn primitive_element(f: &SubfieldBasis) -> Result<FieldElement> {
    let d = f.dimension();
    // try basis elements, then small sums
    let mut cands: Vec<FieldElement> = f.basis().to_vec();
    for i in 1..f.basis().len() {
        for j in i + 1..f.basis().len() {
            cands.push(f.basis()[i].add(&f.basis()[j]));
        }
    }
    if f.basis().len() >= 3 {
        let mut acc = f.basis()[1].clone();
        for (k, b) in f.basis().iter().enumerate().skip(2) {
            acc = acc.add(&b.scale(&Rational::from_integer(BigInt::from(k))));
        }
        cands.push(acc);
    }
    for c in cands {
        let mp = minimal_polynomial_over_q(&c)?;
        if mp.degree() == d {
            return Ok(c);
        }
    }
    Err(Error::NotCmExtension(
        "no primitive element found for the fixed field".into(),
    ))
}

fn apply_polynomial_map(entry: &FieldElement, g: &FieldElement) -> FieldElement {
    let mut acc = g.zero_like();
    let mut pow = g.one_like();
    for c in entry.coords() {
        acc = acc.add(&pow.scale(c));
        pow = pow.mul(g);
    }
    acc
}

/// Trace growth report for a loxodromic element.
#[derive(Debug, Clone)]
pub struct TraceGrowthReport {
    pub traces: Vec<f64>,
    pub lambda_modulus: f64,
    /// |Tr g^m| >= |lambda|^m - (n+1) held for every m computed.
    pub dominates: bool,
}

/// |Tr gamma^m| for m = 1..m_max; requires an eigenvalue off the unit
/// circle. The sequence realizes the unbounded-trace argument: at a
/// compact place the same sequence would be bounded by the matrix size.
pub fn trace_growth<T: Scalar>(gamma: &Matrix<T>, m_max: usize) -> Result<TraceGrowthReport> {
    let evs = eigenvalue_moduli_approx(gamma);
    let lambda_modulus = evs.iter().cloned().fold(0.0f64, f64::max);
    if lambda_modulus < 1.0 + 1e-6 {
        return Err(Error::NotLoxodromic);
    }
    let n = gamma.n() as f64;
    let mut traces = vec![];
    let mut acc = gamma.clone();
    let mut dominates = true;
    for m in 1..=m_max {
        let t = acc.trace().approx().norm();
        let bound = lambda_modulus.powi(m as i32) - n;
        if t < bound - 1e-6 * bound.abs().max(1.0) {
            dominates = false;
        }
        traces.push(t);
        if m < m_max {
            acc = acc.mul(gamma);
        }
    }
    Ok(TraceGrowthReport {
        traces,
        lambda_modulus,
        dominates,
    })
}

/// Certified bound |Tr((^tau gamma)^m)| <= size for every m up to m_max:
/// the executable half of the compactness argument. Exact: checks
/// size^2 - |Tr|^2 >= 0 at the place.
pub fn compact_place_trace_bound(
    gamma: &Matrix<FieldElement>,
    ext: &CMExtension,
    place: usize,
    m_max: usize,
) -> Result<bool> {
    let size = gamma.n() as i64;
    let field = gamma.sample().field().clone();
    let bound = field.from_i64(size * size);
    let mut acc = gamma.clone();
    for _ in 1..=m_max {
        let tr = acc.trace();
        let margin = bound.sub(&tr.norm_sq());
        if ext.sign_at_place(&margin, place)? == Ordering::Less {
            return Ok(false);
        }
        acc = acc.mul(gamma);
    }
    Ok(true)
}

/// Verdict of the trace-field dichotomy for subgroups of SU(H, O_E).
#[derive(Debug, Clone)]
pub enum DichotomyVerdict {
    EqualsE,
    EqualsF,
    /// The computed trace field escapes E; the witness trace is reported.
    Violation { word: Word, trace: FieldElement },
    /// The computed field sits strictly inside E (and differs from F);
    /// a larger depth may settle it.
    Undetermined { dims: Vec<usize> },
}

#[derive(Debug, Clone)]
pub struct DichotomyReport {
    pub verdict: DichotomyVerdict,
    pub trace_field_dims: Vec<usize>,
    pub loxodromic_word: Word,
    pub integral_checked: bool,
}

/// Computes the trace field of the group and reports whether it equals E,
/// equals F, or violates containment in E (possible only when generators
/// are allowed outside O_E). Generators must preserve `h`; integrality
/// over `order` is required unless `allow_nonintegral`.
#[allow(clippy::too_many_arguments)]
pub fn trace_dichotomy(
    gens: &[Matrix<FieldElement>],
    h: &HermitianForm<FieldElement>,
    e_sub: &SubfieldBasis,
    f_sub: &SubfieldBasis,
    order: Option<&IntegralBasis>,
    allow_nonintegral: bool,
    depth: usize,
) -> Result<DichotomyReport> {
    for g in gens {
        if !h.is_unitary(g, 0.0) {
            return Err(Error::NotUnitary);
        }
        let det = g.det();
        if !det.sub(&det.one_like()).is_zero() {
            return Err(Error::NotUnitary);
        }
    }
    let mut integral_checked = false;
    if !allow_nonintegral {
        let order = order.ok_or_else(|| {
            Error::NoIntegralBasis("integrality check requires an integral basis".into())
        })?;
        for g in gens {
            if !is_integral(g, order) {
                return Err(Error::HypothesisNotCertified(
                    "a generator is not integral; pass --allow-nonintegral to waive".into(),
                ));
            }
        }
        integral_checked = true;
    }
    // a loxodromic word must exist within the depth
    let mut loxodromic: Option<Word> = None;
    for (w, m) in enumerate_words(gens, depth)? {
        let evs = eigenvalue_moduli_approx(&m);
        if evs.iter().any(|&x| x > 1.0 + 1e-7) {
            loxodromic = Some(w);
            break;
        }
    }
    let loxodromic_word = loxodromic.ok_or_else(|| {
        Error::HypothesisNotCertified(format!(
            "no loxodromic element found among words of length <= {depth}"
        ))
    })?;

    let ambient = gens[0].sample().field().clone();
    let mut dims = vec![];
    let mut field = None;
    let mut all_traces: Vec<(Word, FieldElement)> = vec![];
    for (w, m) in enumerate_words(gens, depth)? {
        all_traces.push((w, m.trace()));
    }
    for d in 1..=depth {
        let mut tgens = vec![];
        for (w, t) in &all_traces {
            if w.len() <= d {
                tgens.push(t.clone());
                tgens.push(t.conj());
            }
        }
        let sub = subfield_generated(&ambient, &tgens)?;
        dims.push(sub.dimension());
        field = Some(sub);
    }
    let tf = field.expect("depth >= 1");

    let verdict = if tf.span_equals(e_sub) {
        DichotomyVerdict::EqualsE
    } else if tf.span_equals(f_sub) {
        DichotomyVerdict::EqualsF
    } else if tf.is_subfield_of(e_sub) {
        DichotomyVerdict::Undetermined { dims: dims.clone() }
    } else {
        let (word, trace) = all_traces
            .iter()
            .find(|(_, t)| e_sub.contains(t).is_none())
            .cloned()
            .ok_or_else(|| {
                Error::InternalContradiction(
                    "trace field escapes E but every trace is in E".into(),
                )
            })?;
        DichotomyVerdict::Violation { word, trace }
    };
    Ok(DichotomyReport {
        verdict,
        trace_field_dims: dims,
        loxodromic_word,
        integral_checked,
    })
}

/// Eigenvalue moduli from the characteristic polynomial with float
/// coefficients (report-grade; sizes up to 4).
fn eigenvalue_moduli_approx<T: Scalar>(m: &Matrix<T>) -> Vec<f64> {
    let n = m.n();
    let a = m.approx();
    match n {
        1 => vec![a.at(0, 0).norm()],
        2 => {
            let tr = a.trace();
            let det = a.det();
            let disc = (tr * tr - det * 4.0).sqrt();
            vec![((tr + disc) * 0.5).norm(), ((tr - disc) * 0.5).norm()]
        }
        3 => crate::isometry::eigenvalues_3x3_approx(&a)
            .iter()
            .map(|z| z.norm())
            .collect(),
        _ => {
            // power iteration estimate of the spectral radius, plus its
            // inverse counterpart; enough for the loxodromic test
            let mut v: Vec<Complex64> = (0..n)
                .map(|k| Complex64::new(1.0 + k as f64 * 0.1, 0.3 * k as f64))
                .collect();
            let mut norm_est = 1.0;
            for _ in 0..200 {
                let mut w = vec![Complex64::new(0.0, 0.0); n];
                for (i, wi) in w.iter_mut().enumerate() {
                    for j in 0..n {
                        *wi += a.at(i, j) * v[j];
                    }
                }
                norm_est = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                for c in w.iter_mut() {
                    *c /= norm_est;
                }
                v = w;
            }
            vec![norm_est]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i64};

    fn q_sqrt15_i() -> (Arc<NumberField>, FieldElement, FieldElement) {
        NumberField::compose(
            &NumberField::quadratic(15).unwrap(),
            &NumberField::gaussian(),
        )
        .unwrap()
    }


    #[test]
    fn cm_extension_of_biquadratic() {
        let (e, sqrt15, i) = q_sqrt15_i();
        let ext = CMExtension::new(e.clone()).unwrap();
        assert_eq!(ext.place_count(), 2);
        assert_eq!(ext.fixed_field().dimension(), 2);
        assert!(ext.fixed_field().contains(&sqrt15).is_some());
        assert!(ext.fixed_field().contains(&i).is_none());
        // sign of sqrt15 flips at the nontrivial place
        assert_eq!(ext.sign_at_place(&sqrt15, 0).unwrap(), Ordering::Greater);
        assert_eq!(ext.sign_at_place(&sqrt15, 1).unwrap(), Ordering::Less);
    }

    #[test]
    fn gaussian_is_cm_with_one_place() {
        let f = NumberField::gaussian();
        let ext = CMExtension::new(f).unwrap();
        assert_eq!(ext.place_count(), 1);
        assert_eq!(ext.fixed_field().dimension(), 1);
    }

    #[test]
    fn reject_non_cm() {
        // Q(sqrt2) is totally real
        let f = NumberField::quadratic(2).unwrap();
        assert!(matches!(
            CMExtension::new(f),
            Err(Error::NotCmExtension(_))
        ));
    }

    #[test]
    fn galois_conjugate_of_example_form() {
        let (e, sqrt15, _i) = q_sqrt15_i();
        let ext = CMExtension::new(e.clone()).unwrap();
        let h = Matrix::from_rows(vec![
            vec![sqrt15.neg(), e.from_i64(0)],
            vec![e.from_i64(0), e.from_i64(1)],
        ]);
        // identity place returns H itself
        assert_eq!(ext.galois_conjugate_form(&h, 0).unwrap(), h);
        let h2 = ext.galois_conjugate_form(&h, 1).unwrap();
        // diag(-sqrt15, 1) -> diag(sqrt15, 1) when sqrt15 -> -sqrt15
        assert_eq!(*h2.at(0, 0), sqrt15.clone());
        assert_eq!(*h2.at(1, 1), e.from_i64(1));
        // applying the same real-place map twice returns H
        let h3 = ext.galois_conjugate_form(&h2, 1).unwrap();
        assert_eq!(h3, h);
        // the determinant maps to its tau-image: det(-sqrt15, 1 diag) = -sqrt15
        assert_eq!(h.det(), sqrt15.neg());
        assert_eq!(h2.det(), sqrt15.clone());
        // signatures: (1,1) at identity, (2,0) at the other place
        assert_eq!(ext.signature_at_place(&h, 0).unwrap(), (1, 1));
        assert_eq!(ext.signature_at_place(&h, 1).unwrap(), (2, 0));
    }

    #[test]
    fn admissibility_examples() {
        // (diag(1,1,-sqrt2), Q(i, sqrt2)) is admissible
        let (e, sqrt2, _i) = NumberField::compose(
            &NumberField::quadratic(2).unwrap(),
            &NumberField::gaussian(),
        )
        .unwrap();
        let ext = CMExtension::new(e.clone()).unwrap();
        let h = Matrix::from_rows(vec![
            vec![e.from_i64(1), e.from_i64(0), e.from_i64(0)],
            vec![e.from_i64(0), e.from_i64(1), e.from_i64(0)],
            vec![e.from_i64(0), e.from_i64(0), sqrt2.neg()],
        ]);
        let pair = is_admissible(&h, &ext).unwrap();
        assert!(pair.admissible);
        assert_eq!(pair.signatures, vec![(2, 1), (3, 0)]);
        // mixed signs at the conjugate place: not admissible
        let bad = Matrix::from_rows(vec![
            vec![e.from_i64(1), e.from_i64(0), e.from_i64(0)],
            vec![e.from_i64(0), sqrt2.neg(), e.from_i64(0)],
            vec![
                e.from_i64(0),
                e.from_i64(0),
                sqrt2.sub(&e.from_i64(3)),
            ],
        ]);
        let pair = is_admissible(&bad, &ext).unwrap();
        assert!(!pair.admissible);
        assert_eq!(pair.signatures[0], (1, 2));
        assert_eq!(pair.signatures[1], (2, 1));
        // d = 1: vacuously admissible
        let f = NumberField::gaussian();
        let ext1 = CMExtension::new(f.clone()).unwrap();
        let h1 = Matrix::from_rows(vec![
            vec![f.from_i64(1), f.from_i64(0), f.from_i64(0)],
            vec![f.from_i64(0), f.from_i64(1), f.from_i64(0)],
            vec![f.from_i64(0), f.from_i64(0), f.from_i64(-1)],
        ]);
        assert!(is_admissible(&h1, &ext1).unwrap().admissible);
        // wrong signature at identity
        let flat = Matrix::from_rows(vec![
            vec![f.from_i64(1), f.from_i64(0)],
            vec![f.from_i64(0), f.from_i64(1)],
        ]);
        assert!(matches!(
            is_admissible(&flat, &ext1),
            Err(Error::WrongSignatureAtIdentity)
        ));
    }

    #[test]
    fn maximal_orders_quadratic() {
        // Z[i] for Q(i)
        let f = NumberField::gaussian();
        let o = maximal_order(&f).unwrap();
        assert!(o.contains_integral(&f.generator()));
        assert!(!o.contains_integral(&f.from_rational(rat(1, 2))));
        // Q(sqrt5): ring of integers contains (1+sqrt5)/2
        let f5 = NumberField::quadratic(5).unwrap();
        let o5 = maximal_order(&f5).unwrap();
        let golden = f5
            .from_i64(1)
            .add(&f5.generator())
            .scale(&rat(1, 2));
        assert!(o5.contains_integral(&golden));
        let mp = minimal_polynomial_over_q(&golden).unwrap();
        assert!(poly_is_integer_monic(&mp));
        // Q(sqrt15): 15 = 3 mod 4, so just Z[sqrt15]
        let f15 = NumberField::quadratic(15).unwrap();
        let o15 = maximal_order(&f15).unwrap();
        assert!(o15.contains_integral(&f15.generator()));
        let half = f15.from_i64(1).add(&f15.generator()).scale(&rat(1, 2));
        assert!(!o15.contains_integral(&half));
    }

    #[test]
    fn maximal_order_biquadratic_refinement() {
        // O_{Q(sqrt15, i)} strictly contains Z[sqrt15, i]:
        // (1 + sqrt15 + i + i sqrt15)/2 = (1+i)(1+sqrt15)/2 is integral
        let (e, sqrt15, i) = q_sqrt15_i();
        let o = maximal_order(&e).unwrap();
        let gamma = e
            .from_i64(1)
            .add(&sqrt15)
            .add(&i)
            .add(&i.mul(&sqrt15))
            .scale(&rat(1, 2));
        let mp = minimal_polynomial_over_q(&gamma).unwrap();
        assert!(poly_is_integer_monic(&mp), "gamma is an algebraic integer");
        assert!(o.contains_integral(&gamma));
        // while (1 + sqrt15)/2 alone is not integral
        let half = e.from_i64(1).add(&sqrt15).scale(&rat(1, 2));
        assert!(!o.contains_integral(&half));
        // g^2 entries are integral: (4+sqrt15)[[4+sqrt15, 4],[4 sqrt15, 4+sqrt15]]
        let a = e.from_i64(4).add(&sqrt15);
        let g2 = Matrix::from_rows(vec![
            vec![a.mul(&a), a.scale(&rat_i64(4))],
            vec![a.mul(&sqrt15).scale(&rat_i64(4)), a.mul(&a)],
        ]);
        assert!(is_integral(&g2, &o));
        // (1/2) Id is not integral
        let half_id = Matrix::identity_like(&e.from_i64(0), 2).scale(&e.from_rational(rat(1, 2)));
        assert!(!is_integral(&half_id, &o));
    }

    #[test]
    fn trace_growth_of_dilation() {
        let f = NumberField::rationals();
        let d = crate::isometry::dilation(&f.from_i64(2)).unwrap();
        let report = trace_growth(&d, 12).unwrap();
        assert!((report.lambda_modulus - 2.0).abs() < 1e-9);
        assert!(report.dominates);
        // |Tr gamma^m| ~ 2^m + O(1)
        assert!((report.traces[11] - (4096.0 + 1.0 + 1.0 / 4096.0)).abs() < 1e-6);
        // an elliptic element is rejected
        let f2 = NumberField::gaussian();
        let rot = crate::isometry::vertical_rotation(&f2.generator()).unwrap();
        assert!(matches!(trace_growth(&rot, 5), Err(Error::NotLoxodromic)));
    }

    #[test]
    fn compact_place_bound_for_su11_sample() {
        // gamma = [[3+2sqrt2, 4+2sqrt2], [2+2sqrt2, 3+2sqrt2]] preserves
        // diag(1, -sqrt2) and is integral over Z[sqrt2, i]
        let (e, sqrt2, _i) = NumberField::compose(
            &NumberField::quadratic(2).unwrap(),
            &NumberField::gaussian(),
        )
        .unwrap();
        let ext = CMExtension::new(e.clone()).unwrap();
        let a = e.from_i64(3).add(&sqrt2.scale(&rat_i64(2)));
        let b = e.from_i64(4).add(&sqrt2.scale(&rat_i64(2)));
        let c = e.from_i64(2).add(&sqrt2.scale(&rat_i64(2)));
        let gamma = Matrix::from_rows(vec![vec![a.clone(), b], vec![c, a.clone()]]);
        let h = HermitianForm::diagonal(vec![e.from_i64(1), sqrt2.neg()]);
        assert!(h.is_unitary(&gamma, 0.0));
        assert_eq!(gamma.det(), e.from_i64(1));
        // identity place: trace grows
        let growth = trace_growth(&gamma, 10).unwrap();
        assert!(growth.lambda_modulus > 1.0);
        assert!(growth.dominates);
        // compact place: |Tr| <= 2 for all powers
        assert!(compact_place_trace_bound(&gamma, &ext, 1, 50).unwrap());
    }

    #[test]
    fn dichotomy_e_and_f() {
        // subgroup of SU(diag(1,1,-1), Z[i]) with a loxodromic: field E = Q(i)
        let f = NumberField::gaussian();
        let i = f.generator();
        let ext = CMExtension::new(f.clone()).unwrap();
        let e_sub = subfield_generated(&f, &[i.clone()]).unwrap();
        let f_sub = subfield_generated(&f, &[]).unwrap();
        let order = maximal_order(&f).unwrap();
        let h = HermitianForm::diagonal(vec![f.from_i64(1), f.from_i64(1), f.from_i64(-1)]);
        // real loxodromic in SO(2,1) block: [[2, sqrt3...]] use integer one:
        // [[1,0,0],[0,2,-?]]: build a hyperbolic in coords (2,3):
        // [[1,0,0],[0,3,...]]: 3^2 - 2*?: use [[0? -- simplest integral
        // loxodromic for diag(1,-1) block: [[3, ...]]: entries (3, 2; 2?):
        // 2x2 block [[3, 2],[2? ...]] hmm: use [[2,1],[1? no:
        // SU(1,1)-style over Z: [[3, 2], [2? -- need a*a - b*b = 1: (3,2*sqrt2)
        // instead: integral block for diag(1,-1): [[a,b],[b,a]] with a^2-b^2=1
        // has no integer solutions beyond identity; use the standard
        // [[2,1],[1,1]]-type in the split form: conjugate-free approach:
        // take g = [[1,0,0],[0,2,1],[0,3,2]]? check g* H g = H with
        // H = diag(1,1,-1): block [[2,1],[3,2]] must satisfy
        // [[2,3],[1,2]] diag(1,-1) [[2,1],[3,2]] = diag(1,-1):
        // [[4-9, 2-6],[2-6, 1-4]] = [[-5,-4],[-4,-3]] no.
        // Correct: real block M with M^T diag(1,-1) M = diag(1,-1):
        // M = [[cosh, sinh],[sinh, cosh]]: integer cosh/sinh impossible;
        // over Z[i] use [[1+i, 1],[1, 1-i]]: check below.
        let g = Matrix::from_rows(vec![
            vec![f.from_i64(1), f.from_i64(0), f.from_i64(0)],
            vec![f.from_i64(0), f.from_i64(1).add(&i), f.from_i64(1)],
            vec![f.from_i64(0), f.from_i64(1), f.from_i64(1).sub(&i)],
        ]);
        assert!(h.is_unitary(&g, 0.0));
        assert_eq!(g.det(), f.from_i64(1));
        let rot = Matrix::from_rows(vec![
            vec![i.clone(), f.from_i64(0), f.from_i64(0)],
            vec![f.from_i64(0), i.neg(), f.from_i64(0)],
            vec![f.from_i64(0), f.from_i64(0), f.from_i64(1)],
        ]);
        assert!(h.is_unitary(&rot, 0.0));
        assert_eq!(rot.det(), f.from_i64(1));
        let report = trace_dichotomy(
            &[g.clone(), rot],
            &h,
            &e_sub,
            &f_sub,
            Some(&order),
            false,
            3,
        )
        .unwrap();
        assert!(matches!(report.verdict, DichotomyVerdict::EqualsE));
        assert!(report.integral_checked);

        // real-entry subgroup: trace field F = Q
        let real_g = Matrix::from_rows(vec![
            vec![f.from_i64(0), f.from_i64(-1), f.from_i64(0)],
            vec![f.from_i64(1), f.from_i64(0), f.from_i64(0)],
            vec![f.from_i64(0), f.from_i64(0), f.from_i64(1)],
        ]);
        assert!(h.is_unitary(&real_g, 0.0));
        let report = trace_dichotomy(&[g, real_g], &h, &e_sub, &f_sub, Some(&order), false, 3);
        // the mixed group still lands in E; a pure real one lands in F
        assert!(report.is_ok());
        let lorentz = Matrix::from_rows(vec![
            vec![f.from_i64(1), f.from_i64(0), f.from_i64(0)],
            vec![f.from_i64(0), f.from_i64(2), f.from_rational(rat(3, 1))],
            vec![f.from_i64(0), f.from_rational(rat(3, 1)), f.from_i64(2)],
        ]);
        // 2^2 - 3^2 = -5, not unitary; scale to a genuine SO(1,1) pair over Q:
        // [[5,...]]: 5^2 - d^2 = 1 fails; use [[5/4? -- rational entries are
        // fine for F = Q but must be integral for the order check; waive it.
        let real_lox = Matrix::from_rows(vec![
            vec![f.from_i64(1), f.from_i64(0), f.from_i64(0)],
            vec![f.from_rational(rat(5, 4)), f.from_rational(rat(3, 4)), f.from_i64(0)],
            vec![f.from_rational(rat(3, 4)), f.from_rational(rat(5, 4)), f.from_i64(0)],
        ]);
        let _ = real_lox; // constructing an integral real loxodromic for this
                          // form needs sqrt entries; covered in acceptance via
                          // the 2x2 example instead
        let _ = lorentz;
    }

    #[test]
    fn dichotomy_real_subgroup_equals_f() {
        // an integral real loxodromic for diag(1,1,-1): trace field F = Q
        let f = NumberField::gaussian();
        let i = f.generator();
        let ext = CMExtension::new(f.clone()).unwrap();
        let e_sub = subfield_generated(&f, &[i.clone()]).unwrap();
        let f_sub = subfield_generated(&f, &[]).unwrap();
        let order = maximal_order(&f).unwrap();
        let h = HermitianForm::diagonal(vec![f.from_i64(1), f.from_i64(1), f.from_i64(-1)]);
        let m = Matrix::from_rows(vec![
            vec![f.from_i64(9), f.from_i64(8), f.from_i64(12)],
            vec![f.from_i64(8), f.from_i64(9), f.from_i64(12)],
            vec![f.from_i64(12), f.from_i64(12), f.from_i64(17)],
        ]);
        assert!(h.is_unitary(&m, 0.0));
        assert_eq!(m.det(), f.from_i64(1));
        let report = trace_dichotomy(
            &[m],
            &h,
            &e_sub,
            &f_sub,
            Some(&order),
            false,
            3,
        )
        .unwrap();
        assert!(matches!(report.verdict, DichotomyVerdict::EqualsF));
        let _ = ext;
    }

    #[test]
    fn trace_growth_of_su11_example() {
        // the 2x2 non-integral example grows without bound at the identity place
        let beta_field = NumberField::new(
            Poly::new(vec![rat_i64(1), rat_i64(0), rat_i64(-8), rat_i64(0), rat_i64(1)]),
            Complex64::new(2.8025, 0.0),
            None,
        )
        .unwrap();
        let (amb, beta, _i) =
            NumberField::compose(&beta_field, &NumberField::gaussian()).unwrap();
        let sqrt15 = beta.mul(&beta).sub(&amb.from_i64(4));
        let g = Matrix::from_rows(vec![
            vec![beta.scale(&rat_i64(2)), beta.clone()],
            vec![beta.mul(&sqrt15), beta.scale(&rat_i64(2))],
        ]);
        let report = trace_growth(&g, 8).unwrap();
        assert!(report.dominates);
        // Tr g^m grows on the order of (4 + sqrt15)^(m/2) and beyond
        assert!(report.traces[7] > 1e4);
        assert!(report.traces[7] > report.traces[3]);
    }

    #[test]
    fn dichotomy_violation_demo() {
        // ambient Q(beta, i) with beta = sqrt(4+sqrt15): g = beta [[2,1],[sqrt15,2]]
        // satisfies g* H g = H, det 1, but Tr g = 4 beta is outside E
        let beta_field = NumberField::new(
            Poly::new(vec![rat_i64(1), rat_i64(0), rat_i64(-8), rat_i64(0), rat_i64(1)]),
            Complex64::new(2.80250, 0.0),
            None,
        )
        .unwrap();
        let (amb, beta, i) = NumberField::compose(&beta_field, &NumberField::gaussian()).unwrap();
        let sqrt15 = beta.mul(&beta).sub(&amb.from_i64(4));
        // E = Q(sqrt15, i) as a subfield of the ambient degree-8 field
        let e_sub = subfield_generated(&amb, &[sqrt15.clone(), i.clone()]).unwrap();
        assert_eq!(e_sub.dimension(), 4);
        let f_sub = subfield_generated(&amb, &[sqrt15.clone()]).unwrap();
        let h = HermitianForm::diagonal(vec![sqrt15.neg(), amb.from_i64(1)]);
        let g = Matrix::from_rows(vec![
            vec![beta.scale(&rat_i64(2)), beta.clone()],
            vec![beta.mul(&sqrt15), beta.scale(&rat_i64(2))],
        ]);
        // g* H g = H and det g = 1, exactly
        assert!(h.is_unitary(&g, 0.0));
        assert_eq!(g.det(), amb.from_i64(1));
        // Tr g = 4 beta is not in E
        assert!(e_sub.contains(&g.trace()).is_none());
        let report =
            trace_dichotomy(&[g], &h, &e_sub, &f_sub, None, true, 2).unwrap();
        match report.verdict {
            DichotomyVerdict::Violation { trace, .. } => {
                assert_eq!(trace, beta.scale(&rat_i64(4)));
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }
}
