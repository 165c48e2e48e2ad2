//! Classification of SU(2,1) elements by fixed points, standard forms for
//! parabolic and loxodromic elements, lifts, parabolic eigenvalues from
//! traces, and parabolic fixed points.
//!
//! In exact mode every branch decision (trace discriminant sign, minimal
//! polynomial squarefreeness, nilpotency index) is decided exactly, and
//! parabolic data (unit eigenvalue, boundary fixed point) stays inside the
//! coefficient field.

use num_complex::Complex64;
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::hermitian::{BoundaryPoint, HermitianForm};
use crate::matrix::{Matrix, Vector};
use crate::rational::rat;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryTag {
    Elliptic,
    PureParabolicVertical,
    PureParabolicHorizontal,
    ScrewParabolic,
    Loxodromic,
}

impl IsometryTag {
    pub fn is_parabolic(&self) -> bool {
        matches!(
            self,
            IsometryTag::PureParabolicVertical
                | IsometryTag::PureParabolicHorizontal
                | IsometryTag::ScrewParabolic
        )
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            IsometryTag::Elliptic => "elliptic",
            IsometryTag::PureParabolicVertical => "pure_parabolic_vertical",
            IsometryTag::PureParabolicHorizontal => "pure_parabolic_horizontal",
            IsometryTag::ScrewParabolic => "screw_parabolic",
            IsometryTag::Loxodromic => "loxodromic",
        }
    }
}

/// Classification result. The unit eigenvalue is exact for parabolics.
/// `eigenvalues_approx` is populated in float mode only: loxodromic and
/// elliptic eigenvalues generally live outside the coefficient field, and
/// exact callers that want locators can take them from `Matrix::approx`.
#[derive(Debug, Clone)]
pub struct IsometryClass<T> {
    pub tag: IsometryTag,
    pub unit_eigenvalue: Option<T>,
    pub eigenvalues_approx: Vec<Complex64>,
    pub boundary_fixed_points: Vec<BoundaryPoint<T>>,
}

/// The three lifts in SU(2,1) of one PU(2,1) element.
#[derive(Debug, Clone)]
pub struct LiftTriple<T> {
    pub lifts: [Matrix<T>; 3],
}

/// Trace discriminant separating loxodromic from elliptic:
/// f(tau) = |tau|^4 - 8 Re(tau^3) + 18 |tau|^2 - 27, positive exactly on
/// loxodromic traces and zero on parabolic (or boundary-elliptic) traces.
pub fn trace_discriminant<T: Scalar>(tau: &T) -> T {
    let abs2 = tau.abs_sq();
    let abs4 = abs2.mul(&abs2);
    let tau3 = tau.mul(tau).mul(tau);
    let re_tau3_x2 = tau3.add(&tau3.conj()); // 2 Re(tau^3)
    let four = tau.from_i64_like(4);
    let eighteen = tau.from_i64_like(18);
    let twenty_seven = tau.from_i64_like(27);
    abs4.sub(&four.mul(&re_tau3_x2))
        .add(&eighteen.mul(&abs2))
        .sub(&twenty_seven)
}

/// Classifies a special-unitary matrix by the fixed-point taxonomy.
pub fn classify<T: Scalar>(
    m: &Matrix<T>,
    form: &HermitianForm<T>,
    tol: f64,
) -> Result<IsometryClass<T>> {
    if !form.is_special_unitary(m, tol.max(1e-12)) {
        return Err(Error::NotUnitary);
    }
    let tau = m.trace();
    let f = trace_discriminant(&tau);
    let scale = if T::EXACT {
        1.0
    } else {
        tau.approx().norm().max(1.0).powi(4)
    };
    let evs = if T::EXACT {
        vec![]
    } else {
        eigenvalues_3x3_approx(&m.approx())
    };

    let f_sign = if T::EXACT {
        f.sign_real(0.0)?
    } else {
        f.sign_real(100.0 * tol * scale)?
    };

    match f_sign {
        Ordering::Greater => {
            let mut fixed = vec![];
            if !T::EXACT {
                // both boundary fixed points, from the non-unit eigenvalues
                for ev in &evs {
                    if (ev.norm() - 1.0).abs() > 1e-6 {
                        if let Some(v) = eigenvector_approx(&m.approx(), *ev) {
                            let entries: Option<Vec<T>> =
                                v.iter().map(|c| m.sample().from_c64_like(*c)).collect();
                            if let Some(entries) = entries {
                                if let Ok(p) = BoundaryPoint::from_lift(
                                    &Vector::new(entries),
                                    (tol * 1e3).max(1e-6),
                                ) {
                                    fixed.push(p);
                                }
                            }
                        }
                    }
                }
            }
            Ok(IsometryClass {
                tag: IsometryTag::Loxodromic,
                unit_eigenvalue: None,
                eigenvalues_approx: evs,
                boundary_fixed_points: fixed,
            })
        }
        Ordering::Less => Ok(IsometryClass {
            tag: IsometryTag::Elliptic,
            unit_eigenvalue: None,
            eigenvalues_approx: evs,
            boundary_fixed_points: vec![],
        }),
        Ordering::Equal => {
            let diagonalizable = if T::EXACT {
                minimal_polynomial_squarefree(m)?
            } else {
                float_diagonalizable(&m.approx(), &evs)?
            };
            if diagonalizable {
                return Ok(IsometryClass {
                    tag: IsometryTag::Elliptic,
                    unit_eigenvalue: None,
                    eigenvalues_approx: evs,
                    boundary_fixed_points: vec![],
                });
            }
            // parabolic; pure (unipotent up to a cube root of unity)
            // exactly when tau^3 = 27
            let tau3 = tau.mul(&tau).mul(&tau);
            let pure = tau3.sub(&tau.from_i64_like(27)).is_small(1e-6);
            let (tag, eigenvalue) = if pure {
                let e = tau.mul(&tau.from_rational_like(&rat(1, 3)));
                let u = m.scale(&e.inv()?);
                let n = u.sub(&Matrix::identity_like(m.sample(), 3));
                let n2 = n.mul(&n);
                let vertical =
                    n2.is_zero_within(tol.max(1e-12) * (1.0 + n.max_norm()).powi(2));
                (
                    if vertical {
                        IsometryTag::PureParabolicVertical
                    } else {
                        IsometryTag::PureParabolicHorizontal
                    },
                    e,
                )
            } else {
                let e = parabolic_eigenvalue_from_trace(&tau, &tau.conj())?;
                (IsometryTag::ScrewParabolic, e)
            };
            let fp = parabolic_fixed_point_with_eigenvalue(m, &eigenvalue, form, tol)?;
            Ok(IsometryClass {
                tag,
                unit_eigenvalue: Some(eigenvalue),
                eigenvalues_approx: evs,
                boundary_fixed_points: vec![fp],
            })
        }
    }
}

/// A lift in SU(2,1) of the parabolic fixing infinity with rotation part
/// e^{i theta} and translation part (z, t):
///
/// e^{i theta} [[1, -conj(z) e^{-3 i theta}, -(|z|^2 - it)/2],
///              [0,  e^{-3 i theta},          z             ],
///              [0,  0,                       1             ]]
///
/// `rot` must have unit modulus and `it` must be purely imaginary.
pub fn standard_parabolic<T: Scalar>(rot: &T, z: &T, it: &T) -> Result<Matrix<T>> {
    if !rot.abs_sq().sub(&rot.one_like()).is_small(1e-12) {
        return Err(Error::schema("", "rotation part must have unit modulus"));
    }
    if !it.add(&it.conj()).is_small(1e-12) {
        return Err(Error::schema("", "it must be purely imaginary"));
    }
    let e3inv = rot.conj().mul(&rot.conj()).mul(&rot.conj()); // e^{-3 i theta}
    let half = rot.from_rational_like(&rat(1, 2));
    let corner = it.sub(&z.abs_sq()).mul(&half);
    let o = rot.zero_like();
    let rows = vec![
        vec![rot.one_like(), z.conj().neg().mul(&e3inv), corner],
        vec![o.clone(), e3inv, z.clone()],
        vec![o.clone(), o.clone(), rot.one_like()],
    ];
    Ok(Matrix::from_rows(rows).scale(rot))
}

/// Float constructor from angle parameters.
pub fn standard_parabolic_f64(theta: f64, z: Complex64, t: f64) -> Matrix<Complex64> {
    standard_parabolic(
        &Complex64::from_polar(1.0, theta),
        &z,
        &Complex64::new(0.0, t),
    )
    .expect("unit rotation and imaginary it by construction")
}

/// Heisenberg translation by (z, t): the unipotent standard parabolic.
pub fn heisenberg_translation<T: Scalar>(z: &T, it: &T) -> Result<Matrix<T>> {
    standard_parabolic(&z.one_like(), z, it)
}

/// The involution swapping 0 and infinity: [[0,0,1],[0,-1,0],[1,0,0]].
pub fn zero_infinity_swap<T: Scalar>(sample: &T) -> Matrix<T> {
    let o = sample.zero_like();
    let l = sample.one_like();
    Matrix::from_rows(vec![
        vec![o.clone(), o.clone(), l.clone()],
        vec![o.clone(), l.neg(), o.clone()],
        vec![l, o.clone(), o],
    ])
}

/// The loxodromic lift diag(lambda, conj(lambda)/lambda, 1/conj(lambda)).
pub fn dilation<T: Scalar>(lambda: &T) -> Result<Matrix<T>> {
    if lambda.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let o = lambda.zero_like();
    let mid = lambda.conj().div(lambda)?;
    let last = lambda.conj().inv()?;
    Ok(Matrix::from_rows(vec![
        vec![lambda.clone(), o.clone(), o.clone()],
        vec![o.clone(), mid, o.clone()],
        vec![o.clone(), o.clone(), last],
    ]))
}

/// diag(a, a^-2, a) for |a| = 1: a rotation about the vertical axis.
pub fn vertical_rotation<T: Scalar>(a: &T) -> Result<Matrix<T>> {
    if !a.abs_sq().sub(&a.one_like()).is_small(1e-12) {
        return Err(Error::schema("", "rotation parameter must have unit modulus"));
    }
    let o = a.zero_like();
    let mid = a.mul(a).inv()?;
    Ok(Matrix::from_rows(vec![
        vec![a.clone(), o.clone(), o.clone()],
        vec![o.clone(), mid, o.clone()],
        vec![o.clone(), o.clone(), a.clone()],
    ]))
}

/// Eigenvalue e^{i theta} of a non-unipotent parabolic from its trace and
/// conjugate trace:
///   cos t = ((|Tr|^2 - 5)/4 + 2 Re Tr + 2) / (2 Re Tr + 3),
///   i sin t = i Im(Tr) / (2 (1 - cos t)).
/// Unipotent-type traces (tau^3 = 27, where the quotients degenerate)
/// return tau/3 directly.
pub fn parabolic_eigenvalue_from_trace<T: Scalar>(tr: &T, conj_tr: &T) -> Result<T> {
    let three = tr.from_i64_like(3);
    let tau3 = tr.mul(tr).mul(tr);
    if tau3.sub(&tr.from_i64_like(27)).is_small(1e-9) {
        return tr.div(&three);
    }
    let two_re = tr.add(conj_tr);
    let denom = two_re.add(&three);
    if denom.is_small(1e-12) {
        return Err(Error::DegenerateDenominator);
    }
    let abs2 = tr.mul(conj_tr);
    let quarter = tr.from_rational_like(&rat(1, 4));
    let five = tr.from_i64_like(5);
    let two = tr.from_i64_like(2);
    let cos = abs2
        .sub(&five)
        .mul(&quarter)
        .add(&two_re)
        .add(&two)
        .div(&denom)?;
    let one_minus = tr.one_like().sub(&cos);
    if one_minus.is_small(1e-12) {
        return Err(Error::DegenerateDenominator);
    }
    let isin = tr
        .sub(conj_tr)
        .div(&one_minus.mul(&tr.from_i64_like(4)))?;
    Ok(cos.add(&isin))
}

/// The unique boundary fixed point of a parabolic element.
pub fn parabolic_fixed_point<T: Scalar>(
    p: &Matrix<T>,
    form: &HermitianForm<T>,
    tol: f64,
) -> Result<BoundaryPoint<T>> {
    let class = classify(p, form, tol)?;
    if !class.tag.is_parabolic() {
        return Err(Error::NotParabolic);
    }
    Ok(class.boundary_fixed_points[0].clone())
}

fn parabolic_fixed_point_with_eigenvalue<T: Scalar>(
    p: &Matrix<T>,
    e: &T,
    form: &HermitianForm<T>,
    tol: f64,
) -> Result<BoundaryPoint<T>> {
    let shifted = p.sub(&Matrix::identity_like(p.sample(), 3).scale(e));
    let kernel = nullspace(&shifted, tol.max(1e-12));
    let v = match kernel.len() {
        0 => return Err(Error::NotParabolic),
        1 => kernel[0].clone(),
        2 => {
            // two-dimensional eigenspace: the boundary fixed point spans the
            // radical of the form restricted to it
            let g = Matrix::from_rows(vec![
                vec![
                    form.inner(&kernel[0], &kernel[0]),
                    form.inner(&kernel[1], &kernel[0]),
                ],
                vec![
                    form.inner(&kernel[0], &kernel[1]),
                    form.inner(&kernel[1], &kernel[1]),
                ],
            ]);
            let rad = nullspace(&g, tol.max(1e-12));
            if rad.len() != 1 {
                return Err(Error::NotParabolic);
            }
            kernel[0]
                .scale(rad[0].at(0))
                .add(&kernel[1].scale(rad[0].at(1)))
        }
        _ => return Err(Error::NotParabolic),
    };
    BoundaryPoint::from_lift(&v, (tol * 1e2).max(1e-7)).map_err(|_| Error::NotParabolic)
}

/// The three SU(2,1) lifts {M, wM, w^2 M} of the PU(2,1) element of M.
/// Exact mode needs a primitive cube root of unity in the field; pass it
/// in or let the field search for one.
pub fn lifts<T: Scalar>(m: &Matrix<T>, omega: Option<T>) -> Result<LiftTriple<T>> {
    let omega = match omega {
        Some(w) => w,
        None => cube_root_of_unity(m.sample()).ok_or(Error::CubeRootUnavailable)?,
    };
    let check = omega.mul(&omega).add(&omega).add(&omega.one_like());
    if !check.is_small(1e-12) {
        return Err(Error::schema("", "omega is not a primitive cube root of unity"));
    }
    let omega2 = omega.mul(&omega);
    Ok(LiftTriple {
        lifts: [m.clone(), m.scale(&omega), m.scale(&omega2)],
    })
}

fn cube_root_of_unity<T: Scalar>(sample: &T) -> Option<T> {
    let roots = sample.one_like().cube_roots()?;
    roots
        .into_iter()
        .find(|r| !r.sub(&r.one_like()).is_small(1e-9))
}

/// Boundary action of the dilation with eigenvalue lambda:
/// (z, t) -> ((conj(lambda)^2 / lambda) z, |lambda|^2 t).
pub fn loxodromic_boundary_action<T: Scalar>(
    lambda: &T,
    p: &BoundaryPoint<T>,
) -> Result<BoundaryPoint<T>> {
    match p {
        BoundaryPoint::Infinity => Ok(BoundaryPoint::Infinity),
        BoundaryPoint::Finite { z, it } => {
            let factor = lambda.conj().mul(&lambda.conj()).div(lambda)?;
            let abs2 = lambda.abs_sq();
            Ok(BoundaryPoint::Finite {
                z: factor.mul(z),
                it: abs2.mul(it),
            })
        }
    }
}

/// Kernel basis by Gauss-Jordan elimination with pivot thresholding.
pub fn nullspace<T: Scalar>(m: &Matrix<T>, tol: f64) -> Vec<Vector<T>> {
    let n = m.n();
    let mut a = m.rows();
    let scale = m.max_norm().max(1.0);
    let mut pivots: Vec<(usize, usize)> = vec![]; // (row, col)
    let mut row = 0usize;
    for col in 0..n {
        let best = (row..n).max_by(|&x, &y| {
            a[x][col]
                .pivot_weight()
                .partial_cmp(&a[y][col].pivot_weight())
                .unwrap()
        });
        let Some(best) = best else { break };
        let negligible = if T::EXACT {
            a[best][col].is_zero()
        } else {
            a[best][col].approx().norm() <= tol * scale
        };
        if negligible {
            continue;
        }
        a.swap(row, best);
        let pinv = a[row][col].inv().expect("pivot nonzero");
        for j in 0..n {
            a[row][j] = a[row][j].mul(&pinv);
        }
        for i in 0..n {
            if i != row {
                let f = a[i][col].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let delta = f.mul(&a[row][j]);
                    a[i][j] = a[i][j].sub(&delta);
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let sample = m.sample();
    free_cols
        .iter()
        .map(|&fc| {
            let mut v = vec![sample.zero_like(); n];
            v[fc] = sample.one_like();
            for &(r, c) in &pivots {
                v[c] = a[r][fc].neg();
            }
            Vector::new(v)
        })
        .collect()
}

/// Exact diagonalizability: the minimal polynomial is squarefree.
fn minimal_polynomial_squarefree<T: Scalar>(m: &Matrix<T>) -> Result<bool> {
    let id = Matrix::identity_like(m.sample(), 3);
    let m2 = m.mul(m);
    let m3 = m2.mul(m);
    let powers = [id, m.clone(), m2, m3];
    let flat: Vec<Vec<T>> = powers.iter().map(|p| p.flatten().to_vec()).collect();
    for k in 1..=3usize {
        if let Some(coeffs) = express_in_span(&flat[..k], &flat[k]) {
            // minimal polynomial is x^k - sum_j coeffs[j] x^j
            return Ok(match k {
                1 => true,
                2 => {
                    // x^2 - c1 x - c0 squarefree iff c1^2 + 4 c0 != 0
                    let disc = coeffs[1].mul(&coeffs[1]).add(&int_mul(&coeffs[0], 4));
                    !disc.is_zero()
                }
                3 => {
                    // x^3 + b x^2 + c x + d, b = -c2, c = -c1, d = -c0
                    let b = coeffs[2].neg();
                    let c = coeffs[1].neg();
                    let d = coeffs[0].neg();
                    let disc = int_mul(&b.mul(&c).mul(&d), 18)
                        .sub(&int_mul(&b.mul(&b).mul(&b).mul(&d), 4))
                        .add(&b.mul(&b).mul(&c).mul(&c))
                        .sub(&int_mul(&c.mul(&c).mul(&c), 4))
                        .sub(&int_mul(&d.mul(&d), 27));
                    !disc.is_zero()
                }
                _ => unreachable!(),
            });
        }
    }
    // minimal polynomial equals the characteristic polynomial; for a 3x3
    // matrix that makes every eigenvalue geometrically simple only when
    // they are distinct, i.e. the matrix is diagonalizable iff squarefree;
    // a cubic minimal polynomial with a repeated root is non-diagonalizable
    let tau = m.trace();
    let tau_bar = tau.conj();
    // characteristic polynomial x^3 - tau x^2 + conj(tau) x - 1
    let b = tau.neg();
    let c = tau_bar;
    let d = m.sample().one_like().neg();
    let disc = int_mul(&b.mul(&c).mul(&d), 18)
        .sub(&int_mul(&b.mul(&b).mul(&b).mul(&d), 4))
        .add(&b.mul(&b).mul(&c).mul(&c))
        .sub(&int_mul(&c.mul(&c).mul(&c), 4))
        .sub(&int_mul(&d.mul(&d), 27));
    Ok(!disc.is_zero())
}

fn int_mul<T: Scalar>(v: &T, k: i64) -> T {
    v.mul(&v.from_i64_like(k))
}

/// Expresses `target` in the span of the given vectors, solving the linear
/// system exactly (float callers get a verified approximate solve).
pub fn express_in_span<T: Scalar>(span: &[Vec<T>], target: &[T]) -> Option<Vec<T>> {
    let dim = target.len();
    let k = span.len();
    if k == 0 {
        return if target.iter().all(|t| t.is_zero()) {
            Some(vec![])
        } else {
            None
        };
    }
    // a[r] = (coefficients of the k unknowns at coordinate r | rhs)
    let mut a: Vec<Vec<T>> = (0..dim)
        .map(|r| {
            let mut row: Vec<T> = span.iter().map(|s| s[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_of_var: Vec<Option<usize>> = vec![None; k];
    let mut used = vec![false; dim];
    for var in 0..k {
        let row = (0..dim).find(|&r| !used[r] && !a[r][var].is_zero());
        let Some(r) = row else { continue };
        used[r] = true;
        pivot_of_var[var] = Some(r);
        let pinv = a[r][var].inv().ok()?;
        for j in 0..=k {
            a[r][j] = a[r][j].mul(&pinv);
        }
        for rr in 0..dim {
            if rr == r || a[rr][var].is_zero() {
                continue;
            }
            let f = a[rr][var].clone();
            for j in 0..=k {
                let delta = f.mul(&a[r][j]);
                a[rr][j] = a[rr][j].sub(&delta);
            }
        }
    }
    for r in 0..dim {
        if !used[r] && !a[r][k].is_small(1e-9) {
            return None;
        }
    }
    let mut out = vec![target[0].zero_like(); k];
    for var in 0..k {
        if let Some(r) = pivot_of_var[var] {
            out[var] = a[r][k].clone();
        }
    }
    // verification guards the float path and free-variable corner cases
    for r in 0..dim {
        let mut acc = target[0].zero_like();
        for (c, s) in out.iter().zip(span) {
            acc = acc.add(&c.mul(&s[r]));
        }
        if T::EXACT {
            if acc.sub(&target[r]).is_zero() == false {
                return None;
            }
        } else if !acc.sub(&target[r]).is_small(1e-7) {
            return None;
        }
    }
    Some(out)
}

/// Roots of x^3 + b x^2 + c x + d over C (Cardano with complex arithmetic).
pub fn cubic_roots(b: Complex64, c: Complex64, d: Complex64) -> [Complex64; 3] {
    let third = 1.0 / 3.0;
    let p = c - b * b * third;
    let q = b * b * b * (2.0 / 27.0) - b * c * third + d;
    let shift = -b * third;
    let disc = (q * q * 0.25 + p * p * p / 27.0).sqrt();
    let mut u3 = -q * 0.5 + disc;
    if u3.norm() < 1e-18 {
        u3 = -q * 0.5 - disc;
    }
    if u3.norm() < 1e-18 {
        return [shift, shift, shift];
    }
    let u = u3.powf(third);
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let mut roots = [Complex64::default(); 3];
    for (k, r) in roots.iter_mut().enumerate() {
        let uk = u * omega.powu(k as u32);
        let vk = -p / (uk * 3.0);
        *r = uk + vk + shift;
    }
    roots
}

/// Eigenvalues of a 3x3 complex matrix, via the characteristic polynomial.
pub fn eigenvalues_3x3_approx(m: &Matrix<Complex64>) -> Vec<Complex64> {
    assert_eq!(m.n(), 3);
    let tr = m.trace();
    let m2 = m.mul(m);
    let c2 = (tr * tr - m2.trace()) * 0.5;
    let det = m.det();
    cubic_roots(-tr, c2, -det).to_vec()
}

/// Eigenvector for an approximate eigenvalue: cross product of two rows of
/// (M - ev I), taking the pair with the largest product norm.
pub fn eigenvector_approx(m: &Matrix<Complex64>, ev: Complex64) -> Option<Vec<Complex64>> {
    let a = m.sub(&Matrix::identity_like(&Complex64::default(), 3).scale(&ev));
    let rows = a.rows();
    let mut best: Option<Vec<Complex64>> = None;
    let mut best_norm = 0.0;
    for i in 0..3 {
        for j in i + 1..3 {
            let v = Vector::new(rows[i].clone()).cross(&Vector::new(rows[j].clone()));
            let n: f64 = v.entries.iter().map(|c| c.norm_sqr()).sum();
            if n > best_norm {
                best_norm = n;
                best = Some(v.entries);
            }
        }
    }
    if best_norm.sqrt() < 1e-13 * a.max_norm().max(1e-300) {
        return None;
    }
    best
}

/// Float diagonalizability policy. A repeated near-unit eigenvalue is
/// defective (parabolic) exactly when M - mean(cluster) I has rank 2
/// rather than 1; the decision statistic is the singular-value ratio
/// sigma_2/sigma_1 of that matrix, which is O(1) for a Jordan block, at
/// machine-noise level for a diagonalizable repeat, and equivalent to the
/// eigenvector-condition criterion (condition > 1e8) at the default
/// tolerance. The undecidable band in between refuses classification.
fn float_diagonalizable(m: &Matrix<Complex64>, evs: &[Complex64]) -> Result<bool> {
    let mut best = (f64::INFINITY, 0usize, 1usize);
    for i in 0..3 {
        for j in i + 1..3 {
            let gap = (evs[i] - evs[j]).norm();
            if gap < best.0 {
                best = (gap, i, j);
            }
        }
    }
    if best.0 > 1e-4 {
        return Ok(true); // distinct eigenvalues: diagonalizable
    }
    let max_gap = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .map(|(i, j)| (evs[i] - evs[j]).norm())
        .fold(0.0f64, f64::max);
    let triple = max_gap < 1e-4;
    let mean = if triple {
        (evs[0] + evs[1] + evs[2]) / 3.0
    } else {
        (evs[best.1] + evs[best.2]) * 0.5
    };
    let a = m.sub(&Matrix::identity_like(&Complex64::default(), 3).scale(&mean));
    let gram = a.conj_transpose().mul(&a);
    let mut sq = hermitian_eigenvalues_3(&gram);
    sq.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let sigma1 = sq[0].max(0.0).sqrt();
    let sigma2 = sq[1].max(0.0).sqrt();
    // triple eigenvalue: diagonalizable only for a scalar matrix, so the
    // statistic is sigma1 against the matrix scale; double eigenvalue:
    // defective iff M - mean I has rank 2, statistic sigma2/sigma1
    let (ratio, label) = if triple {
        (sigma1 / m.max_norm().max(1e-300), "sigma1/|M|")
    } else if sigma1 <= 0.0 {
        return Ok(true);
    } else {
        (sigma2 / sigma1, "sigma2/sigma1")
    };
    if ratio > 1e-6 {
        Ok(false)
    } else if ratio < 1e-9 {
        Ok(true)
    } else {
        Err(Error::BoundaryCase(format!(
            "defect ratio {label} = {ratio:.3e} is in the undecidable band"
        )))
    }
}

/// Eigenvalues of a 3x3 Hermitian matrix by cyclic complex Jacobi.
pub fn hermitian_eigenvalues_3(m: &Matrix<Complex64>) -> [f64; 3] {
    let mut a = m.rows();
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    off += a[i][j].norm_sqr();
                }
            }
        }
        let scale: f64 = (0..3).map(|i| a[i][i].norm_sqr()).sum::<f64>().max(1e-300);
        if off <= 1e-30 * scale {
            break;
        }
        for p in 0..3 {
            for q in p + 1..3 {
                let apq = a[p][q];
                if apq.norm() < 1e-300 {
                    continue;
                }
                let phase = apq / apq.norm();
                let diff = (a[p][p] - a[q][q]).re;
                let theta = 0.5 * (2.0 * apq.norm()).atan2(diff);
                let (c, s) = (theta.cos(), theta.sin());
                // columns p, q of the rotation: [c, -s conj(phase); s phase, c]
                let mut b = a.clone();
                for k in 0..3 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    b[k][p] = akp * c + akq * s * phase.conj();
                    b[k][q] = -akp * s * phase + akq * c;
                }
                let mut a2 = b.clone();
                for k in 0..3 {
                    let bpk = b[p][k];
                    let bqk = b[q][k];
                    a2[p][k] = bpk * c + bqk * s * phase;
                    a2[q][k] = -bpk * s * phase.conj() + bqk * c;
                }
                a = a2;
            }
        }
    }
    [a[0][0].re, a[1][1].re, a[2][2].re]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::NumberField;
    use crate::rational::rat;
    use std::sync::Arc;

    fn cf(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gaussian_setup() -> (
        Arc<NumberField>,
        HermitianForm<crate::numberfield::FieldElement>,
    ) {
        let f = NumberField::gaussian();
        let j = HermitianForm::siegel(&f.from_i64(0));
        (f, j)
    }

    #[test]
    fn classify_identity_elliptic() {
        let (f, j) = gaussian_setup();
        let id = Matrix::identity_like(&f.from_i64(0), 3);
        let class = classify(&id, &j, 0.0).unwrap();
        assert_eq!(class.tag, IsometryTag::Elliptic);
    }

    #[test]
    fn classify_vertical_translation() {
        let (f, j) = gaussian_setup();
        let i = f.generator();
        let p = heisenberg_translation(&f.from_i64(0), &i).unwrap();
        assert!(j.is_special_unitary(&p, 0.0));
        let class = classify(&p, &j, 0.0).unwrap();
        assert_eq!(class.tag, IsometryTag::PureParabolicVertical);
        assert_eq!(class.unit_eigenvalue, Some(f.from_i64(1)));
        assert!(class.boundary_fixed_points[0].is_infinity());
        assert_eq!(p.trace(), f.from_i64(3));
    }

    #[test]
    fn classify_horizontal_translation() {
        let (f, j) = gaussian_setup();
        let i = f.generator();
        let p = heisenberg_translation(&f.from_i64(1), &i).unwrap();
        assert!(j.is_special_unitary(&p, 0.0));
        let class = classify(&p, &j, 0.0).unwrap();
        assert_eq!(class.tag, IsometryTag::PureParabolicHorizontal);
        // nilpotency index 3
        let n = p.sub(&Matrix::identity_like(&f.from_i64(0), 3));
        let n2 = n.mul(&n);
        assert!(!n2.is_zero_within(0.0));
        assert!(n2.mul(&n).is_zero_within(0.0));
        assert!(class.boundary_fixed_points[0].is_infinity());
    }

    #[test]
    fn classify_screw_parabolic_and_trace() {
        // theta = pi/2 over Q(i): rotation part i, trace -1 + 2i
        let (f, j) = gaussian_setup();
        let i = f.generator();
        let p = standard_parabolic(&i, &f.from_i64(0), &i).unwrap();
        assert!(j.is_special_unitary(&p, 0.0));
        assert_eq!(p.trace(), f.from_i64(-1).add(&i.scale(&rat(2, 1))));
        let class = classify(&p, &j, 0.0).unwrap();
        assert_eq!(class.tag, IsometryTag::ScrewParabolic);
        assert_eq!(class.unit_eigenvalue, Some(i.clone()));
        assert!(class.boundary_fixed_points[0].is_infinity());
    }

    #[test]
    fn classify_loxodromic_dilation() {
        let (f, j) = gaussian_setup();
        let d = dilation(&f.from_i64(2)).unwrap();
        assert!(j.is_special_unitary(&d, 0.0));
        let class = classify(&d, &j, 0.0).unwrap();
        assert_eq!(class.tag, IsometryTag::Loxodromic);
        let df = d.approx();
        let jf = HermitianForm::siegel(&cf(0.0, 0.0));
        let cls = classify(&df, &jf, 1e-9).unwrap();
        assert_eq!(cls.tag, IsometryTag::Loxodromic);
        assert_eq!(cls.boundary_fixed_points.len(), 2);
    }

    #[test]
    fn eigenvalue_from_trace_round_trip_float() {
        for k in 1..24 {
            if k % 8 == 0 {
                continue; // e^{3 i theta} = 1 there
            }
            let theta = k as f64 * std::f64::consts::PI / 12.0;
            let p = standard_parabolic_f64(theta, cf(0.0, 0.0), 1.0);
            let tr = p.trace();
            let e = parabolic_eigenvalue_from_trace(&tr, &tr.conj()).unwrap();
            let expected = Complex64::from_polar(1.0, theta);
            assert!((e - expected).norm() < 1e-10, "k={k}: {e} vs {expected}");
            assert!((tr.norm_sqr() - (5.0 + 4.0 * (3.0 * theta).cos())).abs() < 1e-10);
        }
    }

    #[test]
    fn unipotent_trace_branch() {
        let tr = cf(3.0, 0.0);
        let e = parabolic_eigenvalue_from_trace(&tr, &tr.conj()).unwrap();
        assert!((e - cf(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn fixed_point_equivariance() {
        let (f, j) = gaussian_setup();
        let i = f.generator();
        let p = heisenberg_translation(&f.from_i64(1), &i).unwrap();
        // conjugating by the 0 <-> infinity swap moves the fixed point to 0
        let r = zero_infinity_swap(&f.from_i64(0));
        let q = r.mul(&p).mul(&r.inverse().unwrap());
        let fp = parabolic_fixed_point(&q, &j, 0.0).unwrap();
        match &fp {
            BoundaryPoint::Finite { z, it } => {
                assert!(z.is_zero());
                assert!(it.is_zero());
            }
            _ => panic!("expected the origin"),
        }
        // P v = e v exactly on the fixed lift
        let e = classify(&q, &j, 0.0).unwrap().unit_eigenvalue.unwrap();
        let v = fp.lift(&f.from_i64(0));
        let pv = q.apply(&v);
        let ev = v.scale(&e);
        assert_eq!(pv, ev);
    }

    #[test]
    fn lift_triples() {
        let c12 = NumberField::cyclotomic(12).unwrap();
        let id = Matrix::identity_like(&c12.from_i64(0), 3);
        let triple = lifts(&id, c12.omega()).unwrap();
        let traces: Vec<_> = triple.lifts.iter().map(|m| m.trace()).collect();
        assert_eq!(traces[0], c12.from_i64(3));
        for m in &triple.lifts {
            assert_eq!(m.det(), c12.from_i64(1));
        }
        let w = c12.omega().unwrap();
        assert_eq!(traces[1], traces[0].mul(&w));

        let f = NumberField::gaussian();
        let id = Matrix::identity_like(&f.from_i64(0), 3);
        assert!(matches!(
            lifts(&id, f.omega()),
            Err(Error::CubeRootUnavailable)
        ));
    }

    #[test]
    fn boundary_action_of_dilation() {
        let lambda = cf(2.0, 0.0);
        let p = BoundaryPoint::finite(cf(1.0, 0.0), cf(0.0, 1.0), 1e-12).unwrap();
        let q = loxodromic_boundary_action(&lambda, &p).unwrap();
        match q {
            BoundaryPoint::Finite { z, it } => {
                assert!((z - cf(2.0, 0.0)).norm() < 1e-12);
                assert!((it - cf(0.0, 4.0)).norm() < 1e-12);
            }
            _ => panic!(),
        }
        let o = BoundaryPoint::origin(&cf(0.0, 0.0));
        assert_eq!(loxodromic_boundary_action(&lambda, &o).unwrap(), o);
        // matches the genuine matrix action, and inverts via 1/lambda
        let d = dilation(&lambda).unwrap();
        let via_matrix = p.apply(&d, 1e-9).unwrap();
        match (&via_matrix, &loxodromic_boundary_action(&lambda, &p).unwrap()) {
            (
                BoundaryPoint::Finite { z: z1, it: t1 },
                BoundaryPoint::Finite { z: z2, it: t2 },
            ) => {
                assert!((z1 - z2).norm() < 1e-12);
                assert!((t1 - t2).norm() < 1e-12);
            }
            _ => panic!(),
        }
        let back =
            loxodromic_boundary_action(&Scalar::inv(&lambda).unwrap(), &q).unwrap();
        match back {
            BoundaryPoint::Finite { z, it } => {
                assert!((z - cf(1.0, 0.0)).norm() < 1e-12);
                assert!((it - cf(0.0, 1.0)).norm() < 1e-12);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn classify_conjugation_invariant_float() {
        let jf = HermitianForm::siegel(&cf(0.0, 0.0));
        let p = standard_parabolic_f64(0.7, cf(0.0, 0.0), 1.0);
        let q = standard_parabolic_f64(0.0, cf(0.3, -0.4), 2.0)
            .mul(&zero_infinity_swap(&cf(0.0, 0.0)));
        assert!(jf.is_special_unitary(&q, 1e-9));
        let conj = q.mul(&p).mul(&q.inverse().unwrap());
        let a = classify(&p, &jf, 1e-9).unwrap();
        let b = classify(&conj, &jf, 1e-9).unwrap();
        assert_eq!(a.tag, b.tag);
        let e1 = a.unit_eigenvalue.unwrap();
        let e2 = b.unit_eigenvalue.unwrap();
        assert!((e1 - e2).norm() < 1e-7);
    }

    #[test]
    fn nilpotency_index_matches_translation_type() {
        let jf = HermitianForm::siegel(&cf(0.0, 0.0));
        for (z, expected) in [
            (cf(0.0, 0.0), IsometryTag::PureParabolicVertical),
            (cf(1.0, 0.0), IsometryTag::PureParabolicHorizontal),
        ] {
            let p = standard_parabolic_f64(0.0, z, 1.0);
            let class = classify(&p, &jf, 1e-9).unwrap();
            assert_eq!(class.tag, expected);
        }
    }

    #[test]
    fn express_in_span_generic() {
        let f = NumberField::gaussian();
        let i = f.generator();
        let span = vec![
            vec![f.from_i64(1), f.from_i64(0)],
            vec![i.clone(), f.from_i64(1)],
        ];
        let target = vec![i.scale(&rat(2, 1)).add(&f.from_i64(1)), f.from_i64(2)];
        let c = express_in_span(&span, &target).unwrap();
        assert_eq!(c[0], f.from_i64(1));
        assert_eq!(c[1], f.from_i64(2));
        assert!(express_in_span(&span[..1], &[i.clone(), f.from_i64(1)]).is_none());
    }
}
