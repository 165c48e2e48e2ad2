//! Randomized invariants: field axioms, unitary invariance of the inner
//! product and distance, conjugation stability, containments between the
//! cube trace field and the trace field, and congruence invariance of
//! admissibility.

use num_complex::Complex64;
use proptest::prelude::*;
use std::sync::Arc;

use tracefield::arithmetic::{is_admissible, CMExtension};
use tracefield::hermitian::HermitianForm;
use tracefield::isometry::{
    dilation, heisenberg_translation, standard_parabolic_f64, vertical_rotation,
    zero_infinity_swap,
};
use tracefield::matrix::{Matrix, Vector};
use tracefield::numberfield::{subfield_generated, FieldElement, NumberField};
use tracefield::rational::rat;
use tracefield::scalar::Scalar;
use tracefield::trace_field::{cube_trace_field, trace_field, trace_list, GroupGenerators};

fn small_rational() -> impl Strategy<Value = tracefield::Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn element_of(field: Arc<NumberField>) -> impl Strategy<Value = FieldElement> {
    let d = field.degree();
    proptest::collection::vec(small_rational(), d)
        .prop_map(move |coords| field.element(coords).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms_quadratic(
        a in element_of(NumberField::quadratic(-3).unwrap()),
        b in element_of(NumberField::quadratic(-3).unwrap()),
        c in element_of(NumberField::quadratic(-3).unwrap()),
    ) {
        // associativity and commutativity
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // distributivity
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // inverses
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert_eq!(a.mul(&inv), a.one_like());
        }
        // conjugation is an involutive automorphism
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }

    #[test]
    fn conj_fixes_exactly_the_reals(
        a in element_of(NumberField::quadratic(-3).unwrap()),
    ) {
        // conj(a) = a iff the certified embedding has zero imaginary part
        let fixed = a.conj() == a;
        let b = a.embed(80);
        if fixed {
            prop_assert!(b.im.contains_zero());
        } else {
            // a - conj(a) is nonzero purely imaginary: refine until the
            // imaginary part of a excludes zero
            let mut excluded = false;
            for bits in [60u32, 120, 240] {
                let bb = a.embed(bits);
                if !bb.im.contains_zero() {
                    excluded = true;
                    break;
                }
            }
            prop_assert!(excluded);
        }
    }

    #[test]
    fn embed_is_multiplicative_up_to_widening(
        a in element_of(NumberField::cyclotomic(12).unwrap()),
        b in element_of(NumberField::cyclotomic(12).unwrap()),
    ) {
        let pa = a.embed(40);
        let pb = b.embed(40);
        let pab = a.mul(&b).embed(40);
        prop_assert!(pab.overlaps(&pa.mul(&pb)));
        let psum = a.add(&b).embed(40);
        prop_assert!(psum.overlaps(&pa.add(&pb)));
    }

    #[test]
    fn inner_product_invariance_float(
        seed in any::<u64>(),
        zr in -2.0f64..2.0, zi in -2.0f64..2.0, t in -2.0f64..2.0,
    ) {
        let j = HermitianForm::siegel(&Complex64::new(0.0, 0.0));
        // a pseudo-random special unitary from standard pieces
        let mut s = seed | 1;
        let mut next = || {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let m = standard_parabolic_f64(next() * 3.0, Complex64::new(next(), next()), next())
            .mul(&zero_infinity_swap(&Complex64::new(0.0, 0.0)))
            .mul(&dilation(&Complex64::from_polar(next().abs() + 0.5, next() * 3.0)).unwrap())
            .mul(&vertical_rotation(&Complex64::from_polar(1.0, next() * 3.0)).unwrap());
        prop_assert!(j.is_special_unitary(&m, 1e-9));
        let z = Vector::new(vec![
            Complex64::new(zr, zi),
            Complex64::new(t, -zr),
            Complex64::new(1.0, 0.3 * zi),
        ]);
        let w = Vector::new(vec![
            Complex64::new(-zi, 0.4),
            Complex64::new(0.9, t),
            Complex64::new(zr, 1.0),
        ]);
        let lhs = j.inner(&m.apply(&z), &m.apply(&w));
        let rhs = j.inner(&z, &w);
        let scale = m.max_norm().powi(2) * 30.0;
        prop_assert!((lhs - rhs).norm() <= 1e-9 * scale.max(1.0));
        // antilinearity in the second slot
        let cc = Complex64::new(t, zr);
        let lhs = j.inner(&z, &w.scale(&cc));
        prop_assert!((lhs - cc.conj() * rhs).norm() <= 1e-9 * scale.max(1.0));
    }

    #[test]
    fn distance_invariance_float(seed in any::<u64>(), u1 in 0.2f64..3.0, u2 in 0.2f64..3.0) {
        let j = HermitianForm::siegel(&Complex64::new(0.0, 0.0));
        let mut s = seed | 1;
        let mut next = || {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let q1 = tracefield::hermitian::horospherical_lift(
            &Complex64::new(next(), next()),
            &Complex64::new(0.0, next()),
            &Complex64::new(u1, 0.0),
        );
        let q2 = tracefield::hermitian::horospherical_lift(
            &Complex64::new(next(), next()),
            &Complex64::new(0.0, next()),
            &Complex64::new(u2, 0.0),
        );
        let m = standard_parabolic_f64(next() * 3.0, Complex64::new(next(), next()), next())
            .mul(&dilation(&Complex64::from_polar(next().abs() + 0.5, next() * 3.0)).unwrap());
        let d1 = j.distance(&q1, &q2, 1e-9).unwrap();
        let d2 = j.distance(&m.apply(&q1), &m.apply(&q2), 1e-9).unwrap();
        prop_assert!((d1 - d2).abs() < 1e-9 * (1.0 + d1));
        // lift scaling is immaterial
        let d3 = j.distance(&q1.scale(&Complex64::new(0.0, -2.7)), &q2, 1e-9).unwrap();
        prop_assert!((d1 - d3).abs() < 1e-12 * (1.0 + d1));
    }
}

#[test]
fn random_float_pairs_span_at_depth_three() {
    // a random pair of special-unitary matrices spans the matrix algebra
    let j = HermitianForm::siegel(&Complex64::new(0.0, 0.0));
    let mut s = 0x00c0_ffee_u64;
    let mut next = move || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    for _ in 0..5 {
        let rand_su = |next: &mut dyn FnMut() -> f64| {
            standard_parabolic_f64(next() * 3.0, Complex64::new(next(), next()), next())
                .mul(&zero_infinity_swap(&Complex64::new(0.0, 0.0)))
                .mul(&dilation(&Complex64::from_polar(next().abs() + 0.5, next() * 3.0)).unwrap())
        };
        let a = rand_su(&mut next);
        let b = rand_su(&mut next);
        assert!(j.is_special_unitary(&a, 1e-9));
        assert!(j.is_special_unitary(&b, 1e-9));
        let group = GroupGenerators::new(vec![a, b], j.clone(), 1e-9).unwrap();
        let report = tracefield::trace_field::zariski_density_check(&group, 3).unwrap();
        assert!(report.dense, "random pair rank {}", report.rank);
    }
}

#[test]
fn cayley_transported_dilation_fixes_antipodal_points() {
    // the dilation fixes 0 and infinity in the Siegel model; in the ball
    // model the two fixed boundary points are antipodal
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let cm = tracefield::hermitian::cayley_ball_to_siegel(&c(0.0, 1.0)).unwrap();
    let d = dilation(&c(2.0, 0.0)).unwrap();
    // M_ball = C M_J C^-1 preserves the ball form
    let m_ball = cm.mul(&d).mul(&cm.inverse().unwrap());
    let ball = HermitianForm::ball(&c(0.0, 0.0));
    assert!(ball.is_special_unitary(&m_ball, 1e-12));
    // fixed lifts are the C-images of the Siegel fixed points
    let fix1 = cm.apply(&Vector::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]));
    let fix2 = cm.apply(&Vector::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]));
    for f in [&fix1, &fix2] {
        assert!(m_ball.apply(f).projectively_equal(f, 1e-12));
    }
    // in the z3 = 1 section the two points are (1, 0) and (-1, 0)
    let p1 = (fix1.entries[0] / fix1.entries[2], fix1.entries[1] / fix1.entries[2]);
    let p2 = (fix2.entries[0] / fix2.entries[2], fix2.entries[1] / fix2.entries[2]);
    assert!((p1.0 + p2.0).norm() < 1e-12 && (p1.1 + p2.1).norm() < 1e-12);
    assert!((p1.0.norm() - 1.0).abs() < 1e-12);
}

#[test]
fn traces_conjugation_invariant_and_cube_field_contained() {
    let f = NumberField::gaussian();
    let i = f.generator();
    let j = HermitianForm::siegel(&f.from_i64(0));
    let p = heisenberg_translation(&f.from_i64(0), &i).unwrap();
    let l = zero_infinity_swap(&f.from_i64(0))
        .mul(&heisenberg_translation(&f.from_i64(1), &i).unwrap());
    let group = GroupGenerators::new(vec![p, l], j.clone(), 0.0).unwrap();

    // conjugating the generators permutes no traces
    let q = heisenberg_translation(&i, &i.scale(&rat(5, 1)))
        .unwrap()
        .mul(&zero_infinity_swap(&f.from_i64(0)));
    assert!(j.is_special_unitary(&q, 0.0));
    let conj_group = group.conjugated(&q).unwrap();
    let t1: Vec<_> = trace_list(&group, 3)
        .unwrap()
        .into_iter()
        .map(|(_, t)| t)
        .collect();
    let t2: Vec<_> = trace_list(&conj_group, 3)
        .unwrap()
        .into_iter()
        .map(|(_, t)| t)
        .collect();
    assert_eq!(t1, t2); // same enumeration order, so even the sequence agrees
    let tf1 = trace_field(&group, 3).unwrap();
    let tf2 = trace_field(&conj_group, 3).unwrap();
    assert!(tf1.field.span_equals(&tf2.field));

    // cube trace field at depth d embeds into the trace field at depth 3d
    let ctf = cube_trace_field(&group, 1).unwrap();
    let tf3 = trace_field(&group, 3).unwrap();
    assert!(ctf.field.is_subfield_of(&tf3.field));
}

#[test]
fn parabolic_eigenvector_relation_exact() {
    let f = NumberField::gaussian();
    let i = f.generator();
    let j = HermitianForm::siegel(&f.from_i64(0));
    // a conjugated screw parabolic: P v = e v exactly on the fixed lift
    let p0 = tracefield::isometry::standard_parabolic(&i, &f.from_i64(0), &i).unwrap();
    let q = heisenberg_translation(&f.from_i64(1), &i)
        .unwrap()
        .mul(&zero_infinity_swap(&f.from_i64(0)));
    let p = q.mul(&p0).mul(&q.inverse().unwrap());
    let class = tracefield::isometry::classify(&p, &j, 0.0).unwrap();
    let e = class.unit_eigenvalue.clone().unwrap();
    let v = class.boundary_fixed_points[0].lift(&f.from_i64(0));
    assert_eq!(p.apply(&v), v.scale(&e));
    // the fixed point coordinates lie in the field generated by the entries
    let entries: Vec<FieldElement> = p.flatten().to_vec();
    let coeff_field = subfield_generated(&f, &entries).unwrap();
    for c in v.entries.iter() {
        assert!(coeff_field.contains(c).is_some());
    }
}

#[test]
fn admissibility_congruence_invariant() {
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
    let before = is_admissible(&h, &ext).unwrap();
    // congruence by an invertible matrix over O_F = Z[sqrt2]
    let a = Matrix::from_rows(vec![
        vec![e.from_i64(1), sqrt2.clone(), e.from_i64(2)],
        vec![e.from_i64(0), e.from_i64(1), sqrt2.neg()],
        vec![e.from_i64(0), e.from_i64(0), e.from_i64(1)],
    ]);
    let congruent = a.conj_transpose().mul(&h).mul(&a);
    let after = is_admissible(&congruent, &ext).unwrap();
    assert_eq!(before.admissible, after.admissible);
    assert_eq!(before.signatures, after.signatures);
}

#[test]
fn coefficients_lie_in_trace_field_adjoin_alpha() {
    // desk-scale version of the coefficient-field property for an
    // arithmetic-style sample: entries of the group lie in Tr(Gamma)(alpha)
    // where E = F(alpha)
    let f = NumberField::gaussian();
    let i = f.generator();
    let j = HermitianForm::diagonal(vec![f.from_i64(1), f.from_i64(1), f.from_i64(-1)]);
    let g = Matrix::from_rows(vec![
        vec![f.from_i64(1), f.from_i64(0), f.from_i64(0)],
        vec![f.from_i64(0), f.from_i64(1).add(&i), f.from_i64(1)],
        vec![f.from_i64(0), f.from_i64(1), f.from_i64(1).sub(&i)],
    ]);
    assert!(j.is_unitary(&g, 0.0));
    let rot = Matrix::from_rows(vec![
        vec![i.clone(), f.from_i64(0), f.from_i64(0)],
        vec![f.from_i64(0), i.neg(), f.from_i64(0)],
        vec![f.from_i64(0), f.from_i64(0), f.from_i64(1)],
    ]);
    let mut tgens = vec![];
    for (_, m) in
        tracefield::words::with_empty(&[g.clone(), rot.clone()], 3).unwrap()
    {
        let t = m.trace();
        tgens.push(t.clone());
        tgens.push(t.conj());
    }
    // Tr(Gamma)(alpha) with alpha = i
    tgens.push(i.clone());
    let field_with_alpha = subfield_generated(&f, &tgens).unwrap();
    for m in [&g, &rot] {
        for entry in m.flatten() {
            assert!(field_with_alpha.contains(entry).is_some());
        }
    }
}
