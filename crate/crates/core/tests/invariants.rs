//! Property tests for the lattice, lifted-phase, descriptor, and wall layers.

mod common;

use std::cmp::Ordering;

use num_traits::{One, Zero};
use proptest::prelude::*;

use common::*;
use ruledstab::catalog::{ch_object, fiber_quotient_spec, fiber_spec};
use ruledstab::lattice::exp_divisor;
use ruledstab::serial::{descriptor_from_json, descriptor_to_json};
use ruledstab::walls::boundary_solve_with;
use ruledstab::{
    classify_skyscraper, mukai_pair, BoundaryOutcome, DivisorClass, GluedDescriptor, LiftedGL, Mat2, NumClass,
    PerversityVerdict, PhasePoint, StabilityDescriptor, SurfaceData, Q,
};

fn rational() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn positive() -> impl Strategy<Value = Q> {
    (1i64..=12, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn surface() -> impl Strategy<Value = SurfaceData> {
    (0u32..=4, -4i64..=4).prop_map(|(g, e)| SurfaceData::new(g, e))
}

fn class() -> impl Strategy<Value = NumClass<Q>> {
    (rational(), rational(), rational(), rational())
        .prop_map(|(r, x, y, t)| NumClass::new(r, DivisorClass::new(x, y), t))
}

fn divisor() -> impl Strategy<Value = DivisorClass<Q>> {
    (rational(), rational()).prop_map(|(x, y)| DivisorClass::new(x, y))
}

fn matrix() -> impl Strategy<Value = Mat2<Q>> {
    (rational(), rational(), rational(), rational())
        .prop_map(|(a, b, c, d)| Mat2::new(a, b, c, d))
        .prop_filter("positive determinant", |m| m.det() > Q::zero())
}

fn lifted() -> impl Strategy<Value = LiftedGL<Q>> {
    (matrix(), -2i64..=2).prop_map(|(m, k)| LiftedGL::new(m, 2 * k).unwrap())
}

fn phase() -> impl Strategy<Value = PhasePoint<Q>> {
    (rational(), rational(), -3i64..=3)
        .prop_filter("nonzero", |(x, y, _)| !(x.is_zero() && y.is_zero()))
        .prop_map(|(x, y, k)| PhasePoint::phase_of(&c(x, y), Some(k)).unwrap())
}

fn glued() -> impl Strategy<Value = GluedDescriptor<Q>> {
    (lifted(), lifted()).prop_map(|(a1, a2)| GluedDescriptor::new(a1, a2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mukai_symmetric_and_bilinear(s in surface(), u in class(), v in class(), w in class(), k in rational()) {
        prop_assert_eq!(mukai_pair(&s, &u, &v), mukai_pair(&s, &v, &u));
        let lhs = mukai_pair(&s, &(u.scale(&k) + v.clone()), &w);
        let rhs = k * mukai_pair(&s, &u, &w) + mukai_pair(&s, &v, &w);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mukai_matches_reference(s in surface(), u in class(), v in class()) {
        let lib = mukai_pair(&s, &u.complexify(), &v.complexify());
        prop_assert_eq!(lib, mukai(s.e, &to_c_tuple(&tuple(&u)), &to_c_tuple(&tuple(&v))));
    }

    #[test]
    fn twisting_is_an_isometry(s in surface(), u in class(), v in class(), d in divisor()) {
        prop_assert_eq!(mukai_pair(&s, &u.twist(&s, &d), &v.twist(&s, &d)), mukai_pair(&s, &u, &v));
    }

    #[test]
    fn twist_composes(s in surface(), u in class(), d1 in divisor(), d2 in divisor()) {
        let twice = u.twist(&s, &d1).twist(&s, &d2);
        prop_assert_eq!(twice, u.twist(&s, &(d1 + d2)));
    }

    #[test]
    fn shift_is_signed(u in class(), n in -5i64..=5) {
        let shifted = u.shift(n);
        if n % 2 == 0 {
            prop_assert_eq!(shifted, u);
        } else {
            prop_assert_eq!(shifted, -u);
        }
    }

    #[test]
    fn exp_law(s in surface(), b1 in divisor(), w1 in divisor(), b2 in divisor(), w2 in divisor()) {
        let lhs = exp_divisor(&s, &b1, &w1).ring_mul(&s, &exp_divisor(&s, &b2, &w2));
        prop_assert_eq!(lhs, exp_divisor(&s, &(b1 + b2), &(w1 + w2)));
    }

    #[test]
    fn semiorthogonal_split(s in surface(), u in class()) {
        let (l, r) = (u.push_lambda1(&s), u.push_rho2(&s));
        let (d1, d2) = (l.embed_lambda1(&s), r.embed_rho2());
        prop_assert!(d1.push_rho2(&s).is_zero());
        prop_assert!(d2.push_lambda1(&s).is_zero());
        prop_assert_eq!(d1 + d2, u);
    }

    #[test]
    fn glued_charge_is_linear(s in surface(), gd in glued(), u in class(), v in class(), k in rational()) {
        let lhs = gd.charge(&s, &(u.scale(&k) + v.clone()));
        let rhs = gd.charge(&s, &u) * c(k, Q::zero()) + gd.charge(&s, &v);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pr1_represents_the_glued_charge(s in surface(), gd in glued(), u in class()) {
        prop_assert_eq!(mukai_pair(&s, &gd.pr1(&s), &u.complexify()), gd.charge(&s, &u));
    }

    #[test]
    fn group_action_on_charges(s in surface(), gd in glued(), g in lifted(), u in class()) {
        let moved = gd.act(&g);
        prop_assert_eq!(moved.charge(&s, &u), g.act_value(&gd.charge(&s, &u)));
        prop_assert_eq!(moved.pr1(&s), g.act_charge(&gd.pr1(&s)));
    }

    #[test]
    fn perversity_is_invariant(gd in glued(), g in lifted()) {
        prop_assert_eq!(gd.perversity().verdict, gd.act(&g).perversity().verdict);
        prop_assert_eq!(gd.perversity().verdict, gd.normalize().perversity().verdict);
        prop_assert!(gd.normalize().is_normalized());
    }

    #[test]
    fn classification_is_invariant(s in surface(), gd in glued(), g in lifted()) {
        let a = classify_skyscraper(&s, &StabilityDescriptor::Glued(gd.clone()));
        let b = classify_skyscraper(&s, &StabilityDescriptor::Glued(gd.act(&g)));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn group_laws(g in lifted(), h in lifted(), k in lifted()) {
        prop_assert_eq!(g.compose(&h).compose(&k), g.compose(&h.compose(&k)));
        prop_assert!(g.compose(&g.inverse()).is_identity());
        prop_assert_eq!(g.compose(&LiftedGL::identity()), g.clone());
        prop_assert_eq!(g.inverse().inverse(), g);
    }

    #[test]
    fn lifts_are_increasing_and_periodic(g in lifted(), p in phase(), r in phase()) {
        let (gp, gr) = (g.apply(&p), g.apply(&r));
        prop_assert_eq!(p.cmp_phase(&r), gp.cmp_phase(&gr));
        prop_assert_eq!(g.apply(&p.shift(1)), gp.shift(1));
        prop_assert_eq!(g.inverse().apply(&gp), p);
    }

    #[test]
    fn lift_ray_follows_matrix(g in lifted(), p in phase()) {
        let (x, y) = p.ray();
        let (ux, uy) = g.matrix().apply(&x, &y);
        let (vx, vy) = g.apply(&p).ray();
        // same ray: parallel and pointing the same way
        prop_assert!((ux.clone() * vy.clone() - uy.clone() * vx.clone()).is_zero());
        prop_assert!(ux * vx + uy * vy > Q::zero());
    }

    #[test]
    fn phase_order_matches_floats(p in phase(), r in phase()) {
        let (a, b) = (p.to_f64(), r.to_f64());
        if (a - b).abs() > 1e-9 {
            prop_assert_eq!(p.cmp_phase(&r), a.partial_cmp(&b).unwrap());
        }
    }

    #[test]
    fn wall_family_reproduces_pr1(e in -4i64..=4, k in 1i64..=12, w in positive(), y in rational()) {
        let s = SurfaceData::new(2, e);
        let a = q(-k, 3);
        let b = a.clone() * q(e, 2);
        let gd = GluedDescriptor::from_inverse_entries(a.clone(), b.clone(), Q::zero(), a.clone(), 1).unwrap();
        let BoundaryOutcome::Witness(wit) = boundary_solve_with(&s, &gd, w, y).unwrap() else {
            return Err(TestCaseError::fail("refused a wall gluing"));
        };
        prop_assert_eq!(ctuple(&wit.charge_vector(&s)), pr1_closed(e, &(a.clone(), b, Q::zero(), a)));
        prop_assert!(wit.m_inv.det() > Q::zero());
    }

    #[test]
    fn wall_refuses_off_shear(e in -4i64..=4, k in 1i64..=12, delta in rational()) {
        prop_assume!(!delta.is_zero());
        let s = SurfaceData::new(2, e);
        let a = q(-k, 3);
        let b = a.clone() * q(e, 2) + delta;
        let gd = GluedDescriptor::from_inverse_entries(a.clone(), b.clone(), Q::zero(), a, 1).unwrap();
        match boundary_solve_with(&s, &gd, Q::one(), Q::zero()).unwrap() {
            BoundaryOutcome::Refusal(r) => prop_assert_eq!(r.actual, b),
            BoundaryOutcome::Witness(_) => return Err(TestCaseError::fail("witness off the shear line")),
        }
    }

    #[test]
    fn descriptor_json_round_trip(gd in glued()) {
        let d = StabilityDescriptor::Glued(gd);
        let json = descriptor_to_json(&d);
        let back = descriptor_from_json::<Q>(&json).unwrap();
        prop_assert_eq!(descriptor_to_json(&back), json);
        prop_assert_eq!(back, d);
    }
}

#[test]
fn wall_phases_coincide() {
    let s = SurfaceData::new(1, 3);
    let gd = GluedDescriptor::new(LiftedGL::shift(1), LiftedGL::identity());
    assert_eq!(gd.perversity().verdict, PerversityVerdict::EqualOne);
    let zf = gd.charge(&s, &ch_object(&s, &fiber_spec()));
    let zq = gd.charge(&s, &ch_object(&s, &fiber_quotient_spec()));
    // O_f and O_f(-C0)[1] both have charge -1 on the wall, summing to Z(O_x)
    assert_eq!(zf, c(-Q::one(), Q::zero()));
    assert_eq!(zq, c(-Q::one(), Q::zero()));
    let p = PhasePoint::<Q>::phase_of(&zf, None).unwrap();
    assert_eq!(p.cmp_phase(&PhasePoint::integer(1)), Ordering::Equal);
}

fn to_f64_lift(g: &LiftedGL<Q>) -> LiftedGL<f64> {
    use num_traits::ToPrimitive;
    let m = g.matrix();
    let f = |x: &Q| x.to_f64().unwrap();
    LiftedGL::new(Mat2::new(f(&m.a), f(&m.b), f(&m.c), f(&m.d)), g.lift_shift()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn float_instantiation_tracks_exact(s in surface(), gd in glued(), u in class()) {
        use num_traits::ToPrimitive;
        let exact = gd.charge(&s, &u);
        let fgd = GluedDescriptor::new(to_f64_lift(&gd.a1), to_f64_lift(&gd.a2));
        let fu = NumClass::new(
            u.r.to_f64().unwrap(),
            DivisorClass::new(u.c1.c0.to_f64().unwrap(), u.c1.f.to_f64().unwrap()),
            u.ch2.to_f64().unwrap(),
        );
        let approx = fgd.charge(&s, &fu);
        let scale = 1.0 + exact.re.to_f64().unwrap().abs() + exact.im.to_f64().unwrap().abs();
        prop_assert!((approx.re - exact.re.to_f64().unwrap()).abs() < 1e-9 * scale);
        prop_assert!((approx.im - exact.im.to_f64().unwrap()).abs() < 1e-9 * scale);
        prop_assert_eq!(fgd.a1.value_at_zero().winding(), gd.a1.value_at_zero().winding());
    }
}
