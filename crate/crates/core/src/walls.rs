//! Skyscraper-sheaf stability across the glued wall.
//!
//! * [`classify_skyscraper`]: geometric conditions keep `O_x` stable
//!   (moduli `S`); glued conditions of perversity one make it strictly
//!   semistable (moduli `C`); perversity above one destabilizes it by `O_f`
//!   (empty moduli).
//! * [`boundary_solve`]: which perversity-one gluings are limits of
//!   geometric conditions, with an explicit `(M^{-1}, B, omega)` witness.
//! * [`deform_side`]: which side of the wall a nearby charge falls on,
//!   read off from the phases of `O_f` and `O_f(-C0)[1]`.
//! * [`neighborhood_check`]: the small-deformation bound
//!   `|W(E) - Z(E)| < s |Z(E)|` on a finite list of classes.

use std::cmp::Ordering;


use crate::catalog::{self, ch_object, ObjectSpec};
use crate::conditions::{GluedDescriptor, PerversityVerdict, StabilityDescriptor};
use crate::error::{BoundaryPrecondition, Result, StabError};
use crate::lattice::{exp_divisor, mukai_pair, ComplexClass, DivisorClass, NumClass, SurfaceData};
use crate::liftedphase::{Mat2, PhasePoint};
use crate::scalar::{norm_sqr, Gaussian, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SkyscraperKind {
    StableGeometric,
    StrictlySemistableWall,
    UnstableGluingSide,
}

impl SkyscraperKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::StableGeometric => "StableGeometric",
            Self::StrictlySemistableWall => "StrictlySemistableWall",
            Self::UnstableGluingSide => "UnstableGluingSide",
        }
    }

    /// Moduli of S-equivalence classes of objects of class `[O_x]`.
    pub fn moduli_label(self) -> &'static str {
        match self {
            Self::StableGeometric => "S",
            Self::StrictlySemistableWall => "C",
            Self::UnstableGluingSide => "empty",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkyscraperVerdict {
    pub kind: SkyscraperKind,
    /// `O_f` when skyscrapers are unstable.
    pub destabilizer: Option<ObjectSpec>,
}

impl SkyscraperVerdict {
    pub fn moduli_label(&self) -> &'static str {
        self.kind.moduli_label()
    }
}

pub fn classify_skyscraper<T: Scalar>(
    s: &SurfaceData,
    d: &StabilityDescriptor<T>,
) -> Result<SkyscraperVerdict> {
    match d {
        StabilityDescriptor::Divisorial(dd) => {
            dd.screen(s)?;
            Ok(SkyscraperVerdict { kind: SkyscraperKind::StableGeometric, destabilizer: None })
        }
        StabilityDescriptor::Glued(gd) => match gd.perversity().verdict {
            PerversityVerdict::LessThanOne => Err(StabError::PerversityBelowOne),
            PerversityVerdict::EqualOne => Ok(SkyscraperVerdict {
                kind: SkyscraperKind::StrictlySemistableWall,
                destabilizer: None,
            }),
            PerversityVerdict::GreaterThanOne => Ok(SkyscraperVerdict {
                kind: SkyscraperKind::UnstableGluingSide,
                destabilizer: Some(catalog::fiber_spec()),
            }),
        },
    }
}

/// Boundary point `Z = M^{-1} exp(B + i omega)` with `omega = w f`, so
/// `omega^2 = 0`: a boundary-degenerate polarization.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryWitness<T> {
    pub m_inv: Mat2<T>,
    pub b: DivisorClass<T>,
    pub omega: DivisorClass<T>,
    /// Free parameters of the solution family: `omega = w f`, `B = x C0 + y f`.
    pub w: T,
    pub y: T,
}

impl<T: Scalar> BoundaryWitness<T> {
    /// Recompute `M^{-1} exp(B + i omega)`.
    pub fn charge_vector(&self, s: &SurfaceData) -> ComplexClass<T> {
        let e = exp_divisor(s, &self.b, &self.omega);
        let inv = &self.m_inv;
        crate::lattice::ChernVector::new(
            inv.apply_complex(&e.r),
            DivisorClass::new(inv.apply_complex(&e.c1.c0), inv.apply_complex(&e.c1.f)),
            inv.apply_complex(&e.ch2),
        )
    }

    pub fn note(&self) -> &'static str {
        "boundary-degenerate polarization: omega^2 = 0"
    }
}

/// Equations of the elimination that can fail once preconditions hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EliminationEquation {
    /// The `f`-coefficient and `ch2` equations force `b = a e / 2`.
    ShearEqualsHalfAE,
}

impl EliminationEquation {
    pub fn name(self) -> &'static str {
        match self {
            Self::ShearEqualsHalfAE => "b = a*e/2",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RefusalCertificate<T> {
    pub equation: EliminationEquation,
    /// Actual value of the constrained entry.
    pub actual: T,
    /// Value the equation requires.
    pub required: T,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryOutcome<T> {
    Witness(BoundaryWitness<T>),
    Refusal(RefusalCertificate<T>),
}

/// Entries `(a, b, d)` of `M1^{-1}` after checking the preconditions.
fn wall_entries<T: Scalar>(gd: &GluedDescriptor<T>) -> Result<(T, T, T)> {
    let fail = |p| Err(StabError::BoundaryPrecondition(p));
    if !gd.is_normalized() {
        return fail(BoundaryPrecondition::NotNormalized);
    }
    if gd.perversity().verdict != PerversityVerdict::EqualOne {
        return fail(BoundaryPrecondition::PerversityNotOne);
    }
    let inv = gd.a1.matrix_inverse();
    if !inv.c.is_zero() {
        return fail(BoundaryPrecondition::LowerLeftNonzero);
    }
    if !inv.a.is_neg() {
        return fail(BoundaryPrecondition::DiagonalNotNegative);
    }
    if inv.a != inv.d {
        return fail(BoundaryPrecondition::DiagonalMismatch);
    }
    Ok((inv.a, inv.b, inv.d))
}

/// Canonical boundary witness, `(w, y) = (1, 0)`.
pub fn boundary_solve<T: Scalar>(s: &SurfaceData, gd: &GluedDescriptor<T>) -> Result<BoundaryOutcome<T>> {
    boundary_solve_with(s, gd, T::one(), T::zero())
}

/// Solve `pr_1(gd) = M^{-1} exp(B + i omega)` with `M^{-1} = (al, be; ga, de)`,
/// `B = x C0 + y f`, `omega = z C0 + w f`.
///
/// Matching components: `al = 1 - a`, `ga = 0`; the `C0` part gives `z = 0`
/// and `x = 1/(a - 1)`; the imaginary `ch2` part with the imaginary `f` part
/// forces `a = d` and `de = (1 - a)/w`; the real `ch2` part with the real
/// `f` part forces `b = a e/2`, leaving `be = (e/2 - (1 - a) y)/w`.
/// `(w > 0, y)` parameterize the solutions.
pub fn boundary_solve_with<T: Scalar>(
    s: &SurfaceData,
    gd: &GluedDescriptor<T>,
    w: T,
    y: T,
) -> Result<BoundaryOutcome<T>> {
    let (a, b, _) = wall_entries(gd)?;
    if !w.is_pos() {
        return Err(StabError::Input("free parameter w must be positive".into()));
    }
    let half_e = T::ratio(s.e, 2);
    let required = a.clone() * half_e.clone();
    if b != required {
        return Ok(BoundaryOutcome::Refusal(RefusalCertificate {
            equation: EliminationEquation::ShearEqualsHalfAE,
            actual: b,
            required,
        }));
    }
    let one = T::one();
    let alpha = one.clone() - a.clone();
    let beta = (half_e - alpha.clone() * y.clone()) / w.clone();
    let delta = alpha.clone() / w.clone();
    let x = one / (a - T::one());
    let witness = BoundaryWitness {
        m_inv: Mat2::new(alpha, beta, T::zero(), delta),
        b: DivisorClass::new(x, y.clone()),
        omega: DivisorClass::new(T::zero(), w.clone()),
        w,
        y,
    };
    debug_assert!(witness.m_inv.det().is_pos());
    let target = gd.pr1_normalized(s)?;
    assert_eq!(witness.charge_vector(s), target, "boundary witness failed verification");
    Ok(BoundaryOutcome::Witness(witness))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `O_f(-C0)[1]` above `O_f`: skyscrapers become stable.
    GeometricSide,
    /// `O_f` above `O_f(-C0)[1]`: `O_f` destabilizes skyscrapers.
    GluingSide,
    OnWall,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Self::GeometricSide => "GeometricSide",
            Self::GluingSide => "GluingSide",
            Self::OnWall => "OnWall",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SideVerdict<T> {
    pub side: Side,
    /// `psi_W(O_f)`.
    pub fiber_phase: PhasePoint<T>,
    /// `psi_W(O_f(-C0)[1])`.
    pub quotient_phase: PhasePoint<T>,
}

/// Phase of a perturbed charge, lifted into `(1/2, 3/2)` around the common
/// glued phase 1.
fn phase_near_one<T: Scalar>(z: &Gaussian<T>, what: &str) -> Result<PhasePoint<T>> {
    if z.re.is_zero() && z.im.is_zero() {
        return Err(StabError::ZeroCentralCharge);
    }
    if !z.re.is_neg() {
        return Err(StabError::TooFarFromGlued(format!(
            "phase of {what} differs from 1 by at least 1/2"
        )));
    }
    PhasePoint::lift_at_or_above(&z.re, &z.im, &PhasePoint::half_integer(0))
}

pub fn deform_side<T: Scalar>(
    s: &SurfaceData,
    gd: &GluedDescriptor<T>,
    w: &ComplexClass<T>,
) -> Result<SideVerdict<T>> {
    if !gd.is_normalized() {
        return Err(StabError::NotNormalized);
    }
    if gd.perversity().verdict != PerversityVerdict::EqualOne {
        return Err(StabError::BoundaryPrecondition(BoundaryPrecondition::PerversityNotOne));
    }
    let charge = |spec: &ObjectSpec| mukai_pair(s, w, &ch_object::<T>(s, spec).complexify());
    let fiber_phase = phase_near_one(&charge(&catalog::fiber_spec()), "O_f")?;
    let quotient_phase = phase_near_one(&charge(&catalog::fiber_quotient_spec()), "O_f(-C0)[1]")?;
    let side = match quotient_phase.cmp_phase(&fiber_phase) {
        Ordering::Greater => Side::GeometricSide,
        Ordering::Less => Side::GluingSide,
        Ordering::Equal => Side::OnWall,
    };
    Ok(SideVerdict { side, fiber_phase, quotient_phase })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NeighborhoodEntry<T> {
    /// `|W - Z|^2 / |Z|^2`.
    pub ratio_sq: T,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NeighborhoodReport<T> {
    pub entries: Vec<NeighborhoodEntry<T>>,
    /// Lower bound for `||W - Z||_sigma^2` over the true semistable set.
    pub max_ratio_sq: T,
    pub all_pass: bool,
}

/// Check `|W(c) - Z(c)|^2 < s^2 |Z(c)|^2` for each class, with `s` standing
/// in for `sin(pi eps)`.
pub fn neighborhood_check<T: Scalar>(
    surface: &SurfaceData,
    z: &ComplexClass<T>,
    w: &ComplexClass<T>,
    s: &T,
    classes: &[NumClass<T>],
) -> Result<NeighborhoodReport<T>> {
    if !s.is_pos() || *s >= T::one() {
        return Err(StabError::ThresholdOutOfRange);
    }
    let s_sq = s.clone() * s.clone();
    let mut entries = Vec::with_capacity(classes.len());
    let mut max_ratio_sq = T::zero();
    for c in classes {
        let cc = c.complexify();
        let zc = mukai_pair(surface, z, &cc);
        let wc = mukai_pair(surface, w, &cc);
        let z_sq = norm_sqr(&zc);
        if z_sq.is_zero() {
            return Err(StabError::ZeroCentralCharge);
        }
        let ratio_sq = norm_sqr(&(wc - zc)) / z_sq;
        if ratio_sq > max_ratio_sq {
            max_ratio_sq = ratio_sq.clone();
        }
        let passes = ratio_sq < s_sq;
        entries.push(NeighborhoodEntry { ratio_sq, passes });
    }
    let all_pass = entries.iter().all(|e| e.passes);
    Ok(NeighborhoodReport { entries, max_ratio_sq, all_pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::DivisorialDescriptor;
    use crate::liftedphase::LiftedGL;
    use crate::Q;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn wall(a: Q, b: Q) -> GluedDescriptor<Q> {
        GluedDescriptor::from_inverse_entries(a.clone(), b, q(0, 1), a, 1).unwrap()
    }

    #[test]
    fn classify_examples() {
        let s = SurfaceData::new(2, 2);
        let div = StabilityDescriptor::Divisorial(DivisorialDescriptor::<Q>::new(
            DivisorClass::zero(),
            DivisorClass::from_ints(1, 1),
        ));
        let v = classify_skyscraper(&s, &div).unwrap();
        assert_eq!((v.kind, v.moduli_label()), (SkyscraperKind::StableGeometric, "S"));

        let gd = GluedDescriptor::<Q>::new(LiftedGL::shift(1), LiftedGL::identity());
        let v = classify_skyscraper(&s, &StabilityDescriptor::Glued(gd)).unwrap();
        assert_eq!((v.kind, v.moduli_label()), (SkyscraperKind::StrictlySemistableWall, "C"));

        let gd = GluedDescriptor::<Q>::new(LiftedGL::shift(2), LiftedGL::identity());
        let v = classify_skyscraper(&s, &StabilityDescriptor::Glued(gd)).unwrap();
        assert_eq!(v.kind, SkyscraperKind::UnstableGluingSide);
        assert_eq!(v.moduli_label(), "empty");
        assert_eq!(v.destabilizer.unwrap().to_string(), "O_f");

        let gd = GluedDescriptor::<Q>::new(LiftedGL::identity(), LiftedGL::identity());
        assert_eq!(
            classify_skyscraper(&s, &StabilityDescriptor::Glued(gd)),
            Err(StabError::PerversityBelowOne)
        );
        let bad = StabilityDescriptor::Divisorial(DivisorialDescriptor::<Q>::new(
            DivisorClass::zero(),
            DivisorClass::from_ints(0, 1),
        ));
        assert!(classify_skyscraper(&s, &bad).is_err());
    }

    #[test]
    fn boundary_example_e2() {
        let s = SurfaceData::new(2, 2);
        let out = boundary_solve(&s, &wall(q(-1, 1), q(-1, 1))).unwrap();
        let BoundaryOutcome::Witness(w) = out else { panic!("expected witness") };
        assert_eq!(w.m_inv, Mat2::from_ints(2, 1, 0, 2));
        assert_eq!(w.b, DivisorClass::new(q(-1, 2), q(0, 1)));
        assert_eq!(w.omega, DivisorClass::fiber());
        let v = w.charge_vector(&s);
        let c = |re: i64, im: i64| Gaussian::new(q(re, 1), q(im, 1));
        assert_eq!(v.r, c(2, 0));
        assert_eq!(v.c1.c0, c(-1, 0));
        assert_eq!(v.c1.f, c(1, 2));
        assert_eq!(v.ch2, c(0, -1));
    }

    #[test]
    fn boundary_pure_shift_needs_e0() {
        let out = boundary_solve(&SurfaceData::new(1, 0), &wall(q(-1, 1), q(0, 1))).unwrap();
        assert!(matches!(out, BoundaryOutcome::Witness(_)));
        let out = boundary_solve(&SurfaceData::new(1, 2), &wall(q(-1, 1), q(0, 1))).unwrap();
        let BoundaryOutcome::Refusal(cert) = out else { panic!("expected refusal") };
        assert_eq!(cert.equation, EliminationEquation::ShearEqualsHalfAE);
        assert_eq!(cert.actual, q(0, 1));
        assert_eq!(cert.required, q(-1, 1));
    }

    #[test]
    fn boundary_preconditions() {
        let s = SurfaceData::new(1, 2);
        let err = |gd: GluedDescriptor<Q>| match boundary_solve(&s, &gd) {
            Err(StabError::BoundaryPrecondition(p)) => p,
            other => panic!("unexpected {other:?}"),
        };
        let not_norm = GluedDescriptor::new(LiftedGL::shift(3), LiftedGL::shift(2));
        assert_eq!(err(not_norm), BoundaryPrecondition::NotNormalized);
        let two = GluedDescriptor::new(LiftedGL::shift(2), LiftedGL::identity());
        assert_eq!(err(two), BoundaryPrecondition::PerversityNotOne);
        let mismatch = GluedDescriptor::from_inverse_entries(q(-1, 1), q(-1, 1), q(0, 1), q(-2, 1), 1).unwrap();
        assert_eq!(err(mismatch), BoundaryPrecondition::DiagonalMismatch);
    }

    #[test]
    fn side_on_wall_and_geometric() {
        for e in [0, 2] {
            let s = SurfaceData::new(2, e);
            let a = q(-3, 2);
            let gd = wall(a.clone(), a.clone() * q(e, 2));
            let on = deform_side(&s, &gd, &gd.pr1(&s)).unwrap();
            assert_eq!(on.side, Side::OnWall);
            assert_eq!(on.fiber_phase, PhasePoint::integer(1));

            let BoundaryOutcome::Witness(w) = boundary_solve(&s, &gd).unwrap() else { panic!() };
            let omega = DivisorClass::new(q(1, 50), q(1, 1));
            let m = w.m_inv.inverse().unwrap();
            let d = DivisorialDescriptor::new(w.b.clone(), omega)
                .with_translate(LiftedGL::new(m, 0).unwrap());
            let v = deform_side(&s, &gd, &d.pr1(&s)).unwrap();
            assert_eq!(v.side, Side::GeometricSide);
        }
    }

    #[test]
    fn side_refuses_far_charges() {
        let s = SurfaceData::new(2, 0);
        let gd = wall(q(-1, 1), q(0, 1));
        let far = GluedDescriptor::<Q>::new(LiftedGL::identity(), LiftedGL::identity()).pr1(&s);
        assert!(matches!(deform_side(&s, &gd, &far), Err(StabError::TooFarFromGlued(_))));
    }

    #[test]
    fn neighborhood_examples() {
        let s = SurfaceData::new(1, 1);
        let gd = wall(q(-1, 1), q(-1, 2));
        let z = gd.pr1(&s);
        let classes: Vec<NumClass<Q>> =
            catalog::default_catalog(&s).into_iter().map(|e| e.ch).collect();
        let thr = q(1, 3);
        let same = neighborhood_check(&s, &z, &z, &thr, &classes).unwrap();
        assert!(same.all_pass);
        assert_eq!(same.max_ratio_sq, q(0, 1));

        let scaled = z.scale(&Gaussian::new(q(1, 1) + thr.clone() / q(2, 1), q(0, 1)));
        let r = neighborhood_check(&s, &z, &scaled, &thr, &classes).unwrap();
        assert!(r.all_pass);
        assert!(r.entries.iter().all(|e| e.ratio_sq == q(1, 36)));

        let doubled = z.scale(&Gaussian::new(q(2, 1), q(0, 1)));
        let r = neighborhood_check(&s, &z, &doubled, &q(1, 2), &classes).unwrap();
        assert!(r.entries.iter().all(|e| !e.passes));
        assert!(neighborhood_check(&s, &z, &z, &q(1, 1), &classes).is_err());
    }
}
