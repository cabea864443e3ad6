//! Stability-condition descriptors and their central charges.
//!
//! Two families are represented:
//!
//! * [`DivisorialDescriptor`]: `Z(E) = (exp(B + i omega), ch E)` followed by
//!   an optional group translate, i.e. geometric stability conditions.
//! * [`GluedDescriptor`]: the gluing of `sigma_st.A1` on
//!   `p^* D(C) (x) O(-C0)` with `sigma_st.A2` on `p^* D(C)`, with charge
//!   `Z = Z1 o lambda_1 + Z2 o rho_2`.
//!
//! The group acts on the right: `sigma.(A g) = (sigma.A).g`. Descriptors keep
//! both translates; [`GluedDescriptor::normalize`] is explicit.

use std::cmp::Ordering;

use num_complex::Complex;

use crate::error::{Result, StabError};
use crate::lattice::{
    exp_divisor, mukai_pair, ChernVector, ComplexClass, CurveClass, DivisorClass, NumClass,
    SurfaceData,
};
use crate::liftedphase::{LiftedGL, PhasePoint};
use crate::scalar::{Gaussian, Scalar};

/// Geometric stability condition data `(B, omega)` plus a translate.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorialDescriptor<T> {
    pub b: DivisorClass<T>,
    pub omega: DivisorClass<T>,
    pub translate: LiftedGL<T>,
}

/// Result of the polarization screen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenReport {
    /// Set when acceptance does not certify ampleness on this surface.
    pub note: Option<String>,
}

impl<T: Scalar> DivisorialDescriptor<T> {
    pub fn new(b: DivisorClass<T>, omega: DivisorClass<T>) -> Self {
        Self { b, omega, translate: LiftedGL::identity() }
    }

    pub fn with_translate(mut self, g: LiftedGL<T>) -> Self {
        self.translate = g;
        self
    }

    /// Positivity screen for `omega = z C0 + w f`.
    ///
    /// Requires `omega^2 > 0`, `omega.f = z > 0`, and `w > 0` when `e >= 0`
    /// or `omega.C0 > 0` when `e < 0`. For `e <= 0` this is exactly the ample
    /// cone; for `e > 0` it accepts a proper subcone.
    pub fn screen(&self, s: &SurfaceData) -> Result<ScreenReport> {
        let om = &self.omega;
        let sq = s.intersect(om, om);
        let dot_f = s.intersect(om, &DivisorClass::fiber());
        let dot_c0 = s.intersect(om, &DivisorClass::section());
        let fail = |why: &str| Err(StabError::PositivityScreen(why.to_string()));
        if !sq.is_pos() {
            return fail("omega^2 must be positive");
        }
        if !dot_f.is_pos() {
            return fail("omega.f must be positive");
        }
        if s.e >= 0 {
            if !om.f.is_pos() {
                return fail("fiber coefficient of omega must be positive");
            }
        } else if !dot_c0.is_pos() {
            return fail("omega.C0 must be positive");
        }
        let note = (s.e > 0)
            .then(|| "screen, not full ampleness test: a subcone of the ample cone when e > 0".into());
        Ok(ScreenReport { note })
    }

    /// `pr_1`: the vector `M^{-1} exp(B + i omega)`.
    pub fn pr1(&self, s: &SurfaceData) -> ComplexClass<T> {
        self.translate.act_charge(&exp_divisor(s, &self.b, &self.omega))
    }

    pub fn charge(&self, s: &SurfaceData, c: &NumClass<T>) -> Result<Gaussian<T>> {
        self.screen(s)?;
        Ok(mukai_pair(s, &self.pr1(s), &c.complexify()))
    }

    pub fn act(&self, g: &LiftedGL<T>) -> Self {
        Self { translate: self.translate.compose(g), ..self.clone() }
    }
}

/// Glued pre-stability condition from translates of the standard condition.
#[derive(Clone, Debug, PartialEq)]
pub struct GluedDescriptor<T> {
    /// Translate on `p^* D(C) (x) O(-C0)`.
    pub a1: LiftedGL<T>,
    /// Translate on `p^* D(C)`.
    pub a2: LiftedGL<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PerversityVerdict {
    LessThanOne,
    EqualOne,
    GreaterThanOne,
}

impl PerversityVerdict {
    pub fn name(self) -> &'static str {
        match self {
            Self::LessThanOne => "LessThanOne",
            Self::EqualOne => "EqualOne",
            Self::GreaterThanOne => "GreaterThanOne",
        }
    }

    pub fn at_least_one(self) -> bool {
        self != Self::LessThanOne
    }
}

/// Gluing perversity with the phases it was computed from.
#[derive(Clone, Debug)]
pub struct PerversityComparison<T> {
    pub verdict: PerversityVerdict,
    /// `per = f1(f2^{-1}(0))`, the offset after normalizing `A2` away.
    pub value: PhasePoint<T>,
    /// Raw `f1(0)`.
    pub phi1: PhasePoint<T>,
    /// Raw `f2(0)`.
    pub phi2: PhasePoint<T>,
}

impl<T: Scalar> GluedDescriptor<T> {
    pub fn new(a1: LiftedGL<T>, a2: LiftedGL<T>) -> Self {
        Self { a1, a2 }
    }

    /// Normalized descriptor with `A1` given by `M1^{-1} = (a, b; c, d)`
    /// and `f1(0)` of winding `k`.
    pub fn from_inverse_entries(a: T, b: T, c: T, d: T, winding: i64) -> Result<Self> {
        let inv = crate::liftedphase::Mat2::new(a, b, c, d);
        let m = inv.inverse().ok_or(StabError::NonPositiveDeterminant)?;
        Ok(Self::new(LiftedGL::with_winding(m, winding)?, LiftedGL::identity()))
    }

    pub fn is_normalized(&self) -> bool {
        self.a2.is_identity()
    }

    /// `Z_j` on a curve class: `M_j^{-1}(-deg + i rank)`.
    fn factor_charge(a: &LiftedGL<T>, c: &CurveClass<T>) -> Gaussian<T> {
        a.act_value(&c.standard_charge())
    }

    /// `Z(c) = Z1(lambda_1 c) + Z2(rho_2 c)`.
    pub fn charge(&self, s: &SurfaceData, c: &NumClass<T>) -> Gaussian<T> {
        Self::factor_charge(&self.a1, &c.push_lambda1(s))
            + Self::factor_charge(&self.a2, &c.push_rho2(s))
    }

    /// Closed-form charge vector of a normalized gluing with
    /// `M1^{-1} = (a, b; c, d)`:
    /// `((1-a) - ic, -C0 + [(e(a+1)/2 - b) + i(ce/2 + 1 - d)] f, -i)`.
    pub fn pr1_normalized(&self, s: &SurfaceData) -> Result<ComplexClass<T>> {
        if !self.is_normalized() {
            return Err(StabError::NotNormalized);
        }
        let inv = self.a1.matrix_inverse();
        let (a, b, c, d) = (inv.a, inv.b, inv.c, inv.d);
        let one = T::one();
        let half_e = T::ratio(s.e, 2);
        let r = Complex::new(one.clone() - a.clone(), -c.clone());
        let f_coeff = Complex::new(
            half_e.clone() * (a + one.clone()) - b,
            half_e * c + one - d,
        );
        let c1 = DivisorClass::new(Complex::new(-T::one(), T::zero()), f_coeff);
        Ok(ChernVector::new(r, c1, Complex::new(T::zero(), -T::one())))
    }

    /// Charge vector of any gluing, via normalization and the translate `A2`.
    pub fn pr1(&self, s: &SurfaceData) -> ComplexClass<T> {
        let normalized = self.normalize();
        let v = normalized.pr1_normalized(s).expect("normalize() yields A2 = identity");
        self.a2.act_charge(&v)
    }

    /// Right action: both translates are composed with `g`.
    pub fn act(&self, g: &LiftedGL<T>) -> Self {
        Self::new(self.a1.compose(g), self.a2.compose(g))
    }

    /// Equivalent descriptor with `A2 = identity`.
    pub fn normalize(&self) -> Self {
        self.act(&self.a2.inverse())
    }

    pub fn perversity(&self) -> PerversityComparison<T> {
        let value = self.a1.compose(&self.a2.inverse()).value_at_zero();
        let verdict = match value.cmp_phase(&PhasePoint::integer(1)) {
            Ordering::Less => PerversityVerdict::LessThanOne,
            Ordering::Equal => PerversityVerdict::EqualOne,
            Ordering::Greater => PerversityVerdict::GreaterThanOne,
        };
        PerversityComparison {
            verdict,
            value,
            phi1: self.a1.value_at_zero(),
            phi2: self.a2.value_at_zero(),
        }
    }

    /// Locally finite stability condition iff perversity is at least one.
    pub fn is_stability(&self) -> bool {
        self.perversity().verdict.at_least_one()
    }
}

/// Either descriptor family.
#[derive(Clone, Debug, PartialEq)]
pub enum StabilityDescriptor<T> {
    Divisorial(DivisorialDescriptor<T>),
    Glued(GluedDescriptor<T>),
}

impl<T: Scalar> StabilityDescriptor<T> {
    pub fn pr1(&self, s: &SurfaceData) -> ComplexClass<T> {
        match self {
            Self::Divisorial(d) => d.pr1(s),
            Self::Glued(g) => g.pr1(s),
        }
    }

    pub fn charge(&self, s: &SurfaceData, c: &NumClass<T>) -> Result<Gaussian<T>> {
        match self {
            Self::Divisorial(d) => d.charge(s, c),
            Self::Glued(g) => Ok(g.charge(s, c)),
        }
    }

    pub fn act(&self, g: &LiftedGL<T>) -> Self {
        match self {
            Self::Divisorial(d) => Self::Divisorial(d.act(g)),
            Self::Glued(gd) => Self::Glued(gd.act(g)),
        }
    }
}
