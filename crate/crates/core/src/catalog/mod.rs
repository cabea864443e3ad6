//! Named test objects, their Chern characters, and their phases under
//! glued conditions.
//!
//! Every entry is classified by the Orlov decomposition
//! `D(S) = <p^* D(C) (x) O(-C0), p^* D(C)>`: an object lies in the second
//! factor (D2) iff `lambda_1` kills its class, in the first (D1) iff `rho_2`
//! does, and is Mixed otherwise. Single-factor objects have a phase under
//! any glued condition; Mixed ones (`O_x`, `O_C0`, ...) need a
//! Harder-Narasimhan filtration and get none here.

mod parser;

pub use parser::{
    format_divisor, parse_divisor, parse_object, Atom, IntDivisor, ObjectSpec, ParseError, Suffix,
};

use crate::conditions::GluedDescriptor;
use crate::error::{Result, StabError};
use crate::lattice::{ChernVector, CurveClass, DivisorClass, NumClass, SurfaceData};
use crate::liftedphase::PhasePoint;
use crate::scalar::Scalar;

/// Chern character of an object expression.
pub fn ch_object<T: Scalar>(s: &SurfaceData, spec: &ObjectSpec) -> NumClass<T> {
    let torsion = |d: DivisorClass<T>| {
        // ch(O_D) = (0, D, -D^2/2) from 0 -> O(-D) -> O_S -> O_D -> 0
        let sq = s.intersect(&d, &d);
        ChernVector::new(T::zero(), d, -sq / T::from_int(2))
    };
    let mut ch = match &spec.atom {
        Atom::StructureSheaf => NumClass::unit(),
        Atom::Point => NumClass::integral(0, 0, 0, 2),
        Atom::Fiber => torsion(DivisorClass::fiber()),
        Atom::Section => torsion(DivisorClass::section()),
        Atom::LineBundle(d) => NumClass::exp_of(s, &d.to_class()),
        Atom::Pullback { rank, deg } => CurveClass::from_ints(*rank, *deg).embed_rho2(),
    };
    for suffix in &spec.suffixes {
        ch = match suffix {
            Suffix::Twist(d) => ch.twist(s, &d.to_class()),
            Suffix::Shift(n) => ch.shift(*n),
        };
    }
    ch
}

/// Which factor of the semiorthogonal decomposition contains the object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GluingComponent {
    D1,
    D2,
    Mixed,
}

impl GluingComponent {
    pub fn name(self) -> &'static str {
        match self {
            Self::D1 => "D1",
            Self::D2 => "D2",
            Self::Mixed => "Mixed",
        }
    }

    pub fn of_class<T: Scalar>(s: &SurfaceData, ch: &NumClass<T>) -> Self {
        if ch.push_lambda1(s).is_zero() {
            Self::D2
        } else if ch.push_rho2(s).is_zero() {
            Self::D1
        } else {
            Self::Mixed
        }
    }
}

/// Curve-side class of a single-factor object and its phase under the
/// standard condition on the curve.
#[derive(Clone, Debug)]
pub struct FiberPhaseData<T> {
    pub curve_class: CurveClass<T>,
    pub standard_phase: PhasePoint<T>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry<T> {
    pub spec: ObjectSpec,
    pub ch: NumClass<T>,
    pub component: GluingComponent,
    pub fiber_phase: Option<FiberPhaseData<T>>,
}

impl<T: Scalar> CatalogEntry<T> {
    pub fn new(s: &SurfaceData, spec: ObjectSpec) -> Result<Self> {
        let ch = ch_object::<T>(s, &spec);
        ch.check_integral()?;
        if ch.is_zero() {
            return Err(StabError::ZeroCurveClass);
        }
        let component = GluingComponent::of_class(s, &ch);
        let fiber_phase = match component {
            GluingComponent::Mixed => None,
            _ => Some(Self::standard_phase_data(s, &spec, component)?),
        };
        Ok(Self { spec, ch, component, fiber_phase })
    }

    pub fn parse(s: &SurfaceData, text: &str) -> Result<Self> {
        Self::new(s, parse_object(text)?)
    }

    fn curve_class(s: &SurfaceData, ch: &NumClass<T>, component: GluingComponent) -> CurveClass<T> {
        match component {
            GluingComponent::D1 => ch.push_lambda1(s),
            _ => ch.push_rho2(s),
        }
    }

    /// The unshifted object gets its phase in `(-1, 1]`, which is `(0, 1]`
    /// for sheaves on the curve; the shifts in the expression then add on.
    fn standard_phase_data(
        s: &SurfaceData,
        spec: &ObjectSpec,
        component: GluingComponent,
    ) -> Result<FiberPhaseData<T>> {
        let base = ch_object::<T>(s, &spec.unshifted());
        let base_class = Self::curve_class(s, &base, component);
        if base_class.is_zero() {
            return Err(StabError::ZeroCurveClass);
        }
        let base_phase = PhasePoint::phase_of(&base_class.standard_charge(), None)?;
        let ch = ch_object::<T>(s, spec);
        Ok(FiberPhaseData {
            curve_class: Self::curve_class(s, &ch, component),
            standard_phase: base_phase.shift(spec.total_shift()),
        })
    }
}

/// Phase of a catalog entry under a glued condition.
#[derive(Clone, Debug)]
pub enum GluedPhase<T> {
    Phase(PhasePoint<T>),
    Mixed,
}

impl<T: Scalar> PartialEq for GluedPhase<T> {
    fn eq(&self, o: &Self) -> bool {
        self.phase() == o.phase()
    }
}

impl<T: Scalar> GluedPhase<T> {
    pub fn phase(&self) -> Option<&PhasePoint<T>> {
        match self {
            Self::Phase(p) => Some(p),
            Self::Mixed => None,
        }
    }
}

/// A D_j object of standard phase `psi` has phase `f_j^{-1}(psi)` in
/// `sigma_st.A_j`.
pub fn glued_phase<T: Scalar>(gd: &GluedDescriptor<T>, entry: &CatalogEntry<T>) -> Result<GluedPhase<T>> {
    let Some(data) = &entry.fiber_phase else {
        return Ok(GluedPhase::Mixed);
    };
    if data.curve_class.is_zero() {
        return Err(StabError::ZeroCurveClass);
    }
    let translate = match entry.component {
        GluingComponent::D1 => &gd.a1,
        GluingComponent::D2 => &gd.a2,
        GluingComponent::Mixed => return Ok(GluedPhase::Mixed),
    };
    Ok(GluedPhase::Phase(translate.inverse().apply(&data.standard_phase)))
}

/// `O_f`.
pub fn fiber_spec() -> ObjectSpec {
    ObjectSpec::atom(Atom::Fiber)
}

/// `O_f(-C0)[1]`, the cone of `O_f -> O_x`.
pub fn fiber_quotient_spec() -> ObjectSpec {
    ObjectSpec::atom(Atom::Fiber).twisted(IntDivisor::new(-1, 0)).shifted(1)
}

pub fn point_spec() -> ObjectSpec {
    ObjectSpec::atom(Atom::Point)
}

/// Expressions in the default catalog.
pub const DEFAULT_OBJECTS: &[&str] = &[
    "O_S",
    "O_x",
    "O_f",
    "O_C0",
    "O_f(-C0)",
    "O_f(-C0)[1]",
    "O_S(-C0)",
    "O_S(C0)",
    "O_S(-C0+f)",
    "O_S(f)",
    "p*(1,0)",
    "p*(0,1)",
    "p*(2,1)",
    "p*(1,0)(-C0)",
    "p*(0,1)(-C0)[1]",
    "O_C0(-C0)",
];

pub fn default_catalog<T: Scalar>(s: &SurfaceData) -> Vec<CatalogEntry<T>> {
    DEFAULT_OBJECTS
        .iter()
        .map(|t| CatalogEntry::parse(s, t).expect("default catalog entries are well formed"))
        .collect()
}
