//! JSON forms of descriptors and reports.
//!
//! Scalars travel as strings (`"-1/2"`), complex values as `"a+bi"`, and
//! divisor classes inside reports as `"x*C0+y*f"`. Descriptor inputs use
//! coefficient pairs:
//!
//! ```json
//! {"type":"glued","A1":{"M":[["-1","0"],["0","-1"]],"n":0},"A2":{"M":[["1","0"],["0","1"]],"n":0}}
//! {"type":"divisorial","B":["0","0"],"omega":["1","1"]}
//! ```
//!
//! `n` is the raw lift offset: the lift is `l_M + n` with `l_M(0)` in `(-1, 1]`.

use serde::{Deserialize, Serialize};

use crate::catalog::{format_divisor, CatalogEntry, ObjectSpec};
use crate::conditions::{
    DivisorialDescriptor, GluedDescriptor, PerversityComparison, StabilityDescriptor,
};
use crate::error::{Result, StabError};
use crate::lattice::{DivisorClass, NumClass};
use crate::liftedphase::{LiftedGL, Mat2, PhasePoint};
use crate::scalar::{format_gaussian, parse_scalar, Gaussian, Scalar};
use crate::walls::{BoundaryOutcome, NeighborhoodReport, SideVerdict, SkyscraperVerdict};

fn text<T: Scalar>(x: &T) -> String {
    x.to_string()
}

fn scalar<T: Scalar>(s: &str) -> Result<T> {
    parse_scalar(s).ok_or_else(|| StabError::Input(format!("not a rational number: {s:?}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedGLDto {
    #[serde(rename = "M")]
    pub m: [[String; 2]; 2],
    #[serde(default)]
    pub n: i64,
}

impl LiftedGLDto {
    pub fn from_lifted<T: Scalar>(g: &LiftedGL<T>) -> Self {
        let m = g.matrix();
        Self {
            m: [[text(&m.a), text(&m.b)], [text(&m.c), text(&m.d)]],
            n: g.lift_shift(),
        }
    }

    pub fn to_lifted<T: Scalar>(&self) -> Result<LiftedGL<T>> {
        let [[a, b], [c, d]] = &self.m;
        let m = Mat2::new(scalar(a)?, scalar(b)?, scalar(c)?, scalar(d)?);
        LiftedGL::new(m, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum DescriptorDto {
    Divisorial {
        #[serde(rename = "B")]
        b: [String; 2],
        omega: [String; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        translate: Option<LiftedGLDto>,
    },
    Glued {
        #[serde(rename = "A1")]
        a1: LiftedGLDto,
        #[serde(rename = "A2")]
        a2: LiftedGLDto,
    },
}

fn pair<T: Scalar>(d: &DivisorClass<T>) -> [String; 2] {
    [text(&d.c0), text(&d.f)]
}

fn unpair<T: Scalar>(p: &[String; 2]) -> Result<DivisorClass<T>> {
    Ok(DivisorClass::new(scalar(&p[0])?, scalar(&p[1])?))
}

impl DescriptorDto {
    pub fn from_descriptor<T: Scalar>(d: &StabilityDescriptor<T>) -> Self {
        match d {
            StabilityDescriptor::Divisorial(dd) => Self::Divisorial {
                b: pair(&dd.b),
                omega: pair(&dd.omega),
                translate: (!dd.translate.is_identity())
                    .then(|| LiftedGLDto::from_lifted(&dd.translate)),
            },
            StabilityDescriptor::Glued(gd) => Self::Glued {
                a1: LiftedGLDto::from_lifted(&gd.a1),
                a2: LiftedGLDto::from_lifted(&gd.a2),
            },
        }
    }

    pub fn to_descriptor<T: Scalar>(&self) -> Result<StabilityDescriptor<T>> {
        Ok(match self {
            Self::Divisorial { b, omega, translate } => {
                let mut dd = DivisorialDescriptor::new(unpair(b)?, unpair(omega)?);
                if let Some(t) = translate {
                    dd = dd.with_translate(t.to_lifted()?);
                }
                StabilityDescriptor::Divisorial(dd)
            }
            Self::Glued { a1, a2 } => {
                StabilityDescriptor::Glued(GluedDescriptor::new(a1.to_lifted()?, a2.to_lifted()?))
            }
        })
    }
}

pub fn descriptor_from_json<T: Scalar>(json: &str) -> Result<StabilityDescriptor<T>> {
    let dto: DescriptorDto =
        serde_json::from_str(json).map_err(|e| StabError::Input(format!("descriptor JSON: {e}")))?;
    dto.to_descriptor()
}

pub fn descriptor_to_json<T: Scalar>(d: &StabilityDescriptor<T>) -> String {
    serde_json::to_string(&DescriptorDto::from_descriptor(d)).expect("descriptor serializes")
}

/// Exact lifted phase: winding plus a direction in `[0, pi)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseDto {
    pub winding: i64,
    pub direction: [String; 2],
    pub approx: f64,
}

impl PhaseDto {
    pub fn from_phase<T: Scalar>(p: &PhasePoint<T>) -> Self {
        let (x, y) = p.direction();
        Self { winding: p.winding(), direction: [text(x), text(y)], approx: p.to_f64() }
    }

    pub fn to_phase<T: Scalar>(&self) -> Result<PhasePoint<T>> {
        PhasePoint::new(scalar(&self.direction[0])?, scalar(&self.direction[1])?, self.winding)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernDto {
    pub r: String,
    pub c1: String,
    pub ch2: String,
}

impl ChernDto {
    pub fn from_class<T: Scalar>(c: &NumClass<T>) -> Self {
        Self { r: text(&c.r), c1: format_divisor(&c.c1), ch2: text(&c.ch2) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub verdict: String,
    pub moduli: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub destabilizer: Option<String>,
}

impl From<&SkyscraperVerdict> for VerdictReport {
    fn from(v: &SkyscraperVerdict) -> Self {
        Self {
            verdict: v.kind.name().into(),
            moduli: v.moduli_label().into(),
            destabilizer: v.destabilizer.as_ref().map(ObjectSpec::to_string),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum BoundaryReport {
    Witness {
        #[serde(rename = "M_inv")]
        m_inv: [[String; 2]; 2],
        #[serde(rename = "B")]
        b: String,
        omega: String,
        w: String,
        y: String,
        note: String,
    },
    Refusal {
        equation: String,
        actual: String,
        required: String,
    },
}

impl BoundaryReport {
    pub fn from_outcome<T: Scalar>(o: &BoundaryOutcome<T>) -> Self {
        match o {
            BoundaryOutcome::Witness(w) => {
                let m = &w.m_inv;
                Self::Witness {
                    m_inv: [[text(&m.a), text(&m.b)], [text(&m.c), text(&m.d)]],
                    b: format_divisor(&w.b),
                    omega: format_divisor(&w.omega),
                    w: text(&w.w),
                    y: text(&w.y),
                    note: w.note().into(),
                }
            }
            BoundaryOutcome::Refusal(r) => Self::Refusal {
                equation: r.equation.name().into(),
                actual: text(&r.actual),
                required: text(&r.required),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideReport {
    pub side: String,
    #[serde(rename = "phase_O_f")]
    pub fiber_phase: PhaseDto,
    #[serde(rename = "phase_O_f(-C0)[1]")]
    pub quotient_phase: PhaseDto,
}

impl SideReport {
    pub fn from_verdict<T: Scalar>(v: &SideVerdict<T>) -> Self {
        Self {
            side: v.side.name().into(),
            fiber_phase: PhaseDto::from_phase(&v.fiber_phase),
            quotient_phase: PhaseDto::from_phase(&v.quotient_phase),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerversityReport {
    pub verdict: String,
    pub per: PhaseDto,
    pub phi1: PhaseDto,
    pub phi2: PhaseDto,
}

impl PerversityReport {
    pub fn from_comparison<T: Scalar>(p: &PerversityComparison<T>) -> Self {
        Self {
            verdict: p.verdict.name().into(),
            per: PhaseDto::from_phase(&p.value),
            phi1: PhaseDto::from_phase(&p.phi1),
            phi2: PhaseDto::from_phase(&p.phi2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodEntryDto {
    pub object: String,
    pub ratio_sq: String,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodDto {
    pub entries: Vec<NeighborhoodEntryDto>,
    pub max_ratio_sq: String,
    pub all_pass: bool,
}

impl NeighborhoodDto {
    /// `labels` name the checked classes in order.
    pub fn from_report<T: Scalar>(r: &NeighborhoodReport<T>, labels: &[String]) -> Self {
        let entries = r
            .entries
            .iter()
            .zip(labels)
            .map(|(e, l)| NeighborhoodEntryDto {
                object: l.clone(),
                ratio_sq: text(&e.ratio_sq),
                passes: e.passes,
            })
            .collect();
        Self { entries, max_ratio_sq: text(&r.max_ratio_sq), all_pass: r.all_pass }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntryDto {
    pub object: String,
    pub ch: ChernDto,
    pub component: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve_class: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard_phase: Option<PhaseDto>,
}

impl CatalogEntryDto {
    pub fn from_entry<T: Scalar>(e: &CatalogEntry<T>) -> Self {
        let fp = e.fiber_phase.as_ref();
        Self {
            object: e.spec.to_string(),
            ch: ChernDto::from_class(&e.ch),
            component: e.component.name().into(),
            curve_class: fp.map(|d| [text(&d.curve_class.rank), text(&d.curve_class.deg)]),
            standard_phase: fp.map(|d| PhaseDto::from_phase(&d.standard_phase)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeReport {
    pub object: String,
    pub charge: String,
}

impl ChargeReport {
    pub fn new<T: Scalar>(spec: &ObjectSpec, z: &Gaussian<T>) -> Self {
        Self { object: spec.to_string(), charge: format_gaussian(z) }
    }
}
