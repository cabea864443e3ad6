//! Self-check suite over small exact grids.
//!
//! Each row runs one family of invariants and records how many instances
//! were checked and the first counterexample, if any.

use rayon::prelude::*;

use crate::catalog::{default_catalog, glued_phase, GluedPhase};
use crate::conditions::GluedDescriptor;
use crate::lattice::{mukai_pair, ChernVector, CurveClass, DivisorClass, NumClass, SurfaceData};
use crate::liftedphase::{LiftedGL, Mat2};
use crate::scalar::Scalar;
use crate::walls::{boundary_solve, BoundaryOutcome};
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRow {
    pub name: &'static str,
    pub checked: usize,
    pub failure: Option<String>,
}

impl VerifyRow {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn row(name: &'static str, results: Vec<std::result::Result<(), String>>) -> VerifyRow {
    let checked = results.len();
    let failure = results.into_iter().find_map(|r| r.err());
    VerifyRow { name, checked, failure }
}

fn q(n: i64, d: i64) -> Q {
    Q::ratio(n, d)
}

fn small_classes() -> Vec<NumClass<Q>> {
    let mut out = Vec::new();
    for r in -1..=1 {
        for c0 in -1..=1 {
            for f in -1..=1 {
                for t in -2..=2 {
                    out.push(NumClass::integral(r, c0, f, t));
                }
            }
        }
    }
    out
}

fn matrices() -> Vec<Mat2<Q>> {
    let vals = [q(-2, 1), q(-1, 2), q(1, 1), q(3, 2)];
    let mut out = Vec::new();
    for a in &vals {
        for b in &vals {
            for c in &vals {
                for d in &vals {
                    let m = Mat2::new(a.clone(), b.clone(), c.clone(), d.clone());
                    if m.det() > q(0, 1) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Mukai pairing symmetry and the exponential law `exp(A) exp(B) = exp(A+B)`.
fn lattice_row(s: &SurfaceData) -> VerifyRow {
    let classes = small_classes();
    let results = classes
        .par_iter()
        .flat_map_iter(|u| {
            classes.iter().step_by(7).map(move |v| {
                if mukai_pair(s, u, v) != mukai_pair(s, v, u) {
                    return Err(format!("asymmetric pairing at {u:?}, {v:?}"));
                }
                let (a, b) = (u.c1.clone(), v.c1.clone());
                let lhs = ChernVector::exp_of(s, &a).ring_mul(s, &ChernVector::exp_of(s, &b));
                if lhs != ChernVector::exp_of(s, &(a + b)) {
                    return Err(format!("exp law fails at {:?}, {:?}", u.c1, v.c1));
                }
                Ok(())
            })
        })
        .collect();
    row("lattice", results)
}

/// The pushforwards kill the opposite factor and split every class.
fn semiorthogonality_row(s: &SurfaceData) -> VerifyRow {
    let mut results = Vec::new();
    for rho in -3..=3 {
        for delta in -3..=3 {
            let c = CurveClass::<Q>::from_ints(rho, delta);
            let (d1, d2) = (c.embed_lambda1(s), c.embed_rho2());
            let ok = d1.push_rho2(s).is_zero()
                && d2.push_lambda1(s).is_zero()
                && d1.push_lambda1(s) == c
                && d2.push_rho2(s) == c;
            results.push(if ok { Ok(()) } else { Err(format!("factor mismatch at ({rho}, {delta})")) });
        }
    }
    for c in small_classes() {
        let back = c.push_lambda1(s).embed_lambda1(s) + c.push_rho2(s).embed_rho2();
        results.push(if back == c { Ok(()) } else { Err(format!("class {c:?} does not split")) });
    }
    row("semiorthogonality", results)
}

/// Associativity, inverses, and identity on the universal cover.
fn group_row() -> VerifyRow {
    let ms = matrices();
    let lifts: Vec<LiftedGL<Q>> = ms
        .iter()
        .step_by(3)
        .flat_map(|m| [0, 2].map(|n| LiftedGL::new(m.clone(), n).unwrap()))
        .collect();
    let results = lifts
        .par_iter()
        .flat_map_iter(|g| {
            let lifts = &lifts;
            lifts.iter().step_by(5).flat_map(move |h| {
                lifts.iter().step_by(11).map(move |k| {
                    let assoc = g.compose(h).compose(k) == g.compose(&h.compose(k));
                    let inv = g.compose(&g.inverse()).is_identity() && g.inverse().compose(g).is_identity();
                    if assoc && inv {
                        Ok(())
                    } else {
                        Err(format!("group law fails at {g:?}, {h:?}, {k:?}"))
                    }
                })
            })
        })
        .collect();
    row("group laws", results)
}

/// Boundary witnesses reproduce the glued charge.
fn boundary_row(s: &SurfaceData) -> VerifyRow {
    let mut results = Vec::new();
    for num in 1..=8 {
        let a = q(-num, 2);
        let b = a.clone() * q(s.e, 2);
        let gd = GluedDescriptor::from_inverse_entries(a.clone(), b, q(0, 1), a, 1).unwrap();
        let r = match boundary_solve(s, &gd) {
            Ok(BoundaryOutcome::Witness(w)) if w.charge_vector(s) == gd.pr1(s) => Ok(()),
            other => Err(format!("no valid witness for a = {}: {other:?}", -num)),
        };
        results.push(r);
    }
    row("boundary witnesses", results)
}

/// Glued phases of single-factor catalog objects point along their charges.
fn concordance_row(s: &SurfaceData) -> VerifyRow {
    let catalog = default_catalog::<Q>(s);
    let ms = matrices();
    let results = ms
        .par_iter()
        .step_by(5)
        .flat_map_iter(|m| {
            let gd = GluedDescriptor::new(
                LiftedGL::with_winding(m.clone(), 1).unwrap_or_else(|_| LiftedGL::new(m.clone(), 0).unwrap()),
                LiftedGL::identity(),
            );
            let catalog = &catalog;
            catalog.iter().map(move |entry| {
                let GluedPhase::Phase(p) = glued_phase(&gd, entry).map_err(|e| e.to_string())? else {
                    return Ok(());
                };
                let z = gd.charge(s, &entry.ch);
                let (rx, ry) = p.ray();
                let cross = rx.clone() * z.im.clone() - ry.clone() * z.re.clone();
                let dot = rx * z.re + ry * z.im;
                if cross == q(0, 1) && dot > q(0, 1) {
                    Ok(())
                } else {
                    Err(format!("phase of {} disagrees with its charge", entry.spec))
                }
            })
        })
        .collect();
    row("phase concordance", results)
}

/// Run every row on the surface.
pub fn run_suite(s: &SurfaceData) -> Vec<VerifyRow> {
    vec![
        lattice_row(s),
        semiorthogonality_row(s),
        group_row(),
        boundary_row(s),
        concordance_row(s),
        divisor_sanity_row(s),
    ]
}

/// `K.f = -2` and `K^2 = 8(1 - g)`.
fn divisor_sanity_row(s: &SurfaceData) -> VerifyRow {
    let k: DivisorClass<Q> = s.canonical_class();
    let kf = s.intersect(&k, &DivisorClass::fiber());
    let kk = s.intersect(&k, &k);
    let expected = Q::from_int(8 * (1 - i64::from(s.genus)));
    let r = if kf == Q::from_int(-2) && kk == expected {
        Ok(())
    } else {
        Err(format!("K.f = {kf}, K^2 = {kk}"))
    };
    row("canonical class", vec![r])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        for e in [-1, 0, 2] {
            let rows = run_suite(&SurfaceData::new(1, e));
            for r in &rows {
                assert!(r.passed(), "{}: {:?}", r.name, r.failure);
                assert!(r.checked > 0);
            }
        }
    }
}
