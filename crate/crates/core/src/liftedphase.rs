//! Exact phases and the universal cover of `GL+(2,R)`.
//!
//! A phase `phi` is stored as a [`PhasePoint`]: a direction `v` in the
//! half-open upper half-plane (argument in `[0, pi)`) and a winding integer
//! `m`, representing `phi = m + arg(v)/pi`. The ray of the phase is
//! `(-1)^m v`. Ordering is decided by comparing windings and then the sign
//! of an integer cross product, so no transcendental functions are needed.
//!
//! An element of the universal cover is a pair `(M, f)` with `f` an
//! increasing lift of the action of `M` on rays, `f(phi + 1) = f(phi) + 1`.
//! [`LiftedGL`] stores `M` and an integer `n` with `f = l_M + n`, where the
//! canonical lift `l_M` has `l_M(0) = Arg(M e1)/pi`, `Arg` in `(-pi, pi]`.
//! Lifts of the same matrix differ by whole turns, so `n` is always even.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex;

use crate::error::{Result, StabError};
use crate::lattice::{ChernVector, ComplexClass, DivisorClass};
use crate::scalar::{Gaussian, Scalar};

/// 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(T::from_int(a), T::from_int(b), T::from_int(c), T::from_int(d))
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    pub fn scalar(k: T) -> Self {
        Self::new(k.clone(), T::zero(), T::zero(), k)
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.a.clone() * o.a.clone() + self.b.clone() * o.c.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.d.clone(),
            self.c.clone() * o.a.clone() + self.d.clone() * o.c.clone(),
            self.c.clone() * o.b.clone() + self.d.clone() * o.d.clone(),
        )
    }

    /// Inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        Some(Self::new(
            self.d.clone() / det.clone(),
            -self.b.clone() / det.clone(),
            -self.c.clone() / det.clone(),
            self.a.clone() / det,
        ))
    }

    pub fn apply(&self, x: &T, y: &T) -> (T, T) {
        (
            self.a.clone() * x.clone() + self.b.clone() * y.clone(),
            self.c.clone() * x.clone() + self.d.clone() * y.clone(),
        )
    }

    /// Real-linear action on `C = R^2`.
    pub fn apply_complex(&self, z: &Gaussian<T>) -> Gaussian<T> {
        let (re, im) = self.apply(&z.re, &z.im);
        Complex::new(re, im)
    }

    pub fn rows(&self) -> [[T; 2]; 2] {
        [[self.a.clone(), self.b.clone()], [self.c.clone(), self.d.clone()]]
    }
}

/// `(x1, y1) x (x2, y2)`.
fn cross<T: Scalar>(x1: &T, y1: &T, x2: &T, y2: &T) -> T {
    x1.clone() * y2.clone() - y1.clone() * x2.clone()
}

fn in_upper_half<T: Scalar>(x: &T, y: &T) -> bool {
    y.is_pos() || (y.is_zero() && x.is_pos())
}

/// Exact lifted phase `m + arg(v)/pi` with `arg(v)` in `[0, pi)`.
#[derive(Clone, Debug)]
pub struct PhasePoint<T> {
    x: T,
    y: T,
    m: i64,
}

impl<T: Scalar> PhasePoint<T> {
    /// Direction must be nonzero and lie in the half-open upper half-plane.
    pub fn new(x: T, y: T, m: i64) -> Result<Self> {
        if x.is_zero() && y.is_zero() {
            return Err(StabError::ZeroCentralCharge);
        }
        if !in_upper_half(&x, &y) {
            return Err(StabError::Input(
                "phase direction must have argument in [0, pi)".into(),
            ));
        }
        let (x, y) = T::normalize_direction(x, y);
        Ok(Self { x, y, m })
    }

    pub fn integer(k: i64) -> Self {
        Self { x: T::one(), y: T::zero(), m: k }
    }

    /// `k + 1/2`.
    pub fn half_integer(k: i64) -> Self {
        Self { x: T::zero(), y: T::one(), m: k }
    }

    pub fn direction(&self) -> (&T, &T) {
        (&self.x, &self.y)
    }

    pub fn winding(&self) -> i64 {
        self.m
    }

    /// Ray `exp(i pi phi)` up to a positive factor.
    pub fn ray(&self) -> (T, T) {
        if self.m.rem_euclid(2) == 0 {
            (self.x.clone(), self.y.clone())
        } else {
            (-self.x.clone(), -self.y.clone())
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        Self { x: self.x.clone(), y: self.y.clone(), m: self.m + k }
    }

    /// Split a ray into its half-plane direction and the parity of the
    /// windings that realize it.
    fn split_ray(x: &T, y: &T) -> Result<(T, T, i64)> {
        if x.is_zero() && y.is_zero() {
            return Err(StabError::ZeroCentralCharge);
        }
        let (vx, vy, parity) = if in_upper_half(x, y) {
            (x.clone(), y.clone(), 0)
        } else {
            (-x.clone(), -y.clone(), 1)
        };
        let (vx, vy) = T::normalize_direction(vx, vy);
        Ok((vx, vy, parity))
    }

    /// Smallest phase `>= lower` whose ray is `(x, y)`.
    pub fn lift_at_or_above(x: &T, y: &T, lower: &Self) -> Result<Self> {
        let (vx, vy, parity) = Self::split_ray(x, y)?;
        let at_or_past = !cross(&lower.x, &lower.y, &vx, &vy).is_neg();
        let mut k = if at_or_past { lower.m } else { lower.m + 1 };
        if (k - parity).rem_euclid(2) != 0 {
            k += 1;
        }
        Ok(Self { x: vx, y: vy, m: k })
    }

    /// Largest phase `<= upper` whose ray is `(x, y)`.
    pub fn lift_at_or_below(x: &T, y: &T, upper: &Self) -> Result<Self> {
        let (vx, vy, parity) = Self::split_ray(x, y)?;
        let at_or_before = !cross(&vx, &vy, &upper.x, &upper.y).is_neg();
        let mut k = if at_or_before { upper.m } else { upper.m - 1 };
        if (k - parity).rem_euclid(2) != 0 {
            k -= 1;
        }
        Ok(Self { x: vx, y: vy, m: k })
    }

    /// Principal phase `Arg(z)/pi` in `(-1, 1]`.
    pub fn principal(z: &Gaussian<T>) -> Result<Self> {
        Self::lift_at_or_below(&z.re, &z.im, &Self::integer(1))
    }

    /// Phase of a nonzero charge. Without a hint the branch is `(-1, 1]`,
    /// which places charges in the strict upper half-plane (including the
    /// negative real axis) in `(0, 1]`. A hint `k` selects `(k-1, k+1]`.
    pub fn phase_of(z: &Gaussian<T>, hint: Option<i64>) -> Result<Self> {
        let top = hint.unwrap_or(0) + 1;
        Self::lift_at_or_below(&z.re, &z.im, &Self::integer(top))
    }

    pub fn cmp_phase(&self, o: &Self) -> Ordering {
        match self.m.cmp(&o.m) {
            Ordering::Equal => {
                let c = cross(&self.x, &self.y, &o.x, &o.y);
                if c.is_pos() {
                    Ordering::Less
                } else if c.is_neg() {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            }
            other => other,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.m as f64 + self.y.approx().atan2(self.x.approx()) / std::f64::consts::PI
    }

    /// Compare against a rational threshold. Thresholds in `Z/4` have
    /// rational directions and are decided exactly; any other threshold is
    /// transcendental relative to rational directions and is decided in
    /// double precision with a reported error bound.
    pub fn compare_threshold(&self, q: &T) -> ThresholdComparison {
        let four_q = q.clone() * T::from_int(4);
        if four_q.is_integral() {
            let quarters = four_q.to_i64().expect("threshold fits in i64");
            let k = quarters.div_euclid(4);
            let (x, y) = match quarters.rem_euclid(4) {
                0 => (1, 0),
                1 => (1, 1),
                2 => (0, 1),
                _ => (-1, 1),
            };
            let t = Self::new(T::from_int(x), T::from_int(y), k).expect("nonzero");
            return ThresholdComparison {
                ordering: Some(self.cmp_phase(&t)),
                exact: true,
                error_bound: 0.0,
            };
        }
        let approx = self.to_f64();
        let target = q.approx();
        let bound = 1e-12 * (1.0 + approx.abs().max(target.abs()));
        let gap = approx - target;
        let ordering = if gap > bound {
            Some(Ordering::Greater)
        } else if gap < -bound {
            Some(Ordering::Less)
        } else {
            None
        };
        ThresholdComparison { ordering, exact: false, error_bound: bound }
    }
}

impl<T: Scalar> PartialEq for PhasePoint<T> {
    fn eq(&self, o: &Self) -> bool {
        self.cmp_phase(o) == Ordering::Equal
    }
}

impl<T: Scalar> PartialOrd for PhasePoint<T> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp_phase(o))
    }
}

impl<T: Scalar> fmt::Display for PhasePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + arg({}, {})/pi", self.m, self.x, self.y)
    }
}

/// Outcome of [`PhasePoint::compare_threshold`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdComparison {
    /// `None` when the floating-point gap is within the error bound.
    pub ordering: Option<Ordering>,
    pub exact: bool,
    pub error_bound: f64,
}

/// Element `(M, l_M + n)` of the universal cover of `GL+(2,R)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiftedGL<T> {
    m: Mat2<T>,
    n: i64,
}

impl<T: Scalar> LiftedGL<T> {
    pub fn new(m: Mat2<T>, n: i64) -> Result<Self> {
        if !m.det().is_pos() {
            return Err(StabError::NonPositiveDeterminant);
        }
        if n.rem_euclid(2) != 0 {
            return Err(StabError::OddLiftShift(n));
        }
        Ok(Self { m, n })
    }

    /// The lift of `M` whose value at zero has winding `k`, i.e.
    /// `f(0)` lies in `[k, k+1)`.
    pub fn with_winding(m: Mat2<T>, k: i64) -> Result<Self> {
        let base = Self::new(m, 0)?;
        let w0 = base.value_at_zero().winding();
        if (k - w0).rem_euclid(2) != 0 {
            return Err(StabError::WindingParity { winding: k, parity: w0.rem_euclid(2) });
        }
        Ok(Self { n: k - w0, ..base })
    }

    pub fn identity() -> Self {
        Self { m: Mat2::identity(), n: 0 }
    }

    /// The shift functor `[k]`: `((-1)^k I, phi + k)`.
    pub fn shift(k: i64) -> Self {
        let odd = k.rem_euclid(2);
        let sign = if odd == 0 { 1 } else { -1 };
        // canonical lift of -I is phi + 1
        Self { m: Mat2::scalar(T::from_int(sign)), n: k - odd }
    }

    pub fn matrix(&self) -> &Mat2<T> {
        &self.m
    }

    pub fn lift_shift(&self) -> i64 {
        self.n
    }

    pub fn matrix_inverse(&self) -> Mat2<T> {
        self.m.inverse().expect("determinant is positive")
    }

    pub fn is_identity(&self) -> bool {
        self.n == 0 && self.m == Mat2::identity()
    }

    /// `l_M(0) = Arg(M e1)/pi`.
    pub fn canonical_value_at_zero(&self) -> PhasePoint<T> {
        PhasePoint::principal(&Complex::new(self.m.a.clone(), self.m.c.clone()))
            .expect("M e1 is nonzero for invertible M")
    }

    /// `f(0)`.
    pub fn value_at_zero(&self) -> PhasePoint<T> {
        self.canonical_value_at_zero().shift(self.n)
    }

    /// `f(phi)`.
    pub fn apply(&self, p: &PhasePoint<T>) -> PhasePoint<T> {
        let (ux, uy) = self.m.apply(&p.x, &p.y);
        // f maps [0, 1) onto [f(0), f(0) + 1); the ray of the image is M v
        let reduced = PhasePoint::lift_at_or_above(&ux, &uy, &self.value_at_zero())
            .expect("invertible matrix maps nonzero vectors to nonzero vectors");
        reduced.shift(p.m)
    }

    /// `(M1 M2, f1 o f2)`.
    pub fn compose(&self, o: &Self) -> Self {
        let m = self.m.mul(&o.m);
        let target = self.apply(&o.value_at_zero());
        let canonical = Self { m, n: 0 };
        let n = target.winding() - canonical.value_at_zero().winding();
        debug_assert!(n.rem_euclid(2) == 0);
        Self { n, ..canonical }
    }

    pub fn inverse(&self) -> Self {
        let canonical = Self { m: self.matrix_inverse(), n: 0 };
        // f(l_{M^-1}(0)) has ray e1, hence is an even integer 2j, and
        // f^{-1}(0) = l_{M^-1}(0) - 2j
        let image = self.apply(&canonical.value_at_zero());
        Self { n: -image.winding(), ..canonical }
    }

    /// `M^{-1}` applied to a complex value.
    pub fn act_value(&self, z: &Gaussian<T>) -> Gaussian<T> {
        self.matrix_inverse().apply_complex(z)
    }

    /// `M^{-1}` applied to every component of a central-charge vector.
    pub fn act_charge(&self, z: &ComplexClass<T>) -> ComplexClass<T> {
        let inv = self.matrix_inverse();
        ChernVector::new(
            inv.apply_complex(&z.r),
            DivisorClass::new(inv.apply_complex(&z.c1.c0), inv.apply_complex(&z.c1.f)),
            inv.apply_complex(&z.ch2),
        )
    }
}
