//! Numerical Grothendieck lattice of a ruled surface.
//!
//! A ruled surface `p: S -> C` over a curve of genus `g` has
//! `NS(S) = Z C0 + Z f` with `C0^2 = e`, `C0.f = 1`, `f^2 = 0`, where
//! `e = deg E` for the rank-two bundle with `S = P(E)`.
//!
//! **Sign convention.** `e` here is `deg E = C0^2`. Hartshorne's invariant
//! is the negative of this; use [`SurfaceData::from_hartshorne`] when
//! starting from that convention.
//!
//! Classes are Chern vectors `(r, c1, ch2)`. The same [`ChernVector`] type
//! carries real classes ([`NumClass`]) and complexified ones
//! ([`ComplexClass`], the vectors that represent central charges through
//! the Mukai pairing).

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Num;

use crate::error::{Result, StabError};
use crate::scalar::{Gaussian, Scalar};

/// Commutative ring with an embedding of the integers.
pub trait Ring: Clone + PartialEq + Num + Neg<Output = Self> {
    fn from_int(n: i64) -> Self;
}

impl<T: Scalar> Ring for T {
    fn from_int(n: i64) -> Self {
        <T as Scalar>::from_int(n)
    }
}

impl<T: Scalar> Ring for Complex<T> {
    fn from_int(n: i64) -> Self {
        Complex::new(<T as Scalar>::from_int(n), T::zero())
    }
}

/// Numerical invariants of the ruled surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceData {
    pub genus: u32,
    /// `deg E = C0^2`.
    pub e: i64,
}

impl SurfaceData {
    pub fn new(genus: u32, e: i64) -> Self {
        Self { genus, e }
    }

    /// Build from Hartshorne's invariant `e_H = -deg E`.
    pub fn from_hartshorne(genus: u32, e_hartshorne: i64) -> Self {
        Self { genus, e: -e_hartshorne }
    }

    pub fn hartshorne_e(&self) -> i64 {
        -self.e
    }

    /// `(x1 C0 + y1 f).(x2 C0 + y2 f) = x1 x2 e + x1 y2 + x2 y1`.
    pub fn intersect<R: Ring>(&self, a: &DivisorClass<R>, b: &DivisorClass<R>) -> R {
        a.c0.clone() * b.c0.clone() * R::from_int(self.e)
            + a.c0.clone() * b.f.clone()
            + b.c0.clone() * a.f.clone()
    }

    /// `K_S = -2 C0 + (2g - 2 + e) f`.
    pub fn canonical_class<R: Ring>(&self) -> DivisorClass<R> {
        DivisorClass::new(R::from_int(-2), R::from_int(2 * self.genus as i64 - 2 + self.e))
    }

    /// Notes that should travel with any result computed on this surface.
    pub fn caveats(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.genus == 0 {
            out.push(
                "genus 0: the free and transitive action on the base curve's stability space \
                 requires positive genus; lattice formulas remain valid"
                    .to_string(),
            );
        }
        out
    }
}

/// `c0 * C0 + f * f` in `NS(S)` tensored with a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass<R> {
    pub c0: R,
    pub f: R,
}

impl<R: Ring> DivisorClass<R> {
    pub fn new(c0: R, f: R) -> Self {
        Self { c0, f }
    }

    pub fn zero() -> Self {
        Self::new(R::zero(), R::zero())
    }

    pub fn section() -> Self {
        Self::new(R::one(), R::zero())
    }

    pub fn fiber() -> Self {
        Self::new(R::zero(), R::one())
    }

    pub fn scale(&self, k: &R) -> Self {
        Self::new(self.c0.clone() * k.clone(), self.f.clone() * k.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.f.is_zero()
    }
}

impl<T: Scalar> DivisorClass<T> {
    pub fn from_ints(c0: i64, f: i64) -> Self {
        Self::new(T::from_int(c0), T::from_int(f))
    }

    pub fn complexify(&self) -> DivisorClass<Gaussian<T>> {
        DivisorClass::new(
            Complex::new(self.c0.clone(), T::zero()),
            Complex::new(self.f.clone(), T::zero()),
        )
    }

    /// `B + i omega`.
    pub fn with_imaginary(&self, omega: &DivisorClass<T>) -> DivisorClass<Gaussian<T>> {
        DivisorClass::new(
            Complex::new(self.c0.clone(), omega.c0.clone()),
            Complex::new(self.f.clone(), omega.f.clone()),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.c0.is_integral() && self.f.is_integral()
    }
}

impl<R: Ring> Add for DivisorClass<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.c0 + o.c0, self.f + o.f)
    }
}

impl<R: Ring> Sub for DivisorClass<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.c0 - o.c0, self.f - o.f)
    }
}

impl<R: Ring> Neg for DivisorClass<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c0, -self.f)
    }
}

/// Chern vector `(r, c1, ch2)` over a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernVector<R> {
    pub r: R,
    pub c1: DivisorClass<R>,
    pub ch2: R,
}

/// Element of `N(S) = Z + NS(S) + 1/2 Z`, stored over a scalar field.
pub type NumClass<T> = ChernVector<T>;

/// Element of `N(S) (x) C`: the representing vector of a central charge.
pub type ComplexClass<T> = ChernVector<Gaussian<T>>;

impl<R: Ring> ChernVector<R> {
    pub fn new(r: R, c1: DivisorClass<R>, ch2: R) -> Self {
        Self { r, c1, ch2 }
    }

    pub fn zero() -> Self {
        Self::new(R::zero(), DivisorClass::zero(), R::zero())
    }

    /// Unit of the Chern ring, `ch(O_S)`.
    pub fn unit() -> Self {
        Self::new(R::one(), DivisorClass::zero(), R::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.c1.is_zero() && self.ch2.is_zero()
    }

    pub fn scale(&self, k: &R) -> Self {
        Self::new(self.r.clone() * k.clone(), self.c1.scale(k), self.ch2.clone() * k.clone())
    }

    /// Product in the Chern ring `H^even(S)`.
    pub fn ring_mul(&self, s: &SurfaceData, o: &Self) -> Self {
        Self::new(
            self.r.clone() * o.r.clone(),
            self.c1.scale(&o.r) + o.c1.scale(&self.r),
            self.r.clone() * o.ch2.clone()
                + o.r.clone() * self.ch2.clone()
                + s.intersect(&self.c1, &o.c1),
        )
    }

    /// `ch(O(D)) = (1, D, D^2/2)` for a divisor with coefficients in the ring.
    pub fn exp_of(s: &SurfaceData, d: &DivisorClass<R>) -> Self {
        let two = R::from_int(2);
        Self::new(R::one(), d.clone(), s.intersect(d, d) / two)
    }

    /// Multiply by `ch(O(D))`: `(r, c1 + rD, ch2 + c1.D + r D^2/2)`.
    pub fn twist(&self, s: &SurfaceData, d: &DivisorClass<R>) -> Self {
        self.ring_mul(s, &Self::exp_of(s, d))
    }

    /// Class of `E[n]`, which is `(-1)^n [E]` in K-theory.
    pub fn shift(&self, n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            self.clone()
        } else {
            -self.clone()
        }
    }
}

/// Mukai pairing `((r1,D1,s1),(r2,D2,s2)) = D1.D2 - r1 s2 - r2 s1`.
pub fn mukai_pair<R: Ring>(s: &SurfaceData, u: &ChernVector<R>, v: &ChernVector<R>) -> R {
    s.intersect(&u.c1, &v.c1) - u.r.clone() * v.ch2.clone() - v.r.clone() * u.ch2.clone()
}

/// `exp(B + i omega) = (1, B + i omega, (B + i omega)^2 / 2)`.
pub fn exp_divisor<T: Scalar>(
    s: &SurfaceData,
    b: &DivisorClass<T>,
    omega: &DivisorClass<T>,
) -> ComplexClass<T> {
    ChernVector::exp_of(s, &b.with_imaginary(omega))
}

impl<R: Ring> Add for ChernVector<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.r + o.r, self.c1 + o.c1, self.ch2 + o.ch2)
    }
}

impl<R: Ring> Sub for ChernVector<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.r - o.r, self.c1 - o.c1, self.ch2 - o.ch2)
    }
}

impl<R: Ring> Neg for ChernVector<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.r, -self.c1, -self.ch2)
    }
}

impl<R: Ring> Mul<&R> for &ChernVector<R> {
    type Output = ChernVector<R>;
    fn mul(self, k: &R) -> ChernVector<R> {
        self.scale(k)
    }
}

impl<T: Scalar> ChernVector<T> {
    /// Honest lattice element `(r, c0 C0 + f f, twice_ch2 / 2)`.
    pub fn integral(r: i64, c0: i64, f: i64, twice_ch2: i64) -> Self {
        Self::new(T::from_int(r), DivisorClass::from_ints(c0, f), T::ratio(twice_ch2, 2))
    }

    /// Check membership in `Z + NS(S) + 1/2 Z`.
    pub fn check_integral(&self) -> Result<()> {
        let twice = self.ch2.clone() * T::from_int(2);
        if self.r.is_integral() && self.c1.is_integral() && twice.is_integral() {
            Ok(())
        } else {
            Err(StabError::NonIntegralClass(format!(
                "({}, {}*C0+{}*f, {})",
                self.r, self.c1.c0, self.c1.f, self.ch2
            )))
        }
    }

    pub fn complexify(&self) -> ComplexClass<T> {
        ChernVector::new(
            Complex::new(self.r.clone(), T::zero()),
            self.c1.complexify(),
            Complex::new(self.ch2.clone(), T::zero()),
        )
    }

    /// `mu_omega = c1.omega / r`.
    pub fn slope(&self, s: &SurfaceData, omega: &DivisorClass<T>) -> Result<T> {
        if self.r.is_zero() {
            return Err(StabError::InfiniteSlope);
        }
        Ok(s.intersect(&self.c1, omega) / self.r.clone())
    }

    /// Class of `Rp_* F` on the base curve, the curve-side shadow of `rho_2`:
    /// `(c1.f + r, ch2 + c1.C0 - (e/2) c1.f)`.
    pub fn push_rho2(&self, s: &SurfaceData) -> CurveClass<T> {
        let c1f = s.intersect(&self.c1, &DivisorClass::fiber());
        let c1c0 = s.intersect(&self.c1, &DivisorClass::section());
        let half_e = T::ratio(s.e, 2);
        CurveClass::new(
            c1f.clone() + self.r.clone(),
            self.ch2.clone() + c1c0 - half_e * c1f,
        )
    }

    /// Curve-factor class of `lambda_1(F)` before re-embedding:
    /// `(-c1.f, -ch2 - (e/2) c1.f)`.
    pub fn push_lambda1(&self, s: &SurfaceData) -> CurveClass<T> {
        let c1f = s.intersect(&self.c1, &DivisorClass::fiber());
        let half_e = T::ratio(s.e, 2);
        CurveClass::new(-c1f.clone(), -self.ch2.clone() - half_e * c1f)
    }
}

/// Numerical class `(rank, deg)` on the base curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveClass<T> {
    pub rank: T,
    pub deg: T,
}

impl<T: Scalar> CurveClass<T> {
    pub fn new(rank: T, deg: T) -> Self {
        Self { rank, deg }
    }

    pub fn from_ints(rank: i64, deg: i64) -> Self {
        Self::new(T::from_int(rank), T::from_int(deg))
    }

    pub fn is_zero(&self) -> bool {
        self.rank.is_zero() && self.deg.is_zero()
    }

    /// `Z_st = -deg + i rank`.
    pub fn standard_charge(&self) -> Gaussian<T> {
        Complex::new(-self.deg.clone(), self.rank.clone())
    }

    /// Class of the pullback `p^* G`: `(rank, deg f, 0)`.
    pub fn embed_rho2(&self) -> NumClass<T> {
        ChernVector::new(
            self.rank.clone(),
            DivisorClass::new(T::zero(), self.deg.clone()),
            T::zero(),
        )
    }

    /// Class of `p^* G (x) O(-C0)`: `(rank, deg f - rank C0, rank e/2 - deg)`.
    pub fn embed_lambda1(&self, s: &SurfaceData) -> NumClass<T> {
        self.embed_rho2().twist(s, &DivisorClass::from_ints(-1, 0))
    }
}

impl<T: Scalar> Add for CurveClass<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.rank + o.rank, self.deg + o.deg)
    }
}
