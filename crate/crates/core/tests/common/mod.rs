//! Independent reference formulas shared by the integration tests.
//!
//! Everything here is written against plain tuples so that it does not
//! route through the library's own lattice code.

#![allow(dead_code)]

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;
use ruledstab::{ChernVector, DivisorClass, Mat2, NumClass, Scalar, Q};

pub type C = Complex<Q>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn qi(n: i64) -> Q {
    q(n, 1)
}

pub fn c(re: Q, im: Q) -> C {
    Complex::new(re, im)
}

/// `(rank, x, y, ch2)` for `ch = (rank, x C0 + y f, ch2)`.
pub type Tuple<T> = (T, T, T, T);

pub fn tuple(v: &NumClass<Q>) -> Tuple<Q> {
    (v.r.clone(), v.c1.c0.clone(), v.c1.f.clone(), v.ch2.clone())
}

pub fn ctuple(v: &ChernVector<C>) -> Tuple<C> {
    (v.r.clone(), v.c1.c0.clone(), v.c1.f.clone(), v.ch2.clone())
}

/// `(x1 C0 + y1 f).(x2 C0 + y2 f)` written out.
pub fn dot<T>(e: i64, x1: &T, y1: &T, x2: &T, y2: &T) -> T
where
    T: Clone + std::ops::Mul<Output = T> + std::ops::Add<Output = T> + From<Q>,
{
    T::from(qi(e)) * x1.clone() * x2.clone() + x1.clone() * y2.clone() + x2.clone() * y1.clone()
}

/// Mukai pairing `D1.D2 - r1 s2 - r2 s1` on complex tuples.
pub fn mukai(e: i64, u: &Tuple<C>, v: &Tuple<C>) -> C {
    let d = C::from(qi(e)) * u.1.clone() * v.1.clone() + u.1.clone() * v.2.clone() + v.1.clone() * u.2.clone();
    d - u.0.clone() * v.3.clone() - v.0.clone() * u.3.clone()
}

/// `(1, D, D^2/2)` for `D = x C0 + y f` with complex coefficients.
pub fn exp_tuple(e: i64, x: &C, y: &C) -> Tuple<C> {
    let sq = C::from(qi(e)) * x.clone() * x.clone() + C::from(qi(2)) * x.clone() * y.clone();
    (C::one(), x.clone(), y.clone(), sq / C::from(qi(2)))
}

/// Chern-ring product.
pub fn ring_mul(e: i64, u: &Tuple<C>, v: &Tuple<C>) -> Tuple<C> {
    let dd = C::from(qi(e)) * u.1.clone() * v.1.clone() + u.1.clone() * v.2.clone() + v.1.clone() * u.2.clone();
    (
        u.0.clone() * v.0.clone(),
        u.0.clone() * v.1.clone() + v.0.clone() * u.1.clone(),
        u.0.clone() * v.2.clone() + v.0.clone() * u.2.clone(),
        u.0.clone() * v.3.clone() + v.0.clone() * u.3.clone() + dd,
    )
}

/// `lambda_1` and `rho_2` curve classes as `(rank, deg)`.
pub fn lambda1(e: i64, v: &Tuple<Q>) -> (Q, Q) {
    let cf = v.1.clone();
    (-cf.clone(), -v.3.clone() - q(e, 2) * cf)
}

pub fn rho2(e: i64, v: &Tuple<Q>) -> (Q, Q) {
    let cf = v.1.clone();
    let cc0 = qi(e) * v.1.clone() + v.2.clone();
    (cf.clone() + v.0.clone(), v.3.clone() + cc0 - q(e, 2) * cf)
}

/// `M^{-1}` with entries `(a, b; c, d)` acting on `x + i y` as a real vector.
pub fn act(inv: &(Q, Q, Q, Q), z: &C) -> C {
    let (a, b, cc, d) = inv;
    c(a.clone() * z.re.clone() + b.clone() * z.im.clone(), cc.clone() * z.re.clone() + d.clone() * z.im.clone())
}

/// Glued charge with `A2 = id`: `M1^{-1} Z_st(lambda_1) + Z_st(rho_2)`.
pub fn glued_charge(e: i64, inv: &(Q, Q, Q, Q), v: &Tuple<Q>) -> C {
    let (r1, d1) = lambda1(e, v);
    let (r2, d2) = rho2(e, v);
    act(inv, &c(-d1, r1)) + c(-d2, r2)
}

/// Closed form of `pr_1` for a normalized gluing with `M1^{-1} = (a, b; c, d)`.
pub fn pr1_closed(e: i64, inv: &(Q, Q, Q, Q)) -> Tuple<C> {
    let (a, b, cc, d) = inv.clone();
    let one = Q::one();
    let he = q(e, 2);
    (
        c(one.clone() - a.clone(), -cc.clone()),
        c(-one.clone(), Q::zero()),
        c(he.clone() * (a + one.clone()) - b, he * cc + one - d),
        c(Q::zero(), -Q::one()),
    )
}

pub fn to_c_tuple(v: &Tuple<Q>) -> Tuple<C> {
    let r = |x: &Q| c(x.clone(), Q::zero());
    (r(&v.0), r(&v.1), r(&v.2), r(&v.3))
}

pub fn inverse_entries(m: &Mat2<Q>) -> (Q, Q, Q, Q) {
    let inv = m.inverse().expect("invertible");
    (inv.a, inv.b, inv.c, inv.d)
}

/// Small random rational `n/d` with `|n| <= max_num`, `1 <= d <= max_den`.
pub fn rand_q<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Q {
    q(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

pub fn rand_positive_q<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Q {
    q(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

/// Random matrix of positive determinant.
pub fn rand_gl_plus<R: Rng>(rng: &mut R) -> Mat2<Q> {
    loop {
        let m = Mat2::new(rand_q(rng, 4, 3), rand_q(rng, 4, 3), rand_q(rng, 4, 3), rand_q(rng, 4, 3));
        if m.det() > Q::zero() {
            return m;
        }
    }
}

pub fn rand_divisor<R: Rng>(rng: &mut R) -> DivisorClass<Q> {
    DivisorClass::new(rand_q(rng, 5, 4), rand_q(rng, 5, 4))
}

/// Integral class grid `|r|, |x|, |y| <= 2`, `2 ch2` in `-4..=4`.
pub fn class_grid() -> Vec<NumClass<Q>> {
    class_grid_in()
}

pub fn class_grid_in<T: Scalar>() -> Vec<NumClass<T>> {
    let mut out = Vec::new();
    for r in -2..=2 {
        for x in -2..=2 {
            for y in -2..=2 {
                for t in -4..=4 {
                    out.push(NumClass::integral(r, x, y, t));
                }
            }
        }
    }
    out
}
