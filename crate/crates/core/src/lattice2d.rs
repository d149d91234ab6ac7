//! Rank-2 lattices in the plane with rational coordinates: Lagrange–Gauss
//! reduction, exact membership and closest-vector queries.
//!
//! Points of the plane are complex rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{floor_int, norm_sqr, round_half_down, CQ, Q};

fn dot(a: &CQ, b: &CQ) -> Q {
    &a.re * &b.re + &a.im * &b.im
}

fn scale(a: &CQ, k: &BigInt) -> CQ {
    let k = Q::from_integer(k.clone());
    CQ::new(&a.re * &k, &a.im * &k)
}

/// Real 2×2 determinant `det[[a.re, b.re], [a.im, b.im]]`.
pub fn det(a: &CQ, b: &CQ) -> Q {
    &a.re * &b.im - &a.im * &b.re
}

/// A lattice `Z·u + Z·v` given by an independent basis.
#[derive(Clone, Debug)]
pub struct Lattice2 {
    u: CQ,
    v: CQ,
    /// Reduced basis, |r1| ≤ |r2| and |r1·r2| ≤ |r1|²/2.
    r1: CQ,
    r2: CQ,
    /// `r1 = t[0][0]·u + t[0][1]·v`, `r2 = t[1][0]·u + t[1][1]·v`.
    t: [[BigInt; 2]; 2],
}

/// Closest lattice point to a target, in coordinates of the input basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosestPoint {
    pub coeffs: (BigInt, BigInt),
    pub dist_sq: Q,
}

impl Lattice2 {
    /// Returns `None` when `u` and `v` are linearly dependent over R.
    pub fn new(u: CQ, v: CQ) -> Option<Self> {
        if det(&u, &v).is_zero() {
            return None;
        }
        let (mut r1, mut r2) = (u.clone(), v.clone());
        let one = BigInt::one;
        let zero = BigInt::zero;
        let mut t = [[one(), zero()], [zero(), one()]];
        loop {
            if norm_sqr(&r2) < norm_sqr(&r1) {
                std::mem::swap(&mut r1, &mut r2);
                t.swap(0, 1);
            }
            let mu = round_half_down(&(dot(&r1, &r2) / norm_sqr(&r1)));
            if mu.is_zero() {
                break;
            }
            r2 = &r2 - &scale(&r1, &mu);
            let (a, b) = (&t[0][0] * &mu, &t[0][1] * &mu);
            t[1][0] -= a;
            t[1][1] -= b;
            if norm_sqr(&r2) >= norm_sqr(&r1) {
                break;
            }
        }
        Some(Lattice2 { u, v, r1, r2, t })
    }

    pub fn basis(&self) -> (&CQ, &CQ) {
        (&self.u, &self.v)
    }

    pub fn reduced_basis(&self) -> (&CQ, &CQ) {
        (&self.r1, &self.r2)
    }

    /// Real coordinates `(a, b)` with `p = a·u + b·v`.
    pub fn coordinates(&self, p: &CQ) -> (Q, Q) {
        let d = det(&self.u, &self.v);
        (det(p, &self.v) / &d, det(&self.u, p) / d)
    }

    /// Integer coordinates of `p` when it is a lattice point.
    pub fn lattice_coordinates(&self, p: &CQ) -> Option<(BigInt, BigInt)> {
        let (a, b) = self.coordinates(p);
        (a.is_integer() && b.is_integer()).then(|| (a.to_integer(), b.to_integer()))
    }

    fn reduced_coordinates(&self, p: &CQ) -> (Q, Q) {
        let d = det(&self.r1, &self.r2);
        (det(p, &self.r2) / &d, det(&self.r1, p) / d)
    }

    fn to_input_coeffs(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        (
            a * &self.t[0][0] + b * &self.t[1][0],
            a * &self.t[0][1] + b * &self.t[1][1],
        )
    }

    /// All lattice points that can be closest to `p`, with squared distance.
    ///
    /// With a reduced basis the optimal coefficient on `r2` is within √2 of
    /// the real coordinate `y`; for each such coefficient the optimal
    /// coefficient on `r1` is the floor or ceiling of the 1-D minimiser.
    pub fn candidates(&self, p: &CQ) -> Vec<ClosestPoint> {
        let (_, y) = self.reduced_coordinates(p);
        let fy = floor_int(&y);
        let n1 = norm_sqr(&self.r1);
        let mut out = Vec::new();
        let mut b = &fy - 1;
        while b <= &fy + 2 {
            let rest = p - &scale(&self.r2, &b);
            let a_star = dot(&rest, &self.r1) / &n1;
            let fa = floor_int(&a_star);
            for a in [fa.clone(), fa + 1] {
                let diff = &rest - &scale(&self.r1, &a);
                out.push(ClosestPoint {
                    coeffs: self.to_input_coeffs(&a, &b),
                    dist_sq: norm_sqr(&diff),
                });
            }
            b += 1;
        }
        out
    }

    pub fn closest(&self, p: &CQ) -> ClosestPoint {
        self.candidates(p)
            .into_iter()
            .min_by(|x, y| {
                x.dist_sq
                    .cmp(&y.dist_sq)
                    .then_with(|| x.coeffs.cmp(&y.coeffs))
            })
            .expect("candidate set is never empty")
    }
}

/// A point of `Z²` viewed in the plane.
pub type IPoint = (BigInt, BigInt);

fn idet(a: &IPoint, b: &IPoint) -> BigInt {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn idot(a: &IPoint, b: &IPoint) -> BigInt {
    &a.0 * &b.0 + &a.1 * &b.1
}

/// Integer variant of [`Lattice2`] for sublattices of `Z²`.
///
/// A point `p` is handled through its *numerators* `(P, R)`: its coordinates
/// in the reduced basis are `(P/Δ, R/Δ)` with `Δ = det(r1, r2)`. Numerators
/// are linear in `p`, so callers can combine precomputed ones, and squared
/// distances come out scaled by `Δ²`, all in exact integer arithmetic.
#[derive(Clone, Debug)]
pub struct IntLattice2 {
    r1: IPoint,
    r2: IPoint,
    g11: BigInt,
    g12: BigInt,
    g22: BigInt,
    delta: BigInt,
    t: [[BigInt; 2]; 2],
}

impl IntLattice2 {
    pub fn new(u: IPoint, v: IPoint) -> Option<Self> {
        if idet(&u, &v).is_zero() {
            return None;
        }
        let (mut r1, mut r2) = (u, v);
        let mut t = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
        loop {
            if idot(&r2, &r2) < idot(&r1, &r1) {
                std::mem::swap(&mut r1, &mut r2);
                t.swap(0, 1);
            }
            let mu = round_half_down(&Q::new(idot(&r1, &r2), idot(&r1, &r1)));
            if mu.is_zero() {
                break;
            }
            r2 = (&r2.0 - &mu * &r1.0, &r2.1 - &mu * &r1.1);
            let (a, b) = (&t[0][0] * &mu, &t[0][1] * &mu);
            t[1][0] -= a;
            t[1][1] -= b;
            if idot(&r2, &r2) >= idot(&r1, &r1) {
                break;
            }
        }
        Some(IntLattice2 {
            g11: idot(&r1, &r1),
            g12: idot(&r1, &r2),
            g22: idot(&r2, &r2),
            delta: idet(&r1, &r2),
            r1,
            r2,
            t,
        })
    }

    /// `Δ²`, the factor by which [`IntLattice2::closest`] scales distances.
    pub fn scale_sq(&self) -> BigInt {
        &self.delta * &self.delta
    }

    pub fn numerators(&self, p: &IPoint) -> (BigInt, BigInt) {
        (idet(p, &self.r2), idet(&self.r1, p))
    }

    fn to_input_coeffs(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        (
            a * &self.t[0][0] + b * &self.t[1][0],
            a * &self.t[0][1] + b * &self.t[1][1],
        )
    }

    /// Input-basis coefficients of the point with numerators `(P, R)`, if
    /// it lies in the lattice.
    pub fn member(&self, p: &BigInt, r: &BigInt) -> Option<(BigInt, BigInt)> {
        let (a, ra) = p.div_mod_floor(&self.delta);
        let (b, rb) = r.div_mod_floor(&self.delta);
        (ra.is_zero() && rb.is_zero()).then(|| self.to_input_coeffs(&a, &b))
    }

    /// Closest lattice point to the point with numerators `(P, R)`: input
    /// coefficients and `Δ²·dist²`. Same candidate set as [`Lattice2::candidates`].
    pub fn closest(&self, p: &BigInt, r: &BigInt) -> ((BigInt, BigInt), BigInt) {
        let fb = r.div_floor(&self.delta);
        let mut best: Option<((BigInt, BigInt), BigInt)> = None;
        let den = &self.delta * &self.g11;
        for db in -1..=2 {
            let b = &fb + db;
            let v = r - &b * &self.delta;
            // a* = (P·g11 + V·g12) / (Δ·g11)
            let num: BigInt = p * &self.g11 + &v * &self.g12;
            let fa = num.div_floor(&den);
            for a in [fa.clone(), fa + 1] {
                let u = p - &a * &self.delta;
                let n = &u * &u * &self.g11 + BigInt::from(2) * &u * &v * &self.g12 + &v * &v * &self.g22;
                let better = match &best {
                    None => true,
                    Some((_, m)) => n < *m,
                };
                if better {
                    best = Some((self.to_input_coeffs(&a, &b), n));
                }
            }
        }
        best.expect("candidate set is never empty")
    }
}

/// Whether the reduced basis satisfies the Lagrange–Gauss conditions.
pub fn is_reduced(r1: &CQ, r2: &CQ) -> bool {
    let n1 = norm_sqr(r1);
    let two_dot = dot(r1, r2).abs() * Q::from_integer(BigInt::from(2));
    n1 <= norm_sqr(r2) && two_dot <= n1
}
