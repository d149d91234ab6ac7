//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use kodaira_stab::rational::{common_denominator, cq, q, CQ, Q};
use kodaira_stab::{build_curve, CentralCharge, CurveTypeId, KClass, KodairaCurve};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn curve(s: &str) -> KodairaCurve {
    build_curve(s.parse::<CurveTypeId>().unwrap()).unwrap()
}

/// Every catalog entry the checks sweep over.
pub fn sweep_ids() -> Vec<String> {
    let mut ids: Vec<String> = (2..=8).map(|n| format!("I_{n}")).collect();
    for m in 2..=3 {
        for n in 2..=4 {
            ids.push(format!("mI_{n}:{m}"));
        }
    }
    ids.extend(["III", "IV"].map(String::from));
    ids.extend((0..=4).map(|n| format!("IStar_{n}")));
    ids.extend(["IVStar", "IIIStar", "IIStar"].map(String::from));
    ids
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rand_q(r: &mut StdRng, num: i64, max_den: i64) -> Q {
    Q::new(BigInt::from(r.gen_range(-num..=num)), BigInt::from(r.gen_range(1..=max_den)))
}

pub fn rand_cq(r: &mut StdRng, num: i64, max_den: i64) -> CQ {
    cq(rand_q(r, num, max_den), rand_q(r, num, max_den))
}

pub fn rand_class(r: &mut StdRng, n: usize, range: i64) -> KClass {
    KClass::new(r.gen_range(-range..=range), (0..n).map(|_| r.gen_range(-range..=range)).collect())
}

/// Direct evaluation `Z(v) = χ·z0 + Σ rkᵢ·zᵢ`.
pub fn eval(z: &CentralCharge, v: &KClass) -> CQ {
    let mut acc = &z.z0 * cq(q(v.chi), q(0));
    for (zi, &r) in z.z.iter().zip(&v.ranks) {
        acc += zi * cq(q(r), q(0));
    }
    acc
}

/// Finite-diagram roots (zero coordinate at the affine node) found by the
/// exhaustive box scan, independent of the reflection closure.
pub fn finite_roots_by_scan(c: &KodairaCurve) -> Vec<KClass> {
    let bound = *c.marks().iter().max().unwrap() as u32;
    let aff = c.affine_node() - 1;
    c.enumerate_roots_in_box(bound)
        .into_iter()
        .filter(|r| r.ranks[aff] == 0)
        .collect()
}

/// `Z` scaled by a common denominator so every value is a Gaussian integer.
pub struct IntCharge {
    pub den: BigInt,
    pub z0: (i128, i128),
    pub z: Vec<(i128, i128)>,
}

impl IntCharge {
    pub fn new(z: &CentralCharge) -> Self {
        let all: Vec<&Q> = std::iter::once(&z.z0)
            .chain(&z.z)
            .flat_map(|c| [&c.re, &c.im])
            .collect();
        let den = common_denominator(all.iter().copied());
        let dq = Q::from_integer(den.clone());
        let scale = |x: &Q| -> i128 {
            let v = x * &dq;
            v.to_integer().to_i128().expect("scaled charge fits in i128")
        };
        let pair = |c: &CQ| (scale(&c.re), scale(&c.im));
        IntCharge { den, z0: pair(&z.z0), z: z.z.iter().map(pair).collect() }
    }

    pub fn eval(&self, v: &KClass) -> (i128, i128) {
        let mut re = self.z0.0 * v.chi as i128;
        let mut im = self.z0.1 * v.chi as i128;
        for (&(a, b), &r) in self.z.iter().zip(&v.ranks) {
            re += a * r as i128;
            im += b * r as i128;
        }
        (re, im)
    }

    /// Rescales an integer squared modulus back to `|Z|²`.
    pub fn unscale_sq(&self, s: i128) -> Q {
        Q::new(BigInt::from(s), &self.den * &self.den)
    }
}

/// Result of scanning every root `c·ox + w0 + m·ρ` with `|c|, |m| ≤ bound`.
pub struct BoxScan {
    /// Minimum of `|Z(δ)|²`, exact.
    pub min_sq: Q,
    pub argmin: Vec<KClass>,
    pub vanishing: Vec<KClass>,
}

pub fn box_scan(c: &KodairaCurve, z: &CentralCharge, finite: &[KClass], bound: i64) -> BoxScan {
    let iz = IntCharge::new(z);
    let rho = c.rho();
    let zr = iz.eval(&rho);
    let mut best = i128::MAX;
    let mut argmin = Vec::new();
    let mut vanishing = Vec::new();
    for w0 in finite {
        let zw = iz.eval(w0);
        for m in -bound..=bound {
            for cc in -bound..=bound {
                let re = zw.0 + m as i128 * zr.0 + cc as i128 * iz.z0.0;
                let im = zw.1 + m as i128 * zr.1 + cc as i128 * iz.z0.1;
                let d = re * re + im * im;
                if d <= best {
                    let mut delta = w0 + &rho.scale(m);
                    delta.chi += cc;
                    if d < best {
                        best = d;
                        argmin.clear();
                    }
                    argmin.push(delta.clone());
                    if d == 0 {
                        vanishing.push(delta);
                    }
                }
            }
        }
    }
    BoxScan { min_sq: iz.unscale_sq(best), argmin, vanishing }
}

/// A random charge; with `force_vanishing` one of its roots is sent to 0.
pub fn random_charge(
    r: &mut StdRng,
    c: &KodairaCurve,
    num: i64,
    max_den: i64,
    force_vanishing: bool,
) -> CentralCharge {
    let n = c.n();
    let mut z = CentralCharge::new(rand_cq(r, num, max_den), (0..n).map(|_| rand_cq(r, num, max_den)).collect());
    if force_vanishing {
        let roots = c.fundamental_roots();
        let w0 = &roots[r.gen_range(0..roots.len())];
        let mut delta = w0 + &c.rho().scale(r.gen_range(-6..=6));
        delta.chi += r.gen_range(-6..=6);
        let j = (0..n).find(|&j| delta.ranks[j] != 0).unwrap();
        let rj = delta.ranks[j];
        z.z[j] = cq(q(0), q(0));
        let rest = eval(&z, &delta);
        z.z[j] = -(rest / cq(q(rj), q(0)));
        assert_eq!(eval(&z, &delta), cq(q(0), q(0)));
    }
    z
}
