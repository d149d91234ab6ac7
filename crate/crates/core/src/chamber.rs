//! Fundamental chamber, walls `(C_{i,k})`, and the chamber walk.
//!
//! After rescaling so that `Z(O_x) = −1`, a charge is in the fundamental
//! chamber exactly when every `Im zᵢ > 0`. The wall `(C_{i,k})` is the locus
//! `Im zᵢ = 0, k+1 < Re zᵢ < k+2`, where `Z(O_Θᵢ(k)) > 0 > Z(O_Θᵢ(k+1))` and
//! the skyscraper class splits into `[O_Θᵢ(k+1)]` and `−[O_Θᵢ(k)]`.

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::KodairaCurve;
use crate::charge::{self, CentralCharge, Component};
use crate::error::{Error, Result};
use crate::kgroup::KClass;
use crate::rational::{ci, floor_int, q, round_half_down, serde_cq, serde_q, to_i64, CQ, Q};
use crate::twist::{dual_reflect_charge, TwistGenerator, TwistWord};

/// A central charge rescaled so that `Z(O_x) = −1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalizedCharge {
    #[serde(with = "serde_cq::vec")]
    pub z: Vec<CQ>,
}

impl NormalizedCharge {
    pub fn new(z: Vec<CQ>) -> Self {
        NormalizedCharge { z }
    }

    pub fn to_charge(&self) -> CentralCharge {
        CentralCharge::new(ci(-1, 0), self.z.clone())
    }

    pub fn from_charge(z: &CentralCharge) -> Result<Self> {
        if z.z0.is_zero() {
            return Err(Error::DegenerateCharge);
        }
        let lambda = -(ci(1, 0) / &z.z0);
        Ok(NormalizedCharge::new(z.z.iter().map(|v| v * &lambda).collect()))
    }
}

/// Multiplies every value by `−1/z0`.
pub fn normalize(curve: &KodairaCurve, z: &CentralCharge) -> Result<NormalizedCharge> {
    if z.dim() != curve.n() {
        return Err(Error::DimensionMismatch { expected: curve.n(), got: z.dim() });
    }
    NormalizedCharge::from_charge(z)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "walls", rename_all = "snake_case")]
pub enum ChamberVerdict {
    Inside,
    /// Walls `(i, k)` the charge lies on, `i` 1-based.
    OnWall(Vec<(usize, i64)>),
    Outside,
}

/// `k` with `k+1 < re < k+2`, or `None` for integral `re`.
pub fn wall_index(re: &Q) -> Option<i64> {
    if re.is_integer() {
        None
    } else {
        to_i64(&floor_int(re)).ok().map(|f| f - 1)
    }
}

pub fn in_fundamental_chamber(
    curve: &KodairaCurve,
    zn: &NormalizedCharge,
    closed: bool,
) -> Result<ChamberVerdict> {
    if zn.z.len() != curve.n() {
        return Err(Error::DimensionMismatch { expected: curve.n(), got: zn.z.len() });
    }
    if zn.z.iter().any(|z| z.im.is_negative()) {
        return Ok(ChamberVerdict::Outside);
    }
    let mut walls = Vec::new();
    for (idx, z) in zn.z.iter().enumerate() {
        if z.im.is_zero() {
            if !closed {
                return Ok(ChamberVerdict::Outside);
            }
            let k = wall_index(&z.re).ok_or_else(|| Error::NotGeneral {
                index: idx + 1,
                re: z.re.to_string(),
            })?;
            walls.push((idx + 1, k));
        }
    }
    Ok(if walls.is_empty() {
        ChamberVerdict::Inside
    } else {
        ChamberVerdict::OnWall(walls)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub generator: TwistGenerator,
    pub charge_after: NormalizedCharge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub start: NormalizedCharge,
    pub steps: Vec<ReductionStep>,
    pub word: TwistWord,
    #[serde(rename = "final")]
    pub final_charge: NormalizedCharge,
    pub terminated: bool,
}

/// Walks a plus-component charge into the closed fundamental chamber.
///
/// Each step reflects at the component with the most negative imaginary
/// part (smallest index on ties), choosing `k` so that `k+1` is the integer
/// nearest to its real part (ties downward). The imaginary parts evolve by
/// the affine Weyl action at the positive level `Im Z(ρ)`, which bounds the
/// walk; the step cap and the revisit check guard the implementation.
pub fn reduce_to_fundamental(
    curve: &KodairaCurve,
    z: &CentralCharge,
    max_steps: usize,
) -> Result<ReductionTrace> {
    let report = charge::membership(curve, z)?;
    if report.component != Component::Plus {
        return Err(Error::NotPlusComponent);
    }
    let start = normalize(curve, z)?;
    let mut current = start.to_charge();
    let mut trace = ReductionTrace {
        start: start.clone(),
        steps: Vec::new(),
        word: TwistWord::new(),
        final_charge: start.clone(),
        terminated: false,
    };
    let mut seen: HashSet<Vec<CQ>> = HashSet::new();
    seen.insert(current.z.clone());
    loop {
        let zn = NormalizedCharge::new(current.z.clone());
        if in_fundamental_chamber(curve, &zn, true)? != ChamberVerdict::Outside {
            trace.final_charge = zn;
            trace.terminated = true;
            return Ok(trace);
        }
        if trace.steps.len() >= max_steps {
            trace.final_charge = zn;
            return Err(Error::StepLimitExceeded { max_steps, trace: Box::new(trace) });
        }
        let (idx, zi) = current
            .z
            .iter()
            .enumerate()
            .min_by(|(a, x), (b, y)| x.im.cmp(&y.im).then(a.cmp(b)))
            .expect("curves have at least two components");
        let k = to_i64(&round_half_down(&zi.re))? - 1;
        let g = TwistGenerator::new(idx + 1, k);
        current = dual_reflect_charge(curve, g.i, g.k, &current)?;
        if !seen.insert(current.z.clone()) {
            return Err(Error::CycleDetected { steps: trace.steps.len() + 1 });
        }
        trace.word.push(g);
        trace.steps.push(ReductionStep {
            generator: g,
            charge_after: NormalizedCharge::new(current.z.clone()),
        });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallEvent {
    #[serde(with = "serde_q")]
    pub t: Q,
    /// 1-based component index.
    pub i: usize,
    pub k: i64,
    #[serde(with = "serde_q")]
    pub re_at_wall: Q,
}

/// Walls `(C_{i,k})` met by the straight segment `(1−t)·Za + t·Zb`,
/// `0 < t < 1`, sorted by `t` then `i`.
pub fn wall_crossings_on_segment(
    curve: &KodairaCurve,
    za: &NormalizedCharge,
    zb: &NormalizedCharge,
) -> Result<Vec<WallEvent>> {
    for zn in [za, zb] {
        if zn.z.len() != curve.n() {
            return Err(Error::DimensionMismatch { expected: curve.n(), got: zn.z.len() });
        }
    }
    let mut events = Vec::new();
    for (idx, (a, b)) in za.z.iter().zip(&zb.z).enumerate() {
        if a.im.is_zero() || b.im.is_zero() {
            return Err(Error::EndpointOnWall { index: idx + 1 });
        }
        if a.im.is_positive() == b.im.is_positive() {
            continue;
        }
        let t = &a.im / (&a.im - &b.im);
        let re = &a.re + &t * (&b.re - &a.re);
        let k = wall_index(&re).ok_or_else(|| Error::CornerOnPath {
            index: idx + 1,
            t: t.to_string(),
        })?;
        events.push(WallEvent { t, i: idx + 1, k, re_at_wall: re });
    }
    events.sort_by(|x, y| x.t.cmp(&y.t).then(x.i.cmp(&y.i)));
    Ok(events)
}

/// Point of the segment at parameter `t`.
pub fn segment_point(za: &NormalizedCharge, zb: &NormalizedCharge, t: &Q) -> NormalizedCharge {
    let s = q(1) - t;
    NormalizedCharge::new(
        za.z.iter()
            .zip(&zb.z)
            .map(|(a, b)| {
                CQ::new(&a.re * &s + &b.re * t, &a.im * &s + &b.im * t)
            })
            .collect(),
    )
}

/// Jordan–Hölder factors `([O_Θᵢ(k+1)], −[O_Θᵢ(k)])` of a skyscraper on the
/// wall `(C_{i,k})`; they sum to `[O_x]`.
pub fn jh_of_skyscraper(curve: &KodairaCurve, i: usize, k: i64) -> Result<(KClass, KClass)> {
    let sub = curve.line_bundle_class(i, k + 1)?;
    let quot = -&curve.line_bundle_class(i, k)?;
    Ok((sub, quot))
}

/// Symbolic tilting datum `(T_k, F_k)` attached to the wall `(C_{i,k})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionPairData {
    /// 1-based component index.
    pub component: usize,
    /// `F_k` is generated under extensions by `O_Θᵢ(l)` for `l ≤ max_degree`.
    pub max_degree: i64,
    pub f_generators: String,
    pub t: String,
    pub jh_factors: (KClass, KClass),
}

pub fn torsion_pair_data(curve: &KodairaCurve, i: usize, k: i64) -> Result<TorsionPairData> {
    let jh_factors = jh_of_skyscraper(curve, i, k)?;
    Ok(TorsionPairData {
        component: i,
        max_degree: k,
        f_generators: format!("<O_Theta{i}(l) | l <= {k}>_ex"),
        t: format!("left orthogonal of F_{k}"),
        jh_factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_curve, CurveTypeId};
    use crate::charge::evaluate;
    use crate::rational::{cq, q_frac};

    fn curve(s: &str) -> KodairaCurve {
        build_curve(s.parse::<CurveTypeId>().unwrap()).unwrap()
    }

    fn nc(z: &[(Q, Q)]) -> NormalizedCharge {
        NormalizedCharge::new(z.iter().map(|(a, b)| cq(a.clone(), b.clone())).collect())
    }

    #[test]
    fn normalization_examples() {
        let c = curve("I_2");
        let z = CentralCharge::reference(2);
        assert_eq!(normalize(&c, &z).unwrap(), nc(&[(q(0), q(1)), (q(0), q(1))]));
        let z = CentralCharge::new(ci(-2, 0), vec![ci(0, 2), ci(0, 2)]);
        assert_eq!(normalize(&c, &z).unwrap(), nc(&[(q(0), q(1)), (q(0), q(1))]));
        let z = CentralCharge::new(ci(0, 1), vec![ci(1, 0), ci(1, 0)]);
        assert_eq!(normalize(&c, &z).unwrap(), nc(&[(q(0), q(1)), (q(0), q(1))]));
        let z = CentralCharge::new(ci(0, 0), vec![ci(1, 0), ci(1, 0)]);
        assert!(matches!(normalize(&c, &z), Err(Error::DegenerateCharge)));
    }

    #[test]
    fn chamber_verdicts() {
        let c = curve("I_2");
        let reference = nc(&[(q(0), q(1)), (q(0), q(1))]);
        assert_eq!(in_fundamental_chamber(&c, &reference, false).unwrap(), ChamberVerdict::Inside);

        let wall = nc(&[(q_frac(-1, 3), q(1)), (q_frac(2, 3), q(0))]);
        assert_eq!(
            in_fundamental_chamber(&c, &wall, true).unwrap(),
            ChamberVerdict::OnWall(vec![(2, -1)])
        );
        assert_eq!(in_fundamental_chamber(&c, &wall, false).unwrap(), ChamberVerdict::Outside);

        let out = nc(&[(q_frac(1, 3), q(-1)), (q(0), q(2))]);
        assert_eq!(in_fundamental_chamber(&c, &out, true).unwrap(), ChamberVerdict::Outside);

        let corner = nc(&[(q(1), q(0)), (q(0), q(2))]);
        assert!(matches!(
            in_fundamental_chamber(&c, &corner, true),
            Err(Error::NotGeneral { index: 1, .. })
        ));
    }

    #[test]
    fn verdict_json() {
        let v = serde_json::to_value(ChamberVerdict::OnWall(vec![(2, -1)])).unwrap();
        assert_eq!(v, serde_json::json!({"verdict": "on_wall", "walls": [[2, -1]]}));
        let v = serde_json::to_value(ChamberVerdict::Inside).unwrap();
        assert_eq!(v, serde_json::json!({"verdict": "inside"}));
    }

    #[test]
    fn worked_reduction() {
        let c = curve("I_2");
        let z = CentralCharge::new(ci(-1, 0), vec![cq(q_frac(1, 3), q(-1)), ci(0, 2)]);
        let trace = reduce_to_fundamental(&c, &z, 100).unwrap();
        assert!(trace.terminated);
        assert_eq!(trace.word.to_string(), "T(1,-1)");
        assert_eq!(trace.final_charge, nc(&[(q_frac(-1, 3), q(1)), (q_frac(2, 3), q(0))]));
    }

    #[test]
    fn reference_needs_no_steps() {
        let c = curve("IIStar");
        let trace = reduce_to_fundamental(&c, &CentralCharge::reference(9), 10).unwrap();
        assert!(trace.terminated && trace.word.is_empty() && trace.steps.is_empty());
    }

    #[test]
    fn reduction_refuses_other_components() {
        let c = curve("I_2");
        let z = CentralCharge::new(ci(-1, 0), vec![ci(1, -1), ci(0, 1)]);
        assert!(matches!(reduce_to_fundamental(&c, &z, 10), Err(Error::NotPlusComponent)));
        let z = CentralCharge::reference(2).conj();
        assert!(matches!(reduce_to_fundamental(&c, &z, 10), Err(Error::NotPlusComponent)));
    }

    #[test]
    fn step_limit_returns_partial_trace() {
        let c = curve("I_2");
        let z = CentralCharge::new(ci(-1, 0), vec![cq(q_frac(1, 3), q(-7)), cq(q_frac(1, 5), q(8))]);
        match reduce_to_fundamental(&c, &z, 2) {
            Err(Error::StepLimitExceeded { max_steps: 2, trace }) => {
                assert_eq!(trace.steps.len(), 2);
                assert!(!trace.terminated);
            }
            other => panic!("expected step limit, got {other:?}"),
        }
        assert!(reduce_to_fundamental(&c, &z, 1000).unwrap().terminated);
    }

    #[test]
    fn segment_examples() {
        let c = curve("I_2");
        let za = nc(&[(q(0), q(1)), (q(0), q(2))]);
        let zb = nc(&[(q(1), q(-1)), (q(0), q(2))]);
        let ev = wall_crossings_on_segment(&c, &za, &zb).unwrap();
        assert_eq!(ev, vec![WallEvent { t: q_frac(1, 2), i: 1, k: -1, re_at_wall: q_frac(1, 2) }]);

        assert!(wall_crossings_on_segment(&c, &za, &za).unwrap().is_empty());

        let zb = nc(&[(q(3), q(-1)), (q(0), q(2))]);
        let ev = wall_crossings_on_segment(&c, &za, &zb).unwrap();
        assert_eq!(ev, vec![WallEvent { t: q_frac(1, 2), i: 1, k: 0, re_at_wall: q_frac(3, 2) }]);

        let zb = nc(&[(q(2), q(-1)), (q(0), q(2))]);
        assert!(matches!(
            wall_crossings_on_segment(&c, &za, &zb),
            Err(Error::CornerOnPath { index: 1, .. })
        ));
        let zb = nc(&[(q(2), q(0)), (q(0), q(2))]);
        assert!(matches!(
            wall_crossings_on_segment(&c, &za, &zb),
            Err(Error::EndpointOnWall { index: 1 })
        ));
    }

    #[test]
    fn jh_factors() {
        let c = curve("I_2");
        let (a, b) = jh_of_skyscraper(&c, 1, -1).unwrap();
        assert_eq!(a, KClass::new(1, vec![1, 0]));
        assert_eq!(b, KClass::new(0, vec![-1, 0]));
        assert_eq!(&a + &b, KClass::point(2));
        let (a, b) = jh_of_skyscraper(&c, 1, 0).unwrap();
        assert_eq!(a, KClass::new(2, vec![1, 0]));
        assert_eq!(b, KClass::new(-1, vec![-1, 0]));
        assert!(jh_of_skyscraper(&c, 3, 0).is_err());
    }

    #[test]
    fn jh_factors_are_negative_real_on_the_wall() {
        let c = curve("IV");
        for k in -3..=3 {
            let re = q(k) + q_frac(3, 2);
            let z = CentralCharge::new(ci(-1, 0), vec![cq(re.clone(), q(0)), ci(0, 1), ci(1, 2)]);
            let (a, b) = jh_of_skyscraper(&c, 1, k).unwrap();
            let za = evaluate(&c, &z, &a).unwrap();
            let zb = evaluate(&c, &z, &b).unwrap();
            assert!(za.im.is_zero() && za.re.is_negative());
            assert!(zb.im.is_zero() && zb.re.is_negative());
            assert_eq!(za.re, &re - q(k + 2));
        }
    }

    #[test]
    fn torsion_pairs() {
        let c = curve("I_3");
        let t = torsion_pair_data(&c, 1, 0).unwrap();
        assert_eq!(t.max_degree, 0);
        assert_eq!(t.f_generators, "<O_Theta1(l) | l <= 0>_ex");
        let t = torsion_pair_data(&c, 2, -3).unwrap();
        assert_eq!((t.component, t.max_degree), (2, -3));
        assert_eq!(t.jh_factors, jh_of_skyscraper(&c, 2, -3).unwrap());
        assert!(torsion_pair_data(&c, 4, 0).is_err());
    }
}
