//! The set Δ(C) of (−2)-classes.
//!
//! Every root decomposes uniquely as `c·[O_x] + w₀ + m·ρ` where `w₀` is a
//! root of the finite diagram obtained by deleting the affine node (so its
//! affine coordinate is zero). The representatives `w₀` are produced by
//! reflection closure; [`KodairaCurve::enumerate_roots_in_box`] is an
//! independent exhaustive scan used to cross-check them.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::KodairaCurve;
use crate::error::{Error, Result};
use crate::kgroup::KClass;
use crate::linalg;
use crate::rational::q_to_f64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDecomposition {
    pub c: i64,
    pub w0: KClass,
    pub m: i64,
}

impl RootDecomposition {
    pub fn recompose(&self, curve: &KodairaCurve) -> KClass {
        let rho = curve.rho();
        let mut v = &self.w0 + &rho.scale(self.m);
        v.chi += self.c;
        v
    }
}

impl KodairaCurve {
    /// Canonical coset representatives R₀: the chi = 0 roots with zero
    /// coordinate at the affine node, sorted lexicographically.
    pub fn fundamental_roots(&self) -> &[KClass] {
        self.root_cache.get_or_init(|| self.reflection_closure())
    }

    fn reflection_closure(&self) -> Vec<KClass> {
        let n = self.n();
        let simple: Vec<usize> = (0..n).filter(|&j| j != self.affine_index()).collect();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for &j in &simple {
            let mut e = vec![0; n];
            e[j] = 1;
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        let g = self.gram();
        while let Some(v) = queue.pop_front() {
            for &j in &simple {
                // s_j(v) = v + ⟨v, e_j⟩ e_j
                let p: i64 = v.iter().zip(&g[j]).map(|(a, b)| a * b).sum();
                if p == 0 {
                    continue;
                }
                let mut w = v.clone();
                w[j] += p;
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let mut out: Vec<KClass> = seen.into_iter().map(|r| KClass::new(0, r)).collect();
        out.sort();
        out
    }

    pub fn decompose_root(&self, delta: &KClass) -> Result<RootDecomposition> {
        let norm = self.norm(delta)?;
        if norm != -2 {
            return Err(Error::NotARoot { norm });
        }
        let rho = self.rho();
        let m = delta.ranks[self.affine_index()];
        let w0 = KClass::new(
            0,
            delta.ranks.iter().zip(&rho.ranks).map(|(r, a)| r - m * a).collect(),
        );
        Ok(RootDecomposition { c: delta.chi, w0, m })
    }

    /// Every chi = 0 class with `|ranks|∞ ≤ bound` and self-pairing −2.
    ///
    /// The scan is exhaustive over the box; branches are cut only when the
    /// partial sum of the LDLᵀ expansion of `−⟨w,w⟩` already exceeds 2, and
    /// each survivor is verified in exact integer arithmetic.
    pub fn enumerate_roots_in_box(&self, bound: u32) -> Vec<KClass> {
        let n = self.n();
        let b = bound as i64;
        // affine node last, so the single zero pivot sits at the end
        let mut order: Vec<usize> = (0..n).filter(|&j| j != self.affine_index()).collect();
        order.push(self.affine_index());
        let permuted: Vec<Vec<i64>> = order
            .iter()
            .map(|&i| order.iter().map(|&j| -self.gram()[i][j]).collect())
            .collect();
        let ldlt = linalg::ldlt_psd(&linalg::to_q_matrix(&permuted))
            .expect("negated gram is positive semi-definite");
        let pivots: Vec<f64> = ldlt.pivots.iter().map(q_to_f64).collect();
        let l: Vec<Vec<f64>> = ldlt
            .l
            .iter()
            .map(|row| row.iter().map(q_to_f64).collect())
            .collect();
        let scan = Scan { n, bound: b, pivots: &pivots, l: &l };

        let mut found: Vec<KClass> = (-b..=b)
            .into_par_iter()
            .flat_map_iter(|top| {
                let mut x = vec![0i64; n];
                x[n - 1] = top;
                let mut out = Vec::new();
                let start = pivots[n - 1] * (top as f64).powi(2);
                scan.descend(n - 1, start, &mut x, &mut out);
                out
            })
            .filter_map(|x| {
                let mut ranks = vec![0; n];
                for (slot, &node) in order.iter().enumerate() {
                    ranks[node] = x[slot];
                }
                (self.pair_unchecked(&ranks, &ranks) == -2).then(|| KClass::new(0, ranks))
            })
            .collect();
        found.sort();
        found
    }
}

struct Scan<'a> {
    n: usize,
    bound: i64,
    pivots: &'a [f64],
    l: &'a [Vec<f64>],
}

impl Scan<'_> {
    const TARGET: f64 = 2.0;
    const SLACK: f64 = 1e-7;

    /// Coordinates `slot..n` of `x` are fixed with partial sum `acc`; assign
    /// coordinate `slot - 1`.
    fn descend(&self, slot: usize, acc: f64, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if acc > Self::TARGET + Self::SLACK {
            return;
        }
        if slot == 0 {
            out.push(x.clone());
            return;
        }
        let j = slot - 1;
        let shift: f64 = (j + 1..self.n).map(|i| self.l[i][j] * x[i] as f64).sum();
        let d = self.pivots[j];
        let (lo, hi) = if d > 0.0 {
            let r = ((Self::TARGET + Self::SLACK - acc) / d).max(0.0).sqrt();
            (
                ((-shift - r).floor() as i64).max(-self.bound),
                ((-shift + r).ceil() as i64).min(self.bound),
            )
        } else {
            (-self.bound, self.bound)
        };
        for v in lo..=hi {
            x[j] = v;
            let t = v as f64 + shift;
            self.descend(j, acc + d * t * t, x, out);
        }
        x[j] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_curve, CurveTypeId};

    fn curve(s: &str) -> KodairaCurve {
        build_curve(s.parse::<CurveTypeId>().unwrap()).unwrap()
    }

    fn ranks(v: &[KClass]) -> Vec<Vec<i64>> {
        v.iter().map(|k| k.ranks.clone()).collect()
    }

    #[test]
    fn i2_fundamental_roots() {
        let c = curve("I_2");
        assert_eq!(ranks(c.fundamental_roots()), vec![vec![-1, 0], vec![1, 0]]);
    }

    #[test]
    fn small_root_counts() {
        assert_eq!(curve("IV").fundamental_roots().len(), 6);
        assert_eq!(curve("III").fundamental_roots().len(), 2);
        assert_eq!(curve("I_5").fundamental_roots().len(), 20);
        assert_eq!(curve("IStar_0").fundamental_roots().len(), 24);
    }

    #[test]
    fn box_scan_examples() {
        let c = curve("I_2");
        assert_eq!(
            ranks(&c.enumerate_roots_in_box(1)),
            vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]
        );
        let two = c.enumerate_roots_in_box(2);
        assert_eq!(two.len(), 8);
        for r in [[1, 0], [2, 1], [0, 1], [1, 2]] {
            assert!(two.contains(&KClass::new(0, r.to_vec())));
            assert!(two.contains(&KClass::new(0, vec![-r[0], -r[1]])));
        }
        assert!(curve("IV").enumerate_roots_in_box(0).is_empty());
    }

    #[test]
    fn decompositions() {
        let c = curve("I_2");
        let d = c.decompose_root(&KClass::new(2, vec![2, 1])).unwrap();
        assert_eq!(d, RootDecomposition { c: 2, w0: KClass::new(0, vec![1, 0]), m: 1 });
        let d = c.decompose_root(&KClass::new(-2, vec![-2, -1])).unwrap();
        assert_eq!(d, RootDecomposition { c: -2, w0: KClass::new(0, vec![-1, 0]), m: -1 });

        let lb = c.line_bundle_class(1, 4).unwrap();
        let d = c.decompose_root(&lb).unwrap();
        assert_eq!((d.c, d.m), (5, 0));
        assert_eq!(d.w0, KClass::new(0, vec![1, 0]));
        assert_eq!(d.recompose(&c), lb);
    }

    #[test]
    fn decomposing_a_non_root_fails() {
        let c = curve("I_3");
        assert!(matches!(
            c.decompose_root(&KClass::new(0, vec![1, 1, 1])),
            Err(Error::NotARoot { norm: 0 })
        ));
        assert!(matches!(
            c.decompose_root(&KClass::new(0, vec![1, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn affine_node_of_a_type_is_zero_in_representatives() {
        for s in ["I_4", "IStar_1", "IVStar", "IIIStar", "IIStar"] {
            let c = curve(s);
            let a = c.affine_node() - 1;
            assert!(c.fundamental_roots().iter().all(|r| r.ranks[a] == 0), "{s}");
        }
    }
}
