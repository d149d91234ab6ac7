//! The numerical Grothendieck lattice `G(C) ≅ Z^{n+1}` and its Euler pairing.
//!
//! A class is written in the basis `[O_x], [O_Θ₁(−1)], …, [O_Θₙ(−1)]`. Since
//! `χ(O_Θᵢ(−1)) = 0`, the coefficients are exactly `(χ, rk₁, …, rkₙ)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::catalog::KodairaCurve;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KClass {
    pub chi: i64,
    pub ranks: Vec<i64>,
}

impl KClass {
    pub fn new(chi: i64, ranks: Vec<i64>) -> Self {
        KClass { chi, ranks }
    }

    pub fn zero(n: usize) -> Self {
        KClass { chi: 0, ranks: vec![0; n] }
    }

    /// Class of a skyscraper sheaf.
    pub fn point(n: usize) -> Self {
        KClass { chi: 1, ranks: vec![0; n] }
    }

    /// `[O_Θᵢ(−1)]` for a 0-based index.
    pub fn unit(n: usize, index: usize) -> Self {
        let mut ranks = vec![0; n];
        ranks[index] = 1;
        KClass { chi: 0, ranks }
    }

    pub fn dim(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_zero(&self) -> bool {
        self.chi == 0 && self.ranks.iter().all(|&r| r == 0)
    }

    pub fn scale(&self, c: i64) -> Self {
        KClass {
            chi: self.chi * c,
            ranks: self.ranks.iter().map(|r| r * c).collect(),
        }
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(chi={}, ranks={:?})", self.chi, self.ranks)
    }
}

impl Add<&KClass> for &KClass {
    type Output = KClass;
    fn add(self, rhs: &KClass) -> KClass {
        assert_eq!(self.dim(), rhs.dim(), "class dimensions differ");
        KClass {
            chi: self.chi + rhs.chi,
            ranks: self.ranks.iter().zip(&rhs.ranks).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&KClass> for &KClass {
    type Output = KClass;
    fn sub(self, rhs: &KClass) -> KClass {
        self + &(-rhs)
    }
}

impl Neg for &KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        self.scale(-1)
    }
}

impl Mul<&KClass> for i64 {
    type Output = KClass;
    fn mul(self, rhs: &KClass) -> KClass {
        rhs.scale(self)
    }
}

/// Generators of the radical of the pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalBasis {
    pub ox: KClass,
    /// Primitive fibre direction: the marks vector divided by its gcd.
    pub rho: KClass,
    /// Class of the whole fibre, `fiber_multiplicity · rho`.
    pub alpha: KClass,
    pub fiber_multiplicity: i64,
}

impl KodairaCurve {
    pub(crate) fn check_dim(&self, v: &KClass) -> Result<()> {
        if v.dim() != self.n() {
            Err(Error::DimensionMismatch { expected: self.n(), got: v.dim() })
        } else {
            Ok(())
        }
    }

    /// Euler pairing `⟨v, w⟩ = ranks(v)ᵀ · gram · ranks(w)`.
    pub fn pair(&self, v: &KClass, w: &KClass) -> Result<i64> {
        self.check_dim(v)?;
        self.check_dim(w)?;
        Ok(self.pair_unchecked(&v.ranks, &w.ranks))
    }

    pub(crate) fn pair_unchecked(&self, v: &[i64], w: &[i64]) -> i64 {
        let g = self.gram();
        let mut acc = 0;
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            acc += vi * g[i].iter().zip(w).map(|(a, b)| a * b).sum::<i64>();
        }
        acc
    }

    pub fn norm(&self, v: &KClass) -> Result<i64> {
        self.pair(v, v)
    }

    pub fn radical_basis(&self) -> RadicalBasis {
        let n = self.n();
        let g = self.marks().iter().fold(0i64, |acc, &a| acc.gcd(&a));
        let rho = KClass::new(0, self.marks().iter().map(|a| a / g).collect());
        let c = self.id().fiber_multiplicity().map_or(1, i64::from);
        RadicalBasis {
            ox: KClass::point(n),
            alpha: rho.scale(c),
            rho,
            fiber_multiplicity: c,
        }
    }

    pub fn rho(&self) -> KClass {
        self.radical_basis().rho
    }

    /// `[O_Θᵢ(k)] = (k+1)·[O_x] + [O_Θᵢ(−1)]`, with `i` 1-based.
    pub fn line_bundle_class(&self, i: usize, k: i64) -> Result<KClass> {
        let idx = self.check_index(i)?;
        let mut v = KClass::unit(self.n(), idx);
        v.chi = k + 1;
        Ok(v)
    }

    /// Whether `v` is the class of a nonzero sheaf: a positive multiple of
    /// points, or a class with non-negative, not all zero, ranks.
    pub fn is_effective(&self, v: &KClass) -> Result<bool> {
        self.check_dim(v)?;
        let ranks_zero = v.ranks.iter().all(|&r| r == 0);
        Ok(if ranks_zero {
            v.chi > 0
        } else {
            v.ranks.iter().all(|&r| r >= 0)
        })
    }
}
