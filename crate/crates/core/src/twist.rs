//! Lattice action of the restricted spherical twists `T_{O_Θᵢ(k)}`.
//!
//! On `G(C)` the twist along `δ = [O_Θᵢ(k)]` acts by the reflection
//! `s_δ(v) = v + ⟨v,δ⟩·δ`; on central charges it acts by `Z ↦ Z ∘ s_δ`.
//! Both are involutions, so a word and its reverse undo each other.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::catalog::KodairaCurve;
use crate::charge::CentralCharge;
use crate::error::{Error, Result};
use crate::kgroup::KClass;
use crate::rational::{q, CQ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwistGenerator {
    /// 1-based component index.
    pub i: usize,
    pub k: i64,
    pub inverse: bool,
}

impl TwistGenerator {
    pub fn new(i: usize, k: i64) -> Self {
        TwistGenerator { i, k, inverse: false }
    }

    pub fn inverted(self) -> Self {
        TwistGenerator { inverse: !self.inverse, ..self }
    }
}

impl fmt::Display for TwistGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = if self.inverse { "^-1" } else { "" };
        write!(f, "T{inv}({},{})", self.i, self.k)
    }
}

impl FromStr for TwistGenerator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected T(i,k), got {s:?}"));
        let t = s.trim();
        let (inverse, rest) = if let Some(r) = t.strip_prefix("T^-1") {
            (true, r)
        } else if let Some(r) = t.strip_prefix('T') {
            (false, r)
        } else {
            return Err(bad());
        };
        let inner = rest
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (i, k) = inner.split_once(',').ok_or_else(bad)?;
        Ok(TwistGenerator {
            i: i.trim().parse().map_err(|_| bad())?,
            k: k.trim().parse().map_err(|_| bad())?,
            inverse,
        })
    }
}

impl Serialize for TwistGenerator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TwistGenerator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Generators applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TwistWord(pub Vec<TwistGenerator>);

impl TwistWord {
    pub fn new() -> Self {
        TwistWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, g: TwistGenerator) {
        self.0.push(g);
    }

    pub fn reversed(&self) -> Self {
        TwistWord(self.0.iter().rev().copied().collect())
    }

    /// The inverse word: reversed, with each generator inverted.
    pub fn inverse(&self) -> Self {
        TwistWord(self.0.iter().rev().map(|g| g.inverted()).collect())
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, g) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(";")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Parses `"T(1,-1);T(2,0)"`; an empty string is the empty word.
impl FromStr for TwistWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(';')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(TwistWord)
    }
}

/// `s_δ(v)` for `δ = [O_Θᵢ(k)]`.
pub fn reflect_class(curve: &KodairaCurve, i: usize, k: i64, v: &KClass) -> Result<KClass> {
    let delta = curve.line_bundle_class(i, k)?;
    let p = curve.pair(v, &delta)?;
    Ok(v + &delta.scale(p))
}

/// `Z ∘ s_δ` for `δ = [O_Θᵢ(k)]`: `zⱼ ↦ zⱼ + gram[j][i]·Z(δ)`, `z0` fixed.
pub fn dual_reflect_charge(
    curve: &KodairaCurve,
    i: usize,
    k: i64,
    z: &CentralCharge,
) -> Result<CentralCharge> {
    let idx = curve.check_index(i)?;
    if z.dim() != curve.n() {
        return Err(Error::DimensionMismatch { expected: curve.n(), got: z.dim() });
    }
    let delta = curve.line_bundle_class(i, k)?;
    let z_delta = z.eval_unchecked(&delta);
    let g = curve.gram();
    let zs = z
        .z
        .iter()
        .enumerate()
        .map(|(j, zj)| {
            let c = g[j][idx];
            if c == 0 {
                zj.clone()
            } else {
                let c = q(c);
                zj + CQ::new(&z_delta.re * &c, &z_delta.im * &c)
            }
        })
        .collect();
    Ok(CentralCharge::new(z.z0.clone(), zs))
}

/// Anything the twist group acts on.
pub trait Twistable: Sized {
    fn twist(&self, curve: &KodairaCurve, g: TwistGenerator) -> Result<Self>;
}

impl Twistable for KClass {
    fn twist(&self, curve: &KodairaCurve, g: TwistGenerator) -> Result<Self> {
        reflect_class(curve, g.i, g.k, self)
    }
}

impl Twistable for CentralCharge {
    fn twist(&self, curve: &KodairaCurve, g: TwistGenerator) -> Result<Self> {
        dual_reflect_charge(curve, g.i, g.k, self)
    }
}

pub fn apply_word<T: Twistable + Clone>(
    curve: &KodairaCurve,
    word: &TwistWord,
    target: &T,
) -> Result<T> {
    word.0
        .iter()
        .try_fold(target.clone(), |acc, &g| acc.twist(curve, g))
}
