//! The reducible Kodaira curve types as combinatorial data.
//!
//! Each curve is a configuration of smooth rational components Θ₁, …, Θₙ
//! whose dual graph is an affine Dynkin diagram. The Gram form of the Euler
//! pairing on the classes `[O_Θᵢ(−1)]` is the negated affine Cartan matrix.
//!
//! Node orderings (1-based, fixed so that matrices are reproducible):
//!
//! | family      | diagram     | ordering                                                      | affine node |
//! |-------------|-------------|---------------------------------------------------------------|-------------|
//! | `I_N`, `mI_N` | Ã_{N−1}   | cyclic order 1–2–…–N–1 (for N = 2 the two nodes meet twice)   | N           |
//! | `III`       | Ã₁          | two components meeting once with order 2                      | 2           |
//! | `IV`        | Ã₂          | three concurrent lines                                        | 3           |
//! | `IStar_N`   | D̃_{N+4}     | leaves 1, 2 on node 5; leaves 3, 4 on node N+5; chain 5–…–N+5 | 1           |
//! | `IVStar`    | Ẽ₆          | arms 1–2, 4–5, 6–7 meeting at the centre 3 (2, 4, 6 inner)    | 1           |
//! | `IIIStar`   | Ẽ₇          | chain 1–…–7, node 8 on node 4                                 | 1           |
//! | `IIStar`    | Ẽ₈          | chain 1–…–8, node 9 on node 6                                 | 1           |

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kgroup::KClass;
use crate::linalg::{self, Ldlt};

/// The eight reducible families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "I_N")]
    IN,
    #[serde(rename = "III")]
    III,
    #[serde(rename = "IV")]
    IV,
    #[serde(rename = "IStar_N")]
    IStarN,
    #[serde(rename = "IIStar")]
    IIStar,
    #[serde(rename = "IIIStar")]
    IIIStar,
    #[serde(rename = "IVStar")]
    IVStar,
    #[serde(rename = "mI_N")]
    MultipleIN,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::IN,
        Family::III,
        Family::IV,
        Family::IStarN,
        Family::IIStar,
        Family::IIIStar,
        Family::IVStar,
        Family::MultipleIN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::IN => "I_N",
            Family::III => "III",
            Family::IV => "IV",
            Family::IStarN => "IStar_N",
            Family::IIStar => "IIStar",
            Family::IIIStar => "IIIStar",
            Family::IVStar => "IVStar",
            Family::MultipleIN => "mI_N",
        }
    }

    /// Names of the integer parameters the family takes.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Family::IN | Family::IStarN => &["N"],
            Family::MultipleIN => &["N", "m"],
            _ => &[],
        }
    }
}

/// One entry of [`list_types`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeTemplate {
    pub family: Family,
    pub params: Vec<String>,
}

pub fn list_types() -> Vec<TypeTemplate> {
    Family::ALL
        .iter()
        .map(|&family| TypeTemplate {
            family,
            params: family.params().iter().map(|s| s.to_string()).collect(),
        })
        .collect()
}

/// A concrete reducible Kodaira curve type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveTypeId {
    I(u32),
    III,
    IV,
    IStar(u32),
    IIStar,
    IIIStar,
    IVStar,
    /// Multiple fibre `mI_N`: cycle length `n`, fibre multiplicity `m`.
    MultipleI { n: u32, m: u32 },
}

impl CurveTypeId {
    pub fn family(&self) -> Family {
        match self {
            CurveTypeId::I(_) => Family::IN,
            CurveTypeId::III => Family::III,
            CurveTypeId::IV => Family::IV,
            CurveTypeId::IStar(_) => Family::IStarN,
            CurveTypeId::IIStar => Family::IIStar,
            CurveTypeId::IIIStar => Family::IIIStar,
            CurveTypeId::IVStar => Family::IVStar,
            CurveTypeId::MultipleI { .. } => Family::MultipleIN,
        }
    }

    /// Cycle / chain parameter `N`, when the family has one.
    pub fn cycle_length(&self) -> Option<u32> {
        match *self {
            CurveTypeId::I(n) | CurveTypeId::IStar(n) => Some(n),
            CurveTypeId::MultipleI { n, .. } => Some(n),
            _ => None,
        }
    }

    pub fn fiber_multiplicity(&self) -> Option<u32> {
        match *self {
            CurveTypeId::MultipleI { m, .. } => Some(m),
            _ => None,
        }
    }

    fn from_parts(family: Family, n: Option<u32>, m: Option<u32>) -> Result<Self> {
        let need = |v: Option<u32>, what: &str| {
            v.ok_or_else(|| Error::InvalidParams(format!("{} requires {what}", family.name())))
        };
        let forbid = |v: Option<u32>, what: &str| match v {
            Some(_) => Err(Error::InvalidParams(format!(
                "{} takes no parameter {what}",
                family.name()
            ))),
            None => Ok(()),
        };
        let id = match family {
            Family::IN => {
                forbid(m, "m")?;
                CurveTypeId::I(need(n, "N")?)
            }
            Family::IStarN => {
                forbid(m, "m")?;
                CurveTypeId::IStar(need(n, "N")?)
            }
            Family::MultipleIN => CurveTypeId::MultipleI {
                n: need(n, "N")?,
                m: need(m, "m")?,
            },
            other => {
                forbid(n, "N")?;
                forbid(m, "m")?;
                match other {
                    Family::III => CurveTypeId::III,
                    Family::IV => CurveTypeId::IV,
                    Family::IIStar => CurveTypeId::IIStar,
                    Family::IIIStar => CurveTypeId::IIIStar,
                    _ => CurveTypeId::IVStar,
                }
            }
        };
        id.validate()?;
        Ok(id)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            CurveTypeId::I(n) if n < 2 => Err(Error::InvalidParams(format!(
                "I_N requires N >= 2, got {n}"
            ))),
            CurveTypeId::MultipleI { n, .. } if n < 2 => Err(Error::InvalidParams(format!(
                "mI_N requires N >= 2, got {n}"
            ))),
            CurveTypeId::MultipleI { m, .. } if m < 2 => Err(Error::InvalidParams(format!(
                "mI_N requires m >= 2, got {m}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for CurveTypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveTypeId::I(n) => write!(f, "I_{n}"),
            CurveTypeId::III => f.write_str("III"),
            CurveTypeId::IV => f.write_str("IV"),
            CurveTypeId::IStar(n) => write!(f, "IStar_{n}"),
            CurveTypeId::IIStar => f.write_str("IIStar"),
            CurveTypeId::IIIStar => f.write_str("IIIStar"),
            CurveTypeId::IVStar => f.write_str("IVStar"),
            CurveTypeId::MultipleI { n, m } => write!(f, "mI_{n}:{m}"),
        }
    }
}

/// Accepts `family[:N[:m]]` as well as the underscore forms `I_3`,
/// `IStar_0`, `mI_2:3`.
impl FromStr for CurveTypeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = match s.find([':', '_']) {
            Some(pos) => (&s[..pos], &s[pos + 1..]),
            None => (s, ""),
        };
        let family = match head {
            "I" => Family::IN,
            "III" => Family::III,
            "IV" => Family::IV,
            "IStar" | "I*" => Family::IStarN,
            "IIStar" | "II*" => Family::IIStar,
            "IIIStar" | "III*" => Family::IIIStar,
            "IVStar" | "IV*" => Family::IVStar,
            "mI" => Family::MultipleIN,
            _ => return Err(Error::Parse(format!("unknown curve family {head:?}"))),
        };
        let mut nums = Vec::new();
        if !rest.is_empty() {
            for part in rest.split([':', '_']) {
                let v: u32 = part
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad curve parameter {part:?} in {s:?}")))?;
                nums.push(v);
            }
        }
        if nums.len() > 2 {
            return Err(Error::Parse(format!("too many curve parameters in {s:?}")));
        }
        CurveTypeId::from_parts(family, nums.first().copied(), nums.get(1).copied())
    }
}

/// Curve datum: components, marks, intersection numbers and the Gram form.
#[derive(Clone, Debug)]
pub struct KodairaCurve {
    id: CurveTypeId,
    marks: Vec<i64>,
    adjacency: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    affine_node: usize,
    pub(crate) root_cache: OnceLock<Vec<KClass>>,
}

impl PartialEq for KodairaCurve {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.marks == other.marks
            && self.adjacency == other.adjacency
            && self.gram == other.gram
    }
}

impl Eq for KodairaCurve {}

pub fn build_curve(id: CurveTypeId) -> Result<KodairaCurve> {
    id.validate()?;
    let (n, edges, marks, affine): (usize, Vec<(usize, usize, i64)>, Vec<i64>, usize) = match id {
        CurveTypeId::I(cyc) | CurveTypeId::MultipleI { n: cyc, .. } => {
            let n = cyc as usize;
            let edges = if n == 2 {
                vec![(0, 1, 2)]
            } else {
                (0..n).map(|i| (i, (i + 1) % n, 1)).collect()
            };
            (n, edges, vec![1; n], n - 1)
        }
        CurveTypeId::III => (2, vec![(0, 1, 2)], vec![1, 1], 1),
        CurveTypeId::IV => (3, vec![(0, 1, 1), (1, 2, 1), (0, 2, 1)], vec![1, 1, 1], 2),
        CurveTypeId::IStar(k) => {
            let k = k as usize;
            let n = k + 5;
            let first = 4;
            let last = 4 + k;
            let mut edges = vec![(0, first, 1), (1, first, 1), (2, last, 1), (3, last, 1)];
            edges.extend((first..last).map(|i| (i, i + 1, 1)));
            let mut marks = vec![1; 4];
            marks.extend(std::iter::repeat_n(2, k + 1));
            (n, edges, marks, 0)
        }
        CurveTypeId::IVStar => (
            7,
            vec![(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (2, 5, 1), (5, 6, 1)],
            vec![1, 2, 3, 2, 1, 2, 1],
            0,
        ),
        CurveTypeId::IIIStar => {
            let mut edges: Vec<_> = (0..6).map(|i| (i, i + 1, 1)).collect();
            edges.push((3, 7, 1));
            (8, edges, vec![1, 2, 3, 4, 3, 2, 1, 2], 0)
        }
        CurveTypeId::IIStar => {
            let mut edges: Vec<_> = (0..7).map(|i| (i, i + 1, 1)).collect();
            edges.push((5, 8, 1));
            (9, edges, vec![1, 2, 3, 4, 5, 6, 4, 2, 3], 0)
        }
    };
    let mut adjacency = vec![vec![0i64; n]; n];
    for (a, b, w) in edges {
        adjacency[a][b] = w;
        adjacency[b][a] = w;
    }
    let gram = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { -2 } else { adjacency[i][j] })
                .collect()
        })
        .collect();
    let curve = KodairaCurve {
        id,
        marks,
        adjacency,
        gram,
        affine_node: affine,
        root_cache: OnceLock::new(),
    };
    debug_assert!(curve.check_invariants().is_ok());
    Ok(curve)
}

impl KodairaCurve {
    pub fn id(&self) -> CurveTypeId {
        self.id
    }

    /// Number of irreducible components.
    pub fn n(&self) -> usize {
        self.marks.len()
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn adjacency(&self) -> &[Vec<i64>] {
        &self.adjacency
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// 1-based index of the designated affine node (a component of mark 1).
    pub fn affine_node(&self) -> usize {
        self.affine_node + 1
    }

    pub(crate) fn affine_index(&self) -> usize {
        self.affine_node
    }

    /// Rational LDLᵀ of `−gram`. Non-negative pivots certify that the
    /// pairing is negative semi-definite; the number of zero pivots is the
    /// rank of the radical on the component lattice.
    pub fn semidefinite_certificate(&self) -> Option<Ldlt> {
        linalg::ldlt_psd(&linalg::negate(&linalg::to_q_matrix(&self.gram)))
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n() {
            Err(Error::IndexOutOfRange { index: i, n: self.n() })
        } else {
            Ok(i - 1)
        }
    }

    /// Verifies every structural invariant of the datum.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        let bad = |what: &str| Err(Error::InvalidParams(format!("{}: {what}", self.id)));
        if self.adjacency.len() != n || self.gram.len() != n {
            return bad("matrix size");
        }
        if !linalg::is_symmetric(&self.gram) || !linalg::is_symmetric(&self.adjacency) {
            return bad("matrices not symmetric");
        }
        for i in 0..n {
            if self.gram[i][i] != -2 || self.adjacency[i][i] != 0 {
                return bad("diagonal");
            }
            for j in 0..n {
                if i != j && self.gram[i][j] != self.adjacency[i][j] {
                    return bad("gram differs from adjacency off the diagonal");
                }
            }
            let balance: i64 = (0..n).map(|j| self.adjacency[i][j] * self.marks[j]).sum();
            if balance != 2 * self.marks[i] {
                return bad("marks are not balanced");
            }
        }
        if self.marks[self.affine_node] != 1 {
            return bad("affine node must have mark 1");
        }
        match self.semidefinite_certificate() {
            Some(c) if c.rank() == n - 1 => Ok(()),
            _ => bad("gram is not negative semi-definite of corank 1"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    family: Family,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none", default)]
    cycle: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    m: Option<u32>,
    n: usize,
    marks: Vec<i64>,
    adjacency: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
}

impl Serialize for KodairaCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveRepr {
            family: self.id.family(),
            cycle: self.id.cycle_length(),
            m: self.id.fiber_multiplicity(),
            n: self.n(),
            marks: self.marks.clone(),
            adjacency: self.adjacency.clone(),
            gram: self.gram.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KodairaCurve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CurveRepr::deserialize(d)?;
        let id = CurveTypeId::from_parts(repr.family, repr.cycle, repr.m).map_err(D::Error::custom)?;
        let curve = build_curve(id).map_err(D::Error::custom)?;
        if repr.n != curve.n()
            || repr.marks != curve.marks
            || repr.adjacency != curve.adjacency
            || repr.gram != curve.gram
        {
            return Err(D::Error::custom(format!(
                "curve data does not match the catalog entry for {id}"
            )));
        }
        Ok(curve)
    }
}
