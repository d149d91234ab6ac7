//! Exact rational linear algebra: symmetric LDLᵀ certificates and kernels.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{q, Q};

pub type QMatrix = Vec<Vec<Q>>;

pub fn to_q_matrix(m: &[Vec<i64>]) -> QMatrix {
    m.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect()
}

/// Pivots of a symmetric LDLᵀ factorization of a positive semi-definite
/// matrix, with unit lower-triangular factor `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ldlt {
    #[serde(with = "pivot_strings")]
    pub pivots: Vec<Q>,
    #[serde(skip)]
    pub l: QMatrix,
}

impl Ldlt {
    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| !p.is_zero()).count()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.pivots.iter().all(|p| p.is_positive())
    }
}

mod pivot_strings {
    use super::Q;
    use crate::rational::parse_q;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_q(s).map_err(de::Error::custom))
            .collect()
    }
}

/// Symmetric Gaussian elimination without pivoting. Succeeds exactly when the
/// matrix is positive semi-definite: a negative pivot, or a zero pivot with a
/// nonzero remainder in its column, is a witness against semi-definiteness.
pub fn ldlt_psd(a: &QMatrix) -> Option<Ldlt> {
    let n = a.len();
    let mut work = a.clone();
    let mut l = vec![vec![Q::zero(); n]; n];
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        l[k][k] = q(1);
        let d = work[k][k].clone();
        if d.is_negative() {
            return None;
        }
        if d.is_zero() {
            if (k + 1..n).any(|i| !work[i][k].is_zero()) {
                return None;
            }
            pivots.push(d);
            continue;
        }
        for i in k + 1..n {
            l[i][k] = &work[i][k] / &d;
        }
        for i in k + 1..n {
            if work[i][k].is_zero() {
                continue;
            }
            for j in k + 1..n {
                let delta = &l[i][k] * &work[k][j];
                work[i][j] -= delta;
            }
        }
        pivots.push(d);
    }
    Some(Ldlt { pivots, l })
}

pub fn negate(a: &QMatrix) -> QMatrix {
    a.iter().map(|row| row.iter().map(|x| -x).collect()).collect()
}

pub fn is_symmetric<T: PartialEq>(a: &[Vec<T>]) -> bool {
    let n = a.len();
    a.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| a[i][j] == a[j][i]))
}

/// Basis of the right kernel of `a` (rows × cols) over the rationals.
pub fn kernel_basis(a: &QMatrix, cols: usize) -> QMatrix {
    let mut m = a.clone();
    let rows = m.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = q(1) / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = q(1);
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// `basisᵀ · a · basis` for a symmetric `a` and a list of column vectors.
pub fn restrict_form(a: &QMatrix, basis: &QMatrix) -> QMatrix {
    let av: Vec<Vec<Q>> = basis.iter().map(|v| mat_vec(a, v)).collect();
    basis
        .iter()
        .map(|u| av.iter().map(|w| dot(u, w)).collect())
        .collect()
}

pub fn mat_vec(a: &QMatrix, v: &[Q]) -> Vec<Q> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(u: &[Q], v: &[Q]) -> Q {
    u.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b)
}
