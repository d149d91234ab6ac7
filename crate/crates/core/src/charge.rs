//! Central charges `Z ∈ G(C)^∨ ⊗ C` with exact complex-rational values.
//!
//! A charge lies in P₀ when its restriction to the radical `⟨[O_x], ρ⟩` is a
//! real-linear isomorphism onto C and it vanishes on no root. For such a
//! charge the values `Z(c·[O_x] + w₀ + m·ρ)` form, for each representative
//! `w₀`, a translate of the rank-2 lattice `Λ = Z·Z(O_x) + Z·Z(ρ)`, so both
//! the vanishing test and the minimum root modulus reduce to exact 2-D lattice
//! problems.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::KodairaCurve;
use crate::error::{Error, Result};
use crate::kgroup::KClass;
use crate::lattice2d::{det, IPoint, IntLattice2, Lattice2};
use crate::linalg::{self, Ldlt, QMatrix};
use crate::rational::{ci, common_denominator, norm_sqr, q, serde_cq, serde_q, to_i64, CQ, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CentralCharge {
    /// Value on `[O_x]`.
    #[serde(with = "serde_cq")]
    pub z0: CQ,
    /// Values on `[O_Θᵢ(−1)]`.
    #[serde(with = "serde_cq::vec")]
    pub z: Vec<CQ>,
}

impl CentralCharge {
    pub fn new(z0: CQ, z: Vec<CQ>) -> Self {
        CentralCharge { z0, z }
    }

    /// `Z = −χ + i·(rk₁ + ⋯ + rkₙ)`.
    pub fn reference(n: usize) -> Self {
        CentralCharge { z0: ci(-1, 0), z: vec![ci(0, 1); n] }
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    pub fn conj(&self) -> Self {
        CentralCharge {
            z0: self.z0.conj(),
            z: self.z.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Multiplies every value by `lambda`.
    pub fn scale(&self, lambda: &CQ) -> Self {
        CentralCharge {
            z0: &self.z0 * lambda,
            z: self.z.iter().map(|z| z * lambda).collect(),
        }
    }

    /// `chi·z0 + Σ rankᵢ·zᵢ`; dimensions are assumed to match.
    pub(crate) fn eval_unchecked(&self, v: &KClass) -> CQ {
        let mut acc = scale_int(&self.z0, v.chi);
        for (zi, &r) in self.z.iter().zip(&v.ranks) {
            if r != 0 {
                acc += scale_int(zi, r);
            }
        }
        acc
    }
}

fn scale_int(z: &CQ, k: i64) -> CQ {
    let k = q(k);
    CQ::new(&z.re * &k, &z.im * &k)
}

fn check_charge(curve: &KodairaCurve, z: &CentralCharge) -> Result<()> {
    if z.dim() != curve.n() {
        Err(Error::DimensionMismatch { expected: curve.n(), got: z.dim() })
    } else {
        Ok(())
    }
}

pub fn evaluate(curve: &KodairaCurve, z: &CentralCharge, v: &KClass) -> Result<CQ> {
    check_charge(curve, z)?;
    curve.check_dim(v)?;
    Ok(z.eval_unchecked(v))
}

/// `Z(ρ)`.
pub fn radical_value(curve: &KodairaCurve, z: &CentralCharge) -> Result<CQ> {
    evaluate(curve, z, &curve.rho())
}

/// Orientation `det[[Re z0, Re Z(ρ)], [Im z0, Im Z(ρ)]] = Im(Z(ρ)·conj(z0))`.
pub fn radical_orientation(curve: &KodairaCurve, z: &CentralCharge) -> Result<Q> {
    Ok(det(&z.z0, &radical_value(curve, z)?))
}

pub fn radical_independence(curve: &KodairaCurve, z: &CentralCharge) -> Result<bool> {
    Ok(!radical_orientation(curve, z)?.is_zero())
}

/// Integer data for the root searches: `D·Z` (with `D` the least common
/// denominator of all coordinates) has Gaussian-integer values, and the
/// reduced-basis numerators of each `D·zⱼ` are precomputed, so the target
/// `−D·Z(w₀)` of every representative is a small integer combination.
struct RootSearch {
    lattice: IntLattice2,
    numerators: Vec<(BigInt, BigInt)>,
    /// `Δ²·D²`: divides integer distances down to `|Z|²`.
    scale: BigInt,
}

impl RootSearch {
    fn new(curve: &KodairaCurve, z: &CentralCharge) -> Result<Self> {
        check_charge(curve, z)?;
        let d = common_denominator(std::iter::once(&z.z0).chain(&z.z).flat_map(|c| [&c.re, &c.im]));
        let dq = Q::from_integer(d.clone());
        let int = |c: &CQ| -> IPoint { ((&c.re * &dq).to_integer(), (&c.im * &dq).to_integer()) };
        let u = int(&z.z0);
        let v = int(&radical_value(curve, z)?);
        let lattice = IntLattice2::new(u, v).ok_or(Error::DegenerateRadical)?;
        let numerators = z.z.iter().map(|zj| lattice.numerators(&int(zj))).collect();
        let scale = lattice.scale_sq() * &d * &d;
        Ok(RootSearch { lattice, numerators, scale })
    }

    /// Numerators of `−D·Z(w₀)`.
    fn target(&self, w0: &KClass) -> (BigInt, BigInt) {
        let mut p = BigInt::zero();
        let mut r = BigInt::zero();
        for (&k, (pj, rj)) in w0.ranks.iter().zip(&self.numerators) {
            if k != 0 {
                p -= pj * k;
                r -= rj * k;
            }
        }
        (p, r)
    }
}

fn radical_lattice(curve: &KodairaCurve, z: &CentralCharge) -> Result<Lattice2> {
    check_charge(curve, z)?;
    Lattice2::new(z.z0.clone(), radical_value(curve, z)?).ok_or(Error::DegenerateRadical)
}

fn root_from(curve: &KodairaCurve, c: &BigInt, w0: &KClass, m: &BigInt) -> Result<KClass> {
    let c = to_i64(c)?;
    let m = to_i64(m)?;
    let mut v = w0 + &curve.rho().scale(m);
    v.chi += c;
    Ok(v)
}

/// Of `±v`, the one whose first nonzero coordinate `(χ, rk₁, …)` is positive.
fn canonical_sign(v: KClass) -> KClass {
    let first = std::iter::once(v.chi).chain(v.ranks.iter().copied()).find(|&x| x != 0);
    if first.is_some_and(|x| x < 0) {
        -&v
    } else {
        v
    }
}

/// A root δ with `Z(δ) = 0`, if any. The search is exact: for each
/// representative `w₀` it decides whether `−Z(w₀)` lies in Λ. Roots come in
/// pairs `±δ`; the one with positive leading coordinate is returned.
pub fn vanishing_root(curve: &KodairaCurve, z: &CentralCharge) -> Result<Option<KClass>> {
    let search = RootSearch::new(curve, z)?;
    for w0 in curve.fundamental_roots() {
        let (p, r) = search.target(w0);
        if let Some((c, m)) = search.lattice.member(&p, &r) {
            return Ok(Some(canonical_sign(root_from(curve, &c, w0, &m)?)));
        }
    }
    Ok(None)
}

/// `M² = min |Z(δ)|²` over all roots, together with a root attaining it.
pub fn min_root_witness(curve: &KodairaCurve, z: &CentralCharge) -> Result<(Q, KClass)> {
    let search = RootSearch::new(curve, z)?;
    let mut best: Option<(BigInt, KClass)> = None;
    for w0 in curve.fundamental_roots() {
        let (p, r) = search.target(w0);
        let (coeffs, dist) = search.lattice.closest(&p, &r);
        if best.as_ref().is_none_or(|(d, _)| dist < *d) {
            best = Some((dist, root_from(curve, &coeffs.0, w0, &coeffs.1)?));
        }
    }
    let (d, delta) = best.expect("every curve has fundamental roots");
    let d = Q::new(d, search.scale);
    if d.is_zero() {
        return Err(Error::VanishingRoot(canonical_sign(delta)));
    }
    Ok((d, delta))
}

pub fn min_root_modulus(curve: &KodairaCurve, z: &CentralCharge) -> Result<Q> {
    min_root_witness(curve, z).map(|(d, _)| d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    Plus,
    Minus,
    NotInP0,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct P0Report {
    pub in_p0: bool,
    pub independent: bool,
    pub vanishing: Option<KClass>,
    pub component: Component,
    #[serde(with = "serde_q::option")]
    pub min_modulus_sq: Option<Q>,
}

pub fn membership(curve: &KodairaCurve, z: &CentralCharge) -> Result<P0Report> {
    let orientation = radical_orientation(curve, z)?;
    let independent = !orientation.is_zero();
    let not_in = |vanishing| P0Report {
        in_p0: false,
        independent,
        vanishing,
        component: Component::NotInP0,
        min_modulus_sq: None,
    };
    if !independent {
        return Ok(not_in(None));
    }
    match min_root_modulus(curve, z) {
        Ok(m2) => Ok(P0Report {
            in_p0: true,
            independent,
            vanishing: None,
            // the reference charge has orientation −Σaᵢ < 0
            component: if orientation.is_negative() {
                Component::Plus
            } else {
                Component::Minus
            },
            min_modulus_sq: Some(m2),
        }),
        Err(Error::VanishingRoot(delta)) => Ok(not_in(Some(delta))),
        Err(e) => Err(e),
    }
}

/// `Z(O_x) = −1` and every `zᵢ` in the open upper half plane.
pub fn is_stability_function(curve: &KodairaCurve, z: &CentralCharge) -> Result<bool> {
    check_charge(curve, z)?;
    Ok(z.z0 == ci(-1, 0) && z.z.iter().all(|zi| zi.im.is_positive()))
}

/// The support quadratic form `Q(v) = ⟨v,v⟩ + (2/M²)|Z(v)|²` with its
/// certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QForm {
    /// Gram matrix in the basis `[O_x], [O_Θ₁(−1)], …, [O_Θₙ(−1)]`.
    #[serde(with = "qmatrix")]
    pub matrix: QMatrix,
    #[serde(with = "serde_q")]
    pub min_modulus_sq: Q,
    /// Rational basis of the real kernel of Z, as `(n+1)`-vectors.
    #[serde(with = "qmatrix")]
    pub kernel_basis: QMatrix,
    /// LDLᵀ of `−Q` restricted to the kernel; all pivots positive.
    pub kernel_certificate: Ldlt,
    /// Roots near each closest-vector minimiser with their Q-values.
    pub root_checks: Vec<RootCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCheck {
    pub root: KClass,
    #[serde(with = "serde_q")]
    pub value: Q,
}

mod qmatrix {
    use super::QMatrix;
    use crate::rational::parse_q;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &QMatrix, s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QMatrix, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|r| r.iter().map(|x| parse_q(x).map_err(de::Error::custom)).collect())
            .collect()
    }
}

impl QForm {
    pub fn value(&self, v: &KClass) -> Q {
        let coords: Vec<Q> = std::iter::once(q(v.chi))
            .chain(v.ranks.iter().map(|&r| q(r)))
            .collect();
        linalg::dot(&coords, &linalg::mat_vec(&self.matrix, &coords))
    }

    pub fn is_negative_definite_on_kernel(&self) -> bool {
        self.kernel_certificate.pivots.len() == self.kernel_basis.len()
            && self.kernel_certificate.is_positive_definite()
    }

    pub fn roots_nonnegative(&self) -> bool {
        self.root_checks.iter().all(|c| !c.value.is_negative())
    }
}

pub fn support_form(curve: &KodairaCurve, z: &CentralCharge) -> Result<QForm> {
    let report = membership(curve, z)?;
    let m2 = match report.min_modulus_sq {
        Some(m2) if report.in_p0 => m2,
        _ => return Err(Error::NotInP0),
    };
    let n = curve.n();
    let values: Vec<&CQ> = std::iter::once(&z.z0).chain(z.z.iter()).collect();
    let factor = Q::from_integer(BigInt::from(2)) / &m2;
    let matrix: QMatrix = (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| {
                    let pairing = if a == 0 || b == 0 {
                        Q::zero()
                    } else {
                        q(curve.gram()[a - 1][b - 1])
                    };
                    let herm = &values[a].re * &values[b].re + &values[a].im * &values[b].im;
                    pairing + &factor * herm
                })
                .collect()
        })
        .collect();

    let real_parts: QMatrix = vec![
        values.iter().map(|v| v.re.clone()).collect(),
        values.iter().map(|v| v.im.clone()).collect(),
    ];
    let kernel_basis = linalg::kernel_basis(&real_parts, n + 1);
    let restricted = linalg::restrict_form(&matrix, &kernel_basis);
    let kernel_certificate = linalg::ldlt_psd(&linalg::negate(&restricted))
        .filter(|f| f.is_positive_definite())
        .ok_or(Error::NotInP0)?;

    let lattice = radical_lattice(curve, z)?;
    let mut form = QForm {
        matrix,
        min_modulus_sq: m2,
        kernel_basis,
        kernel_certificate,
        root_checks: Vec::new(),
    };
    let mut checks = Vec::new();
    for w0 in curve.fundamental_roots() {
        let target = -z.eval_unchecked(w0);
        for cp in lattice.candidates(&target) {
            let root = root_from(curve, &cp.coeffs.0, w0, &cp.coeffs.1)?;
            let value = form.value(&root);
            checks.push(RootCheck { root, value });
        }
    }
    checks.sort_by(|a, b| a.root.cmp(&b.root));
    checks.dedup_by(|a, b| a.root == b.root);
    form.root_checks = checks;
    Ok(form)
}

/// `|Z(v)|²`.
pub fn modulus_sq(curve: &KodairaCurve, z: &CentralCharge, v: &KClass) -> Result<Q> {
    Ok(norm_sqr(&evaluate(curve, z, v)?))
}
