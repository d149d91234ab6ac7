//! Exact lattice computations for stability conditions on the fibre
//! categories of reducible Kodaira curves.
//!
//! The numerical shadow of the theory lives on the lattice
//! `G(C) = Z·[O_x] ⊕ ⨁ Z·[O_Θᵢ(−1)]` with the Euler pairing given by the
//! negated affine Cartan matrix. On top of that the crate provides:
//!
//! - [`catalog`]: the curve types `I_N`, `mI_N`, `III`, `IV`, `I*_N`,
//!   `II*`, `III*`, `IV*` with their Gram matrices and multiplicities;
//! - [`kgroup`] and [`roots`]: classes, the pairing, the radical and the
//!   root set `Δ(C)`, with a brute-force box enumerator as an oracle;
//! - [`charge`]: central charges, the open set `P₀(C)`, the closest-vector
//!   minimum `M²` and the support quadratic form;
//! - [`twist`]: the reflections induced by spherical twists, on classes
//!   and on charges;
//! - [`chamber`]: the fundamental chamber, walls, the chamber walk and
//!   Jordan–Hölder data of skyscrapers;
//! - [`cli`]: the `kodaira` command-line front end.
//!
//! All arithmetic is exact (`BigRational`). The `examples/` directory has
//! one runnable program per capability:
//!
//! ```text
//! cargo run --example catalog_tour
//! cargo run --example root_systems
//! cargo run --example p0_membership
//! cargo run --example support_form
//! cargo run --example twist_words
//! cargo run --example chamber_walk
//! cargo run --example wall_crossings
//! ```
//!
//! ```
//! use kodaira_stab::{build_curve, charge, CentralCharge, CurveTypeId};
//!
//! let curve = build_curve("I_2".parse::<CurveTypeId>()?)?;
//! let report = charge::membership(&curve, &CentralCharge::reference(2))?;
//! assert!(report.in_p0);
//! # Ok::<(), kodaira_stab::Error>(())
//! ```

pub mod catalog;
pub mod chamber;
pub mod charge;
pub mod cli;
pub mod error;
pub mod kgroup;
pub mod lattice2d;
pub mod linalg;
pub mod rational;
pub mod roots;
pub mod twist;

pub use catalog::{build_curve, list_types, CurveTypeId, Family, KodairaCurve};
pub use chamber::{ChamberVerdict, NormalizedCharge, ReductionTrace, WallEvent};
pub use charge::{CentralCharge, Component, P0Report, QForm};
pub use error::{Error, Result};
pub use kgroup::{KClass, RadicalBasis};
pub use roots::RootDecomposition;
pub use twist::{apply_word, TwistGenerator, TwistWord};
