//! Every reducible Kodaira type with its diagram data.
//!
//! cargo run --example catalog_tour

use kodaira_stab::{build_curve, list_types, CurveTypeId};

fn main() -> kodaira_stab::Result<()> {
    for t in list_types() {
        println!("{:<8} params {:?}", t.family.name(), t.params);
    }
    println!();
    for id in ["I_4", "mI_3:2", "III", "IV", "IStar_2", "IVStar", "IIIStar", "IIStar"] {
        let curve = build_curve(id.parse::<CurveTypeId>()?)?;
        curve.check_invariants()?;
        let rb = curve.radical_basis();
        println!(
            "{:<8} n={:<2} marks={:?} affine node {} fibre class {}",
            curve.id().to_string(),
            curve.n(),
            curve.marks(),
            curve.affine_node(),
            rb.alpha
        );
    }

    // III and I_2 share a Gram matrix; only the metadata differs
    let a = build_curve("III".parse()?)?;
    let b = build_curve("I_2".parse()?)?;
    assert_eq!(a.gram(), b.gram());
    println!("\nIII gram = I_2 gram = {:?}", a.gram());
    Ok(())
}
