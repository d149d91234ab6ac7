//! Root systems Δ(C): coset representatives, decompositions and the box scan.
//!
//! cargo run --example root_systems

use kodaira_stab::{build_curve, KClass};

fn main() -> kodaira_stab::Result<()> {
    for id in ["I_2", "IV", "IStar_0", "IVStar", "IIIStar", "IIStar"] {
        let c = build_curve(id.parse()?)?;
        let r0 = c.fundamental_roots();
        let boxed = c.enumerate_roots_in_box(3);
        println!("{id:<8} |R0| = {:<4} roots with |ranks| <= 3: {}", r0.len(), boxed.len());
    }

    let c = build_curve("I_2".parse()?)?;
    println!("\nI_2 representatives: {:?}", c.fundamental_roots().iter().map(KClass::to_string).collect::<Vec<_>>());
    // [O_Θ1(3)] = 4·[O_x] + [O_Θ1(−1)]
    let delta = c.line_bundle_class(1, 3)?;
    let d = c.decompose_root(&delta)?;
    println!("{delta} = {}·ox + {} + {}·rho", d.c, d.w0, d.m);
    assert_eq!(d.recompose(&c), delta);
    Ok(())
}
