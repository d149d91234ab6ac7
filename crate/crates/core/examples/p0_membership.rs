//! Deciding membership in P0: independence on the radical, vanishing roots,
//! and the exact minimum root modulus M².
//!
//! cargo run --example p0_membership

use kodaira_stab::charge::{membership, min_root_witness, vanishing_root};
use kodaira_stab::rational::{ci, cq, q, q_frac};
use kodaira_stab::{build_curve, CentralCharge};

fn main() -> kodaira_stab::Result<()> {
    let c = build_curve("I_2".parse()?)?;
    let samples = [
        ("reference", CentralCharge::reference(2)),
        ("conjugate", CentralCharge::reference(2).conj()),
        ("(1/3-i, 2i)", CentralCharge::new(ci(-1, 0), vec![cq(q_frac(1, 3), q(-1)), ci(0, 2)])),
        ("(1-i, 2i)", CentralCharge::new(ci(-1, 0), vec![ci(1, -1), ci(0, 2)])),
        ("all real", CentralCharge::new(ci(-1, 0), vec![ci(1, 0), ci(1, 0)])),
    ];
    for (name, z) in &samples {
        let r = membership(&c, z)?;
        let m2 = r.min_modulus_sq.as_ref().map_or("-".into(), |m| m.to_string());
        println!("{name:<12} in_p0={:<5} component={:?} M²={m2}", r.in_p0, r.component);
        if let Some(d) = &r.vanishing {
            println!("             vanishing root {d}");
        }
    }

    let z = &samples[2].1;
    let (m2, delta) = min_root_witness(&c, z)?;
    println!("\nM² = {m2} attained at {delta}");
    assert_eq!(vanishing_root(&c, z)?, None);
    Ok(())
}
