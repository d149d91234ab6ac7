//! Walking a charge of the plus component into the closed fundamental
//! chamber, recording the twist word.
//!
//! cargo run --example chamber_walk

use kodaira_stab::chamber::{in_fundamental_chamber, reduce_to_fundamental};
use kodaira_stab::rational::{ci, cq, q, q_frac};
use kodaira_stab::{apply_word, build_curve, CentralCharge};

fn main() -> kodaira_stab::Result<()> {
    let c = build_curve("I_2".parse()?)?;
    let z = CentralCharge::new(ci(-1, 0), vec![cq(q_frac(1, 3), q(-1)), ci(0, 2)]);
    let trace = reduce_to_fundamental(&c, &z, 100)?;
    println!("I_2 (1/3 - i, 2i): word [{}]", trace.word);
    for s in &trace.steps {
        let z: Vec<String> = s.charge_after.z.iter().map(|w| format!("{} + {}i", w.re, w.im)).collect();
        println!("  {} -> {:?}", s.generator, z);
    }
    println!("  verdict {:?}", in_fundamental_chamber(&c, &trace.final_charge, true)?);

    let e8 = build_curve("IIStar".parse()?)?;
    let z = CentralCharge::new(
        ci(-1, 0),
        vec![
            cq(q_frac(1, 5), q(3)),
            cq(q_frac(1, 2), q(-2)),
            cq(q_frac(2, 7), q_frac(4, 3)),
            cq(q_frac(-1, 3), q(-1)),
            cq(q_frac(2, 3), q(1)),
            cq(q_frac(-3, 4), q_frac(1, 2)),
            cq(q_frac(1, 9), q(1)),
            cq(q_frac(3, 11), q(-1)),
            cq(q_frac(5, 6), q(1)),
        ],
    );
    let trace = reduce_to_fundamental(&e8, &z, 10_000)?;
    println!("\nIIStar: {} steps, verdict {:?}", trace.steps.len(), in_fundamental_chamber(&e8, &trace.final_charge, true)?);
    assert_eq!(apply_word(&e8, &trace.word, &trace.start.to_charge())?.z, trace.final_charge.z);
    Ok(())
}
