//! Walls (C_{i,k}) met along a straight path of normalized charges, with the
//! Jordan–Hölder factors of the skyscraper on each wall.
//!
//! cargo run --example wall_crossings

use kodaira_stab::chamber::{segment_point, torsion_pair_data, wall_crossings_on_segment, NormalizedCharge};
use kodaira_stab::charge::evaluate;
use kodaira_stab::rational::{ci, cq, q, q_frac};
use kodaira_stab::build_curve;

fn main() -> kodaira_stab::Result<()> {
    let c = build_curve("IV".parse()?)?;
    let za = NormalizedCharge::new(vec![ci(0, 1), ci(0, 1), ci(0, 1)]);
    let zb = NormalizedCharge::new(vec![cq(q_frac(7, 2), q(-2)), cq(q_frac(-5, 3), q(-1)), ci(0, 4)]);
    for e in wall_crossings_on_segment(&c, &za, &zb)? {
        let tp = torsion_pair_data(&c, e.i, e.k)?;
        let z = segment_point(&za, &zb, &e.t).to_charge();
        let (a, b) = &tp.jh_factors;
        println!("t = {:<5} wall (C_{},{}) at Re = {}", e.t.to_string(), e.i, e.k, e.re_at_wall);
        println!("    F generated by {}", tp.f_generators);
        for f in [a, b] {
            let v = evaluate(&c, &z, f)?;
            println!("    Z({f}) = {}", v.re);
        }
    }
    Ok(())
}
