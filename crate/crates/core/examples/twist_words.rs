//! Spherical twists act on classes by reflections and on charges dually;
//! words of generators replay and invert exactly.
//!
//! cargo run --example twist_words

use kodaira_stab::charge::evaluate;
use kodaira_stab::rational::{ci, cq, q, q_frac};
use kodaira_stab::twist::reflect_class;
use kodaira_stab::{apply_word, build_curve, CentralCharge, KClass, TwistWord};

fn main() -> kodaira_stab::Result<()> {
    let c = build_curve("I_3".parse()?)?;
    let delta = c.line_bundle_class(2, 1)?;
    println!("s_δ(δ) = {} for δ = {delta}", reflect_class(&c, 2, 1, &delta)?);

    let word: TwistWord = "T(1,-1);T(2,0);T(3,2);T(1,5)".parse()?;
    let v = KClass::new(3, vec![1, -2, 4]);
    let w = apply_word(&c, &word, &v)?;
    println!("{word} sends {v} to {w}");
    assert_eq!(apply_word(&c, &word.reversed(), &w)?, v);
    assert_eq!(c.norm(&w)?, c.norm(&v)?);

    // duality: (Z ∘ s)(v) = Z(s v)
    let z = CentralCharge::new(ci(-1, 0), vec![cq(q_frac(1, 2), q(1)), ci(2, -1), cq(q(0), q_frac(3, 4))]);
    let zw = apply_word(&c, &word, &z)?;
    let lhs = evaluate(&c, &zw, &v)?;
    let rhs = evaluate(&c, &z, &apply_word(&c, &word.reversed(), &v)?)?;
    println!("(Z∘w)(v) = {} + {}i", lhs.re, lhs.im);
    assert_eq!(lhs, rhs);
    Ok(())
}
