//! The support quadratic form Q(v) = ⟨v,v⟩ + (2/M²)|Z(v)|² with its
//! certificates: negative definite on Ker Z, non-negative on roots.
//!
//! cargo run --example support_form

use kodaira_stab::charge::support_form;
use kodaira_stab::rational::{ci, cq, q, q_frac};
use kodaira_stab::{build_curve, CentralCharge};

fn main() -> kodaira_stab::Result<()> {
    let c = build_curve("IV".parse()?)?;
    let z = CentralCharge::new(ci(-1, 0), vec![cq(q_frac(1, 3), q(1)), ci(0, 1), cq(q_frac(-1, 2), q(2))]);
    let form = support_form(&c, &z)?;
    println!("M² = {}", form.min_modulus_sq);
    println!("Q =");
    for row in &form.matrix {
        println!("  {}", row.iter().map(|x| format!("{x:>8}")).collect::<String>());
    }
    println!("kernel of Z has dimension {}", form.kernel_basis.len());
    println!(
        "LDLᵀ pivots of −Q on the kernel: {:?}",
        form.kernel_certificate.pivots.iter().map(|p| p.to_string()).collect::<Vec<_>>()
    );
    let worst = form.root_checks.iter().min_by(|a, b| a.value.cmp(&b.value)).unwrap();
    println!("smallest Q over {} candidate roots: {} at {}", form.root_checks.len(), worst.value, worst.root);
    assert!(form.is_negative_definite_on_kernel() && form.roots_nonnegative());
    Ok(())
}
