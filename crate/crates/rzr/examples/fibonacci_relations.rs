//! End-to-end tour: compute the canonical relation basis at depth 3, print
//! each relation in both notations, and certify every relation numerically
//! against 50-digit Fibonacci/Lucas sums.
//!
//! Run with `cargo run --example fibonacci_relations`.

use rzr::kernel_solver::{format_relation, relation_space, RelationStyle};
use rzr::numeric_verify::{power_sums, relation_residual_with_sums, SequenceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = 3;
    let digits = 50;

    let basis = relation_space(m)?;
    println!(
        "canonical basis of the depth-{m} relation space ({} vectors):\n",
        basis.vectors.len()
    );
    for (i, v) in basis.vectors.iter().enumerate() {
        println!("  ({})  {}", i + 1, format_relation(v, RelationStyle::PhiPsi));
        println!("       {}", format_relation(v, RelationStyle::ZetaFibonacci));
    }

    println!("\nnumeric certification against {digits}-digit Fibonacci sums:");
    let sums = power_sums(&SequenceSpec::Fibonacci, m, digits)?;
    for (i, v) in basis.vectors.iter().enumerate() {
        let residual = relation_residual_with_sums(v, &sums);
        println!("  relation {}: |residual| = {:.3e}", i + 1, residual);
    }

    Ok(())
}
