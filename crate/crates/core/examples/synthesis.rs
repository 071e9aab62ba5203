//! Builds f(x) = Σ a_n k_n(x) from a finite coefficient sequence.
//!
//! cargo run --example synthesis

use index_transforms::kernels::TransformKind;
use index_transforms::transforms::{check_condition, synthesize, CoefficientSequence};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = CoefficientSequence::new(1, vec![1.0, -0.5, 0.25])?;
    for kind in [TransformKind::ReI, TransformKind::ImJK] {
        let c = check_condition(kind, &a);
        println!("{kind}: weighted coefficient sum {:.6}", c.weighted_sum);
        for x in [0.1, 1.0, 10.0, 100.0] {
            println!("  f({x:>5}) = {:>22.14e}", synthesize(kind, &a, x)?);
        }
    }
    // re-jk sums start at n = 0
    let b = CoefficientSequence::new(0, vec![0.0, 1.0])?;
    println!(
        "re-jk, a = e_1: f(1) = {:.14e}",
        synthesize(TransformKind::ReJK, &b, 1.0)?
    );
    Ok(())
}
