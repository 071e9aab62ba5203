//! Synthesize a unit sequence, then recover it with the inversion formula.
//! Past n = 10 the sinh(πn) factor leaves no usable digits and the call
//! fails with a precision-loss error.
//!
//! cargo run --release --example round_trip

use index_transforms::kernels::TransformKind;
use index_transforms::quad::Tolerance;
use index_transforms::transforms::{
    default_tolerance, invert_to_sequence, synthesized_function, CoefficientSequence,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::new(1e-5, 1e-5, 5_000_000)?;
    let kind = TransformKind::ReI;
    let f = synthesized_function(kind, &CoefficientSequence::unit(2)?)?;
    println!("{kind}, a = e_2");
    for n in 1..=6 {
        match invert_to_sequence(kind, &f, n, &tol) {
            Ok(r) => println!(
                "  n = {n}: {:>12.3e}  (error estimate {:.1e})",
                r.value, r.error_estimate
            ),
            Err(e) => println!("  n = {n}: {e}"),
        }
    }
    match invert_to_sequence(kind, &f, 12, &default_tolerance()) {
        Ok(r) => println!("  n = 12 unexpectedly returned {}", r.value),
        Err(e) => println!("  n = 12: {e}"),
    }
    Ok(())
}
