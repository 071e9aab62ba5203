//! Coefficients of a ψ-generated function fed back through the inversion
//! kernels: the partial sum up to n = 8 reproduces f(x).
//!
//! cargo run --release --example reconstruction

use index_transforms::kernels::TransformKind;
use index_transforms::quad::Tolerance;
use index_transforms::transforms::{
    analyze, invert_to_function, psi_function_value, CoefficientSequence, FunctionSpec,
    TrigPolynomial,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::new(1e-10, 1e-10, 5_000_000)?;
    let psi = TrigPolynomial::sin(2, 1.0);
    for kind in TransformKind::ALL {
        let f = FunctionSpec::psi(kind, psi.clone());
        let a: Vec<f64> = (1..=8)
            .map(|n| analyze(kind, &f, n, &tol).map(|r| r.value))
            .collect::<Result<_, _>>()?;
        let a = CoefficientSequence::new(1, a)?;
        println!("{kind}, psi = {psi}");
        for x in [0.3, 1.0, 3.0] {
            let rebuilt = invert_to_function(kind, &a, x, &tol)?;
            let exact = psi_function_value(kind, &psi, x, &tol)?;
            println!(
                "  x = {x}: rebuilt {:>18.10e}  direct {:>18.10e}",
                rebuilt.value, exact.value
            );
        }
    }
    Ok(())
}
