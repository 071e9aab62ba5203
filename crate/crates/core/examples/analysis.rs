//! Transform coefficients of functions generated by a trigonometric
//! density ψ, next to the closed form (2π/sinh πn) ∫ ψ(u) sin(nu) du.
//!
//! cargo run --example analysis

use index_transforms::kernels::TransformKind;
use index_transforms::transforms::{
    analyze, closed_form_coefficient, default_tolerance, FunctionSpec, TrigPolynomial,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = default_tolerance();
    let psi = TrigPolynomial::parse("sin:1:1+sin:3:0.5")?;
    for kind in [TransformKind::ReI, TransformKind::ReJK] {
        let f = FunctionSpec::psi(kind, psi.clone());
        println!("{kind}, psi = {psi}");
        for n in 1..=4 {
            let a = analyze(kind, &f, n, &tol)?;
            let exact = closed_form_coefficient(kind, &psi, n).unwrap();
            println!(
                "  a_{n} = {:>22.14e}  closed form {:>22.14e}  ({} evals)",
                a.value, exact, a.evaluations
            );
        }
    }
    Ok(())
}
