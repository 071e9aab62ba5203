//! Bessel functions of imaginary order, the complex gamma function and the
//! scaled exponential integral.
//!
//! cargo run --example special_functions

use index_transforms::specfun::{
    bessel_i_imag, bessel_j_imag, bessel_k_imag, complex_gamma, exp_scaled_e1, Order,
};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>5} {:>6} {:>24} {:>24} {:>14}",
        "tau", "x", "I_{itau}(x)", "J_{itau}(x)", "K_{itau}(x)"
    );
    for tau in [0.5, 1.0, 4.0] {
        let order = Order::new(tau)?;
        for x in [0.5, 2.0, 10.0] {
            let i = bessel_i_imag(order, x)?;
            let j = bessel_j_imag(order, x)?;
            let k = bessel_k_imag(order, x)?;
            println!(
                "{tau:>5} {x:>6} {:>11.4e}{:+11.4e}i {:>11.4e}{:+11.4e}i {:>14.6e}",
                i.re, i.im, j.re, j.im, k.value
            );
        }
    }

    // |Γ(iy)|² = π / (y sinh πy)
    let y = 2.0;
    let g = complex_gamma(Complex64::new(0.0, y))?;
    println!(
        "\n|Gamma(2i)|^2 = {:.15e}, closed form {:.15e}",
        g.norm_sqr(),
        std::f64::consts::PI / (y * (std::f64::consts::PI * y).sinh())
    );

    for z in [1e-3, 1.0, 50.0] {
        println!("e^z E1(z) at z = {z}: {:.15e}", exp_scaled_e1(z)?);
    }
    Ok(())
}
