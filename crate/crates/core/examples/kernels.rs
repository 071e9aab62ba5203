//! Forward and inversion kernels of the three transform families.
//!
//! cargo run --example kernels

use index_transforms::kernels::{
    default_kernel_tolerance, forward_kernel, inverse_kernel, TransformKind,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = default_kernel_tolerance();
    for kind in TransformKind::ALL {
        println!("{kind}");
        println!(
            "  {:>6} {:>3} {:>22} {:>22}",
            "x", "n", "forward", "inverse"
        );
        for x in [0.5, 2.0, 8.0] {
            for n in [1, 3] {
                let fwd = forward_kernel(kind, n, x)?;
                let inv = inverse_kernel(kind, n, x, &tol)?;
                println!("  {x:>6} {n:>3} {fwd:>22.14e} {:>22.14e}", inv.value);
            }
        }
    }
    Ok(())
}
