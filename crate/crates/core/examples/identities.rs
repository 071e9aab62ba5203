//! Checks a few identities at single points, then runs the full suite on
//! its default grid.
//!
//! cargo run --release --example identities

use index_transforms::identities::{run_suite, verify, GridSpec, IdentityId, IdentityParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let points = [
        (
            IdentityId::I20,
            IdentityParams::default().with_n(2).with_u(0.5),
        ),
        (
            IdentityId::MB18,
            IdentityParams::default().with_tau(1.0).with_x(3.0),
        ),
        (
            IdentityId::D29,
            IdentityParams::default()
                .with_big_n(5)
                .with_t(0.7)
                .with_u(-0.4),
        ),
    ];
    for (id, p) in points {
        let r = verify(id, &p, &id.quadrature_tolerance())?;
        println!(
            "{id:>6}: lhs {:>20.12e} rhs {:>20.12e} pass {}",
            r.lhs, r.rhs, r.pass
        );
    }

    let suite = run_suite(None, &GridSpec::default())?;
    println!("\nsuite: {} passed, {} failed", suite.passed, suite.failed);
    for id in IdentityId::ALL {
        let (pass, total) = suite
            .reports
            .iter()
            .filter(|r| r.id == id)
            .fold((0, 0), |(p, t), r| (p + r.pass as usize, t + 1));
        println!("  {id:>6}: {pass}/{total}");
    }
    Ok(())
}
