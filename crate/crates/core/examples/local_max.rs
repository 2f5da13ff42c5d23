//! Randomized local-maximality check around the regular polygon.
//!
//! Random tangent directions are scaled to amplitudes `1e−1, 1e−2, 1e−3`,
//! retracted onto the equilateral polygons, and the objective is compared
//! with its regular value. `(F(t) − F(0))/t²` should settle to a negative
//! constant.
//!
//! ```text
//! cargo run --release --example local_max
//! ```

use isopoly::objective::Objective;
use isopoly::stationarity::{local_max_verify, LocalMaxConfig};
use isopoly::Dim;

fn main() -> isopoly::Result<()> {
    let runs = [
        (6, Dim::Two, Objective::DiagonalSum { m: 2 }),
        (8, Dim::Three, Objective::DiagonalSum { m: 3 }),
        (5, Dim::Two, Objective::GroundEnergy { alpha: 0.0 }),
        (5, Dim::Three, Objective::GroundEnergy { alpha: -1.0 }),
    ];
    for (n, dim, objective) in runs {
        let mut cfg = LocalMaxConfig::new(n, dim, objective);
        cfg.trials = 50;
        let r = local_max_verify(&cfg)?;
        println!(
            "{} N = {n} d = {}: reference {:.10}, {} tangent directions, {} increases, {} unresolved",
            objective.name(),
            dim.get(),
            r.reference,
            r.tangent_dim,
            r.increases,
            r.unresolved
        );
        let f = &r.fits[0];
        for (a, c) in cfg.amplitudes.iter().zip(&f.coefficients) {
            println!("    trial 0, amplitude {a:<6} coefficient {c:+.6e}");
        }
        println!(
            "    max coefficient {:+.3e}, max relative change {:.3}, rigid control {:.1e}, passed {}",
            r.max_coefficient, r.max_relative_change, r.rigid_control, r.passed
        );
    }
    Ok(())
}
