//! Multi-start search for polygons beating the regular one.
//!
//! Projected-gradient ascent and a short annealing phase run from random
//! equilateral starts. The regular polygon's value is the reference; a
//! better value would be re-checked at tighter tolerances before being
//! reported as a candidate.
//!
//! ```text
//! cargo run --release --example search
//! ```

use isopoly::objective::Objective;
use isopoly::search::{maximize_objective, maximize_objective_with_reference, SearchConfig};
use isopoly::Dim;

fn main() -> isopoly::Result<()> {
    let runs = [
        (4, Dim::Two, Objective::DiagonalSum { m: 2 }),
        (9, Dim::Three, Objective::DiagonalSum { m: 3 }),
        (5, Dim::Two, Objective::GroundEnergy { alpha: 0.0 }),
    ];
    for (n, dim, objective) in runs {
        let mut cfg = SearchConfig::new(n, dim, objective);
        cfg.restarts = 12;
        cfg.budget = 1500;
        let out = maximize_objective(&cfg)?;
        println!(
            "{} N = {n} d = {}: best {:.12} reference {:.12} gap {:+.2e} verdict {:?} ({} evaluations)",
            out.objective,
            dim.get(),
            out.best_value,
            out.reference,
            out.gap,
            out.verdict,
            out.evaluations
        );
    }

    // With a deliberately low reference every run looks like a finding and
    // goes through the second evaluation.
    let cfg = SearchConfig::new(6, Dim::Two, Objective::MeanDiagonal { m: 2 });
    let out = maximize_objective_with_reference(&cfg, 1.5)?;
    println!("\nlowered reference: verdict {:?}, re-check {:?}", out.verdict, out.reverification);
    Ok(())
}
