//! The planar bound `M_2 ≤ 2ℓ cos(π/N)` on random equilateral polygons.
//!
//! Each sample's mean 2-diagonal is computed from vertices and from the
//! bending-angle chart; the report counts violations of the bound and the
//! largest disagreement between the two charts.
//!
//! ```text
//! cargo run --release --example planar_bound
//! ```

use isopoly::search::verify_p2_global;
use isopoly::Dim;

fn main() -> isopoly::Result<()> {
    println!("N    samples  violations  max excess     chart difference");
    for n in [5, 7, 10, 20] {
        let r = verify_p2_global(n, Dim::Two, 20_000, 1, 1.0)?;
        println!(
            "{n:<4} {:<8} {:<11} {:<14.6e} {:.1e}",
            r.samples,
            r.violations,
            r.max_excess,
            r.max_chart_difference.unwrap_or(f64::NAN)
        );
    }
    let r = verify_p2_global(8, Dim::Three, 5_000, 1, 1.0)?;
    println!("\nin space (exploratory): N = 8, {} violations, max excess {:+.3e}", r.violations, r.max_excess);
    Ok(())
}
