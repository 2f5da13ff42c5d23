//! Random closed equilateral polygons and the retraction onto them.
//!
//! Samples polygons in the plane and in space, checks edge lengths and
//! closure, and retracts a perturbed polygon back onto the manifold.
//!
//! ```text
//! cargo run --example sampling
//! ```

use isopoly::geometry::{random_equilateral, regular_polygon, retract, tangent_basis};
use isopoly::{Dim, PointSet};

fn main() -> isopoly::Result<()> {
    for dim in [Dim::Two, Dim::Three] {
        for seed in 0..3 {
            let p = random_equilateral(7, dim, 1.0, seed)?;
            println!(
                "d = {} seed {seed}: max edge defect {:.1e}, second vertex {:?}",
                dim.get(),
                p.max_edge_defect(),
                p.vertex(1)
            );
        }
    }

    let p = random_equilateral(10, Dim::Three, 2.0, 42)?;
    let nudged: Vec<f64> = p.coords().iter().enumerate().map(|(i, x)| x + 0.05 * (i as f64).sin()).collect();
    let back = retract(&PointSet::new(Dim::Three, nudged)?, 2.0)?;
    println!("\nretracted polygon: max edge defect {:.1e}", back.max_edge_defect());

    for dim in [Dim::Two, Dim::Three] {
        let basis = tangent_basis(&regular_polygon(10, 1.0, dim)?)?;
        println!("motion-free tangent directions at the regular decagon, d = {}: {}", dim.get(), basis.len());
    }
    Ok(())
}
