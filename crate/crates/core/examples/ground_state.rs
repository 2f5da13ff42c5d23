//! Ground state of point interactions at the vertices of a polygon.
//!
//! Solves `λ_min(Γ(κ)) = 0` for the regular hexagon in the plane and in
//! space, prints `ε_1 = −κ_1²` and the ground eigenvector, and shows that a
//! random equilateral hexagon lies lower.
//!
//! ```text
//! cargo run --example ground_state
//! ```

use isopoly::geometry::{random_equilateral, regular_polygon};
use isopoly::spectral::{existence_check, ground_state, lambda_min_grid};
use isopoly::Dim;

fn main() -> isopoly::Result<()> {
    for (dim, alpha) in [(Dim::Two, 0.0), (Dim::Three, -1.0)] {
        let regular = regular_polygon(6, 1.0, dim)?;
        let exists = existence_check(regular.points(), alpha)?;
        println!("d = {}, alpha = {alpha}: critical coupling {:?}", dim.get(), exists.alpha_crit);

        let g = ground_state(regular.points(), alpha)?;
        println!("  regular hexagon   eps1 = {:.12}  (kappa1 = {:.12}, residual {:.1e})", g.energy, g.kappa, g.residual);
        println!("  ground eigenvector {:?}", g.eigenvector.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>());

        for seed in 0..3 {
            let p = random_equilateral(6, dim, 1.0, seed)?;
            let e = ground_state(p.points(), alpha)?.energy;
            println!("  random hexagon {seed}  eps1 = {e:.12}  (below regular: {})", e < g.energy);
        }
    }

    // λ_min(Γ(κ)) crosses zero once, at κ_1.
    let p = regular_polygon(5, 1.0, Dim::Two)?;
    println!("\nkappa        lambda_min   (regular pentagon, alpha = 0)");
    for (kappa, lambda) in lambda_min_grid(p.points(), 0.0, 0.1, 10.0, 9)? {
        println!("{kappa:<12.4} {lambda:+.6}");
    }
    Ok(())
}
