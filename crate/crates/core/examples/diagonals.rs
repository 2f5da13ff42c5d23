//! Diagonal sums `D_m` and means `M_m` in the vertex and bending-angle charts.
//!
//! A square is built from its bending angles, converted to vertices, and
//! compared with a random equilateral quadrilateral and with random
//! octagons, whose sums never exceed the regular octagon's.
//!
//! ```text
//! cargo run --example diagonals
//! ```

use std::f64::consts::FRAC_PI_2;

use isopoly::geometry::{
    angles_to_vertices, diagonal_sum, mean_diagonal_from_angles, random_equilateral, vertices_to_angles,
};
use isopoly::{AnglePolygon, Dim};

fn main() -> isopoly::Result<()> {
    let square = AnglePolygon::new(1.0, 0.0, vec![FRAC_PI_2; 4])?;
    println!("square closure residual {:?}", square.closure_residual());
    let vertices = angles_to_vertices(&square, Dim::Two)?;
    let d2 = diagonal_sum(&vertices, 2)?;
    println!("square: D2 = {:.12} (regular {:.12}), M2 from angles = {:.12}", d2.total, d2.regular_total, mean_diagonal_from_angles(&square, 2)?);

    let rhombus = random_equilateral(4, Dim::Two, 1.0, 3)?;
    println!("random quadrilateral: D2 = {:.12}", diagonal_sum(&rhombus, 2)?.total);

    println!("\nrandom planar octagons");
    println!("seed  m  D_m            gap to regular");
    for seed in 0..4 {
        let p = random_equilateral(8, Dim::Two, 1.0, seed)?;
        let angles = vertices_to_angles(&p)?;
        for m in 2..=4 {
            let r = diagonal_sum(&p, m)?;
            let chart = mean_diagonal_from_angles(&angles, m)?;
            assert!((chart - r.mean).abs() < 1e-9);
            println!("{seed:<5} {m}  {:<14.10} {:.3e}", r.total, r.gap);
        }
    }
    Ok(())
}
