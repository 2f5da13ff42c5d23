//! The mode inequality `sin²(πmr/N) < σ_m sin²(πr/N)` over all triples.
//!
//! Sweeps `N ≤ 120`, reports the least negative value and checks that the
//! Chebyshev form `U_{m−1}(cos π/N) > |U_{m−1}(cos πr/N)|` agrees on every
//! triple. A grid scan of the two auxiliary sine inequalities follows.
//!
//! ```text
//! cargo run --release --example mode_sweep
//! ```

use isopoly::stationarity::{closing_inequality_scan, inequality_sweep, sweep_row};

fn main() -> isopoly::Result<()> {
    let s = inequality_sweep(120)?;
    println!("triples checked       {}", s.triples);
    println!("violations            {}", s.violations.len());
    println!("form disagreements    {}", s.inconsistent.len());
    println!("least negative value  {:.6e}", s.max_value);
    println!("max |r = 1 value|     {:.1e}", s.r1_max_abs);

    let row = sweep_row(12, 4, 5)?;
    println!(
        "\nN = 12, m = 4, r = 5: value {:+.6}, U(cos pi/N) = {:.6}, |U(cos r pi/N)| = {:.6}",
        row.value, row.chebyshev_lhs, row.chebyshev_rhs
    );

    let c = closing_inequality_scan(60, 800)?;
    println!("\nmax of sin x sin(eta^2/x) - sin eta      {:+.3e}", c.product_minus_sin);
    println!("max of sin x sin(eta^2/x) - sin^2 eta    {:+.3e}", c.product_minus_sin_squared);
    println!("N with sin^2 x < sin(pi/N) sin(N x^2/pi)  {:?}", c.second_negative);
    Ok(())
}
