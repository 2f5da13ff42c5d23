//! First- and second-order conditions at the regular polygon.
//!
//! For each diagonal order the Lagrangian gradient vanishes with the
//! multiplier `σ_m = sin²(πm/N)/sin²(π/N)`, and the Hessian restricted to
//! the motion-free tangent space is negative definite. The Fourier modes of
//! the reduced form give the same sign pattern.
//!
//! ```text
//! cargo run --example stationarity
//! ```

use isopoly::stationarity::{s_form_spectrum, stationarity_report};
use isopoly::Dim;

fn main() -> isopoly::Result<()> {
    println!("N   m  d  sigma_m     |grad|      top restricted eigenvalue");
    for dim in [Dim::Two, Dim::Three] {
        for n in [6, 9, 12] {
            for m in 2..=n / 2 {
                let r = stationarity_report(n, m, dim, 1.0)?;
                println!(
                    "{n:<3} {m}  {}  {:<11.6} {:<11.1e} {:+.6e}{}",
                    dim.get(),
                    r.sigma,
                    r.gradient_norm,
                    r.max_restricted_eigenvalue,
                    if r.passed { "" } else { "  (not negative)" }
                );
            }
        }
    }

    println!("\nmodes of the reduced form, N = 10, m = 3");
    for mode in s_form_spectrum(10, 3)? {
        println!("  r = {:<2} eigenvalue {:+.6}  multiplicity {}", mode.r, mode.eigenvalue, mode.multiplicity);
    }
    Ok(())
}
