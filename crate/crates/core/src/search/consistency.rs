//! Compares the two sides of the reduction from the energy to the Green's
//! sum near the regular polygon.
//!
//! With `κ̃` the ground-state `κ` of the regular polygon, a larger pair sum
//! `Σ_{i<j} G_κ̃(|y_i − y_j|)` implies a lower ground energy. The converse
//! need not hold, so disagreements are reported, not rejected.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::{random_equilateral, regular_polygon, retract, tangent_basis, Dim, PointSet};
use crate::seeds;
use crate::spectral::{existence_check, green_sum, ground_state};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyRow {
    pub sample: usize,
    /// Perturbation size in units of `ℓ`; `None` for the far sample.
    pub amplitude: Option<f64>,
    /// `G(p) − G(p̃)` at `κ̃`.
    pub green_gap: f64,
    /// `ε_1(p) − ε_1(p̃)`.
    pub energy_gap: f64,
    pub green_holds: bool,
    pub energy_holds: bool,
}

impl ConsistencyRow {
    pub fn discrepant(&self) -> bool {
        self.green_holds != self.energy_holds
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub n: usize,
    pub d: usize,
    pub alpha: f64,
    pub samples: usize,
    pub seed: u64,
    pub max_amplitude: f64,
    pub kappa_regular: f64,
    pub energy_regular: f64,
    /// Both gaps for `p = p̃`.
    pub identity_gaps: (f64, f64),
    pub both_hold: usize,
    pub discrepancies: usize,
    pub rows: Vec<ConsistencyRow>,
    /// One random polygon far from regular; recorded only.
    pub far_sample: Option<ConsistencyRow>,
}

pub fn spectral_vs_diag_consistency(
    n: usize,
    dim: Dim,
    alpha: f64,
    samples: usize,
    seed: u64,
    max_amplitude: f64,
) -> Result<ConsistencyReport> {
    if !(max_amplitude > 0.0 && max_amplitude <= 0.1) {
        return Err(Error::param("perturbation amplitude must lie in (0, 0.1]"));
    }
    let edge = 1.0;
    let reg = regular_polygon(n, edge, dim)?;
    let ex = existence_check(reg.points(), alpha)?;
    if !ex.exists {
        return Err(Error::NoDiscreteSpectrum {
            alpha,
            alpha_crit: ex.alpha_crit,
        });
    }
    let ground = ground_state(reg.points(), alpha)?;
    let kappa = ground.kappa;
    let green_reg = green_sum(reg.points(), kappa)?;
    let basis = tangent_basis(&reg)?;

    let compare = |sample: usize, amplitude: Option<f64>, pts: &PointSet| -> Result<ConsistencyRow> {
        let green_gap = green_sum(pts, kappa)? - green_reg;
        let energy_gap = ground_state(pts, alpha)?.energy - ground.energy;
        Ok(ConsistencyRow {
            sample,
            amplitude,
            green_gap,
            energy_gap,
            green_holds: green_gap > 0.0,
            energy_holds: energy_gap < 0.0,
        })
    };
    let identity = compare(usize::MAX, Some(0.0), reg.points())?;

    let rows: Vec<ConsistencyRow> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seeds::derive(seed, i as u64));
            let weights: Vec<f64> = (0..basis.len()).map(|_| rng.sample(StandardNormal)).collect();
            let xi = basis.combine(&weights);
            let a = max_amplitude * (1.0 - rng.random::<f64>());
            let c = reg.coords().iter().zip(&xi).map(|(y, x)| y + a * edge * x).collect();
            let p = retract(&PointSet::new(dim, c)?, edge)?;
            compare(i, Some(a), p.points())
        })
        .collect::<Result<_>>()?;

    let far = random_equilateral(n, dim, edge, seeds::derive(seed, u64::MAX))?;
    let far_sample = compare(samples, None, far.points()).ok();

    Ok(ConsistencyReport {
        n,
        d: dim.get(),
        alpha,
        samples,
        seed,
        max_amplitude,
        kappa_regular: kappa,
        energy_regular: ground.energy,
        identity_gaps: (identity.green_gap, identity.energy_gap),
        both_hold: rows.iter().filter(|r| r.green_holds && r.energy_holds).count(),
        discrepancies: rows.iter().filter(|r| r.discrepant()).count(),
        rows,
        far_sample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_near_regular() {
        let r = spectral_vs_diag_consistency(5, Dim::Two, 0.0, 20, 2, 0.1).unwrap();
        assert_eq!(r.identity_gaps, (0.0, 0.0));
        assert_eq!(r.both_hold, 20, "{:?}", r.rows);
        assert!(r.far_sample.is_some());
    }

    #[test]
    fn amplitude_checked() {
        assert!(spectral_vs_diag_consistency(5, Dim::Two, 0.0, 1, 0, 0.5).is_err());
    }
}
