//! One-stop quality measurement for a point set.

use crate::discrepancy::{
    etk_square_sum, l2_discrepancy, star_discrepancy, star_discrepancy_sampled, EtkSpec,
    ETK_BUDGET,
};
use crate::energy::energy;
use crate::error::{Error, Result};
use crate::points::PointSet;

/// Energy, star discrepancy, L² discrepancy, and the exponential-sum
/// surrogate for one point set.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QualityReport {
    pub n_points: usize,
    pub dim: usize,
    pub energy: f64,
    pub star_disc: f64,
    /// True when the exact enumeration was over budget and `star_disc` is
    /// the sampled lower bound instead.
    pub star_is_lower_bound: bool,
    pub l2_disc: f64,
    pub etk_square_sum: f64,
    /// Frequency cutoff actually used for `etk_square_sum`.
    pub etk_max_frequency: usize,
}

/// Knobs for [`measure`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureOptions {
    /// Cutoff for the exponential-sum surrogate; `None` picks
    /// `min(N, largest cutoff within budget)`.
    pub etk_max_frequency: Option<usize>,
    /// Anchor count for the sampled star-discrepancy fallback.
    pub sampled_anchors: usize,
    /// Seed for the sampled fallback.
    pub seed: u64,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        Self {
            etk_max_frequency: None,
            sampled_anchors: 200_000,
            seed: 0,
        }
    }
}

/// Measures all four metrics. Star discrepancy silently degrades to the
/// sampled lower bound when the exact enumeration is over budget (the report
/// says so); a degenerate set fails with the offending pair named.
pub fn measure(x: &PointSet, opts: &MeasureOptions) -> Result<QualityReport> {
    let energy = energy(x)?;
    let (star_disc, star_is_lower_bound) = match star_discrepancy(x) {
        Ok(v) => (v, false),
        Err(Error::BudgetExceeded { .. }) => {
            (star_discrepancy_sampled(x, opts.sampled_anchors, opts.seed), true)
        }
        Err(e) => return Err(e),
    };
    let l2_disc = l2_discrepancy(x);
    let m = match opts.etk_max_frequency {
        Some(m) => m,
        None => fitted_cutoff(x.n_points(), x.dim()),
    };
    let etk = etk_square_sum(x, &EtkSpec { max_frequency: m })?;
    Ok(QualityReport {
        n_points: x.n_points(),
        dim: x.dim(),
        energy,
        star_disc,
        star_is_lower_bound,
        l2_disc,
        etk_square_sum: etk,
        etk_max_frequency: m,
    })
}

fn fitted_cutoff(n: usize, d: usize) -> usize {
    let mut m = n.max(1);
    while m > 1 {
        let cost = (2 * m as u128 + 1)
            .checked_pow(d as u32)
            .and_then(|g| g.checked_mul(n as u128))
            .unwrap_or(u128::MAX);
        if cost <= ETK_BUDGET {
            break;
        }
        m /= 2;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::halton;

    #[test]
    fn report_is_internally_consistent() {
        let x = halton(64, &[2, 3], 1).unwrap();
        let r = measure(&x, &MeasureOptions::default()).unwrap();
        assert_eq!(r.n_points, 64);
        assert_eq!(r.dim, 2);
        assert!(r.energy > 0.0);
        assert!(r.star_disc > 0.0 && r.star_disc <= 1.0);
        assert!(!r.star_is_lower_bound);
        assert!(r.l2_disc <= r.star_disc + 1e-12);
        assert!(r.etk_square_sum >= 0.0);
        assert_eq!(r.etk_max_frequency, 64);
    }

    #[test]
    fn degenerate_set_is_reported() {
        let x = PointSet::new(vec![0.1, 0.2, 0.1, 0.9], 2).unwrap();
        assert!(measure(&x, &MeasureOptions::default()).is_err());
    }

    #[test]
    fn cutoff_fitting_respects_budget() {
        // d = 4 with N = 60: (2*60+1)^4 * 60 is over budget, so the cutoff shrinks
        let m = fitted_cutoff(60, 4);
        assert!(m < 60);
        let cost = (2 * m as u128 + 1).pow(4) * 60;
        assert!(cost <= ETK_BUDGET);
    }
}
