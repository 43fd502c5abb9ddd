//! Regularity metrics: exact star discrepancy over the critical grid, a
//! sampled lower-bound variant for budgets the exact enumeration cannot meet,
//! Warnock's closed form for the L² discrepancy, and the weighted
//! exponential-sum surrogate from the Erdős–Turán–Koksma inequality.

use crate::error::{Error, Result};
use crate::math;
use crate::points::PointSet;
use crate::rng;
use crate::torus::wrap_unchecked;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Elementary-operation budget for the exact star-discrepancy enumeration,
/// measured as `N * (N+1)^d`.
pub const STAR_EXACT_BUDGET: u128 = 1_000_000_000;

/// Elementary-operation budget for the exponential-sum surrogate, measured
/// as `(2M+1)^d * N`.
pub const ETK_BUDGET: u128 = 1_000_000_000;

/// Exact star discrepancy: the sup over anchored boxes `[0, y)` of
/// `|count/N - vol(y)|`.
///
/// The sup is attained in the closure of the coordinate grid
/// `prod_i ({x_{n,i}} ∪ {1})`; evaluating both the closed count
/// (`coords <= y`) and the open count (`coords < y`) at every grid point
/// captures both one-sided limits, making the result independent of the
/// open/closed convention in the definition. `O(N (N+1)^d)`.
pub fn star_discrepancy(x: &PointSet) -> Result<f64> {
    let n = x.n_points() as u128;
    let d = x.dim() as u32;
    let cost = (n + 1)
        .checked_pow(d)
        .and_then(|g| g.checked_mul(n))
        .unwrap_or(u128::MAX);
    if cost > STAR_EXACT_BUDGET {
        return Err(Error::BudgetExceeded {
            required: cost,
            budget: STAR_EXACT_BUDGET,
            hint: "use star_discrepancy_sampled for a certified lower bound",
        });
    }
    let grids = critical_grids(x);
    let mut index = vec![0usize; x.dim()];
    let mut anchor = vec![0.0f64; x.dim()];
    let mut best = 0.0f64;
    loop {
        for (k, &i) in index.iter().enumerate() {
            anchor[k] = grids[k][i];
        }
        best = best.max(local_discrepancy(x, &anchor));
        if !advance_mixed(&mut index, &grids) {
            break;
        }
    }
    Ok(best)
}

fn critical_grids(x: &PointSet) -> Vec<Vec<f64>> {
    (0..x.dim())
        .map(|k| {
            let mut vals: Vec<f64> = (0..x.n_points()).map(|p| x.coord(p, k)).collect();
            vals.push(1.0);
            vals.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
            vals.dedup();
            vals
        })
        .collect()
}

fn advance_mixed(index: &mut [usize], grids: &[Vec<f64>]) -> bool {
    for (slot, grid) in index.iter_mut().zip(grids).rev() {
        if *slot + 1 < grid.len() {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

/// Local discrepancy at one anchor: the larger of the closed-count excess
/// and the open-count deficit. Both are limits of `|count/N - vol|` over
/// genuine boxes, so each is a lower bound for the exact star discrepancy.
fn local_discrepancy(x: &PointSet, anchor: &[f64]) -> f64 {
    let n = x.n_points();
    let mut closed = 0usize;
    let mut open = 0usize;
    for p in x.points() {
        let mut all_le = true;
        let mut all_lt = true;
        for (c, y) in p.iter().zip(anchor) {
            if c > y {
                all_le = false;
                all_lt = false;
                break;
            }
            if c == y {
                all_lt = false;
            }
        }
        closed += all_le as usize;
        open += all_lt as usize;
    }
    let vol: f64 = anchor.iter().product();
    let nf = n as f64;
    (closed as f64 / nf - vol).max(vol - open as f64 / nf)
}

/// Sampled star discrepancy: the same local quantity maximized over the
/// points' own coordinate tuples, `n_anchors` quasi-random anchors (a
/// square-root Kronecker sequence with a seeded shift), and `n_anchors`
/// seeded combinations of point coordinates (with 1 mixed in). Always a
/// certified lower bound of [`star_discrepancy`].
pub fn star_discrepancy_sampled(x: &PointSet, n_anchors: usize, seed: u64) -> f64 {
    let d = x.dim();
    let n = x.n_points();
    let mut best = 0.0f64;
    let mut anchor = vec![0.0f64; d];

    for p in x.points() {
        anchor.copy_from_slice(p);
        best = best.max(local_discrepancy(x, &anchor));
    }

    let mut rng = rng::seeded(seed);
    let alphas: Vec<f64> = first_primes(d)
        .into_iter()
        .map(|p| math::sqrt(p as f64))
        .collect();
    let shift: Vec<f64> = (0..d).map(|_| rng::unit_f64(&mut rng)).collect();
    for j in 1..=n_anchors as u64 {
        for k in 0..d {
            anchor[k] = wrap_unchecked(j as f64 * alphas[k] + shift[k]);
        }
        best = best.max(local_discrepancy(x, &anchor));
    }

    for _ in 0..n_anchors {
        for k in 0..d {
            let pick = rng::index(&mut rng, n + 1);
            anchor[k] = if pick == n { 1.0 } else { x.coord(pick, k) };
        }
        best = best.max(local_discrepancy(x, &anchor));
    }
    best
}

fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes.iter().all(|&p| candidate % p != 0) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// Warnock's closed form for the L² star discrepancy:
///
/// ```text
/// L2² = 3^-d - (2/N) sum_n prod_i (1 - x_{n,i}²)/2
///             + (1/N²) sum_{n,m} prod_i min(1 - x_{n,i}, 1 - x_{m,i})
/// ```
///
/// Degenerate coordinates are fine here. The difference of near-equal terms
/// can land a hair below zero for well-spread sets; that is clamped before
/// the square root.
pub fn l2_discrepancy(x: &PointSet) -> f64 {
    let n = x.n_points();
    let nf = n as f64;
    let d = x.dim();

    let term1 = math::pow(3.0, -(d as f64));

    let mut term2 = 0.0;
    for p in x.points() {
        let mut prod = 1.0;
        for &c in p {
            prod *= (1.0 - c * c) / 2.0;
        }
        term2 += prod;
    }
    term2 *= 2.0 / nf;

    let mut term3 = 0.0;
    for a in 0..n {
        let pa = x.point(a);
        // diagonal term: min(1-x, 1-x) = 1-x
        let mut diag = 1.0;
        for &c in pa {
            diag *= 1.0 - c;
        }
        term3 += diag;
        for b in a + 1..n {
            let pb = x.point(b);
            let mut prod = 1.0;
            for k in 0..d {
                prod *= (1.0 - pa[k]).min(1.0 - pb[k]);
            }
            term3 += 2.0 * prod;
        }
    }
    term3 /= nf * nf;

    math::sqrt((term1 - term2 + term3).max(0.0))
}

/// Cutoff for the exponential-sum surrogate: frequencies `||k||_inf <= M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EtkSpec {
    pub max_frequency: usize,
}

/// Weighted exponential-sum surrogate
/// `sum_{0 < ||k||_inf <= M} |sum_l e^{2 pi i <k, x_l>}|² / r(k)` with
/// `r(k) = prod_j max(1, |k_j|)`.
///
/// Real and nonnegative by construction; evaluated over a canonical half of
/// the frequency lattice and doubled, since `k` and `-k` contribute equally.
pub fn etk_square_sum(x: &PointSet, spec: &EtkSpec) -> Result<f64> {
    if spec.max_frequency == 0 {
        return Err(Error::InvalidArgument("cutoff must be >= 1".into()));
    }
    let m_max = spec.max_frequency as i64;
    let d = x.dim() as u32;
    let cost = (2 * m_max as u128 + 1)
        .checked_pow(d)
        .and_then(|g| g.checked_mul(x.n_points() as u128))
        .unwrap_or(u128::MAX);
    if cost > ETK_BUDGET {
        return Err(Error::BudgetExceeded {
            required: cost,
            budget: ETK_BUDGET,
            hint: "reduce the frequency cutoff",
        });
    }

    let mut freq = vec![-m_max; x.dim()];
    let mut total = 0.0;
    loop {
        if freq_is_canonical(&freq) {
            let mut weight = 1.0;
            for &k in &freq {
                weight *= (k.unsigned_abs().max(1)) as f64;
            }
            let mut cos_sum = 0.0;
            let mut sin_sum = 0.0;
            for p in x.points() {
                let mut dot = 0.0;
                for (k, &c) in freq.iter().zip(p) {
                    dot += *k as f64 * c;
                }
                let phase = 2.0 * PI * dot;
                cos_sum += math::cos(phase);
                sin_sum += math::sin(phase);
            }
            total += 2.0 * (cos_sum * cos_sum + sin_sum * sin_sum) / weight;
        }
        if !advance_freq(&mut freq, m_max) {
            break;
        }
    }
    Ok(total)
}

fn freq_is_canonical(freq: &[i64]) -> bool {
    for &k in freq {
        if k > 0 {
            return true;
        }
        if k < 0 {
            return false;
        }
    }
    false
}

fn advance_freq(freq: &mut [i64], m_max: i64) -> bool {
    for slot in freq.iter_mut().rev() {
        if *slot < m_max {
            *slot += 1;
            return true;
        }
        *slot = -m_max;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{halton, random_points};

    #[test]
    fn star_single_midpoint() {
        let x = PointSet::new(vec![0.5], 1).unwrap();
        assert_eq!(star_discrepancy(&x).unwrap(), 0.5);
    }

    #[test]
    fn star_midpoint_equispaced() {
        // {(2i-1)/(2N)} for N = 4 has star discrepancy exactly 1/8
        let coords: Vec<f64> = (1..=4).map(|i| (2 * i - 1) as f64 / 8.0).collect();
        let x = PointSet::new(coords, 1).unwrap();
        assert!((star_discrepancy(&x).unwrap() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn star_halton_128_fixture() {
        let x = halton(128, &[2, 3], 1).unwrap();
        let d = star_discrepancy(&x).unwrap();
        assert!((d - 0.033_179_012_345_679).abs() < 1e-12, "{d}");
    }

    #[test]
    fn star_budget_error_in_high_dimension() {
        let x = random_points(50, 10, 0).unwrap();
        match star_discrepancy(&x) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn sampled_is_lower_bound_and_hits_own_anchor() {
        let x = PointSet::new(vec![0.5], 1).unwrap();
        assert_eq!(star_discrepancy_sampled(&x, 10, 0), 0.5);

        for seed in 0..5 {
            let x = random_points(20, 2, seed).unwrap();
            let exact = star_discrepancy(&x).unwrap();
            let sampled = star_discrepancy_sampled(&x, 500, seed);
            assert!(sampled <= exact + 1e-15);
        }
    }

    #[test]
    fn sampled_calibration_d3() {
        let x = random_points(50, 3, 11).unwrap();
        let exact = star_discrepancy(&x).unwrap();
        let sampled = star_discrepancy_sampled(&x, 1_000_000, 0);
        assert!(
            sampled >= 0.9 * exact,
            "sampled {sampled} vs exact {exact}"
        );
    }

    #[test]
    fn warnock_fixtures() {
        let x = PointSet::new(vec![0.0], 1).unwrap();
        assert!((l2_discrepancy(&x) - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
        let x = PointSet::new(vec![0.5], 1).unwrap();
        assert!((l2_discrepancy(&x) - (1.0f64 / 12.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn l2_below_star() {
        for seed in 0..4 {
            let x = random_points(30, 2, seed).unwrap();
            assert!(l2_discrepancy(&x) <= star_discrepancy(&x).unwrap() + 1e-12);
        }
    }

    #[test]
    fn etk_single_point() {
        let x = PointSet::new(vec![0.3], 1).unwrap();
        let s = etk_square_sum(&x, &EtkSpec { max_frequency: 2 }).unwrap();
        // k = +-1 contribute 1 each, k = +-2 contribute 1/2 each
        assert!((s - 3.0).abs() < 1e-12);
    }

    #[test]
    fn etk_equispaced_survivors() {
        // only k = +-N survive; each contributes N² / N
        let n = 10;
        let coords: Vec<f64> = (0..n).map(|k| k as f64 / n as f64).collect();
        let x = PointSet::new(coords, 1).unwrap();
        let s = etk_square_sum(&x, &EtkSpec { max_frequency: n }).unwrap();
        assert!((s - 2.0 * n as f64).abs() < 1e-9, "{s}");
    }

    #[test]
    fn etk_monotone_in_cutoff() {
        let x = random_points(12, 2, 4).unwrap();
        let mut prev = 0.0;
        for m in [1usize, 2, 4, 8, 16] {
            let s = etk_square_sum(&x, &EtkSpec { max_frequency: m }).unwrap();
            assert!(s >= prev - 1e-12);
            prev = s;
        }
    }

    #[test]
    fn etk_budget_error() {
        let x = random_points(10, 3, 0).unwrap();
        match etk_square_sum(
            &x,
            &EtkSpec {
                max_frequency: 10_000,
            },
        ) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
