//! Numerical verification of the lattice-rule results: criticality
//! residuals, the second-order expansion sums (I), (II), (III) around the
//! origin point, the cot–csc inequality behind them, and the open
//! determinant-style conjecture sums.

use crate::energy::{energy, energy_gradient};
use crate::error::{Error, Result};
use crate::generators::{gcd, is_involution, lattice_rule};
use crate::math;
use crate::points::PointSet;
use crate::rng;
use crate::torus::wrap_unchecked;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Largest normalized gradient residual a lattice rule is allowed before the
/// criticality check counts as failed.
pub const CRITICALITY_TOLERANCE: f64 = 1e-9;

/// Everything the lattice sweep reports for one coprime pair `(n, a)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LatticeReport {
    pub n: u64,
    pub a: u64,
    /// `a² == 1 (mod n)`.
    pub involution: bool,
    /// `max |grad E| / E` at the lattice rule; ~1e-14 in practice.
    pub grad_residual: f64,
    pub sum_i: f64,
    pub sum_ii: f64,
    pub sum_iii: f64,
    /// The closing-display sums, evaluated literally as printed. They
    /// coincide with the raw (I), (II), (III) sums.
    pub sum_1: f64,
    pub sum_2: f64,
    pub sum_3: f64,
    /// `|II| <= I + III`.
    pub second_order_ok: bool,
    /// The printed reading `(1)(2) >= (3)²`; see [`conjecture_sums`] for the
    /// determinant reading as well.
    pub conjecture_ok: bool,
}

fn check_pair(n: u64, a: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "lattice size must be >= 2, got {n}"
        )));
    }
    if gcd(a, n) != 1 {
        return Err(Error::InvalidArgument(format!(
            "{a} and {n} are not coprime"
        )));
    }
    Ok(())
}

/// The three second-order coefficients of the energy around the origin
/// point (prefactors `pi² eps²/2` etc. stripped):
///
/// ```text
/// I   = sum_k csc²(pi k/n)      (1 - ln(2 sin(pi {ak/n})))
/// II  = sum_k cot(pi k/n)       cot(pi {ak/n})
/// III = sum_k csc²(pi {ak/n})   (1 - ln(2 sin(pi k/n)))
/// ```
///
/// Every term of I and III is positive.
pub fn second_order_sums(n: u64, a: u64) -> Result<(f64, f64, f64)> {
    check_pair(n, a)?;
    let mut sum_i = 0.0;
    let mut sum_ii = 0.0;
    let mut sum_iii = 0.0;
    for k in 1..n {
        let t1 = k as f64 / n as f64;
        let t2 = ((a as u128 * k as u128) % n as u128) as f64 / n as f64;
        let g1 = 1.0 - math::ln(2.0 * math::sin_pi(t1));
        let g2 = 1.0 - math::ln(2.0 * math::sin_pi(t2));
        sum_i += math::csc2_pi(t1) * g2;
        sum_ii += math::cot_pi(t1) * math::cot_pi(t2);
        sum_iii += math::csc2_pi(t2) * g1;
    }
    Ok((sum_i, sum_ii, sum_iii))
}

/// `max |grad E| / E` at `lattice_rule(n, a)`; the criticality statement
/// says this vanishes, and numerically it sits at rounding level.
pub fn criticality_residual(n: u64, a: u64) -> Result<f64> {
    check_pair(n, a)?;
    let x = lattice_rule(n as usize, a)?;
    let e = energy(&x)?;
    let grad = energy_gradient(&x)?;
    Ok(grad.max_abs() / e)
}

/// Outcome of [`local_min_probe`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeOutcome {
    /// Energy strictly increased at every probe.
    pub all_increased: bool,
    /// Least-squares slope of `ln(mean ΔE)` against `ln eps`.
    pub loglog_slope: f64,
    /// `all_increased` and slope within 2 ± 0.1.
    pub ok: bool,
}

/// Moves the origin point of `lattice_rule(n, a)` by `eps` in
/// `n_directions` seeded random unit directions for every `eps` in the grid
/// and checks that the energy increase behaves like `c · eps²` with `c > 0`.
pub fn local_min_probe(
    n: u64,
    a: u64,
    eps_grid: &[f64],
    n_directions: usize,
    seed: u64,
) -> Result<ProbeOutcome> {
    check_pair(n, a)?;
    if eps_grid.len() < 2 || n_directions == 0 {
        return Err(Error::InvalidArgument(
            "need at least two eps values and one direction".into(),
        ));
    }
    for &eps in eps_grid {
        if !(eps > 0.0 && eps < 0.5 / n as f64) {
            return Err(Error::InvalidArgument(format!(
                "probe radius {eps} must lie in (0, 1/(2n))"
            )));
        }
    }
    let x = lattice_rule(n as usize, a)?;
    let e0 = energy(&x)?;
    let mut rng = rng::seeded(seed);
    let angles: Vec<f64> = (0..n_directions)
        .map(|_| 2.0 * PI * rng::unit_f64(&mut rng))
        .collect();

    let mut all_increased = true;
    let mut log_eps = Vec::with_capacity(eps_grid.len());
    let mut log_de = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        let mut mean = 0.0;
        for &theta in &angles {
            let mut coords = x.coords().to_vec();
            coords[0] = wrap_unchecked(coords[0] + eps * math::cos(theta));
            coords[1] = wrap_unchecked(coords[1] + eps * math::sin(theta));
            let moved = PointSet::new(coords, 2)?;
            let de = energy(&moved)? - e0;
            if de <= 0.0 {
                all_increased = false;
            }
            mean += de;
        }
        mean /= n_directions as f64;
        if mean <= 0.0 {
            return Ok(ProbeOutcome {
                all_increased: false,
                loglog_slope: f64::NAN,
                ok: false,
            });
        }
        log_eps.push(math::ln(eps));
        log_de.push(math::ln(mean));
    }

    let slope = regression_slope(&log_eps, &log_de);
    let ok = all_increased && (slope - 2.0).abs() <= 0.1;
    Ok(ProbeOutcome {
        all_increased,
        loglog_slope: slope,
        ok,
    })
}

fn regression_slope(t: &[f64], y: &[f64]) -> f64 {
    let n = t.len() as f64;
    let tm = t.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (ti, yi) in t.iter().zip(y) {
        num += (ti - tm) * (yi - ym);
        den += (ti - tm) * (ti - tm);
    }
    num / den
}

/// The strict cot–csc inequality
/// `2 |cot(pi x) cot(pi y)| < (1 - ln(2 sin(pi x))) csc²(pi y)
///                           + csc²(pi x) (1 - ln(2 sin(pi y)))`
/// for `x, y` in `(0, 1)`, evaluated directly on both sides.
pub fn lemma41_check(x: f64, y: f64) -> Result<bool> {
    if !(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "lemma arguments must be inside (0,1), got ({x}, {y})"
        )));
    }
    let lhs = 2.0 * math::abs(math::cot_pi(x) * math::cot_pi(y));
    let gx = 1.0 - math::ln(2.0 * math::sin_pi(x));
    let gy = 1.0 - math::ln(2.0 * math::sin_pi(y));
    let rhs = gx * math::csc2_pi(y) + math::csc2_pi(x) * gy;
    Ok(lhs < rhs)
}

/// The closing-display sums and both readings of the open question.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjectureReport {
    pub sum_1: f64,
    pub sum_2: f64,
    pub sum_3: f64,
    /// The display as printed: `(1)(2) >= (3)²`.
    pub printed_ok: bool,
    /// The determinant reading with the diagonal sums multiplied:
    /// `(1)(3) >= (2)²`.
    pub determinant_ok: bool,
}

/// Evaluates the three closing-display sums literally and reports both the
/// printed inequality and the determinant reading (the labels in the display
/// do not line up with the quadratic form, so both are worth seeing).
pub fn conjecture_sums(n: u64, a: u64) -> Result<ConjectureReport> {
    let (sum_1, sum_2, sum_3) = second_order_sums(n, a)?;
    Ok(ConjectureReport {
        sum_1,
        sum_2,
        sum_3,
        printed_ok: sum_1 * sum_2 >= sum_3 * sum_3,
        determinant_ok: sum_1 * sum_3 >= sum_2 * sum_2,
    })
}

/// Assembles the full per-pair report.
pub fn lattice_report(n: u64, a: u64) -> Result<LatticeReport> {
    let (sum_i, sum_ii, sum_iii) = second_order_sums(n, a)?;
    let grad_residual = criticality_residual(n, a)?;
    let conj = conjecture_sums(n, a)?;
    Ok(LatticeReport {
        n,
        a,
        involution: is_involution(n, a),
        grad_residual,
        sum_i,
        sum_ii,
        sum_iii,
        sum_1: conj.sum_1,
        sum_2: conj.sum_2,
        sum_3: conj.sum_3,
        second_order_ok: math::abs(sum_ii) <= sum_i + sum_iii,
        conjecture_ok: conj.printed_ok,
    })
}

/// Modular inverse of `a` mod `n` for coprime inputs.
#[cfg(test)]
fn mod_inverse(a: u64, n: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_s.rem_euclid(n as i128)) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_fixtures() {
        // direct-summation values; I and III are positive termwise
        let (i5, ii5, iii5) = second_order_sums(5, 2).unwrap();
        assert!((i5 - 3.920_306_293_203_79).abs() < 1e-10);
        assert!(ii5.abs() < 1e-10);
        assert!((iii5 - i5).abs() < 1e-10);

        let (i8, ii8, iii8) = second_order_sums(8, 3).unwrap();
        assert!((i8 - 11.162_167_814_958_54).abs() < 1e-10);
        assert!((ii8 - 2.0).abs() < 1e-10);
        assert!(iii8 > 0.0 && i8 > 0.0);
        assert!(ii8.abs() <= i8 + iii8);
    }

    #[test]
    fn diagonal_lattice_sums_match() {
        let (i, _, iii) = second_order_sums(7, 1).unwrap();
        assert!((i - iii).abs() < 1e-12 * i);
    }

    #[test]
    fn sums_swap_under_multiplier_inversion() {
        let (n, a) = (7u64, 3u64);
        let a_inv = mod_inverse(a, n);
        assert_eq!(a_inv, 5);
        let (i_a, ii_a, iii_a) = second_order_sums(n, a).unwrap();
        let (i_inv, ii_inv, iii_inv) = second_order_sums(n, a_inv).unwrap();
        assert!((i_a - iii_inv).abs() < 1e-12 * i_a);
        assert!((iii_a - i_inv).abs() < 1e-12 * iii_a);
        assert!((ii_a - ii_inv).abs() < 1e-10);
    }

    #[test]
    fn residuals_sit_at_rounding_level() {
        for (n, a) in [(5u64, 2u64), (8, 3), (12, 5)] {
            let r = criticality_residual(n, a).unwrap();
            assert!(r <= 1e-9, "(n={n}, a={a}): residual {r}");
        }
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        assert!(second_order_sums(4, 2).is_err());
        assert!(criticality_residual(1, 1).is_err());
    }

    #[test]
    fn involution_probe_confirms_local_minimum() {
        let probe = local_min_probe(8, 3, &[1e-5, 1e-4, 1e-3], 12, 7).unwrap();
        assert!(probe.all_increased);
        assert!((probe.loglog_slope - 2.0).abs() <= 0.1, "{}", probe.loglog_slope);
        assert!(probe.ok);
    }

    #[test]
    fn lemma_fixtures() {
        // cot(pi/2) = 0 makes the left side vanish
        assert!(lemma41_check(0.5, 0.5).unwrap());
        assert!(lemma41_check(0.1, 0.1).unwrap());
        assert!(lemma41_check(1e-7, 0.9999).unwrap());
        assert!(lemma41_check(0.0, 0.5).is_err());
        assert!(lemma41_check(0.5, 1.0).is_err());
    }

    #[test]
    fn conjecture_readings_reported_separately() {
        let c = conjecture_sums(8, 3).unwrap();
        // printed labels pair a diagonal sum with the off-diagonal one
        assert!(!c.printed_ok);
        assert!(c.determinant_ok);

        let c = conjecture_sums(3, 1).unwrap();
        assert!(c.sum_1 > 0.0 && c.sum_3 > 0.0);
        assert!(c.determinant_ok);
    }

    #[test]
    fn report_assembles_consistently() {
        let r = lattice_report(8, 3).unwrap();
        assert!(r.involution);
        assert!(r.grad_residual <= 1e-9);
        assert!(r.second_order_ok);
        assert_eq!(r.sum_1, r.sum_i);
        assert_eq!(r.sum_2, r.sum_ii);
        assert_eq!(r.sum_3, r.sum_iii);
    }

    #[test]
    fn mod_inverse_small_cases() {
        assert_eq!(mod_inverse(3, 8), 3);
        assert_eq!(mod_inverse(2, 5), 3);
        assert_eq!(mod_inverse(5, 12), 5);
    }
}
