//! The log-sin pair energy, its analytic gradient, the normalized-energy
//! uniformity criterion, and the truncated spectral energy family.
//!
//! For points `x_1, ..., x_N` in `[0,1)^d` the energy is
//!
//! ```text
//! E(X) = sum over ordered pairs m != n of
//!        prod_k ( 1 - ln(2 sin(pi |x_{m,k} - x_{n,k}|)) )
//! ```
//!
//! Every factor is at least `1 - ln 2 > 0`, and the kernel is singular where
//! two points share a coordinate, which is why all entry points insist on
//! non-degenerate sets. Raw coordinate differences are used without torus
//! wrapping: `sin(pi |u|) = sin(pi (1 - |u|))` makes the kernel
//! torus-symmetric by itself, and `cot(pi |u|)` changes sign at `|u| = 1/2`,
//! so the slope is torus-correct as well.
//!
//! The gradient convention matches the ordered-pair energy: each unordered
//! pair appears twice in `E`, so the partial derivatives carry a factor 2
//! relative to the one-sided pair sum. This is the convention the
//! finite-difference tests pin down.

use crate::error::{Error, Result};
use crate::math;
use crate::points::PointSet;
use crate::DEGENERACY_EPS;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::Range;

/// N x d table of partial derivatives of the energy.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    values: Vec<f64>,
    n_points: usize,
    dim: usize,
}

impl GradientField {
    /// Assembles a gradient field from row-major values, e.g. concatenated
    /// [`energy_gradient_rows`] blocks.
    pub fn from_values(values: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 || values.is_empty() || values.len() % dim != 0 {
            return Err(Error::InvalidArgument(
                "gradient table must be a nonempty N x d block".into(),
            ));
        }
        let n_points = values.len() / dim;
        Ok(Self {
            values,
            n_points,
            dim,
        })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major slice of length `n_points * dim`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn entry(&self, point: usize, dim: usize) -> f64 {
        self.values[point * self.dim + dim]
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(math::abs(*v)))
    }

    /// Sum of one coordinate column; vanishes up to rounding because the
    /// energy is translation invariant.
    pub fn column_sum(&self, dim: usize) -> f64 {
        (0..self.n_points).map(|p| self.entry(p, dim)).sum()
    }
}

/// The pair kernel `1 - ln(2 sin(pi t))` for `t` in (0, 1).
///
/// Bounded below by `1 - ln 2`. Arguments within [`DEGENERACY_EPS`] of the
/// singularities at 0 and 1 are rejected instead of producing huge finite
/// values that would wreck a descent step.
pub fn logsin_kernel(t: f64) -> Result<f64> {
    if !t.is_finite() || t < DEGENERACY_EPS || t > 1.0 - DEGENERACY_EPS {
        return Err(Error::DegenerateCoordinate { t });
    }
    Ok(kernel_raw(t))
}

/// Derivative of the kernel with respect to the signed difference:
/// `d/du [1 - ln(2 sin(pi |u|))] = -pi cot(pi |u|) sign(u)` for `0 < |u| < 1`.
pub fn kernel_slope(u: f64) -> Result<f64> {
    let t = math::abs(u);
    if !t.is_finite() || t < DEGENERACY_EPS || t > 1.0 - DEGENERACY_EPS {
        return Err(Error::DegenerateCoordinate { t: u });
    }
    Ok(slope_raw(u))
}

#[inline]
fn kernel_raw(t: f64) -> f64 {
    1.0 - math::ln(2.0 * math::sin_pi(t))
}

#[inline]
fn slope_raw(u: f64) -> f64 {
    let sign = if u < 0.0 { -1.0 } else { 1.0 };
    -PI * math::cot_pi(math::abs(u)) * sign
}

fn ensure_non_degenerate(x: &PointSet) -> Result<()> {
    if let Some((point_a, point_b, dim)) = x.degenerate_pair(DEGENERACY_EPS) {
        return Err(Error::DegenerateSet {
            point_a,
            point_b,
            dim,
        });
    }
    Ok(())
}

/// Energy of the set: sum over ordered pairs of the product kernel.
///
/// `O(N² d)`, evaluated in a fixed order so repeated calls are
/// bit-identical. Bounded below by `N (N-1) (1 - ln 2)^d`.
pub fn energy(x: &PointSet) -> Result<f64> {
    ensure_non_degenerate(x)?;
    let n = x.n_points();
    let d = x.dim();
    let mut total = 0.0;
    for a in 0..n {
        let pa = x.point(a);
        for b in a + 1..n {
            let pb = x.point(b);
            let mut prod = 1.0;
            for k in 0..d {
                prod *= kernel_raw(math::abs(pa[k] - pb[k]));
            }
            // each unordered pair stands for both ordered pairs
            total += 2.0 * prod;
        }
    }
    Ok(total)
}

/// Contribution of the ordered pairs whose first index lies in `rows`.
///
/// Summing over a partition of `0..N` reproduces [`energy`] up to the usual
/// reordering rounding; partial sums are independent, so partitions may be
/// evaluated concurrently and combined in a fixed order.
pub fn energy_rows(x: &PointSet, rows: Range<usize>) -> Result<f64> {
    ensure_non_degenerate(x)?;
    check_rows(x, &rows)?;
    let n = x.n_points();
    let d = x.dim();
    let mut total = 0.0;
    for a in rows {
        let pa = x.point(a);
        for b in 0..n {
            if b == a {
                continue;
            }
            let pb = x.point(b);
            let mut prod = 1.0;
            for k in 0..d {
                prod *= kernel_raw(math::abs(pa[k] - pb[k]));
            }
            total += prod;
        }
    }
    Ok(total)
}

/// Analytic gradient of [`energy`].
///
/// Entry `(n, i)` is `2 sum_{m != n} (prod_{k != i} kernel) * slope`, the
/// factor 2 matching the ordered-pair energy. Contributions are accumulated
/// antisymmetrically per pair, which keeps the column sums at rounding level.
pub fn energy_gradient(x: &PointSet) -> Result<GradientField> {
    ensure_non_degenerate(x)?;
    let n = x.n_points();
    let d = x.dim();
    let mut values = vec![0.0f64; n * d];
    let mut kernels = vec![0.0f64; d];
    for a in 0..n {
        let pa = x.point(a);
        for b in a + 1..n {
            let pb = x.point(b);
            let mut prod = 1.0;
            for k in 0..d {
                let g = kernel_raw(math::abs(pa[k] - pb[k]));
                kernels[k] = g;
                prod *= g;
            }
            for i in 0..d {
                // kernels are >= 1 - ln 2 > 0, so dividing the full product
                // back out is safe and cheaper than d partial products
                let partial = prod / kernels[i];
                let contrib = 2.0 * partial * slope_raw(pa[i] - pb[i]);
                values[a * d + i] += contrib;
                values[b * d + i] -= contrib;
            }
        }
    }
    Ok(GradientField {
        values,
        n_points: n,
        dim: d,
    })
}

/// Gradient rows for `rows`, as a row-major block of length
/// `rows.len() * d`. Blocks over a partition of `0..N` concatenate to the
/// full gradient (identical values, entry by entry).
pub fn energy_gradient_rows(x: &PointSet, rows: Range<usize>) -> Result<Vec<f64>> {
    ensure_non_degenerate(x)?;
    check_rows(x, &rows)?;
    let n = x.n_points();
    let d = x.dim();
    let mut values = vec![0.0f64; rows.len() * d];
    let mut kernels = vec![0.0f64; d];
    for (slot, a) in rows.enumerate() {
        let pa = x.point(a);
        for b in 0..n {
            if b == a {
                continue;
            }
            let pb = x.point(b);
            let mut prod = 1.0;
            for k in 0..d {
                let g = kernel_raw(math::abs(pa[k] - pb[k]));
                kernels[k] = g;
                prod *= g;
            }
            for i in 0..d {
                values[slot * d + i] += 2.0 * (prod / kernels[i]) * slope_raw(pa[i] - pb[i]);
            }
        }
    }
    Ok(values)
}

fn check_rows(x: &PointSet, rows: &Range<usize>) -> Result<()> {
    if rows.end > x.n_points() {
        return Err(Error::InvalidArgument(alloc::format!(
            "row range {}..{} exceeds {} points",
            rows.start,
            rows.end,
            x.n_points()
        )));
    }
    Ok(())
}

/// `energy(X) / N²` for one-dimensional sets. Tends to 1 along uniformly
/// distributed sequences and exceeds it markedly on clustered ones.
pub fn normalized_energy(x: &PointSet) -> Result<f64> {
    if x.dim() != 1 {
        return Err(Error::InvalidArgument(alloc::format!(
            "normalized energy is defined for d = 1, got d = {}",
            x.dim()
        )));
    }
    let n = x.n_points() as f64;
    Ok(energy(x)? / (n * n))
}

/// Parameters of the truncated spectral pair energy: weight exponent
/// `sigma` applied as `(2 pi ||m||₂)^sigma` and frequency cutoff
/// `||m||_inf <= max_frequency`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSpec {
    pub sigma: f64,
    pub max_frequency: usize,
}

impl SpectralSpec {
    pub fn validate(&self) -> Result<()> {
        if self.max_frequency == 0 {
            return Err(Error::InvalidArgument(
                "spectral cutoff must be >= 1".into(),
            ));
        }
        if !self.sigma.is_finite() {
            return Err(Error::InvalidArgument("sigma must be finite".into()));
        }
        Ok(())
    }

    /// The long-frequency sum only converges for negative exponents; callers
    /// may want to surface a warning otherwise.
    pub fn is_convergent(&self) -> bool {
        self.sigma < 0.0
    }
}

/// Truncated spectral energy
/// `sum_{k != l} sum_{0 < ||m||_inf <= M} (2 pi ||m||₂)^sigma cos(2 pi <m, x_k - x_l>)`.
///
/// Real by the pairing of `m` with `-m`. At `sigma = -1`, `d = 1`, the inner
/// sum converges to `-(1/pi) ln(2 sin(pi |u|))` as `M` grows, so
/// `pi * spectral + N(N-1)` approaches the log-sin energy.
pub fn spectral_energy(x: &PointSet, spec: &SpectralSpec) -> Result<f64> {
    spec.validate()?;
    ensure_non_degenerate(x)?;
    let n = x.n_points();
    let d = x.dim();
    if n < 2 {
        return Ok(0.0);
    }
    let m_max = spec.max_frequency as i64;
    let mut freq = vec![-m_max; d];
    let mut total = 0.0;
    loop {
        // canonical representative: first nonzero component positive;
        // m and -m contribute the same cosine, hence the factor 2 below
        if is_canonical(&freq) {
            let norm_sq: f64 = freq.iter().map(|&m| (m * m) as f64).sum();
            let weight = math::pow(2.0 * PI * math::sqrt(norm_sq), spec.sigma);
            let mut pair_sum = 0.0;
            for a in 0..n {
                let pa = x.point(a);
                for b in a + 1..n {
                    let pb = x.point(b);
                    let mut dot = 0.0;
                    for k in 0..d {
                        dot += freq[k] as f64 * (pa[k] - pb[k]);
                    }
                    pair_sum += math::cos(2.0 * PI * dot);
                }
            }
            // x2 for +-m, x2 for ordered pairs
            total += 4.0 * weight * pair_sum;
        }
        if !advance(&mut freq, m_max) {
            break;
        }
    }
    Ok(total)
}

fn is_canonical(freq: &[i64]) -> bool {
    for &m in freq {
        if m > 0 {
            return true;
        }
        if m < 0 {
            return false;
        }
    }
    false // all zero
}

fn advance(freq: &mut [i64], m_max: i64) -> bool {
    for slot in freq.iter_mut().rev() {
        if *slot < m_max {
            *slot += 1;
            return true;
        }
        *slot = -m_max;
    }
    false
}

/// Partial sum `sum_{k=1}^{n} cos(2 pi k x) / k`.
///
/// Stays bounded by a constant multiple of `1 - ln |sin(pi x)|` uniformly in
/// `n`; the limit as `n` grows is `-ln(2 sin(pi |x|))`.
pub fn partial_cosine_sum(n: u64, x: f64) -> f64 {
    let mut sum = 0.0;
    for k in 1..=n {
        sum += math::cos(2.0 * PI * k as f64 * x) / k as f64;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{lattice_rule, random_points};
    use alloc::vec;

    const LN_2: f64 = core::f64::consts::LN_2;

    #[test]
    fn kernel_fixtures() {
        assert!((logsin_kernel(0.5).unwrap() - (1.0 - LN_2)).abs() < 1e-15);
        // 2 sin(pi/6) = 1, the log term vanishes
        assert!((logsin_kernel(1.0 / 6.0).unwrap() - 1.0).abs() < 1e-14);
        // small-angle regime, frozen from a 40-digit evaluation
        assert!((logsin_kernel(1e-9).unwrap() - 19.885_388_770_537_066).abs() < 1e-11);
    }

    #[test]
    fn kernel_rejects_singular_arguments() {
        assert!(logsin_kernel(0.0).is_err());
        assert!(logsin_kernel(1.0).is_err());
        assert!(logsin_kernel(1e-13).is_err());
        assert!(logsin_kernel(1.0 - 1e-13).is_err());
        assert!(logsin_kernel(f64::NAN).is_err());
    }

    #[test]
    fn kernel_lower_bound_attained_at_half() {
        for t in 1..100 {
            let t = t as f64 / 100.0;
            assert!(logsin_kernel(t).unwrap() >= 1.0 - LN_2 - 1e-15);
        }
    }

    #[test]
    fn slope_fixtures() {
        assert!(kernel_slope(0.5).unwrap().abs() < 1e-15);
        assert!((kernel_slope(0.25).unwrap() + PI).abs() < 1e-13);
        assert!((kernel_slope(-0.25).unwrap() - PI).abs() < 1e-13);
        assert!(kernel_slope(0.0).is_err());
    }

    #[test]
    fn energy_two_point_fixture() {
        let x = PointSet::new(vec![0.0, 0.5], 1).unwrap();
        assert!((energy(&x).unwrap() - 2.0 * (1.0 - LN_2)).abs() < 1e-15);
    }

    #[test]
    fn energy_equispaced_closed_form() {
        // product identity: prod_{n=1}^{N-1} 2 sin(pi n / N) = N
        for n in [10usize, 100] {
            let coords: Vec<f64> = (0..n).map(|k| k as f64 / n as f64).collect();
            let x = PointSet::new(coords, 1).unwrap();
            let e = energy(&x).unwrap();
            let closed = n as f64 * ((n - 1) as f64 - math::ln(n as f64));
            assert!(
                (e - closed).abs() < 1e-8 * (n * n) as f64,
                "N={n}: {e} vs {closed}"
            );
        }
    }

    #[test]
    fn energy_product_fixture_d2() {
        let x = PointSet::new(vec![0.0, 0.0, 0.5, 0.5], 2).unwrap();
        let expect = 2.0 * (1.0 - LN_2) * (1.0 - LN_2);
        assert!((energy(&x).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn energy_names_offending_pair() {
        let x = PointSet::new(vec![0.1, 0.2, 0.1, 0.7], 2).unwrap();
        match energy(&x) {
            Err(Error::DegenerateSet {
                point_a: 0,
                point_b: 1,
                dim: 0,
            }) => {}
            other => panic!("expected degenerate-set error, got {other:?}"),
        }
    }

    #[test]
    fn row_partition_reproduces_energy_and_gradient() {
        let x = random_points(17, 2, 5).unwrap();
        let full = energy(&x).unwrap();
        let split = energy_rows(&x, 0..9).unwrap() + energy_rows(&x, 9..17).unwrap();
        assert!((full - split).abs() < 1e-9 * full.abs());

        let g = energy_gradient(&x).unwrap();
        let mut blocks = energy_gradient_rows(&x, 0..9).unwrap();
        blocks.extend(energy_gradient_rows(&x, 9..17).unwrap());
        for (a, b) in g.values().iter().zip(blocks.iter()) {
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }

    #[test]
    fn gradient_vanishes_on_lattice_rule() {
        let x = lattice_rule(5, 2).unwrap();
        let e = energy(&x).unwrap();
        let g = energy_gradient(&x).unwrap();
        assert!(g.max_abs() <= 1e-9 * e, "max |grad| = {}", g.max_abs());
    }

    #[test]
    fn gradient_vanishes_on_antipodal_pair() {
        let x = PointSet::new(vec![0.0, 0.5], 1).unwrap();
        let g = energy_gradient(&x).unwrap();
        assert!(g.max_abs() < 1e-15);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let x = random_points(20, 2, 2).unwrap();
        let g = energy_gradient(&x).unwrap();
        let h = 1e-7;
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for p in 0..x.n_points() {
            for i in 0..x.dim() {
                let mut up = x.coords().to_vec();
                let mut dn = x.coords().to_vec();
                up[p * x.dim() + i] += h;
                dn[p * x.dim() + i] -= h;
                let fd = (energy(&PointSet::new(up, 2).unwrap()).unwrap()
                    - energy(&PointSet::new(dn, 2).unwrap()).unwrap())
                    / (2.0 * h);
                worst = worst.max(math::abs(fd - g.entry(p, i)));
                scale = scale.max(math::abs(fd));
            }
        }
        assert!(worst / scale < 1e-5, "rel err {}", worst / scale);
    }

    #[test]
    fn gradient_column_sums_vanish() {
        let x = random_points(25, 3, 9).unwrap();
        let g = energy_gradient(&x).unwrap();
        let tol = 1e-9 * g.max_abs();
        for i in 0..3 {
            assert!(g.column_sum(i).abs() <= tol);
        }
    }

    #[test]
    fn normalized_energy_fixtures() {
        for (n, expect) in [(100usize, 0.943_948_298_140_119), (1000, 0.992_092_244_721_018)] {
            let coords: Vec<f64> = (0..n).map(|k| k as f64 / n as f64).collect();
            let x = PointSet::new(coords, 1).unwrap();
            assert!((normalized_energy(&x).unwrap() - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn normalized_energy_flags_clusters() {
        let coords: Vec<f64> = (0..10).map(|k| k as f64 * 1e-6).collect();
        let x = PointSet::new(coords, 1).unwrap();
        assert!(normalized_energy(&x).unwrap() > 5.0);
    }

    #[test]
    fn normalized_energy_is_one_dimensional() {
        let x = PointSet::new(vec![0.1, 0.2, 0.3, 0.4], 2).unwrap();
        assert!(normalized_energy(&x).is_err());
    }

    #[test]
    fn spectral_energy_single_point_is_zero() {
        let x = PointSet::new(vec![0.3], 1).unwrap();
        let spec = SpectralSpec {
            sigma: -1.0,
            max_frequency: 10,
        };
        assert_eq!(spectral_energy(&x, &spec).unwrap(), 0.0);
    }

    #[test]
    fn spectral_energy_antipodal_fixture() {
        // converges to sum over ordered pairs of -(1/pi) ln(2 sin(pi/2)),
        // i.e. -2 ln 2 / pi
        let x = PointSet::new(vec![0.0, 0.5], 1).unwrap();
        let spec = SpectralSpec {
            sigma: -1.0,
            max_frequency: 100_000,
        };
        let s = spectral_energy(&x, &spec).unwrap();
        let limit = -2.0 * LN_2 / PI;
        assert!((s - limit).abs() < 1e-3, "{s} vs {limit}");
    }

    #[test]
    fn spectral_identity_links_to_energy() {
        let x = random_points(10, 1, 3).unwrap();
        let spec = SpectralSpec {
            sigma: -1.0,
            max_frequency: 100_000,
        };
        let s = spectral_energy(&x, &spec).unwrap();
        let n = x.n_points() as f64;
        let e = energy(&x).unwrap();
        let lhs = PI * s + n * (n - 1.0);
        assert!((lhs - e).abs() < 1e-3 * e, "{lhs} vs {e}");
    }

    #[test]
    fn spectral_spec_validation() {
        assert!(SpectralSpec {
            sigma: -1.0,
            max_frequency: 0
        }
        .validate()
        .is_err());
        assert!(!SpectralSpec {
            sigma: 0.5,
            max_frequency: 5
        }
        .is_convergent());
    }

    #[test]
    fn partial_cosine_fixtures() {
        assert!((partial_cosine_sum(1, 0.5) + 1.0).abs() < 1e-15);
        // limit at x = 1/4 is -ln(2 sin(pi/4)) = -(1/2) ln 2
        let s = partial_cosine_sum(1_000_000, 0.25);
        assert!((s + 0.5 * LN_2).abs() < 1e-5, "{s}");
    }
}
