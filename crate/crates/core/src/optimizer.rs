//! Gradient descent on the torus: `x <- wrap(x - alpha * dE/dx)`, with
//! degeneracy guarding, optional step halving, and per-iteration tracing.

use crate::energy::{energy, energy_gradient, GradientField};
use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::rng;
use crate::torus::wrap_unchecked;
use crate::{discrepancy, DEGENERACY_EPS};
use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;

/// Descent parameters.
///
/// The fixed-step scheme (`adaptive = false`) applies `alpha` times the full
/// two-sided gradient every iteration. With `adaptive = true` the step is
/// halved (up to 20 times, retrying) whenever it would increase the energy,
/// which guarantees a non-increasing energy trace; the step resets to
/// `alpha` at each iteration. Note that the fixed scheme can become unstable
/// once `alpha * |grad|` reaches the minimum coordinate spacing — N ≈ 128
/// low-discrepancy sets with `alpha = 1e-5` are already borderline, so
/// prefer `adaptive` there or halve `alpha`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OptimizerConfig {
    /// Step size applied to the gradient.
    pub alpha: f64,
    /// Iteration budget.
    pub max_iters: usize,
    /// Stop once `max |grad entry| < grad_tolerance * E`.
    pub grad_tolerance: f64,
    /// Coordinate-coincidence threshold used for the degeneracy guard.
    pub min_separation: f64,
    /// Magnitude of the repair perturbations; must be at least
    /// `10 * min_separation`.
    pub jitter: f64,
    /// Enable energy-guarded step halving.
    pub adaptive: bool,
    /// Record energy and gradient norm every this many iterations.
    pub trace_every: usize,
    /// Record star/L² discrepancy every this many iterations (0 disables).
    pub trace_disc_every: usize,
    /// Seed for jitter directions.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            alpha: 1e-5,
            max_iters: 200,
            grad_tolerance: 1e-9,
            min_separation: DEGENERACY_EPS,
            jitter: 1e-9,
            adaptive: false,
            trace_every: 1,
            trace_disc_every: 10,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidArgument("alpha must be positive".into()));
        }
        if !(self.grad_tolerance >= 0.0) {
            return Err(Error::InvalidArgument(
                "grad_tolerance must be nonnegative".into(),
            ));
        }
        if !(self.min_separation >= 0.0 && self.min_separation.is_finite()) {
            return Err(Error::InvalidArgument(
                "min_separation must be nonnegative".into(),
            ));
        }
        if self.jitter < 10.0 * self.min_separation {
            return Err(Error::InvalidArgument(
                "jitter must be at least 10x min_separation".into(),
            ));
        }
        if self.trace_every == 0 {
            return Err(Error::InvalidArgument("trace_every must be >= 1".into()));
        }
        Ok(())
    }
}

/// One traced iteration. Discrepancies are present only at their cadence
/// (and when the exact enumeration fits its budget).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TraceRecord {
    pub iter: usize,
    pub energy: f64,
    pub grad_max: f64,
    pub star_disc: Option<f64>,
    pub l2_disc: Option<f64>,
}

/// Result of a completed descent.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeOutcome {
    pub points: PointSet,
    pub trace: Vec<TraceRecord>,
    /// Number of gradient steps actually applied.
    pub iterations: usize,
    /// True when the gradient-tolerance stop fired (as opposed to running
    /// out of iterations or stalling in adaptive mode).
    pub converged: bool,
    /// Mid-run degeneracy repairs that were applied.
    pub repairs: usize,
    pub initial_energy: f64,
    pub final_energy: f64,
}

/// A failed descent still hands back everything traced so far.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeFailure {
    pub error: Error,
    pub trace: Vec<TraceRecord>,
    pub iterations: usize,
}

impl core::fmt::Display for OptimizeFailure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "descent failed after {} steps: {}", self.iterations, self.error)
    }
}

impl core::error::Error for OptimizeFailure {}

/// How a descent loop obtains energies and gradients. The serial evaluator
/// is the default; callers may substitute a partitioned/parallel one built
/// on [`crate::energy::energy_rows`] and
/// [`crate::energy::energy_gradient_rows`].
pub trait EnergyEvaluator {
    fn energy(&self, x: &PointSet) -> Result<f64>;
    fn gradient(&self, x: &PointSet) -> Result<GradientField>;
}

/// Single-threaded evaluator with the crate's fixed summation order.
#[derive(Debug, Clone, Copy, Default)]
pub struct SerialEvaluator;

impl EnergyEvaluator for SerialEvaluator {
    fn energy(&self, x: &PointSet) -> Result<f64> {
        energy(x)
    }

    fn gradient(&self, x: &PointSet) -> Result<GradientField> {
        energy_gradient(x)
    }
}

/// One descent step: every coordinate moves by `-alpha` times its gradient
/// entry and wraps back onto the torus.
pub fn gradient_step(x: &PointSet, alpha: f64) -> Result<PointSet> {
    let grad = energy_gradient(x)?;
    apply_step(x, &grad, alpha)
}

fn apply_step(x: &PointSet, grad: &GradientField, alpha: f64) -> Result<PointSet> {
    let coords = x
        .coords()
        .iter()
        .zip(grad.values())
        .map(|(c, g)| wrap_unchecked(c - alpha * g))
        .collect();
    PointSet::new(coords, x.dim())
}

/// Separates coinciding coordinates by seeded perturbations of magnitude at
/// most `cfg.jitter`, at most `N * d` rounds. A set that is already
/// non-degenerate is returned unchanged.
pub fn jitter_degenerate(x: &PointSet, cfg: &OptimizerConfig) -> Result<PointSet> {
    cfg.validate()?;
    let mut rng = rng::seeded(cfg.seed);
    jitter_with(x, cfg, &mut rng)
}

fn jitter_with(x: &PointSet, cfg: &OptimizerConfig, rng: &mut ChaCha8Rng) -> Result<PointSet> {
    if !x.is_degenerate(cfg.min_separation) {
        return Ok(x.clone());
    }
    let n = x.n_points();
    let d = x.dim();
    let mut coords = x.coords().to_vec();
    let round_limit = n * d;
    for _ in 0..round_limit {
        let slots = offending_slots(&coords, n, d, cfg.min_separation);
        if slots.is_empty() {
            return PointSet::new(coords, d);
        }
        for (point, dim) in slots {
            // magnitude in [jitter/4, jitter], random sign
            let mag = cfg.jitter * (0.25 + 0.75 * rng::unit_f64(rng));
            let sign = if rng::unit_f64(rng) < 0.5 { -1.0 } else { 1.0 };
            let slot = point * d + dim;
            coords[slot] = wrap_unchecked(coords[slot] + sign * mag);
        }
    }
    let repaired = PointSet::new(coords, d)?;
    if repaired.is_degenerate(cfg.min_separation) {
        return Err(Error::UnrepairableSet {
            rounds: round_limit,
        });
    }
    Ok(repaired)
}

/// All `(point, dim)` slots involved in a coordinate collision, one slot per
/// colliding adjacent pair (the later point in sort order moves).
fn offending_slots(coords: &[f64], n: usize, d: usize, eps: f64) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for k in 0..d {
        order.clear();
        order.extend(0..n);
        order.sort_by(|&a, &b| {
            coords[a * d + k]
                .partial_cmp(&coords[b * d + k])
                .expect("finite coordinates")
        });
        for w in order.windows(2) {
            if coords[w[1] * d + k] - coords[w[0] * d + k] < eps {
                slots.push((w[1], k));
            }
        }
        let (first, last) = (order[0], order[n - 1]);
        if first != last && 1.0 - (coords[last * d + k] - coords[first * d + k]) < eps {
            slots.push((last, k));
        }
    }
    slots.sort_unstable();
    slots.dedup();
    slots
}

/// Runs the descent with the serial evaluator.
pub fn optimize(
    x0: &PointSet,
    cfg: &OptimizerConfig,
) -> core::result::Result<OptimizeOutcome, OptimizeFailure> {
    optimize_with(&SerialEvaluator, x0, cfg)
}

/// Runs the descent with a caller-supplied evaluator.
///
/// Deterministic given `(x0, cfg)` and the evaluator's summation order. A
/// set that degenerates mid-run is repaired by jitter and the repair
/// counted; an unrepairable set aborts with the partial trace attached.
pub fn optimize_with(
    eval: &dyn EnergyEvaluator,
    x0: &PointSet,
    cfg: &OptimizerConfig,
) -> core::result::Result<OptimizeOutcome, OptimizeFailure> {
    let mut trace: Vec<TraceRecord> = Vec::new();
    let mut iterations = 0usize;
    run_descent(eval, x0, cfg, &mut trace, &mut iterations).map_err(|error| OptimizeFailure {
        error,
        trace: core::mem::take(&mut trace),
        iterations,
    })
}

fn run_descent(
    eval: &dyn EnergyEvaluator,
    x0: &PointSet,
    cfg: &OptimizerConfig,
    trace: &mut Vec<TraceRecord>,
    iterations: &mut usize,
) -> Result<OptimizeOutcome> {
    cfg.validate()?;
    let mut rng = rng::seeded(cfg.seed);
    let mut repairs = 0usize;

    let mut x = jitter_with(x0, cfg, &mut rng)?;
    if x.coords() != x0.coords() {
        repairs += 1;
    }
    let mut e = eval.energy(&x)?;
    let initial_energy = e;
    let mut converged = false;

    for iter in 0..=cfg.max_iters {
        let grad = eval.gradient(&x)?;
        let grad_max = grad.max_abs();

        let stopping = grad_max < cfg.grad_tolerance * e;
        let budget_out = iter == cfg.max_iters;
        if stopping || budget_out || iter % cfg.trace_every == 0 {
            trace.push(trace_record(&x, iter, e, grad_max, cfg, stopping || budget_out));
        }
        if stopping {
            converged = true;
            break;
        }
        if budget_out {
            break;
        }

        let mut alpha = cfg.alpha;
        let mut accepted = None;
        for _ in 0..=20 {
            let mut candidate = apply_step(&x, &grad, alpha)?;
            if candidate.is_degenerate(cfg.min_separation) {
                candidate = jitter_with(&candidate, cfg, &mut rng)?;
                repairs += 1;
            }
            let e_candidate = eval.energy(&candidate)?;
            if !cfg.adaptive || e_candidate <= e {
                accepted = Some((candidate, e_candidate));
                break;
            }
            alpha *= 0.5;
        }
        let Some((next, e_next)) = accepted else {
            // 20 halvings without an energy decrease: stay put and stop
            break;
        };
        x = next;
        e = e_next;
        *iterations = iter + 1;
    }

    let final_energy = e;
    Ok(OptimizeOutcome {
        points: x,
        trace: core::mem::take(trace),
        iterations: *iterations,
        converged,
        repairs,
        initial_energy,
        final_energy,
    })
}

fn trace_record(
    x: &PointSet,
    iter: usize,
    energy: f64,
    grad_max: f64,
    cfg: &OptimizerConfig,
    force_disc: bool,
) -> TraceRecord {
    let want_disc = cfg.trace_disc_every != 0 && (force_disc || iter % cfg.trace_disc_every == 0);
    let (star_disc, l2_disc) = if want_disc {
        let star = discrepancy::star_discrepancy(x).ok();
        (star, Some(discrepancy::l2_discrepancy(x)))
    } else {
        (None, None)
    };
    TraceRecord {
        iter,
        energy,
        grad_max,
        star_disc,
        l2_disc,
    }
}
