//! Classical low-discrepancy constructions used as starting configurations:
//! van der Corput / Halton / Hammersley radical-inverse sets, Kronecker
//! sequences, rank-1 lattice rules, a small-dimension Sobol sequence, and
//! seeded uniform random points.

use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::rng;
use crate::torus::wrap_unchecked;
use alloc::format;
use alloc::vec::Vec;

/// Declarative description of a generator invocation; see [`generate`].
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    VanDerCorput {
        n_points: usize,
        base: u32,
        start_index: u64,
    },
    Halton {
        n_points: usize,
        bases: Vec<u32>,
        start_index: u64,
    },
    Hammersley {
        n_points: usize,
        bases: Vec<u32>,
        start_index: u64,
    },
    Kronecker {
        n_points: usize,
        alphas: Vec<f64>,
        start_index: u64,
    },
    LatticeRule {
        n_points: usize,
        multiplier: u64,
    },
    Sobol {
        n_points: usize,
        dim: usize,
    },
    Random {
        n_points: usize,
        dim: usize,
        seed: u64,
    },
}

impl GeneratorSpec {
    /// Conventional first index: 1 for van der Corput/Halton (skips the
    /// all-zero point), 0 for Hammersley and Kronecker-style shifts.
    pub fn default_start_index(kind: &str) -> u64 {
        match kind {
            "halton" | "vdc" | "kronecker" => 1,
            _ => 0,
        }
    }
}

/// Runs the described generator.
pub fn generate(spec: &GeneratorSpec) -> Result<PointSet> {
    match spec {
        GeneratorSpec::VanDerCorput {
            n_points,
            base,
            start_index,
        } => van_der_corput(*n_points, *base, *start_index),
        GeneratorSpec::Halton {
            n_points,
            bases,
            start_index,
        } => halton(*n_points, bases, *start_index),
        GeneratorSpec::Hammersley {
            n_points,
            bases,
            start_index,
        } => hammersley(*n_points, bases, *start_index),
        GeneratorSpec::Kronecker {
            n_points,
            alphas,
            start_index,
        } => kronecker(*n_points, alphas, *start_index),
        GeneratorSpec::LatticeRule {
            n_points,
            multiplier,
        } => lattice_rule(*n_points, *multiplier),
        GeneratorSpec::Sobol { n_points, dim } => sobol(*n_points, *dim),
        GeneratorSpec::Random {
            n_points,
            dim,
            seed,
        } => random_points(*n_points, *dim, *seed),
    }
}

/// Digit reversal of `n` in base `b` across the radix point.
///
/// With `n = sum d_k b^k`, returns `sum d_k b^(-k-1)`, always in [0, 1).
pub fn radical_inverse(n: u64, base: u32) -> Result<f64> {
    if base < 2 {
        return Err(Error::InvalidArgument(format!(
            "radical inverse base must be >= 2, got {base}"
        )));
    }
    let b = base as u128;
    let mut n = n as u128;
    let mut reversed: u128 = 0;
    let mut scale: u128 = 1;
    while n > 0 {
        reversed = reversed * b + n % b;
        scale *= b;
        n /= b;
    }
    let r = reversed as f64 / scale as f64;
    // reversed < scale as integers; guard the conversion rounding anyway
    Ok(if r >= 1.0 { 1.0 - f64::EPSILON } else { r })
}

fn check_n_points(n_points: usize) -> Result<()> {
    if n_points == 0 {
        return Err(Error::InvalidArgument("n_points must be >= 1".into()));
    }
    Ok(())
}

fn check_bases(bases: &[u32]) -> Result<()> {
    if bases.is_empty() {
        return Err(Error::InvalidArgument("at least one base is required".into()));
    }
    for &b in bases {
        if b < 2 {
            return Err(Error::InvalidArgument(format!("base {b} must be >= 2")));
        }
    }
    for (i, &a) in bases.iter().enumerate() {
        for &b in &bases[i + 1..] {
            if gcd(a as u64, b as u64) != 1 {
                return Err(Error::InvalidArgument(format!(
                    "bases {a} and {b} are not coprime"
                )));
            }
        }
    }
    Ok(())
}

/// One-dimensional radical-inverse sequence in base `b`, indices
/// `start_index ..`.
pub fn van_der_corput(n_points: usize, base: u32, start_index: u64) -> Result<PointSet> {
    halton(n_points, &[base], start_index)
}

/// Halton set: point `n` has coordinates `(phi_b1(n), ..., phi_bd(n))` for
/// `n = start_index .. start_index + N - 1`. Bases must be pairwise coprime.
pub fn halton(n_points: usize, bases: &[u32], start_index: u64) -> Result<PointSet> {
    check_n_points(n_points)?;
    check_bases(bases)?;
    let dim = bases.len();
    let mut coords = Vec::with_capacity(n_points * dim);
    for n in start_index..start_index + n_points as u64 {
        for &b in bases {
            coords.push(radical_inverse(n, b)?);
        }
    }
    PointSet::new(coords, dim)
}

/// Hammersley set: point `n` is `({n/N}, phi_b1(n), ...)` for
/// `n = start_index .. start_index + N - 1`; supply `d - 1` bases for a
/// `d`-dimensional set.
pub fn hammersley(n_points: usize, bases: &[u32], start_index: u64) -> Result<PointSet> {
    check_n_points(n_points)?;
    check_bases(bases)?;
    let dim = bases.len() + 1;
    let mut coords = Vec::with_capacity(n_points * dim);
    for n in start_index..start_index + n_points as u64 {
        coords.push(wrap_unchecked(n as f64 / n_points as f64));
        for &b in bases {
            coords.push(radical_inverse(n, b)?);
        }
    }
    PointSet::new(coords, dim)
}

/// Kronecker set: point `n` is `({n a_1}, ..., {n a_d})` for
/// `n = start_index .. start_index + N - 1`.
pub fn kronecker(n_points: usize, alphas: &[f64], start_index: u64) -> Result<PointSet> {
    check_n_points(n_points)?;
    if alphas.is_empty() {
        return Err(Error::InvalidArgument("at least one alpha is required".into()));
    }
    for &a in alphas {
        if !a.is_finite() {
            return Err(Error::InvalidArgument("alphas must be finite".into()));
        }
    }
    let dim = alphas.len();
    let mut coords = Vec::with_capacity(n_points * dim);
    for n in start_index..start_index + n_points as u64 {
        for &a in alphas {
            coords.push(wrap_unchecked(n as f64 * a));
        }
    }
    PointSet::new(coords, dim)
}

/// Rank-1 lattice rule `{(n/N, {a n/N}) : 0 <= n <= N-1}` with
/// `gcd(a, N) = 1`. Coordinates are exact rationals `k/N`.
pub fn lattice_rule(n_points: usize, multiplier: u64) -> Result<PointSet> {
    check_n_points(n_points)?;
    let n = n_points as u64;
    if gcd(multiplier, n) != 1 {
        return Err(Error::InvalidArgument(format!(
            "lattice multiplier {multiplier} and N {n} must be coprime (gcd {})",
            gcd(multiplier, n)
        )));
    }
    let mut coords = Vec::with_capacity(n_points * 2);
    for k in 0..n {
        coords.push(k as f64 / n as f64);
        let second = ((multiplier as u128 * k as u128) % n as u128) as f64;
        coords.push(second / n as f64);
    }
    PointSet::new(coords, 2)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// True iff `a^2 == 1 (mod n)`, i.e. `k -> a k` is an involution mod `n`.
pub fn is_involution(n: u64, a: u64) -> bool {
    if n == 0 {
        return false;
    }
    let a = (a % n) as u128;
    (a * a) % n as u128 == 1 % n as u128
}

// ---------------------------------------------------------------------------
// Sobol
// ---------------------------------------------------------------------------

/// Highest dimension covered by the embedded direction-number table.
pub const SOBOL_MAX_DIM: usize = 8;

const SOBOL_BITS: usize = 32;

// Joe-Kuo "new-joe-kuo-6.21201" parameters for dimensions 2..=8
// (dimension 1 is the van der Corput sequence in base 2):
//   dim 2: s=1 a=0 m=[1]
//   dim 3: s=2 a=1 m=[1,1]
//   dim 4: s=3 a=1 m=[1,1,1]
//   dim 5: s=3 a=2 m=[1,3,1]
//   dim 6: s=4 a=1 m=[1,1,3,3]
//   dim 7: s=4 a=4 m=[1,3,5,13]
//   dim 8: s=5 a=2 m=[1,1,5,5,17]
const SOBOL_PARAMS: [(usize, u32, [u32; 5]); 7] = [
    (1, 0, [1, 0, 0, 0, 0]),
    (2, 1, [1, 1, 0, 0, 0]),
    (3, 1, [1, 1, 1, 0, 0]),
    (3, 2, [1, 3, 1, 0, 0]),
    (4, 1, [1, 1, 3, 3, 0]),
    (4, 4, [1, 3, 5, 13, 0]),
    (5, 2, [1, 1, 5, 5, 17]),
];

fn sobol_directions(dim: usize) -> [u32; SOBOL_BITS] {
    let mut v = [0u32; SOBOL_BITS];
    if dim == 0 {
        for (c, slot) in v.iter_mut().enumerate() {
            *slot = 1u32 << (31 - c);
        }
        return v;
    }
    let (s, a, m) = SOBOL_PARAMS[dim - 1];
    for c in 0..s {
        v[c] = m[c] << (31 - c);
    }
    for c in s..SOBOL_BITS {
        let mut val = v[c - s] ^ (v[c - s] >> s);
        for k in 1..s {
            if (a >> (s - 1 - k)) & 1 == 1 {
                val ^= v[c - k];
            }
        }
        v[c] = val;
    }
    v
}

/// First `N` points of the embedded base-2 digital Sobol sequence in
/// Gray-code order.
///
/// The all-zero point of the classic sequence is skipped, so the first point
/// returned is `(0.5, ..., 0.5)`. Deterministic across runs and platforms.
/// Dimensions above [`SOBOL_MAX_DIM`] are not covered by the embedded table;
/// import such sets from CSV instead.
pub fn sobol(n_points: usize, dim: usize) -> Result<PointSet> {
    check_n_points(n_points)?;
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    if dim > SOBOL_MAX_DIM {
        return Err(Error::UnsupportedDimension {
            dim,
            max: SOBOL_MAX_DIM,
        });
    }
    if n_points as u64 > 1 << 31 {
        return Err(Error::InvalidArgument(format!(
            "sobol supports at most 2^31 points, got {n_points}"
        )));
    }
    let dirs: Vec<[u32; SOBOL_BITS]> = (0..dim).map(sobol_directions).collect();
    let mut state = alloc::vec![0u32; dim];
    let mut coords = Vec::with_capacity(n_points * dim);
    for index in 0u32..n_points as u32 {
        // Gray-code step: flip the direction of the lowest zero bit of index.
        let c = (!index).trailing_zeros() as usize;
        for (x, d) in state.iter_mut().zip(&dirs) {
            *x ^= d[c];
            coords.push(*x as f64 / (1u64 << 32) as f64);
        }
    }
    PointSet::new(coords, dim)
}

/// `N * d` independent uniform draws from a ChaCha8 stream seeded with
/// `seed` (row-major order: point by point, dimension by dimension).
/// Identical seeds give identical sets.
pub fn random_points(n_points: usize, dim: usize, seed: u64) -> Result<PointSet> {
    check_n_points(n_points)?;
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    let mut rng = rng::seeded(seed);
    let coords = (0..n_points * dim).map(|_| rng::unit_f64(&mut rng)).collect();
    PointSet::new(coords, dim)
}
