//! The N x d coordinate table every other module operates on.

use crate::error::{Error, Result};
use crate::torus;
use alloc::format;
use alloc::vec::Vec;

/// An immutable set of `N` points in `[0,1)^d`, stored row-major.
///
/// Construction validates that every coordinate lies in `[0, 1)` and that
/// `N >= 1`, `d >= 1`. Values are never mutated afterwards, so a `PointSet`
/// can be shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    coords: Vec<f64>,
    n_points: usize,
    dim: usize,
}

impl PointSet {
    /// Builds a point set from row-major coordinates, rejecting anything
    /// outside `[0, 1)`.
    pub fn new(coords: Vec<f64>, dim: usize) -> Result<Self> {
        let set = Self::validate_shape(coords, dim)?;
        for (i, &c) in set.coords.iter().enumerate() {
            if !(0.0..1.0).contains(&c) {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {} of point {} is {}, outside [0,1)",
                    i % set.dim,
                    i / set.dim,
                    c
                )));
            }
        }
        Ok(set)
    }

    /// Builds a point set, wrapping out-of-range coordinates onto the torus.
    /// Returns how many coordinates needed wrapping.
    pub fn new_wrapped(coords: Vec<f64>, dim: usize) -> Result<(Self, usize)> {
        let mut set = Self::validate_shape(coords, dim)?;
        let mut wrapped = 0;
        for c in &mut set.coords {
            if !(0.0..1.0).contains(c) {
                *c = torus::wrap(*c)?;
                wrapped += 1;
            }
        }
        Ok((set, wrapped))
    }

    fn validate_shape(coords: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if coords.is_empty() || coords.len() % dim != 0 {
            return Err(Error::InvalidArgument(format!(
                "coordinate table of length {} is not a positive multiple of dim {}",
                coords.len(),
                dim
            )));
        }
        for &c in &coords {
            if !c.is_finite() {
                return Err(Error::InvalidArgument("non-finite coordinate".into()));
            }
        }
        let n_points = coords.len() / dim;
        Ok(Self {
            coords,
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

    /// Row-major coordinate slice of length `n_points * dim`.
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    #[inline]
    pub fn coord(&self, point: usize, dim: usize) -> f64 {
        self.coords[point * self.dim + dim]
    }

    #[inline]
    pub fn point(&self, point: usize) -> &[f64] {
        &self.coords[point * self.dim..(point + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    /// True iff two distinct points share a coordinate in some dimension up
    /// to `eps`, including coincidence across the wrap (`1 - |diff| < eps`).
    ///
    /// Comparisons are strict, so `eps = 0` never flags anything.
    pub fn is_degenerate(&self, eps: f64) -> bool {
        self.degenerate_pair(eps).is_some()
    }

    /// First offending `(point_a, point_b, dim)` triple, if any.
    ///
    /// Sorting each dimension reduces the check to adjacent gaps plus the
    /// wrap-around gap between the extremes.
    pub fn degenerate_pair(&self, eps: f64) -> Option<(usize, usize, usize)> {
        let n = self.n_points;
        if n < 2 {
            return None;
        }
        let mut order: Vec<usize> = Vec::with_capacity(n);
        for k in 0..self.dim {
            order.clear();
            order.extend(0..n);
            order.sort_by(|&a, &b| {
                self.coord(a, k)
                    .partial_cmp(&self.coord(b, k))
                    .expect("coordinates are finite")
            });
            for w in order.windows(2) {
                let (a, b) = (w[0], w[1]);
                if self.coord(b, k) - self.coord(a, k) < eps {
                    return Some((a.min(b), a.max(b), k));
                }
            }
            let (first, last) = (order[0], order[n - 1]);
            if first != last && 1.0 - (self.coord(last, k) - self.coord(first, k)) < eps {
                return Some((first.min(last), first.max(last), k));
            }
        }
        None
    }

    /// Largest per-coordinate torus displacement between two equally shaped
    /// sets (the ∞-norm of `self - other` on the torus).
    pub fn max_displacement(&self, other: &PointSet) -> Result<f64> {
        if self.n_points != other.n_points || self.dim != other.dim {
            return Err(Error::InvalidArgument(
                "displacement requires identically shaped point sets".into(),
            ));
        }
        let mut best = 0.0f64;
        for (a, b) in self.coords.iter().zip(other.coords.iter()) {
            let d = torus::distance(*a, *b);
            if d > best {
                best = d;
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_empty_and_out_of_range() {
        assert!(PointSet::new(vec![], 2).is_err());
        assert!(PointSet::new(vec![0.5, 1.0], 2).is_err());
        assert!(PointSet::new(vec![0.5, -0.1], 2).is_err());
        assert!(PointSet::new(vec![0.5, 0.5, 0.25], 2).is_err());
        assert!(PointSet::new(vec![0.5], 0).is_err());
    }

    #[test]
    fn wrapping_constructor_reports_count() {
        let (set, wrapped) = PointSet::new_wrapped(vec![1.25, -0.5, 0.3, 0.4], 2).unwrap();
        assert_eq!(wrapped, 2);
        assert_eq!(set.coord(0, 0), 0.25);
        assert_eq!(set.coord(0, 1), 0.5);
        assert_eq!(set.coord(1, 0), 0.3);
    }

    #[test]
    fn degeneracy_shared_first_coordinate() {
        let set = PointSet::new(vec![0.1, 0.2, 0.1, 0.7], 2).unwrap();
        assert!(set.is_degenerate(1e-12));
        assert_eq!(set.degenerate_pair(1e-12), Some((0, 1, 0)));
    }

    #[test]
    fn degeneracy_distinct_coordinates() {
        let set = PointSet::new(vec![0.1, 0.2, 0.3, 0.7], 2).unwrap();
        assert!(!set.is_degenerate(1e-12));
    }

    #[test]
    fn degeneracy_across_the_wrap() {
        let set = PointSet::new(vec![0.0, 0.5, 0.999_999_999_999, 0.2], 2).unwrap();
        assert!(set.is_degenerate(1e-9));
        assert_eq!(set.degenerate_pair(1e-9), Some((0, 1, 0)));
    }

    #[test]
    fn eps_zero_never_flags() {
        let set = PointSet::new(vec![0.25, 0.25], 1).unwrap();
        assert!(!set.is_degenerate(0.0));
    }

    #[test]
    fn displacement_uses_torus_metric() {
        let a = PointSet::new(vec![0.05, 0.5], 1).unwrap();
        let b = PointSet::new(vec![0.95, 0.5], 1).unwrap();
        assert!((a.max_displacement(&b).unwrap() - 0.1).abs() < 1e-15);
    }
}
