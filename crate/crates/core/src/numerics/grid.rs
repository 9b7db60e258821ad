use serde::Serialize;

use crate::error::{Error, Result};

/// Uniform one-dimensional sampling of `[min, max]` with `count` points,
/// endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid1D {
    min: f64,
    max: f64,
    count: usize,
}

impl Grid1D {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "bounds must be finite, got [{min}, {max}]"
            )));
        }
        if max <= min {
            return Err(Error::InvalidGrid(format!(
                "max must exceed min, got [{min}, {max}]"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {count}"
            )));
        }
        Ok(Grid1D { min, max, count })
    }

    /// Grid on `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, count: usize) -> Result<Self> {
        Self::new(-half_width, half_width, count)
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.count - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        debug_assert!(i < self.count);
        if i + 1 == self.count {
            self.max
        } else {
            self.min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.point(i))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.points().collect()
    }

    /// Sample `f` at every grid point.
    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.points().map(f).collect()
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.count {
            return Err(Error::LengthMismatch {
                expected: self.count,
                actual: len,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_grids() {
        assert!(Grid1D::new(1.0, 1.0, 10).is_err());
        assert!(Grid1D::new(1.0, 0.0, 10).is_err());
        assert!(Grid1D::new(0.0, 1.0, 1).is_err());
        assert!(Grid1D::new(f64::NAN, 1.0, 5).is_err());
        assert!(Grid1D::new(0.0, f64::INFINITY, 5).is_err());
    }

    #[test]
    fn endpoints_are_exact() {
        let g = Grid1D::new(-12.0, 12.0, 1537).unwrap();
        assert_eq!(g.point(0), -12.0);
        assert_eq!(g.point(1536), 12.0);
        assert_eq!(g.point(768), 0.0);
        assert!((g.spacing() - 24.0 / 1536.0).abs() < 1e-15);
    }
}
