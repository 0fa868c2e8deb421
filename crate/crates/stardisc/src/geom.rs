//! Points, anchored boxes, box differences, and the counting/volume
//! primitives everything else is built on.
//!
//! All comparisons in counting are exact floating-point order relations.
//! Fuzzy comparisons would corrupt counts: discrepancy is defined by exact
//! order relations, so a point on a box boundary is inside the closed box
//! and outside the open one, full stop.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A point of the unit cube `[0,1]^s`.
///
/// Invariants (enforced at construction): dimension at least 1, every
/// coordinate finite and in `[0,1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(invalid("a point needs at least one coordinate"));
        }
        for (i, &c) in coords.iter().enumerate() {
            if !(0.0..=1.0).contains(&c) {
                return Err(invalid(format!(
                    "coordinate {i} is {c}, outside [0,1]"
                )));
            }
        }
        Ok(Point(coords))
    }

    /// The origin of `[0,1]^dim`.
    pub fn zero(dim: usize) -> Result<Self> {
        Point::new(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// True iff every coordinate is exactly 0.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }
}

/// Componentwise `a <= b`. Slices must have equal length.
pub(crate) fn leq(a: &[f64], b: &[f64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Componentwise strict `a < b`.
pub(crate) fn lt(a: &[f64], b: &[f64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).all(|(x, y)| x < y)
}

/// Volume of the anchored box `[0,y]`: the product of the coordinates.
pub fn volume(y: &Point) -> f64 {
    volume_of(y.coords())
}

pub(crate) fn volume_of(coords: &[f64]) -> f64 {
    coords.iter().product()
}

/// The anchored box `[0, upper]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnchoredBox {
    pub upper: Point,
}

impl AnchoredBox {
    pub fn new(upper: Point) -> Self {
        AnchoredBox { upper }
    }

    pub fn volume(&self) -> f64 {
        volume(&self.upper)
    }

    /// Closed-box membership: `z <= upper` componentwise.
    pub fn contains(&self, z: &Point) -> bool {
        leq(z.coords(), self.upper.coords())
    }
}

/// A finite point set in `[0,1]^s`: the object whose discrepancy is measured.
///
/// Invariants: N >= 1 and every point has dimension `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("dimension must be at least 1"));
        }
        if points.is_empty() {
            return Err(invalid("a point set needs at least one point"));
        }
        for (n, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(invalid(format!(
                    "point {n} has dimension {}, expected {dim}",
                    p.dim()
                )));
            }
        }
        Ok(PointSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points N.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // N >= 1 by construction
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    fn check_dim(&self, y: &Point) -> Result<()> {
        if y.dim() != self.dim {
            return Err(invalid(format!(
                "query point has dimension {}, point set has {}",
                y.dim(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Number of points in the closed box `[0,y]`.
    pub fn count_closed(&self, y: &Point) -> Result<usize> {
        self.check_dim(y)?;
        Ok(self.count_closed_raw(y.coords()))
    }

    /// Number of points in the open box `[0,y)` (strict on every axis).
    pub fn count_strict(&self, y: &Point) -> Result<usize> {
        self.check_dim(y)?;
        Ok(self.count_strict_raw(y.coords()))
    }

    pub(crate) fn count_closed_raw(&self, y: &[f64]) -> usize {
        self.points
            .iter()
            .filter(|p| leq(p.coords(), y))
            .count()
    }

    pub(crate) fn count_strict_raw(&self, y: &[f64]) -> usize {
        self.points
            .iter()
            .filter(|p| lt(p.coords(), y))
            .count()
    }
}

/// The set difference of nested anchored boxes, written `[lower, upper]`
/// with `lower <= upper` componentwise:
///
/// - `lower != 0`: the annulus `[0,upper] \ [0,lower]`,
///   measure `volume(upper) - volume(lower)`;
/// - `lower = 0, upper != 0`: the whole closed box `[0,upper]`,
///   measure `volume(upper)`;
/// - both zero: the empty set, measure 0.
///
/// The second case deliberately keeps the boundary of `[0,lower]`: chain
/// decompositions rely on consecutive differences being disjoint, and the
/// case split is exactly what makes that work.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxDifference {
    pub lower: Point,
    pub upper: Point,
}

impl BoxDifference {
    pub fn new(lower: Point, upper: Point) -> Result<Self> {
        if lower.dim() != upper.dim() {
            return Err(invalid(format!(
                "lower has dimension {}, upper has {}",
                lower.dim(),
                upper.dim()
            )));
        }
        if !leq(lower.coords(), upper.coords()) {
            return Err(Error::InvalidInput(
                "lower corner must be <= upper corner componentwise".into(),
            ));
        }
        Ok(BoxDifference { lower, upper })
    }

    /// Lebesgue measure per the three-way case split above.
    pub fn measure(&self) -> f64 {
        if self.lower.is_zero() {
            if self.upper.is_zero() {
                0.0
            } else {
                volume(&self.upper)
            }
        } else {
            volume(&self.upper) - volume(&self.lower)
        }
    }

    /// Membership matching the case split: empty when both corners are zero,
    /// the whole closed box when only `lower` is zero, the annulus otherwise.
    pub fn contains(&self, z: &Point) -> bool {
        debug_assert_eq!(z.dim(), self.upper.dim());
        if self.lower.is_zero() {
            !self.upper.is_zero() && leq(z.coords(), self.upper.coords())
        } else {
            leq(z.coords(), self.upper.coords()) && !leq(z.coords(), self.lower.coords())
        }
    }

    /// Number of points of `ps` inside this set.
    pub fn count_inside(&self, ps: &PointSet) -> Result<usize> {
        if ps.dim() != self.upper.dim() {
            return Err(invalid(format!(
                "point set has dimension {}, box difference has {}",
                ps.dim(),
                self.upper.dim()
            )));
        }
        Ok(ps.points().iter().filter(|p| self.contains(p)).count())
    }
}

/// Convenience for `box_difference_measure` as a free function.
pub fn box_difference_measure(d: &BoxDifference) -> f64 {
    d.measure()
}
