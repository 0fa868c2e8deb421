//! Star-discrepancy toolkit.
//!
//! Measures how uniformly a finite point set fills the unit cube and makes a
//! family of probabilistic uniformity guarantees executable:
//!
//! - [`geom`]: points, anchored boxes, box differences, counting and volume
//!   primitives with exact floating-point comparison semantics.
//! - [`discrepancy`]: exact star-discrepancy by critical-grid enumeration and
//!   a delta-cover approximation with a guaranteed error bracket.
//! - [`covers`]: equidistant delta-covers and bracketing covers, the dyadic
//!   chain decomposition, and cardinality bound calculators.
//! - [`bounds`]: tail inequalities, the probabilistic discrepancy bound and
//!   its coefficient table, inverse-discrepancy calculators, and an auditor
//!   that re-checks every inequality of the bound's constant chain.
//! - [`montecarlo`]: seeded, reproducible experiments that empirically verify
//!   the probability guarantee.
//! - [`io`]: the point-set and bracket text file formats.
//!
//! All computation is pure and deterministic; concurrency is confined to the
//! Monte Carlo trial fan-out, which is bit-stable by construction.

pub mod bounds;
pub mod budget;
pub mod covers;
pub mod discrepancy;
pub mod error;
pub mod geom;
pub mod io;
pub mod montecarlo;

pub use error::{Error, Result};
pub use geom::{AnchoredBox, BoxDifference, Point, PointSet};
