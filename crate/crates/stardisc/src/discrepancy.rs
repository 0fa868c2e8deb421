//! Exact star-discrepancy by critical-grid enumeration, and the delta-cover
//! approximation with its guaranteed bracket.
//!
//! Both methods maximize the same corner expression
//!
//!   max( count_closed(y)/N - volume(y),  volume(y) - count_strict(y)/N )
//!
//! over a finite grid of corners y. For the exact method the grid per axis
//! is the set of point coordinates plus 1; the closed/strict count pair is
//! what makes the finite maximum equal the supremum over the whole cube.
//! For the cover method the grid is the equidistant delta-cover, and the
//! maximum L satisfies L <= D* <= L + delta.
//!
//! Two evaluation strategies compute that maximum: a direct scan that counts
//! points per corner, and a histogram/prefix-sum scan that precomputes all
//! counts. They enumerate corners in the same order and build volumes with
//! the same operation sequence, so they are bit-identical in value and
//! witness; the strategy is picked by grid size alone.

use serde::Serialize;

use crate::budget::{check_budget_hint, saturating_pow};
use crate::covers::equidistant_m;
use crate::error::{invalid, Result};
use crate::geom::{volume, Point, PointSet};

/// How a discrepancy value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Cover,
}

/// A computed discrepancy value with its witness corner.
///
/// For `method = Cover` the true value lies in `[value, value + delta]`.
#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyResult {
    pub value: f64,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub witness: Point,
}

/// |count_closed(y)/N - volume(y)|, a pointwise lower bound for D*.
pub fn discrepancy_at(p: &PointSet, y: &Point) -> Result<f64> {
    let n = p.len() as f64;
    let count = p.count_closed(y)? as f64;
    Ok((count / n - volume(y)).abs())
}

/// Grids above this cell count fall back to the direct scan instead of
/// allocating histograms.
const PREFIX_CELL_CAP: u128 = 1 << 22;

/// The corner expression maximized over a grid, shared by both strategies.
#[inline]
fn corner_value(closed: usize, strict: usize, vol: f64, n: f64) -> f64 {
    let a = closed as f64 / n - vol;
    let b = vol - strict as f64 / n;
    if a > b {
        a
    } else {
        b
    }
}

/// Scans every corner of the axis-product grid in odometer order (last axis
/// fastest), keeping the first corner attaining the maximum. `counts` maps a
/// corner (as per-axis indices) to its (closed, strict) point counts.
///
/// Volumes are built left to right across axes so every strategy rounds
/// identically.
fn scan_corners(
    axes: &[Vec<f64>],
    n: f64,
    mut counts: impl FnMut(&[usize]) -> (usize, usize),
) -> (f64, Vec<f64>) {
    let s = axes.len();
    let mut idx = vec![0usize; s];
    // vols[d] is the product of the first d+1 corner coordinates; rebuilt
    // incrementally from the lowest changed axis.
    let mut vols = vec![0.0f64; s];
    let mut best = f64::NEG_INFINITY;
    let mut witness = vec![0.0f64; s];
    let mut dirty = 0usize; // lowest axis whose volume prefix is stale
    loop {
        for d in dirty..s {
            let prev = if d == 0 { 1.0 } else { vols[d - 1] };
            vols[d] = prev * axes[d][idx[d]];
        }
        let (closed, strict) = counts(&idx);
        let value = corner_value(closed, strict, vols[s - 1], n);
        if value > best {
            best = value;
            for (w, (axis, &i)) in witness.iter_mut().zip(axes.iter().zip(&idx)) {
                *w = axis[i];
            }
        }
        // Odometer step.
        let mut axis = s;
        loop {
            if axis == 0 {
                return (best, witness);
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < axes[axis].len() {
                break;
            }
            idx[axis] = 0;
        }
        dirty = axis;
    }
}

/// Direct per-corner counting: every corner iterates over all points.
fn grid_max_direct(p: &PointSet, axes: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let s = axes.len();
    let mut corner = vec![0.0f64; s];
    let points = p.points();
    let (value, witness) = scan_corners(axes, p.len() as f64, |idx| {
        for d in 0..s {
            corner[d] = axes[d][idx[d]];
        }
        let mut closed = 0usize;
        let mut strict = 0usize;
        for z in points {
            let zc = z.coords();
            let mut all_le = true;
            let mut all_lt = true;
            for d in 0..s {
                if zc[d] > corner[d] {
                    all_le = false;
                    all_lt = false;
                    break;
                }
                if zc[d] >= corner[d] {
                    all_lt = false;
                }
            }
            closed += all_le as usize;
            strict += all_lt as usize;
        }
        (closed, strict)
    });
    (value, witness)
}

/// Histogram strategy: bucket each point by the first grid index reaching it
/// per axis, then prefix-sum along every axis so each corner's counts are
/// two array lookups.
fn grid_max_prefix(p: &PointSet, axes: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let s = axes.len();
    // One extra bucket per axis for points beyond the last grid value.
    let dims: Vec<usize> = axes.iter().map(|a| a.len() + 1).collect();
    let total: usize = dims.iter().product();
    let mut strides = vec![1usize; s];
    for d in (0..s - 1).rev() {
        strides[d] = strides[d + 1] * dims[d + 1];
    }
    let mut closed = vec![0u32; total];
    let mut strict = vec![0u32; total];
    for z in p.points() {
        let zc = z.coords();
        let mut ci = 0usize;
        let mut si = 0usize;
        for d in 0..s {
            // First index i with axes[d][i] >= z_d: the corner count along
            // this axis starts including the point there.
            let a = axes[d].partition_point(|g| *g < zc[d]);
            // First index i with axes[d][i] > z_d: strict inclusion start.
            let b = axes[d].partition_point(|g| *g <= zc[d]);
            ci += a * strides[d];
            si += b * strides[d];
        }
        closed[ci] += 1;
        strict[si] += 1;
    }
    for d in 0..s {
        let stride = strides[d];
        let dim = dims[d];
        for flat in 0..total {
            if !(flat / stride).is_multiple_of(dim) {
                closed[flat] += closed[flat - stride];
                strict[flat] += strict[flat - stride];
            }
        }
    }
    scan_corners(axes, p.len() as f64, |idx| {
        let mut flat = 0usize;
        for d in 0..s {
            flat += idx[d] * strides[d];
        }
        (closed[flat] as usize, strict[flat] as usize)
    })
}

/// Maximizes the corner expression over the grid, choosing the strategy by
/// histogram size. Returns the value and the first (lexicographically
/// smallest) witness corner.
fn grid_max(p: &PointSet, axes: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let cells: u128 = axes.iter().map(|a| a.len() as u128 + 1).product();
    if cells <= PREFIX_CELL_CAP {
        grid_max_prefix(p, axes)
    } else {
        grid_max_direct(p, axes)
    }
}

/// Per-axis critical values: the distinct point coordinates plus 1.
fn critical_axes(p: &PointSet) -> Vec<Vec<f64>> {
    let s = p.dim();
    let mut axes = Vec::with_capacity(s);
    for d in 0..s {
        let mut vals: Vec<f64> = p.points().iter().map(|z| z.coords()[d]).collect();
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        if *vals.last().expect("point sets are nonempty") != 1.0 {
            vals.push(1.0);
        }
        axes.push(vals);
    }
    axes
}

/// Exact star-discrepancy: the supremum over all anchored boxes of
/// |fraction inside - volume|, attained on the critical grid.
///
/// Work is bounded by (N+1)^s * N * s; requests above `budget` are refused.
pub fn star_discrepancy_exact(p: &PointSet, budget: u64) -> Result<DiscrepancyResult> {
    let n = p.len() as u128;
    let s = p.dim() as u32;
    let required = saturating_pow(n + 1, s)
        .saturating_mul(n)
        .saturating_mul(s as u128);
    check_budget_hint(
        required,
        budget,
        "; the cover method brackets the value at much lower cost",
    )?;
    let axes = critical_axes(p);
    let (value, witness) = grid_max(p, &axes);
    Ok(DiscrepancyResult {
        value,
        method: Method::Exact,
        delta: None,
        witness: Point::new(witness)?,
    })
}

/// Cover approximation: maximizes the same expression over the equidistant
/// delta-cover. The returned L satisfies L <= D* <= L + delta.
pub fn star_discrepancy_cover(p: &PointSet, delta: f64, budget: u64) -> Result<DiscrepancyResult> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(invalid(format!("delta is {delta}, must be in (0,1]")));
    }
    let s = p.dim();
    let m = equidistant_m(s, delta)?;
    let required = saturating_pow(m as u128, s as u32)
        .saturating_mul(p.len() as u128)
        .saturating_mul(s as u128);
    check_budget_hint(
        required,
        budget,
        "; increase delta to shrink the cover grid",
    )?;
    let mf = m as f64;
    let axis: Vec<f64> = (1..=m).map(|i| i as f64 / mf).collect();
    let axes: Vec<Vec<f64>> = (0..s).map(|_| axis.clone()).collect();
    let (value, witness) = grid_max(p, &axes);
    Ok(DiscrepancyResult {
        value,
        method: Method::Cover,
        delta: Some(delta),
        witness: Point::new(witness)?,
    })
}
