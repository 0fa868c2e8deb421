//! Delta-covers, bracketing covers, the dyadic chain decomposition, and
//! cardinality bound calculators.
//!
//! The constructions here are the simple equidistant ones: an axis grid of
//! M = ceil(s/delta) cells. Validity is immediate from the coordinate-sum
//! bound volume(z) - volume(x) <= sum_i (z_i - x_i) <= s/M <= delta. The
//! cardinality bound calculators describe what optimal covers achieve; the
//! equidistant construction makes no optimality claim and its M^s size is
//! not expected to satisfy those bounds.
//!
//! Measure bounds hold exactly in real arithmetic. In floating point the
//! grids for s in {1,2} are dyadic and all asserted quantities stay exact at
//! test scale; coarser claims for other s hold to rounding error.

use serde::Serialize;

use crate::budget::{check_budget, saturating_pow};
use crate::error::{invalid, Result};
use crate::geom::{leq, volume, BoxDifference, Point, PointSet};

const LN_2E: f64 = std::f64::consts::LN_2 + 1.0; // ln(2e)

/// A cardinality bound kept in log-space so it survives large dimensions,
/// with the direct value alongside (infinite once it overflows).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CardinalityBound {
    pub log_value: f64,
    pub value: f64,
}

impl CardinalityBound {
    fn from_log(log_value: f64) -> Self {
        CardinalityBound {
            log_value,
            value: log_value.exp(),
        }
    }
}

fn check_s(s: usize) -> Result<()> {
    if s == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    Ok(())
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(invalid(format!("delta is {delta}, must be in (0,1]")));
    }
    Ok(())
}

/// Upper bound on the smallest delta-cover cardinality:
/// (2e)^s (1/delta + 1)^s.
pub fn cover_cardinality_bound(s: usize, delta: f64) -> Result<CardinalityBound> {
    check_s(s)?;
    check_delta(delta)?;
    let sf = s as f64;
    Ok(CardinalityBound::from_log(
        sf * LN_2E + sf * (1.0 / delta + 1.0).ln(),
    ))
}

/// Upper bound on the smallest delta-bracketing-cover cardinality:
/// 2^(s-1) e^s (1/delta + 1)^s.
pub fn bracketing_cardinality_bound(s: usize, delta: f64) -> Result<CardinalityBound> {
    check_s(s)?;
    check_delta(delta)?;
    let sf = s as f64;
    Ok(CardinalityBound::from_log(
        (sf - 1.0) * std::f64::consts::LN_2 + sf + sf * (1.0 / delta + 1.0).ln(),
    ))
}

/// Upper bound on the k-th chain class cardinality: (2e)^s (2^(k+1) + 1)^s.
pub fn class_cardinality_bound(s: usize, k: u32) -> Result<CardinalityBound> {
    check_s(s)?;
    let sf = s as f64;
    let pow = f64::exp2((k + 1) as f64);
    Ok(CardinalityBound::from_log(sf * LN_2E + sf * (pow + 1.0).ln()))
}

/// Grids finer than 2^53 cells lose the ability to represent distinct cell
/// corners as doubles; refuse them.
const MAX_CELLS_PER_AXIS: u64 = 1 << 53;

/// Cells per axis of the equidistant delta-cover: ceil(s/delta).
pub fn equidistant_m(s: usize, delta: f64) -> Result<u64> {
    check_s(s)?;
    check_delta(delta)?;
    let m = (s as f64 / delta).ceil();
    if !m.is_finite() || m > MAX_CELLS_PER_AXIS as f64 {
        return Err(invalid(format!(
            "delta {delta} needs more than 2^53 grid cells per axis in dimension {s}"
        )));
    }
    Ok(m as u64)
}

/// Cells per axis at chain level k: s * 2^k, computed in integers.
fn chain_m(s: usize, k: u32) -> Result<u64> {
    let m = (s as u128) << k;
    if m > MAX_CELLS_PER_AXIS as u128 {
        return Err(invalid(format!(
            "chain level {k} needs more than 2^53 grid cells per axis in dimension {s}"
        )));
    }
    Ok(m as u64)
}

/// Largest value of {0} ∪ {i/m : 1 <= i <= m} that is <= v.
///
/// The fixup loops pin down boundary cases exactly even when v*m rounds
/// across an integer.
pub(crate) fn grid_floor(v: f64, m: u64) -> f64 {
    let mf = m as f64;
    let mut i = ((v * mf).floor() as i64).clamp(0, m as i64);
    while i > 0 && (i as f64) / mf > v {
        i -= 1;
    }
    while (i as u64) < m && ((i + 1) as f64) / mf <= v {
        i += 1;
    }
    (i as f64) / mf
}

/// Smallest member i/m (1 <= i <= m) that is >= v, for v in [0,1].
///
/// Never returns 0: the cover members start at 1/m, and 1/m covers
/// everything below it.
pub(crate) fn grid_ceil(v: f64, m: u64) -> f64 {
    let mf = m as f64;
    let mut i = ((v * mf).ceil() as i64).clamp(1, m as i64);
    while i > 1 && ((i - 1) as f64) / mf >= v {
        i -= 1;
    }
    while (i as u64) < m && (i as f64) / mf < v {
        i += 1;
    }
    (i as f64) / mf
}

/// Per-axis cell index of y in the m-cell grid: half-open cells
/// [i/m, (i+1)/m) except the last, which is closed.
pub(crate) fn containing_cell(y: &[f64], m: u64) -> Vec<u64> {
    let mf = m as f64;
    y.iter()
        .map(|&v| {
            let mut i = ((v * mf).floor() as i64).clamp(0, m as i64 - 1);
            while i > 0 && (i as f64) / mf > v {
                i -= 1;
            }
            while (i as u64) < m - 1 && ((i + 1) as f64) / mf <= v {
                i += 1;
            }
            i as u64
        })
        .collect()
}

/// A finite set of corner points such that every y in the cube is sandwiched
/// between members (with 0 allowed below) whose box volumes differ by at
/// most delta.
#[derive(Debug, Clone, Serialize)]
pub struct DeltaCover {
    pub delta: f64,
    pub dim: usize,
    /// Cells per axis; cardinality is m^dim.
    pub m: u64,
    pub members: Vec<Point>,
}

impl DeltaCover {
    /// The floor/ceiling sandwich (x, z) with x <= y <= z and
    /// volume(z) - volume(x) <= delta. x may be the zero point.
    pub fn sandwich(&self, y: &Point) -> Result<(Point, Point)> {
        if y.dim() != self.dim {
            return Err(invalid("dimension mismatch"));
        }
        let lower: Vec<f64> = y.coords().iter().map(|&v| grid_floor(v, self.m)).collect();
        let upper: Vec<f64> = y.coords().iter().map(|&v| grid_ceil(v, self.m)).collect();
        Ok((Point::new(lower)?, Point::new(upper)?))
    }
}

/// One bracket of a bracketing cover: lower <= upper componentwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bracket {
    pub lower: Point,
    pub upper: Point,
}

/// A finite family of brackets that covers the cube, each with box-volume
/// gap at most delta.
#[derive(Debug, Clone, Serialize)]
pub struct BracketingCover {
    pub delta: f64,
    pub dim: usize,
    pub m: u64,
    pub brackets: Vec<Bracket>,
}

impl BracketingCover {
    /// The unique cell bracket containing y (half-open cells, last closed).
    pub fn containing_bracket(&self, y: &Point) -> Result<&Bracket> {
        if y.dim() != self.dim {
            return Err(invalid("dimension mismatch"));
        }
        let cell = containing_cell(y.coords(), self.m);
        let mut flat: usize = 0;
        for &c in &cell {
            flat = flat * self.m as usize + c as usize;
        }
        Ok(&self.brackets[flat])
    }
}

/// Runs f over every cell index vector of the m^s grid in odometer order
/// (last axis fastest), matching the bracket storage order.
fn for_each_cell(s: usize, m: u64, mut f: impl FnMut(&[u64])) {
    let mut idx = vec![0u64; s];
    loop {
        f(&idx);
        let mut axis = s;
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < m {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// The equidistant delta-cover: all grid corners (i_1/M, ..., i_s/M) with
/// 1 <= i_j <= M and M = ceil(s/delta).
pub fn equidistant_cover(s: usize, delta: f64, budget: u64) -> Result<DeltaCover> {
    let m = equidistant_m(s, delta)?;
    check_budget(saturating_pow(m as u128, s as u32), budget)?;
    let mf = m as f64;
    let mut members = Vec::with_capacity((m as usize).pow(s as u32));
    for_each_cell(s, m, |idx| {
        let coords: Vec<f64> = idx.iter().map(|&i| (i + 1) as f64 / mf).collect();
        members.push(Point::new(coords).expect("grid corner in [0,1]"));
    });
    Ok(DeltaCover {
        delta,
        dim: s,
        m,
        members,
    })
}

/// The equidistant delta-bracketing cover: the M^s cells of the same grid,
/// each as a (lower corner, upper corner) bracket.
pub fn equidistant_bracketing_cover(s: usize, delta: f64, budget: u64) -> Result<BracketingCover> {
    let m = equidistant_m(s, delta)?;
    check_budget(saturating_pow(m as u128, s as u32), budget)?;
    let mf = m as f64;
    let mut brackets = Vec::with_capacity((m as usize).pow(s as u32));
    for_each_cell(s, m, |idx| {
        let lower: Vec<f64> = idx.iter().map(|&i| i as f64 / mf).collect();
        let upper: Vec<f64> = idx.iter().map(|&i| (i + 1) as f64 / mf).collect();
        brackets.push(Bracket {
            lower: Point::new(lower).expect("grid corner in [0,1]"),
            upper: Point::new(upper).expect("grid corner in [0,1]"),
        });
    });
    Ok(BracketingCover {
        delta,
        dim: s,
        m,
        brackets,
    })
}

/// The dyadic chain p_0, p_1, ..., p_K, p_{K+1} for a query point x:
/// p_0 = 0, p_K <= x <= p_{K+1}, each coarser point is the componentwise
/// floor of the next onto its level's grid, and the box difference between
/// consecutive points has measure at most 2^(-k).
#[derive(Debug, Clone, Serialize)]
pub struct ChainDecomposition {
    pub k: usize,
    pub x: Point,
    /// chain[i] is p_i; length k + 2.
    pub chain: Vec<Point>,
}

impl ChainDecomposition {
    /// The K+1 box differences between consecutive chain points.
    pub fn boxes(&self) -> Vec<BoxDifference> {
        self.chain
            .windows(2)
            .map(|w| {
                BoxDifference::new(w[0].clone(), w[1].clone())
                    .expect("chain points are nested by construction")
            })
            .collect()
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(invalid("chain depth K must be at least 1"));
    }
    Ok(())
}

/// Total cell count of the level-1..=K grids; the stated capacity measure
/// for chain construction.
fn chain_budget_requirement(s: usize, k: usize) -> Result<u128> {
    let mut total: u128 = 0;
    for level in 1..=k {
        let m = chain_m(s, level as u32)?;
        total = total.saturating_add(saturating_pow(m as u128, s as u32));
    }
    Ok(total)
}

/// Floors every coordinate of p onto the level grid (members ∪ {0}).
fn floor_onto_level(p: &Point, s: usize, level: u32) -> Result<Point> {
    let m = chain_m(s, level)?;
    Point::new(p.coords().iter().map(|&v| grid_floor(v, m)).collect())
}

/// Propagates a chain downward from its two topmost points p_K and p_{K+1}.
fn chain_from_top(s: usize, k: usize, p_k: Point, p_k1: Point) -> Result<Vec<Point>> {
    let mut chain = vec![p_k1, p_k];
    for level in (1..k).rev() {
        let next = floor_onto_level(chain.last().expect("nonempty"), s, level as u32)?;
        chain.push(next);
    }
    chain.push(Point::zero(s)?);
    chain.reverse();
    Ok(chain)
}

/// Builds the chain decomposition of x at depth K.
///
/// The top pair is the componentwise floor/ceiling of x onto the level-K
/// grid, so a grid-aligned x is its own p_K and p_{K+1}.
pub fn build_chain(x: &Point, k: usize, budget: u64) -> Result<ChainDecomposition> {
    check_k(k)?;
    let s = x.dim();
    check_budget(chain_budget_requirement(s, k)?, budget)?;
    let m_top = chain_m(s, k as u32)?;
    let p_top = Point::new(x.coords().iter().map(|&v| grid_floor(v, m_top)).collect())?;
    let p_top1 = Point::new(x.coords().iter().map(|&v| grid_ceil(v, m_top)).collect())?;
    let chain = chain_from_top(s, k, p_top, p_top1)?;
    Ok(ChainDecomposition {
        k,
        x: x.clone(),
        chain,
    })
}

/// Counts points of P in each chain box of x and checks the sandwich
///
///   sum_{k=0}^{K-1} |P ∩ boxes[k]|  <=  |P ∩ [0,x]|  <=  sum_{k=0}^{K} |P ∩ boxes[k]|
///
/// Returns (lower, mid, upper).
///
/// Panics if the inequality fails; the construction guarantees it, so a
/// failure is an implementation bug, not bad input.
pub fn sandwich_check(
    p: &PointSet,
    x: &Point,
    k: usize,
    budget: u64,
) -> Result<(usize, usize, usize)> {
    if p.dim() != x.dim() {
        return Err(invalid("dimension mismatch"));
    }
    let chain = build_chain(x, k, budget)?;
    let boxes = chain.boxes();
    let counts: Vec<usize> = boxes
        .iter()
        .map(|b| b.count_inside(p))
        .collect::<Result<_>>()?;
    let lower: usize = counts[..k].iter().sum();
    let mid = p.count_closed(x)?;
    let upper: usize = counts.iter().sum();
    assert!(
        lower <= mid && mid <= upper,
        "sandwich violated: {lower} <= {mid} <= {upper} for x={:?}",
        x.coords()
    );
    Ok((lower, mid, upper))
}

/// Collects the distinct box differences (p_k, p_{k+1}) that arise when the
/// chain is propagated down from every cell of the level-K bracketing cover.
/// Returns the K+1 classes A_0, ..., A_K, each sorted by corner coordinates.
pub fn enumerate_chain_classes(
    s: usize,
    k: usize,
    budget: u64,
) -> Result<Vec<Vec<BoxDifference>>> {
    check_s(s)?;
    check_k(k)?;
    let m_top = chain_m(s, k as u32)?;
    check_budget(
        chain_budget_requirement(s, k)?.saturating_add(saturating_pow(m_top as u128, s as u32)),
        budget,
    )?;

    // Bit patterns of non-negative doubles order like the values, so a
    // BTreeSet of them both dedups and sorts.
    let mut classes: Vec<std::collections::BTreeSet<(Vec<u64>, Vec<u64>)>> =
        (0..=k).map(|_| Default::default()).collect();
    let mf = m_top as f64;
    for_each_cell(s, m_top, |idx| {
        let lower: Vec<f64> = idx.iter().map(|&i| i as f64 / mf).collect();
        let upper: Vec<f64> = idx.iter().map(|&i| (i + 1) as f64 / mf).collect();
        let chain = chain_from_top(
            s,
            k,
            Point::new(lower).expect("grid corner in [0,1]"),
            Point::new(upper).expect("grid corner in [0,1]"),
        )
        .expect("levels already budget-checked");
        for (level, w) in chain.windows(2).enumerate() {
            classes[level].insert((bits(&w[0]), bits(&w[1])));
        }
    });

    Ok(classes
        .into_iter()
        .map(|set| {
            set.into_iter()
                .map(|(lo, hi)| {
                    BoxDifference::new(from_bits(&lo), from_bits(&hi))
                        .expect("chain corners are nested")
                })
                .collect()
        })
        .collect())
}

fn bits(p: &Point) -> Vec<u64> {
    p.coords().iter().map(|c| c.to_bits()).collect()
}

fn from_bits(bits: &[u64]) -> Point {
    Point::new(bits.iter().map(|&b| f64::from_bits(b)).collect()).expect("round trip")
}

/// Validity helper used by tests and the cover-construction smoke checks:
/// true iff x <= y <= z and volume(z) - volume(x) <= delta + tol.
pub fn sandwiched_within(x: &Point, y: &Point, z: &Point, delta: f64, tol: f64) -> bool {
    leq(x.coords(), y.coords())
        && leq(y.coords(), z.coords())
        && volume(z) - volume(x) <= delta + tol
}
