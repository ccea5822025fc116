//! Refinement by bisection: on every leaf the mean lies between the midpoint
//! value and `N(1/4, 1/2)`, and the leaf enclosures combine length-weighted.
//! Each split shrinks a leaf's width roughly fourfold for smooth integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{ConvexityProfile, Enclosure, Interval};
use crate::error::{Error, Result};
use crate::expr::Expression;

/// Largest number of leaves [`adaptive_enclosure`] will create.
pub const MAX_LEAVES: usize = 1 << 20;

#[derive(Debug, Clone, Copy)]
struct Leaf {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
}

impl Leaf {
    fn enclosure(&self) -> Enclosure {
        Enclosure::new(self.fm, 0.25 * (self.fa + self.fb) + 0.5 * self.fm)
    }

    /// Width contribution to the aggregate, before dividing by the total length.
    fn weighted_width(&self) -> f64 {
        (self.b - self.a) * self.enclosure().width()
    }

    fn split(&self, f: &Expression) -> Result<(Leaf, Leaf)> {
        let m = 0.5 * (self.a + self.b);
        let fl = f.eval(0.5 * (self.a + m))?;
        let fr = f.eval(0.5 * (m + self.b))?;
        Ok((
            Leaf { a: self.a, b: m, fa: self.fa, fm: fl, fb: self.fm },
            Leaf { a: m, b: self.b, fa: self.fm, fm: fr, fb: self.fb },
        ))
    }
}

/// Heap entry: widest contribution first, leftmost on ties.
struct Widest(Leaf, f64);

impl PartialEq for Widest {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Widest {}
impl PartialOrd for Widest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Widest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.1.total_cmp(&other.1).then_with(|| other.0.a.total_cmp(&self.0.a))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveEnclosure {
    pub enclosure: Enclosure,
    pub leaves: usize,
    pub evaluations: usize,
}

fn aggregate(leaves: &mut [Leaf], iv: Interval) -> Enclosure {
    leaves.sort_by(|l, r| l.a.total_cmp(&r.a));
    let w = iv.width();
    let (mut lo, mut hi) = (0.0, 0.0);
    for leaf in leaves.iter() {
        let e = leaf.enclosure();
        let share = (leaf.b - leaf.a) / w;
        lo += share * e.lower;
        hi += share * e.upper;
    }
    Enclosure::new(lo, hi)
}

fn root_leaf(f: &Expression, iv: Interval) -> Result<Leaf> {
    Ok(Leaf { a: iv.a(), b: iv.b(), fa: f.eval(iv.a())?, fm: f.eval(iv.mid())?, fb: f.eval(iv.b())? })
}

/// Enclosure of the mean of a convex `f`, refined greedily (widest leaf
/// first) until its width is at most `tol`.
pub fn adaptive_enclosure(
    f: &Expression,
    iv: Interval,
    tol: f64,
    prof: &ConvexityProfile,
) -> Result<AdaptiveEnclosure> {
    if !prof.is_convex() {
        return Err(Error::Hypothesis("integrand is not profiled convex"));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Tolerance(tol));
    }
    let root = root_leaf(f, iv)?;
    let mut evaluations = 3;
    let mut heap = BinaryHeap::new();
    let mut running = root.weighted_width();
    heap.push(Widest(root, running));
    let target = tol * iv.width();

    loop {
        if running <= target {
            let mut leaves: Vec<Leaf> = heap.iter().map(|w| w.0).collect();
            let enclosure = aggregate(&mut leaves, iv);
            if enclosure.width() <= tol {
                return Ok(AdaptiveEnclosure { enclosure, leaves: leaves.len(), evaluations });
            }
            // Accumulated drift in the running sum; resynchronize.
            running = leaves.iter().map(Leaf::weighted_width).sum();
            if running <= target {
                running = target * (1.0 + f64::EPSILON) + f64::MIN_POSITIVE;
            }
        }
        if heap.len() >= MAX_LEAVES {
            return Err(Error::BudgetExceeded(MAX_LEAVES));
        }
        let Widest(leaf, width) = heap.pop().expect("heap is never empty");
        let (l, r) = leaf.split(f)?;
        evaluations += 2;
        let (wl, wr) = (l.weighted_width(), r.weighted_width());
        running += wl + wr - width;
        heap.push(Widest(l, wl));
        heap.push(Widest(r, wr));
    }
}

/// Uniform refinement to `depth` bisection levels (`2^depth` leaves).
pub fn bisection_enclosure(f: &Expression, iv: Interval, depth: u32) -> Result<Enclosure> {
    if depth > 20 {
        return Err(Error::InvalidArgument(format!("depth {depth} exceeds 20")));
    }
    let mut leaves = vec![root_leaf(f, iv)?];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(2 * leaves.len());
        for leaf in &leaves {
            let (l, r) = leaf.split(f)?;
            next.push(l);
            next.push(r);
        }
        leaves = next;
    }
    Ok(aggregate(&mut leaves, iv))
}
