//! Sampling the transversal of the hull, proximality and separation probes,
//! and patch forcing.
//!
//! Hull elements are only ever the exact translates `Λ − x` with `x ∈ Λ`.
//! Every probe here samples; none certifies a statement about the hull.

use alloc::vec::Vec;

use crate::geometry::{augmented_distance, Ball, FinitePointSet, Point};
use crate::sources::{ensure_covered, materialize, patches_equivalent, r_patch, recentered, DeloneSource, Translate, QUERY_SLACK};
use crate::{Error, Patch, Result, MEMBERSHIP_TOL};

/// Pitch of the coarse grid added to the proximality candidates.
pub const PROXIMALITY_GRID_PITCH: f64 = 0.1;

fn require_line<S: DeloneSource + ?Sized>(src: &S) -> Result<()> {
    match src.dim() {
        1 => Ok(()),
        d => Err(Error::UnsupportedDim(d)),
    }
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(alloc::format!("{name} must be positive, got {v}")))
    }
}

/// A finite sample `{Λ − x : x ∈ offsets}` of the transversal.
#[derive(Clone, Debug)]
pub struct HullSample<S> {
    pub base: S,
    /// Points of the base set, nearest to the origin first.
    pub offsets: Vec<Point>,
    pub window: Ball,
}

impl<S: DeloneSource> HullSample<S> {
    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// The element `Λ − offsets[i]`, which contains 0.
    pub fn translate(&self, i: usize) -> Translate<&S> {
        Translate::new(&self.base, self.offsets[i]).expect("offsets share the base dimension")
    }
}

/// The `count` points of `Λ ∩ window` of smallest `|x|` (ties to the smaller
/// coordinate), each taken as the offset of a translate.
pub fn hull_transversal_sample<S: DeloneSource>(src: S, window: &Ball, count: usize) -> Result<HullSample<S>> {
    let pts = materialize(&src, window)?;
    if count > pts.len() {
        return Err(Error::CountTooLarge {
            requested: count,
            available: pts.len(),
        });
    }
    let mut offsets: Vec<Point> = pts.points().to_vec();
    offsets.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then_with(|| a.lex_cmp(b)));
    offsets.truncate(count);
    Ok(HullSample {
        base: src,
        offsets,
        window: *window,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProximalityReport {
    pub r: f64,
    pub t_window: Ball,
    /// `min_t d_H(B_r[e1 − t] ∪ ∂B_r, B_r[e2 − t] ∪ ∂B_r)` over the candidates.
    pub inf_estimate: f64,
    pub argmin_t: Point,
}

fn require_origin(pts: &FinitePointSet) -> Result<()> {
    if pts.contains_within(&Point::on_line(0.0), MEMBERSHIP_TOL) {
        Ok(())
    } else {
        Err(Error::AnchorNotInSet)
    }
}

/// Upper bound on how close the orbits of `e1` and `e2` come for shifts in
/// `t_window`, measured by `r`-patch distance.
///
/// Candidate shifts are the points of either set in the window together with
/// a grid of pitch [`PROXIMALITY_GRID_PITCH`]. The minimum goes to the
/// smallest candidate attaining it.
pub fn proximality_probe<A, B>(e1: &A, e2: &B, t_window: &Ball, r: f64) -> Result<ProximalityReport>
where
    A: DeloneSource + ?Sized,
    B: DeloneSource + ?Sized,
{
    require_line(e1)?;
    require_line(e2)?;
    require_positive("r", r)?;
    let outer = t_window.enlarged(r + QUERY_SLACK);
    ensure_covered(e1, &outer)?;
    ensure_covered(e2, &outer)?;
    let m1 = materialize(e1, &outer)?;
    let m2 = materialize(e2, &outer)?;
    require_origin(&m1)?;
    require_origin(&m2)?;

    let (lo, hi) = t_window.bounds();
    let mut candidates: Vec<f64> = m1
        .restrict(t_window)
        .iter()
        .chain(m2.restrict(t_window).iter())
        .map(|p| p.x())
        .collect();
    let steps = libm::floor((hi - lo) / PROXIMALITY_GRID_PITCH + 1e-9) as i64;
    candidates.extend((0..=steps).map(|k| lo + k as f64 * PROXIMALITY_GRID_PITCH));
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let mut best = (f64::INFINITY, lo);
    for t in candidates {
        let at = Point::on_line(t);
        let d = augmented_distance(&recentered(&m1, at, r), &recentered(&m2, at, r), r);
        if d < best.0 {
            best = (d, t);
        }
    }
    Ok(ProximalityReport {
        r,
        t_window: *t_window,
        inf_estimate: best.0,
        argmin_t: Point::on_line(best.1),
    })
}

/// Radius `2R + √f + 1` of the compact set separating distinct transversal
/// elements of a Delone set with covering radius `R` in `ℝⁿ × ℤ^f`.
pub fn separation_radius(r: f64, f: u32) -> f64 {
    2.0 * r + libm::sqrt(f as f64) + 1.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeparationOutcome {
    /// A common point at which the two patches differ.
    Found(Point),
    /// No such point within the search window.
    NotFound,
}

/// The common point `v ∈ e1 ∩ e2` of smallest `|v|` at which the
/// `c_radius`-patches of `e1` and `e2` are not equivalent at `tol`.
pub fn find_separating_anchor<A, B>(
    e1: &A,
    e2: &B,
    c_radius: f64,
    search_window: &Ball,
    tol: f64,
) -> Result<SeparationOutcome>
where
    A: DeloneSource + ?Sized,
    B: DeloneSource + ?Sized,
{
    require_line(e1)?;
    require_line(e2)?;
    require_positive("c_radius", c_radius)?;
    if !(tol >= 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("tol must be nonnegative, got {tol}")));
    }
    let outer = search_window.enlarged(c_radius + tol + QUERY_SLACK);
    ensure_covered(e1, &outer)?;
    ensure_covered(e2, &outer)?;
    let m1 = materialize(e1, &outer)?;
    let m2 = materialize(e2, &outer)?;
    require_origin(&m1)?;
    require_origin(&m2)?;
    if patches_equivalent(&m1.restrict(search_window), &m2.restrict(search_window), tol) {
        return Err(Error::NotDistinct);
    }

    let mut common: Vec<Point> = m1
        .restrict(search_window)
        .iter()
        .copied()
        .filter(|v| m2.dist_to(v) <= tol)
        .collect();
    common.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then_with(|| a.lex_cmp(b)));
    for v in common {
        let p1 = recentered(&m1, v, c_radius);
        let p2 = recentered(&m2, v, c_radius);
        if !patches_equivalent(&p1, &p2, tol) {
            return Ok(SeparationOutcome::Found(v));
        }
    }
    Ok(SeparationOutcome::NotFound)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ForcingReport {
    pub patch: Patch,
    pub extension_radius: f64,
    /// No counterexample in the sample. Not a proof of forcing.
    pub forced: bool,
    /// Offsets of two translates sharing the patch at 0 but disagreeing on
    /// the extension ball.
    pub counterexample: Option<(Point, Point)>,
}

/// Whether `Λ − a` and `Λ − b` carry `patch` at the origin but differ on
/// `B_extension(0)`, both tests at `tol`.
pub fn is_forcing_counterexample<S: DeloneSource + ?Sized>(
    src: &S,
    patch: &Patch,
    a: Point,
    b: Point,
    extension: f64,
    tol: f64,
) -> Result<bool> {
    let around = |x: Point, radius: f64| -> Result<FinitePointSet> {
        let raw = src.points_in(&Ball::interval(x.x(), radius + tol + QUERY_SLACK))?;
        Ok(recentered(&raw, x, radius))
    };
    let carries = |x: Point| -> Result<bool> { Ok(patches_equivalent(&around(x, patch.radius)?, &patch.points, tol)) };
    Ok(carries(a)? && carries(b)? && !patches_equivalent(&around(a, extension)?, &around(b, extension)?, tol))
}

/// Looks among the sample for translates that carry the `r`-patch of `src`
/// at `anchor` at their origin, and checks whether they all agree out to
/// `extension`.
pub fn patch_forcing_probe<S, T>(
    src: &S,
    anchor: Point,
    r: f64,
    extension: f64,
    sample: &HullSample<T>,
    tol: f64,
) -> Result<ForcingReport>
where
    S: DeloneSource + ?Sized,
    T: DeloneSource,
{
    require_line(src)?;
    require_positive("r", r)?;
    if !(extension > r) || !extension.is_finite() {
        return Err(Error::InvalidParameter(alloc::format!(
            "extension {extension} must exceed r = {r}"
        )));
    }
    if !(tol >= 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("tol must be nonnegative, got {tol}")));
    }
    let patch = r_patch(src, anchor, r)?;
    let base = &sample.base;
    let around = |x: Point, radius: f64| -> Result<FinitePointSet> {
        let raw = base.points_in(&Ball::interval(x.x(), radius + tol + QUERY_SLACK))?;
        Ok(recentered(&raw, x, radius))
    };
    let mut reference: Option<(Point, FinitePointSet)> = None;
    let mut counterexample = None;
    for x in &sample.offsets {
        if !patches_equivalent(&around(*x, r)?, &patch.points, tol) {
            continue;
        }
        let ext = around(*x, extension)?;
        match &reference {
            None => reference = Some((*x, ext)),
            Some((x0, ext0)) => {
                if !patches_equivalent(ext0, &ext, tol) {
                    counterexample = Some((*x0, *x));
                    break;
                }
            }
        }
    }
    if reference.is_none() {
        return Err(Error::PatchNotFound);
    }
    Ok(ForcingReport {
        patch,
        extension_radius: extension,
        forced: counterexample.is_none(),
        counterexample,
    })
}
