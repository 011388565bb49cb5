//! Implicitly infinite point sets queried by window, their patches, and the
//! structural checks that only need window queries: the Delone property,
//! the local-complexity census and exact periods.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::geometry::{largest_interior_gap, min_pair_separation, Ball, FinitePointSet, Point};
use crate::{Error, Result, MEMBERSHIP_TOL};

/// Extra radius used when a query must not lose points to rounding at the
/// window edge. The result is always filtered back to the exact window.
pub(crate) const QUERY_SLACK: f64 = 1e-9;

/// Bounds a source knows about itself without materializing anything.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DeclaredBounds {
    /// A lower bound on the packing radius.
    pub r_min_lower: Option<f64>,
    /// An upper bound on the covering radius.
    pub r_max_upper: Option<f64>,
}

/// A point set that is only available through window queries.
///
/// Implementations must be consistent (a query of a sub-ball returns the
/// restriction of the larger query) and deterministic.
pub trait DeloneSource {
    fn dim(&self) -> usize;

    /// All points in the closed ball, sorted.
    fn points_in(&self, window: &Ball) -> Result<FinitePointSet>;

    fn declared_bounds(&self) -> DeclaredBounds {
        DeclaredBounds::default()
    }

    fn label(&self) -> String {
        String::new()
    }

    /// Region outside of which the source has no data, if any. Analyses that
    /// need points beyond this region fail with a margin error.
    fn extent(&self) -> Option<Ball> {
        None
    }
}

impl<S: DeloneSource + ?Sized> DeloneSource for &S {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn points_in(&self, window: &Ball) -> Result<FinitePointSet> {
        (**self).points_in(window)
    }
    fn declared_bounds(&self) -> DeclaredBounds {
        (**self).declared_bounds()
    }
    fn label(&self) -> String {
        (**self).label()
    }
    fn extent(&self) -> Option<Ball> {
        (**self).extent()
    }
}

impl<S: DeloneSource + ?Sized> DeloneSource for Box<S> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn points_in(&self, window: &Ball) -> Result<FinitePointSet> {
        (**self).points_in(window)
    }
    fn declared_bounds(&self) -> DeclaredBounds {
        (**self).declared_bounds()
    }
    fn label(&self) -> String {
        (**self).label()
    }
    fn extent(&self) -> Option<Ball> {
        (**self).extent()
    }
}

impl<S: DeloneSource + ?Sized> DeloneSource for Arc<S> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn points_in(&self, window: &Ball) -> Result<FinitePointSet> {
        (**self).points_in(window)
    }
    fn declared_bounds(&self) -> DeclaredBounds {
        (**self).declared_bounds()
    }
    fn label(&self) -> String {
        (**self).label()
    }
    fn extent(&self) -> Option<Ball> {
        (**self).extent()
    }
}

/// The translate `base − offset`.
#[derive(Clone, Debug)]
pub struct Translate<S> {
    base: S,
    offset: Point,
}

impl<S: DeloneSource> Translate<S> {
    pub fn new(base: S, offset: Point) -> Result<Self> {
        if offset.dim() != base.dim() {
            return Err(Error::DimMismatch(base.dim(), offset.dim()));
        }
        Ok(Translate { base, offset })
    }

    pub fn offset(&self) -> Point {
        self.offset
    }

    pub fn base(&self) -> &S {
        &self.base
    }
}

impl<S: DeloneSource> DeloneSource for Translate<S> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn points_in(&self, window: &Ball) -> Result<FinitePointSet> {
        let slack = QUERY_SLACK * (1.0 + self.offset.norm());
        let raw = self
            .base
            .points_in(&window.translated(self.offset).enlarged(slack))?;
        Ok(raw.shifted(-self.offset).restrict(window))
    }

    fn declared_bounds(&self) -> DeclaredBounds {
        self.base.declared_bounds()
    }

    fn label(&self) -> String {
        alloc::format!("{} - {:?}", self.base.label(), self.offset.coords())
    }

    fn extent(&self) -> Option<Ball> {
        self.base.extent().map(|e| e.translated(-self.offset))
    }
}

/// A materialized point set used as a source.
///
/// The extent defaults to the bounding ball of the points enlarged by the
/// largest gap between neighbours, i.e. the region the data plausibly
/// describes.
#[derive(Clone, Debug)]
pub struct FiniteSource {
    set: FinitePointSet,
    label: String,
    extent: Option<Ball>,
}

impl FiniteSource {
    pub fn new(set: FinitePointSet, label: impl Into<String>) -> Self {
        let extent = default_extent(&set);
        FiniteSource {
            set,
            label: label.into(),
            extent,
        }
    }

    /// Replace the extent; `None` treats the set as the whole point set.
    pub fn with_extent(mut self, extent: Option<Ball>) -> Self {
        self.extent = extent;
        self
    }

    pub fn set(&self) -> &FinitePointSet {
        &self.set
    }
}

impl DeloneSource for FiniteSource {
    fn dim(&self) -> usize {
        self.set.dim()
    }
    fn points_in(&self, window: &Ball) -> Result<FinitePointSet> {
        if window.dim() != self.set.dim() {
            return Err(Error::DimMismatch(self.set.dim(), window.dim()));
        }
        Ok(self.set.restrict(window))
    }
    fn label(&self) -> String {
        self.label.clone()
    }
    fn extent(&self) -> Option<Ball> {
        self.extent
    }
}

fn default_extent(set: &FinitePointSet) -> Option<Ball> {
    let first = set.points().first()?;
    if set.dim() == 1 {
        let xs = set.line_coords();
        let (lo, hi) = (xs[0], xs[xs.len() - 1]);
        let gap = xs.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        return Some(Ball::interval(0.5 * (lo + hi), 0.5 * (hi - lo) + gap));
    }
    let (mut x0, mut x1, mut y0, mut y1) = (first.x(), first.x(), first.y(), first.y());
    for p in set.iter() {
        x0 = x0.min(p.x());
        x1 = x1.max(p.x());
        y0 = y0.min(p.y());
        y1 = y1.max(p.y());
    }
    let center = Point::planar(0.5 * (x0 + x1), 0.5 * (y0 + y1));
    let radius = set.iter().map(|p| p.dist(&center)).fold(0.0, f64::max);
    Some(Ball { center, radius })
}

/// Fail with a margin error if `needed` reaches beyond the data of `src`.
pub fn ensure_covered<S: DeloneSource + ?Sized>(src: &S, needed: &Ball) -> Result<()> {
    if let Some(ext) = src.extent() {
        let reach = needed.center.dist(&ext.center) + needed.radius;
        if reach > ext.radius + QUERY_SLACK {
            return Err(Error::Margin {
                what: "analysis window reaches beyond the extent of the point data",
                required: reach,
                actual: ext.radius,
            });
        }
    }
    Ok(())
}

/// A centered `r`-patch `(−x + Λ) ∩ B_r(0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Patch {
    pub radius: f64,
    pub points: FinitePointSet,
    /// The patch was taken around a point of the set, so it contains 0.
    pub centered: bool,
}

impl Patch {
    pub fn new(radius: f64, points: FinitePointSet, centered: bool) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(alloc::format!(
                "patch radius must be positive, got {radius}"
            )));
        }
        let slack = 1e-12 * radius.max(1.0);
        if points.iter().any(|p| p.norm() > radius + slack) {
            return Err(Error::InvalidParameter("patch point outside its ball".into()));
        }
        if centered && !points.contains_within(&Point::origin(points.dim()), 1e-12) {
            return Err(Error::InvalidParameter("centered patch misses the origin".into()));
        }
        Ok(Patch {
            radius,
            points,
            centered,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `(set − anchor) ∩ B_r(0)`, without membership checks.
pub(crate) fn recentered(set: &FinitePointSet, anchor: Point, r: f64) -> FinitePointSet {
    let pts: Vec<Point> = if set.dim() == 1 {
        let xs = set.points();
        let lo = xs.partition_point(|p| p.x() < anchor.x() - r - QUERY_SLACK);
        xs[lo..]
            .iter()
            .take_while(|p| p.x() <= anchor.x() + r + QUERY_SLACK)
            .map(|p| *p - anchor)
            .filter(|d| d.x().abs() <= r)
            .collect()
    } else {
        set.iter()
            .map(|p| *p - anchor)
            .filter(|d| d.norm() <= r)
            .collect()
    };
    // already sorted and separated: subtraction of a constant preserves order
    FinitePointSet::new(set.dim(), pts).expect("dimension already checked")
}

/// Two patches are equivalent when a bijection matches their points within
/// `tol`. Matching is greedy, which is exact whenever `tol` is below half the
/// minimal point separation.
pub fn patches_equivalent(a: &FinitePointSet, b: &FinitePointSet, tol: f64) -> bool {
    if a.len() != b.len() || a.dim() != b.dim() {
        return false;
    }
    if a.dim() == 1 {
        return a
            .iter()
            .zip(b.iter())
            .all(|(p, q)| (p.x() - q.x()).abs() <= tol);
    }
    let mut used = alloc::vec![false; b.len()];
    for p in a.iter() {
        let hit = b
            .iter()
            .enumerate()
            .find(|(j, q)| !used[*j] && p.dist(q) <= tol)
            .map(|(j, _)| j);
        match hit {
            Some(j) => used[j] = true,
            None => return false,
        }
    }
    true
}

/// Exactly the points of `src` inside the closed window.
pub fn materialize<S: DeloneSource + ?Sized>(src: &S, window: &Ball) -> Result<FinitePointSet> {
    if !(window.radius > 0.0) {
        return Err(Error::InvalidParameter(alloc::format!(
            "window radius must be positive, got {}",
            window.radius
        )));
    }
    if window.dim() != src.dim() {
        return Err(Error::DimMismatch(src.dim(), window.dim()));
    }
    Ok(src.points_in(window)?.restrict(window))
}

/// The centered `r`-patch of `src` at `x`, which must be a point of the set
/// (within [`MEMBERSHIP_TOL`]). The patch is recentered on the matched point.
pub fn r_patch<S: DeloneSource + ?Sized>(src: &S, x: Point, r: f64) -> Result<Patch> {
    if x.dim() != src.dim() {
        return Err(Error::DimMismatch(src.dim(), x.dim()));
    }
    let around = src.points_in(&Ball {
        center: x,
        radius: r + 2.0 * MEMBERSHIP_TOL,
    })?;
    let anchor = match around.nearest(&x) {
        Some((p, d)) if d <= MEMBERSHIP_TOL => p,
        _ => return Err(Error::AnchorNotInSet),
    };
    Patch::new(r, recentered(&around, anchor, r), true)
}

/// `(−x + Λ) ∩ B_r(0)` for an arbitrary `x`.
pub fn window_patch<S: DeloneSource + ?Sized>(src: &S, x: Point, r: f64) -> Result<Patch> {
    let around = src.points_in(&Ball {
        center: x,
        radius: r + QUERY_SLACK,
    })?;
    Patch::new(r, recentered(&around, x, r), false)
}

/// Packing and covering radii measured on one window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeloneCheckReport {
    pub r_min: f64,
    /// `+∞` when no gap bounded on both sides was found.
    pub r_max: f64,
    pub uniformly_discrete: bool,
    pub relatively_dense: bool,
    pub window: Ball,
}

/// Half the minimal separation and half the largest interior gap of the
/// window, compared with whatever bounds the source declares.
pub fn delone_check<S: DeloneSource + ?Sized>(src: &S, window: &Ball) -> Result<DeloneCheckReport> {
    let pts = materialize(src, window)?;
    delone_check_set(&pts, window, src.declared_bounds())
}

pub(crate) fn delone_check_set(
    pts: &FinitePointSet,
    window: &Ball,
    declared: DeclaredBounds,
) -> Result<DeloneCheckReport> {
    let r_min = min_pair_separation(pts)? / 2.0;
    let r_max = largest_interior_gap(pts, window)?.unwrap_or(f64::INFINITY);
    let uniformly_discrete =
        r_min > 0.0 && declared.r_min_lower.map_or(true, |lb| r_min >= lb - 1e-12);
    let relatively_dense =
        r_max.is_finite() && declared.r_max_upper.map_or(true, |ub| r_max <= ub + 1e-12);
    Ok(DeloneCheckReport {
        r_min,
        r_max,
        uniformly_discrete,
        relatively_dense,
        window: *window,
    })
}

/// Covering radius to use for margin checks: the declared bound when there is
/// one, otherwise the interior gap of `pts`.
pub(crate) fn covering_radius_estimate(
    declared: DeclaredBounds,
    pts: &FinitePointSet,
    window: &Ball,
) -> Result<f64> {
    if let Some(ub) = declared.r_max_upper {
        return Ok(ub);
    }
    Ok(largest_interior_gap(pts, window)?.unwrap_or(f64::INFINITY))
}

/// One equivalence class of the census.
#[derive(Clone, Debug, PartialEq)]
pub struct PatchClass {
    /// First patch of the class encountered, anchors taken by distance from the window center.
    pub patch: Patch,
    pub count: usize,
}

/// Census of centered `r`-patches over the anchors `Λ ∩ B_{R−r}(c)`.
///
/// Classes are sorted by size of the patch, then lexicographically by
/// coordinates. Counts sum to the number of anchors.
pub fn flc_census<S: DeloneSource + ?Sized>(
    src: &S,
    r: f64,
    window: &Ball,
    tol: f64,
) -> Result<Vec<PatchClass>> {
    if !(r > 0.0) || !(tol >= 0.0) {
        return Err(Error::InvalidParameter(alloc::format!(
            "census needs r > 0 and tol >= 0, got r = {r}, tol = {tol}"
        )));
    }
    let pts = materialize(src, window)?;
    let r_max = covering_radius_estimate(src.declared_bounds(), &pts, window)?;
    let required = r + r_max;
    if !(window.radius >= required) {
        return Err(Error::WindowTooSmall {
            required,
            actual: window.radius,
        });
    }
    let core = window.shrunk(r);
    let mut anchors: Vec<Point> = pts.iter().copied().filter(|p| core.contains(p)).collect();
    // nearest-first keeps the classes of a smaller window a prefix of a larger one
    anchors.sort_by(|a, b| {
        a.dist(&window.center)
            .total_cmp(&b.dist(&window.center))
            .then_with(|| a.lex_cmp(b))
    });
    let mut classes: Vec<PatchClass> = Vec::new();
    for a in anchors {
        let p = recentered(&pts, a, r);
        match classes
            .iter_mut()
            .find(|c| patches_equivalent(&c.patch.points, &p, tol))
        {
            Some(c) => c.count += 1,
            None => classes.push(PatchClass {
                patch: Patch::new(r, p, true)?,
                count: 1,
            }),
        }
    }
    classes.sort_by(|a, b| cmp_patches(&a.patch.points, &b.patch.points));
    Ok(classes)
}

fn cmp_patches(a: &FinitePointSet, b: &FinitePointSet) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        a.iter()
            .zip(b.iter())
            .map(|(p, q)| p.lex_cmp(q))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    })
}

/// Whether `t` maps the core of the window into the set and back, within `tol`.
pub(crate) fn is_period_on(xs: &FinitePointSet, window: &Ball, t: f64, tol: f64) -> bool {
    let core = window.shrunk(t.abs());
    let shift = Point::on_line(t);
    xs.iter().filter(|x| core.contains(x)).all(|x| {
        xs.dist_to(&(*x + shift)) <= tol && xs.dist_to(&(*x - shift)) <= tol
    })
}

/// All exact periods `t ≠ 0` (within `tol`) with `|t| ≤ R/2` visible in the
/// window. Candidates are differences from the point nearest the window
/// center. The result is sorted and symmetric under negation.
pub fn detect_periods<S: DeloneSource + ?Sized>(
    src: &S,
    window: &Ball,
    tol: f64,
) -> Result<Vec<Point>> {
    if src.dim() != 1 {
        return Err(Error::UnsupportedDim(src.dim()));
    }
    if !(tol >= 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("tol must be >= 0, got {tol}")));
    }
    let pts = materialize(src, &window.enlarged(2.0 * tol + QUERY_SLACK))?;
    let r_max = covering_radius_estimate(src.declared_bounds(), &pts, window)?;
    if !(window.radius > 2.0 * r_max) {
        return Err(Error::Margin {
            what: "window radius must exceed twice the covering radius",
            required: 2.0 * r_max,
            actual: window.radius,
        });
    }
    let Some((x0, _)) = pts.nearest(&window.center) else {
        return Ok(Vec::new());
    };
    let half = window.radius / 2.0;
    let mut positive: Vec<f64> = pts
        .iter()
        .map(|y| y.x() - x0.x())
        .filter(|t| *t > 0.0 && *t <= half)
        .filter(|t| is_period_on(&pts, window, *t, tol))
        .collect();
    positive.sort_by(f64::total_cmp);
    let mut out: Vec<Point> = positive.iter().rev().map(|t| Point::on_line(-t)).collect();
    out.extend(positive.iter().map(|t| Point::on_line(*t)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{lattice_source, LatticeSpec};
    use alloc::vec;

    fn integers() -> impl DeloneSource {
        lattice_source(&LatticeSpec::line(1.0, vec![0.0])).unwrap()
    }

    #[test]
    fn materialize_integers() {
        let s = materialize(&integers(), &Ball::interval(0.0, 3.0)).unwrap();
        assert_eq!(s.line_coords(), vec![-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
        assert!(materialize(&integers(), &Ball::interval(0.0, 0.0)).is_err());
    }

    #[test]
    fn r_patch_examples() {
        let z = integers();
        let p = r_patch(&z, Point::on_line(5.0), 2.0).unwrap();
        assert_eq!(p.points.line_coords(), vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert!(p.centered);
        let p = r_patch(&z, Point::on_line(0.0), 0.5).unwrap();
        assert_eq!(p.points.line_coords(), vec![0.0]);
        assert_eq!(
            r_patch(&z, Point::on_line(0.5), 1.0),
            Err(Error::AnchorNotInSet)
        );
        let w = window_patch(&z, Point::on_line(0.5), 1.0).unwrap();
        assert_eq!(w.points.line_coords(), vec![-0.5, 0.5]);
        assert!(!w.centered);
    }

    #[test]
    fn translate_shifts_points() {
        let z = integers();
        let t = Translate::new(&z, Point::on_line(0.5)).unwrap();
        let s = materialize(&t, &Ball::interval(0.0, 1.0)).unwrap();
        assert_eq!(s.line_coords(), vec![-0.5, 0.5]);
    }

    #[test]
    fn delone_check_integers() {
        let rep = delone_check(&integers(), &Ball::interval(0.0, 100.0)).unwrap();
        assert_eq!(rep.r_min, 0.5);
        assert_eq!(rep.r_max, 0.5);
        assert!(rep.uniformly_discrete && rep.relatively_dense);
        let few = FiniteSource::new(FinitePointSet::from_line([0.0]).unwrap(), "one");
        assert_eq!(
            delone_check(&few, &Ball::interval(0.0, 10.0)),
            Err(Error::TooFewPoints(1))
        );
    }

    #[test]
    fn census_of_integers_has_one_class() {
        let classes = flc_census(&integers(), 5.0, &Ball::interval(0.0, 100.0), 1e-9).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].count, 191);
        assert!(matches!(
            flc_census(&integers(), 5.0, &Ball::interval(0.0, 5.2), 1e-9),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn periods_of_integers() {
        let ps = detect_periods(&integers(), &Ball::interval(0.0, 50.0), 1e-9).unwrap();
        let xs: Vec<f64> = ps.iter().map(Point::x).collect();
        assert_eq!(xs.len(), 50);
        for k in 1..=25 {
            assert!(xs.contains(&(k as f64)) && xs.contains(&(-k as f64)));
        }
    }

    #[test]
    fn periods_of_finite_cluster_are_empty() {
        let src = FiniteSource::new(
            FinitePointSet::from_line((-60..=60).map(|k| k as f64 + if k == 3 { 0.2 } else { 0.0 }))
                .unwrap(),
            "defect",
        );
        // a single defect kills every period
        let ps = detect_periods(&src, &Ball::interval(0.0, 50.0), 1e-9).unwrap();
        assert!(ps.is_empty());
    }
}
