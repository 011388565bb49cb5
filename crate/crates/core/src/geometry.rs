//! Points, finite point sets and balls in dimension 1 or 2, plus the
//! distance and gap statistics the analyses are built from.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Neg, Sub};

use crate::math::{ceil, cos, floor, round, sin, sqrt};
use crate::{Error, Result, DUPLICATE_TOL};

/// Boundary sampling step for 2D patch comparison.
const BOUNDARY_STEP: f64 = 1e-3;
/// Minimum number of boundary samples for 2D patch comparison.
const MIN_BOUNDARY_SAMPLES: usize = 64;
/// Grid pitch of the 2D empty-ball scan, relative to the window radius.
const GAP_GRID_FRACTION: f64 = 1e-2;

/// A point of ℝ¹ or ℝ².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    dim: u8,
    coords: [f64; 2],
}

impl Point {
    pub fn new(coords: &[f64]) -> Result<Self> {
        match coords.len() {
            1 | 2 => {}
            n => return Err(Error::UnsupportedDim(n)),
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut c = [0.0; 2];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Point {
            dim: coords.len() as u8,
            coords: c,
        })
    }

    /// A point on the real line.
    #[inline]
    pub fn on_line(x: f64) -> Self {
        debug_assert!(x.is_finite());
        Point {
            dim: 1,
            coords: [x, 0.0],
        }
    }

    #[inline]
    pub fn planar(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        Point {
            dim: 2,
            coords: [x, y],
        }
    }

    pub fn origin(dim: usize) -> Self {
        match dim {
            2 => Point::planar(0.0, 0.0),
            _ => Point::on_line(0.0),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim as usize]
    }

    /// First coordinate.
    #[inline]
    pub fn x(&self) -> f64 {
        self.coords[0]
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.coords[1]
    }

    #[inline]
    pub fn dist(&self, other: &Point) -> f64 {
        if self.dim == 1 {
            (self.coords[0] - other.coords[0]).abs()
        } else {
            let dx = self.coords[0] - other.coords[0];
            let dy = self.coords[1] - other.coords[1];
            sqrt(dx * dx + dy * dy)
        }
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.dist(&Point::origin(self.dim()))
    }

    /// Lexicographic total order on coordinates.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point {
            dim: self.dim,
            coords: [self.coords[0] + rhs.coords[0], self.coords[1] + rhs.coords[1]],
        }
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point {
            dim: self.dim,
            coords: [self.coords[0] - rhs.coords[0], self.coords[1] - rhs.coords[1]],
        }
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point {
            dim: self.dim,
            coords: [-self.coords[0], -self.coords[1]],
        }
    }
}

/// Closed Euclidean ball.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(alloc::format!(
                "ball radius must be finite and nonnegative, got {radius}"
            )));
        }
        Ok(Ball { center, radius })
    }

    /// `B_r(0)` in dimension `dim`.
    pub fn centered(dim: usize, radius: f64) -> Self {
        Ball {
            center: Point::origin(dim),
            radius,
        }
    }

    /// The interval `[c − r, c + r]`.
    pub fn interval(center: f64, radius: f64) -> Self {
        Ball {
            center: Point::on_line(center),
            radius,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    #[inline]
    pub fn contains(&self, p: &Point) -> bool {
        self.center.dist(p) <= self.radius
    }

    pub fn enlarged(&self, by: f64) -> Ball {
        Ball {
            center: self.center,
            radius: self.radius + by,
        }
    }

    pub fn shrunk(&self, by: f64) -> Ball {
        Ball {
            center: self.center,
            radius: (self.radius - by).max(0.0),
        }
    }

    pub fn translated(&self, by: Point) -> Ball {
        Ball {
            center: self.center + by,
            radius: self.radius,
        }
    }

    /// Interval endpoints of a 1D ball.
    #[inline]
    pub fn bounds(&self) -> (f64, f64) {
        (self.center.x() - self.radius, self.center.x() + self.radius)
    }
}

/// A finite, lexicographically sorted, duplicate-free set of points of one
/// dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct FinitePointSet {
    dim: usize,
    points: Vec<Point>,
}

impl FinitePointSet {
    /// Sorts `points` and merges points closer than [`DUPLICATE_TOL`].
    pub fn new(dim: usize, mut points: Vec<Point>) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(Error::UnsupportedDim(dim));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimMismatch(dim, p.dim()));
        }
        points.sort_by(|a, b| a.lex_cmp(b));
        if dim == 1 {
            points.dedup_by(|b, a| (b.x() - a.x()).abs() <= DUPLICATE_TOL);
        } else {
            let mut keep: Vec<Point> = Vec::with_capacity(points.len());
            for p in points {
                let dup = keep
                    .iter()
                    .rev()
                    .take_while(|q| p.x() - q.x() <= DUPLICATE_TOL)
                    .any(|q| q.dist(&p) <= DUPLICATE_TOL);
                if !dup {
                    keep.push(p);
                }
            }
            points = keep;
        }
        Ok(FinitePointSet { dim, points })
    }

    /// A 1D set from raw coordinates.
    pub fn from_line(xs: impl IntoIterator<Item = f64>) -> Result<Self> {
        let mut pts = Vec::new();
        for x in xs {
            if !x.is_finite() {
                return Err(Error::NonFinite);
            }
            pts.push(Point::on_line(x));
        }
        FinitePointSet::new(1, pts)
    }

    pub fn empty(dim: usize) -> Self {
        FinitePointSet {
            dim,
            points: Vec::new(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Point> {
        self.points.iter()
    }

    /// First coordinates, in order. For 1D sets this is the sorted point list.
    pub fn line_coords(&self) -> Vec<f64> {
        self.points.iter().map(Point::x).collect()
    }

    /// Points inside the closed ball.
    pub fn restrict(&self, ball: &Ball) -> FinitePointSet {
        FinitePointSet {
            dim: self.dim,
            points: self.points.iter().copied().filter(|p| ball.contains(p)).collect(),
        }
    }

    /// `self + v`, pointwise.
    pub fn shifted(&self, v: Point) -> FinitePointSet {
        FinitePointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| *p + v).collect(),
        }
    }

    /// Nearest point and its distance.
    pub fn nearest(&self, p: &Point) -> Option<(Point, f64)> {
        if self.dim == 1 {
            let xs = &self.points;
            let i = xs.partition_point(|q| q.x() < p.x());
            let mut best: Option<(Point, f64)> = None;
            for j in [i.wrapping_sub(1), i] {
                if let Some(q) = xs.get(j) {
                    let d = q.dist(p);
                    if best.map_or(true, |(_, bd)| d < bd) {
                        best = Some((*q, d));
                    }
                }
            }
            best
        } else {
            self.points
                .iter()
                .map(|q| (*q, q.dist(p)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
        }
    }

    /// Distance to the nearest point (`+∞` for an empty set).
    pub fn dist_to(&self, p: &Point) -> f64 {
        self.nearest(p).map_or(f64::INFINITY, |(_, d)| d)
    }

    pub fn contains_within(&self, p: &Point, tol: f64) -> bool {
        self.dist_to(p) <= tol
    }
}

fn check_same_dim(a: &FinitePointSet, b: &FinitePointSet) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(a.dim(), b.dim()));
    }
    Ok(())
}

/// `sup_{p∈a} dist(p, b)`.
pub fn directed_hausdorff(a: &FinitePointSet, b: &FinitePointSet) -> f64 {
    a.iter().map(|p| b.dist_to(p)).fold(0.0, f64::max)
}

/// Hausdorff distance between two nonempty finite sets of equal dimension.
pub fn hausdorff_distance(a: &FinitePointSet, b: &FinitePointSet) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    check_same_dim(a, b)?;
    Ok(directed_hausdorff(a, b).max(directed_hausdorff(b, a)))
}

/// Number of equidistant samples used for the circle `∂B_r` in 2D.
pub fn boundary_sample_count(r: f64) -> usize {
    let n = ceil(2.0 * core::f64::consts::PI * r / BOUNDARY_STEP);
    (n as usize).max(MIN_BOUNDARY_SAMPLES)
}

/// The sampled boundary `∂B_r`: `{−r, r}` in 1D, an equidistant polygon in 2D.
pub fn boundary_samples(dim: usize, r: f64) -> Vec<Point> {
    if dim == 1 {
        return alloc::vec![Point::on_line(-r), Point::on_line(r)];
    }
    let n = boundary_sample_count(r);
    (0..n)
        .map(|k| {
            let phi = 2.0 * core::f64::consts::PI * k as f64 / n as f64;
            Point::planar(r * cos(phi), r * sin(phi))
        })
        .collect()
}

/// Distance from `p` to the sampled boundary `∂B_r`.
fn dist_to_boundary(p: &Point, r: f64) -> f64 {
    if p.dim() == 1 {
        return (p.x() + r).abs().min((p.x() - r).abs());
    }
    let n = boundary_sample_count(r);
    let step = 2.0 * core::f64::consts::PI / n as f64;
    let phi = libm::atan2(p.y(), p.x());
    let k0 = round(phi / step) as i64;
    (k0 - 1..=k0 + 1)
        .map(|k| {
            let a = k as f64 * step;
            p.dist(&Point::planar(r * cos(a), r * sin(a)))
        })
        .fold(f64::INFINITY, f64::min)
}

/// `sup_{p∈a} dist(p, b ∪ ∂B_r)`. Boundary samples of `a ∪ ∂B_r` contribute
/// nothing because the same samples belong to `b ∪ ∂B_r`.
fn directed_augmented(a: &FinitePointSet, b: &FinitePointSet, r: f64) -> f64 {
    a.iter()
        .map(|p| b.dist_to(p).min(dist_to_boundary(p, r)))
        .fold(0.0, f64::max)
}

/// Hausdorff distance of two `r`-patches after adjoining the boundary `∂B_r`
/// to both.
pub fn patch_distance(p: &crate::Patch, q: &crate::Patch) -> Result<f64> {
    check_same_dim(&p.points, &q.points)?;
    let r = p.radius;
    if (p.radius - q.radius).abs() > 1e-12 * r.max(1.0) {
        return Err(Error::RadiusMismatch(p.radius, q.radius));
    }
    Ok(augmented_distance(&p.points, &q.points, r))
}

/// [`patch_distance`] on raw sets assumed to lie in `B_r(0)`.
pub(crate) fn augmented_distance(a: &FinitePointSet, b: &FinitePointSet, r: f64) -> f64 {
    directed_augmented(a, b, r).max(directed_augmented(b, a, r))
}

/// Minimum distance over distinct pairs.
pub fn min_pair_separation(ps: &FinitePointSet) -> Result<f64> {
    if ps.len() < 2 {
        return Err(Error::TooFewPoints(ps.len()));
    }
    let pts = ps.points();
    if ps.dim() == 1 {
        return Ok(pts
            .windows(2)
            .map(|w| w[1].x() - w[0].x())
            .fold(f64::INFINITY, f64::min));
    }
    // sweep in x order
    let mut best = f64::INFINITY;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            if q.x() - p.x() > best {
                break;
            }
            best = best.min(p.dist(q));
        }
    }
    Ok(best)
}

/// Result of an empty-ball search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapEstimate {
    /// Radius of the largest ball inside the window and disjoint from the set.
    pub radius: f64,
    /// Set when the input had no points in the window, so the window radius
    /// itself is returned.
    pub warning: bool,
}

/// Radius of the largest ball contained in `window` that misses `ps`.
///
/// Exact in 1D. In 2D the ball centers are scanned on a grid of pitch
/// `0.01 · window.radius`.
pub fn largest_empty_gap(ps: &FinitePointSet, window: &Ball) -> Result<GapEstimate> {
    if ps.dim() != window.dim() {
        return Err(Error::DimMismatch(ps.dim(), window.dim()));
    }
    let inside = ps.restrict(window);
    if inside.is_empty() {
        return Ok(GapEstimate {
            radius: window.radius,
            warning: true,
        });
    }
    let radius = if ps.dim() == 1 {
        let (lo, hi) = window.bounds();
        let xs = inside.line_coords();
        let mut best = (xs[0] - lo).max(hi - xs[xs.len() - 1]);
        for w in xs.windows(2) {
            best = best.max(w[1] - w[0]);
        }
        best / 2.0
    } else {
        grid_scan(&inside, window, false).unwrap_or(0.0)
    };
    Ok(GapEstimate {
        radius,
        warning: false,
    })
}

/// Like [`largest_empty_gap`] but only counting empty balls that are bounded
/// by points of the set on every side, so that gaps created by truncating
/// the set at the window edge are ignored. `None` if there is no such gap.
pub fn largest_interior_gap(ps: &FinitePointSet, window: &Ball) -> Result<Option<f64>> {
    if ps.dim() != window.dim() {
        return Err(Error::DimMismatch(ps.dim(), window.dim()));
    }
    let inside = ps.restrict(window);
    if ps.dim() == 1 {
        let xs = inside.line_coords();
        Ok(xs
            .windows(2)
            .map(|w| (w[1] - w[0]) / 2.0)
            .reduce(f64::max))
    } else {
        Ok(grid_scan(&inside, window, true))
    }
}

/// Grid scan of empty-ball radii. With `interior`, grid points whose nearest
/// set point is farther than the window boundary are dropped; otherwise the
/// radius is clipped at the boundary.
fn grid_scan(ps: &FinitePointSet, window: &Ball, interior: bool) -> Option<f64> {
    let big_r = window.radius;
    let pitch = GAP_GRID_FRACTION * big_r;
    if !(pitch > 0.0) {
        return None;
    }
    let steps = floor(big_r / pitch) as i64;
    let c = window.center;
    let mut best: Option<f64> = None;
    for i in -steps..=steps {
        for j in -steps..=steps {
            let g = Point::planar(c.x() + i as f64 * pitch, c.y() + j as f64 * pitch);
            let to_edge = big_r - g.dist(&c);
            if to_edge < 0.0 {
                continue;
            }
            let d = ps.dist_to(&g);
            let value = if interior {
                if d > to_edge {
                    continue;
                }
                d
            } else {
                d.min(to_edge)
            };
            best = Some(best.map_or(value, |b: f64| b.max(value)));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Patch;
    use alloc::vec;
    use proptest::prelude::*;

    fn line(xs: &[f64]) -> FinitePointSet {
        FinitePointSet::from_line(xs.iter().copied()).unwrap()
    }

    fn patch(r: f64, xs: &[f64]) -> Patch {
        Patch::new(r, line(xs), false).unwrap()
    }

    /// Brute force over all pairs of the augmented sets.
    fn oracle_patch_distance(a: &[f64], b: &[f64], r: f64) -> f64 {
        let mut aa = a.to_vec();
        aa.extend([-r, r]);
        let mut bb = b.to_vec();
        bb.extend([-r, r]);
        let directed = |s: &[f64], t: &[f64]| {
            s.iter()
                .map(|x| t.iter().map(|y| (x - y).abs()).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max)
        };
        directed(&aa, &bb).max(directed(&bb, &aa))
    }

    #[test]
    fn hausdorff_examples() {
        assert_eq!(hausdorff_distance(&line(&[0.0, 2.0]), &line(&[0.0, 2.0])).unwrap(), 0.0);
        assert_eq!(hausdorff_distance(&line(&[0.0]), &line(&[1.0])).unwrap(), 1.0);
        assert_eq!(
            hausdorff_distance(&line(&[0.0, 2.0]), &line(&[0.0, 1.0, 2.0])).unwrap(),
            1.0
        );
    }

    #[test]
    fn hausdorff_errors() {
        assert_eq!(
            hausdorff_distance(&FinitePointSet::empty(1), &line(&[1.0])),
            Err(Error::EmptySet)
        );
        let planar = FinitePointSet::new(2, vec![Point::planar(0.0, 0.0)]).unwrap();
        assert_eq!(
            hausdorff_distance(&line(&[0.0]), &planar),
            Err(Error::DimMismatch(1, 2))
        );
    }

    #[test]
    fn patch_distance_examples() {
        let z = patch(2.0, &[-2.0, -1.0, 0.0, 1.0, 2.0]);
        let zh = patch(2.0, &[-1.5, -0.5, 0.5, 1.5]);
        assert_eq!(patch_distance(&z, &z).unwrap(), 0.0);
        let expect = oracle_patch_distance(&[-2.0, -1.0, 0.0, 1.0, 2.0], &[-1.5, -0.5, 0.5, 1.5], 2.0);
        assert_eq!(expect, 0.5);
        assert_eq!(patch_distance(&z, &zh).unwrap(), expect);

        let p = patch(1.0, &[0.0]);
        let q = patch(1.0, &[0.0, 0.9]);
        let expect = oracle_patch_distance(&[0.0], &[0.0, 0.9], 1.0);
        assert!((expect - 0.1).abs() < 1e-15);
        assert_eq!(patch_distance(&p, &q).unwrap(), expect);
    }

    #[test]
    fn patch_distance_radius_mismatch() {
        assert!(matches!(
            patch_distance(&patch(1.0, &[0.0]), &patch(2.0, &[0.0])),
            Err(Error::RadiusMismatch(..))
        ));
    }

    #[test]
    fn patch_distance_planar_boundary_sampling() {
        let r = 2.0;
        let a = Patch::new(r, FinitePointSet::new(2, vec![Point::planar(0.0, 0.0)]).unwrap(), false)
            .unwrap();
        let b = Patch::new(
            r,
            FinitePointSet::new(2, vec![Point::planar(0.0, 0.0), Point::planar(1.5, 0.0)]).unwrap(),
            false,
        )
        .unwrap();
        // 1.5 is 0.5 from the circle, up to the sampling error
        let d = patch_distance(&a, &b).unwrap();
        assert!((d - 0.5).abs() <= BOUNDARY_STEP / 2.0, "{d}");
        // a boundary sample at angle 0 exists, so this is exact
        assert!((d - 0.5).abs() < 1e-12);
    }

    #[test]
    fn separation_examples() {
        let z: Vec<f64> = (-5..=5).map(f64::from).collect();
        assert_eq!(min_pair_separation(&line(&z)).unwrap(), 1.0);
        assert_eq!(min_pair_separation(&line(&[0.0, 0.3, 1.0])).unwrap(), 0.3);
        assert_eq!(min_pair_separation(&line(&[1.0])), Err(Error::TooFewPoints(1)));
    }

    #[test]
    fn gap_examples() {
        let z: Vec<f64> = (-5..=5).map(f64::from).collect();
        let w = Ball::interval(0.0, 5.0);
        assert_eq!(largest_empty_gap(&line(&z), &w).unwrap().radius, 0.5);
        assert_eq!(largest_empty_gap(&line(&[-5.0, 5.0]), &w).unwrap().radius, 5.0);
        let e = largest_empty_gap(&FinitePointSet::empty(1), &w).unwrap();
        assert!(e.warning);
        assert_eq!(e.radius, 5.0);
    }

    #[test]
    fn planar_gap_grid() {
        let mut pts = Vec::new();
        for i in -5..=5 {
            for j in -5..=5 {
                pts.push(Point::planar(i as f64, j as f64));
            }
        }
        let z2 = FinitePointSet::new(2, pts).unwrap();
        let w = Ball::centered(2, 5.0);
        let g = largest_interior_gap(&z2, &w).unwrap().unwrap();
        // center of a unit square: √2/2
        assert!((g - core::f64::consts::FRAC_1_SQRT_2).abs() < 0.05 + 1e-12);
        assert!(min_pair_separation(&z2).unwrap() == 1.0);
    }

    #[test]
    fn duplicates_are_merged() {
        let s = line(&[1.0, 1.0 + 1e-13, 2.0]);
        assert_eq!(s.len(), 2);
        let p = FinitePointSet::new(
            2,
            vec![
                Point::planar(0.0, 1.0),
                Point::planar(0.0, 0.5),
                Point::planar(1e-13, 1.0),
            ],
        )
        .unwrap();
        assert_eq!(p.len(), 2);
    }

    fn small_set() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-20.0f64..20.0, 1..12)
    }

    proptest! {
        #[test]
        fn hausdorff_is_a_metric(a in small_set(), b in small_set(), c in small_set()) {
            let (a, b, c) = (line(&a), line(&b), line(&c));
            let ab = hausdorff_distance(&a, &b).unwrap();
            let ba = hausdorff_distance(&b, &a).unwrap();
            let bc = hausdorff_distance(&b, &c).unwrap();
            let ac = hausdorff_distance(&a, &c).unwrap();
            prop_assert_eq!(ab, ba);
            prop_assert!(ac <= ab + bc + 1e-12);
            prop_assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        }

        #[test]
        fn patch_distance_matches_oracle_and_is_capped(a in small_set(), b in small_set(), r in 1.0f64..25.0) {
            let a: Vec<f64> = a.into_iter().filter(|x| x.abs() <= r).collect();
            let b: Vec<f64> = b.into_iter().filter(|x| x.abs() <= r).collect();
            let d = patch_distance(&patch(r, &a), &patch(r, &b)).unwrap();
            prop_assert!(d <= 2.0 * r);
            let a = line(&a).line_coords();
            let b = line(&b).line_coords();
            prop_assert!((d - oracle_patch_distance(&a, &b, r)).abs() < 1e-12);
        }

        #[test]
        fn statistics_are_translation_invariant(a in prop::collection::vec(-20.0f64..20.0, 2..12), t in -100i32..100) {
            let t = t as f64 + 0.25;
            let s = line(&a);
            let shifted = s.shifted(Point::on_line(t));
            if s.len() >= 2 {
                let d = min_pair_separation(&s).unwrap() - min_pair_separation(&shifted).unwrap();
                prop_assert!(d.abs() < 1e-12);
            }
            let w = Ball::interval(0.0, 25.0);
            let g0 = largest_empty_gap(&s, &w).unwrap();
            let g1 = largest_empty_gap(&shifted, &w.translated(Point::on_line(t))).unwrap();
            prop_assert!((g0.radius - g1.radius).abs() < 1e-12);
        }
    }
}
