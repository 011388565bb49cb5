//! Almost periodicity at finite scale.
//!
//! Everything here works on the real line. Each analysis materializes one
//! window large enough that every quantity it reports is the exact
//! restriction of the corresponding statement about the infinite set: when
//! points `x` of a core window are tested against a shift of size up to `s`,
//! the materialized window is the core enlarged by `s` (plus the tolerance).

use alloc::vec::Vec;

use crate::geometry::{augmented_distance, largest_empty_gap, min_pair_separation, Ball, FinitePointSet, Point};
use crate::sources::{ensure_covered, materialize, recentered, DeloneSource, QUERY_SLACK};
use crate::{Error, Result, MEMBERSHIP_TOL};

/// Patches closer than this count as identical in [`delone_distance`].
pub const AGREEMENT_TOL: f64 = 1e-9;
/// Resolution of the radius bisection in [`delone_distance`].
pub const RADIUS_RESOLUTION: f64 = 1e-6;
/// Nonzero periods handed to [`find_bijection`] per ladder step.
pub const SPOT_CHECKS: usize = 5;

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

/// Length of the largest gap of `set` inside `window`, counting the window
/// edges as gap ends. Twice the largest empty radius.
pub fn max_gap(set: &FinitePointSet, window: &Ball) -> Result<f64> {
    Ok(2.0 * largest_empty_gap(set, window)?.radius)
}

/// The metric `d(Λ₁, Λ₂) = 1/R*`, where `R*` is the largest radius `r ≤ r_cap`
/// with `d_H(B_r[Λ₁] ∪ ∂B_r, B_r[Λ₂] ∪ ∂B_r) ≤ 1/r`.
///
/// Radii `1, 2, …, r_cap` are scanned until the condition first fails, and the
/// crossing is refined by bisection. Sets whose `r_cap`-patches agree within
/// [`AGREEMENT_TOL`] are at distance 0; sets that already fail at `r = 1` are
/// at the cap distance 1.
pub fn delone_distance<A, B>(src1: &A, src2: &B, r_cap: f64) -> Result<f64>
where
    A: DeloneSource + ?Sized,
    B: DeloneSource + ?Sized,
{
    if src1.dim() != src2.dim() {
        return Err(Error::DimMismatch(src1.dim(), src2.dim()));
    }
    require_line(src1)?;
    if !(r_cap >= 1.0) || !r_cap.is_finite() {
        return Err(Error::InvalidParameter(alloc::format!("r_cap must be >= 1, got {r_cap}")));
    }
    let outer = Ball::centered(1, r_cap + QUERY_SLACK);
    ensure_covered(src1, &outer)?;
    ensure_covered(src2, &outer)?;
    let a = materialize(src1, &outer)?;
    let b = materialize(src2, &outer)?;
    Ok(distance_of_sets(&a, &b, r_cap))
}

pub(crate) fn distance_of_sets(a: &FinitePointSet, b: &FinitePointSet, r_cap: f64) -> f64 {
    let patch_gap = |r: f64| {
        let ball = Ball::centered(1, r);
        augmented_distance(&a.restrict(&ball), &b.restrict(&ball), r)
    };
    let passes = |r: f64| patch_gap(r) <= 1.0 / r;
    if patch_gap(r_cap) <= AGREEMENT_TOL {
        return 0.0;
    }
    if !passes(1.0) {
        return 1.0;
    }
    let mut grid: Vec<f64> = (2..=libm::floor(r_cap) as i64).map(|k| k as f64).collect();
    if grid.last().map_or(true, |r| *r < r_cap) {
        grid.push(r_cap);
    }
    let mut lo = 1.0;
    let Some(hi) = grid.into_iter().find(|r| {
        let ok = passes(*r);
        if ok {
            lo = *r;
        }
        !ok
    }) else {
        return 1.0 / r_cap;
    };
    let mut hi = hi;
    while hi - lo > RADIUS_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if passes(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    1.0 / lo
}

fn require_origin(pts: &FinitePointSet) -> Result<()> {
    if pts.contains_within(&Point::on_line(0.0), MEMBERSHIP_TOL) {
        Ok(())
    } else {
        Err(Error::AnchorNotInSet)
    }
}

/// The `r` return vectors found in a search window.
#[derive(Clone, Debug, PartialEq)]
pub struct ReturnVectorReport {
    pub r: f64,
    pub search_window: Ball,
    pub vectors: FinitePointSet,
    /// Largest gap between consecutive vectors (window edges included).
    pub max_gap: f64,
}

impl ReturnVectorReport {
    /// Vectors farther than `1/r` from every point of `set`. Always empty for
    /// reports produced by [`return_vectors`].
    pub fn containment_violations(&self, set: &FinitePointSet) -> Vec<Point> {
        let bound = 1.0 / self.r;
        self.vectors
            .iter()
            .copied()
            .filter(|v| set.dist_to(v) > bound)
            .collect()
    }
}

/// All `a` in the search window with
/// `d_H(B_r[Λ] ∪ ∂B_r, B_r[Λ − a] ∪ ∂B_r) ≤ 1/r`.
///
/// Candidates are the points of `Λ` near the window plus a grid of pitch
/// `min(0.01, 1/(4r))` over the ball of radius `1/r` around each, which is
/// where every return vector lives. `Λ` must contain 0.
pub fn return_vectors<S: DeloneSource + ?Sized>(
    src: &S,
    r: f64,
    search_window: &Ball,
) -> Result<ReturnVectorReport> {
    require_line(src)?;
    require_positive("r", r)?;
    let inv = 1.0 / r;
    let reach = search_window.center.x().abs() + search_window.radius;
    let outer = Ball::centered(1, reach + r + inv + QUERY_SLACK);
    ensure_covered(src, &outer)?;
    let pts = materialize(src, &outer)?;
    require_origin(&pts)?;

    let pitch = (0.01f64).min(inv / 4.0);
    let steps = libm::floor(inv / pitch + 1e-9) as i64;
    let base = pts.restrict(&Ball::centered(1, r));
    let near = pts.restrict(&search_window.enlarged(inv));
    let mut found: Vec<Point> = alloc::vec![Point::on_line(0.0)];
    for lambda in near.iter() {
        for k in -steps..=steps {
            let a = Point::on_line(lambda.x() + k as f64 * pitch);
            if !search_window.contains(&a) {
                continue;
            }
            let shifted = recentered(&pts, a, r);
            if augmented_distance(&base, &shifted, r) <= inv {
                found.push(a);
            }
        }
    }
    let vectors = FinitePointSet::new(1, found)?;
    let max_gap = max_gap(&vectors, search_window)?;
    Ok(ReturnVectorReport {
        r,
        search_window: *search_window,
        vectors,
        max_gap,
    })
}

/// ε-almost periods found in a search window.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsPeriodReport {
    pub epsilon: f64,
    pub search_window: Ball,
    /// Symmetric under negation and always containing 0.
    pub periods: FinitePointSet,
    /// Largest gap between consecutive periods in `B_R(0)`, edges included.
    pub max_gap: f64,
    /// `max_gap ≤ R/4`. A reporting heuristic, not a density claim.
    pub relatively_dense_at_scale: bool,
}

impl EpsPeriodReport {
    fn from_positive(epsilon: f64, search_window: &Ball, mut positive: Vec<f64>) -> Result<Self> {
        positive.sort_by(f64::total_cmp);
        positive.dedup_by(|b, a| *b - *a <= crate::DUPLICATE_TOL);
        let mut all: Vec<Point> = positive.iter().rev().map(|a| Point::on_line(-a)).collect();
        all.push(Point::on_line(0.0));
        all.extend(positive.iter().map(|a| Point::on_line(*a)));
        let periods = FinitePointSet::new(1, all)?;
        let span = Ball::centered(1, search_window.radius);
        let max_gap = max_gap(&periods, &span)?;
        Ok(EpsPeriodReport {
            epsilon,
            search_window: *search_window,
            relatively_dense_at_scale: max_gap <= search_window.radius / 4.0,
            periods,
            max_gap,
        })
    }
}

/// Matching limit for ε: a third of the minimal separation.
fn matching_limit(pts: &FinitePointSet) -> Result<f64> {
    Ok(min_pair_separation(pts)? / 3.0)
}

fn check_matching_epsilon(pts: &FinitePointSet, epsilon: f64) -> Result<()> {
    let limit = matching_limit(pts)?;
    if !(epsilon < limit) {
        return Err(Error::EpsilonTooCoarse { epsilon, limit });
    }
    Ok(())
}

/// Whether both `x + a` and `x − a` lie within `epsilon` of `pts` for every
/// `x ∈ pts ∩ core`.
fn is_eps_period_on(pts: &FinitePointSet, core: &Ball, a: f64, epsilon: f64) -> bool {
    let shift = Point::on_line(a);
    let xs = pts.points();
    let (lo, hi) = core.bounds();
    let start = xs.partition_point(|p| p.x() < lo);
    xs[start..]
        .iter()
        .take_while(|p| p.x() <= hi)
        .all(|x| pts.dist_to(&(*x + shift)) <= epsilon && pts.dist_to(&(*x - shift)) <= epsilon)
}

/// Outer window needed to test shifts of size up to `reach` on `core`.
fn eps_outer(core: &Ball, reach: f64, epsilon: f64) -> Ball {
    core.enlarged(reach + 2.0 * epsilon + QUERY_SLACK)
}

/// Whether `a` is an ε-almost period of `src` as seen from the points in
/// `window`.
pub fn is_eps_almost_period<S: DeloneSource + ?Sized>(
    src: &S,
    a: f64,
    epsilon: f64,
    window: &Ball,
) -> Result<bool> {
    require_line(src)?;
    require_positive("epsilon", epsilon)?;
    let outer = eps_outer(window, a.abs(), epsilon);
    ensure_covered(src, &outer)?;
    let pts = materialize(src, &outer)?;
    Ok(is_eps_period_on(&pts, window, a, epsilon))
}

/// The shifts among `candidates` that are ε-almost periods as seen from the
/// points in `window`, in the order given. No clustering.
pub fn eps_periods_among<S: DeloneSource + ?Sized>(
    src: &S,
    epsilon: f64,
    window: &Ball,
    candidates: &[f64],
) -> Result<Vec<f64>> {
    require_line(src)?;
    require_positive("epsilon", epsilon)?;
    let reach = candidates.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let outer = eps_outer(window, reach, epsilon);
    ensure_covered(src, &outer)?;
    let pts = materialize(src, &outer)?;
    Ok(candidates
        .iter()
        .copied()
        .filter(|a| is_eps_period_on(&pts, window, *a, epsilon))
        .collect())
}

/// The finite-window set of ε-almost periods
/// `{a : |a| ≤ R, ∀x ∈ Λ ∩ W : dist(x ± a, Λ) ≤ ε}`.
///
/// Candidates are the differences `|λ − x₀|` (with `x₀` the point nearest
/// the window center) on a grid of pitch `ε/4` over `[−ε, ε]` around each.
/// Every shift with `|a| ≤ ε` passes trivially, so periods are reported one
/// per cluster: around each difference the passing candidate nearest to it,
/// and representatives closer than `ε` to a smaller one are dropped. Only
/// nonnegative shifts are tested; the test is symmetric in `a ↦ −a`, so the
/// result is mirrored exactly.
pub fn eps_almost_periods<S: DeloneSource + ?Sized>(
    src: &S,
    epsilon: f64,
    search_window: &Ball,
) -> Result<EpsPeriodReport> {
    require_line(src)?;
    require_positive("epsilon", epsilon)?;
    let radius = search_window.radius;
    let outer = eps_outer(search_window, radius, epsilon);
    ensure_covered(src, &outer)?;
    let pts = materialize(src, &outer)?;
    check_matching_epsilon(&pts, epsilon)?;

    let Some((x0, _)) = pts.nearest(&search_window.center) else {
        return EpsPeriodReport::from_positive(epsilon, search_window, Vec::new());
    };
    let pitch = epsilon / 4.0;
    let mut bases: Vec<f64> = pts
        .iter()
        .map(|y| (y.x() - x0.x()).abs())
        .filter(|b| *b <= radius + epsilon)
        .collect();
    bases.sort_by(f64::total_cmp);
    bases.dedup();
    let mut positive: Vec<f64> = Vec::new();
    for b in bases {
        let rep = [0i32, -1, 1, -2, 2, -3, 3, -4, 4]
            .iter()
            .map(|k| b + *k as f64 * pitch)
            .filter(|a| *a >= 0.0 && *a <= radius)
            .find(|a| is_eps_period_on(&pts, search_window, *a, epsilon));
        if let Some(a) = rep {
            if positive.last().map_or(true, |p| a - p >= epsilon) {
                positive.push(a);
            }
        }
    }
    // 0 is always a period and is added back below
    positive.retain(|a| *a > 0.0);
    EpsPeriodReport::from_positive(epsilon, search_window, positive)
}

/// A bijection `x ↦ y` on the window moving every point by `a` up to `ε`.
#[derive(Clone, Debug, PartialEq)]
pub struct BijectionWitness {
    pub a: Point,
    /// `(x, y)` with `|y − (x + a)| ≤ ε`, sorted by `x`.
    pub pairs: Vec<(Point, Point)>,
    pub max_displacement: f64,
    pub epsilon: f64,
}

impl BijectionWitness {
    /// Re-check injectivity and the displacement bound.
    pub fn verify(&self) -> bool {
        let mut ys: Vec<f64> = self.pairs.iter().map(|(_, y)| y.x()).collect();
        ys.sort_by(f64::total_cmp);
        let injective = ys.windows(2).all(|w| w[1] - w[0] > crate::DUPLICATE_TOL);
        let close = self
            .pairs
            .iter()
            .all(|(x, y)| (y.x() - (x.x() + self.a.x())).abs() <= self.epsilon);
        injective && close && self.max_displacement <= self.epsilon
    }
}

/// For each `x ∈ Λ ∩ W`, the unique `y ∈ Λ` with `|y − (x + a)| ≤ ε`.
pub fn find_bijection<S: DeloneSource + ?Sized>(
    src: &S,
    a: Point,
    epsilon: f64,
    window: &Ball,
) -> Result<BijectionWitness> {
    require_line(src)?;
    if a.dim() != 1 {
        return Err(Error::DimMismatch(1, a.dim()));
    }
    require_positive("epsilon", epsilon)?;
    let outer = eps_outer(window, a.x().abs(), epsilon);
    ensure_covered(src, &outer)?;
    let pts = materialize(src, &outer)?;
    check_matching_epsilon(&pts, epsilon)?;
    let xs = pts.points();
    let mut pairs = Vec::new();
    let mut max_displacement: f64 = 0.0;
    for x in pts.restrict(window).iter() {
        let target = x.x() + a.x();
        // same comparison as the period test, so reported periods always match
        let lo = xs.partition_point(|p| p.x() < target - 2.0 * epsilon);
        let mut hits = xs[lo..]
            .iter()
            .take_while(|p| p.x() <= target + 2.0 * epsilon)
            .filter(|p| p.dist(&Point::on_line(target)) <= epsilon);
        let y = match (hits.next(), hits.next()) {
            (Some(y), None) => *y,
            (None, _) => return Err(Error::NotAlmostPeriod { x: x.x() }),
            (Some(_), Some(_)) => return Err(Error::AmbiguousMatch { x: x.x() }),
        };
        max_displacement = max_displacement.max((y.x() - target).abs());
        pairs.push((*x, y));
    }
    // images come out in order; a repeat would break injectivity
    if let Some(w) = pairs.windows(2).find(|w| w[1].1.x() <= w[0].1.x()) {
        return Err(Error::AmbiguousMatch { x: w[1].0.x() });
    }
    Ok(BijectionWitness {
        a,
        pairs,
        max_displacement,
        epsilon,
    })
}

/// A triangular bump `height · max(0, 1 − |u|/half_width)` centered at 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BumpSpec {
    pub half_width: f64,
    pub height: f64,
}

impl BumpSpec {
    pub fn triangle(half_width: f64, height: f64) -> Result<Self> {
        require_positive("half_width", half_width)?;
        require_positive("height", height)?;
        Ok(BumpSpec { half_width, height })
    }

    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        let v = 1.0 - u.abs() / self.half_width;
        if v > 0.0 {
            self.height * v
        } else {
            0.0
        }
    }

    pub fn lipschitz(&self) -> f64 {
        self.height / self.half_width
    }
}

/// Samples `f(t) = Σ_{x∈Λ} φ(t − x)` on a grid and returns the grid shifts
/// `τ` with `|f(s − τ) − f(s)| ≤ ε` and `|f(s + τ) − f(s)| ≤ ε` at every grid
/// point `s` of the window.
pub fn bohr_diagnostic<S: DeloneSource + ?Sized>(
    src: &S,
    phi: &BumpSpec,
    epsilon: f64,
    grid_pitch: f64,
    window: &Ball,
) -> Result<EpsPeriodReport> {
    require_line(src)?;
    require_positive("epsilon", epsilon)?;
    require_positive("grid_pitch", grid_pitch)?;
    if grid_pitch > phi.half_width / 10.0 {
        return Err(Error::InvalidParameter(alloc::format!(
            "grid_pitch {grid_pitch} exceeds half_width/10 = {}",
            phi.half_width / 10.0
        )));
    }
    let n = libm::floor(window.radius / grid_pitch) as i64;
    let outer = window.enlarged(window.radius + phi.half_width + QUERY_SLACK);
    ensure_covered(src, &outer)?;
    let pts = materialize(src, &outer)?.line_coords();
    let c = window.center.x();
    // f on indices −2n..=2n, stored at offset 2n
    let mut f = Vec::with_capacity((4 * n + 1) as usize);
    let mut lo = 0usize;
    for i in -2 * n..=2 * n {
        let t = c + i as f64 * grid_pitch;
        while lo < pts.len() && pts[lo] <= t - phi.half_width {
            lo += 1;
        }
        let v: f64 = pts[lo..]
            .iter()
            .take_while(|x| **x < t + phi.half_width)
            .map(|x| phi.eval(t - x))
            .sum();
        f.push(v);
    }
    let at = |i: i64| f[(i + 2 * n) as usize];
    let positive: Vec<f64> = (1..=n)
        .filter(|&k| {
            (-n..=n).all(|i| (at(i - k) - at(i)).abs() <= epsilon && (at(i + k) - at(i)).abs() <= epsilon)
        })
        .map(|k| k as f64 * grid_pitch)
        .collect();
    EpsPeriodReport::from_positive(epsilon, window, positive)
}

/// One rung of the scale ladder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LadderStep {
    /// Return vectors at this patch radius.
    Radius(f64),
    /// ε-almost periods at this tolerance.
    Epsilon(f64),
}

/// Outcome of the aggregate diagnostic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ConsistentWithEquicontinuous,
    RefutedAtScale,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::ConsistentWithEquicontinuous => "consistent-with-equicontinuous",
            Verdict::RefutedAtScale => "refuted-at-scale",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// What one ladder step showed on one window.
#[derive(Clone, Debug, PartialEq)]
pub struct StepOutcome {
    pub step: LadderStep,
    pub window: Ball,
    /// Number of return vectors or ε-almost periods found.
    pub count: usize,
    pub max_gap: f64,
    pub witnesses_checked: usize,
    pub witness_failures: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UapReport {
    pub verdict: Verdict,
    pub outcomes: Vec<StepOutcome>,
}

/// Runs return vectors and ε-almost periods on every window for every ladder
/// step, and spot-checks bijection witnesses for a few ε-almost periods.
///
/// The verdict is `refuted-at-scale` when, on the largest window, some
/// ε-almost-period set leaves a gap longer than half the window radius. It is
/// `consistent-with-equicontinuous` when every ε step leaves gaps of at most a
/// quarter of the window radius on every window and every witness checks out.
/// Anything else, including a ladder without ε steps, is `inconclusive`.
/// `seed` rotates which periods are spot-checked.
pub fn uap_diagnostic<S: DeloneSource + ?Sized>(
    src: &S,
    ladder: &[LadderStep],
    windows: &[Ball],
    seed: u64,
) -> Result<UapReport> {
    if ladder.is_empty() {
        return Err(Error::EmptyLadder);
    }
    if windows.is_empty() {
        return Err(Error::InvalidParameter("no windows given".into()));
    }
    let largest = windows.iter().map(|w| w.radius).fold(0.0, f64::max);
    let mut outcomes = Vec::new();
    let mut refuted = false;
    let mut all_dense = true;
    let mut any_eps = false;
    let mut failures = 0usize;
    for step in ladder {
        for w in windows {
            let outcome = match *step {
                LadderStep::Radius(r) => {
                    let rv = return_vectors(src, r, w)?;
                    StepOutcome {
                        step: *step,
                        window: *w,
                        count: rv.vectors.len(),
                        max_gap: rv.max_gap,
                        witnesses_checked: 0,
                        witness_failures: 0,
                    }
                }
                LadderStep::Epsilon(eps) => {
                    any_eps = true;
                    let rep = eps_almost_periods(src, eps, w)?;
                    let nonzero: Vec<Point> =
                        rep.periods.iter().copied().filter(|p| p.x() > 0.0).collect();
                    let mut checked = 0;
                    let mut failed = 0;
                    if !nonzero.is_empty() {
                        let picks = SPOT_CHECKS.min(nonzero.len());
                        let stride = (nonzero.len() / picks).max(1);
                        for j in 0..picks {
                            let idx = (seed as usize).wrapping_add(j * stride) % nonzero.len();
                            checked += 1;
                            match find_bijection(src, nonzero[idx], eps, w) {
                                Ok(wit) if wit.verify() => {}
                                Ok(_) | Err(Error::NotAlmostPeriod { .. }) | Err(Error::AmbiguousMatch { .. }) => {
                                    failed += 1
                                }
                                Err(e) => return Err(e),
                            }
                        }
                    }
                    if w.radius == largest && rep.max_gap > largest / 2.0 {
                        refuted = true;
                    }
                    all_dense &= rep.relatively_dense_at_scale;
                    failures += failed;
                    StepOutcome {
                        step: *step,
                        window: *w,
                        count: rep.periods.len(),
                        max_gap: rep.max_gap,
                        witnesses_checked: checked,
                        witness_failures: failed,
                    }
                }
            };
            outcomes.push(outcome);
        }
    }
    let verdict = if refuted {
        Verdict::RefutedAtScale
    } else if any_eps && all_dense && failures == 0 {
        Verdict::ConsistentWithEquicontinuous
    } else {
        Verdict::Inconclusive
    };
    Ok(UapReport { verdict, outcomes })
}
