//! Concrete point-set sources.
//!
//! - [`lattice_source`]: `{B·k + m : k ∈ ℤⁿ, m ∈ motif}` in dimension 1 or 2.
//! - [`sturmian_source`]: the strip projection of ℤ² onto a line of slope θ,
//!   with the half-open projected unit square as acceptance window.
//! - [`kronecker_source`]: the hitting times `{t : phase + (t, θt) ∈ Γ}` of the
//!   Kronecker line with a transversal torus curve `Γ = ℤ² + graph(γ)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::geometry::{Ball, FinitePointSet, Point};
use crate::math::{ceil, cos, dist_to_integer, floor, frac, round, sin, sqrt};
use crate::sources::{DeclaredBounds, DeloneSource, QUERY_SLACK};
use crate::{Error, Result};

/// Largest denominator checked when rejecting rational slopes.
pub const MAX_RATIONAL_DENOMINATOR: i64 = 50;
/// A slope closer than this to `p/q` (with `q ≤ 50`) counts as rational.
pub const RATIONAL_TOL: f64 = 1e-9;
/// Number of samples for the transversality check.
pub const CURVE_SAMPLES: usize = 10_000;
/// Endpoint defect allowed for a closed curve.
pub const ENDPOINT_TOL: f64 = 1e-12;
/// Bisection stops once the bracket is this narrow ...
pub const BISECTION_TOL: f64 = 1e-12;
/// ... or after this many halvings.
pub const BISECTION_MAX_ITER: usize = 60;
/// Roots closer than this are one root found from two adjacent cells.
const ROOT_MERGE_TOL: f64 = 1e-9;
/// Distance from the acceptance-window edge that counts as a boundary hit.
const SINGULAR_TOL: f64 = 1e-12;

/// Reject slopes within [`RATIONAL_TOL`] of a fraction with small denominator.
pub fn check_irrational(theta: f64) -> Result<()> {
    if !theta.is_finite() {
        return Err(Error::NonFinite);
    }
    for q in 1..=MAX_RATIONAL_DENOMINATOR {
        let p = round(theta * q as f64);
        if (theta - p / q as f64).abs() < RATIONAL_TOL {
            return Err(Error::ThetaNearRational { p: p as i64, q });
        }
    }
    Ok(())
}

fn check_slope(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidParameter(format!("theta must lie in (0, 1), got {theta}")));
    }
    check_irrational(theta)
}

// ---------------------------------------------------------------------------
// Lattices

/// A lattice with a finite motif.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSpec {
    /// Basis vectors (one per dimension).
    pub basis: Vec<Point>,
    /// Offsets added to every lattice point.
    pub motif: Vec<Point>,
}

impl LatticeSpec {
    /// `spacing · ℤ + motif`.
    pub fn line(spacing: f64, motif: Vec<f64>) -> Self {
        LatticeSpec {
            basis: alloc::vec![Point::on_line(spacing)],
            motif: motif.into_iter().map(Point::on_line).collect(),
        }
    }

    /// The planar lattice spanned by `b1`, `b2`.
    pub fn planar(b1: (f64, f64), b2: (f64, f64), motif: Vec<(f64, f64)>) -> Self {
        LatticeSpec {
            basis: alloc::vec![Point::planar(b1.0, b1.1), Point::planar(b2.0, b2.1)],
            motif: motif.into_iter().map(|(x, y)| Point::planar(x, y)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Source for [`LatticeSpec`].
#[derive(Clone, Debug)]
pub struct LatticeSource {
    spec: LatticeSpec,
    /// Rows of the inverse basis matrix.
    inverse: [[f64; 2]; 2],
    bounds: DeclaredBounds,
}

impl LatticeSource {
    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    /// Lattice coordinates of `p`.
    fn coords_of(&self, p: Point) -> [f64; 2] {
        let inv = &self.inverse;
        if self.spec.dim() == 1 {
            [inv[0][0] * p.x(), 0.0]
        } else {
            [
                inv[0][0] * p.x() + inv[0][1] * p.y(),
                inv[1][0] * p.x() + inv[1][1] * p.y(),
            ]
        }
    }

    fn lattice_point(&self, k: [i64; 2]) -> Point {
        let b = &self.spec.basis;
        if self.spec.dim() == 1 {
            Point::on_line(b[0].x() * k[0] as f64)
        } else {
            Point::planar(
                b[0].x() * k[0] as f64 + b[1].x() * k[1] as f64,
                b[0].y() * k[0] as f64 + b[1].y() * k[1] as f64,
            )
        }
    }
}

pub fn lattice_source(spec: &LatticeSpec) -> Result<LatticeSource> {
    let dim = spec.dim();
    if !(1..=2).contains(&dim) {
        return Err(Error::UnsupportedDim(dim));
    }
    if spec.motif.is_empty() {
        return Err(Error::InvalidParameter("lattice motif is empty".into()));
    }
    for p in spec.basis.iter().chain(&spec.motif) {
        if p.dim() != dim {
            return Err(Error::DimMismatch(dim, p.dim()));
        }
        if p.coords().iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
    }
    let b = &spec.basis;
    let inverse = if dim == 1 {
        if b[0].x().abs() <= 1e-12 {
            return Err(Error::SingularBasis);
        }
        [[1.0 / b[0].x(), 0.0], [0.0, 0.0]]
    } else {
        // columns of the basis matrix are the basis vectors
        let det = b[0].x() * b[1].y() - b[1].x() * b[0].y();
        if det.abs() <= 1e-12 {
            return Err(Error::SingularBasis);
        }
        [
            [b[1].y() / det, -b[1].x() / det],
            [-b[0].y() / det, b[0].x() / det],
        ]
    };
    let mut src = LatticeSource {
        spec: spec.clone(),
        inverse,
        bounds: DeclaredBounds::default(),
    };
    // motif offsets must differ modulo the lattice
    for (i, a) in spec.motif.iter().enumerate() {
        for m in &spec.motif[i + 1..] {
            let k = src.coords_of(*m - *a);
            let rounded = [round(k[0]) as i64, round(k[1]) as i64];
            let residual = *m - *a - src.lattice_point(rounded);
            if residual.norm() < 1e-9 {
                return Err(Error::InvalidParameter(
                    "motif offsets coincide modulo the lattice".into(),
                ));
            }
        }
    }
    src.bounds = lattice_bounds(&src);
    Ok(src)
}

fn lattice_bounds(src: &LatticeSource) -> DeclaredBounds {
    let spec = &src.spec;
    let dim = spec.dim();
    let reach: i64 = 3;
    let mut min_sep = f64::INFINITY;
    let range: Vec<[i64; 2]> = if dim == 1 {
        (-reach..=reach).map(|k| [k, 0]).collect()
    } else {
        (-reach..=reach)
            .flat_map(|i| (-reach..=reach).map(move |j| [i, j]))
            .collect()
    };
    for a in &spec.motif {
        for m in &spec.motif {
            for k in &range {
                let d = (src.lattice_point(*k) + *m - *a).norm();
                if d > 1e-12 {
                    min_sep = min_sep.min(d);
                }
            }
        }
    }
    let r_max_upper = if dim == 1 {
        let period = spec.basis[0].x().abs();
        let mut offs: Vec<f64> = spec.motif.iter().map(|m| frac(m.x() / period) * period).collect();
        offs.sort_by(f64::total_cmp);
        let mut gap = offs[0] + period - offs[offs.len() - 1];
        for w in offs.windows(2) {
            gap = gap.max(w[1] - w[0]);
        }
        gap / 2.0
    } else {
        let b = &spec.basis;
        ((b[0] + b[1]).norm()).max((b[0] - b[1]).norm()) / 2.0
    };
    DeclaredBounds {
        r_min_lower: Some(min_sep / 2.0),
        r_max_upper: Some(r_max_upper),
    }
}

impl DeloneSource for LatticeSource {
    fn dim(&self) -> usize {
        self.spec.dim()
    }

    fn points_in(&self, window: &Ball) -> Result<FinitePointSet> {
        let dim = self.spec.dim();
        if window.dim() != dim {
            return Err(Error::DimMismatch(dim, window.dim()));
        }
        let r = window.radius + QUERY_SLACK;
        let inv = &self.inverse;
        let spread = [
            r * sqrt(inv[0][0] * inv[0][0] + inv[0][1] * inv[0][1]),
            r * sqrt(inv[1][0] * inv[1][0] + inv[1][1] * inv[1][1]),
        ];
        let mut pts = Vec::new();
        for m in &self.spec.motif {
            let k = self.coords_of(window.center - *m);
            let lo0 = floor(k[0] - spread[0]) as i64 - 1;
            let hi0 = ceil(k[0] + spread[0]) as i64 + 1;
            let (lo1, hi1) = if dim == 1 {
                (0, 0)
            } else {
                (floor(k[1] - spread[1]) as i64 - 1, ceil(k[1] + spread[1]) as i64 + 1)
            };
            for i in lo0..=hi0 {
                for j in lo1..=hi1 {
                    let p = self.lattice_point([i, j]) + *m;
                    if window.contains(&p) {
                        pts.push(p);
                    }
                }
            }
        }
        FinitePointSet::new(dim, pts)
    }

    fn declared_bounds(&self) -> DeclaredBounds {
        self.bounds
    }

    fn label(&self) -> String {
        format!("lattice(dim={}, motif={})", self.spec.dim(), self.spec.motif.len())
    }
}

// ---------------------------------------------------------------------------
// Sturmian cut-and-project sets

/// Slope and internal phase of a Sturmian strip projection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SturmianSpec {
    pub theta: f64,
    /// Offset added to the internal coordinate before the window test.
    pub phase: f64,
}

impl SturmianSpec {
    /// `sqrt(1 + θ²)`.
    pub fn norm(&self) -> f64 {
        sqrt(1.0 + self.theta * self.theta)
    }

    /// Long and short gap lengths, `1/√(1+θ²)` and `θ/√(1+θ²)`.
    pub fn gap_lengths(&self) -> (f64, f64) {
        let l = self.norm();
        (1.0 / l, self.theta / l)
    }

    /// Half-open acceptance window `[−θ/L, 1/L)` in the internal line.
    pub fn window(&self) -> (f64, f64) {
        let l = self.norm();
        (-self.theta / l, 1.0 / l)
    }
}

#[derive(Clone, Debug)]
pub struct SturmianSource {
    spec: SturmianSpec,
}

impl SturmianSource {
    pub fn spec(&self) -> &SturmianSpec {
        &self.spec
    }
}

pub fn sturmian_source(spec: &SturmianSpec) -> Result<SturmianSource> {
    check_slope(spec.theta)?;
    if !spec.phase.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(SturmianSource { spec: *spec })
}

impl DeloneSource for SturmianSource {
    fn dim(&self) -> usize {
        1
    }

    fn points_in(&self, window: &Ball) -> Result<FinitePointSet> {
        if window.dim() != 1 {
            return Err(Error::DimMismatch(1, window.dim()));
        }
        let theta = self.spec.theta;
        let phase = self.spec.phase;
        let l = self.spec.norm();
        let (w_lo, w_hi) = self.spec.window();
        let (lo, hi) = window.enlarged(QUERY_SLACK).bounds();
        // accepted n satisfy n − θm ∈ [−θ − phase·L, 1 − phase·L)
        let d_lo = -theta - phase * l - 1.0;
        let d_hi = 1.0 - phase * l + 1.0;
        // t = m·L + θ·(n − θm)/L
        let m_lo = floor((lo - theta * d_hi / l) / l) as i64 - 1;
        let m_hi = ceil((hi - theta * d_lo / l) / l) as i64 + 1;
        let mut pts = Vec::new();
        for m in m_lo..=m_hi {
            let mf = m as f64;
            let n_lo = floor(theta * mf + d_lo) as i64;
            let n_hi = ceil(theta * mf + d_hi) as i64;
            for n in n_lo..=n_hi {
                let nf = n as f64;
                let u = (nf - theta * mf) / l + phase;
                if (u - w_lo).abs() < SINGULAR_TOL || (u - w_hi).abs() < SINGULAR_TOL {
                    return Err(Error::SingularPhase { m, n });
                }
                if u >= w_lo && u < w_hi {
                    let t = (mf + theta * nf) / l;
                    let p = Point::on_line(t);
                    if window.contains(&p) {
                        pts.push(p);
                    }
                }
            }
        }
        FinitePointSet::new(1, pts)
    }

    fn declared_bounds(&self) -> DeclaredBounds {
        let (long, short) = self.spec.gap_lengths();
        DeclaredBounds {
            r_min_lower: Some(short / 2.0),
            r_max_upper: Some(long / 2.0),
        }
    }

    fn label(&self) -> String {
        format!("sturmian(theta={}, phase={})", self.spec.theta, self.spec.phase)
    }
}

// ---------------------------------------------------------------------------
// Kronecker-curve sets

/// Graph curves `s ↦ (s, γ(s))`, `s ∈ [0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveFamily {
    /// `γ(s) = intercept + slope · s`.
    Linear { intercept: f64, slope: f64 },
    /// `γ(s) = cos²(πs/2)`.
    Cosine2,
    /// `γ(s) = Σ cᵢ sⁱ`.
    Polynomial(Vec<f64>),
}

impl CurveFamily {
    pub fn name(&self) -> &'static str {
        match self {
            CurveFamily::Linear { .. } => "linear",
            CurveFamily::Cosine2 => "cosine2",
            CurveFamily::Polynomial(_) => "polynomial",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match self {
            CurveFamily::Linear { intercept, slope } => alloc::vec![*intercept, *slope],
            CurveFamily::Cosine2 => Vec::new(),
            CurveFamily::Polynomial(c) => c.clone(),
        }
    }

    /// Build from a family name and parameter list.
    pub fn from_params(name: &str, params: &[f64]) -> Result<Self> {
        if params.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        match (name, params) {
            ("linear", [a, b]) => Ok(CurveFamily::Linear {
                intercept: *a,
                slope: *b,
            }),
            ("linear", _) => Err(Error::InvalidParameter(
                "linear curve takes params [intercept, slope]".into(),
            )),
            ("cosine2", []) => Ok(CurveFamily::Cosine2),
            ("cosine2", _) => Err(Error::InvalidParameter("cosine2 curve takes no params".into())),
            ("polynomial", c) if !c.is_empty() => Ok(CurveFamily::Polynomial(c.to_vec())),
            ("polynomial", _) => Err(Error::InvalidParameter(
                "polynomial curve needs at least one coefficient".into(),
            )),
            (other, _) => Err(Error::InvalidParameter(format!("unknown curve family {other:?}"))),
        }
    }
}

/// A transversal curve on the torus together with the flow slope and the
/// starting point `(x, y)` of the flow line.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    pub family: CurveFamily,
    pub theta: f64,
    pub phase: (f64, f64),
}

impl CurveSpec {
    pub fn linear(intercept: f64, slope: f64, theta: f64, phase: (f64, f64)) -> Self {
        CurveSpec {
            family: CurveFamily::Linear { intercept, slope },
            theta,
            phase,
        }
    }

    pub fn cosine2(theta: f64, phase: (f64, f64)) -> Self {
        CurveSpec {
            family: CurveFamily::Cosine2,
            theta,
            phase,
        }
    }

    pub fn polynomial(coeffs: Vec<f64>, theta: f64, phase: (f64, f64)) -> Self {
        CurveSpec {
            family: CurveFamily::Polynomial(coeffs),
            theta,
            phase,
        }
    }

    pub fn with_phase(&self, phase: (f64, f64)) -> Self {
        CurveSpec {
            phase,
            ..self.clone()
        }
    }

    pub fn gamma(&self, s: f64) -> f64 {
        match &self.family {
            CurveFamily::Linear { intercept, slope } => intercept + slope * s,
            CurveFamily::Cosine2 => {
                let c = cos(core::f64::consts::FRAC_PI_2 * s);
                c * c
            }
            CurveFamily::Polynomial(c) => c.iter().rev().fold(0.0, |acc, ci| acc * s + ci),
        }
    }

    pub fn gamma_prime(&self, s: f64) -> f64 {
        match &self.family {
            CurveFamily::Linear { slope, .. } => *slope,
            CurveFamily::Cosine2 => -core::f64::consts::FRAC_PI_2 * sin(core::f64::consts::PI * s),
            CurveFamily::Polynomial(c) => c
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (i, ci)| acc * s + i as f64 * ci),
        }
    }
}

/// Outcome of checking the transversality, closedness and injectivity
/// conditions on a curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveValidationReport {
    /// `min |γ′(s) − θ|` over the samples, or 0 if `γ′ − θ` changes sign.
    pub transversal_margin: f64,
    /// Distance of `γ(1) − γ(0)` to the nearest integer.
    pub endpoint_defect: f64,
    /// Graph curves never self-intersect.
    pub injective: bool,
    /// Lower bound on the time between two crossings of the same flow line
    /// through the curve.
    pub epsilon_estimate: f64,
    /// Whether `γ′ − θ` kept one sign on all samples.
    pub sign_constant: bool,
    /// `max |γ′|` over the samples.
    pub max_slope: f64,
}

impl CurveValidationReport {
    pub fn is_valid(&self) -> bool {
        self.transversal_margin > 0.0 && self.endpoint_defect <= ENDPOINT_TOL && self.injective
    }

    /// Names the failing conditions, e.g. `endpoint_defect=0.5`.
    pub fn failure_message(&self) -> Option<String> {
        let mut parts: Vec<String> = Vec::new();
        if !(self.transversal_margin > 0.0) {
            if self.sign_constant {
                parts.push(format!("transversal_margin={}", self.transversal_margin));
            } else {
                parts.push("transversal_margin=0 (gamma' - theta changes sign)".into());
            }
        }
        if !(self.endpoint_defect <= ENDPOINT_TOL) {
            parts.push(format!("endpoint_defect={}", self.endpoint_defect));
        }
        if !self.injective {
            parts.push("injective=false".into());
        }
        if parts.is_empty() {
            None
        } else {
            Some(parts.join(", "))
        }
    }
}

pub fn validate_curve(spec: &CurveSpec) -> CurveValidationReport {
    let theta = spec.theta;
    let mut margin = f64::INFINITY;
    let mut max_slope: f64 = 0.0;
    let mut positive = 0usize;
    let mut negative = 0usize;
    for i in 0..CURVE_SAMPLES {
        let s = i as f64 / (CURVE_SAMPLES - 1) as f64;
        let g = spec.gamma_prime(s);
        let d = g - theta;
        if d > 0.0 {
            positive += 1;
        } else if d < 0.0 {
            negative += 1;
        }
        margin = margin.min(d.abs());
        max_slope = max_slope.max(g.abs());
    }
    let sign_constant = positive == 0 || negative == 0;
    let transversal_margin = if sign_constant && margin.is_finite() {
        margin
    } else {
        0.0
    };
    let endpoint_defect = dist_to_integer(spec.gamma(1.0) - spec.gamma(0.0));
    let epsilon_estimate = transversal_margin / (2.0 * (1.0 + theta + max_slope));
    CurveValidationReport {
        transversal_margin,
        endpoint_defect,
        injective: true,
        epsilon_estimate,
        sign_constant,
        max_slope,
    }
}

fn ensure_valid(spec: &CurveSpec) -> Result<CurveValidationReport> {
    let report = validate_curve(spec);
    match report.failure_message() {
        Some(msg) => Err(Error::InvalidCurve(msg)),
        None => Ok(report),
    }
}

/// All times `t ∈ [t_lo, t_hi]` at which `phase + (t, θt)` lies on the curve,
/// sorted.
pub fn solve_intersections(spec: &CurveSpec, t_lo: f64, t_hi: f64) -> Result<Vec<f64>> {
    ensure_valid(spec)?;
    if !(t_lo <= t_hi) {
        return Err(Error::InvalidParameter(format!("empty interval [{t_lo}, {t_hi}]")));
    }
    solve_cells(spec, t_lo, t_hi)
}

/// Per unit cell `p` of the first coordinate, the crossing equation
/// `y + θt − q = γ(x + t − p)` has one monotone side, so each integer `q`
/// in the range of the left side gives at most one root.
fn solve_cells(spec: &CurveSpec, t_lo: f64, t_hi: f64) -> Result<Vec<f64>> {
    let theta = spec.theta;
    let x0 = frac(spec.phase.0);
    let y0 = frac(spec.phase.1);
    let lhs = |t: f64, p: f64| {
        let s = ((x0 + t) - p).clamp(0.0, 1.0);
        y0 + theta * t - spec.gamma(s)
    };
    let p_lo = floor(t_lo + x0) as i64 - 1;
    let p_hi = floor(t_hi + x0) as i64 + 1;
    let mut roots = Vec::new();
    for p in p_lo..=p_hi {
        let pf = p as f64;
        // whole cells, so a root does not depend on the query interval
        let a = pf - x0;
        let b = pf + 1.0 - x0;
        let ga = lhs(a, pf);
        let gb = lhs(b, pf);
        let eta = 1e-12 * (1.0 + ga.abs().max(gb.abs()));
        let q_lo = ceil(ga.min(gb) - eta) as i64;
        let q_hi = floor(ga.max(gb) + eta) as i64;
        for q in q_lo..=q_hi {
            let qf = q as f64;
            let fa = ga - qf;
            let fb = gb - qf;
            let root = if fa == 0.0 {
                a
            } else if fb == 0.0 {
                b
            } else if (fa < 0.0) != (fb < 0.0) {
                bisect(|t| lhs(t, pf) - qf, a, b, fa)
            } else if fa.abs() <= eta {
                a
            } else if fb.abs() <= eta {
                b
            } else {
                return Err(Error::BracketFailure { p, q });
            };
            roots.push(root);
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|b, a| *b - *a < ROOT_MERGE_TOL);
    roots.retain(|t| *t >= t_lo && *t <= t_hi);
    Ok(roots)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let lo_negative = f_lo < 0.0;
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Source of the hitting times of the Kronecker line with a curve.
#[derive(Clone, Debug)]
pub struct KroneckerSource {
    spec: CurveSpec,
    validation: CurveValidationReport,
}

impl KroneckerSource {
    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    pub fn validation(&self) -> &CurveValidationReport {
        &self.validation
    }
}

pub fn kronecker_source(spec: &CurveSpec) -> Result<KroneckerSource> {
    check_slope(spec.theta)?;
    if !spec.phase.0.is_finite() || !spec.phase.1.is_finite() {
        return Err(Error::NonFinite);
    }
    if spec.family.params().iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    let validation = ensure_valid(spec)?;
    Ok(KroneckerSource {
        spec: spec.clone(),
        validation,
    })
}

impl DeloneSource for KroneckerSource {
    fn dim(&self) -> usize {
        1
    }

    fn points_in(&self, window: &Ball) -> Result<FinitePointSet> {
        if window.dim() != 1 {
            return Err(Error::DimMismatch(1, window.dim()));
        }
        let (lo, hi) = window.enlarged(QUERY_SLACK).bounds();
        let roots = solve_cells(&self.spec, lo, hi)?;
        Ok(FinitePointSet::from_line(roots)?.restrict(window))
    }

    fn label(&self) -> String {
        format!(
            "kronecker({}, theta={}, phase=({}, {}))",
            self.spec.family.name(),
            self.spec.theta,
            self.spec.phase.0,
            self.spec.phase.1
        )
    }
}
