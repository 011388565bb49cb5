//! Acceptance criteria, one function per criterion. Each prints a PASS or
//! FAIL line; the test fails if any criterion fails.

use std::time::Instant;

use delone_core::almostperiod::{
    delone_distance, eps_almost_periods, find_bijection, return_vectors, uap_diagnostic, EpsPeriodReport,
    LadderStep, Verdict,
};
use delone_core::dynamics::{
    find_separating_anchor, hull_transversal_sample, is_forcing_counterexample, patch_forcing_probe,
    separation_radius, SeparationOutcome,
};
use delone_core::generators::{
    kronecker_source, lattice_source, sturmian_source, CurveSpec, KroneckerSource, LatticeSource, LatticeSpec,
    SturmianSource, SturmianSpec,
};
use delone_core::sources::{detect_periods, flc_census, materialize};
use delone_core::{Ball, DeloneSource, FinitePointSet, Point, Translate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn golden() -> f64 {
    (5f64.sqrt() - 1.0) / 2.0
}

fn sturmian() -> SturmianSource {
    sturmian_source(&SturmianSpec {
        theta: golden(),
        phase: 0.1,
    })
    .unwrap()
}

fn cosine() -> KroneckerSource {
    kronecker_source(&CurveSpec::cosine2(1.0 / 2f64.sqrt(), (0.0, 0.0))).unwrap()
}

fn linear_curve() -> KroneckerSource {
    kronecker_source(&CurveSpec::linear(0.0, -1.0, 2f64.sqrt() - 1.0, (0.0, 0.0))).unwrap()
}

fn integers() -> LatticeSource {
    lattice_source(&LatticeSpec::line(1.0, vec![0.0])).unwrap()
}

/// `Λ − x₀` with `x₀` the point of `Λ` nearest the origin.
fn normalized<S: DeloneSource>(src: S) -> Translate<S> {
    let x0 = materialize(&src, &Ball::interval(0.0, 5.0))
        .unwrap()
        .nearest(&Point::on_line(0.0))
        .unwrap()
        .0;
    Translate::new(src, x0).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every point of `a` within `tol` of `b` and vice versa, counts equal.
fn match_within(a: &[f64], b: &[f64], tol: f64) -> Result<f64, String> {
    let a_set = FinitePointSet::from_line(a.iter().copied()).unwrap();
    let b_set = FinitePointSet::from_line(b.iter().copied()).unwrap();
    let mut worst: f64 = 0.0;
    for x in a {
        worst = worst.max(b_set.dist_to(&Point::on_line(*x)));
    }
    for x in b {
        worst = worst.max(a_set.dist_to(&Point::on_line(*x)));
    }
    ensure(a.len() == b.len(), || format!("counts differ: {} vs {}", a.len(), b.len()))?;
    ensure(worst <= tol, || format!("worst mismatch {worst:e} > {tol:e}"))?;
    Ok(worst)
}

fn is_symmetric(rep: &EpsPeriodReport) -> bool {
    let xs = rep.periods.line_coords();
    xs.iter().zip(xs.iter().rev()).all(|(a, b)| *a == -*b)
}

fn criterion_1() -> Outcome {
    let theta = 1.0 / 2f64.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let w = Ball::interval(0.0, 50.0);
    let inner = Ball::interval(0.0, 49.0);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        // dyadic phases keep integer shifts exact in floating point
        let phase = (
            rng.gen_range(0..1u64 << 20) as f64 / (1u64 << 20) as f64,
            rng.gen_range(0..1u64 << 20) as f64 / (1u64 << 20) as f64,
        );
        let spec = CurveSpec::cosine2(theta, phase);
        let base = kronecker_source(&spec).map_err(|e| e.to_string())?;
        let here = materialize(&base, &w).map_err(|e| e.to_string())?.line_coords();
        let (k, l) = (rng.gen_range(-5i32..=5) as f64, rng.gen_range(-5i32..=5) as f64);
        let moved = kronecker_source(&spec.with_phase((phase.0 + k, phase.1 + l))).map_err(|e| e.to_string())?;
        let there = materialize(&moved, &w).map_err(|e| e.to_string())?.line_coords();
        ensure(here == there, || format!("phase {phase:?} shifted by ({k}, {l}) changes the set"))?;

        let far = materialize(&base, &Ball::interval(0.0, 61.0)).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let t: f64 = rng.gen_range(-10.0..=10.0);
            let shifted = kronecker_source(&spec.with_phase((phase.0 + t, phase.1 + theta * t)))
                .map_err(|e| e.to_string())?;
            let got = materialize(&shifted, &inner).map_err(|e| e.to_string())?.line_coords();
            let want: Vec<f64> = far
                .restrict(&Ball::interval(t, 49.0))
                .iter()
                .map(|p| p.x() - t)
                .filter(|x| x.abs() <= 49.0 - 1e-6)
                .collect();
            let got: Vec<f64> = got.into_iter().filter(|x| x.abs() <= 49.0 - 1e-6).collect();
            worst = worst.max(match_within(&got, &want, 1e-9).map_err(|e| format!("phase {phase:?}, t = {t}: {e}"))?);
        }
    }
    Ok(format!("10000 translations, worst per-point deviation {worst:.2e}"))
}

fn criterion_2() -> Outcome {
    let src = linear_curve();
    let got = materialize(&src, &Ball::interval(0.0, 50.0)).map_err(|e| e.to_string())?.line_coords();
    let step = 1.0 / 2f64.sqrt();
    let want: Vec<f64> = (-70..=70).map(|k| k as f64 * step).collect();
    let worst = match_within(&got, &want, 1e-9)?;
    let periods = detect_periods(&src, &Ball::interval(0.0, 50.0), 1e-9).map_err(|e| e.to_string())?;
    let smallest = periods
        .iter()
        .map(|p| p.x())
        .filter(|x| *x > 0.0)
        .fold(f64::INFINITY, f64::min);
    ensure((smallest - step).abs() <= 1e-9, || format!("smallest period {smallest}"))?;
    Ok(format!("set = (1/√2)ℤ within {worst:.1e}, smallest period {smallest:.12}"))
}

fn criterion_3() -> Outcome {
    let periods = detect_periods(&cosine(), &Ball::interval(0.0, 200.0), 1e-6).map_err(|e| e.to_string())?;
    ensure(periods.is_empty(), || format!("{} periods found, first {:?}", periods.len(), periods.first()))?;
    Ok("no periods on B_200".into())
}

fn criterion_4(symmetric: &mut Vec<bool>) -> Outcome {
    let src = cosine();
    let mut notes = Vec::new();
    for eps in [0.1, 0.05, 0.02] {
        let mut gaps = Vec::new();
        for radius in [250.0, 500.0] {
            let w = Ball::interval(0.0, radius);
            let rep = eps_almost_periods(&src, eps, &w).map_err(|e| e.to_string())?;
            symmetric.push(is_symmetric(&rep));
            for a in rep.periods.iter() {
                let wit = find_bijection(&src, *a, eps, &w).map_err(|e| format!("ε = {eps}, a = {}: {e}", a.x()))?;
                ensure(wit.max_displacement <= eps && wit.verify(), || {
                    format!("ε = {eps}, a = {}: displacement {}", a.x(), wit.max_displacement)
                })?;
            }
            gaps.push((rep.max_gap, rep.periods.len()));
        }
        let (g1, g2) = (gaps[0].0, gaps[1].0);
        let rel = (g2 - g1).abs() / g1.max(g2);
        notes.push(format!("ε={eps}: gaps {g1:.4}/{g2:.4} ({} / {} periods)", gaps[0].1, gaps[1].1));
        ensure(rel < 0.2, || format!("ε = {eps}: max_gap {g1} on B_250 vs {g2} on B_500"))?;
    }
    Ok(notes.join("; "))
}

fn criterion_5(symmetric: &mut Vec<bool>) -> Outcome {
    let src = sturmian();
    let r_min = src.declared_bounds().r_min_lower.unwrap();
    let eps = 0.05 * r_min;
    let rep = eps_almost_periods(&src, eps, &Ball::interval(0.0, 500.0)).map_err(|e| e.to_string())?;
    symmetric.push(is_symmetric(&rep));
    let xs = rep.periods.line_coords();
    ensure(xs == vec![0.0], || format!("{} periods, e.g. {:?}", xs.len(), xs.iter().find(|x| **x > 0.0)))?;
    Ok(format!("ε = {eps:.5}: periods = {{0}}"))
}

fn criterion_6() -> Outcome {
    let stu = sturmian();
    let s200 = flc_census(&stu, 3.0, &Ball::interval(0.0, 200.0), 1e-9).map_err(|e| e.to_string())?;
    let s400 = flc_census(&stu, 3.0, &Ball::interval(0.0, 400.0), 1e-9).map_err(|e| e.to_string())?;
    ensure(s200.len() == s400.len(), || format!("Sturmian classes {} vs {}", s200.len(), s400.len()))?;
    let cos = cosine();
    let c200 = flc_census(&cos, 3.0, &Ball::interval(0.0, 200.0), 1e-9).map_err(|e| e.to_string())?;
    let c400 = flc_census(&cos, 3.0, &Ball::interval(0.0, 400.0), 1e-9).map_err(|e| e.to_string())?;
    ensure(c400.len() > c200.len(), || format!("cosine classes {} vs {}", c200.len(), c400.len()))?;
    Ok(format!(
        "Sturmian {} = {} classes; cosine² {} < {} classes",
        s200.len(),
        s400.len(),
        c200.len(),
        c400.len()
    ))
}

fn criterion_7() -> Outcome {
    let w = Ball::interval(0.0, 50.0);
    let mut total = 0;
    let families: Vec<(&str, Box<dyn DeloneSource>)> = vec![
        ("lattice", Box::new(normalized(lattice_source(&LatticeSpec::line(1.0, vec![0.0, 0.3])).unwrap()))),
        ("sturmian", Box::new(normalized(sturmian()))),
        ("kronecker", Box::new(normalized(cosine()))),
    ];
    for (name, src) in &families {
        let pts = materialize(src, &Ball::interval(0.0, 60.0)).map_err(|e| e.to_string())?;
        for r in [5.0, 10.0, 20.0] {
            let rep = return_vectors(src, r, &w).map_err(|e| format!("{name}, r = {r}: {e}"))?;
            let bad = rep.containment_violations(&pts);
            ensure(bad.is_empty(), || format!("{name}, r = {r}: {} violations", bad.len()))?;
            total += rep.vectors.len();
        }
    }
    Ok(format!("{total} return vectors over 9 runs, 0 violations"))
}

fn criterion_8(symmetric: &[bool]) -> Outcome {
    let src = normalized(sturmian());
    let mut all = symmetric.to_vec();
    for eps in [0.1, 0.05] {
        for radius in [50.0, 100.0] {
            let rep = eps_almost_periods(&src, eps, &Ball::interval(0.0, radius)).map_err(|e| e.to_string())?;
            all.push(is_symmetric(&rep));
        }
    }
    let z = eps_almost_periods(&integers(), 0.1, &Ball::interval(0.0, 50.0)).map_err(|e| e.to_string())?;
    all.push(is_symmetric(&z));
    ensure(all.iter().all(|s| *s), || format!("{} of {} runs asymmetric", all.iter().filter(|s| !**s).count(), all.len()))?;
    Ok(format!("{} runs exactly symmetric", all.len()))
}

fn criterion_9() -> Outcome {
    let src = sturmian();
    let r_max = src.declared_bounds().r_max_upper.unwrap();
    let c = separation_radius(r_max, 0);
    let sample = hull_transversal_sample(&src, &Ball::interval(0.0, 100.0), 100).map_err(|e| e.to_string())?;
    let w = Ball::interval(0.0, 500.0);
    let mut farthest: f64 = 0.0;
    for k in 0..50 {
        let (i, j) = (k, 50 + (k * 7) % 50);
        let e1 = sample.translate(i);
        let e2 = sample.translate(j);
        match find_separating_anchor(&e1, &e2, c, &w, 1e-9).map_err(|e| format!("pair {i},{j}: {e}"))? {
            SeparationOutcome::Found(v) => farthest = farthest.max(v.x().abs()),
            SeparationOutcome::NotFound => return Err(format!("pair {i},{j}: no anchor in B_500")),
        }
    }
    Ok(format!("50 pairs separated with C = {c:.4}, farthest anchor |v| = {farthest:.4}"))
}

fn criterion_10() -> Outcome {
    let stu = sturmian();
    let sample = hull_transversal_sample(&stu, &Ball::interval(0.0, 200.0), 200).map_err(|e| e.to_string())?;
    let anchor = sample.offsets[0];
    let rep = patch_forcing_probe(&stu, anchor, 5.0, 50.0, &sample, 1e-9).map_err(|e| e.to_string())?;
    let (a, b) = rep.counterexample.ok_or("Sturmian patch reported forced")?;
    ensure(!rep.forced, || "forced flag set with a counterexample".into())?;
    ensure(
        is_forcing_counterexample(&stu, &rep.patch, a, b, 50.0, 1e-9).map_err(|e| e.to_string())?,
        || "counterexample does not verify".into(),
    )?;
    let lin = linear_curve();
    let lsample = hull_transversal_sample(&lin, &Ball::interval(0.0, 50.0), 50).map_err(|e| e.to_string())?;
    let lrep = patch_forcing_probe(&lin, Point::on_line(0.0), 2.0, 20.0, &lsample, 1e-9).map_err(|e| e.to_string())?;
    ensure(lrep.forced, || format!("linear curve set not forced: {:?}", lrep.counterexample))?;
    Ok(format!("Sturmian counterexample ({:.4}, {:.4}); linear curve forced", a.x(), b.x()))
}

fn criterion_11() -> Outcome {
    let ladder = [
        LadderStep::Radius(5.0),
        LadderStep::Epsilon(0.1),
        LadderStep::Epsilon(0.05),
        LadderStep::Epsilon(0.02),
    ];
    let windows = [Ball::interval(0.0, 250.0), Ball::interval(0.0, 500.0)];
    let cases: Vec<(&str, Box<dyn DeloneSource>, Verdict)> = vec![
        ("ℤ", Box::new(integers()), Verdict::ConsistentWithEquicontinuous),
        ("linear curve", Box::new(linear_curve()), Verdict::ConsistentWithEquicontinuous),
        ("Sturmian", Box::new(normalized(sturmian())), Verdict::RefutedAtScale),
        ("cosine²", Box::new(cosine()), Verdict::ConsistentWithEquicontinuous),
    ];
    let mut notes = Vec::new();
    for (name, src, want) in &cases {
        let rep = uap_diagnostic(src, &ladder, &windows, 0).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.verdict == *want, || {
            let gaps: Vec<String> = rep.outcomes.iter().map(|o| format!("{:?}@{}:{:.3}", o.step, o.window.radius, o.max_gap)).collect();
            format!("{name}: {} instead of {} [{}]", rep.verdict.as_str(), want.as_str(), gaps.join(", "))
        })?;
        notes.push(format!("{name} {}", rep.verdict.as_str()));
    }
    Ok(notes.join("; "))
}

fn criterion_12() -> Outcome {
    let r_cap = 100.0;
    let slack = 2.0 / r_cap;
    let stu = sturmian();
    let cos = cosine();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let stu_pts = materialize(&stu, &Ball::interval(0.0, 300.0)).unwrap();
    let cos_pts = materialize(&cos, &Ball::interval(0.0, 300.0)).unwrap();
    let mut worst = f64::NEG_INFINITY;
    for k in 0..20 {
        let (src, pts): (&dyn DeloneSource, &FinitePointSet) = if k % 2 == 0 { (&stu, &stu_pts) } else { (&cos, &cos_pts) };
        let pick = |rng: &mut ChaCha8Rng| pts.points()[rng.gen_range(0..pts.len())];
        let [a, b, c] = [pick(&mut rng), pick(&mut rng), pick(&mut rng)].map(|x| Translate::new(src, x).unwrap());
        let d = |p: &Translate<&dyn DeloneSource>, q: &Translate<&dyn DeloneSource>| delone_distance(p, q, r_cap).unwrap();
        for s in [&a, &b, &c] {
            ensure(d(s, s) == 0.0, || format!("triple {k}: d(s, s) = {}", d(s, s)))?;
        }
        let (ab, ba, bc, ac) = (d(&a, &b), d(&b, &a), d(&b, &c), d(&a, &c));
        ensure(ab == ba, || format!("triple {k}: d(a,b) = {ab} but d(b,a) = {ba}"))?;
        for (x, y, z) in [(ac, ab, bc), (ab, ac, bc), (bc, ab, ac)] {
            worst = worst.max(x - y - z);
            ensure(x <= y + z + slack, || format!("triple {k}: {x} > {y} + {z} + {slack}"))?;
        }
    }
    Ok(format!("20 triples, largest triangle excess {worst:.2e} (slack {slack})"))
}

#[test]
fn acceptance() {
    let mut symmetric = Vec::new();
    let mut results: Vec<(usize, Outcome, f64)> = Vec::new();
    macro_rules! run {
        ($n:expr, $e:expr) => {{
            let start = Instant::now();
            let out = $e;
            results.push(($n, out, start.elapsed().as_secs_f64()));
        }};
    }
    run!(1, criterion_1());
    run!(2, criterion_2());
    run!(3, criterion_3());
    run!(4, criterion_4(&mut symmetric));
    run!(5, criterion_5(&mut symmetric));
    run!(6, criterion_6());
    run!(7, criterion_7());
    run!(8, criterion_8(&symmetric));
    run!(9, criterion_9());
    run!(10, criterion_10());
    run!(11, criterion_11());
    run!(12, criterion_12());
    let mut failed = Vec::new();
    for (n, out, secs) in &results {
        match out {
            Ok(msg) => println!("criterion {n:>2}: PASS ({secs:.1}s) {msg}"),
            Err(msg) => {
                println!("criterion {n:>2}: FAIL ({secs:.1}s) {msg}");
                failed.push(*n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
