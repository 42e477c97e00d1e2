//! Acceptance criteria, one pass/fail line each. Run with `cargo test --test acceptance`.

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use symbez::exactnum::Cyclo12;
use symbez::fixedpoints::{
    gradient_at, symmetric_vanishing_at, tangent_line_p2, verify_catalog_by_stabilizer,
};
use symbez::group::{Permutation, ProjPointExact, Space, SubgroupClass, SymGroup};
use symbez::linalg::rank;
use symbez::poly::{parse_poly, BasisMode, MultiPoly};
use symbez::solver::{solve_p2, solve_p3, SolveError, SolveOptions};
use symbez::verify::{
    check_p3_constraints, expected_orbit_type_p2, orbit_type_independence, p3_degree_congruence,
    random_instance, verify_p2_grid, ExpectedP2, Outcome, VerificationRun, Verdict,
};

const GRID_MAX: u32 = 20;
const GRID_TRIALS: usize = 10;
const GRID_SEED: u64 = 42;

type Line = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn mono(s: &str, n: usize) -> MultiPoly {
    parse_poly(s, n, BasisMode::Monomial).expect("valid polynomial")
}

fn pt(coords: Vec<Cyclo12>) -> ProjPointExact {
    ProjPointExact::new(coords).expect("nonzero point")
}

/// Orbit of `p` under all coordinate permutations.
fn full_orbit(p: &ProjPointExact) -> HashSet<ProjPointExact> {
    Permutation::all(p.len()).iter().map(|s| pt(s.permute(p.coords()))).collect()
}

fn criterion_1() -> Line {
    let start = Instant::now();
    let opts = SolveOptions::default();
    let r = solve_p2(&mono("X+Y+Z", 3), &mono("X^5+Y^5+Z^5", 3), &opts).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(r.points.len() == 5, format!("{} points", r.points.len()))?;
    let exact: HashSet<ProjPointExact> = r.points.iter().filter_map(|p| p.exact.clone()).collect();
    for c in [[-1, 0, 1], [0, -1, 1], [1, -1, 0]] {
        let want = ProjPointExact::from_ints(&c).unwrap();
        check(exact.contains(&want), format!("{want} not certified exactly"))?;
    }
    // the pair [(-1 -+ i sqrt3)/2 : (-1 +- i sqrt3)/2 : 1] = [omega^2 : omega : 1], [omega : omega^2 : 1]
    let w = Cyclo12::omega();
    let w2 = &w * &w;
    let half = Cyclo12::from_frac(1, 2);
    let s3i = &Cyclo12::sqrt3() * &Cyclo12::i();
    let minus = &(&Cyclo12::from_int(-1) - &s3i) * &half;
    let plus = &(&Cyclo12::from_int(-1) + &s3i) * &half;
    check(minus == w2 && plus == w, "closed forms of the pair disagree with omega")?;
    for target in [[minus.clone(), plus.clone()], [plus, minus]] {
        let best = r
            .points
            .iter()
            .map(|p| {
                let x = p.numeric.normalized_at(2);
                x[0].dist(&target[0].embed(128)).max(x[1].dist(&target[1].embed(128)))
            })
            .fold(f64::INFINITY, f64::min);
        check(best < 1e-20, format!("complex point off by {best:e}"))?;
    }
    check(r.orbit_type.to_string() == "[S3/C3] + [S3/C2]", format!("orbit type {}", r.orbit_type))?;
    check(r.real_count == 3, format!("{} real points", r.real_count))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("5 points, [S3/C3] + [S3/C2], 3 real, {elapsed:.2?}"))
}

fn grid(precision: u32) -> Result<(Vec<VerificationRun>, Duration), String> {
    let opts = SolveOptions { precision, ..SolveOptions::default() };
    let start = Instant::now();
    let runs = verify_p2_grid(GRID_MAX, GRID_TRIALS, GRID_SEED, &opts).map_err(|e| e.to_string())?;
    Ok((runs, start.elapsed()))
}

fn criterion_2(runs: &[VerificationRun], elapsed: Duration) -> Line {
    check(runs.len() == 35, format!("{} cells", runs.len()))?;
    for run in runs {
        let (d, e) = (run.params.degrees[0], run.params.degrees[1]);
        let cell = format!("({d},{e})");
        let transverse: Vec<_> = run.trials.iter().filter(|t| t.transverse == Some(true)).collect();
        match expected_orbit_type_p2(d, e) {
            ExpectedP2::Type(t) => {
                let want = t.to_string();
                for tr in &transverse {
                    let got = tr.orbit_type.as_deref().unwrap_or("?");
                    check(got == want, format!("{cell} trial {}: {got}, expected {want}", tr.index))?;
                }
                check(transverse.len() >= 5, format!("{cell}: only {} transverse trials", transverse.len()))?;
            }
            ExpectedP2::Impossible => {
                check(run.trials.len() == GRID_TRIALS, format!("{cell}: {} trials", run.trials.len()))?;
                check(transverse.is_empty(), format!("{cell}: transverse trial in an impossible cell"))?;
                for tr in &run.trials {
                    let certified = tr.certificate.as_ref().is_some_and(|c| c.is_obstruction());
                    check(certified, format!("{cell} trial {}: no obstruction certificate", tr.index))?;
                }
            }
        }
        check(run.verdict == Verdict::Pass, format!("{cell}: verdict {}", run.verdict))?;
    }
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!("35 cells pass, {elapsed:.1?}"))
}

/// Real counts allowed for `de` transverse real points, by direct enumeration of
/// orbit sums: k free orbits of 6 plus the forced C2 (3 real) and C3 (2 complex) orbits.
fn real_count_allowed(de: u64, real: u64) -> bool {
    let c2 = matches!(de % 6, 3 | 5) as u64;
    let free = de / 6;
    (0..=free).any(|k| real == 6 * k + 3 * c2)
}

fn criterion_3(runs: &[VerificationRun]) -> Line {
    let mut checked = 0;
    for run in runs {
        let de = run.params.degrees.iter().map(|&d| d as u64).product::<u64>();
        for tr in run.trials.iter().filter(|t| t.transverse == Some(true)) {
            let real = tr.real_count.ok_or("missing real count")? as u64;
            check(real_count_allowed(de, real), format!("degree {de}: {real} real points"))?;
            checked += 1;
        }
    }
    check(checked > 0, "no transverse trials")?;
    Ok(format!("{checked} transverse trials, 0 violations"))
}

fn criterion_4() -> Line {
    let opts = SolveOptions::default();
    let mut notes = Vec::new();
    for (d, e) in [(1, 5), (2, 3), (1, 2), (2, 2), (3, 3)] {
        let run = orbit_type_independence(Space::P2, &[d, e], 10, 7, &opts).map_err(|e| e.to_string())?;
        check(run.verdict == Verdict::Pass, format!("({d},{e}): {}", run.verdict))?;
        if (d, e) == (2, 2) {
            check(
                run.trials.iter().all(|t| t.outcome == Outcome::Confirmed && t.transverse != Some(true)),
                "(2,2): a trial was not confirmed non-transverse",
            )?;
            notes.push("(2,2) impossible".to_string());
        } else {
            let types: HashSet<&str> = run.confirmed_orbit_types().into_iter().collect();
            check(run.counts.confirmed >= 5, format!("({d},{e}): {} transverse trials", run.counts.confirmed))?;
            check(types.len() == 1, format!("({d},{e}): {types:?}"))?;
            notes.push(format!("({d},{e}) {}", types.into_iter().next().unwrap_or_default()));
        }
    }
    Ok(notes.join(", "))
}

fn criterion_5() -> Line {
    let start = Instant::now();
    let r2 = verify_catalog_by_stabilizer(Space::P2);
    let r3 = verify_catalog_by_stabilizer(Space::P3);
    check(r2.passed(), format!("{:?}", r2.failures()))?;
    check(r3.passed(), format!("{:?}", r3.failures()))?;
    let classes2: HashSet<SubgroupClass> = r2.checks.iter().map(|c| c.class).collect();
    let classes3: HashSet<SubgroupClass> = r3.checks.iter().map(|c| c.class).collect();
    check(classes2.len() == 4, format!("{} S3 classes checked", classes2.len()))?;
    check(classes3.len() == 11, format!("{} S4 classes checked", classes3.len()))?;

    let class = |g, n| SubgroupClass::from_name(g, n).expect("class name");
    let as_set = |ps: Option<&[ProjPointExact]>| -> HashSet<ProjPointExact> { ps.unwrap_or(&[]).iter().cloned().collect() };
    let (one, i) = (Cyclo12::one(), Cyclo12::i());
    let c4: HashSet<_> = [one.clone(), i.clone(), -one.clone(), -i.clone()]
        .into_iter()
        .map(|a| pt(vec![a.clone(), a.pow(2), a.pow(3), Cyclo12::one()]))
        .collect();
    check(as_set(r3.finite_points(&class(SymGroup::S4, "C4"))) == c4, "C4 fixed points differ")?;
    let w = Cyclo12::omega();
    let c3: HashSet<_> = [
        pt(vec![one.clone(), one.clone(), one.clone()]),
        pt(vec![w.clone(), w.pow(2), one.clone()]),
        pt(vec![w.pow(2), w.clone(), one.clone()]),
    ]
    .into_iter()
    .collect();
    check(as_set(r2.finite_points(&class(SymGroup::S3, "C3"))) == c3, "C3 fixed points differ")?;
    let k4: HashSet<_> = [[1, -1, -1, 1], [-1, 1, -1, 1], [1, 1, 1, 1], [-1, -1, 1, 1]]
        .iter()
        .map(|c| ProjPointExact::from_ints(c).unwrap())
        .collect();
    check(as_set(r3.finite_points(&class(SymGroup::S4, "K4n"))) == k4, "normal Klein fixed points differ")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("4 + 11 classes, finite lists match, {elapsed:.2?}"))
}

fn vanishing(p: &ProjPointExact, degree: u32, seed: u64) -> Option<MultiPoly> {
    symmetric_vanishing_at(p, degree, &mut ChaCha8Rng::seed_from_u64(seed), 10)
}

fn criterion_6() -> Line {
    let config = Config { cases: 500, failure_persistence: None, ..Config::default() };
    let run = |name: &str, strategy: BoxedStrategy<(u64, u32, i64)>, test: &dyn Fn(u64, u32, i64) -> Result<(), TestCaseError>| {
        let mut runner = TestRunner::new_with_rng(config.clone(), proptest::test_runner::TestRng::deterministic_rng(config.rng_algorithm));
        runner.run(&strategy, |(s, d, a)| test(s, d, a)).map_err(|e| format!("{name}: {e}"))
    };
    let params = (any::<u64>(), 1u32..=7, -9i64..=9).boxed();

    // (i) symmetric forms vanishing at the all-ones point are singular there
    run("all-ones singularity", params.clone(), &|s, d, _| {
        for n in [3usize, 4] {
            let ones = ProjPointExact::from_ints(&vec![1; n]).unwrap();
            // e1 alone cannot vanish at the all-ones point
            let Some(f) = vanishing(&ones, d, s) else { continue };
            prop_assert!(gradient_at(&f, &ones).iter().all(Cyclo12::is_zero));
        }
        Ok(())
    })?;

    // (ii) at [a:a:1] every smooth symmetric curve has tangent X + Y - 2aZ
    run("diagonal tangent", params.clone(), &|s, d, a| {
        let p = ProjPointExact::from_ints(&[a, a, 1]).unwrap();
        let Some(f) = vanishing(&p, d, s) else { return Ok(()) };
        if let Ok(line) = tangent_line_p2(&f, &p) {
            prop_assert_eq!(line.to_vec(), vec![Cyclo12::one(), Cyclo12::one(), Cyclo12::from_int(-2 * a)]);
        }
        Ok(())
    })?;

    // (iii) at [1:1:0] the tangent line is Z
    run("tangent at [1:1:0]", params.clone(), &|s, d, _| {
        let p = ProjPointExact::from_ints(&[1, 1, 0]).unwrap();
        let Some(f) = vanishing(&p, d, s) else { return Ok(()) };
        if let Ok(line) = tangent_line_p2(&f, &p) {
            prop_assert_eq!(line.to_vec(), vec![Cyclo12::zero(), Cyclo12::zero(), Cyclo12::one()]);
        }
        Ok(())
    })?;

    // (iv) three symmetric surfaces through a point with a repeated coordinate
    let p3_params = (any::<u64>(), [1u32..=4, 1u32..=4, 1u32..=4], [-5i64..=5, -5i64..=5, -5i64..=5]).boxed();
    let mut runner = TestRunner::new_with_rng(config.clone(), proptest::test_runner::TestRng::deterministic_rng(config.rng_algorithm));
    runner
        .run(&p3_params, |(s, ds, [a, b, c])| {
            let Ok(p) = ProjPointExact::from_ints(&[a, a, b, c]) else { return Ok(()) };
            let fs: Option<Vec<MultiPoly>> =
                ds.iter().enumerate().map(|(k, &d)| vanishing(&p, d, s.wrapping_add(k as u64))).collect();
            let Some(fs) = fs else { return Ok(()) };
            let jac: Vec<Vec<Cyclo12>> = fs.iter().map(|f| gradient_at(f, &p)).collect();
            prop_assert!(rank(&jac) <= 2);
            Ok(())
        })
        .map_err(|e| format!("repeated-coordinate rank drop: {e}"))?;
    Ok("4 x 500 instances, 0 failures".into())
}

fn criterion_7() -> Line {
    let start = Instant::now();
    let opts = SolveOptions::default();
    let orbit = full_orbit(&pt(vec![Cyclo12::i(), Cyclo12::from_int(-1), -Cyclo12::i(), Cyclo12::one()]));
    check(orbit.len() == 6, format!("orbit of size {}", orbit.len()))?;
    // instances with a common component are not transverse and are redrawn
    let mut solved = 0;
    let mut redrawn = 0;
    for index in 0..25 {
        if solved == 5 {
            break;
        }
        let fs = random_instance(Space::P3, &[1, 2, 3], GRID_SEED, index);
        let r = match solve_p3(&fs[0], &fs[1], &fs[2], &opts) {
            Err(SolveError::CommonFactor) => {
                redrawn += 1;
                continue;
            }
            other => other.map_err(|e| format!("trial {index}: {e}"))?,
        };
        solved += 1;
        let exact: Option<HashSet<ProjPointExact>> = r.points.iter().map(|p| p.exact.clone()).collect();
        check(r.points.len() == 6, format!("trial {index}: {} points", r.points.len()))?;
        check(exact.as_ref() == Some(&orbit), format!("trial {index}: points differ from the C4 orbit"))?;
        check(r.orbit_type.to_string() == "[S4/C4]", format!("trial {index}: {}", r.orbit_type))?;
        check(r.real_count == 0, format!("trial {index}: {} real points", r.real_count))?;
        let c = check_p3_constraints(&r).map_err(|e| e.to_string())?;
        check(c.passed, format!("trial {index}: {:?}", c.reasons))?;
    }
    check(solved == 5, format!("only {solved} non-degenerate instances"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("5 trials ({redrawn} degenerate redrawn), orbit of [i : -1 : -i : 1], {elapsed:.2?}"))
}

fn criterion_8() -> Line {
    let start = Instant::now();
    // all multisets over orbit sizes {24, 12, 8, 6} with at most one 8 and one 6
    let mut sums = HashSet::new();
    for a in 0..=5u64 {
        for b in 0..=10u64 {
            for eight in 0..=1 {
                for six in 0..=1 {
                    sums.insert(24 * a + 12 * b + 8 * eight + 6 * six);
                }
            }
        }
    }
    let residue_ok = |n: u64| sums.iter().any(|&s| s > 0 && s <= 120 && s % 12 == n % 12);
    let mut triples = 0;
    for d1 in 1..=120u32 {
        for d2 in d1..=120 / d1 {
            for d3 in d2..=120 / (d1 * d2) {
                let n = (d1 * d2 * d3) as u64;
                check(
                    p3_degree_congruence(d1, d2, d3) == residue_ok(n),
                    format!("({d1},{d2},{d3}): congruence disagrees with orbit sums"),
                )?;
                triples += 1;
            }
        }
    }
    for d in 1..=1000u32 {
        for e in d..=1000 / d {
            if let ExpectedP2::Type(t) = expected_orbit_type_p2(d, e) {
                check(t.size() == (d * e) as usize, format!("({d},{e}): size {}", t.size()))?;
            } else {
                check((d * e) % 3 == 1, format!("({d},{e}) impossible with de = {}", d * e))?;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("{triples} degree triples and de <= 1000, {elapsed:.2?}"))
}

fn criterion_9(low: &[VerificationRun], high: &[VerificationRun]) -> Line {
    let summary = |runs: &[VerificationRun]| -> BTreeMap<Vec<u32>, (Verdict, Vec<Option<String>>)> {
        runs.iter()
            .map(|r| (r.params.degrees.clone(), (r.verdict, r.trials.iter().map(|t| t.orbit_type.clone()).collect())))
            .collect()
    };
    let (a, b) = (summary(low), summary(high));
    for (cell, va) in &a {
        let vb = b.get(cell).ok_or(format!("{cell:?} missing at 256 bits"))?;
        check(va == vb, format!("{cell:?}: 128 bits {:?} vs 256 bits {:?}", va, vb))?;
    }
    check(a.len() == b.len(), "cell counts differ")?;
    Ok(format!("{} cells identical at 128 and 256 bits", a.len()))
}

fn report(n: usize, outcome: Line, failed: &mut usize) {
    match outcome {
        Ok(msg) => println!("criterion {n}: PASS ({msg})"),
        Err(msg) => {
            *failed += 1;
            println!("criterion {n}: FAIL ({msg})");
        }
    }
}

fn main() {
    let mut failed = 0;
    report(1, criterion_1(), &mut failed);
    let low = grid(128);
    match &low {
        Ok((runs, elapsed)) => {
            report(2, criterion_2(runs, *elapsed), &mut failed);
            report(3, criterion_3(runs), &mut failed);
        }
        Err(e) => {
            report(2, Err(e.clone()), &mut failed);
            report(3, Err(e.clone()), &mut failed);
        }
    }
    report(4, criterion_4(), &mut failed);
    report(5, criterion_5(), &mut failed);
    report(6, criterion_6(), &mut failed);
    report(7, criterion_7(), &mut failed);
    report(8, criterion_8(), &mut failed);
    let nine = match (&low, grid(256)) {
        (Ok((a, _)), Ok((b, _))) => criterion_9(a, &b),
        (Err(e), _) => Err(e.clone()),
        (_, Err(e)) => Err(e),
    };
    report(9, nine, &mut failed);
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
