//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ballout::bench::{run_grid, successive_ratios};
use ballout::eval::{class_f1, inlier_rows};
use ballout::geometry::{dist, sq_dist};
use ballout::meb::MebIterates;
use ballout::rgd::{boost_forest, score_candidate};
use ballout::synth::{gen_highdim, gen_multiclass, gen_toy_2d};
use ballout::{exact_meb_oracle, f1, peel, recognize, top_k_farthest, ClassSpec, Dataset, Params, ORACLE_LIMIT};
use common::*;
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let k = v.len();
    (v[(k - 1) / 2] + v[k / 2]) / 2.0
}

fn fmt(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(" ")
}

fn iterate_bound() -> Outcome {
    let mut g = rng(1);
    let (mut worst, mut violations) = (f64::NEG_INFINITY, 0);
    let instances = 200;
    for _ in 0..instances {
        let pts = random_instance(&mut g, ORACLE_LIMIT, 4);
        let pts = refs(&pts);
        let exact = exact_meb_oracle(&pts, ORACLE_LIMIT).unwrap();
        for it in MebIterates::new(&pts).unwrap().take(64) {
            let excess = dist(&it.center, &exact.center) - exact.radius / (it.step as f64).sqrt();
            worst = worst.max(excess);
            if excess > 1e-9 {
                violations += 1;
            }
        }
    }
    Outcome {
        pass: violations == 0,
        detail: format!("{instances} instances, t<=64, violations {violations}, max excess {worst:.3e}"),
    }
}

fn far_point_property() -> Outcome {
    let mut g = rng(2);
    let (instances, probes) = (200, 20);
    let mut violations = 0;
    for _ in 0..instances {
        let pts = random_instance(&mut g, ORACLE_LIMIT, 4);
        let pts = refs(&pts);
        let ball = exact_meb_oracle(&pts, ORACLE_LIMIT).unwrap();
        for _ in 0..probes {
            let p: Vec<f64> = (0..ball.dim()).map(|_| g.random_range(-60.0..60.0)).collect();
            let k = dist(&p, &ball.center);
            let far = pts.iter().map(|q| dist(&p, q)).fold(0.0, f64::max);
            if far < (ball.radius.powi(2) + k * k).sqrt() - 1e-9 {
                violations += 1;
            }
        }
    }
    Outcome {
        pass: violations == 0,
        detail: format!("{instances} instances x {probes} probes, violations {violations}"),
    }
}

fn tiny_bicriteria() -> Outcome {
    let ds = tiny();
    let (r, _) = r_opt(&ds, 10);
    let trials = 200;
    let hits = (0..trials as u64)
        .filter(|&seed| {
            let p = tiny_params(seed);
            any_within(&boost_forest(&ds, &p).unwrap(), (1.0 + p.epsilon) * r)
        })
        .count();
    let rate = hits as f64 / trials as f64;
    let p = tiny_params(0);
    let target = (1.0 - p.mu) * (1.0 - p.gamma);
    let threshold = target - 3.0 * std_err(target, trials);
    Outcome {
        pass: rate >= threshold,
        detail: format!("r_opt {r:.4}, success {rate:.3} over {trials} seeds, need >= {threshold:.3}"),
    }
}

fn highdim_f1(gamma: f64) -> Vec<f64> {
    (0..5)
        .map(|seed| {
            let (ds, labels) = gen_highdim(20_000, 100, gamma, seed).unwrap();
            let p = Params {
                gamma,
                seed,
                ..Params::default()
            };
            let r = recognize(&ds, &p).unwrap();
            f1(&r.inliers, &inlier_rows(&labels), ds.n()).unwrap().f1
        })
        .collect()
}

fn table_highdim() -> Outcome {
    let low = highdim_f1(0.1);
    let high = highdim_f1(0.5);
    let (ml, mh) = (median(low.clone()), median(high.clone()));
    Outcome {
        pass: ml >= 0.95 && mh >= 0.80,
        detail: format!(
            "median F1 {ml:.4} at gamma 0.1 (>= 0.95) [{}], {mh:.4} at gamma 0.5 (>= 0.80) [{}]",
            fmt(&low),
            fmt(&high)
        ),
    }
}

fn toy() -> Outcome {
    let scores: Vec<f64> = (0..5)
        .map(|seed| {
            let (ds, labels) = gen_toy_2d(seed);
            let p = Params {
                gamma: 0.4,
                seed,
                ..Params::default()
            };
            let r = recognize(&ds, &p).unwrap();
            f1(&r.inliers, &inlier_rows(&labels), ds.n()).unwrap().f1
        })
        .collect();
    let m = median(scores.clone());
    Outcome {
        pass: m >= 0.90,
        detail: format!("median F1 {m:.4} (>= 0.90) [{}]", fmt(&scores)),
    }
}

fn multiclass() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for gamma in [0.1, 0.2, 0.3, 0.4] {
        let f = (1.0 - gamma) / 3.0;
        let fractions = vec![f; 3];
        let averages: Vec<f64> = (0..5)
            .map(|seed| {
                let (ds, labels) = gen_multiclass(10_000, 100, &fractions, gamma, seed).unwrap();
                let p = Params {
                    gamma,
                    seed,
                    ..Params::default()
                };
                let fits = peel(&ds, &ClassSpec::new(fractions.clone()), &p).unwrap();
                fits.iter()
                    .map(|c| class_f1(&c.inliers, &labels).unwrap().1.f1)
                    .sum::<f64>()
                    / fits.len() as f64
            })
            .collect();
        let m = median(averages);
        pass &= m >= 0.90;
        parts.push(format!("gamma {gamma}: {m:.4}"));
    }
    Outcome {
        pass,
        detail: format!("median average F1 (>= 0.90) {}", parts.join(", ")),
    }
}

fn scaling() -> Outcome {
    let p = Params {
        gamma: 0.1,
        seed: 1,
        ..Params::default()
    };
    let by_n = run_grid(&[5_000, 10_000, 20_000, 40_000], &[50], &p, 5).unwrap();
    let by_d = run_grid(&[10_000], &[25, 50, 100, 200], &p, 5).unwrap();
    let rn = successive_ratios(&by_n);
    let rd = successive_ratios(&by_d);
    let ok = |r: &[f64]| r.iter().all(|x| (1.5..=3.0).contains(x));
    Outcome {
        pass: ok(&rn) && ok(&rd),
        detail: format!("ratios in [1.5, 3.0]: n [{}], d [{}]", fmt(&rn), fmt(&rd)),
    }
}

fn sorted_top_k(ds: &Dataset, center: &[f64], k: usize) -> Vec<usize> {
    let mut order: Vec<(f64, usize)> =
        ds.rows().enumerate().map(|(i, r)| (sq_dist(r, center), i)).collect();
    order.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut idx: Vec<usize> = order[..k].iter().map(|x| x.1).collect();
    idx.sort_unstable();
    idx
}

/// Total variance from pairwise squared distances.
fn naive_variance(ds: &Dataset, rows: &[usize]) -> f64 {
    let m = rows.len() as f64;
    let mut sum = 0.0;
    for (a, &i) in rows.iter().enumerate() {
        for &j in &rows[a + 1..] {
            sum += sq_dist(ds.row(i), ds.row(j));
        }
    }
    sum / (m * m)
}

fn oracle_equivalence() -> Outcome {
    let mut g = rng(8);
    let (mut select_bad, mut score_bad, mut worst) = (0, 0, 0.0f64);
    for trial in 0..1000 {
        let n = g.random_range(2..400);
        let d = g.random_range(1..10);
        let data: Vec<f64> = (0..n * d)
            .map(|_| {
                if trial % 4 == 0 {
                    g.random_range(-2i32..=2) as f64
                } else {
                    g.random_range(-100.0..100.0)
                }
            })
            .collect();
        let ds = Dataset::new(data, n, d).unwrap();
        let center: Vec<f64> = (0..d).map(|_| g.random_range(-3.0..3.0)).collect();
        let k = g.random_range(1..=n);
        if top_k_farthest(&ds, &center, k).unwrap().0 != sorted_top_k(&ds, &center, k) {
            select_bad += 1;
        }
        let m = g.random_range(2..=n);
        let (score, inliers) = score_candidate(&ds, &center, m).unwrap();
        let naive = naive_variance(&ds, &inliers);
        let rel = if naive == 0.0 {
            if score == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            (score - naive).abs() / naive
        };
        worst = worst.max(rel);
        if rel > 1e-9 {
            score_bad += 1;
        }
    }
    Outcome {
        pass: select_bad == 0 && score_bad == 0,
        detail: format!(
            "1000 instances: selection mismatches {select_bad}, score mismatches {score_bad}, max rel err {worst:.2e}"
        ),
    }
}

fn cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ballout");
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("points.csv");
    let labels = dir.path().join("labels.csv");
    let status = Command::new(bin)
        .args(["gen", "highdim", "--n", "5000", "--d", "20", "--gamma", "0.2", "--seed", "3"])
        .arg("--points")
        .arg(&points)
        .arg("--labels")
        .arg(&labels)
        .status()
        .unwrap();
    assert!(status.success());
    let run = |threads: &str| {
        let out = Command::new(bin)
            .arg("fit")
            .arg(&points)
            .args(["--gamma", "0.2", "--forest", "2", "--rounds", "2", "--seed", "9"])
            .args(["--threads", threads])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let outputs = [run("1"), run("1"), run("4")];
    let same = outputs.iter().all(|o| *o == outputs[0]);
    Outcome {
        pass: same && !outputs[0].is_empty(),
        detail: format!(
            "serial x2 and 4 threads: {} ({} bytes)",
            if same { "byte-identical" } else { "differ" },
            outputs[0].len()
        ),
    }
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let checks: [(&str, &str, Option<Duration>, Check); 9] = [
        ("1", "iterate convergence bound", Some(Duration::from_secs(10)), iterate_bound),
        ("2", "far point property", Some(Duration::from_secs(10)), far_point_property),
        ("3", "bi-criteria rate on tiny instance", Some(Duration::from_secs(60)), tiny_bicriteria),
        ("4", "high-dimensional F1", Some(Duration::from_secs(300)), table_highdim),
        ("5", "2D toy F1", Some(Duration::from_secs(120)), toy),
        ("6", "multi-class F1", Some(Duration::from_secs(300)), multiclass),
        ("7", "linear scaling", None, scaling),
        ("8", "selection and score oracles", None, oracle_equivalence),
        ("9", "CLI determinism", None, cli_determinism),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in checks {
        let start = Instant::now();
        let out = check();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|l| took <= l);
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = limit.map_or(String::new(), |l| format!(" / {}s", l.as_secs()));
        println!(
            "[{}] {id}. {name}: {} ({:.1}s{budget})",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64()
        );
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
