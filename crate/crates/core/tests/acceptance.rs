//! Acceptance suite: one PASS/FAIL line per criterion, with pinned
//! thresholds and time limits. Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qfactor::decision::{
    alt_line_cut_simple, evaluate, is_prime, AltLineConfig, Primality, Reality, Site,
};
use qfactor::drinfeld::{DrinfeldPoly, KRFactor};
use qfactor::dynkin::{DynkinA, Node};
use qfactor::graph::{build_graph, ShapeTag};
use qfactor::qchar::{dominant_product_lweights, socle_head, LWeight};
use qfactor::sweep::{self, random_roots, SweepReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_611;
const RANDOM_TREES: u32 = 1000;
const RANDOM_ROOT_SETS: u32 = 1000;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn from_sweeps(reports: &[SweepReport]) -> Outcome {
    let ok = reports.iter().all(SweepReport::passed);
    let detail = reports
        .iter()
        .map(|r| {
            let mut s = format!(
                "{}: {} instances, {} failures",
                r.check, r.instances, r.failures
            );
            if let Some(w) = &r.first_failure {
                s.push_str(&format!(", first counterexample {w}"));
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ");
    outcome(ok, detail)
}

fn a(n: Node) -> DynkinA {
    DynkinA::new(n).unwrap()
}

fn f(color: Node, exponent: i64, weight: u32) -> KRFactor {
    KRFactor::new(color, exponent, weight).unwrap()
}

fn criterion_1() -> Outcome {
    let mut bad = Vec::new();
    for r in 2..=8u32 {
        let g = build_graph(&[f(1, i64::from(r) + 1, r), f(2, 0, 2), f(1, 4, 1)], a(2)).unwrap();
        let expected = if r == 2 {
            Primality::NotPrime
        } else {
            Primality::Prime
        };
        let got = is_prime(&g).primality;
        if g.classify().tag != ShapeTag::AlternatingLine3 || got != expected {
            bad.push(format!("r={r}: {got:?}"));
        }
    }
    let g = build_graph(&[f(1, 2, 1), f(2, 0, 2), f(1, 4, 1)], a(2)).unwrap();
    let arrows: Vec<i64> = g.arrows().iter().map(|x| x.epsilon).collect();
    if !g.was_refactorized() || g.vertices() != [f(1, 3, 2), f(2, 0, 2)] || arrows != [3] {
        bad.push(format!("r=1: {:?} {:?}", g.vertices(), arrows));
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "r=2 not prime, r=3..8 prime, r=1 refactorized".into()
        } else {
            bad.join(", ")
        },
    )
}

fn line(i: (Node, u32), m: i64, j: (Node, u32), jp: (Node, u32), mp: i64) -> AltLineConfig {
    AltLineConfig::new(
        a(2),
        Site::new(i.0, i.1),
        m,
        Site::new(j.0, j.1),
        Site::new(jp.0, jp.1),
        mp,
    )
    .unwrap()
}

fn criterion_2() -> Outcome {
    let reducible = alt_line_cut_simple(&line((2, 2), 4, (1, 1), (2, 1), 3)).unwrap();
    let simple = alt_line_cut_simple(&line((2, 1), 3, (1, 1), (2, 2), 4)).unwrap();
    outcome(
        !reducible && simple,
        format!("booleans ({reducible}, {simple}), expected (false, true)"),
    )
}

fn criterion_3() -> Outcome {
    let g = build_graph(&[f(1, 1, 2), f(2, 5, 1), f(3, 6, 3), f(3, 8, 1)], a(3)).unwrap();
    let pos = |x: KRFactor| g.vertices().iter().position(|v| *v == x).unwrap();
    let mut labels: Vec<(KRFactor, KRFactor, i64)> = g
        .arrows()
        .iter()
        .map(|x| (g.vertex(x.tail), g.vertex(x.head), x.epsilon))
        .collect();
    labels.sort();
    let mut expected = vec![
        (f(3, 8, 1), f(2, 5, 1), 3),
        (f(2, 5, 1), f(1, 1, 2), 4),
        (f(3, 6, 3), f(1, 1, 2), 5),
    ];
    expected.sort();
    let mut problems = Vec::new();
    if labels != expected {
        problems.push(format!("arrows {labels:?}"));
    }
    if g.adjacent(pos(f(3, 8, 1)), pos(f(1, 1, 2))) {
        problems.push("unexpected arrow 3@8 -> 1@1".to_string());
    }
    let subs = g.connected_subgraphs(3);
    if subs.len() != 2
        || subs
            .iter()
            .any(|s| is_prime(s).primality != Primality::Prime)
    {
        problems.push("three-vertex subgraphs are not both prime".to_string());
    }
    let cut_a = AltLineConfig::new(
        a(3),
        Site::new(2, 1),
        4,
        Site::new(1, 2),
        Site::new(3, 3),
        5,
    )
    .unwrap();
    let cut_b = AltLineConfig::new(
        a(3),
        Site::new(3, 3),
        5,
        Site::new(1, 2),
        Site::new(2, 1),
        4,
    )
    .unwrap();
    let cuts = [cut_a, cut_b].map(|c| {
        alt_line_cut_simple(&c.with_orientation(qfactor::decision::Orientation::MiddleIsTarget))
            .unwrap()
    });
    if cuts.iter().any(|&c| c) {
        problems.push(format!("named cuts {cuts:?}"));
    }
    let v = evaluate(&g);
    if v.primality == Primality::Prime {
        problems.push("engine claimed prime".to_string());
    }
    if v.primality != Primality::Unknown || v.reality != Reality::Real {
        problems.push(format!("verdict {:?}/{:?}", v.primality, v.reality));
    }
    let detail = if problems.is_empty() {
        "arrows 3,4,5; no 3@8 -> 1@1; subgraphs prime; both cuts not simple; unknown/real"
            .to_string()
    } else {
        problems.join("; ")
    };
    outcome(problems.is_empty(), detail)
}

fn criterion_4() -> Outcome {
    from_sweeps(&[sweep::forms_agree(6, 4).unwrap()])
}

fn criterion_5() -> Outcome {
    from_sweeps(&[sweep::c3aline(6, 4).unwrap()])
}

fn criterion_6() -> Outcome {
    let rep = sweep::dual_invariance(RANDOM_TREES, SEED).unwrap();
    // Guard against a degenerate generator: the sample must contain real trees.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let sizes: Vec<usize> = (0..RANDOM_TREES)
        .map(|_| sweep::random_tree(&mut rng, 5, 3, 5).len())
        .collect();
    let big = sizes.iter().filter(|&&k| k >= 3).count();
    let mut out = from_sweeps(&[rep]);
    out.ok &= big >= (RANDOM_TREES as usize) / 4;
    out.detail
        .push_str(&format!(", {big} trees with >= 3 vertices"));
    out
}

fn criterion_7() -> Outcome {
    from_sweeps(&[sweep::redsets_algebra(8, 5).unwrap()])
}

/// Weyl dimension formula for sl_{n+1}, weight given by fundamental
/// coordinates `λ_1..λ_n`.
fn weyl_dimension(lambda: &[i64]) -> i64 {
    let n = lambda.len();
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..=n {
        for j in i + 1..=n {
            let s: i64 = lambda[i..j].iter().sum();
            num *= i128::from(s + (j - i) as i64);
            den *= (j - i) as i128;
        }
    }
    (num / den) as i64
}

fn criterion_8() -> Outcome {
    let mut out = from_sweeps(&[
        sweep::qchar_count(8).unwrap(),
        sweep::dominant_pair(6).unwrap(),
    ]);
    let g = a(2);
    let d = dominant_product_lweights(&g, 1, 1, 2).unwrap();
    let sh = socle_head(&g, 1, 1, 2).unwrap();
    let dims: Vec<i64> = d
        .iter()
        .map(|w| weyl_dimension(&w.classical_weight(2)[1..]))
        .collect();
    let total: i64 = dims.iter().sum();
    let expected_pair = {
        let mut v = vec![
            LWeight::var(1, 0, 1).multiply(&LWeight::var(1, 2, 1)),
            LWeight::var(2, 1, 1),
        ];
        v.sort();
        v
    };
    let ok = total == 9 && d == expected_pair && sh.socle_simple && weyl_dimension(&[1, 0]) == 3;
    out.ok &= ok;
    out.detail.push_str(&format!(
        "; sl3 dimensions {dims:?} sum to {total} (3*3 = 9)"
    ));
    out
}

/// Independent factorization: per color, repeatedly peel the longest run
/// `a, a+2, a+4, …` starting at the smallest remaining root.
fn greedy_strings(poly: &DrinfeldPoly) -> Vec<KRFactor> {
    let mut by_color: BTreeMap<Node, BTreeMap<i64, u32>> = BTreeMap::new();
    for (c, e, k) in poly.roots() {
        *by_color.entry(c).or_default().entry(e).or_default() += k;
    }
    let mut out = Vec::new();
    for (c, mut roots) in by_color {
        while let Some((&low, _)) = roots.iter().next() {
            let mut top = low;
            while roots.get(&(top + 2)).copied().unwrap_or(0) > 0 {
                top += 2;
            }
            let mut e = low;
            while e <= top {
                let k = roots.get_mut(&e).unwrap();
                *k -= 1;
                if *k == 0 {
                    roots.remove(&e);
                }
                e += 2;
            }
            let weight = ((top - low) / 2 + 1) as u32;
            out.push(KRFactor::new(c, (low + top) / 2, weight).unwrap());
        }
    }
    out.sort();
    out
}

fn criterion_9() -> Outcome {
    let mut out = from_sweeps(&[sweep::confluence(RANDOM_ROOT_SETS, SEED).unwrap()]);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xface);
    let mut mismatches = 0;
    let mut first = None;
    for _ in 0..RANDOM_ROOT_SETS {
        let poly = random_roots(&mut rng, 5, 10, 6);
        let (ours, theirs) = (poly.q_factorize(), greedy_strings(&poly));
        if ours != theirs {
            mismatches += 1;
            first.get_or_insert((ours, theirs));
        }
    }
    out.ok &= mismatches == 0;
    out.detail
        .push_str(&format!("; greedy oracle mismatches {mismatches}"));
    if let Some((ours, theirs)) = first {
        out.detail
            .push_str(&format!(" (first: {ours:?} vs {theirs:?})"));
    }
    out
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            1,
            "alternating family in A2",
            Duration::from_secs(1),
            criterion_1,
        ),
        (
            2,
            "four-cycle cut booleans",
            Duration::from_secs(1),
            criterion_2,
        ),
        (
            3,
            "non-prime tree with prime subgraphs",
            Duration::from_secs(1),
            criterion_3,
        ),
        (
            4,
            "set form equals inequality form",
            Duration::from_secs(300),
            criterion_4,
        ),
        (
            5,
            "symmetric alternating lines are simple",
            Duration::from_secs(60),
            criterion_5,
        ),
        (
            6,
            "duality invariance of verdicts",
            Duration::from_secs(60),
            criterion_6,
        ),
        (
            7,
            "reducibility set algebra",
            Duration::from_secs(60),
            criterion_7,
        ),
        (
            8,
            "q-characters and dominant pairs",
            Duration::from_secs(60),
            criterion_8,
        ),
        (
            9,
            "factorization confluence",
            Duration::from_secs(30),
            criterion_9,
        ),
    ];
    let mut all_ok = true;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let ok = out.ok && elapsed <= limit;
        all_ok &= ok;
        println!(
            "criterion {id} [{name}]: {} ({:.2}s of {}s) {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            out.detail
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
