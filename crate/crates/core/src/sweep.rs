//! Exhaustive and seeded-random consistency checks.
//!
//! Each check walks its parameter space in a fixed order (rank first, then
//! colors, then weights, then gaps), so the first failure it reports is the
//! smallest counterexample in that order.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::decision::{
    alt_line_conditions_ineq, alt_line_cut_conditions, c3aline_config, case_parameters,
    extra_condition_endpoint_form, is_prime, is_real, AltLineConfig, Site,
};
use crate::drinfeld::{is_q_factorization, DrinfeldPoly, KRFactor};
use crate::dynkin::{DynkinA, Interval, Node};
use crate::error::{Error, Result};
use crate::graph::{build_graph, QFactGraph};
use crate::qchar::{dominant_product_lweights, fundamental_qchar, socle_head};
use crate::redsets::{
    in_sl2_set, minimal_subdiagram, r_set, r_set_global, sl2_set, string_parameter,
};

pub const CHECK_NAMES: [&str; 7] = [
    "forms-agree",
    "c3aline",
    "dominant-pair",
    "qchar-count",
    "redsets",
    "confluence",
    "dual-invariance",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub check: String,
    pub instances: u64,
    /// Parameter tuples outside the check's preconditions.
    pub skipped: u64,
    pub failures: u64,
    pub first_failure: Option<Value>,
}

impl SweepReport {
    fn new(check: &str) -> Self {
        SweepReport {
            check: check.to_string(),
            instances: 0,
            skipped: 0,
            failures: 0,
            first_failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.instances > 0
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(witness());
            }
        }
    }
}

/// Bounds shared by the checks; each check reads what it needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepBounds {
    pub max_rank: Node,
    pub max_weight: u32,
    pub samples: u32,
    pub seed: u64,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            max_rank: 6,
            max_weight: 4,
            samples: 1000,
            seed: 0x5eed,
        }
    }
}

pub fn run_check(name: &str, bounds: SweepBounds) -> Result<SweepReport> {
    match name {
        "forms-agree" => forms_agree(bounds.max_rank, bounds.max_weight),
        "c3aline" => c3aline(bounds.max_rank, bounds.max_weight),
        "dominant-pair" => dominant_pair(bounds.max_rank),
        "qchar-count" => qchar_count(bounds.max_rank),
        "redsets" => redsets_algebra(bounds.max_rank, bounds.max_weight),
        "confluence" => confluence(bounds.samples, bounds.seed),
        "dual-invariance" => dual_invariance(bounds.samples, bounds.seed),
        other => Err(Error::InvalidConfig(format!(
            "unknown check {other:?}; expected one of {}",
            CHECK_NAMES.join(", ")
        ))),
    }
}

fn ambients(max_rank: Node) -> impl Iterator<Item = DynkinA> {
    (1..=max_rank).map(|n| DynkinA::new(n).expect("rank >= 1"))
}

/// Every alternating line within the bounds, middle as common source.
pub fn alternating_lines(g: DynkinA, max_weight: u32) -> Vec<AltLineConfig> {
    let mut out = Vec::new();
    let nodes: Vec<Node> = g.nodes().collect();
    for &i in &nodes {
        for &j in &nodes {
            for &jp in &nodes {
                for r in 1..=max_weight {
                    for s in 1..=max_weight {
                        for sp in 1..=max_weight {
                            let ms = r_set_global(&g, i, r, j, s).expect("in range");
                            let mps = r_set_global(&g, j, s, jp, sp).expect("in range");
                            for &m in ms.elements() {
                                for &mp in mps.elements() {
                                    let cfg = AltLineConfig::new(
                                        g,
                                        Site::new(i, r),
                                        m,
                                        Site::new(j, s),
                                        Site::new(jp, sp),
                                        mp,
                                    )
                                    .expect("gaps drawn from the sets");
                                    if cfg.is_alternating_line() {
                                        out.push(cfg);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Set-membership form of the cut criterion against its inequality form,
/// plus the auxiliary facts the inequality form rests on.
pub fn forms_agree(max_rank: Node, max_weight: u32) -> Result<SweepReport> {
    let mut rep = SweepReport::new("forms-agree");
    for g in ambients(max_rank) {
        for cfg in alternating_lines(g, max_weight) {
            let sets = alt_line_cut_conditions(&cfg)?;
            let ineq = alt_line_conditions_ineq(&cfg)?;
            let mut problems = Vec::new();
            if sets.all_hold() != ineq {
                problems.push("set and inequality forms disagree".to_string());
            }
            problems.extend(auxiliary_facts(&cfg)?);
            rep.record(problems.is_empty(), || {
                json!({ "config": cfg, "conditions": sets, "inequality_form": ineq, "problems": problems })
            });
        }
    }
    Ok(rep)
}

/// Facts derived alongside the inequality form, each checked directly.
fn auxiliary_facts(cfg: &AltLineConfig) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let cp = case_parameters(cfg)?;
    let cond = alt_line_cut_conditions(cfg)?;
    let g = &cfg.ambient;
    let (i, j, jp) = (cfg.isolated, cfg.middle, cfg.other);
    let (r, sp) = (i64::from(i.weight), i64::from(jp.weight));
    let min_r_sp = r.min(sp);
    let (m, mp) = (cfg.m, cfg.m_other);
    if j != i && g.distance(i.color, j.color)? > 0 && cp.within.w0_image(i.color)? != j.color {
        problems.push("reflection of the isolated color is not the middle color".into());
    }
    let first_two = cond.other_in_window && cond.other_gap_in_window_set == Some(true);
    if first_two {
        // The reflected gap m - m' - ȟ_J never lies in the set itself.
        let raw = m - mp - i64::from(cp.h_check);
        if raw > 0 && r_set(g, j.color, i.weight, jp.color, jp.weight, cp.within)?.contains(raw) {
            problems.push("m - m' - ȟ_J lies in the set".into());
        }
        if cp.p <= 0 {
            if cp.p_minus < min_r_sp {
                problems.push("p_- < min(r, s')".into());
            }
            if m >= mp && (cp.p_plus < min_r_sp || cp.p_plus > sp) {
                problems.push("p_+ outside [min(r, s'), s']".into());
            }
            if m <= mp && r > sp {
                problems.push("m <= m' but r > s'".into());
            }
        } else {
            if (m >= mp && cp.p_plus < min_r_sp) || (m <= mp && cp.p_minus < min_r_sp) {
                problems.push("p_+- below min(r, s')".into());
            }
        }
        if cond.dual_gap_in_set == Some(true) {
            let extra = cond.extra_gap_avoided.unwrap_or(true);
            if extra != extra_condition_endpoint_form(cfg)? {
                problems.push("endpoint form of the weight condition disagrees".into());
            }
        }
    }
    Ok(problems)
}

/// `L(ω_{i,r}) ⊗ L(ω_{i,r} ω_{j,m,s})` is simple whenever the product is a
/// q-factorization.
pub fn c3aline(max_rank: Node, max_weight: u32) -> Result<SweepReport> {
    let mut rep = SweepReport::new("c3aline");
    for g in ambients(max_rank) {
        for i in g.nodes() {
            for j in g.nodes() {
                for r in 1..=max_weight {
                    for s in 1..=max_weight {
                        for &m in r_set_global(&g, i, r, j, s)?.elements() {
                            if i == j && in_sl2_set(r, s, m) {
                                rep.skipped += 1;
                                continue;
                            }
                            let cfg = c3aline_config(g, i, r, j, s, m)?;
                            let cond = alt_line_cut_conditions(&cfg)?;
                            rep.record(
                                cond.all_hold(),
                                || json!({ "config": cfg, "conditions": cond }),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Brute-force dominant ℓ-weights of a reducible product of two
/// fundamentals against the closed form, with the socle simplicity check.
pub fn dominant_pair(max_rank: Node) -> Result<SweepReport> {
    let mut rep = SweepReport::new("dominant-pair");
    for g in ambients(max_rank) {
        for i in g.nodes() {
            for j in g.nodes() {
                for &m in r_set_global(&g, i, 1, j, 1)?.elements() {
                    let brute = dominant_product_lweights(&g, i, j, m)?;
                    let sh = socle_head(&g, i, j, m)?;
                    let closed = sh.dominant_set();
                    let ok = brute == closed && brute.len() == 2 && sh.socle_simple;
                    rep.record(ok, || {
                        json!({
                            "rank": g.rank(), "i": i, "j": j, "m": m,
                            "brute_force": brute.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                            "closed_form": closed.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                            "socle_simple": sh.socle_simple,
                        })
                    });
                }
            }
        }
    }
    Ok(rep)
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, t| acc * (n + 1 - t) / t)
}

/// Sizes of the fundamental q-characters, and distinctness of their
/// ℓ-weights.
pub fn qchar_count(max_rank: Node) -> Result<SweepReport> {
    let mut rep = SweepReport::new("qchar-count");
    for g in ambients(max_rank) {
        for i in g.nodes() {
            let q = fundamental_qchar(&g, i)?;
            let mut distinct = q.clone();
            distinct.sort();
            distinct.dedup();
            let expected = binomial(u64::from(g.rank()) + 1, u64::from(i));
            let ok = q.len() as u64 == expected && distinct.len() == q.len();
            rep.record(
                ok,
                || json!({ "rank": g.rank(), "i": i, "size": q.len(), "expected": expected }),
            );
        }
    }
    Ok(rep)
}

/// Algebraic facts about reducibility sets over every subdiagram.
pub fn redsets_algebra(max_rank: Node, max_weight: u32) -> Result<SweepReport> {
    let mut rep = SweepReport::new("redsets");
    for g in ambients(max_rank) {
        let n = g.rank();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    let lhs = g.d_ijk(i, j, k)? + g.d_ijk(k, j, i)?;
                    rep.record(
                        lhs == g.distance(k, i)?,
                        || json!({ "identity": "d_ij^k + d_kj^i", "i": i, "j": j, "k": k }),
                    );
                }
                for r in 1..=max_weight {
                    for s in 1..=max_weight {
                        redset_pair_facts(&mut rep, &g, i, r, j, s)?;
                    }
                }
            }
        }
    }
    Ok(rep)
}

fn redset_pair_facts(
    rep: &mut SweepReport,
    g: &DynkinA,
    i: Node,
    r: u32,
    j: Node,
    s: u32,
) -> Result<()> {
    let span = Interval::spanning(i, j)?;
    let windows: Vec<Interval> = g
        .full()
        .subintervals()
        .filter(|w| w.contains_interval(span))
        .collect();
    let d = i64::from(g.distance(i, j)?);
    let top = i64::from(r) + i64::from(s) + d;
    for &w in &windows {
        let set = r_set(g, i, r, j, s, w)?;
        let swapped = r_set(g, j, s, i, r, w)?;
        let slack = span.boundary_distance(w)?;
        let expected_len = i64::from(r.min(s)) + i64::from(slack);
        let parity = set
            .elements()
            .iter()
            .all(|m| (m - top).rem_euclid(2) == 0 && *m > 0);
        let monotone = windows
            .iter()
            .filter(|outer| outer.contains_interval(w))
            .all(|outer| set.is_subset(&r_set(g, i, r, j, s, *outer).expect("valid window")));
        let ok = set.elements() == swapped.elements()
            && parity
            && set.len() as i64 == expected_len
            && monotone
            && set.max() == Some(top + 2 * i64::from(slack));
        rep.record(ok, || json!({ "i": i, "r": r, "j": j, "s": s, "window": w.to_string(), "set": set.to_string() }));
    }
    if i == j {
        let restricted = r_set(g, i, r, i, s, Interval::new(i, i)?)?;
        rep.record(
            restricted.elements() == sl2_set(r, s)?.elements(),
            || json!({ "sl2": true, "i": i, "r": r, "s": s }),
        );
    }
    // Minimal subdiagram: brute force over all windows.
    for &m in r_set_global(g, i, r, j, s)?.elements() {
        let containing: Vec<Interval> = windows
            .iter()
            .copied()
            .filter(|w| {
                string_parameter(g, i, r, j, s, m, *w)
                    .expect("valid")
                    .is_some()
            })
            .collect();
        let minimal: Vec<Interval> = containing
            .iter()
            .copied()
            .filter(|w| containing.iter().all(|o| o.contains_interval(*w)))
            .collect();
        let claimed = minimal_subdiagram(g, i, r, j, s, m)?;
        rep.record(minimal.len() == 1 && claimed == Some(minimal[0]), || {
            json!({ "i": i, "r": r, "j": j, "s": s, "m": m, "claimed": claimed.map(|w| w.to_string()) })
        });
    }
    Ok(())
}

/// Random root multisets: q-factorization does not depend on merge order,
/// is idempotent, and reproduces the polynomial.
pub fn confluence(samples: u32, seed: u64) -> Result<SweepReport> {
    let mut rep = SweepReport::new("confluence");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let poly = random_roots(&mut rng, 5, 10, 6);
        let canonical = poly.q_factorize();
        let shuffled = poly.q_factorize_with(|k| rng.gen_range(0..k));
        let again = DrinfeldPoly::from_factors(&canonical).q_factorize();
        let ok = canonical == shuffled
            && again == canonical
            && is_q_factorization(&canonical)
            && DrinfeldPoly::from_factors(&canonical) == poly;
        rep.record(ok, || json!({ "roots": poly.roots().collect::<Vec<_>>(), "canonical": canonical, "other_order": shuffled }));
    }
    Ok(rep)
}

/// Up to `max_roots` roots with colors in a random rank `<= max_rank` and
/// exponents in `[-spread, spread]`.
pub fn random_roots(
    rng: &mut impl Rng,
    max_rank: Node,
    max_roots: usize,
    spread: i64,
) -> DrinfeldPoly {
    let n = rng.gen_range(1..=max_rank);
    let k = rng.gen_range(1..=max_roots);
    DrinfeldPoly::from_roots(
        (0..k).map(|_| (rng.gen_range(1..=n), rng.gen_range(-spread..=spread))),
    )
}

/// A random tree grown by attaching factors through reducible gaps.
pub fn random_tree(
    rng: &mut impl Rng,
    max_rank: Node,
    max_weight: u32,
    max_vertices: usize,
) -> QFactGraph {
    let n = rng.gen_range(1..=max_rank);
    let g = DynkinA::new(n).expect("rank >= 1");
    let target = rng.gen_range(1..=max_vertices);
    let mut factors =
        vec![KRFactor::new(rng.gen_range(1..=n), 0, rng.gen_range(1..=max_weight)).expect("valid")];
    let mut attempts = 0;
    while factors.len() < target && attempts < 200 {
        attempts += 1;
        let anchor = *factors.choose(rng).expect("nonempty");
        let (color, weight) = (rng.gen_range(1..=n), rng.gen_range(1..=max_weight));
        let set = r_set_global(&g, anchor.color, anchor.weight, color, weight).expect("in range");
        let Some(&m) = set.elements().choose(rng) else {
            continue;
        };
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let new = KRFactor::new(color, anchor.exponent + sign * m, weight).expect("valid");
        let mut candidate = factors.clone();
        candidate.push(new);
        if !is_q_factorization(&candidate) {
            continue;
        }
        let graph = build_graph(&candidate, g).expect("valid");
        if graph.is_tree() && graph.len() == candidate.len() {
            factors = candidate;
        }
    }
    build_graph(&factors, g).expect("valid")
}

/// Verdicts are unchanged by reversing arrows and by the color flip.
pub fn dual_invariance(samples: u32, seed: u64) -> Result<SweepReport> {
    let mut rep = SweepReport::new("dual-invariance");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let g = random_tree(&mut rng, 5, 3, 5);
        let variants = [g.arrow_dual(), g.color_dual_graph()];
        let base = (is_prime(&g).primality, is_real(&g).reality);
        for h in &variants {
            let other = (is_prime(h).primality, is_real(h).reality);
            rep.record(base == other && h.len() == g.len() && h.is_tree(), || {
                json!({ "graph": g.vertices(), "dual": h.vertices(), "verdicts": [base, other] })
            });
        }
    }
    Ok(rep)
}
