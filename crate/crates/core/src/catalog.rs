//! Worked examples with every machine-checkable sub-claim, so they can be
//! rerun from tests and from the command line.

use serde::Serialize;
use serde_json::{json, Value};

use crate::decision::{
    alt_line_cut_conditions, evaluate, is_prime, line_config, Primality, Verdict,
};
use crate::drinfeld::KRFactor;
use crate::dynkin::{DynkinA, Node};
use crate::error::{Error, Result};
use crate::graph::{build_graph, QFactGraph};

pub const EXAMPLE_NAMES: [&str; 3] = ["newprimex", "cosubpt", "cesubpt"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fixture {
    pub name: String,
    pub rank: Node,
    pub factors: Vec<KRFactor>,
}

impl Fixture {
    pub fn graph(&self) -> Result<QFactGraph> {
        build_graph(&self.factors, DynkinA::new(self.rank)?)
    }
}

fn kr(color: Node, exponent: i64, weight: u32) -> KRFactor {
    KRFactor::new(color, exponent, weight).expect("fixture factors are valid")
}

/// The `A_2` line `1 -(r+1)-> 2 <-4- 1` with weights `r, 2, 1`.
pub fn newprimex(r: u32) -> Fixture {
    Fixture {
        name: format!("newprimex(r={r})"),
        rank: 2,
        factors: vec![kr(1, i64::from(r) + 1, r), kr(2, 0, 2), kr(1, 4, 1)],
    }
}

/// A non-prime `A_3` tree all of whose proper connected subgraphs are prime.
pub fn cosubpt() -> Fixture {
    Fixture {
        name: "cosubpt".into(),
        rank: 3,
        factors: vec![kr(1, 1, 2), kr(2, 5, 1), kr(3, 6, 3), kr(3, 8, 1)],
    }
}

/// A prime `A_2` four-cycle with non-prime three-vertex subgraphs.
pub fn cesubpt() -> Fixture {
    Fixture {
        name: "cesubpt".into(),
        rank: 2,
        factors: vec![kr(1, 7, 2), kr(1, 0, 1), kr(2, 4, 2), kr(2, 3, 1)],
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub claim: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl Check {
    fn new(claim: impl Into<String>, expected: Value, actual: Value) -> Self {
        let pass = expected == actual;
        Check {
            claim: claim.into(),
            expected,
            actual,
            pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleReport {
    pub name: String,
    pub checks: Vec<Check>,
    /// Engine verdicts for each fixture graph, keyed by fixture name.
    pub verdicts: Vec<(String, Verdict)>,
}

impl ExampleReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn find(g: &QFactGraph, f: KRFactor) -> usize {
    g.vertices()
        .iter()
        .position(|v| *v == f)
        .expect("vertex present")
}

fn arrow_list(g: &QFactGraph) -> Value {
    let mut arrows: Vec<(String, String, i64)> = g
        .arrows()
        .iter()
        .map(|a| {
            (
                g.vertex(a.tail).to_string(),
                g.vertex(a.head).to_string(),
                a.epsilon,
            )
        })
        .collect();
    arrows.sort();
    json!(arrows)
}

fn arrows(list: &[(KRFactor, KRFactor, i64)]) -> Value {
    let mut v: Vec<(String, String, i64)> = list
        .iter()
        .map(|(t, h, e)| (t.to_string(), h.to_string(), *e))
        .collect();
    v.sort();
    json!(v)
}

fn primality_json(p: Primality) -> Value {
    serde_json::to_value(p).expect("serializable")
}

/// Cut booleans for the tensor `L(middle · other) ⊗ L(isolated)` inside `g`.
fn cut(
    g: &QFactGraph,
    isolated: KRFactor,
    middle: KRFactor,
    other: KRFactor,
) -> Result<(bool, Value)> {
    let sub = g.induced(&[find(g, isolated), find(g, middle), find(g, other)]);
    let cfg = line_config(
        &sub,
        find(&sub, isolated),
        find(&sub, middle),
        find(&sub, other),
    )?;
    let cond = alt_line_cut_conditions(&cfg)?;
    Ok((
        cond.all_hold(),
        serde_json::to_value(cond).expect("serializable"),
    ))
}

fn report_newprimex() -> Result<ExampleReport> {
    let mut checks = Vec::new();
    let mut verdicts = Vec::new();
    let r2 = newprimex(2);
    let g = r2.graph()?;
    checks.push(Check::new(
        "r=2 graph is an alternating line",
        json!("alternating_line3"),
        json!(g.classify().tag),
    ));
    checks.push(Check::new(
        "r=2 arrows carry labels r+1 and 4",
        arrows(&[(kr(1, 3, 2), kr(2, 0, 2), 3), (kr(1, 4, 1), kr(2, 0, 2), 4)]),
        arrow_list(&g),
    ));
    for r in 2..=8 {
        let fx = newprimex(r);
        let v = evaluate(&fx.graph()?);
        let expected = if r == 2 {
            Primality::NotPrime
        } else {
            Primality::Prime
        };
        checks.push(Check::new(
            format!("r={r} primality"),
            primality_json(expected),
            primality_json(v.primality),
        ));
        verdicts.push((fx.name, v));
    }
    let g1 = newprimex(1).graph()?;
    checks.push(Check::new(
        "r=1 input is refactorized",
        json!(true),
        json!(g1.was_refactorized()),
    ));
    checks.push(Check::new(
        "r=1 refactorized vertices",
        json!([kr(1, 3, 2).to_string(), kr(2, 0, 2).to_string()]),
        json!(g1
            .vertices()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()),
    ));
    checks.push(Check::new(
        "r=1 refactorized graph has one arrow labeled 3",
        arrows(&[(kr(1, 3, 2), kr(2, 0, 2), 3)]),
        arrow_list(&g1),
    ));
    Ok(ExampleReport {
        name: "newprimex".into(),
        checks,
        verdicts,
    })
}

fn report_cosubpt() -> Result<ExampleReport> {
    let fx = cosubpt();
    let g = fx.graph()?;
    let (w1, w2, w3, w4) = (kr(1, 1, 2), kr(2, 5, 1), kr(3, 6, 3), kr(3, 8, 1));
    let mut checks = vec![
        Check::new(
            "input is already a q-factorization",
            json!(false),
            json!(g.was_refactorized()),
        ),
        Check::new(
            "arrows and labels",
            arrows(&[(w4, w2, 3), (w2, w1, 4), (w3, w1, 5)]),
            arrow_list(&g),
        ),
        Check::new(
            "no arrow between 3^1@8 and 1^2@1",
            json!(false),
            json!(g.adjacent(find(&g, w4), find(&g, w1))),
        ),
        Check::new("graph is a tree", json!("tree"), json!(g.classify().tag)),
    ];
    let subs = g.connected_subgraphs(3);
    checks.push(Check::new(
        "two connected three-vertex subgraphs",
        json!(2),
        json!(subs.len()),
    ));
    for sub in &subs {
        let tag = sub.classify().tag;
        checks.push(Check::new(
            format!("{tag:?} subgraph is prime"),
            primality_json(Primality::Prime),
            primality_json(is_prime(sub).primality),
        ));
    }
    let (simple, cond) = cut(&g, w2, w1, w3)?;
    checks.push(Check::new(
        "L(3^3@6·1^2@1) ⊗ L(2^1@5) is not simple",
        json!(false),
        json!(simple),
    ));
    checks.push(Check::new(
        "... and fails the first condition",
        json!(false),
        cond["other_in_window"].clone(),
    ));
    let (simple, cond) = cut(&g, w3, w1, w2)?;
    checks.push(Check::new(
        "L(2^1@5·1^2@1) ⊗ L(3^3@6) is not simple",
        json!(false),
        json!(simple),
    ));
    checks.push(Check::new(
        "... and fails the third condition",
        json!(false),
        cond["dual_gap_in_set"].clone(),
    ));
    let v = evaluate(&g);
    checks.push(Check::new(
        "engine never claims prime",
        json!(true),
        json!(v.primality != Primality::Prime),
    ));
    checks.push(Check::new(
        "engine verdict",
        primality_json(Primality::Unknown),
        primality_json(v.primality),
    ));
    checks.push(Check::new("tree is real", json!("real"), json!(v.reality)));
    Ok(ExampleReport {
        name: "cosubpt".into(),
        checks,
        verdicts: vec![(fx.name, v)],
    })
}

fn report_cesubpt() -> Result<ExampleReport> {
    let fx = cesubpt();
    let g = fx.graph()?;
    let (a7, a0, b4, b3) = (kr(1, 7, 2), kr(1, 0, 1), kr(2, 4, 2), kr(2, 3, 1));
    let mut checks = vec![
        Check::new(
            "arrows and labels",
            arrows(&[(b4, a0, 4), (a7, b4, 3), (a7, b3, 4), (b3, a0, 3)]),
            arrow_list(&g),
        ),
        Check::new(
            "graph is a four-cycle",
            json!("other"),
            json!(g.classify().tag),
        ),
    ];
    let cuts = [
        ("L(2^1@3·1^1@0) ⊗ L(2^2@4) is simple", b4, a0, b3, false),
        ("L(2^1@3) ⊗ L(1^2@7·2^2@4) is simple", b3, a7, b4, false),
        ("L(2^2@4·1^1@0) ⊗ L(2^1@3) is simple", b3, a0, b4, true),
        ("L(2^2@4) ⊗ L(1^2@7·2^1@3) is simple", b4, a7, b3, true),
    ];
    for (claim, iso, mid, other, expected) in cuts {
        let (simple, _) = cut(&g, iso, mid, other)?;
        checks.push(Check::new(claim, json!(expected), json!(simple)));
    }
    for (centre, expected) in [
        (a0, Primality::NotPrime),
        (a7, Primality::NotPrime),
        (b4, Primality::Prime),
        (b3, Primality::Prime),
    ] {
        let c = find(&g, centre);
        let opposite = (0..g.len())
            .find(|&v| v != c && !g.adjacent(v, c))
            .expect("four-cycle has an opposite vertex");
        let keep: Vec<usize> = (0..g.len()).filter(|&v| v != opposite).collect();
        let sub = g.induced(&keep);
        checks.push(Check::new(
            format!("three-vertex subgraph centred at {centre}"),
            primality_json(expected),
            primality_json(is_prime(&sub).primality),
        ));
    }
    let v = evaluate(&g);
    checks.push(Check::new(
        "engine never claims not prime",
        json!(true),
        json!(v.primality != Primality::NotPrime),
    ));
    Ok(ExampleReport {
        name: "cesubpt".into(),
        checks,
        verdicts: vec![(fx.name, v)],
    })
}

/// Reruns the named example.
pub fn run_example(name: &str) -> Result<ExampleReport> {
    match name {
        "newprimex" => report_newprimex(),
        "cosubpt" => report_cosubpt(),
        "cesubpt" => report_cesubpt(),
        other => Err(Error::InvalidConfig(format!(
            "unknown example {other:?}; expected one of {}",
            EXAMPLE_NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_passes() {
        for name in EXAMPLE_NAMES {
            let report = run_example(name).unwrap();
            let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
            assert!(failed.is_empty(), "{name}: {failed:#?}");
        }
    }

    #[test]
    fn unknown_example_is_an_error() {
        assert!(run_example("nope").is_err());
    }
}
