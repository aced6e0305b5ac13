//! Registry of checkable statements about odd colorings and thickness, each
//! recomputed from scratch at a chosen budget tier.

use std::fmt;
use std::path::Path;
use std::time::Duration;

use anyhow::Result;
use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use oddthick::coloring::{odd_colorable, odd_verdict, Decision, VertexColoring};
use oddthick::critical::{check_structural_lemmas, is_odd_k_critical, is_odd_k_minor_critical, search_critical};
use oddthick::discharging::{embed_partition, max_admissible_y, verify_certificate};
use oddthick::generate::{complete, cycle, fig1, star_subdivision};
use oddthick::sampling::{extension_soundness, planar_certificate, random_planar_graph, thickness_records, ExtensionOp};
use oddthick::{canonical_key, enumerate, odd_chromatic_number, Budget, Girth, Graph, ThicknessOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Smoke,
    Desk,
    Deep,
}

/// Sizes used at each tier.
#[derive(Debug, Clone, Copy)]
pub struct TierConfig {
    pub kn_star_max: usize,
    pub corpus_n: usize,
    pub complete_max: usize,
    pub random_samples: usize,
    pub extension_instances: usize,
    pub critical_n: usize,
    pub minor_n: usize,
    pub solve_nodes: u64,
    /// Wall-clock cap per solver call.
    pub solve_seconds: Option<u64>,
}

impl Tier {
    pub fn config(self) -> TierConfig {
        match self {
            Tier::Smoke => TierConfig {
                kn_star_max: 4,
                corpus_n: 5,
                complete_max: 6,
                random_samples: 50,
                extension_instances: 100,
                critical_n: 5,
                minor_n: 4,
                solve_nodes: 5_000_000,
                solve_seconds: None,
            },
            Tier::Desk => TierConfig {
                kn_star_max: 5,
                corpus_n: 6,
                complete_max: 7,
                random_samples: 500,
                extension_instances: 1000,
                critical_n: 5,
                minor_n: 5,
                solve_nodes: 200_000_000,
                solve_seconds: None,
            },
            Tier::Deep => TierConfig {
                kn_star_max: 6,
                corpus_n: 7,
                complete_max: 8,
                random_samples: 2000,
                extension_instances: 5000,
                critical_n: 6,
                minor_n: 6,
                solve_nodes: u64::MAX,
                solve_seconds: Some(3600),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "confirmed")]
    Confirmed,
    #[serde(rename = "refuted")]
    Refuted,
    #[serde(rename = "mismatch")]
    Mismatch,
    #[serde(rename = "skipped-budget")]
    SkippedBudget,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Confirmed => "confirmed",
            Status::Refuted => "refuted",
            Status::Mismatch => "mismatch",
            Status::SkippedBudget => "skipped-budget",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    pub claim_id: String,
    pub statement: String,
    pub status: Status,
    /// True when a computation ran out of budget (as opposed to the claim
    /// being outside the tier).
    pub exhausted: bool,
    pub evidence: Option<String>,
    pub details: Value,
}

pub struct Context {
    pub tier: Tier,
    pub cfg: TierConfig,
    pub seed: u64,
    pub budget: Budget,
}

impl Context {
    pub fn new(tier: Tier, seed: u64, nodes: Option<u64>, seconds: Option<u64>) -> Self {
        let cfg = tier.config();
        let mut budget = Budget::nodes(nodes.unwrap_or(cfg.solve_nodes));
        if let Some(s) = seconds.or(cfg.solve_seconds) {
            budget = budget.with_time(Duration::from_secs(s));
        }
        Context { tier, cfg, seed, budget }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

struct Outcome {
    status: Status,
    exhausted: bool,
    details: Value,
}

fn outcome(ok: bool, details: Value) -> Outcome {
    Outcome { status: if ok { Status::Confirmed } else { Status::Refuted }, exhausted: false, details }
}

fn exhausted(details: Value) -> Outcome {
    Outcome { status: Status::SkippedBudget, exhausted: true, details }
}

fn out_of_tier(needed: Tier) -> Outcome {
    Outcome { status: Status::SkippedBudget, exhausted: false, details: json!({ "requires_tier": needed }) }
}

fn chi_o(g: &Graph, ctx: &Context) -> Option<usize> {
    odd_chromatic_number(g, ctx.budget).ok().and_then(|r| r.exact())
}

type Check = fn(&Context) -> Outcome;

/// `(id, statement, check)` in reporting order.
fn registry() -> Vec<(&'static str, &'static str, Check)> {
    vec![
        ("chi_o_C5", "chi_o(C5) = 5", |ctx| match chi_o(&cycle(5).unwrap(), ctx) {
            Some(k) => outcome(k == 5, json!({ "computed": k })),
            None => exhausted(json!({})),
        }),
        ("chi_o_fig1", "the 7-vertex example graph has chi_o = 4", |ctx| match chi_o(&fig1(), ctx) {
            Some(k) => outcome(k == 4, json!({ "computed": k })),
            None => exhausted(json!({})),
        }),
        ("table1_phi1_odd", "phi1 = (1,2,1,3,4,1,1) is an odd coloring of the example graph", |_| {
            let c = VertexColoring::new(vec![1, 2, 1, 3, 4, 1, 1]).unwrap();
            let v = odd_verdict(&fig1(), &c).unwrap();
            outcome(v.is_odd(), json!(v))
        }),
        ("table1_phi2_v3", "phi2 = (1,2,1,2,3,1,1) is proper but fails parity exactly at v3", |_| {
            let c = VertexColoring::new(vec![1, 2, 1, 2, 3, 1, 1]).unwrap();
            let v = odd_verdict(&fig1(), &c).unwrap();
            outcome(v.is_proper && v.failing_parity == [2], json!(v))
        }),
        ("chi_C5_join_K6", "chi(C5 join K6) = 9", |_| {
            let g = cycle(5).unwrap().join(&complete(6).unwrap());
            let (k, _) = oddthick::coloring::chromatic_number(&g).unwrap();
            outcome(k == 9, json!({ "computed": k }))
        }),
        ("biplanar_C5_join_K6", "C5 join K6 is biplanar", |ctx| {
            let g = cycle(5).unwrap().join(&complete(6).unwrap());
            match oddthick::planarity::is_biplanar(&g, ctx.budget) {
                Some(b) => outcome(b, json!({ "biplanar": b })),
                None => exhausted(json!({})),
            }
        }),
        ("thickness_K9", "theta(K9) = 3", |ctx| {
            if ctx.tier < Tier::Deep {
                return out_of_tier(Tier::Deep);
            }
            match oddthick::planarity::thickness(&complete(9).unwrap(), 3, ctx.budget) {
                ThicknessOutcome::Exact { theta, .. } => outcome(theta == 3, json!({ "theta": theta })),
                other => exhausted(json!({ "outcome": format!("{other:?}") })),
            }
        }),
        ("chi_o_Kn_star", "chi_o(Kn*) = n", |ctx| {
            let mut rows = Vec::new();
            let mut ok = true;
            for n in 3..=ctx.cfg.kn_star_max {
                match chi_o(&star_subdivision(n).unwrap(), ctx) {
                    Some(k) => {
                        ok &= k == n;
                        rows.push(json!({ "n": n, "computed": k }));
                    }
                    None => return exhausted(json!({ "rows": rows, "stalled_at": n })),
                }
            }
            outcome(ok, json!({ "rows": rows }))
        }),
        ("chi_o_K2_star", "chi_o(K2*) = 2 (the 'for each n' reading)", |ctx| {
            let Some(k) = chi_o(&star_subdivision(2).unwrap(), ctx) else { return exhausted(json!({})) };
            let status = if k == 2 { Status::Confirmed } else { Status::Mismatch };
            Outcome { status, exhausted: false, details: json!({ "computed": k, "stated": 2 }) }
        }),
        ("delta_Kn_star", "delta(Kn*) = 2", |ctx| {
            let ok = (3..=ctx.cfg.kn_star_max + 1).all(|n| star_subdivision(n).unwrap().min_degree() == Some(2));
            outcome(ok, json!({ "n_max": ctx.cfg.kn_star_max + 1 }))
        }),
        ("girth_Kn_star", "gir(Kn*) = 4", |ctx| {
            let rows: Vec<Value> = (3..=ctx.cfg.kn_star_max + 1)
                .map(|n| json!({ "n": n, "computed": star_subdivision(n).unwrap().girth() }))
                .collect();
            let all_four = (3..=ctx.cfg.kn_star_max + 1).all(|n| star_subdivision(n).unwrap().girth() == Girth::Finite(4));
            let status = if all_four { Status::Confirmed } else { Status::Mismatch };
            Outcome { status, exhausted: false, details: json!({ "stated": 4, "rows": rows }) }
        }),
        ("biplanar_Kn_star", "Kn* is biplanar", |ctx| {
            let mut rows = Vec::new();
            for n in 3..=ctx.cfg.kn_star_max + 2 {
                match oddthick::planarity::thickness(&star_subdivision(n).unwrap(), 2, ctx.budget) {
                    ThicknessOutcome::Exact { theta, .. } if theta <= 2 => rows.push(json!({ "n": n, "theta": theta })),
                    ThicknessOutcome::Exact { theta, .. } => return outcome(false, json!({ "n": n, "theta": theta })),
                    ThicknessOutcome::ExceedsMax { .. } => return outcome(false, json!({ "n": n, "theta": "> 2" })),
                    ThicknessOutcome::Unknown { .. } => return exhausted(json!({ "rows": rows, "stalled_at": n })),
                }
            }
            outcome(true, json!({ "rows": rows }))
        }),
        ("lemma2_avg_degree", "average degree < 6 theta", |ctx| {
            let mut graphs = enumerate::connected_graphs(ctx.cfg.corpus_n.min(enumerate::MAX_ORDER)).unwrap();
            graphs.extend((5..=ctx.cfg.complete_max).map(|n| complete(n).unwrap()));
            let recs = thickness_records(&graphs, 3, ctx.budget);
            let unknown = recs.iter().filter(|r| r.theta.is_none()).count();
            let bad: Vec<&str> = recs.iter().filter(|r| r.holds == Some(false)).map(|r| r.graph6.as_str()).collect();
            let details = json!({ "graphs": recs.len(), "undecided": unknown, "violations": bad });
            if !bad.is_empty() {
                outcome(false, details)
            } else if unknown > 0 {
                exhausted(details)
            } else {
                outcome(true, details)
            }
        }),
        ("C5_in_S4", "C5 is odd 4+-critical", |ctx| match is_odd_k_critical(&cycle(5).unwrap(), 4, ctx.budget) {
            Ok(r) => outcome(r.is_critical, json!(r)),
            Err(e) => exhausted(json!({ "error": e.to_string() })),
        }),
        ("lemma3_on_S4", "every odd 4+-critical graph satisfies the degree/edge conditions", |ctx| {
            let corpus = enumerate::connected_graphs(ctx.cfg.critical_n).unwrap();
            match search_critical(4, &corpus, ctx.budget) {
                Ok((found, refused)) => {
                    let bad: Vec<&str> = found
                        .iter()
                        .filter(|r| !r.lemma_checks.values().all(|c| c.pass))
                        .map(|r| r.graph_key.as_str())
                        .collect();
                    let keys: Vec<&str> = found.iter().map(|r| r.graph_key.as_str()).collect();
                    outcome(bad.is_empty() && refused == 0, json!({ "members": keys, "violations": bad, "refused": refused }))
                }
                Err(e) => exhausted(json!({ "error": e.to_string() })),
            }
        }),
        ("minor_critical_subset", "M_k is contained in S_k, and members have delta >= floor(k/2)", |ctx| {
            let corpus = enumerate::connected_graphs(ctx.cfg.minor_n).unwrap();
            let mut members = Vec::new();
            let mut ok = true;
            for k in 2..=6 {
                for g in &corpus {
                    let Ok(m) = is_odd_k_minor_critical(g, k, ctx.budget) else {
                        return exhausted(json!({ "k": k }));
                    };
                    if m.is_minor_critical {
                        let sub = is_odd_k_critical(g, k, ctx.budget).map(|r| r.is_critical).unwrap_or(false);
                        ok &= sub && m.min_degree_check;
                        members.push(json!({ "k": k, "graph": m.graph_key, "in_S_k": sub, "min_degree": m.min_degree }));
                    }
                }
            }
            outcome(ok, json!({ "members": members }))
        }),
        ("extension_soundness", "the three extension procedures always yield odd (k-1)-colorings", |ctx| {
            let mut rows = serde_json::Map::new();
            let mut ok = true;
            for (i, op) in [ExtensionOp::VertexDeletion, ExtensionOp::EdgePairDeletion, ExtensionOp::NEasy].into_iter().enumerate() {
                let stats = extension_soundness(op, ctx.cfg.extension_instances, &mut ctx.rng(10 + i as u64));
                // A stalled deficiency loop yields no output; it is a finding
                // about the procedure, reported separately.
                ok &= stats.passed + stats.non_shrink == stats.instances;
                let sample: Vec<&String> = stats.failures.iter().take(3).collect();
                rows.insert(
                    format!("{op:?}"),
                    json!({ "instances": stats.instances, "passed": stats.passed, "non_shrink": stats.non_shrink, "sample_failures": sample }),
                );
            }
            outcome(ok, Value::Object(rows))
        }),
        ("n_easy_deficiency_shrinks", "the n-easy deficiency loop always shrinks", |ctx| {
            let stats = extension_soundness(ExtensionOp::NEasy, ctx.cfg.extension_instances, &mut ctx.rng(12));
            let sample: Vec<&String> = stats.failures.iter().take(3).collect();
            // A stall is a gap in the written procedure, not a counterexample
            // to the inequality it is used to prove.
            let status = if stats.non_shrink == 0 { Status::Confirmed } else { Status::Mismatch };
            let details = json!({ "instances": stats.instances, "non_shrink": stats.non_shrink, "sample": sample });
            Outcome { status, exhausted: false, details }
        }),
        ("discharge_conservation", "charges sum to -6t before and after the rule", |ctx| {
            let mut rng = ctx.rng(20);
            let mut checked = 0;
            let mut bad = Vec::new();
            for _ in 0..ctx.cfg.random_samples.min(200) {
                let g = random_planar_graph(3, 12, 3, &mut rng);
                let r = planar_certificate(&g).expect("planar by construction");
                checked += 1;
                if r.s != -6 || r.s_star != -6 || (r.girth_at_least_6 && r.cyclic_face_violations().next().is_some()) {
                    bad.push(oddthick::format::to_graph6(&g));
                }
            }
            for n in 5..=ctx.cfg.complete_max {
                let g = complete(n).unwrap();
                if let Some(p) = oddthick::planarity::thickness(&g, 2, ctx.budget).certificate() {
                    let e = embed_partition(&g, p).unwrap();
                    let r = verify_certificate(&g, p, &e, p.t()).unwrap();
                    checked += 1;
                    if r.s != -6 * p.t() as i64 || r.s_star != r.s || (r.girth_at_least_6 && r.cyclic_face_violations().next().is_some()) {
                        bad.push(oddthick::format::to_graph6(&g));
                    }
                }
            }
            outcome(bad.is_empty(), json!({ "checked": checked, "violations": bad }))
        }),
        ("thm8_girth6", "planar graphs with girth >= 6 are odd 6-colorable (sampled)", |ctx| {
            sample_bound(ctx, 30, 6, 6)
        }),
        ("planar_odd_8_sampled", "planar graphs are odd 8-colorable (sampled)", |ctx| sample_bound(ctx, 31, 3, 8)),
        ("cor10_thresholds", "largest |Y| below 2t/(t-1) is 3 for t = 2 and 2 for t >= 3", |_| {
            let rows: Vec<Value> = (2..=12).map(|t| json!({ "t": t, "max_y": max_admissible_y(t) })).collect();
            let ok = max_admissible_y(2) == Some(3) && (3..=12).all(|t| max_admissible_y(t) == Some(2));
            outcome(ok, json!({ "rows": rows }))
        }),
        ("thm8_lemma5_radius", "the neighborhood radius floor(3t/2) is within the range 4n+2 <= 6t+1", |_| {
            let rows: Vec<Value> = (1..=6)
                .map(|t| json!({ "t": t, "used": 3 * t / 2, "valid_max": (6 * t - 1) / 4 }))
                .collect();
            let ok = (1..=6).all(|t| 3 * t / 2 <= (6 * t - 1) / 4);
            let status = if ok { Status::Confirmed } else { Status::Mismatch };
            Outcome { status, exhausted: false, details: json!({ "rows": rows }) }
        }),
        ("lemma_checks_K4_descriptive", "structural checks are descriptive on non-members", |_| {
            let checks = check_structural_lemmas(&complete(4).unwrap(), 4);
            outcome(checks["lemma3_1"].pass, json!(checks))
        }),
        ("canonical_4_vertex_classes", "there are 11 graphs on 4 vertices", |_| {
            let mut keys: Vec<Vec<u8>> = (0u32..64)
                .map(|mask| {
                    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
                    let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
                    canonical_key(&Graph::from_edges(4, edges).unwrap())
                })
                .collect();
            keys.sort();
            keys.dedup();
            outcome(keys.len() == 11, json!({ "classes": keys.len() }))
        }),
    ]
}

/// Samples random planar graphs with the given girth floor and checks that
/// each is odd `k`-colorable.
fn sample_bound(ctx: &Context, salt: u64, min_girth: usize, k: usize) -> Outcome {
    let mut rng = ctx.rng(salt);
    let graphs: Vec<Graph> = (0..ctx.cfg.random_samples).map(|_| random_planar_graph(4, 14, min_girth, &mut rng)).collect();
    let results: Vec<Decision<VertexColoring>> =
        graphs.par_iter().map(|g| odd_colorable(g, k, ctx.budget)).collect();
    let mut counterexamples = Vec::new();
    let mut unknown = 0;
    for (g, r) in graphs.iter().zip(&results) {
        match r {
            Decision::Yes(_) => {}
            Decision::No => counterexamples.push(oddthick::format::to_graph6(g)),
            Decision::Unknown => unknown += 1,
        }
    }
    let details = json!({ "samples": graphs.len(), "counterexamples": counterexamples, "undecided": unknown });
    if !counterexamples.is_empty() {
        outcome(false, details)
    } else if unknown > 0 {
        exhausted(details)
    } else {
        outcome(true, details)
    }
}

/// Runs every claim. With an output directory, each claim's details go to
/// `<out>/claims/<id>.json`, plus `claims.json` and `claims.csv` summaries.
pub fn run_all(ctx: &Context, out: Option<&Path>, mut on_result: impl FnMut(&ClaimResult)) -> Result<Vec<ClaimResult>> {
    let mut results = Vec::new();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir.join("claims"))?;
    }
    for (id, statement, check) in registry() {
        log::info!("claim {id}");
        let o = check(ctx);
        let evidence = match out {
            Some(dir) => {
                let path = dir.join("claims").join(format!("{id}.json"));
                std::fs::write(&path, serde_json::to_string_pretty(&o.details)? + "\n")?;
                Some(format!("claims/{id}.json"))
            }
            None => None,
        };
        let r = ClaimResult {
            claim_id: id.to_string(),
            statement: statement.to_string(),
            status: o.status,
            exhausted: o.exhausted,
            evidence,
            details: o.details,
        };
        on_result(&r);
        results.push(r);
    }
    if let Some(dir) = out {
        let summary: Vec<Value> = results
            .iter()
            .map(|r| json!({ "claim_id": r.claim_id, "status": r.status, "evidence": r.evidence }))
            .collect();
        std::fs::write(
            dir.join("claims.json"),
            serde_json::to_string_pretty(&json!({ "tier": ctx.tier, "seed": ctx.seed, "claims": summary }))? + "\n",
        )?;
        let mut w = csv::Writer::from_path(dir.join("claims.csv"))?;
        w.write_record(["claim_id", "status", "statement", "evidence"])?;
        for r in &results {
            w.write_record([
                r.claim_id.as_str(),
                &r.status.to_string(),
                r.statement.as_str(),
                r.evidence.as_deref().unwrap_or(""),
            ])?;
        }
        w.flush()?;
    }
    Ok(results)
}
