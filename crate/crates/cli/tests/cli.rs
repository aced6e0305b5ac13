use std::fs;
use std::process::{Command, Output};

fn oddthick(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddthick")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const FIG1_EDGES: &str = "n=7\n0 1\n1 2\n2 3\n3 4\n4 5\n1 5\n";

#[test]
fn solve_odd_c5() {
    let o = oddthick(&["solve", "--odd", "--graph6", "Dhc"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("chi_o = 5\n"), "{out}");
    let witness: serde_json::Value = serde_json::from_str(out.lines().nth(1).unwrap()).unwrap();
    assert_eq!(witness["palette_size"], 5);
}

#[test]
fn solve_chromatic_join() {
    let o = oddthick(&["solve", "--chromatic", "--family", "join(cycle(5),complete(6))"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("chi = 9\n"));
}

#[test]
fn tiny_budget_reports_unknown() {
    let o = oddthick(&["solve", "--family", "cycle(5)", "--budget-nodes", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("budget exhausted"));
}

#[test]
fn verify_table_colorings() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("fig1.edges");
    fs::write(&graph, FIG1_EDGES).unwrap();
    let phi1 = dir.path().join("phi1.json");
    let phi2 = dir.path().join("phi2.json");
    fs::write(&phi1, r#"{"colors":{"0":1,"1":2,"2":1,"3":3,"4":4,"5":1,"6":1},"palette_size":4}"#).unwrap();
    fs::write(&phi2, r#"{"colors":{"0":1,"1":2,"2":1,"3":2,"4":3,"5":1,"6":1},"palette_size":3}"#).unwrap();

    let ok = oddthick(&["verify", "--graph", graph.to_str().unwrap(), "--coloring", phi1.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));

    let bad = oddthick(&["verify", "--edgelist", graph.to_str().unwrap(), "--coloring", phi2.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(stdout(&bad).trim(), "parity fails at vertex 2");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(oddthick(&["solve"]).status.code(), Some(2));
    assert_eq!(oddthick(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(oddthick(&["solve", "--graph6", "Dhc", "--family", "cycle(5)"]).status.code(), Some(2));
    assert_eq!(oddthick(&["solve", "--graph6", "not graph6 at all!"]).status.code(), Some(2));
}

#[test]
fn generate_round_trips_through_solve() {
    let o = oddthick(&["generate", "--family", "star_subdivision(3)"]);
    assert_eq!(o.status.code(), Some(0));
    let g6 = stdout(&o).trim().to_string();
    let s = oddthick(&["solve", "--graph6", &g6]);
    assert!(stdout(&s).starts_with("chi_o = 3\n"));

    let all = oddthick(&["generate", "--connected", "4"]);
    assert_eq!(stdout(&all).lines().count(), 1 + 1 + 2 + 6);
}

#[test]
fn random_planar_is_seeded() {
    let a = oddthick(&["generate", "--random-planar", "5", "--seed", "9"]);
    let b = oddthick(&["generate", "--random-planar", "5", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 5);
}

#[test]
fn thickness_then_discharge() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = oddthick(&["thickness", "--family", "complete(5)", "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("theta = 2\n"));
    let partition = dir.path().join("partition.json");
    assert!(partition.exists());

    let d = oddthick(&["discharge", "--family", "complete(5)", "--partition", partition.to_str().unwrap(), "--out", out]);
    assert_eq!(d.status.code(), Some(0), "{}", String::from_utf8_lossy(&d.stderr));
    assert!(stdout(&d).starts_with("S = -12, S* = -12\n"));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("discharge.json")).unwrap()).unwrap();
    assert_eq!(report["report"]["t"], 2);
    assert_eq!(report["surplus"]["max_admissible"], 3);
}

#[test]
fn critical_search_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = oddthick(&["critical", "--k", "4", "--n-max", "5", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let found: Vec<String> = stdout(&o).lines().map(String::from).collect();
    // Keys are canonical graph6; C5's is "DLo".
    assert!(found.contains(&"DLo".to_string()), "{found:?}");
    let jsonl = fs::read_to_string(dir.path().join("reports.jsonl")).unwrap();
    assert_eq!(jsonl.lines().count(), found.len());
    let csv = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert!(csv.starts_with("graph,n,m,k,critical,lemma_flags\n"));
    assert!(csv.contains("DLo,5,5,4,true,lemma3_1=pass;lemma3_2=pass\n"));
}

#[test]
fn critical_reads_a_corpus_file() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.g6");
    fs::write(&corpus, "# cycles\nDhc\nEhEG\n!!bad\n").unwrap();
    let o = oddthick(&["critical", "--k", "4", "--corpus", corpus.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "DLo");
}

#[test]
fn smoke_claims_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let ra = oddthick(&["claims", "--tier", "smoke", "--out", a.path().to_str().unwrap()]);
    let rb = oddthick(&["claims", "--tier", "smoke", "--threads", "1", "--out", b.path().to_str().unwrap()]);
    assert_eq!(ra.status.code(), Some(0), "{}", stdout(&ra));
    assert_eq!(ra.stdout, rb.stdout);
    for name in ["claims.json", "claims.csv", "claims/chi_o_C5.json", "claims/extension_soundness.json"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap(), "{name}");
    }
    let out = stdout(&ra);
    assert!(out.lines().any(|l| l.starts_with("chi_o_C5") && l.contains("confirmed")));
    assert!(out.lines().any(|l| l.starts_with("chi_o_K2_star") && l.contains("mismatch")));
    assert!(out.lines().any(|l| l.starts_with("girth_Kn_star") && l.contains("mismatch")));
    assert!(out.lines().any(|l| l.starts_with("biplanar_C5_join_K6") && l.contains("confirmed")));
    assert!(out.lines().any(|l| l.starts_with("thickness_K9") && l.contains("skipped-budget")));
    assert!(!out.contains("refuted"));
}

#[test]
fn truncated_claims_never_confirm() {
    let o = oddthick(&["claims", "--tier", "smoke", "--budget-nodes", "1"]);
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("chi_o_C5 ")).unwrap();
    assert!(line.contains("skipped-budget"), "{line}");
    assert_eq!(o.status.code(), Some(3));
}
