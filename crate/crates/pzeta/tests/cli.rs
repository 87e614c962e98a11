use std::path::PathBuf;
use std::process::{Command, Output};

use pzeta::json::{
    FactorizationJson, LatticeJson, OmegaJson, PolyJson, ReplayJson, SmlJson, WRowJson, ZetaReport,
};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn pzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pzeta"))
        .args(args)
        .env_remove("PZETA_BUDGET_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn ok(args: &[&str]) -> String {
    let o = pzeta(args);
    assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json<T: serde::de::DeserializeOwned>(args: &[&str]) -> T {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).unwrap()
}

#[test]
fn pg_s3_text() {
    let out = ok(&["pg", "--builtin", "S3"]);
    assert!(out.contains("P(s) = 1 - 1/2^s - 3/3^s + 3/6^s"), "{out}");
}

#[test]
fn pg_cyclic_prime() {
    let out = ok(&["pg", "--builtin", "Cp", "--p", "7"]);
    assert!(out.contains("P(s) = 1 - 1/7^s"), "{out}");
}

#[test]
fn pg_file_is_a5() {
    let path = data("a5.grp");
    let from_file: ZetaReport = json(&["pg", "--file", path.to_str().unwrap()]);
    let builtin: ZetaReport = json(&["pg", "--builtin", "A5"]);
    assert_eq!(from_file.order, 60);
    assert_eq!(from_file.p_g, builtin.p_g);
    assert_eq!(from_file.p_g_text, "1 - 5/5^s - 6/6^s - 10/10^s + 20/20^s + 60/30^s - 60/60^s");
    assert_eq!(from_file.subgroups, 59);
}

#[test]
fn pg_evaluates_at_an_integer() {
    let out = ok(&["pg", "--builtin", "A5", "--at", "2"]);
    assert!(out.contains("P(2) = 19/30"), "{out}");
}

#[test]
fn wtable_q5_psl_single_row() {
    let rows: Vec<WRowJson> = json(&["wtable", "--qmax", "5", "--variants", "psl"]);
    assert_eq!(rows.len(), 1);
    let r = &rows[0];
    assert_eq!((r.q, r.computed, r.predicted, r.status.as_str()), (5, Some(5), 5, "MATCH"));
}

#[test]
fn wtable_default_range_matches() {
    let rows: Vec<WRowJson> = json(&["wtable", "--qmax", "13", "--strict"]);
    let qs: Vec<(u64, bool)> = rows.iter().map(|r| (r.q, r.matches)).collect();
    assert_eq!(qs.len(), 8);
    assert!(rows.iter().all(|r| r.status == "MATCH"), "{rows:?}");
}

#[test]
fn wtable_rows_over_budget_are_skipped() {
    // PSL(2,29) has order 12180, beyond the default order budget.
    let rows: Vec<WRowJson> = json(&["wtable", "--qmin", "29", "--qmax", "29"]);
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.status == "SKIPPED" && r.computed.is_none()));
    let small: Vec<WRowJson> = json(&["--budget-order", "100", "wtable", "--qmax", "7"]);
    let status: Vec<(u64, &str)> = small.iter().map(|r| (r.q, r.status.as_str())).collect();
    assert_eq!(status, [(5, "MATCH"), (5, "SKIPPED"), (7, "SKIPPED"), (7, "SKIPPED")]);
}

#[test]
fn factorize_s4() {
    let f: FactorizationJson = json(&["factorize", "--builtin", "S4"]);
    assert!(f.product_matches);
    let texts: Vec<&str> = f.factors.iter().map(|x| x.poly_text.as_str()).collect();
    assert_eq!(texts, ["1 - 1/2^s", "1 - 3/3^s", "1 - 4/4^s"]);
    let comps: Vec<Option<u64>> = f.factors.iter().map(|x| x.complements).collect();
    assert_eq!(comps, [Some(1), Some(3), Some(4)]);
    let out = ok(&["factorize", "--builtin", "S4"]);
    assert!(out.contains("product check: OK"), "{out}");
}

#[test]
fn factorize_a5_single_factor() {
    let f: FactorizationJson = json(&["factorize", "--builtin", "A5"]);
    assert_eq!(f.factors.len(), 1);
    assert_eq!(f.factors[0].poly, f.p_g);
}

#[test]
fn factorize_c4_flags_frattini() {
    let f: FactorizationJson = json(&["factorize", "--builtin", "C4"]);
    assert_eq!(f.factors.len(), 2);
    let frattini: Vec<bool> = f.factors.iter().map(|x| x.frattini).collect();
    assert_eq!(frattini, [false, true]);
    assert_eq!(f.factors[1].poly_text, "1");
    let out = ok(&["factorize", "--builtin", "C4"]);
    assert!(out.contains("[Frattini]"), "{out}");
}

#[test]
fn factorize_choice_last() {
    let first: FactorizationJson = json(&["factorize", "--builtin", "A5xC2"]);
    let last: FactorizationJson = json(&["factorize", "--builtin", "A5xC2", "--choice", "last"]);
    let mut a: Vec<String> = first.factors.iter().map(|x| x.poly_text.clone()).collect();
    let mut b: Vec<String> = last.factors.iter().map(|x| x.poly_text.clone()).collect();
    assert_ne!(a, b);
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn pxs_and_omega_pgl27() {
    let out = ok(&["pxs", "--q", "7", "--variant", "pgl"]);
    assert!(
        out.contains("1 - 8/8^s - 21/21^s - 28/28^s + 56/56^s + 84/84^s"),
        "{out}"
    );
    let o: OmegaJson = json(&["omega", "--q", "7", "--variant", "pgl"]);
    assert_eq!((o.omega, o.w), (vec![21], Some(21)));
    let o: OmegaJson = json(&["omega", "--q", "11"]);
    assert_eq!(o.w, Some(11));
}

#[test]
fn moebius_json_is_consistent() {
    let l: LatticeJson = json(&["moebius", "--builtin", "S4"]);
    assert_eq!(l.nodes.len(), 30);
    assert_eq!(l.classes.len(), 11);
    let members: usize = l.classes.iter().map(|c| c.members.len()).sum();
    assert_eq!(members, 30);
    for [lo, hi] in &l.edges {
        assert!(l.nodes[*lo].order < l.nodes[*hi].order);
        assert_eq!(l.nodes[*hi].order % l.nodes[*lo].order, 0);
    }
    let mu_sum: i64 = l.nodes.iter().map(|n| n.moebius).sum();
    // ∑_H μ(H) = P_G(0) = 0 for a nontrivial group.
    assert_eq!(mu_sum, 0);
}

#[test]
fn replay_mixed_file() {
    let path = data("replay_mixed.json");
    let rep: ReplayJson = json(&["replay", path.to_str().unwrap(), "--strict"]);
    assert_eq!(rep.q, 7);
    assert_eq!(rep.w, Some(7));
    assert_eq!(rep.w_via_projection, Some(7));
    assert_eq!(rep.i_star, vec![4]);
    assert_eq!(rep.c_beta_sign.as_deref(), Some("negative"));
    assert!(rep.characterization_holds);
    let text = ok(&["replay", path.to_str().unwrap()]);
    assert!(text.contains("w = 7") && text.contains("(negative)"), "{text}");
}

#[test]
fn replay_error_exits() {
    let empty = pzeta(&["replay", data("replay_empty.json").to_str().unwrap()]);
    assert_eq!(code(&empty), 2);
    let bad = pzeta(&["replay", data("replay_bad_shape.json").to_str().unwrap()]);
    assert_eq!(code(&bad), 5);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("perfect power"));
}

#[test]
fn smlcheck_families() {
    let s: SmlJson = json(&["smlcheck", "--constant", "3"]);
    assert_eq!(s.violated_at, Some(3));
    let s: SmlJson = json(&["smlcheck", "--geometric", "1,2"]);
    assert_eq!((s.violated_at, s.witness_prime), (None, Some(3)));
    let s: SmlJson = json(&["smlcheck", "--arithmetic", "1,1"]);
    assert_eq!(s.witness_prime, None);
    let s: SmlJson = json(&["smlcheck", "--r", "2,4,8"]);
    assert!(s.window_relative);
}

#[test]
fn product_and_divide() {
    let p: PolyJson = json(&["product", "1 - 1/2^s", "1 - 3/3^s"]);
    let text = ok(&["product", "1 - 1/2^s", "1 - 3/3^s"]);
    assert_eq!(text.trim(), "1 - 1/2^s - 3/3^s + 3/6^s");
    let inline = serde_json::to_string(&p).unwrap();
    let q = ok(&["divide", &inline, "1 - 1/2^s"]);
    assert_eq!(q.trim(), "1 - 3/3^s");
    let not = pzeta(&["divide", "1 - 1/2^s", "1 - 1/3^s"]);
    assert_eq!(code(&not), 1);
    let t = ok(&["--truncate", "4", "product", "--truncated", "1 - 1/2^s", "1 - 3/3^s"]);
    assert_eq!(t.trim(), "1 - 1/2^s - 3/3^s + O(n > 4)");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&pzeta(&["pg", "--builtin", "Z9"])), 2);
    assert_eq!(code(&pzeta(&["pg"])), 2);
    assert_eq!(code(&pzeta(&["--budget-order", "0", "pg", "--builtin", "S3"])), 2);
    assert_eq!(code(&pzeta(&["pg", "--builtin", "S8"])), 3);
    assert_eq!(code(&pzeta(&["--budget-subgroups", "5", "pg", "--builtin", "S4"])), 3);
    assert_eq!(code(&pzeta(&["omega", "--q", "29", "--variant", "pgl"])), 3);
}

#[test]
fn budget_from_environment() {
    let run = |env: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_pzeta"))
            .args(args)
            .env("PZETA_BUDGET_ORDER", env)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("4", &["pg", "--builtin", "S3"])), 3);
    assert_eq!(code(&run("4", &["--budget-order", "100", "pg", "--builtin", "S3"])), 0);
    assert_eq!(code(&run("many", &["pg", "--builtin", "S3"])), 2);
}

#[test]
fn json_round_trips() {
    let raw = ok(&["--format", "json", "factorize", "--builtin", "S4"]);
    let parsed: FactorizationJson = serde_json::from_str(&raw).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), raw.trim_end());
    let raw = ok(&["--format", "json", "replay", data("replay_mixed.json").to_str().unwrap()]);
    let parsed: ReplayJson = serde_json::from_str(&raw).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), raw.trim_end());
    let raw = ok(&["--format", "json", "pxs", "--q", "7", "--descriptor-r", "2"]);
    let desc: pzeta::json::DescriptorJson = serde_json::from_str(&raw).unwrap();
    let d = desc.to_descriptor().unwrap();
    assert_eq!(d.r, 2);
    assert_eq!(serde_json::to_string_pretty(&desc).unwrap(), raw.trim_end());
}

#[test]
fn strict_replay_reports_inconsistency() {
    let path = data("replay_positive.json");
    assert_eq!(code(&pzeta(&["replay", path.to_str().unwrap()])), 0);
    assert_eq!(code(&pzeta(&["replay", "--strict", path.to_str().unwrap()])), 4);
}
