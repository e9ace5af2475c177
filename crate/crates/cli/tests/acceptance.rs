//! The eight acceptance criteria, one pass/fail line each. Every check is an
//! exact equality; the only tolerances are the wall-clock budgets below.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::{naive_reduce, random_balanced_word, random_connected_graph, random_word};
use endtrace_core::freegroup::{extend_spanning_tree, induced_hom, reduce, spanning_tree, trace_word};
use endtrace_core::graph::{build_family, complement_components, FiniteGraph, GraphFamily, ParamValue, Params};
use endtrace_core::homology::{circle_matrix, commutator_length, enumerate_pairings, Pairing};
use endtrace_core::invlimit::{check_coherence, psi_family, CoherenceReport};
use endtrace_core::linalg::{gf2_rank, int_det, ladder_matrix, Gf2Matrix};
use endtrace_core::truncation::{builtin_loop, builtin_loop_names, rho_map, theta_trace, truncate};
use endtrace_core::Word;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const FAST_BUDGET: Duration = Duration::from_secs(1);
const PROPERTY_BUDGET: Duration = Duration::from_secs(60);

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn family(name: &str) -> GraphFamily {
    build_family(name, Params::new()).unwrap()
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < budget, || format!("took {spent:?}, budget {budget:?}"))
}

fn determinant_identity() -> Check {
    let start = Instant::now();
    for n in 1..=12usize {
        let det = int_det(&ladder_matrix(n).unwrap()).map_err(|e| e.to_string())?;
        let expected = if n % 2 == 1 { n as i128 - 1 } else { 1 - n as i128 };
        ensure(det == expected, || format!("det M_{n} = {det}, expected {expected}"))?;
    }
    within(start, FAST_BUDGET)?;
    Ok("det M_n = (-1)^(n-1) (n-1) for n = 1..12".into())
}

fn rank_rule() -> Check {
    let start = Instant::now();
    for n in 1..=16 {
        let rank = gf2_rank(&Gf2Matrix::from_int(&ladder_matrix(n).unwrap()));
        let expected = if n % 2 == 0 { n } else { n - 1 };
        ensure(rank == expected, || format!("rank M_{n} = {rank}, expected {expected}"))?;
    }
    within(start, FAST_BUDGET)?;
    Ok("GF(2) rank of M_n for n = 1..16".into())
}

fn ladder_commutator_length() -> Check {
    for n in 1..=8i64 {
        let mut letters: Vec<i64> = (1..=n).collect();
        letters.extend((1..=n).map(|i| -i));
        let r = commutator_length(&Word::from_signed(&letters, None).unwrap()).map_err(|e| e.to_string())?;
        ensure(r.value() == Some(n as usize / 2), || format!("n = {n}: cl = {:?}", r.value()))?;
    }
    Ok("cl(e_1..e_n e_1^-1..e_n^-1) = floor(n/2) for n = 1..8".into())
}

fn nonnullhomologous_evidence() -> Check {
    let run = |format: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_endtrace"))
            .args(["homology-report", "figure4", "--max", "8", "--format", format])
            .env_remove("ENDTRACE_PAIRING_CAP")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
        Ok::<_, String>(String::from_utf8(out.stdout).unwrap())
    };
    let text = run("text")?;
    ensure(text.contains("non-nullhomologous evidence: yes"), || text.clone())?;
    let report: Value = serde_json::from_str(&run("json")?).map_err(|e| e.to_string())?;
    let rows = report["rows"].as_array().unwrap();
    ensure(rows.len() == 8, || format!("{} rows", rows.len()))?;
    for row in rows {
        let n = row["level"].as_u64().unwrap();
        ensure(row["z_trivial"] == true, || format!("level {n}: not trivial in the Z cycle space"))?;
        ensure(row["cl"].as_u64() == Some(n / 2), || format!("level {n}: cl = {}", row["cl"]))?;
    }
    Ok("figure4: Z-cycle-space trivial and cl = floor(n/2) at levels 1..8".into())
}

fn ends_counts() -> Check {
    for n in 1..=10 {
        let line = complement_components(&family("line"), n, n + 4).map_err(|e| e.to_string())?.len();
        let ladder = complement_components(&family("ladder"), n, n + 4).map_err(|e| e.to_string())?.len();
        ensure(line == 2 && ladder == 1, || format!("level {n}: line {line}, ladder {ladder}"))?;
    }
    let tree = build_family("tree", Params::from([("degree".into(), ParamValue::Int(3))])).unwrap();
    for n in 1..=8 {
        let count = complement_components(&tree, n, n + 2).map_err(|e| e.to_string())?.len();
        ensure(count == 3 << (n - 1), || format!("tree level {n}: {count}"))?;
    }
    Ok("line 2, ladder 1 at levels 1..10; 3-regular tree 3*2^(n-1) at levels 1..8".into())
}

fn coherence() -> Check {
    let l = family("ladder");
    for name in builtin_loop_names() {
        let spec = builtin_loop(name, &l).unwrap();
        let fam = psi_family(&spec, &l, 8).map_err(|e| e.to_string())?;
        let report = check_coherence(&fam);
        ensure(report == CoherenceReport::Pass { pairs_checked: 28 }, || format!("{name}: {report:?}"))?;
        for m in 1..=8 {
            let upper = theta_trace(&spec, &l, m).unwrap();
            for n in 1..=m {
                let pushed = rho_map(&l, m, n).unwrap().apply_to_path(&upper).unwrap();
                ensure(pushed == theta_trace(&spec, &l, n).unwrap(), || format!("{name}: theta_{n} != rho^{m}_{n} theta_{m}"))?;
            }
        }
    }
    Ok(format!("{} built-in loops coherent on 28 level pairs at N = 8; theta factors through rho", builtin_loop_names().len()))
}

fn random_subgraph(rng: &mut ChaCha8Rng, host: &FiniteGraph, k: usize) -> FiniteGraph {
    let mut sub = FiniteGraph::new("v:0");
    let keep = |v: &str| v[2..].parse::<usize>().unwrap() < k;
    for v in host.vertices().filter(|v| keep(v.as_str())) {
        sub.add_vertex(v.clone());
    }
    for e in host.edges() {
        if keep(e.a.as_str()) && keep(e.b.as_str()) && (e.id.as_str().starts_with("e:") || rng.gen_bool(0.5)) {
            sub.add_edge(e.clone()).unwrap();
        }
    }
    sub
}

fn property_suites() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    for _ in 0..10_000 {
        let rank = rng.gen_range(1..=4);
        let w = random_word(&mut rng, rank, 40);
        ensure(reduce(&w).as_word().to_signed() == naive_reduce(&w.to_signed()), || format!("reduction oracle: {w}"))?;
    }
    for _ in 0..1_000 {
        let (u, v) = (random_word(&mut rng, 3, 20), random_word(&mut rng, 3, 20));
        let r = reduce(&u);
        ensure(reduce(r.as_word()) == r, || format!("idempotence: {u}"))?;
        let whole = reduce(&u.juxtapose(&v).unwrap());
        let parts = reduce(&r.as_word().juxtapose(reduce(&v).as_word()).unwrap());
        ensure(whole == parts, || format!("congruence: {u} . {v}"))?;
    }

    let l = family("ladder");
    let trees: Vec<_> = (1..=6).map(|n| spanning_tree(&truncate(&l, n).unwrap().graph).unwrap()).collect();
    let hom = |a: usize, b: usize| induced_hom(&rho_map(&l, a, b).unwrap(), &trees[a - 1], &trees[b - 1]).unwrap();
    for big in 1..=6 {
        for m in 1..=big {
            for n in 1..=m {
                ensure(hom(m, n).after(&hom(big, m)).unwrap() == hom(big, n), || format!("functoriality {big} {m} {n}"))?;
            }
        }
    }

    for _ in 0..10_000 {
        let rank = rng.gen_range(1..=5);
        let w = random_balanced_word(&mut rng, rank, 4);
        let pairings = enumerate_pairings(&w).unwrap();
        let p = Pairing::new(w.clone(), pairings.nth_pairs(rng.gen_range(0..pairings.total()))).unwrap();
        ensure(circle_matrix(&p).rank().is_multiple_of(2), || format!("odd rank: {w}"))?;
    }

    for _ in 0..200 {
        let w = random_balanced_word(&mut rng, 3, 2);
        let u = random_word(&mut rng, 3, 2);
        let cl = commutator_length(&w).unwrap().value();
        let conj = u.juxtapose(&w).unwrap().juxtapose(&u.formal_inverse()).unwrap();
        ensure(commutator_length(&conj).unwrap().value() == cl, || format!("conjugation: {u} . {w}"))?;
        ensure(commutator_length(&w.formal_inverse()).unwrap().value() == cl, || format!("inversion: {w}"))?;
    }

    let mut words = 0;
    while words < 1_000 {
        let n = rng.gen_range(2..12);
        let (extra, k) = (rng.gen_range(1..10), rng.gen_range(1..=n));
        let host = random_connected_graph(&mut rng, n, extra);
        let sub_tree = spanning_tree(&random_subgraph(&mut rng, &host, k)).unwrap();
        if sub_tree.rank() == 0 {
            continue;
        }
        let ext = extend_spanning_tree(&sub_tree, &host).unwrap();
        for _ in 0..10 {
            let w = random_word(&mut rng, sub_tree.rank(), 10);
            let traced = trace_word(&sub_tree.realize(&w).unwrap(), &ext).unwrap();
            ensure(traced.to_signed() == w.to_signed(), || format!("extension round-trip: {w}"))?;
            words += 1;
        }
    }

    within(start, PROPERTY_BUDGET)?;
    Ok(format!("six property suites green in {:.1?}", start.elapsed()))
}

fn distinguishability() -> Check {
    let l = family("ladder");
    let names = ["trivial", "square", "roundtrip", "figure4"];
    let families: Vec<_> = names
        .iter()
        .map(|n| psi_family(&builtin_loop(n, &l).unwrap(), &l, 6).unwrap())
        .collect();
    for i in 0..names.len() {
        for j in 0..i {
            let differs = (1..=6).any(|n| families[i].levels[&n] != families[j].levels[&n]);
            ensure(differs, || format!("{} and {} agree up to level 6", names[i], names[j]))?;
        }
    }
    Ok("trivial, square, roundtrip, figure4 pairwise distinct by level 6".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("determinant identity", determinant_identity),
        ("rank rule", rank_rule),
        ("ladder commutator length", ladder_commutator_length),
        ("non-nullhomologous evidence", nonnullhomologous_evidence),
        ("ends counts", ends_counts),
        ("coherence", coherence),
        ("property suites", property_suites),
        ("distinguishability", distinguishability),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {}. {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
