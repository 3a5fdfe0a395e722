//! Release gate. Each test covers one numbered shipping criterion, checks it
//! end to end inside its stated time budget, and prints a single PASS line
//! (visible with --nocapture); a failed test is the corresponding FAIL line.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use gallai_core::bounds;
use gallai_core::construct::{w5_tower, wheel_join_witness};
use gallai_core::partition::{find_gallai_partition, verify_partition};
use gallai_core::{
    compute_gallai_ramsey, compute_ramsey, count_violations, ecg, enumerate_exhaustive,
    is_vertex_pancyclic, pair_count, ColorClassGraph, EdgeColoring, Error, PartitionValidity,
    PatternSpec, RamseyResolution, SearchLimits, SearchStatus, SearchTask, Shape,
};
use gallai_testkit::{
    all_colorings, naive_count_violations, naive_partitions, naive_rainbow_present,
    random_coloring, random_gallai,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pass(criterion: usize, started: Instant, budget_secs: u64, detail: &str) {
    let secs = started.elapsed().as_secs_f64();
    assert!(
        secs <= budget_secs as f64,
        "criterion {criterion} exceeded its {budget_secs}s budget ({secs:.1}s)"
    );
    println!("criterion {criterion}: PASS ({secs:.2}s) {detail}");
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn load_golden(name: &str) -> EdgeColoring {
    let path = golden(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    ecg::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn exact(r: gallai_core::bounds::BoundResult) -> u128 {
    r.value().expect("expected an exact value")
}

#[test]
fn criterion_1_formula_conformance() {
    let t = Instant::now();
    assert_eq!(exact(bounds::gr_w5(1).unwrap()), 5);
    assert_eq!(exact(bounds::gr_w5(2).unwrap()), 15);
    assert_eq!(exact(bounds::gr_w5(3).unwrap()), 29);
    assert_eq!(exact(bounds::gr_w5(4).unwrap()), 71);
    assert_eq!(exact(bounds::ramsey_wheel(5).unwrap()), 15);
    assert_eq!(exact(bounds::ramsey_wheel(6).unwrap()), 17);
    assert_eq!(bounds::gr_mixed_upper(6, 1, 1, 1).unwrap().hi(), 2415);
    pass(1, t, 1, "closed forms: 5/15/29/71, 15/17, 2415");
}

fn check_ramsey_pair(a: Shape, b: Shape, want: usize, n_start: usize) {
    let comp = compute_ramsey(&[a, b], n_start, SearchLimits::default()).unwrap();
    assert_eq!(
        comp.resolution,
        RamseyResolution::Exact(want),
        "{a:?} vs {b:?}"
    );
    let w = comp.witness.as_ref().expect("witness at the threshold - 1");
    assert_eq!(w.n(), want - 1);
    let specs = [PatternSpec::mono(a, 0), PatternSpec::mono(b, 1)];
    assert_eq!(count_violations(w, &specs), 0);
    assert_eq!(naive_count_violations(w, &specs), 0);
    assert!(comp.probes.contains(&(want, SearchStatus::Exhausted)));
}

#[test]
fn criterion_2_exhaustive_small_ramsey_numbers() {
    let t = Instant::now();
    check_ramsey_pair(Shape::Cycle(3), Shape::Cycle(3), 6, 5);
    check_ramsey_pair(Shape::Cycle(4), Shape::Cycle(4), 6, 5);
    check_ramsey_pair(Shape::Cycle(4), Shape::Cycle(6), 7, 6);
    check_ramsey_pair(Shape::Cycle(5), Shape::Cycle(5), 9, 8);
    pass(
        2,
        t,
        600,
        "cycle pair thresholds 6, 6, 7, 9 with checked witnesses",
    );
}

#[test]
fn criterion_3_gallai_ramsey_cross_check() {
    let t = Instant::now();
    let comp = compute_gallai_ramsey(Shape::Cycle(5), 2, 8, SearchLimits::default()).unwrap();
    assert_eq!(comp.resolution, RamseyResolution::Exact(9));
    let comp = compute_gallai_ramsey(Shape::Wheel(5), 1, 4, SearchLimits::default()).unwrap();
    assert_eq!(comp.resolution, RamseyResolution::Exact(5));
    pass(
        3,
        t,
        600,
        "rainbow-constrained thresholds: C5 at k=2 -> 9, W5 at k=1 -> 5",
    );
}

#[test]
fn criterion_4_construction_verification() {
    let t = Instant::now();
    for (n, want_order) in [(6, 15), (7, 12), (8, 21), (9, 16)] {
        let g = wheel_join_witness(n).unwrap();
        assert_eq!(g.n(), want_order, "join order for wheel {n}");
        let specs = [
            PatternSpec::mono(Shape::Wheel(n), 0),
            PatternSpec::mono(Shape::Wheel(n), 1),
        ];
        assert_eq!(count_violations(&g, &specs), 0, "wheel {n} join");
    }
    let base = load_golden("base-w5-14.ecg");
    for (k, want_order) in [(2, 14), (3, 28), (4, 70), (5, 140), (6, 350)] {
        let g = w5_tower(k, &base).unwrap();
        assert_eq!(g.n(), want_order, "tower order at k = {k}");
        let mut specs = vec![PatternSpec::rainbow()];
        specs.extend((0..k).map(|c| PatternSpec::mono(Shape::Wheel(5), c)));
        assert_eq!(count_violations(&g, &specs), 0, "tower at k = {k}");
    }
    pass(
        4,
        t,
        300,
        "wheel joins 15/12/21/16, towers 14/28/70/140/350, all clean",
    );
}

#[test]
fn criterion_5_shipped_base_witness() {
    let t = Instant::now();
    let base = load_golden("base-w5-14.ecg");
    assert_eq!((base.n(), base.k()), (14, 2));
    let specs = [
        PatternSpec::mono(Shape::Wheel(5), 0),
        PatternSpec::mono(Shape::Wheel(5), 1),
    ];
    assert_eq!(count_violations(&base, &specs), 0);
    pass(
        5,
        t,
        1,
        "14-vertex 2-coloring avoids the 5-wheel in both colors",
    );
}

#[test]
fn criterion_6_gallai_partition_properties() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    for round in 0..1000 {
        let n = rng.gen_range(2..=60);
        let k = rng.gen_range(1..=5);
        let g = random_gallai(&mut rng, n, k);
        let p = find_gallai_partition(&g)
            .unwrap_or_else(|e| panic!("round {round} (n={n}, k={k}): {e}"));
        assert_eq!(verify_partition(&g, &p).unwrap(), PartitionValidity::Valid);
    }
    let mut swept = 0usize;
    for n in 2..=5 {
        for k in 1..=3 {
            for g in all_colorings(n, k) {
                if naive_rainbow_present(&g) {
                    assert!(matches!(
                        find_gallai_partition(&g),
                        Err(Error::NotGallai(_))
                    ));
                    continue;
                }
                swept += 1;
                assert!(
                    !naive_partitions(&g).is_empty(),
                    "oracle finds no partition at n={n}, k={k}"
                );
                let p = find_gallai_partition(&g).unwrap();
                assert_eq!(verify_partition(&g, &p).unwrap(), PartitionValidity::Valid);
            }
        }
    }
    pass(
        6,
        t,
        600,
        &format!("1000 substitution colorings + {swept} exhaustive rainbow-free ones"),
    );
}

#[test]
fn criterion_7_dense_graphs_are_vertex_pancyclic() {
    let t = Instant::now();
    let mut checked = 0usize;
    for n in 3..=7usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        let m = pairs.len();
        for mask in 0u32..(1 << m) {
            let mut deg = [0u8; 8];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
            // Minimum degree at least (n + 1) / 2, as a real inequality.
            if deg[..n].iter().any(|&d| (d as usize) * 2 < n + 1) {
                continue;
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let h = ColorClassGraph::from_edges(n, &edges).unwrap();
            assert!(
                is_vertex_pancyclic(&h).unwrap(),
                "counterexample on {n} vertices, edges {edges:?}"
            );
            checked += 1;
        }
    }
    pass(
        7,
        t,
        300,
        &format!("{checked} dense labeled graphs, all vertex-pancyclic"),
    );
}

/// The fixed grid of forbidden sets exercised at order n, palette k.
fn task_grid(k: usize) -> Vec<Vec<PatternSpec>> {
    let mono = PatternSpec::mono;
    let any = PatternSpec::any;
    let mut grid = vec![
        vec![mono(Shape::Cycle(3), 0)],
        vec![any(Shape::Cycle(3))],
        vec![any(Shape::Path(4))],
        vec![mono(Shape::Clique(4), 0)],
        vec![mono(Shape::Matching(2), 0)],
        vec![any(Shape::Wheel(5))],
        vec![mono(Shape::Wheel(4), 0)],
    ];
    if k >= 2 {
        grid.push(vec![mono(Shape::Path(3), 0), mono(Shape::Path(3), 1)]);
        grid.push(vec![mono(Shape::Cycle(3), 0), mono(Shape::Cycle(3), 1)]);
        grid.push(vec![mono(Shape::Cycle(4), 0), mono(Shape::Cycle(3), 1)]);
        grid.push(vec![mono(Shape::Cycle(5), 0), mono(Shape::Cycle(5), 1)]);
    }
    if k >= 3 {
        grid.push(vec![PatternSpec::rainbow()]);
        grid.push(vec![PatternSpec::rainbow(), any(Shape::Cycle(3))]);
        grid.push(vec![
            PatternSpec::rainbow(),
            mono(Shape::Cycle(4), 0),
            mono(Shape::Cycle(4), 1),
            mono(Shape::Cycle(4), 2),
        ]);
    }
    grid
}

#[test]
fn criterion_8_search_matches_naive_enumeration() {
    let t = Instant::now();
    let mut tasks = 0usize;
    for n in 2..=5usize {
        for k in 1..=3usize {
            for forbidden in task_grid(k) {
                let naive_witness =
                    all_colorings(n, k).find(|g| naive_count_violations(g, &forbidden) == 0);
                let task = SearchTask::new(n, k, forbidden.clone());
                let out = enumerate_exhaustive(&task).unwrap();
                match naive_witness {
                    Some(_) => {
                        assert_eq!(
                            out.status,
                            SearchStatus::WitnessFound,
                            "n={n} k={k} {forbidden:?}"
                        );
                        let w = out.witness.expect("witness accompanies the status");
                        assert_eq!(naive_count_violations(&w, &forbidden), 0);
                    }
                    None => {
                        assert_eq!(
                            out.status,
                            SearchStatus::Exhausted,
                            "n={n} k={k} {forbidden:?}"
                        );
                        assert!(out.witness.is_none());
                    }
                }
                tasks += 1;
            }
        }
    }
    pass(
        8,
        t,
        120,
        &format!("{tasks} grid tasks agree with the naive sweep"),
    );
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_gallai"))
        .args(args)
        .env("GALLAI_DATA_DIR", golden(""))
        .output()
        .expect("binary runs");
    assert!(
        out.status
            .code()
            .is_some_and(|c| c == 0 || c == 1 || c == 3),
        "unexpected exit: {:?}, stderr: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

#[test]
fn criterion_9_round_trip_and_determinism() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(900);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=16);
        let k = rng.gen_range(1..=6);
        let g = random_coloring(&mut rng, n, k);
        assert_eq!(ecg::parse(&ecg::serialize(&g)).unwrap(), g);
        assert_eq!(ecg::parse_json(&ecg::serialize_json(&g)).unwrap(), g);
        assert_eq!(g.edge_count(), pair_count(g.n()));
    }

    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("two.json");
    std::fs::write(&two, r#"{"n":6,"k":2,"forbidden":["C3@0","C3@1"]}"#).unwrap();
    let three = dir.path().join("three.json");
    std::fs::write(
        &three,
        r#"{"n":6,"k":3,"forbidden":["rainbow-K3","C4@0","C4@1","C4@2"]}"#,
    )
    .unwrap();
    for task in [&two, &three] {
        let task = task.to_str().unwrap();
        let reference = run_cli(&["search", task]);
        for workers in ["1", "4"] {
            for _ in 0..2 {
                let again = run_cli(&["search", task, "--workers", workers]);
                assert_eq!(again, reference, "task {task}, workers {workers}");
            }
        }
    }
    let seeded = [
        "witness-search",
        "8",
        "2",
        "--forbid",
        "C5@0",
        "--forbid",
        "C5@1",
        "--seed",
        "11",
        "--budget",
        "200000",
    ];
    assert_eq!(run_cli(&seeded), run_cli(&seeded));
    pass(
        9,
        t,
        120,
        "10000 round trips; reports byte-identical across runs and workers",
    );
}
