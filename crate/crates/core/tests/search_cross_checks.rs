//! Structural checks on the exhaustive search: pruning cannot change
//! statuses, and results are identical across thread pool sizes.

use gallai_core::{enumerate_exhaustive, PatternSpec, SearchOutcome, SearchTask, Shape};

fn pentagon_pair() -> Vec<PatternSpec> {
    vec![
        PatternSpec::mono(Shape::Cycle(5), 0),
        PatternSpec::mono(Shape::Cycle(5), 1),
    ]
}

#[test]
fn canonicity_off_agrees_on_status_at_the_pentagon_threshold() {
    for n in [8, 9] {
        let pruned = enumerate_exhaustive(&SearchTask::new(n, 2, pentagon_pair())).unwrap();
        let mut task = SearchTask::new(n, 2, pentagon_pair());
        task.canon_threshold = 0;
        let plain = enumerate_exhaustive(&task).unwrap();
        assert_eq!(pruned.status, plain.status, "n = {n}");
        assert_eq!(pruned.witness.is_some(), plain.witness.is_some(), "n = {n}");
        // Pattern pruning alone must do strictly more work.
        assert!(pruned.stats.nodes <= plain.stats.nodes);
    }
}

#[test]
fn exhaustion_is_stable_above_the_threshold() {
    let nine = enumerate_exhaustive(&SearchTask::new(9, 2, pentagon_pair())).unwrap();
    let ten = enumerate_exhaustive(&SearchTask::new(10, 2, pentagon_pair())).unwrap();
    assert!(nine.witness.is_none() && ten.witness.is_none());
    // Every branch dies before the extra vertex is ever touched.
    assert_eq!(nine.stats.nodes, ten.stats.nodes);
}

fn run_in_pool(threads: usize, task: &SearchTask) -> SearchOutcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap();
    pool.install(|| enumerate_exhaustive(task).unwrap())
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let tasks = [
        SearchTask::new(8, 2, pentagon_pair()),
        SearchTask::new(9, 2, pentagon_pair()),
        SearchTask::new(
            6,
            3,
            vec![
                PatternSpec::rainbow(),
                PatternSpec::mono(Shape::Cycle(4), 0),
                PatternSpec::mono(Shape::Cycle(4), 1),
                PatternSpec::mono(Shape::Cycle(4), 2),
            ],
        ),
    ];
    for task in &tasks {
        let single = run_in_pool(1, task);
        let four = run_in_pool(4, task);
        assert_eq!(single.status, four.status);
        assert_eq!(single.stats.nodes, four.stats.nodes);
        assert_eq!(single.stats.pattern_prunes, four.stats.pattern_prunes);
        assert_eq!(single.stats.canon_prunes, four.stats.canon_prunes);
        match (&single.witness, &four.witness) {
            (Some(a), Some(b)) => assert_eq!(a, b),
            (None, None) => {}
            _ => panic!("witness presence differs between pool sizes"),
        }
    }
}
