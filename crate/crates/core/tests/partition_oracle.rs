//! Cross-checks partition discovery against the brute-force oracle and the
//! structure guarantee for rainbow-triangle-free colorings.

use gallai_core::partition::{find_gallai_partition, reduced_graph, verify_partition};
use gallai_core::{Error, PartitionValidity};
use gallai_testkit::{
    all_colorings, naive_partitions, naive_rainbow_present, naive_valid_partition, random_coloring,
    random_gallai,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check_one(g: &gallai_core::EdgeColoring) {
    if naive_rainbow_present(g) {
        match find_gallai_partition(g) {
            Err(Error::NotGallai([u, v, w])) => {
                let (a, b, c) = (g.color(u, v), g.color(u, w), g.color(v, w));
                assert!(a != b && a != c && b != c, "certificate must be rainbow");
            }
            other => panic!("expected a rainbow certificate, got {other:?}"),
        }
        return;
    }
    let p = find_gallai_partition(g).expect("rainbow-free colorings always partition");
    assert!(p.q() >= 2);
    assert!(p.between_colors().len() <= 2);
    assert_eq!(verify_partition(g, &p).unwrap(), PartitionValidity::Valid);
    assert!(naive_valid_partition(g, p.parts()));
    // The brute-force oracle agrees that at least one valid partition exists.
    if g.n() <= 5 {
        assert!(!naive_partitions(g).is_empty());
    }
    let r = reduced_graph(g, &p).unwrap();
    assert_eq!(r.coloring.n(), p.q());
    assert!(r.coloring.k() <= 2);
    assert_eq!(r.color_map.len(), r.coloring.k());
}

#[test]
fn exhaustive_small_sweep() {
    for (n, k) in [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2)] {
        for g in all_colorings(n, k) {
            check_one(&g);
        }
    }
}

#[test]
fn random_substitution_colorings() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..250 {
        let n = rng.gen_range(2..=40);
        let k = rng.gen_range(1..=5);
        let g = random_gallai(&mut rng, n, k);
        check_one(&g);
    }
}

#[test]
fn random_arbitrary_colorings() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..300 {
        let n = rng.gen_range(2..=7);
        let k = rng.gen_range(1..=4);
        let g = random_coloring(&mut rng, n, k);
        check_one(&g);
    }
}
