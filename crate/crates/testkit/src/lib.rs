//! Reference implementations that favor obviousness over speed. Test code
//! checks the fast paths in the main crate against these: subgraph presence
//! by trying every vertex arrangement, partition validity by trying every
//! set partition, and exhaustive iteration over all colorings of an order.

// Pair loops over the upper triangle stay index-based on purpose; the
// indices are the vertices.
#![allow(clippy::needless_range_loop)]

use gallai_core::{ecg, EdgeColoring, PatternSpec, Scope, Shape};
use rand::Rng;

/// Builds a coloring from a full symmetric color matrix by rendering the
/// text form and parsing it back, deliberately avoiding the fast
/// constructors under test.
pub fn coloring_from_matrix(n: usize, k: usize, matrix: &[Vec<usize>]) -> EdgeColoring {
    let mut text = format!("ecg {n} {k}\n");
    for u in 0..n.saturating_sub(1) {
        let row: Vec<String> = (u + 1..n).map(|v| matrix[u][v].to_string()).collect();
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    ecg::parse(&text).expect("matrix renders to a well-formed coloring")
}

// ---------------------------------------------------------------------------
// Exhaustive iteration

/// All k^C(n,2) colorings of order n, in odometer order over the row-major
/// upper triangle. Keep n and k tiny.
pub struct AllColorings {
    n: usize,
    k: usize,
    digits: Vec<usize>,
    done: bool,
}

pub fn all_colorings(n: usize, k: usize) -> AllColorings {
    assert!(n >= 1 && k >= 1);
    let pairs = n * (n - 1) / 2;
    assert!(
        (k as f64).powi(pairs as i32) <= 2e8,
        "iteration space too large for an oracle sweep"
    );
    AllColorings {
        n,
        k,
        digits: vec![0; pairs],
        done: false,
    }
}

impl Iterator for AllColorings {
    type Item = EdgeColoring;

    fn next(&mut self) -> Option<EdgeColoring> {
        if self.done {
            return None;
        }
        let mut matrix = vec![vec![0usize; self.n]; self.n];
        let mut t = 0;
        for u in 0..self.n.saturating_sub(1) {
            for v in u + 1..self.n {
                matrix[u][v] = self.digits[t];
                matrix[v][u] = self.digits[t];
                t += 1;
            }
        }
        let g = coloring_from_matrix(self.n, self.k, &matrix);
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.k {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(g)
    }
}

// ---------------------------------------------------------------------------
// Naive pattern detection

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize == size {
            out.push((0..n).filter(|&v| mask >> v & 1 == 1).collect());
        }
    }
    out
}

fn arrangement_matches(g: &EdgeColoring, c: usize, shape: Shape, order: &[usize]) -> bool {
    let mono = |u: usize, v: usize| g.color(u, v) == c;
    match shape {
        Shape::Clique(_) => order
            .iter()
            .enumerate()
            .all(|(i, &u)| order[i + 1..].iter().all(|&v| mono(u, v))),
        Shape::Path(m) => (0..m - 1).all(|i| mono(order[i], order[i + 1])),
        Shape::Cycle(m) => (0..m).all(|i| mono(order[i], order[(i + 1) % m])),
        Shape::Matching(m) => (0..m).all(|i| mono(order[2 * i], order[2 * i + 1])),
        Shape::Wheel(m) => {
            let hub = order[0];
            let rim = &order[1..];
            rim.iter().all(|&v| mono(hub, v))
                && (0..m - 1).all(|i| mono(rim[i], rim[(i + 1) % (m - 1)]))
        }
    }
}

/// Presence of the shape in color class c by brute force over subsets and
/// arrangements.
pub fn naive_shape_in_color(g: &EdgeColoring, c: usize, shape: Shape) -> bool {
    let order = shape.order();
    if order > g.n() || c >= g.k() {
        return false;
    }
    for subset in subsets_of_size(g.n(), order) {
        if matches!(shape, Shape::Clique(_)) {
            if arrangement_matches(g, c, shape, &subset) {
                return true;
            }
            continue;
        }
        for arrangement in permutations_of(&subset) {
            if arrangement_matches(g, c, shape, &arrangement) {
                return true;
            }
        }
    }
    false
}

pub fn naive_rainbow_present(g: &EdgeColoring) -> bool {
    let n = g.n();
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                let (a, b, c) = (g.color(u, v), g.color(u, w), g.color(v, w));
                if a != b && a != c && b != c {
                    return true;
                }
            }
        }
    }
    false
}

pub fn naive_spec_present(g: &EdgeColoring, spec: &PatternSpec) -> bool {
    match spec.scope {
        Scope::RainbowTriangle => naive_rainbow_present(g),
        Scope::InColor(c) => naive_shape_in_color(g, c, spec.shape),
        Scope::AnyColor => (0..g.k()).any(|c| naive_shape_in_color(g, c, spec.shape)),
    }
}

pub fn naive_count_violations(g: &EdgeColoring, forbidden: &[PatternSpec]) -> usize {
    forbidden
        .iter()
        .filter(|s| naive_spec_present(g, s))
        .count()
}

// ---------------------------------------------------------------------------
// Brute-force partition oracle

/// Every set partition of {0..n}, parts ordered by least element, elements
/// ascending. Bell(n) of them.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    place(0, n, &mut current, &mut out);
    out
}

fn place(v: usize, n: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
    if v == n {
        out.push(current.clone());
        return;
    }
    for i in 0..current.len() {
        current[i].push(v);
        place(v + 1, n, current, out);
        current[i].pop();
    }
    current.push(vec![v]);
    place(v + 1, n, current, out);
    current.pop();
}

/// Validity per the partition definition, checked from scratch: at least two
/// parts, every pair of parts joined in one color, at most two colors used
/// between parts.
pub fn naive_valid_partition(g: &EdgeColoring, parts: &[Vec<usize>]) -> bool {
    if parts.len() < 2 {
        return false;
    }
    let mut between = Vec::new();
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            let mut colors = Vec::new();
            for &u in a {
                for &v in b {
                    let c = g.color(u, v);
                    if !colors.contains(&c) {
                        colors.push(c);
                    }
                }
            }
            if colors.len() != 1 {
                return false;
            }
            if !between.contains(&colors[0]) {
                between.push(colors[0]);
            }
        }
    }
    between.len() <= 2
}

/// All valid partitions of the coloring, brute force.
pub fn naive_partitions(g: &EdgeColoring) -> Vec<Vec<Vec<usize>>> {
    set_partitions(g.n())
        .into_iter()
        .filter(|p| naive_valid_partition(g, p))
        .collect()
}

// ---------------------------------------------------------------------------
// Random rainbow-triangle-free colorings

/// Uniformly random coloring with no structural guarantees.
pub fn random_coloring<R: Rng>(rng: &mut R, n: usize, k: usize) -> EdgeColoring {
    assert!(n >= 1 && k >= 1);
    let mut matrix = vec![vec![0usize; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            let c = rng.gen_range(0..k);
            matrix[u][v] = c;
            matrix[v][u] = c;
        }
    }
    coloring_from_matrix(n, k, &matrix)
}

/// Random coloring built by recursive substitution: split the vertex range
/// into parts, join parts with at most two colors, recurse inside parts.
/// Every coloring produced this way is rainbow-triangle free.
pub fn random_gallai<R: Rng>(rng: &mut R, n: usize, k: usize) -> EdgeColoring {
    assert!(n >= 1 && k >= 1);
    let mut matrix = vec![vec![0usize; n]; n];
    let vertices: Vec<usize> = (0..n).collect();
    fill_gallai(rng, &mut matrix, &vertices, k);
    coloring_from_matrix(n, k, &matrix)
}

fn fill_gallai<R: Rng>(rng: &mut R, matrix: &mut [Vec<usize>], vertices: &[usize], k: usize) {
    let n = vertices.len();
    if n <= 1 {
        return;
    }
    let q = rng.gen_range(2..=n.min(4));
    let mut sizes = vec![1usize; q];
    for _ in 0..n - q {
        let i = rng.gen_range(0..q);
        sizes[i] += 1;
    }
    let mut parts: Vec<&[usize]> = Vec::with_capacity(q);
    let mut at = 0;
    for &s in &sizes {
        parts.push(&vertices[at..at + s]);
        at += s;
    }
    let c1 = rng.gen_range(0..k);
    let c2 = if k >= 2 {
        (c1 + 1 + rng.gen_range(0..k - 1)) % k
    } else {
        c1
    };
    for i in 0..q {
        for j in i + 1..q {
            let c = if rng.gen_bool(0.5) { c1 } else { c2 };
            for &u in parts[i] {
                for &v in parts[j] {
                    matrix[u][v] = c;
                    matrix[v][u] = c;
                }
            }
        }
    }
    for part in parts {
        fill_gallai(rng, matrix, part, k);
    }
}
