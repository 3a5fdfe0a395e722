//! Nontrivial vertex partitions with monochromatic part pairs and at most
//! two colors between parts, plus the algorithm that finds one in any
//! rainbow-triangle-free coloring.

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::coloring::{pair_count, pair_index, EdgeColoring, PaletteMap};
use crate::error::{Error, Result};
use crate::pattern::has_rainbow_triangle;

/// A partition of the vertex set into q >= 2 parts such that every part pair
/// is joined in a single color, and at most two colors appear between parts.
/// Instances only arise from constructors that establish these invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GallaiPartition {
    parts: Vec<Vec<usize>>,
    between_colors: Vec<usize>,
    pair_colors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PartitionValidity {
    Valid,
    /// First cross edge (in part-pair, then vertex order) whose color is not
    /// the recorded pair color.
    Violation {
        u: usize,
        v: usize,
        expected: usize,
        actual: usize,
    },
}

impl GallaiPartition {
    /// Derives pair colors from the coloring, rejecting part pairs that see
    /// more than one color and between-sets larger than two.
    pub fn from_parts(g: &EdgeColoring, parts: Vec<Vec<usize>>) -> Result<Self> {
        check_is_partition(g.n(), &parts)?;
        let q = parts.len();
        let mut pair_colors = vec![0usize; pair_count(q)];
        let mut between = Vec::new();
        for j in 1..q {
            for i in 0..j {
                let c = monochromatic_cross_color(g, &parts[i], &parts[j])?;
                pair_colors[pair_index(i, j)] = c;
                if !between.contains(&c) {
                    between.push(c);
                }
            }
        }
        between.sort_unstable();
        if between.len() > 2 {
            return Err(Error::InvalidPartition(format!(
                "{} distinct colors between parts: {:?}",
                between.len(),
                between
            )));
        }
        Ok(GallaiPartition {
            parts,
            between_colors: between,
            pair_colors,
        })
    }

    pub fn q(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn between_colors(&self) -> &[usize] {
        &self.between_colors
    }

    pub fn pair_color(&self, i: usize, j: usize) -> usize {
        self.pair_colors[pair_index(i, j)]
    }

    /// Induced subcolorings, one per part, in part order.
    pub fn extract_parts(&self, g: &EdgeColoring) -> Result<Vec<EdgeColoring>> {
        self.parts.iter().map(|p| g.induced(p)).collect()
    }

    pub fn to_json(&self) -> String {
        let q = self.parts.len();
        let mut pair_colors = Vec::with_capacity(pair_count(q));
        for i in 0..q {
            for j in i + 1..q {
                pair_colors.push([i, j, self.pair_color(i, j)]);
            }
        }
        let doc = PartitionJson {
            parts: self.parts.clone(),
            between_colors: self.between_colors.clone(),
            pair_colors,
        };
        serde_json::to_string(&doc).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PartitionJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let q = doc.parts.len();
        if q < 2 {
            return Err(Error::MalformedPartition(format!(
                "{q} parts, need at least 2"
            )));
        }
        for (i, p) in doc.parts.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::MalformedPartition(format!("part {i} is empty")));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for &v in doc.parts.iter().flatten() {
            if !seen.insert(v) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        if doc.between_colors.len() > 2 {
            return Err(Error::MalformedPartition(format!(
                "{} between colors listed",
                doc.between_colors.len()
            )));
        }
        let mut pair_colors = vec![usize::MAX; pair_count(q)];
        for &[i, j, c] in &doc.pair_colors {
            if i >= q || j >= q || i == j {
                return Err(Error::MalformedPartition(format!(
                    "pair color entry names invalid part pair ({i},{j})"
                )));
            }
            if !doc.between_colors.contains(&c) {
                return Err(Error::MalformedPartition(format!(
                    "pair ({i},{j}) uses color {c} outside between_colors"
                )));
            }
            let idx = pair_index(i, j);
            if pair_colors[idx] != usize::MAX {
                return Err(Error::MalformedPartition(format!(
                    "pair ({i},{j}) listed twice"
                )));
            }
            pair_colors[idx] = c;
        }
        if pair_colors.contains(&usize::MAX) {
            return Err(Error::MalformedPartition(
                "missing pair color entries".into(),
            ));
        }
        let mut between = doc.between_colors;
        between.sort_unstable();
        between.dedup();
        Ok(GallaiPartition {
            parts: doc.parts,
            between_colors: between,
            pair_colors,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    parts: Vec<Vec<usize>>,
    between_colors: Vec<usize>,
    pair_colors: Vec<[usize; 3]>,
}

fn check_is_partition(n: usize, parts: &[Vec<usize>]) -> Result<()> {
    if parts.len() < 2 {
        return Err(Error::MalformedPartition(format!(
            "{} parts, need at least 2",
            parts.len()
        )));
    }
    let mut seen = Bitset::new(n);
    let mut total = 0;
    for (i, p) in parts.iter().enumerate() {
        if p.is_empty() {
            return Err(Error::MalformedPartition(format!("part {i} is empty")));
        }
        for &v in p {
            if v >= n {
                return Err(Error::MalformedPartition(format!(
                    "vertex {v} out of range for order {n}"
                )));
            }
            if seen.contains(v) {
                return Err(Error::MalformedPartition(format!(
                    "vertex {v} in two parts"
                )));
            }
            seen.insert(v);
            total += 1;
        }
    }
    if total != n {
        return Err(Error::MalformedPartition(format!(
            "parts cover {total} of {n} vertices"
        )));
    }
    Ok(())
}

fn monochromatic_cross_color(g: &EdgeColoring, a: &[usize], b: &[usize]) -> Result<usize> {
    let mut color = None;
    for &u in a {
        for &v in b {
            let c = g.color(u, v);
            match color {
                None => color = Some(c),
                Some(prev) if prev != c => {
                    return Err(Error::InvalidPartition(format!(
                        "edge {{{u},{v}}} has color {c}, another cross edge has {prev}"
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(color.expect("parts are nonempty"))
}

/// Checks p against g: reports the first cross edge that contradicts the
/// recorded pair color, scanning part pairs in index order and vertices in
/// listed order.
pub fn verify_partition(g: &EdgeColoring, p: &GallaiPartition) -> Result<PartitionValidity> {
    check_is_partition(g.n(), &p.parts)?;
    for i in 0..p.q() {
        for j in i + 1..p.q() {
            let expected = p.pair_color(i, j);
            for &u in &p.parts[i] {
                for &v in &p.parts[j] {
                    let actual = g.color(u, v);
                    if actual != expected {
                        return Ok(PartitionValidity::Violation {
                            u,
                            v,
                            expected,
                            actual,
                        });
                    }
                }
            }
        }
    }
    Ok(PartitionValidity::Valid)
}

/// Finds a valid nontrivial partition of a rainbow-triangle-free coloring.
///
/// Strategy: for each candidate between-color set S (singletons of present
/// colors in ascending order, then pairs of present colors in lexicographic
/// order), take the connected components of the graph of edges NOT colored
/// from S as initial parts, then repeatedly merge the lowest-indexed part
/// pair that sees both colors of S. Each accepted answer is certified by
/// verify_partition, so the candidate strategy only affects completeness,
/// which small-order sweeps pin down against a brute-force oracle.
pub fn find_gallai_partition(g: &EdgeColoring) -> Result<GallaiPartition> {
    let n = g.n();
    if n < 2 {
        return Err(Error::ParameterOutOfRange(
            "partition extraction needs at least 2 vertices".into(),
        ));
    }
    if let Some(hit) = has_rainbow_triangle(g) {
        return Err(Error::NotGallai([
            hit.vertices[0],
            hit.vertices[1],
            hit.vertices[2],
        ]));
    }
    let mut present: Vec<usize> = Vec::new();
    {
        let counts = g.color_counts();
        for (c, &cnt) in counts.iter().enumerate() {
            if cnt > 0 {
                present.push(c);
            }
        }
    }
    let mut candidates: Vec<Vec<usize>> = present.iter().map(|&c| vec![c]).collect();
    for i in 0..present.len() {
        for j in i + 1..present.len() {
            candidates.push(vec![present[i], present[j]]);
        }
    }
    for s in candidates {
        if let Some(p) = try_candidate(g, &s) {
            if verify_partition(g, &p)? == PartitionValidity::Valid {
                return Ok(p);
            }
        }
    }
    Err(Error::InternalInconsistency(
        "no candidate between-color set produced a valid nontrivial partition \
         of a rainbow-triangle-free coloring"
            .into(),
    ))
}

fn try_candidate(g: &EdgeColoring, s: &[usize]) -> Option<GallaiPartition> {
    let n = g.n();
    // Graph of edges not colored from S.
    let mut rows = vec![Bitset::new(n); n];
    for (u, v, c) in g.pairs() {
        if !s.contains(&c) {
            rows[u].insert(v);
            rows[v].insert(u);
        }
    }
    let mut parts = components(&rows, n);
    if parts.len() < 2 {
        return None;
    }
    if s.len() == 2 {
        // Merge until no part pair sees both candidate colors. The part
        // count strictly decreases, so this terminates.
        loop {
            match first_bichromatic_pair(g, &parts, s) {
                None => break,
                Some((i, j)) => {
                    let moved = parts.remove(j);
                    parts[i].extend(moved);
                    parts[i].sort_unstable();
                    if parts.len() < 2 {
                        return None;
                    }
                }
            }
        }
    }
    GallaiPartition::from_parts(g, parts).ok()
}

fn components(rows: &[Bitset], n: usize) -> Vec<Vec<usize>> {
    let mut seen = Bitset::new(n);
    let mut parts = Vec::new();
    for start in 0..n {
        if seen.contains(start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in rows[u].iter() {
                if !seen.contains(v) {
                    seen.insert(v);
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        parts.push(comp);
    }
    parts
}

fn first_bichromatic_pair(
    g: &EdgeColoring,
    parts: &[Vec<usize>],
    s: &[usize],
) -> Option<(usize, usize)> {
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let mut seen0 = false;
            let mut seen1 = false;
            'scan: for &u in &parts[i] {
                for &v in &parts[j] {
                    let c = g.color(u, v);
                    seen0 |= c == s[0];
                    seen1 |= c == s[1];
                    if seen0 && seen1 {
                        break 'scan;
                    }
                }
            }
            if seen0 && seen1 {
                return Some((i, j));
            }
        }
    }
    None
}

/// The reduced coloring: one vertex per part, pair {i,j} colored by the
/// dense remap of pair_color(i,j). color_map sends reduced indices back to
/// original colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGraph {
    pub coloring: EdgeColoring,
    pub color_map: Vec<usize>,
}

pub fn reduced_graph(g: &EdgeColoring, p: &GallaiPartition) -> Result<ReducedGraph> {
    match verify_partition(g, p)? {
        PartitionValidity::Valid => {}
        PartitionValidity::Violation {
            u,
            v,
            expected,
            actual,
        } => {
            return Err(Error::InvalidPartition(format!(
                "edge {{{u},{v}}} has color {actual}, partition expects {expected}"
            )))
        }
    }
    let color_map = p.between_colors.clone();
    let dense = |orig: usize| {
        color_map
            .iter()
            .position(|&c| c == orig)
            .expect("pair colors are between colors")
    };
    let q = p.q();
    let mut reduced = EdgeColoring::new_uniform(q, 0, color_map.len())?;
    for i in 0..q {
        for j in i + 1..q {
            reduced.set(i, j, dense(p.pair_color(i, j)));
        }
    }
    Ok(ReducedGraph {
        coloring: reduced,
        color_map,
    })
}

/// Rebuilds g from its reduced coloring and extracted parts. Exact when the
/// parts are consecutive label intervals in part order (as produced by the
/// blow-up operator); callers with scattered parts must compare up to the
/// part-order relabeling.
pub fn reassemble(g: &EdgeColoring, p: &GallaiPartition) -> Result<EdgeColoring> {
    let reduced = reduced_graph(g, p)?;
    let parts = p.extract_parts(g)?;
    let map = PaletteMap {
        reduced: reduced.color_map.clone(),
        parts: vec![(0..g.k()).collect(); parts.len()],
    };
    crate::coloring::substitute(&reduced.coloring, &parts, &map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::substitute;

    fn two_colored_k5() -> EdgeColoring {
        let mut g = EdgeColoring::new_uniform(5, 1, 2).unwrap();
        for i in 0..5 {
            g.set(i, (i + 1) % 5, 0);
        }
        g
    }

    fn doubled(g: &EdgeColoring) -> EdgeColoring {
        let reduced = EdgeColoring::new_uniform(2, 0, 1).unwrap();
        let map = PaletteMap {
            reduced: vec![g.k()],
            parts: vec![(0..g.k()).collect(), (0..g.k()).collect()],
        };
        substitute(&reduced, &[g.clone(), g.clone()], &map).unwrap()
    }

    #[test]
    fn doubling_partitions_into_copies() {
        let base = two_colored_k5();
        let d = doubled(&base);
        let p = GallaiPartition::from_parts(&d, vec![(0..5).collect(), (5..10).collect()]).unwrap();
        assert_eq!(verify_partition(&d, &p).unwrap(), PartitionValidity::Valid);
        assert_eq!(p.between_colors(), &[2]);
        assert_eq!(p.pair_color(0, 1), 2);
    }

    #[test]
    fn singleton_partition_of_two_coloring() {
        let g = two_colored_k5();
        let parts: Vec<Vec<usize>> = (0..5).map(|v| vec![v]).collect();
        let p = GallaiPartition::from_parts(&g, parts).unwrap();
        assert_eq!(verify_partition(&g, &p).unwrap(), PartitionValidity::Valid);
        assert_eq!(p.between_colors(), &[0, 1]);
        let r = reduced_graph(&g, &p).unwrap();
        assert_eq!(r.coloring, g);
        assert_eq!(r.color_map, vec![0, 1]);
    }

    #[test]
    fn verify_reports_first_bad_edge() {
        let base = two_colored_k5();
        let d = doubled(&base);
        let p = GallaiPartition::from_parts(&d, vec![(0..5).collect(), (5..10).collect()]).unwrap();
        let tampered = d.recolor(2, 7, 0).unwrap();
        assert_eq!(
            verify_partition(&tampered, &p).unwrap(),
            PartitionValidity::Violation {
                u: 2,
                v: 7,
                expected: 2,
                actual: 0
            }
        );
    }

    #[test]
    fn from_parts_rejects_non_mono_pairs_and_three_colors() {
        let mut g = EdgeColoring::new_uniform(4, 0, 3).unwrap();
        g.set(0, 1, 1);
        // Pair {0},{1} is fine; pair {0,1},{2,3}? edge colors mixed.
        let err = GallaiPartition::from_parts(&g, vec![vec![0, 2], vec![1, 3]]);
        assert!(matches!(err, Err(Error::InvalidPartition(_))));

        let mut h = EdgeColoring::new_uniform(4, 0, 3).unwrap();
        h.set(0, 1, 1);
        h.set(2, 3, 2);
        let err = GallaiPartition::from_parts(&h, (0..4).map(|v| vec![v]).collect());
        assert!(matches!(err, Err(Error::InvalidPartition(_))));

        let err = GallaiPartition::from_parts(&g, vec![vec![0, 1, 2, 3]]);
        assert!(matches!(err, Err(Error::MalformedPartition(_))));
        let err = GallaiPartition::from_parts(&g, vec![vec![0, 1], vec![1, 2, 3]]);
        assert!(matches!(err, Err(Error::MalformedPartition(_))));
    }

    #[test]
    fn find_on_rainbow_input_fails() {
        let mut t = EdgeColoring::new_uniform(3, 0, 3).unwrap();
        t.set(0, 2, 1);
        t.set(1, 2, 2);
        assert!(matches!(
            find_gallai_partition(&t),
            Err(Error::NotGallai([0, 1, 2]))
        ));
    }

    #[test]
    fn find_on_two_colored_k5_gives_singletons() {
        let g = two_colored_k5();
        let p = find_gallai_partition(&g).unwrap();
        assert_eq!(p.q(), 5);
        assert_eq!(verify_partition(&g, &p).unwrap(), PartitionValidity::Valid);
    }

    #[test]
    fn find_on_doubling_output() {
        let base = two_colored_k5();
        let d = doubled(&base);
        let p = find_gallai_partition(&d).unwrap();
        assert_eq!(verify_partition(&d, &p).unwrap(), PartitionValidity::Valid);
        // Color 2 alone disconnects the two copies.
        assert_eq!(p.q(), 2);
        assert_eq!(p.between_colors(), &[2]);
    }

    #[test]
    fn reassemble_round_trip_on_interval_parts() {
        let base = two_colored_k5();
        let d = doubled(&base);
        let p = GallaiPartition::from_parts(&d, vec![(0..5).collect(), (5..10).collect()]).unwrap();
        assert_eq!(reassemble(&d, &p).unwrap(), d);

        let g = two_colored_k5();
        let singles = GallaiPartition::from_parts(&g, (0..5).map(|v| vec![v]).collect()).unwrap();
        assert_eq!(reassemble(&g, &singles).unwrap(), g);
    }

    #[test]
    fn json_round_trip() {
        let g = two_colored_k5();
        let p = find_gallai_partition(&g).unwrap();
        let doc = p.to_json();
        let back = GallaiPartition::from_json(&doc).unwrap();
        assert_eq!(back, p);
        assert!(doc.starts_with(r#"{"parts":"#));

        assert!(GallaiPartition::from_json("{}").is_err());
        assert!(GallaiPartition::from_json(
            r#"{"parts":[[0]],"between_colors":[0],"pair_colors":[]}"#
        )
        .is_err());
        assert!(GallaiPartition::from_json(
            r#"{"parts":[[0],[1]],"between_colors":[0],"pair_colors":[[0,1,3]]}"#
        )
        .is_err());
    }
}
