//! k-edge-colorings of complete graphs on labeled vertices 0..n-1.

use std::fmt;

use crate::bitset::Bitset;
use crate::error::{Error, Result};

/// Largest supported order. Bitset rows and the pair table stay small enough
/// to clone freely below this.
pub const MAX_VERTICES: usize = 4096;

/// Largest supported palette; color indices must fit in the u16 backing store.
pub const MAX_COLORS: usize = u16::MAX as usize;

/// Number of unordered pairs on n vertices.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Position of pair {u,v} in colex order. All pairs within {0..s} occupy the
/// first s(s-1)/2 slots, so a prefix of vertices owns a prefix of the table.
#[inline]
pub fn pair_index(u: usize, v: usize) -> usize {
    debug_assert!(u != v);
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    hi * (hi - 1) / 2 + lo
}

/// A k-edge-coloring of the complete graph K_n. Every unordered pair of
/// distinct vertices carries exactly one color in [0, k). Values are
/// immutable through the public API; edits return fresh values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    k: usize,
    colors: Vec<u16>,
}

impl EdgeColoring {
    /// All pairs colored c.
    pub fn new_uniform(n: usize, c: usize, k: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::OrderOutOfRange {
                n,
                max: MAX_VERTICES,
            });
        }
        if k == 0 || k > MAX_COLORS {
            return Err(Error::ParameterOutOfRange(format!(
                "palette size {k} outside 1..={MAX_COLORS}"
            )));
        }
        if c >= k {
            return Err(Error::InvalidColor { color: c, k });
        }
        Ok(EdgeColoring {
            n,
            k,
            colors: vec![c as u16; pair_count(n)],
        })
    }

    /// Wraps a raw colex-ordered color table. Callers guarantee the entries
    /// are already < k.
    pub(crate) fn from_raw(n: usize, k: usize, colors: Vec<u16>) -> Self {
        debug_assert_eq!(colors.len(), pair_count(n));
        debug_assert!(colors.iter().all(|&c| (c as usize) < k));
        EdgeColoring { n, k, colors }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.colors.len()
    }

    /// Color of pair {u,v}. Panics on a loop or an out-of-range vertex.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> usize {
        assert!(u < self.n && v < self.n && u != v);
        self.colors[pair_index(u, v)] as usize
    }

    pub(crate) fn set(&mut self, u: usize, v: usize, c: usize) {
        debug_assert!(u < self.n && v < self.n && u != v && c < self.k);
        self.colors[pair_index(u, v)] = c as u16;
    }

    /// A copy with pair {u,v} recolored to c.
    pub fn recolor(&self, u: usize, v: usize, c: usize) -> Result<Self> {
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if c >= self.k {
            return Err(Error::InvalidColor {
                color: c,
                k: self.k,
            });
        }
        let mut out = self.clone();
        out.colors[pair_index(u, v)] = c as u16;
        Ok(out)
    }

    /// All pairs (u, v, color) with u < v, in storage order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (1..self.n)
            .flat_map(move |v| (0..v).map(move |u| (u, v, self.colors[pair_index(u, v)] as usize)))
    }

    /// Edges per color.
    pub fn color_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.k];
        for &c in &self.colors {
            counts[c as usize] += 1;
        }
        counts
    }

    /// The simple graph formed by the pairs of color c.
    pub fn color_class_graph(&self, c: usize) -> Result<ColorClassGraph> {
        if c >= self.k {
            return Err(Error::InvalidColor {
                color: c,
                k: self.k,
            });
        }
        let mut rows = vec![Bitset::new(self.n); self.n];
        for (u, v, col) in self.pairs() {
            if col == c {
                rows[u].insert(v);
                rows[v].insert(u);
            }
        }
        Ok(ColorClassGraph { n: self.n, rows })
    }

    /// Role of every color, plus whether the wasted classes jointly form a
    /// matching (they always do individually, by definition).
    pub fn classify_colors(&self) -> ColorClassification {
        let mut degree = vec![0u32; self.k * self.n];
        let mut edges = vec![0usize; self.k];
        for (u, v, c) in self.pairs() {
            degree[c * self.n + u] += 1;
            degree[c * self.n + v] += 1;
            edges[c] += 1;
        }
        let roles: Vec<ColorRole> = (0..self.k)
            .map(|c| {
                let role = if edges[c] == 0 {
                    Role::Absent
                } else if degree[c * self.n..(c + 1) * self.n].iter().any(|&d| d >= 2) {
                    Role::Useful
                } else {
                    Role::Wasted
                };
                ColorRole { color: c, role }
            })
            .collect();
        let wasted_union_is_matching = (0..self.n).all(|v| {
            let joint: u32 = roles
                .iter()
                .filter(|r| r.role == Role::Wasted)
                .map(|r| degree[r.color * self.n + v])
                .sum();
            joint <= 1
        });
        ColorClassification {
            roles,
            wasted_union_is_matching,
        }
    }

    /// Subcoloring on the listed vertices; output vertex i is vertices[i].
    /// The palette is kept as-is.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut seen = Bitset::new(self.n);
        for &v in vertices {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            if seen.contains(v) {
                return Err(Error::DuplicateVertex(v));
            }
            seen.insert(v);
        }
        if vertices.is_empty() {
            return Err(Error::OrderOutOfRange {
                n: 0,
                max: MAX_VERTICES,
            });
        }
        let m = vertices.len();
        let mut colors = Vec::with_capacity(pair_count(m));
        for j in 1..m {
            for i in 0..j {
                colors.push(self.colors[pair_index(vertices[i], vertices[j])]);
            }
        }
        Ok(EdgeColoring {
            n: m,
            k: self.k,
            colors,
        })
    }
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeColoring(n={}, k={})", self.n, self.k)?;
        if self.n <= 16 {
            for u in 0..self.n.saturating_sub(1) {
                write!(f, "\n  {u}:")?;
                for v in u + 1..self.n {
                    write!(f, " {}", self.colors[pair_index(u, v)])?;
                }
            }
        }
        Ok(())
    }
}

/// One color's subgraph, stored as adjacency bit rows.
#[derive(Clone, Debug)]
pub struct ColorClassGraph {
    n: usize,
    rows: Vec<Bitset>,
}

impl ColorClassGraph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::OrderOutOfRange {
                n,
                max: MAX_VERTICES,
            });
        }
        let mut rows = vec![Bitset::new(n); n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(ColorClassGraph { n, rows })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.rows[v]
    }

    #[inline]
    pub(crate) fn rows(&self) -> &[Bitset] {
        &self.rows
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Bitset::count).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.rows[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Wasted,
    Useful,
    Absent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorRole {
    pub color: usize,
    pub role: Role,
}

#[derive(Debug, Clone)]
pub struct ColorClassification {
    pub roles: Vec<ColorRole>,
    pub wasted_union_is_matching: bool,
}

/// Color renamings used by substitute: one map for the reduced coloring and
/// one per part, each sending that component's palette into a joint palette.
/// Maps of different components may share targets (two parts using the same
/// joint color is the normal case); within one component the map must be
/// injective.
#[derive(Debug, Clone)]
pub struct PaletteMap {
    pub reduced: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
}

impl PaletteMap {
    /// Identity on every component.
    pub fn identity(reduced_k: usize, part_ks: &[usize]) -> Self {
        PaletteMap {
            reduced: (0..reduced_k).collect(),
            parts: part_ks.iter().map(|&k| (0..k).collect()).collect(),
        }
    }
}

fn check_injection(map: &[usize], expect_len: usize, what: &str) -> Result<()> {
    if map.len() != expect_len {
        return Err(Error::PaletteCollision {
            context: format!("{what} must cover {expect_len} colors, got {}", map.len()),
        });
    }
    let mut seen = std::collections::BTreeSet::new();
    for &t in map {
        if t > MAX_COLORS {
            return Err(Error::PaletteCollision {
                context: format!("{what} target {t} exceeds {MAX_COLORS}"),
            });
        }
        if !seen.insert(t) {
            return Err(Error::PaletteCollision {
                context: format!("{what} repeats joint color {t}"),
            });
        }
    }
    Ok(())
}

/// Blow-up: replace vertex i of the reduced coloring by parts[i], color pairs
/// inside a part by that part (through its palette map) and pairs across
/// parts i < j by the reduced color of {i,j} (through the reduced map).
/// Output labels run part by part: part 0 gets 0..|P0|-1, then part 1, etc.
/// The joint palette is the smallest one containing every mapped index,
/// whether or not that color actually occurs.
pub fn substitute(
    reduced: &EdgeColoring,
    parts: &[EdgeColoring],
    map: &PaletteMap,
) -> Result<EdgeColoring> {
    let q = reduced.n();
    if parts.len() != q {
        return Err(Error::ParameterOutOfRange(format!(
            "substitute needs one part per reduced vertex: got {} parts for q = {q}",
            parts.len()
        )));
    }
    check_injection(&map.reduced, reduced.k(), "reduced map")?;
    if map.parts.len() != q {
        return Err(Error::PaletteCollision {
            context: format!("expected {q} part maps, got {}", map.parts.len()),
        });
    }
    for (i, part) in parts.iter().enumerate() {
        check_injection(&map.parts[i], part.k(), &format!("part {i} map"))?;
    }
    let n: usize = parts.iter().map(EdgeColoring::n).sum();
    if n > MAX_VERTICES {
        return Err(Error::OrderOutOfRange {
            n,
            max: MAX_VERTICES,
        });
    }
    let k = 1 + map
        .reduced
        .iter()
        .chain(map.parts.iter().flatten())
        .copied()
        .max()
        .expect("palettes are nonempty");

    let mut offsets = Vec::with_capacity(q + 1);
    let mut acc = 0;
    for part in parts {
        offsets.push(acc);
        acc += part.n();
    }
    offsets.push(acc);

    let mut colors = vec![0u16; pair_count(n)];
    for (i, part) in parts.iter().enumerate() {
        let base = offsets[i];
        for (u, v, c) in part.pairs() {
            colors[pair_index(base + u, base + v)] = map.parts[i][c] as u16;
        }
    }
    for i in 0..q {
        for j in i + 1..q {
            let c = map.reduced[reduced.color(i, j)] as u16;
            for u in offsets[i]..offsets[i + 1] {
                for v in offsets[j]..offsets[j + 1] {
                    colors[pair_index(u, v)] = c;
                }
            }
        }
    }
    Ok(EdgeColoring::from_raw(n, k, colors))
}
