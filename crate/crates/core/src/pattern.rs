//! Rainbow-triangle detection and monochromatic subgraph search.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::Bitset;
use crate::coloring::{ColorClassGraph, EdgeColoring};
use crate::error::{Error, Result};

/// A target subgraph family. The parameter is the vertex count, except for
/// Matching where it is the number of (pairwise disjoint) edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Wheel(usize),
    Cycle(usize),
    Path(usize),
    Matching(usize),
    Clique(usize),
}

impl Shape {
    /// Vertices a copy occupies.
    pub fn order(&self) -> usize {
        match *self {
            Shape::Wheel(m) | Shape::Cycle(m) | Shape::Path(m) | Shape::Clique(m) => m,
            Shape::Matching(m) => 2 * m,
        }
    }

    fn check(&self) -> Result<()> {
        let ok = match *self {
            Shape::Wheel(m) => m >= 4,
            Shape::Cycle(m) => m >= 3,
            Shape::Path(m) => m >= 2,
            Shape::Matching(m) => m >= 1,
            Shape::Clique(m) => m >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidPattern(format!(
                "{self:?} is below its minimum size"
            )))
        }
    }

    fn letter(&self) -> char {
        match self {
            Shape::Wheel(_) => 'W',
            Shape::Cycle(_) => 'C',
            Shape::Path(_) => 'P',
            Shape::Matching(_) => 'M',
            Shape::Clique(_) => 'K',
        }
    }

    fn param(&self) -> usize {
        match *self {
            Shape::Wheel(m)
            | Shape::Cycle(m)
            | Shape::Path(m)
            | Shape::Matching(m)
            | Shape::Clique(m) => m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    InColor(usize),
    AnyColor,
    RainbowTriangle,
}

/// What to look for: a shape within one color class, within any class, or a
/// rainbow triangle (which ignores the shape).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PatternSpec {
    pub shape: Shape,
    pub scope: Scope,
}

impl PatternSpec {
    pub fn mono(shape: Shape, color: usize) -> Self {
        PatternSpec {
            shape,
            scope: Scope::InColor(color),
        }
    }

    pub fn any(shape: Shape) -> Self {
        PatternSpec {
            shape,
            scope: Scope::AnyColor,
        }
    }

    pub fn rainbow() -> Self {
        PatternSpec {
            shape: Shape::Clique(3),
            scope: Scope::RainbowTriangle,
        }
    }

    pub fn order(&self) -> usize {
        match self.scope {
            Scope::RainbowTriangle => 3,
            _ => self.shape.order(),
        }
    }

    pub fn check(&self) -> Result<()> {
        match self.scope {
            Scope::RainbowTriangle => Ok(()),
            _ => self.shape.check(),
        }
    }
}

/// Text form: `W5@0`, `C6@any`, `P4@2`, `M3@1`, `K4@0`, `rainbow-K3`.
impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.scope {
            Scope::RainbowTriangle => write!(f, "rainbow-K3"),
            Scope::AnyColor => write!(f, "{}{}@any", self.shape.letter(), self.shape.param()),
            Scope::InColor(c) => write!(f, "{}{}@{}", self.shape.letter(), self.shape.param(), c),
        }
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "rainbow-K3" {
            return Ok(PatternSpec::rainbow());
        }
        let bad = || Error::InvalidPattern(format!("cannot parse pattern {s:?}"));
        let (head, tail) = s.split_once('@').ok_or_else(bad)?;
        let mut chars = head.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let m: usize = chars.as_str().parse().map_err(|_| bad())?;
        let shape = match letter {
            'W' => Shape::Wheel(m),
            'C' => Shape::Cycle(m),
            'P' => Shape::Path(m),
            'M' => Shape::Matching(m),
            'K' => Shape::Clique(m),
            _ => return Err(bad()),
        };
        let scope = if tail == "any" {
            Scope::AnyColor
        } else {
            Scope::InColor(tail.parse().map_err(|_| bad())?)
        };
        let spec = PatternSpec { shape, scope };
        spec.check()?;
        Ok(spec)
    }
}

impl Serialize for PatternSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PatternSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse()
            .map_err(|e: Error| D::Error::custom(e.to_string()))
    }
}

/// A concrete occurrence. Vertex order carries the structure: wheels list the
/// hub first and then the rim in cycle order; cycles and paths list traversal
/// order; matchings list endpoint pairs. `colors` holds the single color of a
/// monochromatic hit, or the three colors of a rainbow triangle in the order
/// (v0v1, v0v2, v1v2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternHit {
    pub vertices: Vec<usize>,
    pub colors: Vec<usize>,
}

/// Re-checks a hit edge by edge against the coloring.
pub fn validate_hit(g: &EdgeColoring, spec: &PatternSpec, hit: &PatternHit) -> Result<()> {
    let fail = |msg: String| Err(Error::VerificationFailed(msg));
    let vs = &hit.vertices;
    let mut seen = std::collections::BTreeSet::new();
    for &v in vs {
        if v >= g.n() {
            return fail(format!("hit vertex {v} out of range"));
        }
        if !seen.insert(v) {
            return fail(format!("hit repeats vertex {v}"));
        }
    }
    if let Scope::RainbowTriangle = spec.scope {
        if vs.len() != 3 || hit.colors.len() != 3 {
            return fail("rainbow hit must list 3 vertices and 3 colors".into());
        }
        let actual = [
            g.color(vs[0], vs[1]),
            g.color(vs[0], vs[2]),
            g.color(vs[1], vs[2]),
        ];
        if actual.to_vec() != hit.colors {
            return fail(format!(
                "rainbow hit colors {:?} do not match {actual:?}",
                hit.colors
            ));
        }
        if actual[0] == actual[1] || actual[0] == actual[2] || actual[1] == actual[2] {
            return fail("rainbow hit colors are not pairwise distinct".into());
        }
        return Ok(());
    }

    if hit.colors.len() != 1 {
        return fail("monochromatic hit must carry exactly one color".into());
    }
    let c = hit.colors[0];
    if let Scope::InColor(want) = spec.scope {
        if c != want {
            return fail(format!("hit color {c} differs from requested color {want}"));
        }
    }
    if c >= g.k() {
        return fail(format!("hit color {c} outside palette"));
    }
    let mut need_edges: Vec<(usize, usize)> = Vec::new();
    match spec.shape {
        Shape::Wheel(m) => {
            if vs.len() != m {
                return fail(format!(
                    "wheel hit lists {} vertices, expected {m}",
                    vs.len()
                ));
            }
            let rim = &vs[1..];
            for i in 0..rim.len() {
                need_edges.push((rim[i], rim[(i + 1) % rim.len()]));
                need_edges.push((vs[0], rim[i]));
            }
        }
        Shape::Cycle(m) => {
            if vs.len() != m {
                return fail(format!(
                    "cycle hit lists {} vertices, expected {m}",
                    vs.len()
                ));
            }
            for i in 0..m {
                need_edges.push((vs[i], vs[(i + 1) % m]));
            }
        }
        Shape::Path(m) => {
            if vs.len() != m {
                return fail(format!(
                    "path hit lists {} vertices, expected {m}",
                    vs.len()
                ));
            }
            for i in 0..m - 1 {
                need_edges.push((vs[i], vs[i + 1]));
            }
        }
        Shape::Matching(m) => {
            if vs.len() != 2 * m {
                return fail(format!(
                    "matching hit lists {} vertices, expected {}",
                    vs.len(),
                    2 * m
                ));
            }
            for i in 0..m {
                need_edges.push((vs[2 * i], vs[2 * i + 1]));
            }
        }
        Shape::Clique(m) => {
            if vs.len() != m {
                return fail(format!(
                    "clique hit lists {} vertices, expected {m}",
                    vs.len()
                ));
            }
            for i in 0..m {
                for j in i + 1..m {
                    need_edges.push((vs[i], vs[j]));
                }
            }
        }
    }
    for (u, v) in need_edges {
        if g.color(u, v) != c {
            return fail(format!(
                "edge {{{u},{v}}} has color {}, expected {c}",
                g.color(u, v)
            ));
        }
    }
    Ok(())
}

/// First triple (in ascending lexicographic order) whose three edges carry
/// three distinct colors.
pub fn has_rainbow_triangle(g: &EdgeColoring) -> Option<PatternHit> {
    let n = g.n();
    for u in 0..n {
        for v in u + 1..n {
            let cuv = g.color(u, v);
            for w in v + 1..n {
                let cuw = g.color(u, w);
                if cuw == cuv {
                    continue;
                }
                let cvw = g.color(v, w);
                if cvw != cuv && cvw != cuw {
                    return Some(PatternHit {
                        vertices: vec![u, v, w],
                        colors: vec![cuv, cuw, cvw],
                    });
                }
            }
        }
    }
    None
}

/// Finds a monochromatic copy of the shape, in the named color or (for
/// AnyColor) in the first color class that contains one. Exhaustive:
/// returns None only when no copy exists.
pub fn find_mono(g: &EdgeColoring, spec: &PatternSpec) -> Result<Option<PatternHit>> {
    spec.check()?;
    if spec.scope == Scope::RainbowTriangle {
        return Err(Error::InvalidPattern(
            "find_mono expects a monochromatic scope, not rainbow-K3".into(),
        ));
    }
    if spec.shape.order() > g.n() {
        return Err(Error::PatternTooLarge {
            needed: spec.shape.order(),
            n: g.n(),
        });
    }
    let colors: Vec<usize> = match spec.scope {
        Scope::InColor(c) => {
            if c >= g.k() {
                return Err(Error::InvalidColor { color: c, k: g.k() });
            }
            vec![c]
        }
        Scope::AnyColor => (0..g.k()).collect(),
        Scope::RainbowTriangle => unreachable!(),
    };
    for c in colors {
        let class = g.color_class_graph(c)?;
        if let Some(vertices) = find_in_class(class.rows(), g.n(), spec.shape) {
            let hit = PatternHit {
                vertices,
                colors: vec![c],
            };
            debug_assert!(validate_hit(g, spec, &hit).is_ok());
            return Ok(Some(hit));
        }
    }
    Ok(None)
}

/// Number of forbidden specs present in g; each contributes 0 or 1. Specs
/// whose order exceeds n, or whose color is outside the palette, cannot
/// occur and count 0.
pub fn count_violations(g: &EdgeColoring, forbidden: &[PatternSpec]) -> usize {
    forbidden.iter().filter(|s| is_present(g, s)).count()
}

/// Presence test behind count_violations; never errors.
pub fn is_present(g: &EdgeColoring, spec: &PatternSpec) -> bool {
    debug_assert!(spec.check().is_ok());
    match spec.scope {
        Scope::RainbowTriangle => has_rainbow_triangle(g).is_some(),
        Scope::InColor(c) => {
            if c >= g.k() || spec.shape.order() > g.n() {
                return false;
            }
            let class = g.color_class_graph(c).expect("color checked");
            find_in_class(class.rows(), g.n(), spec.shape).is_some()
        }
        Scope::AnyColor => {
            if spec.shape.order() > g.n() {
                return false;
            }
            (0..g.k()).any(|c| {
                let class = g.color_class_graph(c).expect("color in range");
                find_in_class(class.rows(), g.n(), spec.shape).is_some()
            })
        }
    }
}

/// True iff h contains a cycle of every length 3..=n.
pub fn is_pancyclic(h: &ColorClassGraph) -> Result<bool> {
    if h.n() < 3 {
        return Err(Error::OrderTooSmall(h.n()));
    }
    Ok((3..=h.n()).all(|len| find_cycle(h.rows(), h.n(), len).is_some()))
}

/// True iff every vertex lies on a cycle of every length 3..=n.
pub fn is_vertex_pancyclic(h: &ColorClassGraph) -> Result<bool> {
    if h.n() < 3 {
        return Err(Error::OrderTooSmall(h.n()));
    }
    let mut allowed = Bitset::new(h.n());
    allowed.fill();
    Ok((0..h.n())
        .all(|v| (3..=h.n()).all(|len| cycle_dfs(h.rows(), &allowed, v, len, false).is_some())))
}

// ---------------------------------------------------------------------------
// Class-graph searches. All operate on per-vertex adjacency bit rows so the
// exhaustive-search module can reuse them on its incremental state.

pub(crate) fn find_in_class(rows: &[Bitset], n: usize, shape: Shape) -> Option<Vec<usize>> {
    match shape {
        Shape::Wheel(m) => find_wheel(rows, n, m),
        Shape::Cycle(m) => find_cycle(rows, n, m),
        Shape::Path(m) => find_path(rows, n, m),
        Shape::Matching(m) => find_matching(rows, n, m),
        Shape::Clique(m) => find_clique(rows, n, m),
    }
}

/// Copy of the shape that uses vertex v, or None. Complete for prefix
/// extension: a pattern absent before v was added must contain v.
pub(crate) fn find_in_class_containing(
    rows: &[Bitset],
    n: usize,
    shape: Shape,
    v: usize,
) -> Option<Vec<usize>> {
    match shape {
        Shape::Wheel(m) => find_wheel_containing(rows, n, m, v),
        Shape::Cycle(m) => {
            let mut allowed = Bitset::new(n);
            allowed.fill();
            cycle_dfs(rows, &allowed, v, m, false)
        }
        Shape::Path(m) => find_path(rows, n, m),
        Shape::Matching(m) => find_matching(rows, n, m),
        Shape::Clique(m) => find_clique_containing(rows, n, m, v),
    }
}

/// Cycle of the given length with every vertex above the anchor (canonical
/// existence search) or unrestricted (anchored search). Neighbors are tried
/// in ascending label order; of the two traversal directions of a cycle the
/// one with path[1] < path[len-1] is reported.
fn cycle_dfs(
    rows: &[Bitset],
    allowed: &Bitset,
    anchor: usize,
    len: usize,
    above_anchor_only: bool,
) -> Option<Vec<usize>> {
    debug_assert!(len >= 3);
    if !allowed.contains(anchor) {
        return None;
    }
    let n = rows.len();
    let mut path = Vec::with_capacity(len);
    let mut visited = Bitset::new(n);
    path.push(anchor);
    visited.insert(anchor);
    if cycle_rec(
        rows,
        allowed,
        anchor,
        len,
        above_anchor_only,
        &mut path,
        &mut visited,
    ) {
        Some(path)
    } else {
        None
    }
}

fn cycle_rec(
    rows: &[Bitset],
    allowed: &Bitset,
    anchor: usize,
    len: usize,
    above: bool,
    path: &mut Vec<usize>,
    visited: &mut Bitset,
) -> bool {
    let last = *path.last().unwrap();
    if path.len() == len {
        return rows[last].contains(anchor) && path[1] < path[len - 1];
    }
    for w in rows[last].iter() {
        if (above && w <= anchor) || !allowed.contains(w) || visited.contains(w) {
            continue;
        }
        path.push(w);
        visited.insert(w);
        if cycle_rec(rows, allowed, anchor, len, above, path, visited) {
            return true;
        }
        path.pop();
        visited.remove(w);
    }
    false
}

pub(crate) fn find_cycle(rows: &[Bitset], n: usize, len: usize) -> Option<Vec<usize>> {
    let mut allowed = Bitset::new(n);
    allowed.fill();
    (0..n).find_map(|a| cycle_dfs(rows, &allowed, a, len, true))
}

/// Wheel = hub joined to a rim cycle inside its neighborhood. Hubs are tried
/// cheapest first (ascending degree, ties by label).
fn find_wheel(rows: &[Bitset], n: usize, m: usize) -> Option<Vec<usize>> {
    let rim = m - 1;
    let mut hubs: Vec<usize> = (0..n).filter(|&h| rows[h].count() >= rim).collect();
    hubs.sort_by_key(|&h| (rows[h].count(), h));
    for h in hubs {
        if let Some(cycle) = rim_cycle(rows, &rows[h], rim) {
            let mut out = vec![h];
            out.extend(cycle);
            return Some(out);
        }
    }
    None
}

fn rim_cycle(rows: &[Bitset], allowed: &Bitset, len: usize) -> Option<Vec<usize>> {
    allowed
        .iter()
        .find_map(|a| cycle_dfs(rows, allowed, a, len, true))
}

fn find_wheel_containing(rows: &[Bitset], _n: usize, m: usize, v: usize) -> Option<Vec<usize>> {
    let rim = m - 1;
    // v as hub.
    if rows[v].count() >= rim {
        if let Some(cycle) = rim_cycle(rows, &rows[v], rim) {
            let mut out = vec![v];
            out.extend(cycle);
            return Some(out);
        }
    }
    // v on the rim of some neighboring hub.
    for h in rows[v].iter() {
        let nbhd = &rows[h];
        if nbhd.count() >= rim {
            if let Some(cycle) = cycle_dfs(rows, nbhd, v, rim, false) {
                let mut out = vec![h];
                out.extend(cycle);
                return Some(out);
            }
        }
    }
    None
}

fn find_path(rows: &[Bitset], n: usize, m: usize) -> Option<Vec<usize>> {
    let mut path = Vec::with_capacity(m);
    let mut visited = Bitset::new(n);
    for s in 0..n {
        path.push(s);
        visited.insert(s);
        if path_rec(rows, m, &mut path, &mut visited) {
            return Some(path);
        }
        path.pop();
        visited.remove(s);
    }
    None
}

fn path_rec(rows: &[Bitset], m: usize, path: &mut Vec<usize>, visited: &mut Bitset) -> bool {
    if path.len() == m {
        return true;
    }
    let last = *path.last().unwrap();
    for w in rows[last].iter() {
        if visited.contains(w) {
            continue;
        }
        path.push(w);
        visited.insert(w);
        if path_rec(rows, m, path, visited) {
            return true;
        }
        path.pop();
        visited.remove(w);
    }
    false
}

fn find_matching(rows: &[Bitset], n: usize, want: usize) -> Option<Vec<usize>> {
    let mut used = Bitset::new(n);
    let mut acc = Vec::with_capacity(2 * want);
    if match_rec(rows, n, 0, want, &mut used, &mut acc) {
        Some(acc)
    } else {
        None
    }
}

/// Walks vertices in ascending order; each is matched to a larger free
/// neighbor or skipped. Sorting a matching by lower endpoints shows every
/// matching is reachable this way.
fn match_rec(
    rows: &[Bitset],
    n: usize,
    u: usize,
    need: usize,
    used: &mut Bitset,
    acc: &mut Vec<usize>,
) -> bool {
    if need == 0 {
        return true;
    }
    if u >= n || n - u < 2 * need {
        return false;
    }
    if !used.contains(u) {
        for v in rows[u].iter() {
            if v > u && !used.contains(v) {
                used.insert(u);
                used.insert(v);
                acc.push(u);
                acc.push(v);
                if match_rec(rows, n, u + 1, need - 1, used, acc) {
                    return true;
                }
                acc.pop();
                acc.pop();
                used.remove(u);
                used.remove(v);
            }
        }
    }
    match_rec(rows, n, u + 1, need, used, acc)
}

fn find_clique(rows: &[Bitset], n: usize, m: usize) -> Option<Vec<usize>> {
    let mut cand = Bitset::new(n);
    cand.fill();
    let mut acc = Vec::with_capacity(m);
    clique_rec(rows, m, &cand, 0, &mut acc)
}

fn find_clique_containing(rows: &[Bitset], _n: usize, m: usize, v: usize) -> Option<Vec<usize>> {
    if m == 1 {
        return Some(vec![v]);
    }
    let mut acc = vec![v];
    // Remaining members come from N(v); labels may be below v.
    clique_rec(rows, m - 1, &rows[v], 0, &mut acc)
}

fn clique_rec(
    rows: &[Bitset],
    need: usize,
    cand: &Bitset,
    min: usize,
    acc: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if need == 0 {
        return Some(acc.clone());
    }
    if cand.count() < need {
        return None;
    }
    for v in cand.iter() {
        if v < min {
            continue;
        }
        acc.push(v);
        let mut next = cand.clone();
        next.intersect_with(&rows[v]);
        if let Some(hit) = clique_rec(rows, need - 1, &next, v + 1, acc) {
            return Some(hit);
        }
        acc.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::EdgeColoring;

    fn uniform(n: usize, c: usize, k: usize) -> EdgeColoring {
        EdgeColoring::new_uniform(n, c, k).unwrap()
    }

    #[test]
    fn spec_text_round_trip() {
        for s in ["W5@0", "C6@any", "P4@2", "M3@1", "K4@0", "rainbow-K3"] {
            let spec: PatternSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        for s in ["W3@0", "C2@any", "X4@0", "W5", "W5@red", "P1@0", ""] {
            assert!(s.parse::<PatternSpec>().is_err(), "{s} should not parse");
        }
        let spec: PatternSpec = "W5@any".parse().unwrap();
        assert_eq!(spec, PatternSpec::any(Shape::Wheel(5)));
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, "\"W5@any\"");
        assert_eq!(serde_json::from_str::<PatternSpec>(&json).unwrap(), spec);
    }

    #[test]
    fn rainbow_triangle_detection() {
        let mut t = uniform(3, 0, 3);
        t.set(0, 2, 1);
        t.set(1, 2, 2);
        let hit = has_rainbow_triangle(&t).unwrap();
        assert_eq!(hit.vertices, vec![0, 1, 2]);
        assert_eq!(hit.colors, vec![0, 1, 2]);
        validate_hit(&t, &PatternSpec::rainbow(), &hit).unwrap();

        // Two colors can never host a rainbow triangle.
        let mut g = uniform(6, 0, 2);
        g.set(0, 3, 1);
        g.set(2, 4, 1);
        assert!(has_rainbow_triangle(&g).is_none());
    }

    #[test]
    fn wheel_in_complete_graph() {
        let g = uniform(5, 0, 1);
        let spec = PatternSpec::mono(Shape::Wheel(5), 0);
        let hit = find_mono(&g, &spec).unwrap().unwrap();
        assert_eq!(hit.vertices.len(), 5);
        validate_hit(&g, &spec, &hit).unwrap();
    }

    #[test]
    fn wheel_survives_matching_removal() {
        // K5 with a 2-edge matching recolored: the rest is still a W5.
        let mut g = uniform(5, 0, 2);
        g.set(1, 2, 1);
        g.set(3, 4, 1);
        let spec = PatternSpec::mono(Shape::Wheel(5), 0);
        let hit = find_mono(&g, &spec).unwrap().unwrap();
        validate_hit(&g, &spec, &hit).unwrap();
        // Removing one more edge of the same kind kills it.
        g.set(0, 1, 1);
        g.set(2, 3, 1);
        assert!(find_mono(&g, &spec).unwrap().is_none());
    }

    #[test]
    fn cycle_path_matching_clique_basics() {
        let mut g = uniform(6, 0, 2);
        for (u, v) in [(0, 1), (1, 2), (2, 0)] {
            g.set(u, v, 1);
        }
        let c3 = PatternSpec::mono(Shape::Cycle(3), 1);
        let hit = find_mono(&g, &c3).unwrap().unwrap();
        assert_eq!(hit.vertices, vec![0, 1, 2]);
        validate_hit(&g, &c3, &hit).unwrap();
        assert!(find_mono(&g, &PatternSpec::mono(Shape::Cycle(4), 1))
            .unwrap()
            .is_none());
        assert!(find_mono(&g, &PatternSpec::mono(Shape::Path(4), 1))
            .unwrap()
            .is_none());
        let p3 = find_mono(&g, &PatternSpec::mono(Shape::Path(3), 1))
            .unwrap()
            .unwrap();
        validate_hit(&g, &PatternSpec::mono(Shape::Path(3), 1), &p3).unwrap();
        assert!(find_mono(&g, &PatternSpec::mono(Shape::Matching(2), 1))
            .unwrap()
            .is_none());
        let m1 = PatternSpec::mono(Shape::Matching(1), 1);
        validate_hit(&g, &m1, &find_mono(&g, &m1).unwrap().unwrap()).unwrap();
        let k4 = PatternSpec::mono(Shape::Clique(4), 0);
        let hit = find_mono(&g, &k4).unwrap().unwrap();
        validate_hit(&g, &k4, &hit).unwrap();
        assert_eq!(hit.vertices, vec![0, 3, 4, 5]);
    }

    #[test]
    fn any_color_scans_ascending() {
        let mut g = uniform(5, 1, 3);
        g.set(0, 1, 2);
        let spec = PatternSpec::any(Shape::Path(2));
        let hit = find_mono(&g, &spec).unwrap().unwrap();
        assert_eq!(hit.colors, vec![1]);
    }

    #[test]
    fn errors_and_bounds() {
        let g = uniform(4, 0, 1);
        assert!(matches!(
            find_mono(&g, &PatternSpec::mono(Shape::Wheel(5), 0)),
            Err(Error::PatternTooLarge { needed: 5, n: 4 })
        ));
        assert!(matches!(
            find_mono(&g, &PatternSpec::mono(Shape::Cycle(3), 4)),
            Err(Error::InvalidColor { .. })
        ));
        assert!(find_mono(&g, &PatternSpec::rainbow()).is_err());
        assert!(matches!(
            find_mono(&g, &PatternSpec::mono(Shape::Wheel(3), 0)),
            Err(Error::InvalidPattern(_))
        ));
    }

    #[test]
    fn violation_counting() {
        let g = uniform(5, 0, 1);
        assert_eq!(
            count_violations(&g, &[PatternSpec::any(Shape::Wheel(5))]),
            1
        );
        let g9 = uniform(9, 0, 2);
        let forbidden = [
            PatternSpec::mono(Shape::Cycle(5), 0),
            PatternSpec::mono(Shape::Cycle(5), 1),
        ];
        assert_eq!(count_violations(&g9, &forbidden), 1);
        // Oversized and out-of-palette specs count zero.
        let small = uniform(3, 0, 1);
        let forbidden = [
            PatternSpec::mono(Shape::Wheel(5), 0),
            PatternSpec::mono(Shape::Cycle(3), 7),
            PatternSpec::rainbow(),
        ];
        assert_eq!(count_violations(&small, &forbidden), 0);
    }

    #[test]
    fn pancyclicity() {
        let complete = uniform(5, 0, 1).color_class_graph(0).unwrap();
        assert!(is_pancyclic(&complete).unwrap());
        assert!(is_vertex_pancyclic(&complete).unwrap());

        let c5 = ColorClassGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(!is_pancyclic(&c5).unwrap());

        // K5 minus one edge still has every vertex on every cycle length.
        let mut g = uniform(5, 0, 2);
        g.set(0, 1, 1);
        let h = g.color_class_graph(0).unwrap();
        assert!(is_vertex_pancyclic(&h).unwrap());

        let tiny = ColorClassGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(matches!(is_pancyclic(&tiny), Err(Error::OrderTooSmall(2))));
    }

    #[test]
    fn containing_variants_agree_with_global_search() {
        // A C4 in color 1 on {1,2,3,4}; vertex 0 only sees color 0.
        let mut g = uniform(5, 0, 2);
        for (u, v) in [(1, 2), (2, 3), (3, 4), (4, 1)] {
            g.set(u, v, 1);
        }
        let class = g.color_class_graph(1).unwrap();
        assert!(find_in_class_containing(class.rows(), 5, Shape::Cycle(4), 0).is_none());
        let hit = find_in_class_containing(class.rows(), 5, Shape::Cycle(4), 3).unwrap();
        assert_eq!(hit[0], 3);
        assert!(find_in_class_containing(class.rows(), 5, Shape::Clique(2), 4).is_some());

        // Wheel containing a rim vertex whose own degree is too small to hub.
        let mut w = uniform(6, 0, 2);
        // Hub 5, rim 0-1-2-3 in color 1.
        for (u, v) in [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (5, 0),
            (5, 1),
            (5, 2),
            (5, 3),
        ] {
            w.set(u, v, 1);
        }
        let class = w.color_class_graph(1).unwrap();
        let hit = find_in_class_containing(class.rows(), 6, Shape::Wheel(5), 2).unwrap();
        assert_eq!(hit[0], 5);
        assert!(find_in_class_containing(class.rows(), 6, Shape::Wheel(5), 4).is_none());
    }
}
