//! Min-conflict local search for avoidance witnesses the closed
//! constructions do not cover.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{pair_count, pair_index, EdgeColoring, MAX_COLORS, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::pattern::{
    count_violations, find_mono, has_rainbow_triangle, PatternHit, PatternSpec, Scope, Shape,
};

/// Edges a hit occupies, reconstructed from its vertex order.
fn hit_edges(shape: Shape, scope: Scope, hit: &PatternHit) -> Vec<(usize, usize)> {
    let vs = &hit.vertices;
    let mut edges = Vec::new();
    if scope == Scope::RainbowTriangle {
        return vec![(vs[0], vs[1]), (vs[0], vs[2]), (vs[1], vs[2])];
    }
    match shape {
        Shape::Wheel(_) => {
            let rim = &vs[1..];
            for i in 0..rim.len() {
                edges.push((rim[i], rim[(i + 1) % rim.len()]));
                edges.push((vs[0], rim[i]));
            }
        }
        Shape::Cycle(m) => {
            for i in 0..m {
                edges.push((vs[i], vs[(i + 1) % m]));
            }
        }
        Shape::Path(m) => {
            for i in 0..m - 1 {
                edges.push((vs[i], vs[i + 1]));
            }
        }
        Shape::Matching(m) => {
            for i in 0..m {
                edges.push((vs[2 * i], vs[2 * i + 1]));
            }
        }
        Shape::Clique(m) => {
            for i in 0..m {
                for j in i + 1..m {
                    edges.push((vs[i], vs[j]));
                }
            }
        }
    }
    edges
}

fn present_hit(g: &EdgeColoring, spec: &PatternSpec) -> Option<PatternHit> {
    match spec.scope {
        Scope::RainbowTriangle => has_rainbow_triangle(g),
        Scope::InColor(c) => {
            if c >= g.k() || spec.shape.order() > g.n() {
                return None;
            }
            find_mono(g, spec).expect("spec validated")
        }
        Scope::AnyColor => {
            if spec.shape.order() > g.n() {
                return None;
            }
            find_mono(g, spec).expect("spec validated")
        }
    }
}

/// Searches for an n-vertex k-coloring with no forbidden pattern, by
/// single-pair recolor moves chosen to minimize the violation count.
/// A recent-move tabu (tenure 7) steers away from cycling and the state
/// restarts from fresh random colors after 20 * C(n,2) non-improving moves.
/// The budget caps recolor moves across all restarts. Deterministic for a
/// given seed. A returned coloring always passes its own final check.
pub fn local_search_witness(
    n: usize,
    k: usize,
    forbidden: &[PatternSpec],
    budget: u64,
    seed: u64,
) -> Result<Option<EdgeColoring>> {
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
    if budget == 0 {
        return Err(Error::ParameterOutOfRange(
            "budget must be at least 1".into(),
        ));
    }
    for spec in forbidden {
        spec.check()?;
    }
    const TENURE: u64 = 7;
    let pairs = pair_count(n);
    let restart_limit = 20 * pairs as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps_used = 0u64;

    while steps_used < budget {
        let mut g = random_coloring(n, k, &mut rng)?;
        // tabu[p] = first step index at which pair p may move again.
        let mut tabu = vec![0u64; pairs];
        let mut best_seen = count_violations(&g, forbidden);
        let mut non_improving = 0u64;

        while steps_used < budget {
            let violated: Vec<(usize, PatternHit)> = forbidden
                .iter()
                .enumerate()
                .filter_map(|(i, s)| present_hit(&g, s).map(|h| (i, h)))
                .collect();
            if violated.is_empty() {
                return finish(g, forbidden);
            }
            let (spec_idx, hit) = &violated[rng.gen_range(0..violated.len())];
            let spec = &forbidden[*spec_idx];
            let edges = hit_edges(spec.shape, spec.scope, hit);
            if edges.is_empty() {
                // Nothing to recolor can remove this hit.
                return Ok(None);
            }

            steps_used += 1;
            let mut best_allowed: Option<(usize, usize, usize, usize)> = None;
            let mut best_aspirating: Option<(usize, usize, usize, usize)> = None;
            for &(u, v) in &edges {
                let p = pair_index(u, v);
                let current = g.color(u, v);
                for c in 0..k {
                    if c == current {
                        continue;
                    }
                    g.set(u, v, c);
                    let eval = count_violations(&g, forbidden);
                    g.set(u, v, current);
                    let cand = (eval, u, v, c);
                    if tabu[p] <= steps_used {
                        if best_allowed.is_none_or(|b| cand < b) {
                            best_allowed = Some(cand);
                        }
                    } else if eval < best_seen && best_aspirating.is_none_or(|b| cand < b) {
                        best_aspirating = Some(cand);
                    }
                }
            }
            let chosen = match (best_aspirating, best_allowed) {
                (Some(a), Some(b)) => {
                    if a.0 < b.0 {
                        a
                    } else {
                        b
                    }
                }
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => {
                    // Everything tabu and nothing aspirating: force a random
                    // recolor of one hit edge.
                    let &(u, v) = &edges[rng.gen_range(0..edges.len())];
                    let mut c = rng.gen_range(0..k);
                    if c == g.color(u, v) {
                        c = (c + 1) % k;
                    }
                    let eval = {
                        let current = g.color(u, v);
                        g.set(u, v, c);
                        let e = count_violations(&g, forbidden);
                        g.set(u, v, current);
                        e
                    };
                    (eval, u, v, c)
                }
            };
            let (eval, u, v, c) = chosen;
            g.set(u, v, c);
            tabu[pair_index(u, v)] = steps_used + TENURE;
            if eval == 0 {
                return finish(g, forbidden);
            }
            if eval < best_seen {
                best_seen = eval;
                non_improving = 0;
            } else {
                non_improving += 1;
                if non_improving >= restart_limit {
                    break;
                }
            }
        }
    }
    Ok(None)
}

fn random_coloring(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<EdgeColoring> {
    let mut g = EdgeColoring::new_uniform(n, 0, k)?;
    if k > 1 {
        for v in 1..n {
            for u in 0..v {
                g.set(u, v, rng.gen_range(0..k));
            }
        }
    }
    Ok(g)
}

fn finish(g: EdgeColoring, forbidden: &[PatternSpec]) -> Result<Option<EdgeColoring>> {
    if count_violations(&g, forbidden) == 0 {
        Ok(Some(g))
    } else {
        Err(Error::InternalInconsistency(
            "local search accepted a coloring that fails its final check".into(),
        ))
    }
}
