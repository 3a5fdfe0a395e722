//! Lexicographic minimality of colored prefixes under vertex permutations
//! and palette permutations that respect each color's forbidden shapes.

use crate::coloring::pair_index;
use crate::pattern::{PatternSpec, Scope, Shape};

/// Palette permutations allowed to act on a task's colors: only colors with
/// identical per-color forbidden shape lists may swap. The list is capped;
/// using a subset of the true symmetry group weakens pruning but never
/// changes search status.
pub(crate) fn allowed_palette_perms(k: usize, forbidden: &[PatternSpec]) -> Vec<Vec<usize>> {
    const CAP: usize = 120;
    let signature = |c: usize| -> Vec<Shape> {
        let mut shapes: Vec<Shape> = forbidden
            .iter()
            .filter_map(|s| match s.scope {
                Scope::InColor(col) if col == c => Some(s.shape),
                _ => None,
            })
            .collect();
        shapes.sort_by_key(|s| format!("{s:?}"));
        shapes
    };
    let mut groups: Vec<(Vec<Shape>, Vec<usize>)> = Vec::new();
    for c in 0..k {
        let sig = signature(c);
        match groups.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, members)) => members.push(c),
            None => groups.push((sig, vec![c])),
        }
    }
    let mut perms: Vec<Vec<usize>> = vec![(0..k).collect()];
    for (_, members) in &groups {
        let member_perms = permutations(members, CAP);
        let mut next = Vec::new();
        'outer: for base in &perms {
            for mp in &member_perms {
                let mut p = base.clone();
                for (slot, &target) in members.iter().zip(mp) {
                    p[*slot] = target;
                }
                next.push(p);
                if next.len() >= CAP {
                    break 'outer;
                }
            }
        }
        perms = next;
    }
    perms
}

/// First `cap` permutations of `items` in lexicographic-by-position order;
/// the identity arrangement comes first.
fn permutations(items: &[usize], cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut used = vec![false; items.len()];
    permute_rec(items, &mut used, &mut current, &mut out, cap);
    out
}

fn permute_rec(
    items: &[usize],
    used: &mut [bool],
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    if current.len() == items.len() {
        out.push(current.clone());
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            current.push(items[i]);
            permute_rec(items, used, current, out, cap);
            current.pop();
            used[i] = false;
        }
    }
}

/// True iff no vertex relabeling combined with an allowed palette
/// permutation makes the prefix's color sequence strictly smaller.
///
/// The candidate relabeling is grown one vertex at a time; as soon as a
/// produced color differs from the original sequence the branch is decided
/// (smaller: not canonical; larger: dead branch), which keeps the check
/// cheap in practice.
pub(crate) fn is_canonical(colors: &[u16], s: usize, perms: &[Vec<usize>]) -> bool {
    debug_assert!(colors.len() >= s * (s - 1) / 2);
    let mut chosen: Vec<usize> = Vec::with_capacity(s);
    let mut used = vec![false; s];
    for sigma in perms {
        if smaller_exists(colors, s, sigma, &mut chosen, &mut used) {
            return false;
        }
        debug_assert!(chosen.is_empty());
    }
    true
}

fn smaller_exists(
    colors: &[u16],
    s: usize,
    sigma: &[usize],
    chosen: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let j = chosen.len();
    if j == s {
        return false;
    }
    for old in 0..s {
        if used[old] {
            continue;
        }
        // Placing `old` at new label j fixes the colors of pairs {i, j}.
        let mut verdict = 0i8;
        for i in 0..j {
            let mapped = sigma[colors[pair_index(chosen[i], old)] as usize];
            let orig = colors[pair_index(i, j)] as usize;
            if mapped < orig {
                verdict = -1;
                break;
            }
            if mapped > orig {
                verdict = 1;
                break;
            }
        }
        match verdict {
            -1 => return true,
            1 => continue,
            _ => {
                used[old] = true;
                chosen.push(old);
                if smaller_exists(colors, s, sigma, chosen, used) {
                    return true;
                }
                chosen.pop();
                used[old] = false;
            }
        }
    }
    false
}
