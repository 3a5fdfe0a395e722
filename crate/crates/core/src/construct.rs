//! Explicit lower-bound witness colorings: the triangle-free 2-colored K5,
//! clique joins for wheels, and the blow-up towers built over them.

use crate::coloring::{substitute, EdgeColoring, PaletteMap};
use crate::error::{Error, Result};
use crate::local_search::local_search_witness;
use crate::pattern::{count_violations, PatternSpec, Shape};

/// The 2-colored K5 with no monochromatic triangle: color 0 is the cycle
/// 0-1-2-3-4-0, color 1 its complement (also a 5-cycle).
pub fn k5_two_coloring() -> EdgeColoring {
    let mut g = EdgeColoring::new_uniform(5, 1, 2).expect("static parameters");
    for i in 0..5 {
        g.set(i, (i + 1) % 5, 0);
    }
    assert_eq!(
        count_violations(&g, &[PatternSpec::any(Shape::Cycle(3))]),
        0,
        "triangle-free 2-coloring of K5 must verify"
    );
    g
}

/// Two copies of g joined by one fresh color (index g.k()).
pub fn double(g: &EdgeColoring) -> Result<EdgeColoring> {
    let reduced = EdgeColoring::new_uniform(2, 0, 1)?;
    let map = PaletteMap {
        reduced: vec![g.k()],
        parts: vec![(0..g.k()).collect(); 2],
    };
    substitute(&reduced, &[g.clone(), g.clone()], &map)
}

/// Five copies of g arranged as the triangle-free K5, with the two cross
/// colors fresh (indices g.k() and g.k()+1).
pub fn blowup5(g: &EdgeColoring) -> Result<EdgeColoring> {
    let reduced = k5_two_coloring();
    let map = PaletteMap {
        reduced: vec![g.k(), g.k() + 1],
        parts: vec![(0..g.k()).collect(); 5],
    };
    substitute(&reduced, &vec![g.clone(); 5], &map)
}

/// 2-colored clique join avoiding monochromatic W_n: for even n = 2t+2,
/// three color-1 cliques K_{2t+1} with all cross pairs color 0 (order 6t+3);
/// for odd n = 2t+1, two color-1 cliques K_{2t} joined in color 0 (order 4t).
pub fn wheel_join_witness(n: usize) -> Result<EdgeColoring> {
    if n < 6 {
        return Err(Error::ParameterOutOfRange(format!(
            "wheel order {n} is below 6"
        )));
    }
    let (copies, block) = if n % 2 == 0 { (3, n - 1) } else { (2, n - 1) };
    let reduced = EdgeColoring::new_uniform(copies, 0, 1)?;
    let part = EdgeColoring::new_uniform(block, 0, 1)?;
    let map = PaletteMap {
        reduced: vec![0],
        parts: vec![vec![1]; copies],
    };
    let g = substitute(&reduced, &vec![part; copies], &map)?;
    let forbidden = [
        PatternSpec::mono(Shape::Wheel(n), 0),
        PatternSpec::mono(Shape::Wheel(n), 1),
    ];
    if count_violations(&g, &forbidden) != 0 {
        return Err(Error::VerificationFailed(format!(
            "clique join for wheel order {n} contains a monochromatic wheel"
        )));
    }
    Ok(g)
}

fn check_tower_base(base: &EdgeColoring, wheel: usize, order: usize) -> Result<()> {
    if base.n() != order {
        return Err(Error::InvalidBase(format!(
            "base has {} vertices, need {order}",
            base.n()
        )));
    }
    if base.k() != 2 {
        return Err(Error::InvalidBase(format!(
            "base uses {} colors, need 2",
            base.k()
        )));
    }
    let forbidden = [
        PatternSpec::rainbow(),
        PatternSpec::mono(Shape::Wheel(wheel), 0),
        PatternSpec::mono(Shape::Wheel(wheel), 1),
    ];
    if count_violations(base, &forbidden) != 0 {
        return Err(Error::InvalidBase(format!(
            "base contains a monochromatic wheel on {wheel} vertices or a rainbow triangle"
        )));
    }
    Ok(())
}

/// Forbidden list for a k-color tower avoiding a wheel everywhere.
fn tower_forbidden(wheel: usize, k: usize) -> Vec<PatternSpec> {
    let mut forbidden = vec![PatternSpec::rainbow()];
    forbidden.extend((0..k).map(|c| PatternSpec::mono(Shape::Wheel(wheel), c)));
    forbidden
}

/// Grows a 2-color base to k colors: one 5-blow-up per pair of extra colors
/// (fresh colors 2i, 2i+1), and for odd k one final doubling (one fresh
/// color). The result is verified violation-free before returning.
fn grow_tower(base: EdgeColoring, wheel: usize, k: usize) -> Result<EdgeColoring> {
    debug_assert!(k >= 2 && base.k() == 2);
    let blowups = (k - 2) / 2;
    let mut g = base;
    for _ in 0..blowups {
        g = blowup5(&g)?;
    }
    if k % 2 == 1 {
        g = double(&g)?;
    }
    debug_assert_eq!(g.k(), k);
    if count_violations(&g, &tower_forbidden(wheel, k)) != 0 {
        return Err(Error::VerificationFailed(format!(
            "tower on {} vertices contains a forbidden pattern",
            g.n()
        )));
    }
    Ok(g)
}

/// Tower avoiding W5 in all k colors, built over a verified 14-vertex
/// 2-color base. Order: 14 * 5^((k-2)/2) for even k, 28 * 5^((k-3)/2) for
/// odd k >= 3.
pub fn w5_tower(k: usize, base: &EdgeColoring) -> Result<EdgeColoring> {
    if k < 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "tower needs k >= 2, got {k}"
        )));
    }
    check_tower_base(base, 5, 14)?;
    grow_tower(base.clone(), 5, k)
}

/// Tower over the clique-join base, with the closed-form order the
/// analogous bound formula predicts alongside the order actually reached
/// (the clique join exceeds the formula's base order by one).
#[derive(Debug, Clone)]
pub struct GrTowerWitness {
    pub coloring: EdgeColoring,
    pub achieved_order: usize,
    pub formula_order: u128,
}

/// Witness for the k-color avoidance of W_n, built by growing
/// wheel_join_witness(n). Verified violation-free.
pub fn general_gr_tower(n: usize, k: usize) -> Result<GrTowerWitness> {
    if k < 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "tower needs k >= 2, got {k}"
        )));
    }
    let base = wheel_join_witness(n)?;
    let coloring = grow_tower(base, n, k)?;
    let formula_order = crate::bounds::gr_wheel_bounds(n, k)?.lo() - 1;
    Ok(GrTowerWitness {
        achieved_order: coloring.n(),
        coloring,
        formula_order,
    })
}

/// A construction plan: which generator, its parameters, and what the output
/// must avoid. Building one runs the generator and re-checks the output
/// against the forbidden list.
#[derive(Debug, Clone)]
pub enum WitnessRecipe {
    K5Base,
    Double {
        input: EdgeColoring,
    },
    Blowup5 {
        input: EdgeColoring,
    },
    WheelJoin {
        n: usize,
    },
    W5Tower {
        k: usize,
        base: EdgeColoring,
    },
    GeneralGrTower {
        n: usize,
        k: usize,
    },
    LocalSearch {
        n: usize,
        k: usize,
        forbidden: Vec<PatternSpec>,
        budget: u64,
        seed: u64,
    },
}

impl WitnessRecipe {
    /// Closed-form order of the output.
    pub fn expected_order(&self) -> Result<usize> {
        Ok(match self {
            WitnessRecipe::K5Base => 5,
            WitnessRecipe::Double { input } => 2 * input.n(),
            WitnessRecipe::Blowup5 { input } => 5 * input.n(),
            WitnessRecipe::WheelJoin { n } => {
                if *n < 6 {
                    return Err(Error::ParameterOutOfRange(format!(
                        "wheel order {n} is below 6"
                    )));
                }
                if n % 2 == 0 {
                    3 * (n - 1)
                } else {
                    2 * (n - 1)
                }
            }
            WitnessRecipe::W5Tower { k, .. } => tower_order(14, *k)?,
            WitnessRecipe::GeneralGrTower { n, k } => {
                let base = WitnessRecipe::WheelJoin { n: *n }.expected_order()?;
                tower_order(base, *k)?
            }
            WitnessRecipe::LocalSearch { n, .. } => *n,
        })
    }

    /// What the built coloring must avoid.
    pub fn forbidden(&self) -> Vec<PatternSpec> {
        match self {
            WitnessRecipe::K5Base => vec![PatternSpec::any(Shape::Cycle(3))],
            WitnessRecipe::Double { .. } | WitnessRecipe::Blowup5 { .. } => {
                vec![PatternSpec::rainbow()]
            }
            WitnessRecipe::WheelJoin { n } => vec![
                PatternSpec::mono(Shape::Wheel(*n), 0),
                PatternSpec::mono(Shape::Wheel(*n), 1),
            ],
            WitnessRecipe::W5Tower { k, .. } => tower_forbidden(5, *k),
            WitnessRecipe::GeneralGrTower { n, k } => tower_forbidden(*n, *k),
            WitnessRecipe::LocalSearch { forbidden, .. } => forbidden.clone(),
        }
    }

    /// Runs the generator. None only for a LocalSearch that exhausts its
    /// budget. Every Some output has been checked against forbidden().
    pub fn build(&self) -> Result<Option<EdgeColoring>> {
        let out = match self {
            WitnessRecipe::K5Base => Some(k5_two_coloring()),
            WitnessRecipe::Double { input } => Some(double(input)?),
            WitnessRecipe::Blowup5 { input } => Some(blowup5(input)?),
            WitnessRecipe::WheelJoin { n } => Some(wheel_join_witness(*n)?),
            WitnessRecipe::W5Tower { k, base } => Some(w5_tower(*k, base)?),
            WitnessRecipe::GeneralGrTower { n, k } => Some(general_gr_tower(*n, *k)?.coloring),
            WitnessRecipe::LocalSearch {
                n,
                k,
                forbidden,
                budget,
                seed,
            } => local_search_witness(*n, *k, forbidden, *budget, *seed)?,
        };
        if let Some(g) = &out {
            let expected = self.expected_order()?;
            if g.n() != expected {
                return Err(Error::VerificationFailed(format!(
                    "built order {} differs from expected {expected}",
                    g.n()
                )));
            }
            let violations = count_violations(g, &self.forbidden());
            if violations != 0 {
                return Err(Error::VerificationFailed(format!(
                    "{violations} forbidden patterns present in built coloring"
                )));
            }
        }
        Ok(out)
    }
}

fn tower_order(base: usize, k: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "tower needs k >= 2, got {k}"
        )));
    }
    let mut order = base;
    for _ in 0..(k - 2) / 2 {
        order = order.checked_mul(5).ok_or(Error::Overflow("tower order"))?;
    }
    if k % 2 == 1 {
        order = order.checked_mul(2).ok_or(Error::Overflow("tower order"))?;
    }
    Ok(order)
}
