//! Batch command-line front end. Every command prints one JSON report on
//! stdout and keeps human-readable diagnostics on stderr. Exit codes:
//! 0 success, 1 a checked property is violated, 2 usage or input error,
//! 3 a search budget ran out.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use gallai_core::bounds::{self, BoundKind, BoundResult};
use gallai_core::construct::WitnessRecipe;
use gallai_core::partition::{
    find_gallai_partition, reduced_graph, verify_partition, GallaiPartition,
};
use gallai_core::{
    count_violations, ecg, enumerate_exhaustive, find_mono, has_rainbow_triangle, is_present,
    local_search_witness, EdgeColoring, Error, PatternHit, PatternSpec, Scope, SearchStatus,
    SearchTask,
};

#[derive(Parser)]
#[command(
    name = "gallai",
    about = "Edge-coloring constructions, pattern checks, partitions, bounds, and exhaustive searches",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named witness coloring and write it as an .ecg file.
    Construct {
        #[command(subcommand)]
        recipe: Recipe,
    },
    /// Check a coloring against forbidden patterns; exit 1 on any hit.
    Verify {
        /// Coloring to check (.ecg).
        file: PathBuf,
        /// Forbidden pattern, e.g. W5@0, C6@any, P4@2, rainbow-K3. Repeatable.
        #[arg(long = "forbid", value_name = "SPEC", required = true)]
        forbid: Vec<String>,
    },
    /// Find the nontrivial partition a rainbow-triangle-free coloring admits,
    /// or check a stored one with --verify.
    Partition {
        /// Coloring to partition (.ecg).
        file: PathBuf,
        /// Check this stored partition (.json) instead of searching.
        #[arg(long = "verify", value_name = "PART")]
        verify: Option<PathBuf>,
    },
    /// Collapse a partitioned coloring to its at-most-2-colored quotient.
    Reduce {
        /// Coloring (.ecg).
        file: PathBuf,
        /// Partition of its vertex set (.json).
        part: PathBuf,
    },
    /// Evaluate a closed-form value or bracket.
    Bounds {
        #[command(subcommand)]
        formula: Formula,
    },
    /// Run an exhaustive avoidance search from a task file.
    Search {
        /// Task description (.json) with order, palette, forbidden list.
        task: PathBuf,
        /// Worker threads (default: one per CPU). Never affects the result
        /// or the report, only the wall time.
        #[arg(long)]
        workers: Option<usize>,
        /// Node budget override.
        #[arg(long, value_name = "NODES")]
        budget: Option<u64>,
    },
    /// Seeded stochastic hunt for one avoiding coloring; exit 3 if the
    /// budget runs out first.
    WitnessSearch {
        /// Number of vertices.
        n: usize,
        /// Palette size.
        k: usize,
        /// Forbidden pattern (same grammar as verify). Repeatable.
        #[arg(long = "forbid", value_name = "SPEC", required = true)]
        forbid: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Recoloring steps before giving up.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum Recipe {
    /// Triangle-free 2-coloring of K5 (two edge-disjoint 5-cycles).
    K5 {
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Two copies of the input joined in one fresh color.
    Double {
        #[arg(long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Five copies of the input arranged as the triangle-free K5, cross
    /// pairs in two fresh colors.
    Blowup5 {
        #[arg(long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// 2-colored clique join with no monochromatic wheel on n vertices.
    WheelJoin {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// k-color tower over a 14-vertex base avoiding W5 in every color.
    W5Tower {
        #[arg(long)]
        k: usize,
        /// 2-colored base (.ecg); default: base-w5-14.ecg in the data
        /// directory ($GALLAI_DATA_DIR, falling back to ./data).
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// k-color tower over the clique join, avoiding the n-vertex wheel in
    /// every color.
    GrTower {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum Formula {
    /// Two-color value for a pair of cycles.
    CycleRamsey {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Two-color value or bracket for a wheel against itself.
    WheelRamsey {
        #[arg(long)]
        n: usize,
    },
    /// Exact k-color rainbow-triangle-free threshold for W5.
    GrW5 {
        #[arg(long)]
        k: usize,
    },
    /// Bracket for the n-vertex wheel, k colors.
    GrWheel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Upper bound when r colors forbid a wheel, s a cycle, t a path.
    GrMixedUpper {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Exact threshold for the odd cycle on 2l+1 vertices, k colors.
    GrOddCycle {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
    },
    /// Value or bracket for the fan on 2n+1 vertices, k colors.
    GrFan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; everything else is a
            // usage error reported on stderr.
            return if e.use_stderr() {
                eprint!("{e}");
                ExitCode::from(2)
            } else {
                print!("{e}");
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Ok(code) means a report was printed; Err is a usage/input failure.
fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Construct { recipe } => run_construct(recipe),
        Command::Verify { file, forbid } => run_verify(&file, &forbid),
        Command::Partition { file, verify } => run_partition(&file, verify.as_deref()),
        Command::Reduce { file, part } => run_reduce(&file, &part),
        Command::Bounds { formula } => run_bounds(formula),
        Command::Search {
            task,
            workers,
            budget,
        } => run_search(&task, workers, budget),
        Command::WitnessSearch {
            n,
            k,
            forbid,
            seed,
            budget,
        } => run_witness_search(n, k, &forbid, seed, budget),
    }
}

fn report(name: &str, params: Value, result: Value, code: u8) -> Result<u8, String> {
    let doc = json!({
        "command": { "name": name, "params": params },
        "exit_code": code,
        "result": result,
    });
    println!("{doc}");
    Ok(code)
}

fn data_dir() -> PathBuf {
    std::env::var_os("GALLAI_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data"))
}

fn read_coloring(path: &Path) -> Result<EdgeColoring, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    ecg::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_coloring(path: &Path, g: &EdgeColoring) -> Result<(), String> {
    std::fs::write(path, ecg::serialize(g))
        .map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn parse_specs(texts: &[String]) -> Result<Vec<PatternSpec>, String> {
    texts
        .iter()
        .map(|t| {
            t.parse::<PatternSpec>()
                .map_err(|e| format!("bad pattern {t:?}: {e}"))
        })
        .collect()
}

/// JSON number when the value fits, decimal string beyond 64 bits.
fn big(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(x) => x.into(),
        Err(_) => v.to_string().into(),
    }
}

fn hit_json(spec: &PatternSpec, hit: &PatternHit) -> Value {
    json!({
        "spec": spec.to_string(),
        "vertices": hit.vertices,
        "colors": hit.colors,
    })
}

fn run_construct(recipe: Recipe) -> Result<u8, String> {
    let (label, params, plan, output) = match recipe {
        Recipe::K5 { output } => ("k5", json!({}), WitnessRecipe::K5Base, output),
        Recipe::Double { input, output } => {
            let g = read_coloring(&input)?;
            (
                "double",
                json!({ "input": input.display().to_string() }),
                WitnessRecipe::Double { input: g },
                output,
            )
        }
        Recipe::Blowup5 { input, output } => {
            let g = read_coloring(&input)?;
            (
                "blowup5",
                json!({ "input": input.display().to_string() }),
                WitnessRecipe::Blowup5 { input: g },
                output,
            )
        }
        Recipe::WheelJoin { n, output } => (
            "wheel-join",
            json!({ "n": n }),
            WitnessRecipe::WheelJoin { n },
            output,
        ),
        Recipe::W5Tower { k, base, output } => {
            let base_path = base.unwrap_or_else(|| data_dir().join("base-w5-14.ecg"));
            let g = read_coloring(&base_path)?;
            (
                "w5-tower",
                json!({ "base": base_path.display().to_string(), "k": k }),
                WitnessRecipe::W5Tower { k, base: g },
                output,
            )
        }
        Recipe::GrTower { n, k, output } => (
            "gr-tower",
            json!({ "k": k, "n": n }),
            WitnessRecipe::GeneralGrTower { n, k },
            output,
        ),
    };
    let expected = plan.expected_order().map_err(|e| e.to_string())?;
    let g = plan
        .build()
        .map_err(|e| e.to_string())?
        .expect("only stochastic recipes can come back empty");
    if g.n() != expected {
        return Err(format!(
            "internal: recipe promised order {expected} but built {}",
            g.n()
        ));
    }
    write_coloring(&output, &g)?;
    let mut params = params;
    params["recipe"] = label.into();
    params["output"] = output.display().to_string().into();
    report(
        "construct",
        params,
        json!({
            "colors": g.k(),
            "order": g.n(),
            "output": output.display().to_string(),
        }),
        0,
    )
}

fn run_verify(file: &Path, forbid: &[String]) -> Result<u8, String> {
    let g = read_coloring(file)?;
    let specs = parse_specs(forbid)?;
    let mut hits = Vec::new();
    for spec in &specs {
        if !is_present(&g, spec) {
            continue;
        }
        let hit = match spec.scope {
            Scope::RainbowTriangle => has_rainbow_triangle(&g),
            _ => find_mono(&g, spec).map_err(|e| e.to_string())?,
        }
        .ok_or_else(|| format!("internal: {spec} reported present without a witness"))?;
        gallai_core::validate_hit(&g, spec, &hit).map_err(|e| e.to_string())?;
        hits.push(hit_json(spec, &hit));
    }
    let violations = count_violations(&g, &specs);
    if violations != hits.len() {
        return Err("internal: violation count disagrees with collected hits".into());
    }
    let code = u8::from(violations > 0);
    report(
        "verify",
        json!({
            "file": file.display().to_string(),
            "forbid": forbid,
        }),
        json!({
            "colors": g.k(),
            "hits": hits,
            "order": g.n(),
            "violations": violations,
        }),
        code,
    )
}

fn partition_json(p: &GallaiPartition) -> Value {
    serde_json::from_str(&p.to_json()).expect("partition serialization is valid JSON")
}

fn run_partition(file: &Path, verify: Option<&Path>) -> Result<u8, String> {
    let g = read_coloring(file)?;
    let params = |v: Option<&Path>| {
        json!({
            "file": file.display().to_string(),
            "verify": v.map(|p| p.display().to_string()),
        })
    };
    if let Some(part_path) = verify {
        let text = std::fs::read_to_string(part_path)
            .map_err(|e| format!("cannot read {}: {e}", part_path.display()))?;
        let p = GallaiPartition::from_json(&text)
            .map_err(|e| format!("{}: {e}", part_path.display()))?;
        let validity = verify_partition(&g, &p).map_err(|e| e.to_string())?;
        let valid = validity == gallai_core::PartitionValidity::Valid;
        return report(
            "partition",
            params(verify),
            json!({
                "validity": serde_json::to_value(&validity).expect("serializable"),
            }),
            u8::from(!valid),
        );
    }
    match find_gallai_partition(&g) {
        Ok(p) => report(
            "partition",
            params(None),
            json!({
                "partition": partition_json(&p),
                "q": p.q(),
            }),
            0,
        ),
        Err(Error::NotGallai(tri)) => report(
            "partition",
            params(None),
            json!({ "rainbow_triangle": tri }),
            1,
        ),
        Err(e) => Err(e.to_string()),
    }
}

fn run_reduce(file: &Path, part: &Path) -> Result<u8, String> {
    let g = read_coloring(file)?;
    let text = std::fs::read_to_string(part)
        .map_err(|e| format!("cannot read {}: {e}", part.display()))?;
    let p = GallaiPartition::from_json(&text).map_err(|e| format!("{}: {e}", part.display()))?;
    let params = json!({
        "file": file.display().to_string(),
        "part": part.display().to_string(),
    });
    let validity = verify_partition(&g, &p).map_err(|e| e.to_string())?;
    if validity != gallai_core::PartitionValidity::Valid {
        return report(
            "reduce",
            params,
            json!({
                "validity": serde_json::to_value(&validity).expect("serializable"),
            }),
            1,
        );
    }
    let r = reduced_graph(&g, &p).map_err(|e| e.to_string())?;
    report(
        "reduce",
        params,
        json!({
            "color_map": r.color_map,
            "colors": r.coloring.k(),
            "ecg": ecg::serialize(&r.coloring),
            "order": r.coloring.n(),
        }),
        0,
    )
}

fn bound_json(b: &BoundResult) -> Value {
    let mut doc = match b.kind {
        BoundKind::Exact(v) => json!({ "kind": "exact", "value": big(v) }),
        BoundKind::Interval { lo, hi } => {
            json!({ "kind": "interval", "lo": big(lo), "hi": big(hi) })
        }
    };
    doc["formula"] = b.formula_id.clone().into();
    doc["notes"] = b.notes.clone().into();
    doc
}

fn run_bounds(formula: Formula) -> Result<u8, String> {
    let (params, outcome) = match formula {
        Formula::CycleRamsey { m, n } => (json!({ "m": m, "n": n }), bounds::ramsey_cycle(m, n)),
        Formula::WheelRamsey { n } => (json!({ "n": n }), bounds::ramsey_wheel(n)),
        Formula::GrW5 { k } => (json!({ "k": k }), bounds::gr_w5(k)),
        Formula::GrWheel { n, k } => (json!({ "k": k, "n": n }), bounds::gr_wheel_bounds(n, k)),
        Formula::GrMixedUpper { n, r, s, t } => (
            json!({ "n": n, "r": r, "s": s, "t": t }),
            bounds::gr_mixed_upper(n, r, s, t),
        ),
        Formula::GrOddCycle { l, k } => (json!({ "k": k, "l": l }), bounds::gr_odd_cycle(l, k)),
        Formula::GrFan { n, k } => (json!({ "k": k, "n": n }), bounds::gr_fan(n, k)),
    };
    let b = outcome.map_err(|e| e.to_string())?;
    report("bounds", params, bound_json(&b), 0)
}

fn status_code(status: SearchStatus) -> u8 {
    match status {
        SearchStatus::Exhausted | SearchStatus::WitnessFound => 0,
        SearchStatus::BudgetExceeded => 3,
    }
}

fn run_search(task_path: &Path, workers: Option<usize>, budget: Option<u64>) -> Result<u8, String> {
    let text = std::fs::read_to_string(task_path)
        .map_err(|e| format!("cannot read {}: {e}", task_path.display()))?;
    let mut task: SearchTask = serde_json::from_str(&text)
        .map_err(|e| format!("{}: bad task: {e}", task_path.display()))?;
    if let Some(nodes) = budget {
        task.limits.nodes = Some(nodes);
    }
    let outcome = match workers {
        None => enumerate_exhaustive(&task),
        Some(w) => {
            if w == 0 {
                return Err("--workers must be at least 1".into());
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| format!("cannot start {w} workers: {e}"))?;
            pool.install(|| enumerate_exhaustive(&task))
        }
    }
    .map_err(|e| e.to_string())?;
    // The echo excludes --workers: it is an execution knob with no effect on
    // the outcome, and reports are meant to be comparable byte for byte.
    report(
        "search",
        json!({
            "budget": budget,
            "task": task_path.display().to_string(),
        }),
        json!({
            "status": serde_json::to_value(outcome.status).expect("serializable"),
            "stats": serde_json::to_value(outcome.stats).expect("serializable"),
            "witness": outcome.witness.as_ref().map(ecg::serialize),
        }),
        status_code(outcome.status),
    )
}

fn run_witness_search(
    n: usize,
    k: usize,
    forbid: &[String],
    seed: u64,
    budget: u64,
) -> Result<u8, String> {
    let specs = parse_specs(forbid)?;
    let found = local_search_witness(n, k, &specs, budget, seed).map_err(|e| e.to_string())?;
    let params = json!({
        "budget": budget,
        "forbid": forbid,
        "k": k,
        "n": n,
        "seed": seed,
    });
    match found {
        Some(g) => {
            if count_violations(&g, &specs) != 0 {
                return Err("internal: produced coloring fails its own check".into());
            }
            report(
                "witness-search",
                params,
                json!({
                    "found": true,
                    "witness": ecg::serialize(&g),
                }),
                0,
            )
        }
        None => report("witness-search", params, json!({ "found": false }), 3),
    }
}
