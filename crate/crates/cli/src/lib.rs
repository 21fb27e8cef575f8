//! Command layer of `grid-domino-lab`. Every command yields one JSON value whose
//! object keys serialise in sorted order; timing and worker counts stay off it.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gdl_core::cache::cached_states;
use gdl_core::counting::{count_range_in, growth_bounds_with, require_countable, GrowthBracket};
use gdl_core::loss::LossEngine;
use gdl_core::oracle::{brute_count, brute_min_cost};
use gdl_core::problem::{get_problem, Mode, ProblemSpec};
use gdl_core::rauzy::{build_rauzy, growth_sweep, DEFAULT_PAD, DEFAULT_WORD_BUDGET};
use gdl_core::reference::{reference_formula, tabulated};
use gdl_core::solver::{recurrence_of_system, synthesize_formula, system_from_states, TransferSystem};
use gdl_core::{Error, Result};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "grid-domino-lab", version, about = "Domination-type numbers of grid graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long, global = true, env = "GDL_THREADS")]
    pub threads: Option<usize>,
    /// Directory for cached column-state sets.
    #[arg(long, global = true, value_name = "DIR")]
    pub state_cache: Option<PathBuf>,
    /// Accepted for compatibility; output is always JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct Grid {
    #[arg(long)]
    pub problem: String,
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'm')]
    pub m: usize,
}

#[derive(Debug, Args)]
pub struct Height {
    #[arg(long)]
    pub problem: String,
    #[arg(short = 'n')]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum cost on the n × m grid.
    Solve(Grid),
    /// Closed formula in m for a fixed height n.
    Formula(Height),
    /// Ultimate periodicity of the values at height n.
    Recurrence(Height),
    /// Loss-method lower bound with a band of height H.
    LossBound {
        #[command(flatten)]
        grid: Grid,
        #[arg(long)]
        height: usize,
        /// Reduce exponents by the band recurrence instead of multiplying out.
        #[arg(long)]
        extended: bool,
    },
    /// Exact number of sets on the n × m grid.
    Count(Grid),
    /// Growth-rate bracket from the transfer graphs at height n.
    Growth(Height),
    /// Growth rate of the column language from Rauzy graphs.
    Rauzy {
        #[arg(long)]
        problem: String,
        /// Single order; without it, orders are swept until the rate stabilises.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 12)]
        max_order: usize,
    },
    /// Compare the solver against the tabulated closed formulas.
    Verify {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_m: usize,
    },
    /// Exhaustive search on a small grid.
    Oracle(Grid),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve(_) => "solve",
            Command::Formula(_) => "formula",
            Command::Recurrence(_) => "recurrence",
            Command::LossBound { .. } => "loss-bound",
            Command::Count(_) => "count",
            Command::Growth(_) => "growth",
            Command::Rauzy { .. } => "rauzy",
            Command::Verify { .. } => "verify",
            Command::Oracle(_) => "oracle",
        }
    }
}

/// Fixed-precision form for reported reals.
pub fn sig9(x: f64) -> Value {
    json!(format!("{x:.8e}").parse::<f64>().expect("formatted float"))
}

fn bracket_json(b: &GrowthBracket) -> Value {
    json!({
        "problem": b.problem,
        "height": b.height,
        "lower": sig9(b.lower),
        "upper": sig9(b.upper),
        "ratio": sig9(b.ratio),
        "radius": sig9(b.radius),
        "next_radius": sig9(b.next_radius),
        "certified": b.certified,
    })
}

fn value_json(v: Option<u32>) -> Value {
    match v {
        Some(v) => json!({"status": "ok", "value": v}),
        None => json!({"status": "infeasible"}),
    }
}

struct Ctx {
    cache: Option<PathBuf>,
}

impl Ctx {
    fn system(&self, spec: &ProblemSpec, h: usize, mode: Mode, pruned: bool) -> Result<TransferSystem> {
        Ok(system_from_states(spec, cached_states(self.cache.as_deref(), spec, h, mode, pruned)?))
    }

    fn gamma(&self, spec: &ProblemSpec, n: usize, m: usize) -> Result<Option<u32>> {
        Ok(self.gamma_range(spec, n, m)?[m - 1])
    }

    fn gamma_range(&self, spec: &ProblemSpec, n: usize, m_max: usize) -> Result<Vec<Option<u32>>> {
        if n == 0 || m_max == 0 {
            return Err(Error::InvalidArgument("grid sides must be positive".into()));
        }
        Ok(self.system(spec, n, Mode::Interior, true)?.gamma_range(m_max))
    }
}

/// Runs one command; capacity limits come back in the payload, other errors as `Err`.
pub fn execute(cli: &Cli) -> Result<Value> {
    let ctx = Ctx { cache: cli.state_cache.clone() };
    let out = match &cli.command {
        Command::Solve(g) => {
            let spec = get_problem(&g.problem)?;
            let mut v = value_json(ctx.gamma(&spec, g.n, g.m)?);
            v["parameters"] = json!({"problem": g.problem, "n": g.n, "m": g.m});
            v
        }
        Command::Formula(h) | Command::Recurrence(h) => {
            let spec = get_problem(&h.problem)?;
            let sys = ctx.system(&spec, h.n, Mode::Interior, true)?;
            let (rec, values) = recurrence_of_system(&sys, gdl_core::solver::DEFAULT_MAX_COLUMNS)?;
            let mut v = json!({
                "status": "ok",
                "parameters": {"problem": h.problem, "n": h.n},
                "recurrence": rec,
            });
            if let Command::Formula(_) = cli.command {
                v["formula"] = json!(synthesize_formula(&rec, &values)?);
            }
            v
        }
        Command::LossBound { grid, height, extended } => {
            let spec = get_problem(&grid.problem)?;
            let mut engine = LossEngine::new(&spec, *height)?;
            let r = if *extended {
                engine.extended_lower_bound(grid.n, grid.m)?
            } else {
                engine.lower_bound(grid.n, grid.m)?
            };
            json!({
                "status": "ok",
                "parameters": {"problem": grid.problem, "n": grid.n, "m": grid.m, "height": height, "extended": extended},
                "loss": r.loss,
                "lower_bound": r.lower_bound,
                "band_states": engine.band().states.len(),
            })
        }
        Command::Count(g) => {
            let spec = get_problem(&g.problem)?;
            require_countable(&spec)?;
            if g.n == 0 || g.m == 0 {
                return Err(Error::InvalidArgument("grid sides must be positive".into()));
            }
            let sys = ctx.system(&spec, g.n, Mode::Interior, false)?;
            let count = count_range_in(&sys, g.m).pop().expect("m ≥ 1");
            json!({
                "status": "ok",
                "parameters": {"problem": g.problem, "n": g.n, "m": g.m},
                "count": count.to_string(),
            })
        }
        Command::Growth(h) => {
            let spec = get_problem(&h.problem)?;
            let states = |height, mode| cached_states(ctx.cache.as_deref(), &spec, height, mode, false);
            let b = growth_bounds_with(&spec, h.n, &states)?;
            json!({"status": "ok", "parameters": {"problem": h.problem, "n": h.n}, "bracket": bracket_json(&b)})
        }
        Command::Rauzy { problem, order, max_order } => {
            let spec = get_problem(problem)?;
            match order {
                Some(i) => {
                    let g = build_rauzy(&spec, *i, DEFAULT_PAD)?;
                    json!({
                        "status": "ok",
                        "parameters": {"problem": problem, "order": i},
                        "vertices": g.vertices.len(),
                        "edges": g.edges.len(),
                        "rate": sig9(g.radius()?),
                    })
                }
                None => {
                    let s = growth_sweep(&spec, *max_order, DEFAULT_WORD_BUDGET)?;
                    json!({
                        "status": "ok",
                        "parameters": {"problem": problem, "max_order": max_order},
                        "rates": s.rates.iter().map(|&x| sig9(x)).collect::<Vec<_>>(),
                        "stable_order": s.stable_order,
                        "truncated": s.truncated,
                    })
                }
            }
        }
        Command::Verify { problem, max_n, max_m } => {
            let spec = get_problem(problem)?;
            let mut checked = 0usize;
            let mut skipped = Vec::new();
            let mut mismatches = Vec::new();
            for n in 1..=*max_n {
                if !tabulated(problem, n) || n > *max_m {
                    skipped.push(n);
                    continue;
                }
                let values = ctx.gamma_range(&spec, n, *max_m)?;
                for m in n..=*max_m {
                    let expected = reference_formula(problem, n, m)?;
                    checked += 1;
                    if values[m - 1] != expected {
                        mismatches.push(json!({"n": n, "m": m, "solver": values[m - 1], "formula": expected}));
                    }
                }
            }
            json!({
                "status": "ok",
                "parameters": {"problem": problem, "max_n": max_n, "max_m": max_m},
                "checked": checked,
                "skipped_heights": skipped,
                "mismatches": mismatches.len(),
                "mismatch_list": mismatches,
            })
        }
        Command::Oracle(g) => {
            let spec = get_problem(&g.problem)?;
            let mut v = value_json(brute_min_cost(&spec, g.n, g.m)?);
            v["count"] = match brute_count(&spec, g.n, g.m) {
                Ok(c) => json!(c.to_string()),
                Err(Error::TooLarge) => Value::Null,
                Err(e) => return Err(e),
            };
            v["parameters"] = json!({"problem": g.problem, "n": g.n, "m": g.m});
            v
        }
    };
    Ok(out)
}

/// Outcome of one invocation: stdout document, stderr report, exit code.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Outcome {
    let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build() {
        Ok(p) => p,
        Err(e) => return Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: 1 },
    };
    let started = Instant::now();
    let result = pool.install(|| execute(cli));
    let report = json!({
        "command": cli.command.name(),
        "threads": threads,
        "elapsed_seconds": started.elapsed().as_secs_f64(),
    });
    let payload = match result {
        Ok(mut v) => {
            v["command"] = json!(cli.command.name());
            v
        }
        Err(e @ (Error::CapacityExceeded { .. } | Error::BudgetExceeded { .. } | Error::TooLarge)) => json!({
            "command": cli.command.name(),
            "status": "capacity_exceeded",
            "error": e.to_string(),
        }),
        Err(e) => {
            let code = if matches!(e, Error::UnknownProblem(_)) { 2 } else { 1 };
            return Outcome { stdout: String::new(), stderr: format!("error: {e}\n{report}\n"), code };
        }
    };
    Outcome { stdout: format!("{payload}\n"), stderr: format!("{report}\n"), code: 0 }
}
