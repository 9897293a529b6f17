//! Argument definitions, validation, and dispatch to the library.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use congruent_core::bounds::{Frac, Theta};
use congruent_core::curve::{eta, Twist};
use congruent_core::descent::{count_n, enumerate_quadruples, SplitTable};
use congruent_core::error::Error as CoreError;
use congruent_core::experiments::{
    congruent_proportion, eta_table, theorem_arithmetic, tunnell_classify, verify_lemma_e,
    verify_lemma_t,
};
use congruent_core::experiments::eta_table::eta_table_csv;
use congruent_core::sieve::report::fmt_real;
use congruent_core::sieve::{
    count_t, enumerate_t, mertens_window_sum, mobius_segment, squarefree_progression_count,
    SieveConfig,
};

use crate::cache::Cache;
use crate::output::{render, write_out, Format, Meta};

#[derive(Parser)]
#[command(
    name = "congruent",
    version,
    about = "Sieves, 2-descent point search, canonical heights and density \
             reports for the twists dy² = x³ − x"
)]
pub struct Cli {
    /// Worker threads for parallel sections (≥ 1; default: all cores)
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Output path (stdout when omitted); written atomically
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Cache directory (overrides the CONGRUENT_CACHE_DIR environment variable)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Möbius values μ(n) over a segment
    Sieve {
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
    },
    /// Enumerate (or count) the special set T_θ(X)
    Tset {
        #[arg(long)]
        theta: String,
        /// X
        #[arg(long)]
        limit: u64,
        /// print only the count
        #[arg(long)]
        count_only: bool,
    },
    /// Squarefree count in an arithmetic progression
    Sqfree {
        #[arg(long)]
        limit: u64,
        #[arg(long, default_value_t = 5)]
        residue: u64,
        #[arg(long, default_value_t = 8)]
        modulus: u64,
    },
    /// Prime-reciprocal window sum over (X^{1−θ}, X]
    Mertens {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        limit: u64,
    },
    /// T-set density table against its main term
    LemmaT {
        #[arg(long)]
        theta: String,
        /// comma-separated ascending X values
        #[arg(long)]
        grid: String,
    },
    /// Exact N_{α,θ}(X) along a grid, with exponent-bound ratios
    LemmaE {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        grid: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Exact N_{α,θ}(X) at one X
    CountN {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        limit: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Stream descent quadruples up to a height bound
    Descent {
        #[arg(long)]
        bound: u64,
        /// restrict to one twist
        #[arg(long)]
        d: Option<u64>,
    },
    /// Lowest-point search on one twist
    Eta {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// η_d across all squarefree d up to a limit
    EtaTable {
        #[arg(long)]
        dmax: u64,
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Lattice-count classification of one twist
    Tunnell {
        #[arg(long)]
        d: u64,
    },
    /// Fraction of squarefree d ≡ 5 (mod 8) passing the counting condition
    Proportion {
        #[arg(long)]
        limit: u64,
    },
    /// Threshold arithmetic for a parameter pair (θ, α)
    TheoremCheck {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        alpha: String,
    },
}

pub enum RunError {
    Validation(String),
    Budget(String),
}

impl From<CoreError> for RunError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SegmentTooLarge { .. } | CoreError::DepthExceeded => {
                RunError::Budget(e.to_string())
            }
            other => RunError::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Validation(format!("i/o failure: {e}"))
    }
}

fn parse_theta(s: &str) -> Result<Theta, RunError> {
    Theta::parse_decimal(s).map_err(RunError::from)
}

fn parse_alpha(s: &str) -> Result<Frac, RunError> {
    let f = Frac::parse_decimal(s).map_err(RunError::from)?;
    if f.num() == 0 {
        return Err(RunError::Validation("α must be positive".into()));
    }
    Ok(f)
}

fn parse_grid(s: &str) -> Result<Vec<u64>, RunError> {
    let grid: Result<Vec<u64>, _> = s.split(',').map(|v| v.trim().parse::<u64>()).collect();
    let grid = grid.map_err(|e| RunError::Validation(format!("bad grid: {e}")))?;
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(RunError::Validation("grid must be non-empty and ascending".into()));
    }
    Ok(grid)
}

pub fn run(cli: Cli) -> Result<(), RunError> {
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(RunError::Validation("--workers must be ≥ 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| RunError::Validation(format!("thread pool: {e}")))?;
    }
    let cache = Cache::from_config(cli.cache_dir.clone());
    let format = cli.format;
    let out = cli.out.as_deref();

    match cli.cmd {
        Cmd::Sieve { lo, hi } => {
            let mut meta = Meta::new("sieve", &[("lo", lo.to_string()), ("hi", hi.to_string())]);
            let seg = match cache.as_ref().and_then(|c| c.load_segment(lo, hi)) {
                Some(seg) => {
                    meta.push("cache", "hit".into());
                    seg
                }
                None => {
                    let seg = mobius_segment(lo, hi, &SieveConfig::default())?;
                    if let Some(c) = &cache {
                        c.store_segment(&seg);
                    }
                    seg
                }
            };
            let body = match format {
                Format::Csv => {
                    let mut s = String::from("n,mu\n");
                    for (i, &mu) in seg.values.iter().enumerate() {
                        s.push_str(&format!("{},{}\n", seg.lo + i as u64, mu));
                    }
                    s
                }
                Format::Json => {
                    let mut s = String::new();
                    for (i, &mu) in seg.values.iter().enumerate() {
                        s.push_str(&format!("{{\"n\":{},\"mu\":{}}}\n", seg.lo + i as u64, mu));
                    }
                    s
                }
            };
            write_out(out, &render(&meta, format, &body))?;
        }

        Cmd::Tset { theta, limit, count_only } => {
            let th = parse_theta(&theta)?;
            if count_only {
                let n = count_t(th, limit);
                write_out(out, &format!("{n}\n"))?;
            } else {
                let meta = Meta::new(
                    "tset",
                    &[("theta", theta.clone()), ("limit", limit.to_string())],
                );
                let records = enumerate_t(th, limit);
                let body = match format {
                    Format::Csv => {
                        let mut s = String::from("n,m,p\n");
                        for r in &records {
                            s.push_str(&format!("{},{},{}\n", r.n, r.m, r.p));
                        }
                        s
                    }
                    Format::Json => {
                        let mut s = String::new();
                        for r in &records {
                            s.push_str(&serde_json::to_string(r).unwrap());
                            s.push('\n');
                        }
                        s
                    }
                };
                write_out(out, &render(&meta, format, &body))?;
            }
        }

        Cmd::Sqfree { limit, residue, modulus } => {
            if modulus == 0 {
                return Err(RunError::Validation("modulus must be ≥ 1".into()));
            }
            let meta = Meta::new(
                "sqfree",
                &[
                    ("limit", limit.to_string()),
                    ("residue", residue.to_string()),
                    ("modulus", modulus.to_string()),
                ],
            );
            let count = squarefree_progression_count(limit, residue, modulus);
            let body = match format {
                Format::Csv => format!("count\n{count}\n"),
                Format::Json => format!("{{\"count\":{count}}}\n"),
            };
            write_out(out, &render(&meta, format, &body))?;
        }

        Cmd::Mertens { theta, limit } => {
            let th = parse_theta(&theta)?;
            if limit < 3 {
                return Err(RunError::Validation("mertens window requires X ≥ 3".into()));
            }
            let meta = Meta::new(
                "mertens",
                &[("theta", theta.clone()), ("limit", limit.to_string())],
            );
            let sum = mertens_window_sum(limit, th);
            let target = congruent_core::hiprec::neg_log_one_minus(th.frac()).to_f64();
            let body = match format {
                Format::Csv => format!(
                    "sum,target,abs_error\n{},{},{}\n",
                    fmt_real(sum),
                    fmt_real(target),
                    fmt_real((sum - target).abs())
                ),
                Format::Json => format!(
                    "{{\"sum\":{sum},\"target\":{target},\"abs_error\":{}}}\n",
                    (sum - target).abs()
                ),
            };
            write_out(out, &render(&meta, format, &body))?;
        }

        Cmd::LemmaT { theta, grid } => {
            let th = parse_theta(&theta)?;
            let grid = parse_grid(&grid)?;
            let report = verify_lemma_t(th, &grid)?;
            let mut meta = Meta::new(
                "lemma-t",
                &[("theta", theta.clone()), ("grid", format!("{grid:?}"))],
            );
            meta.push(
                "density_constant",
                fmt_real(congruent_core::hiprec::density_constant(th.frac()).to_f64()),
            );
            meta.push("fitted_c", format!("{:?}", report.fitted_c));
            meta.push("c_stability", fmt_real(report.c_stability));
            let body = match format {
                Format::Csv => report.report.to_csv(),
                Format::Json => report.report.to_json_lines(),
            };
            write_out(out, &render(&meta, format, &body))?;
        }

        Cmd::LemmaE { alpha, theta, grid, tol } => {
            let a = parse_alpha(&alpha)?;
            let th = parse_theta(&theta)?;
            let grid = parse_grid(&grid)?;
            let report = verify_lemma_e(a, th, &grid, tol)?;
            let meta = Meta::new(
                "lemma-e",
                &[
                    ("alpha", alpha.clone()),
                    ("theta", theta.clone()),
                    ("grid", format!("{grid:?}")),
                    ("tol", format!("{tol:e}")),
                ],
            );
            let body = match format {
                Format::Csv => {
                    let mut s = String::from("X,count,ratio,ratio_eps\n");
                    for r in &report.rows {
                        s.push_str(&format!(
                            "{},{},{},{}\n",
                            r.x,
                            r.count,
                            fmt_real(r.ratio),
                            fmt_real(r.ratio_eps)
                        ));
                    }
                    s
                }
                Format::Json => {
                    let mut s = String::new();
                    for r in &report.rows {
                        s.push_str(&serde_json::to_string(r).unwrap());
                        s.push('\n');
                    }
                    s
                }
            };
            write_out(out, &render(&meta, format, &body))?;
        }

        Cmd::CountN { alpha, theta, limit, tol } => {
            let a = parse_alpha(&alpha)?;
            let th = parse_theta(&theta)?;
            let result = count_n(a, th, limit, tol)?;
            let meta = Meta::new(
                "count-n",
                &[
                    ("alpha", alpha.clone()),
                    ("theta", theta.clone()),
                    ("limit", limit.to_string()),
                    ("tol", format!("{tol:e}")),
                ],
            );
            let body = match format {
                Format::Csv => {
                    let mut s = format!("# count: {}\nd,eta_log\n", result.count);
                    for c in &result.contributing {
                        s.push_str(&format!("{},{}\n", c.d, fmt_real(c.eta_log)));
                    }
                    s
                }
                Format::Json => format!("{}\n", serde_json::to_string(&result).unwrap()),
            };
            write_out(out, &render(&meta, format, &body))?;
        }

        Cmd::Descent { bound, d } => {
            if bound < 2 {
                return Err(RunError::Validation("bound must be ≥ 2".into()));
            }
            if let Some(d) = d {
                Twist::new(d)?;
            }
            let meta = Meta::new(
                "descent",
                &[
                    ("bound", bound.to_string()),
                    ("d", d.map(|v| v.to_string()).unwrap_or_else(|| "all".into())),
                ],
            );
            let table = SplitTable::new(2 * bound);
            let mut body = match format {
                Format::Csv => String::from("nu,d1,d2,d3,d4,b1,b2,b3,b4,d,x_num,x_den\n"),
                Format::Json => String::new(),
            };
            enumerate_quadruples(bound, d, &table, |q| {
                let x_num = q.nu as i64 * q.n2() as i64;
                match format {
                    Format::Csv => body.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                        q.nu,
                        q.d[0],
                        q.d[1],
                        q.d[2],
                        q.d[3],
                        q.b[0],
                        q.b[1],
                        q.b[2],
                        q.b[3],
                        q.twist_d(),
                        x_num,
                        q.n1()
                    )),
                    Format::Json => {
                        body.push_str(&format!(
                            "{{\"nu\":{},\"d\":[{},{},{},{}],\"b\":[{},{},{},{}],\"twist\":{},\"x\":\"{}/{}\"}}\n",
                            q.nu,
                            q.d[0],
                            q.d[1],
                            q.d[2],
                            q.d[3],
                            q.b[0],
                            q.b[1],
                            q.b[2],
                            q.b[3],
                            q.twist_d(),
                            x_num,
                            q.n1()
                        ));
                    }
                }
            });
            write_out(out, &render(&meta, format, &body))?;
        }

        Cmd::Eta { d, bound, tol } => {
            let tw = Twist::new(d)?;
            let mut meta = Meta::new(
                "eta",
                &[
                    ("d", d.to_string()),
                    ("bound", bound.to_string()),
                    ("tol", format!("{tol:e}")),
                ],
            );
            let result = match cache.as_ref().and_then(|c| c.load_eta(d, bound, tol)) {
                Some(r) => {
                    meta.push("cache", "hit".into());
                    r
                }
                None => {
                    let r = eta(&tw, bound, tol)?;
                    if let Some(c) = &cache {
                        c.store_eta(bound, tol, &r);
                    }
                    r
                }
            };
            let body = match format {
                Format::Csv => {
                    let j = result.to_json();
                    format!(
                        "d,status,witness_x,witness_y,eta_log,search_bound_log\n{},{},{},{},{},{}\n",
                        d,
                        j["status"].as_str().unwrap(),
                        j["witness_x"].as_str().unwrap_or(""),
                        j["witness_y"].as_str().unwrap_or(""),
                        j["eta_log"].as_f64().map(fmt_real).unwrap_or_default(),
                        fmt_real(j["search_bound_log"].as_f64().unwrap()),
                    )
                }
                Format::Json => format!("{}\n", result.to_json()),
            };
            write_out(out, &render(&meta, format, &body))?;
        }

        Cmd::EtaTable { dmax, bound, tol } => {
            let rows = eta_table(dmax, bound, tol)?;
            let meta = Meta::new(
                "eta-table",
                &[
                    ("dmax", dmax.to_string()),
                    ("bound", bound.to_string()),
                    ("tol", format!("{tol:e}")),
                ],
            );
            let body = match format {
                Format::Csv => eta_table_csv(&rows),
                Format::Json => {
                    let mut s = String::new();
                    for r in &rows {
                        s.push_str(&serde_json::to_string(r).unwrap());
                        s.push('\n');
                    }
                    s
                }
            };
            write_out(out, &render(&meta, format, &body))?;
        }

        Cmd::Tunnell { d } => {
            let v = tunnell_classify(d)?;
            let meta = Meta::new("tunnell", &[("d", d.to_string())]);
            let body = match format {
                Format::Csv => format!(
                    "d,tunnell_lhs,tunnell_rhs_half,verdict\n{},{},{},{}\n",
                    v.d, v.tunnell_lhs, v.tunnell_rhs_half, v.verdict
                ),
                Format::Json => format!("{}\n", serde_json::to_string(&v).unwrap()),
            };
            write_out(out, &render(&meta, format, &body))?;
        }

        Cmd::Proportion { limit } => {
            let meta = Meta::new("proportion", &[("limit", limit.to_string())]);
            let body = match congruent_proportion(limit) {
                Some(r) => match format {
                    Format::Csv => format!(
                        "X,total,congruent,proportion\n{},{},{},{}\n",
                        r.x,
                        r.total,
                        r.congruent,
                        fmt_real(r.proportion)
                    ),
                    Format::Json => format!("{}\n", serde_json::to_string(&r).unwrap()),
                },
                None => match format {
                    Format::Csv => "X,total,congruent,proportion\n# no data\n".to_string(),
                    Format::Json => format!("{{\"x\":{limit},\"no_data\":true}}\n"),
                },
            };
            write_out(out, &render(&meta, format, &body))?;
        }

        Cmd::TheoremCheck { theta, alpha } => {
            let th = parse_theta(&theta)?;
            let a = parse_alpha(&alpha)?;
            let t = theorem_arithmetic(th, a);
            let meta = Meta::new(
                "theorem-check",
                &[("theta", theta.clone()), ("alpha", alpha.clone())],
            );
            let body = match format {
                Format::Csv => format!(
                    "theta,alpha,exponent,constraint_value,proportion_sum,exponent_is_0845,constraint_below_7_8,proportion_exceeds_one\n{},{},{},{},{},{},{},{}\n",
                    t.theta,
                    t.alpha,
                    fmt_real(t.exponent),
                    fmt_real(t.constraint_value),
                    t.proportion_sum_digits,
                    t.exponent_is_0845,
                    t.constraint_below_7_8,
                    t.proportion_exceeds_one
                ),
                Format::Json => format!("{}\n", serde_json::to_string(&t).unwrap()),
            };
            write_out(out, &render(&meta, format, &body))?;
        }
    }
    Ok(())
}
