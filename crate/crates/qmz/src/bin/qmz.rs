//! Command-line front end: exact q-expansions of multiple divisor functions,
//! quasi-shuffle products, the derivation `q d/dq`, rewriting in terms of the
//! convergent subalgebra, regularization matrices, numeric zeta values, and
//! mined Q-linear relations.
//!
//! Exit codes: 0 success, 1 domain error (a well-formed request the library
//! rejects, e.g. a divergent zeta value), 2 usage error (bad flags, malformed
//! index literals, level conflicts, bad `QMZ_PRECISION`).

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_integer::Integer;
use num_traits::One;
use qmz::index::{bar_notation, parse_full_index, render_index};
use qmz::numeric::{precision_from_env, zeta_numeric};
use qmz::qseries::{mdf_divisor_sum, mdf_eulerian, mdf_polylog, MdfIndex};
use qmz::rational::Rational;
use qmz::reduce::{reduce_word, reg_matrix, reg_matrix_det};
use qmz::relations::{emit_relations, verify_relation, RelationRecord};
use qmz::words::{stuffle_words, FormalSum, Word};
use qmz::{linalg, omega};
use std::io::Read;

#[derive(Parser)]
#[command(
    name = "qmz",
    version,
    about = "Exact multiple divisor functions at level N and relations among multiple zeta values"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// q-expansion of one function [s1,..,sd;a1,..,ad]@N.
    Coeffs {
        /// Index literal, e.g. "[2,1;0,1]@2".
        #[arg(long)]
        index: String,
        /// Level N (alternative to the "@N" suffix).
        #[arg(long)]
        level: Option<u32>,
        /// Truncation order (highest power of q).
        #[arg(long, default_value_t = 8)]
        order: usize,
        /// Construction route: divisor-sum, polylog, or eulerian.
        #[arg(long, default_value = "divisor-sum")]
        route: String,
    },
    /// Quasi-shuffle product of two functions, self-checked as a q-series
    /// identity before printing.
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        level: Option<u32>,
        /// Truncation order for the self-check.
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Image of a function under q d/dq, written inside the algebra.
    Derive {
        #[arg(long)]
        index: String,
        #[arg(long)]
        level: Option<u32>,
        /// Also print the q-expansion of the image to this order.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Rewrite a function as a polynomial in t over the convergent
    /// subalgebra and the g_beta generators.
    Reduce {
        #[arg(long)]
        index: String,
        #[arg(long)]
        level: Option<u32>,
    },
    /// The mixing matrix M(N, m), its determinant, and its exact inverse.
    Regmatrix {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        m: u32,
    },
    /// Mine Q-linear relations among zeta values of one weight, certified
    /// numerically.
    Relations {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 3)]
        depth_max: usize,
        /// Summation cutoff for the numeric certificates.
        #[arg(long, default_value_t = 100_000)]
        cutoff: u64,
    },
    /// Numeric value of a convergent zeta value at level N.
    Zeta {
        #[arg(long)]
        index: String,
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, default_value_t = 1_000_000)]
        cutoff: u64,
    },
    /// The expansion coefficients omega_{n;alpha} of 1/(eta^alpha e^x - 1).
    Omega {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        alpha: u32,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
    },
    /// Re-verify relation records (JSON from a file or stdin) numerically.
    Verify {
        /// Path to a relation record or array of records; "-" or absent
        /// reads stdin.
        #[arg(long)]
        file: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        cutoff: u64,
        /// Largest acceptable residual.
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
}

/// An error tagged with the process exit code it should produce.
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn domain(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into() }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match precision_from_env() {
        Ok(p) if p > 53 => eprintln!(
            "note: QMZ_PRECISION={p} exceeds the native 53-bit doubles; \
             numeric results carry explicit error bounds instead"
        ),
        Ok(_) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
    if let Err(f) = run(&cli) {
        eprintln!("error: {}", f.msg);
        std::process::exit(f.code);
    }
}

/// Index literals are user input, so their failures are usage errors.
fn index_arg(text: &str, level: Option<u32>) -> Result<MdfIndex, Failure> {
    parse_full_index(text, level).map_err(usage)
}

/// Text form of an index: bar notation at level 2, bracket form otherwise.
fn index_text(idx: &MdfIndex) -> String {
    bar_notation(idx).unwrap_or_else(|| render_index(idx))
}

/// Text form of a formal sum with level-2 bar notation on the words.
fn formal_text(x: &FormalSum) -> String {
    if x.terms.is_empty() {
        return "0".to_string();
    }
    let level = x.level;
    let word_text = |w: &Word| -> String {
        if w.0.is_empty() {
            "1".to_string()
        } else {
            let idx = w.to_index(level).expect("word colors fit the level");
            bar_notation(&idx).unwrap_or_else(|| format!("{w}"))
        }
    };
    let mut parts = Vec::new();
    for (w, c) in &x.terms {
        if c.is_zero() {
            continue;
        }
        let body = word_text(w);
        if c.as_rational().map_or(false, |r| r.is_one()) {
            parts.push(body);
        } else {
            parts.push(format!("({c})·{body}"));
        }
    }
    parts.join(" + ")
}

fn rat_str(r: &Rational) -> String {
    r.to_string()
}

fn matrix_json(m: &[Vec<Rational>]) -> serde_json::Value {
    serde_json::Value::Array(
        m.iter()
            .map(|row| {
                serde_json::Value::Array(
                    row.iter()
                        .map(|x| serde_json::Value::String(rat_str(x)))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn matrix_text(m: &[Vec<Rational>]) -> String {
    let cells: Vec<Vec<String>> = m
        .iter()
        .map(|row| row.iter().map(rat_str).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(|s| s.len())
        .max()
        .unwrap_or(1);
    cells
        .iter()
        .map(|row| {
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            format!("[ {} ]", padded.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Coeffs { index, level, order, route } => {
            let idx = index_arg(index, *level)?;
            let series = match route.as_str() {
                "divisor-sum" => mdf_divisor_sum(&idx, *order),
                "polylog" => mdf_polylog(&idx, *order),
                "eulerian" => mdf_eulerian(&idx, *order),
                other => {
                    return Err(usage(format!(
                        "unknown route {other:?} (expected divisor-sum, polylog, or eulerian)"
                    )))
                }
            };
            if cli.json {
                let out = serde_json::json!({
                    "index": render_index(&idx),
                    "route": route,
                    "series": series.to_json(),
                });
                println!("{out}");
            } else {
                println!("{} = {}", index_text(&idx), series);
            }
        }
        Command::Product { left, right, level, order } => {
            let l = index_arg(left, *level)?;
            let r = index_arg(right, Some(l.level))?;
            let lw = Word::from_index(&l);
            let rw = Word::from_index(&r);
            let product = stuffle_words(l.level, &lw, &rw).map_err(domain)?;
            // The expansion must reproduce the series product exactly; a
            // mismatch is a library bug, not a user error.
            let lhs = product.eval_to_qseries(*order);
            let rhs = mdf_polylog(&l, *order).mul(&mdf_polylog(&r, *order));
            assert_eq!(
                lhs, rhs,
                "internal error: stuffle expansion disagrees with the q-series \
                 product of {l} and {r} at order {order}"
            );
            if cli.json {
                let out = serde_json::json!({
                    "left": render_index(&l),
                    "right": render_index(&r),
                    "checked_to_order": order,
                    "product": product.to_json(),
                });
                println!("{out}");
            } else {
                println!(
                    "{} * {} = {}",
                    index_text(&l),
                    index_text(&r),
                    formal_text(&product)
                );
            }
        }
        Command::Derive { index, level, order } => {
            let idx = index_arg(index, *level)?;
            let image = qmz::derive::derive_index(&idx).map_err(domain)?;
            if cli.json {
                let mut out = serde_json::json!({
                    "index": render_index(&idx),
                    "image": image.to_json(),
                });
                if let Some(n) = order {
                    out["series"] = image.eval_to_qseries(*n).to_json();
                }
                println!("{out}");
            } else {
                println!("D{} = {}", index_text(&idx), formal_text(&image));
                if let Some(n) = order {
                    println!("  = {}", image.eval_to_qseries(*n));
                }
            }
        }
        Command::Reduce { index, level } => {
            let idx = index_arg(index, *level)?;
            let reduced = reduce_word(idx.level, &Word::from_index(&idx)).map_err(domain)?;
            if cli.json {
                let out = serde_json::json!({
                    "index": render_index(&idx),
                    "reduced": reduced.to_json(),
                });
                println!("{out}");
            } else {
                println!("{} = {}", index_text(&idx), reduced);
            }
        }
        Command::Regmatrix { level, m } => {
            if *level < 1 {
                return Err(usage("level must be at least 1"));
            }
            let matrix = reg_matrix(*level, *m);
            let det = reg_matrix_det(*level, *m);
            let inverse = linalg::invert_rational(&matrix).map_err(domain)?;
            // Clear denominators so the inverse also prints as an integer
            // matrix with one scale factor out front.
            let scale = inverse
                .iter()
                .flatten()
                .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let scaled: Vec<Vec<Rational>> = inverse
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|x| x * Rational::from(scale.clone()))
                        .collect()
                })
                .collect();
            if cli.json {
                let out = serde_json::json!({
                    "level": level,
                    "m": m,
                    "size": matrix.len(),
                    "matrix": matrix_json(&matrix),
                    "det": rat_str(&det),
                    "inverse": matrix_json(&inverse),
                    "inverse_scale": scale.to_string(),
                    "scaled_inverse": matrix_json(&scaled),
                });
                println!("{out}");
            } else {
                println!("M({level},{m}) =");
                println!("{}", matrix_text(&matrix));
                println!("det = {}", rat_str(&det));
                println!("{scale} · M^-1 =");
                println!("{}", matrix_text(&scaled));
            }
        }
        Command::Relations { level, weight, depth_max, cutoff } => {
            let records =
                emit_relations(*level, *weight, *depth_max, *cutoff).map_err(domain)?;
            if cli.json {
                let out = serde_json::Value::Array(
                    records.iter().map(RelationRecord::to_json).collect(),
                );
                println!("{out}");
            } else {
                if records.is_empty() {
                    println!("no relations found");
                }
                for r in &records {
                    println!("{r}");
                }
            }
        }
        Command::Zeta { index, level, cutoff } => {
            let idx = index_arg(index, *level)?;
            let (value, bound) =
                zeta_numeric(idx.level, &idx.s, &idx.alpha, *cutoff).map_err(domain)?;
            if cli.json {
                let out = serde_json::json!({
                    "index": render_index(&idx),
                    "cutoff": cutoff,
                    "value": value,
                    "error_bound": bound,
                });
                println!("{out}");
            } else {
                println!(
                    "zeta_{}({};{}) = {value:.15} (tail bound {bound:.2e}, cutoff {cutoff})",
                    idx.level,
                    idx.s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                    idx.alpha.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                );
            }
        }
        Command::Omega { level, alpha, n_max } => {
            if *level < 1 {
                return Err(usage("level must be at least 1"));
            }
            if alpha >= level {
                return Err(usage(format!(
                    "alpha must satisfy 0 <= alpha < {level}, got {alpha}"
                )));
            }
            let table = omega::omega(*level, *alpha, *n_max);
            if cli.json {
                let out = serde_json::json!({
                    "level": table.level,
                    "alpha": table.alpha,
                    "values": table.values.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                });
                println!("{out}");
            } else {
                for (n, v) in table.values.iter().enumerate() {
                    println!("omega_{{{n};{alpha}}} = {v}");
                }
            }
        }
        Command::Verify { file, cutoff, tol } => {
            let mut text = String::new();
            match file.as_deref() {
                None | Some("-") => {
                    std::io::stdin()
                        .read_to_string(&mut text)
                        .map_err(|e| domain(format!("reading stdin: {e}")))?;
                }
                Some(path) => {
                    text = std::fs::read_to_string(path)
                        .map_err(|e| domain(format!("reading {path}: {e}")))?;
                }
            }
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| usage(format!("bad JSON: {e}")))?;
            let raw: Vec<&serde_json::Value> = match &value {
                serde_json::Value::Array(items) => items.iter().collect(),
                one => vec![one],
            };
            let mut worst: f64 = 0.0;
            let mut results = Vec::new();
            for (i, v) in raw.iter().enumerate() {
                let record = RelationRecord::from_json(v)
                    .map_err(|e| usage(format!("record {i}: {e}")))?;
                let residual = verify_relation(&record, *cutoff)
                    .map_err(|e| domain(format!("record {i}: {e}")))?;
                worst = worst.max(residual);
                results.push((record, residual));
            }
            if cli.json {
                let out = serde_json::Value::Array(
                    results
                        .iter()
                        .map(|(r, res)| {
                            serde_json::json!({
                                "relation": r.to_json(),
                                "residual": res,
                                "certified": res < tol,
                            })
                        })
                        .collect(),
                );
                println!("{out}");
            } else {
                for (r, res) in &results {
                    let status = if res < tol { "ok" } else { "FAIL" };
                    println!("{status} residual {res:.3e}: {r}");
                }
            }
            if worst >= *tol {
                return Err(domain(format!(
                    "worst residual {worst:.3e} exceeds tolerance {tol:.1e}"
                )));
            }
        }
    }
    Ok(())
}
