//! The `pilegame` command line.
//!
//! Output is one line of JSON on stdout unless `--pretty` is given or
//! `PILEGAME_FORMAT=pretty` is set. Progress and errors go to stderr. Exit
//! codes: 0 success, 1 usage or input error, 2 verification mismatch.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use pilegame_core::algebra::{parse_rational, Rational};
use pilegame_core::cfinite::{guess_recurrence, GUESS_MARGIN};
use pilegame_core::single_player::{
    denom_recurrence, moments, passage_count_closed_form, path_count, solve_gf,
};
use pilegame_core::two_player::{
    endgame_moments, holonomy_evidence, two_player, winprob_exact, winprob_squares, FitAttempt,
};
use pilegame_core::{GameSpec, SimConfig, Starts};
use serde_json::{json, Value};

use crate::fixtures::wbar_reference;
use crate::json::{
    cfinite_to_json, endgame_to_json, gf_table_to_json, moments_to_json, poly_to_json,
    ratfunc_to_json, rational_to_json, rationals_to_json, sim_report_to_json, two_player_to_json,
    SimTargets,
};
use crate::pretty;
use crate::sim::simulate_parallel;
use crate::verify::{verify_pipeline, Family};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(
    name = "pilegame",
    version,
    about = "Exact statistics of pile games with a reflecting floor at zero"
)]
pub struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Default output format.
    #[arg(long, global = true, env = "PILEGAME_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Suppress progress messages.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// `1000000` or `1e6`.
fn count_arg(s: &str) -> Result<u64, String> {
    let bad = || format!("expected a nonnegative integer such as 1000000 or 1e6, got {s:?}");
    match s.split_once(['e', 'E']) {
        None => s.parse().map_err(|_| bad()),
        Some((m, e)) => {
            let m: u64 = m.parse().map_err(|_| bad())?;
            let e: u32 = e.parse().map_err(|_| bad())?;
            10u64
                .checked_pow(e)
                .and_then(|p| m.checked_mul(p))
                .ok_or_else(bad)
        }
    }
}

const FAIR: &str = "1:1/2,-1:1/2";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WinMethod {
    /// Linear system at x = 1.
    Solve,
    /// Guessed generating function evaluated at 1.
    Guess,
    /// One half plus half the sum of squared first-passage probabilities.
    Squares,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Turn-count generating functions from the linear solve.
    Gf {
        /// Steps with probabilities, e.g. "1:1/2,-1:1/2".
        #[arg(long, default_value = FAIR)]
        spec: GameSpec,
        #[arg(long)]
        n: usize,
        /// Start; all starts 0..=n when omitted.
        #[arg(long)]
        s: Option<usize>,
        /// Also print this many series coefficients.
        #[arg(long)]
        series: Option<usize>,
    },
    /// Straight and central moments of the turn count.
    Moments {
        #[arg(long, default_value = FAIR)]
        spec: GameSpec,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        s: usize,
        /// Highest moment order.
        #[arg(long, default_value_t = 4)]
        r: usize,
    },
    /// Number of step sequences first reaching the target at turn k.
    Pathcount {
        #[arg(
            long,
            default_value = "1,-1",
            value_delimiter = ',',
            allow_hyphen_values = true
        )]
        steps: Vec<i64>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        s: usize,
    },
    /// Closed-form count of +1/-1 paths from s first reaching n at turn n + t.
    #[command(name = "passage-formula", alias = "theorem6")]
    PassageFormula {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
        #[arg(long, default_value_t = 0)]
        s: usize,
    },
    /// Common denominator from its recurrence in n.
    Denom {
        /// pm1, 1mu(u) or 2m1.
        #[arg(long, default_value = "pm1")]
        family: Family,
        /// Probability of the up step.
        #[arg(long, default_value = "1/2", value_parser = rational_arg)]
        p: Rational,
        #[arg(long)]
        n: usize,
    },
    /// Exact first-player winning probability, both players starting at 0.
    Winprob {
        #[arg(long, default_value = FAIR)]
        spec: GameSpec,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = WinMethod::Solve)]
        method: WinMethod,
    },
    /// Win, lose and total-turn generating functions for two players.
    Twoplayer {
        #[arg(long, default_value = FAIR)]
        spec: GameSpec,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        s1: usize,
        #[arg(long, default_value_t = 0)]
        s2: usize,
    },
    /// Moments of the winner's turn count and of the total turn count.
    Endgame {
        #[arg(long, default_value = FAIR)]
        spec: GameSpec,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        r: usize,
    },
    /// Guess a constant-coefficient recurrence, or test the winning
    /// probabilities for one with --holonomy.
    Guess {
        /// Comma-separated exact terms.
        #[arg(long, value_parser = rational_arg, value_delimiter = ',', allow_hyphen_values = true, required_unless_present = "holonomy")]
        terms: Option<Vec<Rational>>,
        /// Order bound; defaults to the largest the data supports.
        #[arg(long)]
        max_order: Option<usize>,
        /// Compute winning probabilities up to this target and try to fit them.
        #[arg(long, conflicts_with = "terms")]
        holonomy: Option<usize>,
        #[arg(long, default_value = FAIR)]
        spec: GameSpec,
    },
    /// Seeded Monte Carlo estimate.
    Simulate {
        #[arg(long, default_value = FAIR)]
        spec: GameSpec,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        players: u8,
        /// Start for one player.
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        s1: usize,
        #[arg(long, default_value_t = 0)]
        s2: usize,
        /// Plain integer or mantissa-exponent form such as 1e6.
        #[arg(long, default_value_t = 1_000_000, value_parser = count_arg)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Turn cap per trial; default 64 n^2.
        #[arg(long)]
        cap: Option<u64>,
        /// Exact mean turn count to compare against.
        #[arg(long, value_parser = rational_arg)]
        exact_mean: Option<Rational>,
        /// Exact win rate to compare against.
        #[arg(long, value_parser = rational_arg)]
        exact_win: Option<Rational>,
    },
    /// Cross-check independent methods; exits 2 on any mismatch.
    Verify {
        /// pm1, 1mu(u), 2m1, twoplayer or all.
        #[arg(long, default_value = "all")]
        family: Family,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
}

struct Output {
    json: Value,
    text: String,
    code: i32,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            code: EXIT_OK,
        }
    }
}

type CmdResult = Result<Output, String>;

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn rational_table(rows: &[(&str, &[Rational])]) -> String {
    let len = rows.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut out = format!("{:>3}", "r");
    for (name, _) in rows {
        out.push_str(&format!("  {name:>24}"));
    }
    out.push('\n');
    for r in 0..len {
        out.push_str(&format!("{r:>3}"));
        for (_, v) in rows {
            out.push_str(&format!(
                "  {:>24}",
                v.get(r).map_or(String::new(), ToString::to_string)
            ));
        }
        out.push('\n');
    }
    out
}

fn fit_json(a: &FitAttempt) -> Value {
    json!({
        "first_index": a.first_index,
        "terms": a.terms,
        "max_order": a.max_order,
        "fit": a.fit.as_ref().map(cfinite_to_json),
    })
}

fn fit_text(label: &str, a: &FitAttempt) -> String {
    let outcome = match &a.fit {
        None => "no fit".to_string(),
        Some(rec) => format!(
            "FIT FOUND of order {}: {}",
            rec.order(),
            pretty::ratfunc(&rec.to_ratfunc())
        ),
    };
    format!(
        "{label}: {} terms from index {}, order <= {}: {outcome}\n",
        a.terms, a.first_index, a.max_order
    )
}

fn execute(command: Command, quiet: bool) -> CmdResult {
    let progress = move |msg: &str| {
        if !quiet {
            eprintln!("{msg}");
        }
    };
    match command {
        Command::Gf { spec, n, s, series } => {
            let table = solve_gf(&spec, n).map_err(err)?;
            let starts: Vec<usize> = match s {
                Some(s) => vec![s.min(n)],
                None => (0..=n).collect(),
            };
            let mut text = String::new();
            let mut entries = Vec::new();
            for &s in &starts {
                let g = table.get(s);
                text.push_str(&format!("n={n} s={s}: {}\n", pretty::ratfunc(g)));
                let mut e = json!({ "s": s, "G": ratfunc_to_json(g) });
                if let Some(k) = series {
                    let coeffs = g.series(k.saturating_sub(1)).map_err(err)?.into_coeffs();
                    text.push_str(&format!(
                        "  series: {}\n",
                        coeffs
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ));
                    e["series"] = rationals_to_json(&coeffs);
                }
                entries.push(e);
            }
            let json = match s {
                Some(_) => {
                    let mut j = json!({ "n": n, "spec": spec.to_string() });
                    for (k, v) in entries.swap_remove(0).as_object().expect("object") {
                        j[k] = v.clone();
                    }
                    j
                }
                None => {
                    let mut j = gf_table_to_json(&table);
                    if series.is_some() {
                        j["series"] =
                            Value::Array(entries.iter().map(|e| e["series"].clone()).collect());
                    }
                    j
                }
            };
            Ok(Output::ok(json, text))
        }
        Command::Moments { spec, n, s, r } => {
            let m = moments(&spec, n, s.min(n), r).map_err(err)?;
            let text = format!(
                "n={} s={}\n{}",
                m.n,
                m.s,
                rational_table(&[("straight", &m.straight), ("central", &m.central)])
            );
            Ok(Output::ok(moments_to_json(&m), text))
        }
        Command::Pathcount { steps, n, k, s } => {
            if !steps.iter().any(|&x| x > 0) {
                return Err("steps must include a positive step".into());
            }
            let c = path_count(&steps, n, k, s.min(n));
            Ok(Output::ok(
                json!({ "n": n, "k": k, "s": s, "count": c.to_string() }),
                format!("{c}\n"),
            ))
        }
        Command::PassageFormula { n, t, s } => {
            let c = passage_count_closed_form(n, t, s).map_err(err)?;
            Ok(Output::ok(
                json!({ "n": n, "t": t, "s": s, "count": c.to_string() }),
                format!("{c}\n"),
            ))
        }
        Command::Denom { family, p, n } => {
            let df = match family {
                Family::PlusMinusOne => pilegame_core::single_player::DenomFamily::PlusMinusOne,
                Family::OneMinusU(u) => pilegame_core::single_player::DenomFamily::OneMinusU(u),
                Family::TwoMinusOne => pilegame_core::single_player::DenomFamily::TwoMinusOne,
                _ => return Err("denom needs family pm1, 1mu(u) or 2m1".into()),
            };
            let q = denom_recurrence(df, &p, n).map_err(err)?;
            let table = solve_gf(&df.spec(&p).map_err(err)?, n).map_err(err)?;
            let divides = table
                .gfs()
                .iter()
                .all(|g| q.is_divisible_by(g.den()).unwrap_or(false));
            let text = format!(
                "{}\nevery reduced denominator divides it: {}\n",
                pretty::poly(&q),
                if divides { "yes" } else { "NO" }
            );
            let out = Output {
                json: json!({ "family": family.to_string(), "p": p.to_string(), "n": n, "denominator": poly_to_json(&q), "divides": divides }),
                text,
                code: if divides { EXIT_OK } else { EXIT_MISMATCH },
            };
            Ok(out)
        }
        Command::Winprob { spec, n, method } => {
            let w = match method {
                WinMethod::Solve => winprob_exact(&spec, n),
                WinMethod::Guess => two_player(&spec, n, 0, 0).map(|r| r.wbar),
                WinMethod::Squares => winprob_squares(&spec, n),
            }
            .map_err(err)?;
            Ok(Output::ok(rational_to_json(&w), format!("{w}\n")))
        }
        Command::Twoplayer { spec, n, s1, s2 } => {
            progress(&format!(
                "guessing from {} terms",
                pilegame_core::two_player::guess_terms(n)
            ));
            let r = two_player(&spec, n, s1, s2).map_err(err)?;
            let text = format!(
                "W(x) = {}\nL(x) = {}\nT(x) = {}\nW(1) = {}\n",
                pretty::ratfunc(&r.w),
                pretty::ratfunc(&r.l),
                pretty::ratfunc(&r.t),
                r.wbar
            );
            Ok(Output::ok(two_player_to_json(&r), text))
        }
        Command::Endgame { spec, n, r } => {
            let m = endgame_moments(&spec, n, r).map_err(err)?;
            let text = rational_table(&[
                ("Y straight", &m.y_straight),
                ("Y central", &m.y_central),
                ("Z straight", &m.z_straight),
                ("Z central", &m.z_central),
            ]);
            Ok(Output::ok(endgame_to_json(&m), text))
        }
        Command::Guess {
            terms,
            max_order,
            holonomy,
            spec,
        } => {
            if let Some(n_max) = holonomy {
                if n_max < 6 {
                    return Err("--holonomy needs a target of at least 6".into());
                }
                let reference = if spec == GameSpec::fair() {
                    wbar_reference()
                } else {
                    Vec::new()
                };
                progress(&format!(
                    "computing winning probabilities up to n = {n_max}"
                ));
                let rep = holonomy_evidence(&spec, n_max, &reference).map_err(err)?;
                let mut text = String::new();
                for (i, v) in rep.values.iter().enumerate() {
                    text.push_str(&format!("w({i}) = {v}\n"));
                }
                text.push_str(&format!(
                    "reference mismatches: {:?}\n",
                    rep.reference_mismatches
                ));
                text.push_str(&fit_text("computed values", &rep.computed));
                if let Some(e) = &rep.extended {
                    text.push_str(&fit_text("with reference values", e));
                }
                let json = json!({
                    "values": rationals_to_json(&rep.values),
                    "reference_mismatches": rep.reference_mismatches,
                    "computed": fit_json(&rep.computed),
                    "extended": rep.extended.as_ref().map(fit_json),
                    "any_fit": rep.any_fit(),
                });
                return Ok(Output::ok(json, text));
            }
            let terms = terms.expect("clap requires terms");
            let max_order = max_order.unwrap_or(terms.len().saturating_sub(GUESS_MARGIN) / 2);
            let fit = guess_recurrence(&terms, max_order).map_err(err)?;
            let (json, text) = match fit {
                None => (
                    json!({ "fit": null, "max_order": max_order }),
                    format!("no recurrence of order <= {max_order}\n"),
                ),
                Some(rec) => {
                    let f = rec.to_ratfunc();
                    let text = format!(
                        "order {}: coefficients {}\ngenerating function {}\n",
                        rec.order(),
                        rec.coeffs()
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(", "),
                        pretty::ratfunc(&f)
                    );
                    (
                        json!({ "fit": cfinite_to_json(&rec), "gf": ratfunc_to_json(&f), "max_order": max_order }),
                        text,
                    )
                }
            };
            Ok(Output::ok(json, text))
        }
        Command::Simulate {
            spec,
            n,
            players,
            s,
            s1,
            s2,
            trials,
            seed,
            cap,
            exact_mean,
            exact_win,
        } => {
            let starts = if players == 1 {
                Starts::Single(s)
            } else {
                Starts::Two(s1, s2)
            };
            let mut cfg = SimConfig::new(spec, n, starts, trials, seed);
            if let Some(c) = cap {
                cfg = cfg.with_cap(c);
            }
            progress(&format!(
                "simulating {} trials in {} blocks",
                cfg.trials,
                cfg.blocks()
            ));
            let r = simulate_parallel(&cfg).map_err(err)?;
            let targets = SimTargets {
                mean_turns: exact_mean,
                win_rate: exact_win,
            };
            let json = sim_report_to_json(&cfg, &r, &targets);
            let text = json
                .as_object()
                .expect("object")
                .iter()
                .map(|(k, v)| {
                    format!(
                        "{k}: {}\n",
                        v.as_str().map_or_else(|| v.to_string(), str::to_string)
                    )
                })
                .collect();
            Ok(Output::ok(json, text))
        }
        Command::Verify { family, nmax } => {
            let report = verify_pipeline(family, nmax, &progress);
            let code = if report.passed() {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            };
            Ok(Output {
                json: report.to_json(),
                text: report.to_table(),
                code,
            })
        }
    }
}

/// Runs the command line on `args` (including the program name), writing
/// results to `out` and errors to `errs`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, errs: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                EXIT_OK
            } else {
                let _ = write!(errs, "{}", e.render());
                EXIT_USAGE
            };
        }
    };
    let pretty = cli.pretty || cli.format == Format::Pretty;
    match execute(cli.command, cli.quiet) {
        Ok(o) => {
            let written = if pretty {
                write!(out, "{}", o.text)
            } else {
                writeln!(out, "{}", o.json)
            };
            if written.is_err() {
                return EXIT_USAGE;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(errs, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Entry point for the binary.
pub fn main_with_std_io() -> i32 {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = run(std::env::args_os(), &mut out, &mut io::stderr());
    let _ = out.flush();
    code
}
