//! Command-line front end.
//!
//! Exit codes: 0 on success or when every check passes, 1 when a check
//! fails or two grids disagree, 2 on usage and validation errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::beatty;
use crate::closed_forms::{p_position_set, MirrorPolicy};
use crate::error::{Error, Result};
use crate::grundy::{compute_grid, grids_agree_up_to};
use crate::ruleset::RuleSet;
use crate::verifier::{self, Check, Report, Status, CHECK_IDS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "wythoff", version, about = "Nim values of Wythoff's game and its restricted-diagonal variants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the nim-value grid of a rule set
    Grid {
        #[arg(long)]
        rule: RuleSet,
        /// WxH, or N for a square
        #[arg(long, value_parser = parse_size)]
        size: (u32, u32),
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the g-positions of a grid as CSV
    Gpos {
        #[arg(long)]
        rule: RuleSet,
        #[arg(long, value_parser = parse_size)]
        size: (u32, u32),
        #[arg(long)]
        g: u32,
    },
    /// List the closed-form P-positions below a bound as CSV
    Ppos {
        #[arg(long)]
        rule: RuleSet,
        #[arg(long)]
        bound: u32,
        /// Emit both (a,b) and (b,a) instead of only a <= b
        #[arg(long)]
        mirror: bool,
    },
    /// Run one check, or the whole suite with `all`
    Verify(VerifyArgs),
    /// Compare the g-positions of two rule sets for every g up to a bound
    Diff {
        #[arg(long)]
        rule_a: RuleSet,
        #[arg(long)]
        rule_b: RuleSet,
        #[arg(long = "box")]
        box_size: u32,
        #[arg(long)]
        gmax: u32,
    },
    /// Dump n, A_n, B_n for 0 <= n <= max
    Beatty {
        #[arg(long)]
        max: u64,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// A check id, or `all`
    check: String,
    #[arg(long)]
    rule: Option<RuleSet>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    kp: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    /// Upper g for the checks that take one
    #[arg(long)]
    g: Option<u32>,
    #[arg(long = "box")]
    box_size: Option<u32>,
    /// Range bound, or j for check_everyrow
    #[arg(long, alias = "j")]
    n: Option<u64>,
    /// Run the suite on one thread
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
    Ascii,
}

fn parse_size(s: &str) -> std::result::Result<(u32, u32), String> {
    let dim = |t: &str| match t.parse::<u32>() {
        Ok(0) => Err("dimensions must be positive".to_string()),
        Ok(v) if t.bytes().all(|b| b.is_ascii_digit()) => Ok(v),
        _ => Err(format!("bad dimension `{t}`")),
    };
    match s.split_once(['x', 'X']) {
        Some((w, h)) => Ok((dim(w)?, dim(h)?)),
        None => dim(s).map(|n| (n, n)),
    }
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out`. Errors go to standard error.
pub fn run<I, T, W: Write>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    eprint!("{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch<W: Write>(command: Command, out: &mut W) -> Result<i32> {
    match command {
        Command::Grid { rule, size: (w, h), format, output } => {
            let grid = compute_grid(rule, w, h)?;
            let mut file;
            let sink: &mut dyn Write = match output {
                Some(path) => {
                    file = BufWriter::new(File::create(path)?);
                    &mut file
                }
                None => out,
            };
            match format {
                Format::Csv => grid.write_csv(&mut *sink)?,
                Format::Json => writeln!(sink, "{}", grid.to_json()?)?,
                Format::Ascii => write!(sink, "{}", grid.render_ascii())?,
            }
            sink.flush()?;
            Ok(EXIT_OK)
        }
        Command::Gpos { rule, size: (w, h), g } => {
            compute_grid(rule, w, h)?.g_positions(g).write_csv(out)?;
            Ok(EXIT_OK)
        }
        Command::Ppos { rule, bound, mirror } => {
            p_position_set(rule, bound, MirrorPolicy { mirror })?.write_csv(out)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => verify(args, out),
        Command::Diff { rule_a, rule_b, box_size, gmax } => {
            if box_size < 2 {
                return Err(Error::InvalidParameter(format!("box must be at least 2, got {box_size}")));
            }
            let a = compute_grid(rule_a, box_size, box_size)?;
            let b = compute_grid(rule_b, box_size, box_size)?;
            let agreement = grids_agree_up_to(&a, &b, gmax)?;
            writeln!(out, "g,equal")?;
            for (g, eq) in agreement.per_g_equal.iter().enumerate() {
                writeln!(out, "{g},{eq}")?;
            }
            match &agreement.first_witness {
                Some(d) => writeln!(
                    out,
                    "witness: g={} at {}, {rule_a} has {} and {rule_b} has {}",
                    d.g, d.position, d.value_a, d.value_b
                )?,
                None => writeln!(out, "witness: none")?,
            }
            Ok(if agreement.all_equal() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Beatty { max } => {
            if max > beatty::MAX_INDEX {
                return Err(Error::InvalidParameter(format!("max must be at most {}", beatty::MAX_INDEX)));
            }
            let mut w = BufWriter::new(out);
            beatty::write_csv(max, &mut w)?;
            w.flush()?;
            Ok(EXIT_OK)
        }
    }
}

fn missing(flag: &str, check: &str) -> Error {
    Error::InvalidParameter(format!("{check} needs --{flag}"))
}

fn to_u32(v: u64, flag: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::InvalidParameter(format!("--{flag} is out of range")))
}

/// Maps the flags of `verify <id>` onto a [`Check`].
fn single_check(a: &VerifyArgs) -> Result<Check> {
    let id = a.check.as_str();
    let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| missing(flag, id));
    let box_or = |d: u32| a.box_size.unwrap_or(d);
    let check = match id {
        "check_p_positions" => Check::PPositions { rule: a.rule.unwrap_or(RuleSet::wythoff()), box_size: box_or(128) },
        "check_wkl_invariance" => Check::WklInvariance {
            k: need(a.k, "k")?,
            kp: need(a.kp, "kp")?,
            l: need(a.l, "l")?,
            box_size: box_or(64),
            g_max: a.g,
        },
        "check_power_of_two_invariance" => {
            Check::PowerOfTwoInvariance { k: need(a.k, "k")?, l: need(a.l, "l")?, box_size: box_or(64) }
        }
        "check_tk_invariance" => Check::TkInvariance { k: need(a.k, "k")?, box_size: box_or(64), g_max: a.g },
        "check_one_positions_lodd" => {
            Check::OnePositionsLodd { k: need(a.k, "k")?, l: need(a.l, "l")?, box_size: box_or(128) }
        }
        "check_everyrow" => Check::EveryRow { j: to_u32(a.n.ok_or_else(|| missing("n", id))?, "n")? },
        "check_covering" => Check::Covering { n: a.n.unwrap_or(100_000) },
        "check_frac_lemmas" => Check::FracLemmas { n: a.n.unwrap_or(1_000_000) },
        "check_agaps" => Check::Agaps { n: a.n.unwrap_or(1_000_000) },
        "check_w1_row_patterns" => Check::W1RowPatterns { x_max: to_u32(a.n.unwrap_or(10_000), "n")? },
        "check_pushing_away" => Check::PushingAway { box_size: box_or(256), g_max: a.g.unwrap_or(8) },
        "check_g_location" => Check::GLocation { box_size: box_or(256), g_max: a.g.unwrap_or(8) },
        "explore_l_even_conjecture" => Check::ExploreLEven { l: need(a.l, "l")?, box_size: box_or(128) },
        "check_tightness_remark" => Check::TightnessRemark,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown check `{other}`; expected `all` or one of {}",
                CHECK_IDS.join(", ")
            )))
        }
    };
    Ok(check)
}

fn verify<W: Write>(a: VerifyArgs, out: &mut W) -> Result<i32> {
    let checks = if a.check == "all" {
        suite(a.box_size.unwrap_or(256))?
    } else {
        vec![single_check(&a)?]
    };
    let reports: Vec<Report> = verifier::run_suite(&checks, !a.sequential).into_iter().collect::<Result<_>>()?;
    let mut code = EXIT_OK;
    for r in &reports {
        writeln!(out, "{}", r.to_json())?;
        if r.status == Status::Fail && !r.exploratory {
            code = EXIT_FAIL;
        }
    }
    Ok(code)
}

fn suite(box_size: u32) -> Result<Vec<Check>> {
    if box_size < 64 {
        return Err(Error::InvalidParameter(format!("the suite needs --box of at least 64, got {box_size}")));
    }
    Ok(verifier::default_suite(box_size))
}
