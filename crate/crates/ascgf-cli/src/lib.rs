//! Command-line front end: argument parsing, machine-readable output, and
//! the numeric parts of the pole-accumulation demo that the exact core
//! deliberately leaves out.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 failed verification
//! verdict.

pub mod config;
pub mod demo;
pub mod output;
pub mod suites;

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use ascgf_core::asymptotics::{exact_coefficient_formula, pole_report, pole_spectrum};
use ascgf_core::conductor::{
    disc_series, global_asc_gf, global_cond_series, local_asc_gf, local_cond_gf,
};
use ascgf_core::fields::field_count_series;
use ascgf_core::fit::{expand_rational, fit_rational};
use ascgf_core::group::AbelianPGroup;
use ascgf_core::jump::{jump_global_series, jump_local_factors, jump_local_specialized};
use ascgf_core::lattice::default_lattice_bound;
use ascgf_core::zeta::place_counts;

use crate::config::Config;
use crate::output::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION_FAILED: i32 = 2;

const DEFAULT_ORDER: usize = 30;

#[derive(Parser, Debug)]
#[command(
    name = "ascgf",
    about = "Exact generating functions counting abelian p-group extensions of rational function fields by conductor-type invariants",
    version
)]
pub struct Cli {
    /// Key-value config file setting defaults for order, lattice_bound,
    /// and bruteforce_guard; flags override.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<String>,

    /// Emit CSV instead of JSON.
    #[arg(long, global = true)]
    pub csv: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form generating functions.
    Gf {
        #[command(subcommand)]
        which: GfCommand,
    },
    /// Expansion of the counting series for a group.
    Count(CountArgs),
    /// Innermost pole, leading constant, pole spectrum, exact formula.
    Asymptotics(GroupQArgs),
    /// Counts of field (surjective) extensions via subgroup inclusion-exclusion.
    Fields(FieldsArgs),
    /// Re-derive counts through independent oracles.
    Verify(VerifyArgs),
    /// Demonstrations; currently the order-3 conductor pole accumulation.
    Demo {
        #[command(subcommand)]
        which: DemoCommand,
    },
    /// Table of place counts by degree.
    Places(PlacesArgs),
}

#[derive(Subcommand, Debug)]
pub enum GfCommand {
    /// Last-jump (reduced conductor) generating function; rational.
    Asc(GfArgs),
    /// Ordinary conductor: local closed form plus truncated global series.
    Cond(GfArgs),
    /// Discriminant series for a cyclic group of prime order.
    Disc(GfArgs),
    /// Multivariate all-jumps function for a cyclic group, with its
    /// specialization back to the last-jump grading.
    Jump(GfArgs),
}

#[derive(Subcommand, Debug)]
pub enum DemoCommand {
    /// Pole radii of the conductor approximants accumulating on the
    /// critical circle.
    C3Poles(DemoArgs),
}

#[derive(Args, Debug)]
pub struct GfArgs {
    /// Group specification, e.g. "p=3;m=1,0,2" (empty list: trivial group).
    #[arg(long)]
    pub group: String,
    /// Constant-field size (or residue size with --local); a prime power.
    #[arg(long)]
    pub q: u64,
    /// Truncation order for series output.
    #[arg(long)]
    pub order: Option<usize>,
    /// Report the local function at residue size Q = --q instead of the
    /// global one.
    #[arg(long)]
    pub local: bool,
}

#[derive(Args, Debug)]
pub struct GroupQArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub q: u64,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub order: Option<usize>,
    /// Which invariant grades the count.
    #[arg(long, value_enum, default_value_t = Invariant::Asc)]
    pub invariant: Invariant,
}

#[derive(Args, Debug)]
pub struct FieldsArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub order: Option<usize>,
    /// Refuse subgroup enumeration beyond this group order.
    #[arg(long)]
    pub lattice_bound: Option<u128>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Truncation order for the global suite.
    #[arg(long)]
    pub order: Option<usize>,
    /// Guard on the brute-force choice-count product (local suite).
    #[arg(long)]
    pub guard: Option<u128>,
}

#[derive(Args, Debug)]
pub struct DemoArgs {
    #[arg(long)]
    pub q: u64,
    /// Largest approximation depth A.
    #[arg(long, default_value_t = 6)]
    pub a_max: u32,
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Args, Debug)]
pub struct PlacesArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub max_degree: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Invariant {
    Asc,
    Cond,
    Disc,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Local,
    Global,
    Zeta,
}

/// Entry point used by `main` and by tests; writes reports to `out`.
pub fn run_with<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
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
                    eprintln!("{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let config = match cli.config.as_deref().map(Config::load) {
        Some(Ok(c)) => c,
        Some(Err(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
        None => Config::default(),
    };
    match dispatch(&cli, &config, out) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn parse_group(spec: &str) -> Result<AbelianPGroup, String> {
    AbelianPGroup::from_spec_str(spec)
}

fn emit(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    writeln!(out, "{text}").map_err(|e| e.to_string())
}

fn dispatch(cli: &Cli, config: &Config, out: &mut dyn Write) -> Result<i32, String> {
    let order_default = config.order.unwrap_or(DEFAULT_ORDER);
    match &cli.command {
        Command::Gf { which } => {
            let (invariant, args) = match which {
                GfCommand::Asc(a) => (Invariant::Asc, a),
                GfCommand::Cond(a) => (Invariant::Cond, a),
                GfCommand::Disc(a) => (Invariant::Disc, a),
                GfCommand::Jump(a) => return run_jump(args_order(a, order_default), a, cli, out),
            };
            run_gf(invariant, args, args.order.unwrap_or(order_default), cli, out)
        }
        Command::Count(args) => run_count(args, args.order.unwrap_or(order_default), cli, out),
        Command::Asymptotics(args) => run_asymptotics(args, cli, out),
        Command::Fields(args) => run_fields(args, args.order.unwrap_or(order_default), config, cli, out),
        Command::Verify(args) => suites::run_verify(args, config, cli.csv, out),
        Command::Demo { which } => match which {
            DemoCommand::C3Poles(args) => {
                demo::run_c3_poles(args, args.order.unwrap_or(20), cli.csv, out)
            }
        },
        Command::Places(args) => run_places(args, args.max_degree.unwrap_or(order_default), cli, out),
    }
}

fn args_order(a: &GfArgs, default: usize) -> usize {
    a.order.unwrap_or(default)
}

fn run_gf(
    invariant: Invariant,
    args: &GfArgs,
    order: usize,
    cli: &Cli,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let group = parse_group(&args.group)?;
    let report = match invariant {
        Invariant::Asc => {
            if args.local {
                let gf = local_asc_gf(&group, &BigUint::from(args.q)).map_err(fmt_err)?;
                GfReport::local_factored(&group, args.q, &gf, order)
            } else {
                let gf = global_asc_gf(&group, args.q).map_err(fmt_err)?;
                GfReport::global_factored(&group, args.q, &gf, order)
            }
        }
        Invariant::Cond => {
            let local = local_cond_gf(&group, &BigUint::from(args.q)).map_err(fmt_err)?;
            if args.local {
                GfReport::local_cond(&group, args.q, &local, order)
            } else {
                let series = global_cond_series(&group, args.q, order).map_err(fmt_err)?;
                // the characteristic-2 series is rational after all: exhibit
                // the function fitted to the first half of the data and
                // verified on the rest
                let fitted = if group.multiplicities() == [1] && group.p() == 2 {
                    let window = order.min(20);
                    let long = global_cond_series(&group, args.q, 2 * window).map_err(fmt_err)?;
                    fit_rational(&long, window, 8).and_then(|(num, den)| {
                        let refit = expand_rational(&num, &den, 2 * window);
                        (refit == long).then(|| FittedRationalJson::new(&num, &den, 2 * window))
                    })
                } else {
                    None
                };
                GfReport::global_cond(&group, args.q, &local, &series, fitted)
            }
        }
        Invariant::Disc => {
            let series = disc_series(&group, args.q, order).map_err(fmt_err)?;
            let note = (group.p() > 3).then(|| {
                format!(
                    "p = {}: the (p-1)-fold conductor scaling extends the verified p = 2, 3 cases",
                    group.p()
                )
            });
            GfReport::disc(&group, args.q, &series, note)
        }
    };
    if cli.csv {
        write_series_csv(out, report.series_for_csv()).map_err(|e| e.to_string())?;
    } else {
        emit(out, &report)?;
    }
    Ok(EXIT_OK)
}

fn run_jump(order: usize, args: &GfArgs, cli: &Cli, out: &mut dyn Write) -> Result<i32, String> {
    let group = parse_group(&args.group)?;
    let p = group.p();
    let mults = group.multiplicities();
    let e = group.exponent_exp();
    if mults.is_empty() || mults[mults.len() - 1] != 1 || mults.iter().sum::<u32>() != 1 {
        return Err("jump functions are defined for non-trivial cyclic groups only".into());
    }
    let factors = jump_local_factors(p, e).map_err(fmt_err)?;
    let report = if args.local {
        let series =
            jump_local_specialized(p, e, &BigUint::from(args.q), order).map_err(fmt_err)?;
        JumpReport::local(&group, args.q, &factors, &series)
    } else {
        let series = jump_global_series(p, e, args.q, order).map_err(fmt_err)?;
        JumpReport::global(&group, args.q, &factors, &series)
    };
    if cli.csv {
        write_series_csv(out, report.series_for_csv()).map_err(|e| e.to_string())?;
    } else {
        emit(out, &report)?;
    }
    Ok(EXIT_OK)
}

fn run_count(args: &CountArgs, order: usize, cli: &Cli, out: &mut dyn Write) -> Result<i32, String> {
    let group = parse_group(&args.group)?;
    let series = match args.invariant {
        Invariant::Asc => global_asc_gf(&group, args.q).map_err(fmt_err)?.expand(order),
        Invariant::Cond => global_cond_series(&group, args.q, order).map_err(fmt_err)?,
        Invariant::Disc => disc_series(&group, args.q, order).map_err(fmt_err)?,
    };
    let counts = series.integer_coeffs().map_err(fmt_err)?;
    let report = CountReport::new(&group, args.q, args.invariant, order, &counts);
    if cli.csv {
        write_series_csv(out, report.rows()).map_err(|e| e.to_string())?;
    } else {
        emit(out, &report)?;
    }
    Ok(EXIT_OK)
}

fn run_asymptotics(args: &GroupQArgs, cli: &Cli, out: &mut dyn Write) -> Result<i32, String> {
    let group = parse_group(&args.group)?;
    let gf = global_asc_gf(&group, args.q).map_err(fmt_err)?;
    let spectrum = pole_spectrum(&gf);
    let report = pole_report(&group, args.q).map_err(fmt_err)?;
    let formula = exact_coefficient_formula(&gf).map_err(fmt_err)?;
    let json = AsymptoticsReport::new(&group, args.q, &gf, &report, &spectrum, &formula);
    if cli.csv {
        write_spectrum_csv(out, &json).map_err(|e| e.to_string())?;
    } else {
        emit(out, &json)?;
    }
    Ok(EXIT_OK)
}

fn run_fields(
    args: &FieldsArgs,
    order: usize,
    config: &Config,
    cli: &Cli,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let group = parse_group(&args.group)?;
    let bound = args
        .lattice_bound
        .or(config.lattice_bound)
        .unwrap_or_else(|| default_lattice_bound(group.p()));
    let report = field_count_series(&group, args.q, order, bound).map_err(fmt_err)?;
    let json = FieldsReport::new(&group, args.q, order, &report);
    if cli.csv {
        write_series_csv(out, json.rows()).map_err(|e| e.to_string())?;
    } else {
        emit(out, &json)?;
    }
    Ok(EXIT_OK)
}

fn run_places(
    args: &PlacesArgs,
    max_degree: usize,
    cli: &Cli,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let table = place_counts(args.q, max_degree).map_err(fmt_err)?;
    let report = PlacesReport::new(&table);
    if cli.csv {
        write_places_csv(out, &report).map_err(|e| e.to_string())?;
    } else {
        emit(out, &report)?;
    }
    Ok(EXIT_OK)
}

pub(crate) fn fmt_err(e: ascgf_core::Error) -> String {
    e.to_string()
}
