//! `gft`: evaluate distortion functions and bounds, print tables, and run
//! the inequality sweeps.
//!
//! Exit status is 0 on success, 1 on a usage or domain error and 2 when an
//! asserted inequality is violated.

mod functions;
mod render;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{value_parser, Arg, ArgAction, ArgMatches, Command};
use gft_core::verify::{self, InequalityReport, Status, SweepOverrides};
use gft_core::{bounds, special_fns as sf, GeneralizedParam};
use serde_json::{Map, Value};

use functions::{Function, Input, Output};
use render::{fmt_num, json_num, json_text, OutputFormat, Table};

const REPORT_DIR_ENV: &str = "GFT_REPORT_DIR";

type Outcome = std::result::Result<ExitCode, String>;

fn main() -> ExitCode {
    match run(std::env::args_os()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn run(args: impl IntoIterator<Item = OsString>) -> Outcome {
    let matches = match cli().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return Ok(ExitCode::from(code));
        }
    };
    match matches.subcommand() {
        Some(("eval", m)) => cmd_eval(m),
        Some(("table", m)) => cmd_table(m),
        Some(("verify", m)) => cmd_verify(m),
        Some(("constants", m)) => cmd_constants(m),
        _ => unreachable!("subcommand is required"),
    }
}

fn leak(s: String) -> &'static str {
    Box::leak(s.into_boxed_str())
}

fn format_arg() -> Arg {
    Arg::new("format")
        .long("format")
        .value_parser(["text", "csv", "json"])
        .default_value("text")
        .help("output format")
}

fn number_arg(name: &'static str) -> Arg {
    Arg::new(name)
        .long(name)
        .value_parser(value_parser!(f64))
        .allow_negative_numbers(true)
}

fn function_args(cmd: Command) -> Command {
    cmd.arg(
        Arg::new("function")
            .required(true)
            .help("function name; see the list below"),
    )
    .arg(format_arg())
    .arg(
        Arg::new("variant")
            .long("variant")
            .help("Mori constant for mori_holder_bound: sixteen or sixtyfour"),
    )
    .arg(
        Arg::new("literal")
            .long("literal")
            .action(ArgAction::SetTrue)
            .help("lemma3_fk with the r^(1/K) factor"),
    )
    .after_long_help(functions::listing())
}

fn cli() -> Command {
    let mut eval = function_args(Command::new("eval").about("evaluate one function"));
    let mut table = function_args(
        Command::new("table").about("tabulate a function over one or two swept axes"),
    )
    .arg(
        Arg::new("steps")
            .long("steps")
            .value_parser(value_parser!(usize))
            .help("points per swept axis"),
    );
    for name in functions::all_param_names() {
        eval = eval.arg(number_arg(name));
        table = table
            .arg(number_arg(name))
            .arg(number_arg(leak(format!("{name}-min"))))
            .arg(number_arg(leak(format!("{name}-max"))))
            .arg(
                Arg::new(leak(format!("{name}-steps")))
                    .long(leak(format!("{name}-steps")))
                    .value_parser(value_parser!(usize))
                    .hide(true),
            );
    }
    let verify = Command::new("verify")
        .about("run a verification suite")
        .arg(
            Arg::new("suite")
                .required(true)
                .help(leak(format!("one of {}", verify::SUITES.join(", ")))),
        )
        .arg(
            Arg::new("samples")
                .long("samples")
                .value_parser(value_parser!(usize))
                .help("sample pairs per K for the randomized targets"),
        )
        .arg(number_arg("tol").help("strictness buffer for margins"))
        .arg(
            Arg::new("seed")
                .long("seed")
                .value_parser(value_parser!(u64)),
        )
        .arg(number_arg("r-min"))
        .arg(number_arg("r-max"))
        .arg(
            Arg::new("steps")
                .long("steps")
                .value_parser(value_parser!(usize))
                .help("points in the radius grid"),
        )
        .arg(
            Arg::new("k")
                .long("k")
                .value_parser(value_parser!(f64))
                .value_delimiter(',')
                .help("comma-separated K values"),
        )
        .arg(
            Arg::new("a")
                .long("a")
                .value_parser(value_parser!(f64))
                .value_delimiter(',')
                .help("comma-separated a values"),
        )
        .arg(
            Arg::new("report")
                .long("report")
                .value_parser(value_parser!(PathBuf))
                .help("write the JSON report array to this file"),
        )
        .arg(
            Arg::new("omit-timing")
                .long("omit-timing")
                .action(ArgAction::SetTrue)
                .help("write wall_time_ms as 0 so reports are byte-reproducible"),
        )
        .arg(
            Arg::new("format")
                .long("format")
                .value_parser(["text", "json"])
                .default_value("text"),
        )
        .after_help(leak(format!(
            "Per-target reports are also written to ${REPORT_DIR_ENV}/<target>.json when it is set."
        )));
    Command::new("gft")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Distortion functions and explicit Schottky, Schwarz and Mori bounds")
        .subcommand_required(true)
        .subcommand(eval)
        .subcommand(table)
        .subcommand(verify)
        .subcommand(
            Command::new("constants")
                .about("print named constants")
                .arg(format_arg()),
        )
}

fn output_format(m: &ArgMatches) -> OutputFormat {
    // restricted by the value parser
    m.get_one::<String>("format").unwrap().parse().unwrap()
}

fn base_input(m: &ArgMatches) -> Input {
    Input {
        values: BTreeMap::new(),
        variant: m.get_one::<String>("variant").cloned(),
        literal: m.get_flag("literal"),
    }
}

fn given_numbers(m: &ArgMatches) -> BTreeMap<&'static str, f64> {
    functions::all_param_names()
        .into_iter()
        .filter_map(|n| m.get_one::<f64>(n).map(|&v| (n, v)))
        .collect()
}

fn reject_foreign(f: &Function, names: impl Iterator<Item = &'static str>) -> Result<(), String> {
    for n in names {
        if !f.params.iter().any(|p| p.name == n) {
            return Err(format!("usage error: {} does not take --{n}", f.name));
        }
    }
    Ok(())
}

fn cmd_eval(m: &ArgMatches) -> Outcome {
    let f =
        functions::lookup(m.get_one::<String>("function").unwrap()).map_err(|e| e.to_string())?;
    let given = given_numbers(m);
    reject_foreign(f, given.keys().copied())?;
    let mut input = base_input(m);
    input.values = f.bind(&given);
    let out = f.eval(&input).map_err(|e| e.to_string())?;
    let text = match output_format(m) {
        OutputFormat::Text => match &out {
            Output::Scalar(v) => format!("{}\n", fmt_num(*v)),
            Output::Fields(fields) => fields
                .iter()
                .map(|(n, v)| format!("{n} {}\n", fmt_num(*v)))
                .collect(),
        },
        OutputFormat::Csv => row_table(&input, &out).render(OutputFormat::Csv),
        OutputFormat::Json => {
            let mut obj = Map::new();
            obj.insert("function".into(), Value::String(f.name.into()));
            for (n, v) in &input.values {
                obj.insert((*n).into(), json_num(*v));
            }
            for (n, v) in out.columns() {
                obj.insert(n, json_num(v));
            }
            json_text(&Value::Object(obj))
        }
    };
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn row_table(input: &Input, out: &Output) -> Table {
    let cols = out.columns();
    Table {
        header: input
            .values
            .keys()
            .map(|s| s.to_string())
            .chain(cols.iter().map(|(n, _)| n.clone()))
            .collect(),
        rows: vec![input
            .values
            .values()
            .copied()
            .chain(cols.iter().map(|(_, v)| *v))
            .collect()],
    }
}

struct Axis {
    name: &'static str,
    values: Vec<f64>,
}

fn axes(f: &Function, m: &ArgMatches) -> Result<Vec<Axis>, String> {
    let mut out = Vec::new();
    for name in functions::all_param_names() {
        let lo = m.get_one::<f64>(&format!("{name}-min")).copied();
        let hi = m.get_one::<f64>(&format!("{name}-max")).copied();
        let (lo, hi) = match (lo, hi) {
            (None, None) => continue,
            (Some(lo), Some(hi)) => (lo, hi),
            _ => {
                return Err(format!(
                    "usage error: --{name}-min and --{name}-max go together"
                ))
            }
        };
        if !f.params.iter().any(|p| p.name == name) {
            return Err(format!("usage error: {} does not take --{name}", f.name));
        }
        if m.get_one::<f64>(name).is_some() {
            return Err(format!("usage error: --{name} is both fixed and swept"));
        }
        let steps = m
            .get_one::<usize>(&format!("{name}-steps"))
            .or_else(|| m.get_one::<usize>("steps"))
            .copied()
            .ok_or_else(|| format!("usage error: --steps is required for axis {name}"))?;
        if steps == 0 {
            return Err("usage error: --steps must be at least 1".into());
        }
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(format!("usage error: axis {name} needs finite bounds"));
        }
        let values = if steps == 1 {
            vec![lo]
        } else {
            (0..steps)
                .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
                .collect()
        };
        out.push(Axis { name, values });
    }
    // axis order follows the function's parameter order
    out.sort_by_key(|a| f.params.iter().position(|p| p.name == a.name));
    match out.len() {
        1 | 2 => Ok(out),
        0 => Err("usage error: table needs one or two axes given as --X-min/--X-max".into()),
        n => Err(format!(
            "usage error: table takes at most two axes, got {n}"
        )),
    }
}

fn cmd_table(m: &ArgMatches) -> Outcome {
    let f =
        functions::lookup(m.get_one::<String>("function").unwrap()).map_err(|e| e.to_string())?;
    let given = given_numbers(m);
    reject_foreign(f, given.keys().copied())?;
    let axes = axes(f, m)?;
    let points: Vec<Vec<(&'static str, f64)>> = match axes.as_slice() {
        [x] => x.values.iter().map(|&v| vec![(x.name, v)]).collect(),
        [x, y] => x
            .values
            .iter()
            .flat_map(|&u| {
                y.values
                    .iter()
                    .map(move |&v| vec![(x.name, u), (y.name, v)])
            })
            .collect(),
        _ => unreachable!("axes() admits one or two"),
    };
    let mut table = Table::default();
    for point in points {
        let mut fixed = given.clone();
        fixed.extend(point.iter().copied());
        let mut input = base_input(m);
        input.values = f.bind(&fixed);
        let out = f.eval(&input).map_err(|e| {
            let at: Vec<String> = point
                .iter()
                .map(|(n, v)| format!("{n}={}", fmt_num(*v)))
                .collect();
            format!("{e} (at {})", at.join(", "))
        })?;
        let row = row_table(&input, &out);
        if table.header.is_empty() {
            table.header = row.header;
        } else if table.header != row.header {
            return Err("usage error: output columns change across the grid".into());
        }
        table.rows.extend(row.rows);
    }
    print!("{}", table.render(output_format(m)));
    Ok(ExitCode::SUCCESS)
}

fn overrides(m: &ArgMatches) -> SweepOverrides {
    let lo = m.get_one::<f64>("r-min").copied();
    let hi = m.get_one::<f64>("r-max").copied();
    let steps = m.get_one::<usize>("steps").copied();
    let r_grid = (lo.is_some() || hi.is_some() || steps.is_some()).then(|| {
        let (dlo, dhi, dn) = verify::DEFAULT_R_GRID;
        (lo.unwrap_or(dlo), hi.unwrap_or(dhi), steps.unwrap_or(dn))
    });
    SweepOverrides {
        r_grid,
        k_values: m.get_many::<f64>("k").map(|v| v.copied().collect()),
        a_values: m.get_many::<f64>("a").map(|v| v.copied().collect()),
        tol: m.get_one::<f64>("tol").copied(),
        seed: m.get_one::<u64>("seed").copied(),
        samples: m.get_one::<usize>("samples").copied(),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn cmd_verify(m: &ArgMatches) -> Outcome {
    let suite = m.get_one::<String>("suite").unwrap();
    let mut reports = verify::run_suite(suite, &overrides(m)).map_err(|e| e.to_string())?;
    if m.get_flag("omit-timing") {
        reports = reports
            .into_iter()
            .map(InequalityReport::without_timing)
            .collect();
    }
    if let Some(path) = m.get_one::<PathBuf>("report") {
        write_file(path, &pretty(&reports))?;
    }
    if let Some(dir) = std::env::var_os(REPORT_DIR_ENV).filter(|d| !d.is_empty()) {
        let dir = PathBuf::from(dir);
        std::fs::create_dir_all(&dir)
            .map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
        for rep in &reports {
            write_file(&dir.join(format!("{}.json", rep.target)), &pretty(rep))?;
        }
        eprintln!("wrote {} reports to {}", reports.len(), dir.display());
    }
    match m.get_one::<String>("format").map(String::as_str) {
        Some("json") => print!("{}", pretty(&reports)),
        _ => {
            for rep in &reports {
                println!("{}", rep.summary_line());
            }
        }
    }
    if verify::suite_status(&reports) == Status::Fail {
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn pretty<T: ?Sized + serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn constants() -> Vec<(&'static str, f64, &'static str)> {
    let half = GeneralizedParam::HALF;
    // 0.25 lies in (0, 1/2]
    let quarter = GeneralizedParam::new(0.25).unwrap();
    vec![
        ("landau", sf::landau_constant(), "Gamma(1/4)^4 / (4 pi^2)"),
        ("euler_gamma", sf::euler_gamma(), "lim (H_n - ln n)"),
        ("zeta3", sf::apery_zeta3(), "sum of n^-3"),
        ("fourteen_zeta3", sf::fourteen_zeta3(), "14 zeta(3)"),
        (
            "bloch_lower",
            bounds::BLOCH_LOWER,
            "sqrt(3)/4, default lower bound for the Bloch constant",
        ),
        (
            "lattice_gap_d",
            bounds::LATTICE_GAP_D,
            "grid-search maximum at resolution 1e-3",
        ),
        (
            "ramanujan_R(0.5)",
            sf::ramanujan_r(half),
            "-2 gamma - psi(a) - psi(1-a) = ln 16",
        ),
        (
            "ramanujan_R(0.25)",
            sf::ramanujan_r(quarter),
            "-2 gamma - psi(a) - psi(1-a)",
        ),
        (
            "ramanujan_R_literal(0.5)",
            sf::ramanujan_r_literal(half),
            "2 gamma - psi(a) - psi(1-a)",
        ),
    ]
}

fn cmd_constants(m: &ArgMatches) -> Outcome {
    let list = constants();
    let text = match output_format(m) {
        OutputFormat::Text => {
            let w = list.iter().map(|(n, _, _)| n.len()).max().unwrap_or(0);
            list.iter()
                .map(|(n, v, note)| format!("{n:<w$}  {:<20}  {note}\n", fmt_num(*v)))
                .collect()
        }
        OutputFormat::Csv => render::csv_text(
            &["name".into(), "value".into(), "provenance".into()],
            list.iter()
                .map(|(n, v, note)| vec![n.to_string(), fmt_num(*v), note.to_string()]),
        ),
        OutputFormat::Json => {
            let mut obj = Map::new();
            let mut prov = Map::new();
            for (n, v, note) in &list {
                obj.insert(n.to_string(), json_num(*v));
                prov.insert(n.to_string(), Value::String(note.to_string()));
            }
            obj.insert("provenance".into(), Value::Object(prov));
            json_text(&Value::Object(obj))
        }
    };
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}
