use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tauforge::partitions::{enumerate, enumerate_up_to, Partition};
use tauforge::quantumdim::{w_one_checked, w_table_json, w_two_checked};
use tauforge::scalars::{parse_rational, rational_to_string, ExactQ, QContext, Rational, RootQ, Scalar};
use tauforge::symfun::{mn_character, schur_in_p};
use tauforge::tau::{conifold_tau, kp_tau_series, toda_tau_sequence, toric_tau, TauSeries, TodaSequence};
use tauforge::verify::{parse_suites, report_json, run_suite, Params};

/// Exact tables, tau series and verification reports for one- and
/// two-partition Hodge series.
#[derive(Parser, Debug)]
#[command(name = "tauforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Partition as comma-separated parts, e.g. 3,1
    #[arg(long, global = true)]
    partition: Option<String>,
    /// Second partition (nu in W_{mu,nu}, cycle type for char)
    #[arg(long, global = true)]
    partition2: Option<String>,
    /// The parameter r as a/b
    #[arg(long, global = true, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, global = true, default_value_t = 4)]
    degree: u32,
    #[arg(long, global = true, default_value_t = 10)]
    cutoff: u32,
    #[arg(long = "max-size", global = true, default_value_t = 6)]
    max_size: u32,
    /// v-adic order for the Fock evaluation of W_{nu+,nu-}
    #[arg(long, global = true, default_value_t = 8)]
    order: i64,
    /// Suite name, comma list, or all
    #[arg(long, global = true, default_value = "all")]
    suite: String,
    /// Lowest and highest charge for tau-toda
    #[arg(long = "n-min", global = true, default_value_t = -1, allow_hyphen_values = true)]
    n_min: i64,
    #[arg(long = "n-max", global = true, default_value_t = 1, allow_hyphen_values = true)]
    n_max: i64,
    /// Write the output to this file instead of standard output
    #[arg(long, global = true)]
    json: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// W_mu (all |mu| <= max-size without --partition)
    W,
    /// W_{mu,nu} (all |mu|+|nu| <= max-size without --partition)
    Ww,
    /// Symmetric-group characters chi_nu(mu)
    Char,
    /// One-partition KP tau series
    TauKp,
    /// Two-partition 2-Toda tau sequence
    TauToda,
    /// The r = -1 series
    Conifold,
    /// The two-partition series with both framings trivial
    Toric,
    /// Run verification suites
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::W => "w",
            Command::Ww => "ww",
            Command::Char => "char",
            Command::TauKp => "tau-kp",
            Command::TauToda => "tau-toda",
            Command::Conifold => "conifold",
            Command::Toric => "toric",
            Command::Verify => "verify",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

/// Failure modes, mapped to exit codes 2 and 1.
enum Failure {
    Config(String),
    Check(String),
}

struct Output {
    payload: Value,
    pass: bool,
}

fn config_json(cli: &Cli) -> Value {
    json!({
        "command": cli.command.name(),
        "partition": cli.partition,
        "partition2": cli.partition2,
        "r": cli.r,
        "degree": cli.degree,
        "cutoff": cli.cutoff,
        "max_size": cli.max_size,
        "order": cli.order,
        "suite": cli.suite,
        "n_min": cli.n_min,
        "n_max": cli.n_max,
        "format": match cli.format { Format::Json => "json", Format::Text => "text" },
    })
}

fn partition(arg: &Option<String>) -> Result<Option<Partition>, Failure> {
    arg.as_deref().map(Partition::parse).transpose().map_err(|e| Failure::Config(e.to_string()))
}

fn r_value(cli: &Cli) -> Result<Rational, Failure> {
    let s = cli.r.as_deref().ok_or_else(|| Failure::Config("--r is required".into()))?;
    parse_rational(s).map_err(|e| Failure::Config(format!("--r: {e}")))
}

fn check<T, E: std::fmt::Display>(x: Result<T, E>) -> Result<T, Failure> {
    x.map_err(|e| Failure::Check(e.to_string()))
}

fn w_command(cli: &Cli, config: Value) -> Result<Output, Failure> {
    let rows = match partition(&cli.partition)? {
        Some(mu) => vec![(mu.clone(), Partition::empty(), check(w_one_checked(&mu))?.value)],
        None => enumerate_up_to(cli.max_size)
            .into_iter()
            .map(|mu| Ok((mu.clone(), Partition::empty(), check(w_one_checked(&mu))?.value)))
            .collect::<Result<_, Failure>>()?,
    };
    let table: Vec<Value> = rows.iter().map(|(mu, _, w)| json!({ "mu": mu.to_json(), "W": w.to_json() })).collect();
    Ok(Output {
        payload: json!({ "config": config, "routes": ["product", "principal-spec", "hook-content"], "table": table }),
        pass: true,
    })
}

fn ww_command(cli: &Cli, config: Value) -> Result<Output, Failure> {
    let rows = match partition(&cli.partition)? {
        Some(mu) => {
            let nu = partition(&cli.partition2)?.unwrap_or_default();
            vec![(mu.clone(), nu.clone(), check(w_two_checked(&mu, &nu))?.value)]
        }
        None => {
            let mut rows = Vec::new();
            for mu in enumerate_up_to(cli.max_size) {
                for nu in enumerate_up_to(cli.max_size - mu.size()) {
                    rows.push((mu.clone(), nu.clone(), check(w_two_checked(&mu, &nu))?.value));
                }
            }
            rows
        }
    };
    Ok(Output {
        payload: json!({ "config": config, "routes": ["key-sum", "E-alphabet"], "table": w_table_json(&rows) }),
        pass: true,
    })
}

fn char_command(cli: &Cli, config: Value) -> Result<Output, Failure> {
    let nus = match partition(&cli.partition)? {
        Some(nu) => vec![nu],
        None => enumerate(cli.max_size),
    };
    let mut table = Vec::new();
    for nu in &nus {
        let mus = match partition(&cli.partition2)? {
            Some(mu) => vec![mu],
            None => enumerate(nu.size()),
        };
        for mu in mus {
            let chi = mn_character(nu, &mu).map_err(|e| Failure::Config(e.to_string()))?;
            table.push(json!({ "nu": nu.to_json(), "mu": mu.to_json(), "chi": chi }));
        }
    }
    let mut payload = json!({ "config": config, "table": table });
    if let [nu] = nus.as_slice() {
        payload["schur_in_p"] = schur_in_p(nu).to_json();
    }
    Ok(Output { payload, pass: true })
}

fn with_config<T: Scalar>(series: &TauSeries<T>, config: Value, regime: &str) -> Value {
    let mut v = series.to_json();
    v["config"] = config;
    v["regime"] = json!(regime);
    v
}

/// Exact `v` when every exponent `(r+1) kappa / 2` is a half-integer.
fn kp_command(cli: &Cli, config: Value) -> Result<Output, Failure> {
    let r = r_value(cli)?;
    let exact = (&r * Rational::from_integer(2.into())).is_integer();
    let payload = if exact {
        with_config(&check(kp_tau_series(&r, cli.degree, &ExactQ))?, config, &ExactQ.describe())
    } else {
        with_config(&check(kp_tau_series(&r, cli.degree, &RootQ))?, config, &RootQ.describe())
    };
    Ok(Output { payload, pass: true })
}

fn sequence_json<T: Scalar>(seq: &TodaSequence<T>, config: Value, regime: &str) -> Value {
    let taus: Vec<Value> = seq.taus.iter().map(|(n, t)| json!({ "n": n, "series": t.to_json() })).collect();
    json!({
        "config": config,
        "regime": regime,
        "a": rational_to_string(&seq.shape.a),
        "b": rational_to_string(&seq.shape.b),
        "taus": taus,
    })
}

fn toda_command(cli: &Cli, config: Value) -> Result<Output, Failure> {
    let r = r_value(cli)?;
    if r == Rational::from_integer(0.into()) {
        return Err(Failure::Config("--r must be nonzero".into()));
    }
    if cli.n_min > cli.n_max {
        return Err(Failure::Config("--n-min exceeds --n-max".into()));
    }
    let seq = check(toda_tau_sequence(&r, cli.n_min, cli.n_max, cli.degree, &RootQ))?;
    Ok(Output { payload: sequence_json(&seq, config, &RootQ.describe()), pass: true })
}

fn verify_command(cli: &Cli, config: Value) -> Result<Output, Failure> {
    let suites = parse_suites(&cli.suite).map_err(|e| Failure::Config(e.to_string()))?;
    let params = Params { max_size: cli.max_size, degree: cli.degree, cutoff: cli.cutoff, order: cli.order };
    let reports: Vec<_> = suites.iter().map(|s| run_suite(s, &params).expect("known suite")).collect();
    let payload = report_json(config, &reports);
    let pass = reports.iter().all(|r| r.pass());
    Ok(Output { payload, pass })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let config = config_json(cli);
    match cli.command {
        Command::W => w_command(cli, config),
        Command::Ww => ww_command(cli, config),
        Command::Char => char_command(cli, config),
        Command::TauKp => kp_command(cli, config),
        Command::TauToda => toda_command(cli, config),
        Command::Conifold => {
            let payload = with_config(&check(conifold_tau(cli.degree, &ExactQ))?, config, &ExactQ.describe());
            Ok(Output { payload, pass: true })
        }
        Command::Toric => {
            let payload = with_config(&check(toric_tau(cli.degree, &ExactQ))?, config, &ExactQ.describe());
            Ok(Output { payload, pass: true })
        }
        Command::Verify => verify_command(cli, config),
    }
}

/// Indented `key: value` rendering of a JSON payload.
fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_text(x, indent + 1, out);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar_text(x));
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    let _ = writeln!(out, "{pad}- {}", scalar_text(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render_text(x, indent + 1, out);
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{}", scalar_text(v));
        }
    }
}

/// `[[e, "c"], ...]` as `c x^e + ...`.
fn poly_text(terms: &[Value], x: &str) -> Option<String> {
    let mut out = String::new();
    for t in terms {
        let e = t.get(0)?.as_i64()?;
        let c = t.get(1)?.as_str()?;
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, c),
        };
        let var = match e {
            0 => String::new(),
            1 => x.into(),
            _ => format!("{x}^{e}"),
        };
        let body = match (mag, var.is_empty()) {
            (m, true) => m.to_string(),
            ("1", false) => var,
            (m, false) => format!("{m} {var}"),
        };
        if out.is_empty() {
            out = if neg { format!("-{body}") } else { body };
        } else {
            let _ = write!(out, " {} {body}", if neg { "-" } else { "+" });
        }
    }
    Some(if out.is_empty() { "0".into() } else { out })
}

/// `{"num": .., "den": ..}` (with an optional `root`) as a fraction.
fn ratfun_text(v: &Value) -> Option<String> {
    let map = v.as_object()?;
    let root = map.get("root").and_then(Value::as_u64);
    let x = if root.is_some() { "w" } else { "v" };
    let num = poly_text(map.get("num")?.as_array()?, x)?;
    let den = poly_text(map.get("den")?.as_array()?, x)?;
    let frac = if den == "1" { num } else { format!("({num})/({den})") };
    Some(match root {
        Some(m) => format!("{frac}, w = v^(1/{m})"),
        None => frac,
    })
}

fn is_flat(v: &Value) -> bool {
    if ratfun_text(v).is_some() {
        return true;
    }
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    if let Some(s) = ratfun_text(v) {
        return s;
    }
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("({})", items.iter().map(scalar_text).collect::<Vec<_>>().join(",")),
        other => other.to_string(),
    }
}

fn emit(cli: &Cli, v: &Value) -> Result<(), String> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Text => {
            let mut s = String::new();
            render_text(v, 0, &mut s);
            s
        }
    };
    match &cli.json {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn error_json(kind: &str, message: &str, config: Value) -> Value {
    json!({ "schema": "tauforge.report.v1", "config": config, "pass": false, "error": { "kind": kind, "message": message } })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (payload, code) = match run(&cli) {
        Ok(out) => {
            let code = if out.pass { 0 } else { 1 };
            (out.payload, code)
        }
        Err(Failure::Config(m)) => {
            eprintln!("{}", error_json("invalid-config", &m, config_json(&cli)));
            return ExitCode::from(2);
        }
        Err(Failure::Check(m)) => (error_json("check-failed", &m, config_json(&cli)), 1),
    };
    if let Err(e) = emit(&cli, &payload) {
        eprintln!("{}", error_json("io", &e, config_json(&cli)));
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
