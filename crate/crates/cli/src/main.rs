use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncbeil::cyclic::{cyclic_tables, default_columns, periodicity_check, PeriodicityVerdict};
use ncbeil::fdalgebra::{check_algebra, factor_data, parse_preset, preset, preset_catalog};
use ncbeil::hodge::{abs_hodge_dims, deligne_dims, deligne_dims_raw, make_tate, projective_space_complex, spec_field};
use ncbeil::verify::{verify_triangle, MiddlePath, Verdict, VerifyOptions};
use ncbeil::{Error, FdAlgebra, HodgeComplex};

#[derive(Parser, Debug)]
#[command(
    name = "ncbeil",
    version,
    about = "Exact Hodge, cyclic and K-rank computations for finite-dimensional algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Algebra spec file (JSON with dim, unit, table).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Preset name, see `ncbeil presets`.
    #[arg(long, global = true)]
    preset: Option<String>,
    #[arg(long, global = true, default_value_t = 9)]
    imax: i32,
    #[arg(long, global = true, default_value_t = 6)]
    truncation: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = PathArg::Both)]
    path: PathArg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Radical, semisimple quotient and simple factors.
    Analyze,
    /// Rank bookkeeping of the regulator triangle.
    Verify,
    /// Deligne and absolute Hodge dims by twist and degree.
    Hodge,
    /// HH, HC, HC⁻ and HP tables.
    Cyclic,
    /// List the preset names.
    Presets,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PathArg {
    Reduced,
    Direct,
    Both,
}

impl From<PathArg> for MiddlePath {
    fn from(p: PathArg) -> Self {
        match p {
            PathArg::Reduced => MiddlePath::Reduced,
            PathArg::Direct => MiddlePath::Direct,
            PathArg::Both => MiddlePath::Both,
        }
    }
}

const HODGE_PRESETS: [(&str, &str); 3] = [
    ("tate:1", "the Tate object ℝ(j)"),
    ("spec_field:1,1", "C(X_an) for Spec of a number field with signature (r1, r2)"),
    ("projective_space:2", "⊕ ℝ(−i)[−2i] for 0 ≤ i ≤ n"),
];

/// Outcome of a subcommand: the rendered output and whether it verified.
struct Output {
    json: Value,
    text: String,
    failed: bool,
}

fn load_algebra(cli: &Cli) -> Result<FdAlgebra, Error> {
    let a = match (&cli.input, &cli.preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            FdAlgebra::from_json(&text)?
        }
        (None, Some(name)) => preset(&parse_preset(name)?)?.with_name(name.clone()),
        (Some(_), Some(_)) => return Err(Error::InvalidInput("give either --input or --preset, not both".into())),
        (None, None) => {
            return Err(Error::InvalidInput("an algebra is required: --input FILE or --preset NAME".into()))
        }
    };
    let check = check_algebra(&a);
    if !check.passed() {
        return Err(Error::InvalidInput(format!("not a unital associative algebra: {check}")));
    }
    Ok(a)
}

fn analyze(cli: &Cli) -> Result<Output, Error> {
    let a = load_algebra(cli)?;
    let w = factor_data(&a, cli.seed)?;
    let mut text = format!(
        "algebra {} (dim {})\nradical dim {}\nsemisimple quotient dim {}\ncenter dim {}\n{} simple factor(s):\n",
        a.name(),
        a.dim(),
        w.radical_dim(),
        w.quotient.dim(),
        w.center_dim(),
        w.factors.len()
    );
    for (i, f) in w.factors.iter().enumerate() {
        let m = f.m.map_or_else(|| "?".to_string(), |m| m.to_string());
        text += &format!(
            "  [{i}] dim {}, center {} (degree {}, r1 = {}, r2 = {}), m = {m}\n",
            f.dim_q, f.center_minpoly, f.d, f.r1, f.r2
        );
    }
    Ok(Output {
        json: json!({"algebra": {"name": a.name(), "dim": a.dim()}, "wedderburn": w.to_json()}),
        text,
        failed: false,
    })
}

fn verify(cli: &Cli) -> Result<Output, Error> {
    let a = load_algebra(cli)?;
    let w = factor_data(&a, cli.seed)?;
    let opts = VerifyOptions { imax: cli.imax, truncation: cli.truncation, seed: cli.seed, path: cli.path.into() };
    let r = verify_triangle(&a, &w, &opts)?;
    Ok(Output { json: r.to_json(), text: r.to_string(), failed: r.verdict == Verdict::Fail })
}

fn hodge_object(name: &str) -> Result<HodgeComplex, Error> {
    let (kind, arg) = name.split_once(':').unwrap_or((name, ""));
    let int = |s: &str| -> Result<i64, Error> {
        s.trim().parse().map_err(|_| Error::InvalidInput(format!("{kind} expects integers, got {s:?}")))
    };
    match kind {
        "tate" => Ok(make_tate(int(arg)? as i32)),
        "spec_field" => {
            let (r1, r2) = arg.split_once(',').ok_or_else(|| Error::InvalidInput("spec_field:r1,r2".into()))?;
            let (r1, r2) = (int(r1)?, int(r2)?);
            if r1 < 0 || r2 < 0 {
                return Err(Error::InvalidInput("signature must be non-negative".into()));
            }
            spec_field(r1 as usize, r2 as usize)
        }
        "projective_space" => {
            let n = int(arg)?;
            if !(0..=16).contains(&n) {
                return Err(Error::InvalidInput("projective_space:n expects 0 ≤ n ≤ 16".into()));
            }
            Ok(projective_space_complex(n as usize))
        }
        _ => {
            // an algebra preset stands for the point-like object of its centers
            let a = preset(&parse_preset(name)?)?;
            let w = factor_data(&a, 0)?;
            w.factors
                .iter()
                .map(|f| spec_field(f.r1, f.r2))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .reduce(|x, y| x.direct_sum(&y))
                .ok_or_else(|| Error::InvalidInput("algebra without simple factors".into()))
        }
    }
}

fn hodge(cli: &Cli) -> Result<Output, Error> {
    let name = cli.preset.as_deref().ok_or_else(|| Error::InvalidInput("hodge needs --preset NAME".into()))?;
    let v = hodge_object(name)?;
    let degrees = v.lo() - 1..=v.hi() + 2;
    let mut rows = Vec::new();
    let mut text = format!("{}\n{:>3} {:>3} {:>8} {:>8} {:>10}\n", v.name(), "j", "i", "raw", "ι-fixed", "abs-hodge");
    for j in -2..=4 {
        let raw = deligne_dims_raw(&v, j, degrees.clone())?;
        let fixed = deligne_dims(&v, j, degrees.clone())?;
        let abs = if v.weight().is_some() { Some(abs_hodge_dims(&v, j, degrees.clone())?) } else { None };
        for i in degrees.clone() {
            let ah = abs.as_ref().map(|t| t[&i]);
            rows.push(json!({"j": j, "i": i, "raw": raw[&i], "iota_fixed": fixed[&i], "abs_hodge": ah}));
            let ah = ah.map_or_else(|| "-".to_string(), |x| x.to_string());
            text += &format!("{j:>3} {i:>3} {:>8} {:>8} {ah:>10}\n", raw[&i], fixed[&i]);
        }
    }
    Ok(Output { json: json!({"object": v.name(), "rows": rows}), text, failed: false })
}

fn cyclic(cli: &Cli) -> Result<Output, Error> {
    let a = load_algebra(cli)?;
    let n = cli.truncation;
    if n < 2 {
        return Err(Error::InvalidInput("cyclic needs --truncation ≥ 2".into()));
    }
    let (hh, t) = cyclic_tables(&a, n, default_columns(n))?;
    let period = match periodicity_check(&t) {
        PeriodicityVerdict::Pass { checked } => format!("PASS on {checked:?}"),
        PeriodicityVerdict::Fail { degree } => format!("FAIL at degree {degree}"),
        PeriodicityVerdict::Inconclusive => "INCONCLUSIVE".to_string(),
    };
    let text = format!(
        "algebra {} (dim {}), truncation {n}, {} columns; '?' marks entries outside the stable range\n{hh}\n{}\n{}\n{}\nperiodicity: {period}\n",
        a.name(),
        a.dim(),
        t.columns,
        t.hc,
        t.hc_minus,
        t.hp
    );
    let json = json!({
        "algebra": {"name": a.name(), "dim": a.dim()},
        "HH": hh.to_json(),
        "tables": t.to_json(),
        "periodicity": period,
    });
    Ok(Output { json, text, failed: matches!(periodicity_check(&t), PeriodicityVerdict::Fail { .. }) })
}

fn presets() -> Output {
    let mut text = String::from("algebra presets:\n");
    let mut algebras = Vec::new();
    for (name, what) in preset_catalog() {
        text += &format!("  {name:<32} {what}\n");
        algebras.push(json!({"name": name, "description": what}));
    }
    text += "hodge presets (also accepts any algebra preset):\n";
    let mut hodge = Vec::new();
    for (name, what) in HODGE_PRESETS {
        text += &format!("  {name:<32} {what}\n");
        hodge.push(json!({"name": name, "description": what}));
    }
    Output { json: json!({"algebra": algebras, "hodge": hodge}), text, failed: false }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Unsupported(_) => "unsupported",
        Error::EmptyVariety => "empty_variety",
        Error::SearchFailure(_) => "search_failure",
        _ => "invalid_input",
    }
}

fn report_error(json_mode: bool, kind: &str, message: &str) -> ExitCode {
    if json_mode {
        println!("{}", json!({"error": {"kind": kind, "message": message}}));
    } else {
        eprintln!("error: {message}");
    }
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let args: Vec<String> = std::env::args().collect();
            let json_mode = args.windows(2).any(|w| w[0] == "--format" && w[1] == "json")
                || args.iter().any(|a| a == "--format=json");
            return report_error(json_mode, "usage", e.to_string().trim());
        }
    };
    let result = match cli.command {
        Command::Analyze => analyze(&cli),
        Command::Verify => verify(&cli),
        Command::Hodge => hodge(&cli),
        Command::Cyclic => cyclic(&cli),
        Command::Presets => Ok(presets()),
    };
    match result {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => print!("{}{}", out.text, if out.text.ends_with('\n') { "" } else { "\n" }),
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => report_error(cli.format == Format::Json, error_kind(&e), &e.to_string()),
    }
}
