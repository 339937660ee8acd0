use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use zeta_timechange::characterization::{
    check_divisibility_properties, membership_test, preimage_structure, validate_spec,
    PreimageStructure,
};
use zeta_timechange::compiler::compile;
use zeta_timechange::json::{self as j, CompileJson, SequenceJson, SeriesJson, WordJson};
use zeta_timechange::monoid::{equal_upto, normal_form, random_word};
use zeta_timechange::realizable::check_realizable;
use zeta_timechange::report::gp_shift_report;
use zeta_timechange::series::{is_zeta, time_change_fix, zeta_from_fix};
use zeta_timechange::{BuiltinMap, Error, FixSource, Natural, TimeChange, Word};

/// Realizability, zeta series and zeta-preserving time-changes.
#[derive(Parser)]
#[command(name = "ztc", version)]
struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a fixed-point sequence for the sign and Dold conditions.
    RealizableCheck { file: PathBuf },
    /// Zeta series of a fixed-point source.
    ZetaFromFix {
        /// geometric:B | reg:K | const:C | table:FILE
        source: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Check whether a series is a zeta-function prefix.
    ZetaCheck { file: PathBuf },
    /// Time-change a source by a map and check the result.
    Apply {
        map: String,
        source: String,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
    },
    /// Evaluate a map at n or on a range A..B.
    MapEval { map: String, at: String },
    /// Evaluate a word at n or on a range A..B.
    WordEval { file: PathBuf, at: String },
    /// Rewrite a word into g's-then-h's form.
    WordNormalForm { file: PathBuf },
    /// Validate an exponent specification.
    SpecValidate { file: PathBuf },
    /// Compile an exponent specification to a word.
    SpecCompile { file: PathBuf },
    /// Try to refute membership of a map by time-changing single orbits.
    MembershipTest {
        map: String,
        #[arg(long, default_value_t = 24)]
        max_k: u64,
        #[arg(long, default_value_t = 200)]
        max_n: u64,
    },
    /// Shape of {n <= N : k | f(n)}.
    Preimage {
        map: String,
        k: u64,
        #[arg(long, default_value_t = 1000)]
        max_n: u64,
    },
    /// Check the divisibility consequences of membership on n <= N.
    DivisibilityCheck {
        map: String,
        #[arg(long, default_value_t = 100)]
        max_n: u64,
    },
    /// Compare the g_p time-change of the 2-shift with closed forms.
    GpReport {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
    /// Look for random words whose normal forms differ but agree on n <= N.
    WordSearch {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: u64,
        #[arg(long, default_value_t = 6)]
        length: usize,
        #[arg(long, default_value_t = 5)]
        p_max: u64,
        #[arg(long, default_value_t = 3)]
        t_max: u32,
        #[arg(long, default_value_t = 1000)]
        max_n: u64,
    },
}

/// A result plus whether it is a positive verdict.
struct Output {
    value: Value,
    pass: bool,
}

fn pass(value: Value) -> Output {
    Output { value, pass: true }
}

fn verdict(value: Value, pass: bool) -> Output {
    Output { value, pass }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn parse_map(s: &str) -> Result<BuiltinMap, Error> {
    if let Some(path) = s.strip_prefix("word:") {
        return Ok(BuiltinMap::Word(j::parse_word(&read(Path::new(path))?)?));
    }
    if let Some(path) = s.strip_prefix("spec:") {
        let spec = j::parse_spec(&read(Path::new(path))?)?;
        spec.validate()?;
        return Ok(BuiltinMap::Spec(spec));
    }
    BuiltinMap::parse(s)
}

fn parse_source(s: &str) -> Result<FixSource, Error> {
    let num = |x: &str| {
        x.parse::<Natural>()
            .map_err(|_| Error::Malformed(format!("bad number `{x}` in source `{s}`")))
    };
    match s.split_once(':') {
        Some(("geometric", b)) => Ok(FixSource::Geometric(num(b)?)),
        Some(("const", c)) => Ok(FixSource::Constant(num(c)?)),
        Some(("reg", k)) => {
            let k: u64 = k
                .parse()
                .ok()
                .filter(|&k| k > 0)
                .ok_or_else(|| Error::Malformed(format!("bad orbit length in `{s}`")))?;
            Ok(FixSource::Reg(k))
        }
        Some(("table", path)) => Ok(FixSource::Table(j::parse_sequence(&read(Path::new(
            path,
        ))?)?)),
        _ => Err(Error::Malformed(format!("unknown source `{s}`"))),
    }
}

/// `n` or `a..b` (inclusive).
fn parse_range(s: &str) -> Result<Vec<u64>, Error> {
    let num = |x: &str| {
        x.trim()
            .parse::<u64>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| {
                Error::Malformed(format!(
                    "bad argument `{s}`; expected n or a..b with n >= 1"
                ))
            })
    };
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?..=num(b)?).collect()),
        None => Ok(vec![num(s)?]),
    }
}

fn eval_all<F: TimeChange + ?Sized>(f: &F, at: &str) -> Result<Value, Error> {
    let values = parse_range(at)?
        .into_iter()
        .map(|n| f.apply(&Natural::from(n)).map(|v| v.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!(values))
}

fn run(command: Command) -> Result<Output, Error> {
    Ok(match command {
        Command::RealizableCheck { file } => {
            let a = j::parse_sequence(&read(&file)?)?;
            let v = check_realizable(&a);
            verdict(j::realizability_json(&v), v.is_pass())
        }
        Command::ZetaFromFix { source, order } => {
            let f = zeta_from_fix(&parse_source(&source)?, order)?;
            pass(json!(SeriesJson::from(&f)))
        }
        Command::ZetaCheck { file } => {
            let v = is_zeta(&j::parse_series(&read(&file)?)?);
            verdict(j::zeta_json(&v), v.is_pass())
        }
        Command::Apply { map, source, max_n } => {
            let b = time_change_fix(&parse_map(&map)?, &parse_source(&source)?, max_n)?;
            let v = check_realizable(&b);
            verdict(
                json!({"sequence": SequenceJson::from(&b), "realizability": j::realizability_json(&v)}),
                v.is_pass(),
            )
        }
        Command::MapEval { map, at } => pass(eval_all(&parse_map(&map)?, &at)?),
        Command::WordEval { file, at } => pass(eval_all(&j::parse_word(&read(&file)?)?, &at)?),
        Command::WordNormalForm { file } => {
            let w = normal_form(&j::parse_word(&read(&file)?)?);
            pass(json!(WordJson::from(&w)))
        }
        Command::SpecValidate { file } => {
            let violations = validate_spec(&j::parse_spec(&read(&file)?)?);
            let list: Vec<Value> = violations.iter().map(j::violation_json).collect();
            verdict(
                json!({"valid": violations.is_empty(), "violations": list}),
                violations.is_empty(),
            )
        }
        Command::SpecCompile { file } => {
            let r = compile(&j::parse_spec(&read(&file)?)?)?;
            pass(json!(CompileJson::from(&r)))
        }
        Command::MembershipTest { map, max_k, max_n } => {
            let r = membership_test(&parse_map(&map)?, max_k, max_n)?;
            verdict(j::membership_json(&r), !r.refuted())
        }
        Command::Preimage { map, k, max_n } => {
            let r = preimage_structure(&parse_map(&map)?, k, max_n)?;
            let ok = !matches!(r.outcome, PreimageStructure::Violation(_));
            verdict(j::preimage_json(&r), ok)
        }
        Command::DivisibilityCheck { map, max_n } => {
            let r = check_divisibility_properties(&parse_map(&map)?, max_n)?;
            verdict(j::divisibility_json(&r), r.all_hold())
        }
        Command::GpReport { p, order } => {
            let r = gp_shift_report(p, order)?;
            verdict(j::gp_report_json(&r), r.realizability.is_pass())
        }
        Command::WordSearch {
            seed,
            count,
            length,
            p_max,
            t_max,
            max_n,
        } => word_search(seed, count, length, p_max, t_max, max_n)?,
    })
}

fn word_search(
    seed: u64,
    count: u64,
    length: usize,
    p_max: u64,
    t_max: u32,
    max_n: u64,
) -> Result<Output, Error> {
    let mut forms: Vec<Word> = Vec::new();
    for s in 0..count {
        let w = normal_form(&random_word(seed.wrapping_add(s), length, p_max, t_max)?);
        if !forms.contains(&w) {
            forms.push(w);
        }
    }
    let mut coincidences = Vec::new();
    for (i, a) in forms.iter().enumerate() {
        for b in &forms[i + 1..] {
            if equal_upto(a, b, max_n).is_equal() {
                coincidences.push(json!({"left": WordJson::from(a), "right": WordJson::from(b)}));
            }
        }
    }
    Ok(pass(json!({
        "precision": max_n,
        "distinct_normal_forms": forms.len(),
        "coincidences": coincidences,
    })))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let text =
                serde_json::to_string_pretty(&out.value).expect("plain data serializes") + "\n";
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::InvalidSpec(vs) = &e {
                for v in vs {
                    eprintln!("  {v}");
                }
            }
            ExitCode::from(2)
        }
    }
}
