use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use cfam_core::families::{catalog_json, family, ParamSet};
use cfam_core::verify::{
    parse_sweep_config, render_reports, run_expand, run_point, run_sweep, run_transform, ReportEntry, ReportFormat,
    ReportOptions, SweepPoint, SweepSummary, TransformKind, DEFAULT_DIGITS, DEFAULT_TERMS,
};
use num_bigint::BigInt;

/// Verify continued-fraction identities with certified interval arithmetic.
#[derive(Parser)]
#[command(name = "cfam", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ReportArgs {
    /// Write the report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Report format: json or csv.
    #[arg(long, default_value = "json")]
    format: String,
    /// Stamp each report entry with the current Unix time.
    #[arg(long)]
    timestamps: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the family catalog as JSON.
    Catalog,
    /// Check one family at one parameter tuple.
    Verify {
        #[arg(long)]
        family: String,
        /// Parameters as k=v[,k=v...]; rationals as p/q, lists as 1:2:3.
        #[arg(long = "set", default_value = "")]
        set: String,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: u32,
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: usize,
        #[command(flatten)]
        out: ReportArgs,
    },
    /// Check many points: a JSON config, one family's default grid, or the
    /// default grids of the whole catalog.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, conflicts_with = "config")]
        family: Option<String>,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: u32,
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: usize,
        #[command(flatten)]
        out: ReportArgs,
    },
    /// Certified regular continued fraction of a value expression.
    Expand {
        /// closed_form(family, k=v, ...), tan(x), tanh(x), exp(x) or a rational.
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: usize,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: u32,
    },
    /// Apply even, odd, lift or regularize to a finite literal.
    Transform {
        kind: String,
        input: String,
        /// Lift parameter.
        #[arg(long)]
        p: Option<String>,
    },
}

/// Exit status for bad flags, unknown families and invalid parameters.
const USAGE: u8 = 1;

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn report_options(out: &ReportArgs) -> Result<(ReportFormat, ReportOptions), String> {
    let format = out.format.parse::<ReportFormat>().map_err(|e| format!("--format: {e}"))?;
    let timestamp =
        out.timestamps.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
    Ok((format, ReportOptions { timestamp }))
}

fn emit(entries: &[ReportEntry], out: &ReportArgs) -> Result<(), ExitCode> {
    let (format, opts) = report_options(out).map_err(usage)?;
    if let Some(path) = &out.report {
        let text = render_reports(entries, format, opts);
        std::fs::write(path, text).map_err(|e| usage(format!("--report {}: {e}", path.display())))?;
    }
    Ok(())
}

fn print_entry(e: &ReportEntry) {
    match e {
        ReportEntry::Report(r) => {
            println!("{} {}: {}", r.family, r.params, r.status);
            println!("  continued fraction  [{}, {}] ({} quotients)", r.cf_enclosure.lo, r.cf_enclosure.hi, r.terms);
            println!("  closed form         [{}, {}]", r.closed_form_enclosure.lo, r.closed_form_enclosure.hi);
            println!("  matched digits {} of {}, {} ms", r.matched_digits, r.digits, r.elapsed_ms);
        }
        ReportEntry::Invalid { family, params, error, violations } => {
            println!("{family} {params}: invalid");
            if violations.is_empty() {
                println!("  {error}");
            }
            for v in violations {
                println!("  {v}");
            }
        }
    }
}

fn verify(family_id: &str, set: &str, digits: u32, terms: usize, out: &ReportArgs) -> ExitCode {
    if let Err(e) = report_options(out) {
        return usage(e);
    }
    if let Err(e) = family(family_id) {
        return usage(format!("--family: {e}"));
    }
    let params = match ParamSet::parse(set) {
        Ok(p) => p,
        Err(e) => return usage(format!("--set: {e}")),
    };
    let entry = run_point(&SweepPoint { family: family_id.to_string(), params, digits, terms });
    print_entry(&entry);
    if let Err(code) = emit(std::slice::from_ref(&entry), out) {
        return code;
    }
    match &entry {
        ReportEntry::Invalid { violations, .. } if !violations.is_empty() => {
            eprintln!("error: --set: parameters violate the family hypotheses");
            ExitCode::from(USAGE)
        }
        _ => ExitCode::from(SweepSummary::of(std::slice::from_ref(&entry)).exit_code() as u8),
    }
}

fn sweep(config: Option<&PathBuf>, fam: Option<&str>, digits: u32, terms: usize, out: &ReportArgs) -> ExitCode {
    if let Err(e) = report_options(out) {
        return usage(e);
    }
    let points = match (config, fam) {
        (Some(path), _) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return usage(format!("--config {}: {e}", path.display())),
            };
            match parse_sweep_config(&text) {
                Ok(p) => p,
                Err(e) => return usage(format!("--config {}: {e}", path.display())),
            }
        }
        (None, Some(id)) => {
            let spec = match family(id) {
                Ok(s) => s,
                Err(e) => return usage(format!("--family: {e}")),
            };
            cfam_core::families::grid_for(spec)
                .into_iter()
                .map(|params| SweepPoint { family: spec.id.to_string(), params, digits, terms })
                .collect()
        }
        (None, None) => cfam_core::families::catalog()
            .iter()
            .flat_map(|spec| {
                cfam_core::families::grid_for(spec).into_iter().map(move |params| SweepPoint {
                    family: spec.id.to_string(),
                    params,
                    digits,
                    terms,
                })
            })
            .collect(),
    };
    let (entries, summary) = run_sweep(&points);
    for e in &entries {
        println!("{:<18} {:<12} {}", e.family(), e.status_str(), params_of(e));
    }
    println!(
        "{} points: {} verified, {} inconclusive, {} violated, {} invalid",
        entries.len(),
        summary.verified,
        summary.inconclusive,
        summary.violated,
        summary.invalid
    );
    if let Err(code) = emit(&entries, out) {
        return code;
    }
    ExitCode::from(summary.exit_code() as u8)
}

fn params_of(e: &ReportEntry) -> &str {
    match e {
        ReportEntry::Report(r) => &r.params,
        ReportEntry::Invalid { params, .. } => params,
    }
}

fn expand(expr: &str, terms: usize, digits: u32) -> ExitCode {
    match run_expand(expr, terms, digits) {
        Ok(x) => {
            println!("{}", x.literal());
            match &x.exact {
                Some(r) => println!("value {}", cfam_core::numerics::format_rational(r)),
                None => println!("value in {}", x.enclosure),
            }
            if let Some(k) = x.uncertified_at {
                eprintln!("error: --expr: quotient {k} could not be certified");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => usage(format!("--expr: {e}")),
    }
}

fn transform(kind: &str, input: &str, p: Option<&str>) -> ExitCode {
    let kind = match kind.parse::<TransformKind>() {
        Ok(k) => k,
        Err(e) => return usage(format!("<kind>: {e}")),
    };
    let p = match p.map(str::parse::<BigInt>).transpose() {
        Ok(p) => p,
        Err(_) => return usage("--p: expected an integer"),
    };
    match run_transform(kind, input, p.as_ref()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => usage(format!("<input>: {e}")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match &cli.command {
        Command::Catalog => {
            let text = serde_json::to_string_pretty(&catalog_json()).expect("catalog serializes");
            // a closed pipe (e.g. `| head`) is not an error worth a panic
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::SUCCESS
        }
        Command::Verify { family, set, digits, terms, out } => verify(family, set, *digits, *terms, out),
        Command::Sweep { config, family, digits, terms, out } => {
            sweep(config.as_ref(), family.as_deref(), *digits, *terms, out)
        }
        Command::Expand { expr, terms, digits } => expand(expr, *terms, *digits),
        Command::Transform { kind, input, p } => transform(kind, input, p.as_deref()),
    }
}
