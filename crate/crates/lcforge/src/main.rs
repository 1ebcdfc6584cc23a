use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcforge::census::{census_distribution, default_jobs, refutation_report, verify_formulas};
use lcforge::input::SequenceSource;
use lcforge::{CensusReport, Error, Format, Result};
use lcforge_core::counting::expected_count;
use lcforge_core::kerror::{k_error_lc, k_error_profile};
use lcforge_core::{games_chan_lc, CensusMode, CensusQuery, PeriodicSequence, SequenceClass};
use serde_json::json;

/// Linear complexity and k-error linear complexity of 2^n-periodic binary sequences.
///
/// Exit status: 0 on success, 1 when `verify` finds a mismatch, 2 on invalid input or an
/// over-budget search.
#[derive(Parser, Debug)]
#[command(name = "lcforge", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,

    /// Omit timing so that reports are byte-stable.
    #[arg(long, global = true)]
    stable: bool,

    /// Census worker threads [default: available parallelism].
    #[arg(long, global = true, env = "LCFORGE_JOBS")]
    jobs: Option<NonZeroUsize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Table,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    /// Every sequence.
    All,
    /// Odd weight, L = 2^n.
    Full,
    /// Even weight, L < 2^n.
    Less,
}

impl From<ClassArg> for SequenceClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::All => SequenceClass::All,
            ClassArg::Full => SequenceClass::FullLc,
            ClassArg::Less => SequenceClass::LessLc,
        }
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Binary digits, position 0 first.
    #[arg(long)]
    bits: Option<String>,
    /// Hex digits, each most significant bit first: C000 is position 0 and 1 set.
    #[arg(long)]
    hex: Option<String>,
    /// File with a binary string, position 0 first; whitespace is ignored.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl InputArgs {
    fn read(&self, n: u32) -> Result<PeriodicSequence> {
        let source = match (&self.bits, &self.hex, &self.file) {
            (Some(b), _, _) => SequenceSource::Bits(b.clone()),
            (_, Some(h), _) => SequenceSource::Hex(h.clone()),
            (_, _, Some(f)) => SequenceSource::File(f.clone()),
            _ => unreachable!("clap requires one input"),
        };
        source.read(n)
    }
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, value_enum, default_value_t = ClassArg::All)]
    class: ClassArg,
    /// Draw this many random sequences instead of enumerating all of them.
    #[arg(long)]
    samples: Option<u64>,
    /// Seed for --samples.
    #[arg(long, default_value_t = 0, requires = "samples")]
    seed: u64,
}

impl CensusArgs {
    fn query(&self) -> Result<CensusQuery> {
        let mode = match self.samples {
            Some(count) => CensusMode::Sampled {
                count,
                seed: self.seed,
            },
            None => CensusMode::Exhaustive,
        };
        Ok(CensusQuery::new(self.n, self.k, self.class.into(), mode)?)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Linear complexity, weight and class of one sequence.
    Lc {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        input: InputArgs,
    },
    /// k-error linear complexity with a witness error pattern.
    Kerr {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: InputArgs,
    },
    /// L_0, L_1, ..., L_kmax of one sequence.
    Profile {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        kmax: usize,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Closed-form number of sequences with k-error linear complexity L.
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long = "L")]
        l: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = ClassArg::All)]
        class: ClassArg,
    },
    /// Distribution of L_k over a class, by enumeration or sampling.
    Census(CensusArgs),
    /// Census compared row by row with the closed form; exits 1 on any mismatch.
    Verify(CensusArgs),
    /// Census at n=4, k=3 next to the closed form and the published 3-error table.
    Refute,
}

fn class_label(s: &PeriodicSequence) -> &'static str {
    if s.weight() % 2 == 1 {
        "FullLC"
    } else {
        "LessLC"
    }
}

fn json_line(value: serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(&value).expect("values always serialize");
    out.push('\n');
    out
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn report_output(report: CensusReport, cli: &Cli, fail_on_mismatch: bool) -> Output {
    let report = if cli.stable {
        report.without_timing()
    } else {
        report
    };
    let code = u8::from(fail_on_mismatch && !report.passed());
    Output {
        text: report.render(cli.format.into()),
        code,
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let format = Format::from(cli.format);
    let jobs = cli.jobs.map_or_else(default_jobs, NonZeroUsize::get);
    Ok(match &cli.command {
        Command::Lc { n, input } => {
            let s = input.read(*n)?;
            let (l, w, class) = (games_chan_lc(&s), s.weight(), class_label(&s));
            Output::ok(match format {
                Format::Table => format!("L={l} W={w} class={class}\n"),
                Format::Json => json_line(json!({"n": n, "L": l, "W": w, "class": class})),
                Format::Csv => format!("n,L,W,class\n{n},{l},{w},{class}\n"),
            })
        }
        Command::Kerr { n, k, input } => {
            let s = input.read(*n)?;
            let r = k_error_lc(&s, *k)?;
            let l = games_chan_lc(&s);
            let witness = r.witness.positions();
            Output::ok(match format {
                Format::Table => format!("L={l} L{k}={} witness={witness:?}\n", r.value),
                Format::Json => {
                    json_line(json!({"n": n, "k": k, "L": l, "Lk": r.value, "witness": witness}))
                }
                Format::Csv => {
                    let w: Vec<String> = witness.iter().map(usize::to_string).collect();
                    format!(
                        "n,k,L,Lk,witness\n{n},{k},{l},{},{}\n",
                        r.value,
                        w.join(" ")
                    )
                }
            })
        }
        Command::Profile { n, kmax, input } => {
            let s = input.read(*n)?;
            let profile = k_error_profile(&s, *kmax)?;
            Output::ok(match format {
                Format::Table => profile.iter().map(|(k, v)| format!("L{k}={v}\n")).collect(),
                Format::Json => {
                    let values: Vec<u64> = profile.iter().map(|&(_, v)| v).collect();
                    json_line(json!({"n": n, "kmax": kmax, "profile": values}))
                }
                Format::Csv => std::iter::once("k,Lk\n".to_string())
                    .chain(profile.iter().map(|(k, v)| format!("{k},{v}\n")))
                    .collect(),
            })
        }
        Command::Count { n, l, k, class } => {
            let class = SequenceClass::from(*class);
            let count = expected_count(*n, *k, class, *l)?;
            Output::ok(match format {
                Format::Table => format!("{count}\n"),
                // Counts can exceed any JSON number type; they are emitted as strings.
                Format::Json => json_line(json!({
                    "n": n, "k": k, "L": l, "class": class.as_str(), "count": count.to_string()
                })),
                Format::Csv => format!("n,k,L,class,count\n{n},{k},{l},{class},{count}\n"),
            })
        }
        Command::Census(args) => {
            report_output(census_distribution(&args.query()?, jobs)?, cli, false)
        }
        Command::Verify(args) => report_output(verify_formulas(&args.query()?, jobs)?, cli, true),
        Command::Refute => report_output(refutation_report(jobs)?, cli, false),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Core(lcforge_core::Error::NoFormulaAvailable { .. }) = e {
                eprintln!("closed forms exist for k <= 3 in every class and for k = 4 on odd-weight sequences");
            }
            ExitCode::from(2)
        }
    }
}
