use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use ringlab::ring::Limits;
use ringlab::symbolic::KnowledgeBase;
use ringlab_cli::{run_source, Format, Options};

/// Finite commutative ring workbench.
///
/// Runs a session file (`-f`), an inline program (`-e`), or the remaining
/// arguments joined into one statement, e.g. `ringlab check chain 'zmod(12)'`.
/// With none of these the program is read from standard input.
#[derive(Parser, Debug)]
#[command(name = "ringlab", version)]
struct Cli {
    /// Session file; `#` starts a comment.
    #[arg(short = 'f', long = "file")]
    file: Option<PathBuf>,
    /// Inline program.
    #[arg(short = 'e', long = "eval")]
    eval: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Exit with status 1 when a checked property is false.
    #[arg(long)]
    assert: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "max-ring-size")]
    max_ring_size: Option<usize>,
    #[arg(long = "max-ideals")]
    max_ideals: Option<usize>,
    /// Degree bound of `check gaussian-direct`.
    #[arg(long, default_value_t = 2)]
    degree: usize,
    /// Sample budget of `check gaussian-direct`.
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    /// Worker threads for verification and search.
    #[arg(long)]
    jobs: Option<usize>,
    /// Knowledge base file replacing the shipped one.
    #[arg(long)]
    kb: Option<PathBuf>,
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    program: Vec<String>,
}

fn fail(msg: String) -> ExitCode {
    eprintln!("{msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return fail(format!("--jobs: {e}"));
        }
    }
    let source = match (&cli.file, &cli.eval, cli.program.is_empty()) {
        (Some(path), None, true) => match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => return fail(format!("{}: {e}", path.display())),
        },
        (None, Some(src), true) => src.clone(),
        (None, None, false) => cli.program.join(" "),
        (None, None, true) => {
            let mut s = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut s) {
                return fail(format!("stdin: {e}"));
            }
            s
        }
        _ => return fail("give at most one of --file, --eval and an inline statement".into()),
    };
    let kb = match &cli.kb {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(s) => s,
                Err(e) => return fail(format!("{}: {e}", path.display())),
            };
            match KnowledgeBase::from_json(&text) {
                Ok(kb) => Some(kb),
                Err(e) => return fail(format!("{}: {e}", path.display())),
            }
        }
        None => None,
    };
    let mut limits = Limits::default();
    if let Some(n) = cli.max_ring_size {
        limits.max_ring_size = n;
    }
    if let Some(n) = cli.max_ideals {
        limits.max_ideals = n;
    }
    let opts = Options {
        format: cli.format,
        assert: cli.assert,
        seed: cli.seed,
        limits,
        degree: cli.degree,
        samples: cli.samples,
        kb,
    };
    let run = run_source(&source, opts);
    let mut out = std::io::stdout().lock();
    for line in &run.output {
        // a closed pipe is not an error of the program
        if writeln!(out, "{line}").is_err() {
            break;
        }
    }
    if let Some(e) = &run.error {
        eprintln!("{e}");
    }
    ExitCode::from(run.exit_code() as u8)
}
