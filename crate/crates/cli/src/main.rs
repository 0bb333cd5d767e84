use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bioclass::diagnostics::{Code, Diagnostic};
use bioclass::engine::{Congruence, RunOptions, Simulation};
use bioclass::fixtures::{fixtures, CLASS_FILES};
use bioclass::frontend::{load_triple, FsLoader, Triple};
use bioclass::rules::WfOptions;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bioclass", version, about = "Check, expand and simulate class-based biological models")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Allow P-system rules that mix `in_j` targets with `here`/`out`.
    #[arg(long, global = true)]
    permissive_psys_targets: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Type-check model files and report every diagnostic.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Replace method invocations by the rules they stand for.
    Expand {
        path: PathBuf,
        /// Write the expanded model here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a model and print its trace.
    Simulate {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
        /// Match CLS looping sequences up to rotation.
        #[arg(long)]
        cls_loop_rotation: bool,
        /// Same as `--format structured`.
        #[arg(long)]
        structured_trace: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the bundled examples, or write them to a directory.
    Fixtures {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Exit statuses: 1 for models that fail checking or expansion, 2 for I/O
/// and usage problems.
enum Failure {
    Model(Vec<Diagnostic>),
    Io(String),
}

impl From<Vec<Diagnostic>> for Failure {
    fn from(diags: Vec<Diagnostic>) -> Self {
        Failure::Model(diags)
    }
}

fn report(diags: &[Diagnostic]) -> ExitCode {
    let mut err = std::io::stderr().lock();
    for d in diags {
        let _ = writeln!(err, "{d}");
    }
    if diags.iter().any(|d| d.code == Code::Io) {
        ExitCode::from(2)
    } else {
        ExitCode::from(1)
    }
}

fn load(path: &Path) -> Result<Triple, Failure> {
    Ok(load_triple(&FsLoader, &path.to_string_lossy())?)
}

fn load_checked(path: &Path, options: WfOptions) -> Result<Triple, Failure> {
    let t = load(path)?;
    let diags = t.check(options);
    if diags.iter().any(Diagnostic::is_error) {
        return Err(diags.into());
    }
    Ok(t)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("cannot create `{}`: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write `{}`: {e}", path.display())))
}

fn print(text: &str) -> Result<(), Failure> {
    std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| Failure::Io(format!("cannot write output: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let options = WfOptions { strict_psys_targets: !cli.permissive_psys_targets };
    match cli.command {
        Command::Check { paths } => {
            let mut all = Vec::new();
            for p in &paths {
                match load(p) {
                    Ok(t) => all.extend(t.check(options)),
                    Err(Failure::Model(d)) => all.extend(d),
                    Err(e) => return Err(e),
                }
            }
            if all.is_empty() {
                Ok(())
            } else {
                Err(all.into())
            }
        }
        Command::Expand { path, out } => {
            let t = load_checked(&path, options)?;
            let text = t.expand().map_err(|d| vec![d])?.emit();
            match out {
                Some(out) => write_file(&out, &text),
                None => print(&text),
            }
        }
        Command::Simulate { path, seed, max_steps, cls_loop_rotation, structured_trace, format } => {
            let t = load_checked(&path, options)?.expand().map_err(|d| vec![d])?;
            let sim = Simulation::prepare(&t.model, Congruence { loop_rotation: cls_loop_rotation })?;
            let trace = sim.run(RunOptions { max_steps, seed });
            if structured_trace || format == Format::Structured {
                print(&trace.to_json())?;
                print("\n")
            } else {
                print(&trace.to_text())
            }
        }
        Command::Fixtures { out: Some(dir) } => {
            for (name, text) in CLASS_FILES {
                write_file(&dir.join(name), text)?;
            }
            for f in fixtures() {
                write_file(&dir.join(f.file_name()), f.model)?;
            }
            Ok(())
        }
        Command::Fixtures { out: None } => {
            let width = fixtures().iter().map(|f| f.name.len()).max().unwrap_or(0);
            let list: String = fixtures().iter().map(|f| format!("{:width$}  {}\n", f.name, f.summary)).collect();
            print(&list)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Model(diags)) => report(&diags),
        Err(Failure::Io(msg)) => {
            eprintln!("error[io]: {msg}");
            ExitCode::from(2)
        }
    }
}
