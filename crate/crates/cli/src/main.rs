use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use obg_cli::commands::{self, CliError, Source, Suite, TestOptions};
use obg_cli::Report;
use obg_core::analysis::{DEFAULT_BNF_BUDGET, DEFAULT_CLASSIFY_BUDGET};
use obg_core::fraisse::{ClassDescriptor, Property};

#[derive(Parser)]
#[command(name = "obg", version, about = "Countable homogeneous ordered bipartite graphs")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "OBG_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog of homogeneous structures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Write a finite snapshot of an entry.
    Sample {
        entry: String,
        #[arg(long, default_value_t = 10)]
        size: usize,
        /// Sample file to write; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a test suite on an entry, a fixture or `all`.
    Test {
        selection: String,
        /// homogeneity, density or closedform.
        suite: String,
        #[arg(long, default_value_t = 6)]
        sample_size: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        max_constraints: usize,
        /// Witness requests per entry in the density suite.
        #[arg(long, default_value_t = 500)]
        specs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide which catalog entry an entry's oracle or a sample file is.
    Classify {
        input: String,
        #[arg(long, default_value_t = DEFAULT_CLASSIFY_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play the back-and-forth game between two structures.
    Distinguish {
        left: String,
        right: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_BNF_BUDGET)]
        budget: u64,
        /// Override the expected outcome.
        #[arg(long, value_parser = ["distinguished", "indistinguishable"])]
        expect: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check HP, JEP and AP for a class of finite structures.
    Fraisse {
        class: String,
        /// HP, JEP, AP or all.
        property: String,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print every entry identifier.
    List,
}

fn emit(r: &Report, out: Option<PathBuf>) -> Result<i32, CliError> {
    let text = r.to_string();
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(&path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(r.exit_code())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let seed = cli.seed;
    match cli.command {
        Command::Catalog { action: CatalogAction::List } => {
            print!("{}", commands::catalog_list());
            Ok(0)
        }
        Command::Sample { entry, size, out } => {
            let (text, report) = commands::sample(entry.parse()?, size, seed)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    let mut report = report;
                    report.field("out", path.display());
                    emit(&report, None)
                }
                None => {
                    print!("{text}");
                    Ok(0)
                }
            }
        }
        Command::Test { selection, suite, sample_size, trials, max_constraints, specs, out } => {
            let suite: Suite = suite.parse()?;
            let opt = TestOptions { sample_size, trials, seed, max_constraints, specs };
            emit(&commands::test(&selection, suite, &opt)?, out)
        }
        Command::Classify { input, budget, out } => {
            let report = match input.parse::<Source>() {
                Ok(src) => commands::classify_source(src, budget, seed),
                Err(_) if std::path::Path::new(&input).exists() => {
                    let text = std::fs::read_to_string(&input).map_err(|e| CliError::Io(format!("{input}: {e}")))?;
                    commands::classify_file(&text)?
                }
                Err(e) => return Err(e),
            };
            emit(&report, out)
        }
        Command::Distinguish { left, right, depth, budget, expect, out } => {
            let expect = expect.map(|e| e == "distinguished");
            emit(&commands::distinguish(left.parse()?, right.parse()?, depth, seed, budget, expect), out)
        }
        Command::Fraisse { class, property, max_size, out } => {
            let class: ClassDescriptor = class.parse().map_err(CliError::Usage)?;
            let properties: Vec<Property> = if property.eq_ignore_ascii_case("all") {
                Property::ALL.to_vec()
            } else {
                vec![property.parse().map_err(CliError::Usage)?]
            };
            emit(&commands::fraisse(class, &properties, max_size), out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> i32 {
        let cli = Cli::try_parse_from(std::iter::once("obg").chain(args.iter().copied())).unwrap();
        run(cli).unwrap_or_else(|e| e.exit_code())
    }

    #[test]
    fn exit_codes_follow_the_verdict() {
        assert_eq!(code(&["catalog", "list"]), 0);
        assert_eq!(code(&["test", "iv.unbounded_generic", "density", "--specs", "50"]), 0);
        assert_eq!(code(&["test", "fixture:matching2Q", "homogeneity", "--sample-size", "4", "--trials", "300"]), 1);
        assert_eq!(code(&["classify", "nope"]), 3);
        assert_eq!(code(&["fraisse", "rightClass", "all", "--max-size", "2"]), 0);
        assert_eq!(code(&["distinguish", "vi.empty+empty", "vi.empty+empty", "--depth", "3"]), 0);
    }

    #[test]
    fn sample_files_classify_as_evidence_only() {
        let path = std::env::temp_dir().join(format!("obg-test-{}.obg", std::process::id()));
        let p = path.to_str().unwrap();
        assert_eq!(code(&["sample", "vi.rightGeneric+empty", "--size", "6", "--out", p]), 0);
        assert_eq!(code(&["classify", p]), 2);
        std::fs::remove_file(&path).unwrap();
    }
}
