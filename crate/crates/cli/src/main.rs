//! `leech`: Leech (co)homology of finite cyclic monoids from the command line.

mod render;
mod spec_file;

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use leech_core::engine::{closed_form, oracle_check};
use leech_core::module::{random_module, LeechModule, Side, SizeBounds};
use leech_core::monoid::CyclicMonoid;
use leech_core::report::ValidationReport;
use leech_core::resolution::Resolution;

use render::{parse_group, Format, Table};
use spec_file::ModuleSpecFile;

/// Exit codes: 1 a validated file breaks an axiom, 2 unreadable input,
/// 3 a module breaks an axiom before a computation, 4 two independent
/// routes disagree, 5 malformed or conflicting flags.
enum Failure {
    Axioms(ValidationReport),
    Parse(String),
    Invalid(ValidationReport),
    Mismatch(ValidationReport),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Axioms(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Mismatch(_) => 4,
            Failure::Usage(_) => 5,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "leech",
    version,
    about = "Exact Leech cohomology and homology of the cyclic monoids C_{m,q}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(clap::Args)]
struct TableArgs {
    #[arg(long, env = "LEECH_MAX_DEGREE_DEFAULT", default_value_t = 8)]
    max_degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(clap::Args)]
struct MonoidArgs {
    #[arg(long)]
    index: usize,
    #[arg(long)]
    period: usize,
}

impl MonoidArgs {
    fn monoid(&self) -> Result<CyclicMonoid, Failure> {
        CyclicMonoid::new(self.index, self.period).map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the module axioms; exits 1 with witnesses when one fails.
    Validate { file: String },
    /// Cohomology table of a left module.
    Cohomology {
        file: String,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Homology table of a right module.
    Homology {
        file: String,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Compare the closed form with the homology of the Hom or tensor complex.
    OracleCheck {
        file: String,
        #[arg(long, env = "LEECH_MAX_DEGREE_DEFAULT", default_value_t = 8)]
        max_degree: usize,
    },
    /// Check exactness and the contracting homotopy of the free resolution.
    ResolutionCheck {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, env = "LEECH_MAX_DEGREE_DEFAULT", default_value_t = 8)]
        max_degree: usize,
    },
    /// Table for a built-in module: constant-z, trivial:<group> or free:<points>.
    Builtin {
        #[arg(long)]
        module: String,
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Print a seeded random module as a module file.
    Random {
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        #[arg(long, default_value_t = 2)]
        max_free_rank: usize,
        #[arg(long, default_value_t = 2)]
        max_torsion_coords: usize,
        #[arg(long, default_value_t = 6)]
        max_torsion_order: u64,
        #[arg(long, default_value_t = 3)]
        max_blocks: usize,
        /// Cap on the number of generators of each group.
        #[arg(long)]
        max_group_rank: Option<usize>,
    },
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Parse(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{path}: {e}")))
    }
}

fn load(path: &str) -> Result<LeechModule, Failure> {
    let text = read_input(path)?;
    let spec = ModuleSpecFile::parse(&text).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
    spec.to_module()
        .map_err(|e| Failure::Parse(format!("{path}: {e}")))
}

fn load_valid(path: &str) -> Result<LeechModule, Failure> {
    let a = load(path)?;
    let report = a.validate();
    if report.passed() {
        Ok(a)
    } else {
        Err(Failure::Invalid(report))
    }
}

fn table(a: &LeechModule, max_degree: usize) -> Table {
    let groups = (0..=max_degree)
        .map(|n| closed_form(a, n).expect("side matches the formula"))
        .collect();
    Table {
        monoid: a.monoid(),
        side: a.side(),
        groups,
    }
}

fn require_side(a: &LeechModule, side: Side, command: &str) -> Result<(), Failure> {
    if a.side() == side {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "{command} needs a {side} module, the file holds a {} module",
            a.side()
        )))
    }
}

fn builtin(spec: &str, c: CyclicMonoid, side: Side) -> Result<LeechModule, Failure> {
    if spec == "constant-z" {
        return Ok(LeechModule::constant_z(c, side));
    }
    if let Some(g) = spec.strip_prefix("trivial:") {
        return Ok(LeechModule::trivial(
            c,
            side,
            &parse_group(g).map_err(Failure::Usage)?,
        ));
    }
    if let Some(points) = spec.strip_prefix("free:") {
        let points = points
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::Usage(format!("bad point {p:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return LeechModule::free(c, side, &points).map_err(|e| Failure::Usage(e.to_string()));
    }
    Err(Failure::Usage(format!(
        "unknown module {spec:?}; expected constant-z, trivial:<group> or free:<points>"
    )))
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Validate { file } => {
            let report = load(&file)?.validate();
            if report.passed() {
                Ok(format!("{report}\n"))
            } else {
                Err(Failure::Axioms(report))
            }
        }
        Command::Cohomology { file, table: t } => {
            let a = load_valid(&file)?;
            require_side(&a, Side::Left, "cohomology")?;
            Ok(table(&a, t.max_degree).render(t.format))
        }
        Command::Homology { file, table: t } => {
            let b = load_valid(&file)?;
            require_side(&b, Side::Right, "homology")?;
            Ok(table(&b, t.max_degree).render(t.format))
        }
        Command::OracleCheck { file, max_degree } => {
            let a = load_valid(&file)?;
            let report = oracle_check(&a, max_degree).map_err(|e| Failure::Usage(e.to_string()))?;
            if report.passed() {
                Ok(format!("degrees 0..={max_degree}: all degrees agree\n"))
            } else {
                Err(Failure::Mismatch(report))
            }
        }
        Command::ResolutionCheck { monoid, max_degree } => {
            let c = monoid.monoid()?;
            let report = Resolution::new(c).verify_exactness(max_degree);
            if report.passed() {
                Ok(format!("{c}, degrees 0..={max_degree}: {report}\n"))
            } else {
                Err(Failure::Mismatch(report))
            }
        }
        Command::Builtin {
            module,
            monoid,
            side,
            table: t,
        } => {
            let a = builtin(&module, monoid.monoid()?, side.into())?;
            Ok(table(&a, t.max_degree).render(t.format))
        }
        Command::Random {
            seed,
            monoid,
            side,
            max_free_rank,
            max_torsion_coords,
            max_torsion_order,
            max_blocks,
            max_group_rank,
        } => {
            if max_torsion_order < 2 {
                return Err(Failure::Usage(
                    "--max-torsion-order must be at least 2".into(),
                ));
            }
            let bounds = SizeBounds {
                max_free_rank,
                max_torsion_coords,
                max_torsion_order,
                max_blocks,
                max_group_rank,
            };
            let a = random_module(monoid.monoid()?, side.into(), seed, &bounds);
            let mut out =
                serde_json::to_string_pretty(&ModuleSpecFile::from_module(&a)).expect("plain data");
            out.push('\n');
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(5);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Axioms(r) | Failure::Invalid(r) | Failure::Mismatch(r) => eprint!("{r}"),
                Failure::Parse(e) | Failure::Usage(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.code())
        }
    }
}
