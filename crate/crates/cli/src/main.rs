use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homlift::bracket::{DiagonalChoice, LiftingMethod, ResolutionChoice};
use homlift_cli::{
    cmd_bracket, cmd_cohomology, cmd_induce, cmd_verify, parse_algebra, parse_field, render, ConfigError, Format, JobConfig,
    JobError, Rendered, Suite,
};

#[derive(Parser)]
#[command(name = "homlift", version, about = "Exact cohomology, diagonals and Gerstenhaber brackets for finite Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of H^i(A, k) and cup powers of the degree-2 class.
    Cohomology(Common),
    /// Bracket table of basis classes up to total degree maxdeg.
    Bracket(Common),
    /// Run verification suites; exit 1 if any certificate fails.
    Verify(Common),
    /// Induction to bimodules: monoidal checks, transport, Eckmann-Shapiro.
    Induce(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Res {
    Explicit,
    Generic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Diag {
    Explicit,
    Generic,
    Symmetrized,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lift {
    Zero,
    Generic,
    Perturbed,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// taft:n, taft_tensor:a,b,..., group_zp:p or file:<path>
    #[arg(long)]
    algebra: String,
    /// cyclotomic or prime:p
    #[arg(long)]
    field: Option<String>,
    #[arg(long, default_value_t = 4)]
    maxdeg: usize,
    #[arg(long, value_enum)]
    resolution: Option<Res>,
    /// Defaults to explicit, or generic for group_zp and file algebras.
    #[arg(long, value_enum)]
    diagonal: Option<Diag>,
    #[arg(long, value_enum, default_value = "auto")]
    lifting: Lift,
    /// Comma separated suite names, or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Fmt,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest n with dim A <= n^2 for which A^e is formed.
    #[arg(long, default_value_t = 3)]
    max_n_envelope: u32,
}

impl Common {
    fn config(&self) -> Result<JobConfig, ConfigError> {
        let algebra = parse_algebra(&self.algebra)?;
        let custom = matches!(algebra, homlift::bracket::AlgebraKind::Custom(_));
        let group = matches!(algebra, homlift::bracket::AlgebraKind::GroupZp(_));
        let mut cfg = JobConfig::new(algebra);
        cfg.field = self.field.as_deref().map(parse_field).transpose()?;
        cfg.maxdeg = self.maxdeg;
        cfg.resolution = match self.resolution {
            Some(Res::Explicit) => ResolutionChoice::Explicit,
            Some(Res::Generic) => ResolutionChoice::Generic,
            None if custom => ResolutionChoice::Generic,
            None => ResolutionChoice::Explicit,
        };
        cfg.diagonal = match self.diagonal {
            Some(Diag::Explicit) => DiagonalChoice::Explicit,
            Some(Diag::Generic) => DiagonalChoice::Generic,
            Some(Diag::Symmetrized) => DiagonalChoice::Symmetrized,
            None if custom || group || cfg.resolution == ResolutionChoice::Generic => DiagonalChoice::Generic,
            None => DiagonalChoice::Explicit,
        };
        cfg.lifting = match self.lifting {
            Lift::Zero => LiftingMethod::Zero,
            Lift::Generic => LiftingMethod::Generic,
            Lift::Perturbed => LiftingMethod::Perturbed,
            Lift::Auto => LiftingMethod::Auto,
        };
        cfg.suites = Suite::parse_list(&self.suite)?;
        cfg.output = self.output.clone();
        cfg.format = match self.format {
            Fmt::Json => Format::Json,
            Fmt::Csv => Format::Csv,
        };
        cfg.seed = self.seed;
        cfg.max_n_envelope = self.max_n_envelope;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cmd: &Command) -> Result<(Rendered, Option<PathBuf>), JobError> {
    let (common, which) = match cmd {
        Command::Cohomology(c) => (c, 0),
        Command::Bracket(c) => (c, 1),
        Command::Verify(c) => (c, 2),
        Command::Induce(c) => (c, 3),
    };
    let cfg = common.config()?;
    let out = match which {
        0 => {
            let t = cmd_cohomology(&cfg)?;
            render(&t, || t.to_csv(), cfg.format, true)
        }
        1 => {
            let b = cmd_bracket(&cfg)?;
            render(&b, || b.to_csv(), cfg.format, b.certified())
        }
        2 => {
            let v = cmd_verify(&cfg)?;
            render(&v, || v.to_csv(), cfg.format, v.passed)
        }
        _ => {
            let r = cmd_induce(&cfg)?;
            render(&r, || r.to_csv(), cfg.format, r.passed)
        }
    };
    Ok((out, cfg.output))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((rendered, path)) => {
            match path {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, &rendered.text) {
                        eprintln!("cannot write {}: {e}", p.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", rendered.text),
            }
            if rendered.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("certificate failure; see the report for the failing checks");
                ExitCode::from(1)
            }
        }
        Err(JobError::Config(e)) => {
            eprintln!("invalid configuration: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
