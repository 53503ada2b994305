use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use latvoa::par::Exec;
use latvoa::report::{is_config_error, run, Format, ScenarioConfig};

#[derive(Parser, Debug)]
#[command(name = "latvoa", version, about = "Exact computations for lattice vertex operator algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML scenario file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Diagonal lattice norms, e.g. "2,4".
    #[arg(long, global = true)]
    lattice: Option<String>,
    /// Use the Heisenberg VOA M(1) of the same rank.
    #[arg(long, global = true)]
    heisenberg: bool,
    /// Coset offsets k_i/d_i, e.g. "1/2,0".
    #[arg(long, global = true)]
    coset: Option<String>,
    /// Restrict to the θ-fixed subalgebra.
    #[arg(long, global = true, conflicts_with = "minus")]
    plus: bool,
    /// Restrict to the θ = -1 eigenspace.
    #[arg(long, global = true)]
    minus: bool,
    /// Weight cutoff (rational).
    #[arg(long, global = true)]
    max_weight: Option<String>,
    /// Index n of C_n.
    #[arg(long, global = true)]
    cn: Option<i64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Also check the C_2 decomposition of the tensor square (cofinite).
    #[arg(long, global = true)]
    tensor: bool,
    /// Zhu truncation D.
    #[arg(long, global = true)]
    zhu_d: Option<i64>,
    /// Word to normalize, e.g. "x0(-1) x2(0)".
    #[arg(long, global = true)]
    word: Option<String>,
    /// Target lattice point β of e^β, e.g. "1" or "0,-1".
    #[arg(long, global = true, allow_hyphen_values = true)]
    target: Option<String>,
    /// Sample counts for verify.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Report)]
    format: OutFormat,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Stratum dimensions and basis listings.
    Basis,
    /// C_n quotient tables, generators X, C_1 representatives.
    Cofinite,
    /// Truncated Zhu algebra and module checks.
    Zhu,
    /// Lowest weight vectors of a module.
    Omega,
    /// Normalize a mode word against a target.
    Rewrite,
    /// Identity fuzz suites.
    Verify,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OutFormat {
    Report,
    Csv,
}

fn list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, String> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| format!("bad {what} entry {x:?}"))).collect()
}

fn flags(cli: &Cli) -> Result<ScenarioConfig, String> {
    let mut c = ScenarioConfig::default();
    if let Some(l) = &cli.lattice {
        c.lattice = Some(list(l, "lattice")?);
    }
    if cli.heisenberg {
        c.heisenberg = Some(true);
    }
    if let Some(s) = &cli.coset {
        c.coset = Some(s.split(',').map(|x| x.trim().to_string()).collect());
    }
    if cli.plus {
        c.sign = Some("plus".into());
    }
    if cli.minus {
        c.sign = Some("minus".into());
    }
    c.max_weight = cli.max_weight.clone();
    c.cn = cli.cn;
    c.seed = cli.seed;
    if cli.tensor {
        c.tensor = Some(true);
    }
    c.zhu.d = cli.zhu_d;
    c.rewrite.word = cli.word.clone();
    if let Some(t) = &cli.target {
        c.rewrite.target = Some(list(t, "target")?);
    }
    if let Some(n) = cli.samples {
        c.verify.commutator = Some(n);
        c.verify.iterate = Some(n);
        c.verify.rewrite_words = Some(n);
        c.zhu.samples = Some(n);
    }
    Ok(c)
}

fn config(cli: &Cli) -> Result<ScenarioConfig, String> {
    let base = match &cli.config {
        None => ScenarioConfig::default(),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            ScenarioConfig::from_toml(&text).map_err(|e| e.to_string())?
        }
    };
    Ok(base.overridden_by(flags(cli)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let name = match cli.command {
        Command::Basis => "basis",
        Command::Cofinite => "cofinite",
        Command::Zhu => "zhu",
        Command::Omega => "omega",
        Command::Rewrite => "rewrite",
        Command::Verify => "verify",
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let report = match run(name, &cfg, exec) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if is_config_error(&e) { 2 } else { 3 });
        }
    };
    let format = match cli.format {
        OutFormat::Report => Format::Report,
        OutFormat::Csv => Format::Csv,
    };
    let text = report.render(format);
    match &cli.out {
        None => print!("{text}"),
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(3);
            }
        }
    }
    ExitCode::SUCCESS
}
