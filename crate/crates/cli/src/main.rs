use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

use tensorlab_cli::{execute, CliError, CommandKind, ExperimentConfig, Format, OutputSpec};

const VARIETY_HELP: &str = "Variety grammar: segre:d1,d2,… | veronese:n,d | segver:d1,d2@e1,e2 | \
sub:d1,d2,d3@r1,r2,r3 | symsub:dim,r,d";

#[derive(Parser)]
#[command(name = "tensorlab", version, about = "Exact tensor-geometry experiments", after_help = VARIETY_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Append the record to this file (JSON lines for the json format).
    #[arg(long)]
    output: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an experiment described by a JSON config file.
    Run {
        config: String,
    },
    /// Secant dimensions, generic ranks and defect scans.
    #[command(after_help = VARIETY_HELP)]
    Terracini {
        /// secant | generic_rank | scan
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        variety: Option<String>,
        /// Scan family member; repeat for several.
        #[arg(long = "varieties")]
        varieties: Vec<String>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        r_max: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Flattening ranks, border-rank lower bound and exhaustive rank over F_p.
    Rank {
        #[arg(long)]
        tensor_file: Option<String>,
        #[arg(long)]
        w_state: Option<usize>,
        /// rational | "fp <p>"
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        bruteforce_rmax: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Binary-form, symmetric and uniqueness decomposition tests.
    Decompose {
        /// sylvester | gross | kruskal | strassen
        #[arg(long)]
        method: Option<String>,
        /// Comma-separated coefficients c_0,…,c_d.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        form: Vec<String>,
        #[arg(long)]
        tensor_file: Option<String>,
        #[arg(long)]
        second_tensor_file: Option<String>,
        #[arg(long)]
        decomposition_file: Option<String>,
        #[arg(long)]
        r_max: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Kronecker coefficients, rectangle and cone tables, plethysm.
    Kron {
        /// coefficient | rectangle | cone | plethysm | weyl
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        nu: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        stretch: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Pfaffians, signatures, matching counts and basis changes.
    Matchgate {
        /// pfaffian | signature | matchings | mgi | transform
        #[arg(long)]
        mode: Option<String>,
        /// Rows separated by ';', entries by spaces.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        #[arg(long, value_delimiter = ',')]
        universe: Vec<usize>,
        #[arg(long)]
        graph_file: Option<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        signature: Vec<String>,
        /// 2 x c matrix: rows separated by ';', entries by spaces.
        #[arg(long, allow_hyphen_values = true)]
        basis: Option<String>,
        /// generator | recognizer
        #[arg(long)]
        side: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Minimum rank of matrix subspaces and entanglement entropy.
    Minrank {
        /// gurvits | friedland | exact | sample | entropy
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        subspace_file: Option<String>,
        #[arg(long)]
        modulus: Option<u32>,
        #[arg(long)]
        trials: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

/// Collects flag values into a parameter table; unset flags are omitted so
/// the config defaults apply.
#[derive(Default)]
struct Table(Map<String, Value>);

impl Table {
    fn opt<T: Into<Value>>(mut self, k: &str, v: Option<T>) -> Self {
        if let Some(v) = v {
            self.0.insert(k.into(), v.into());
        }
        self
    }

    fn list<T: Into<Value>>(mut self, k: &str, v: Vec<T>) -> Self {
        if !v.is_empty() {
            self.0.insert(k.into(), Value::Array(v.into_iter().map(Into::into).collect()));
        }
        self
    }

    fn flag(mut self, k: &str, v: bool) -> Self {
        if v {
            self.0.insert(k.into(), Value::Bool(true));
        }
        self
    }
}

fn matrix_rows(s: Option<String>) -> Option<Value> {
    s.map(|s| {
        Value::Array(
            s.split(';')
                .map(|row| Value::Array(row.split_whitespace().map(|x| Value::String(x.into())).collect()))
                .collect(),
        )
    })
}

fn config(cmd: Cmd) -> Result<ExperimentConfig, CliError> {
    let (command, table, common) = match cmd {
        Cmd::Run { config } => {
            let text = tensorlab_cli::error::read_file(&config)?;
            return ExperimentConfig::from_json(&text);
        }
        Cmd::Terracini { mode, variety, varieties, r, r_max, trials, common } => (
            CommandKind::Terracini,
            Table::default()
                .opt("mode", mode)
                .opt("variety", variety)
                .list("varieties", varieties)
                .opt("r", r)
                .opt("r_max", r_max)
                .opt("trials", trials),
            common,
        ),
        Cmd::Rank { tensor_file, w_state, ring, bruteforce_rmax, tol, common } => (
            CommandKind::Rank,
            Table::default()
                .opt("tensor_file", tensor_file)
                .opt("w_state", w_state)
                .opt("ring", ring)
                .opt("bruteforce_rmax", bruteforce_rmax)
                .opt("tol", tol),
            common,
        ),
        Cmd::Decompose { method, form, tensor_file, second_tensor_file, decomposition_file, r_max, common } => (
            CommandKind::Decompose,
            Table::default()
                .opt("method", method)
                .list("form", form)
                .opt("tensor_file", tensor_file)
                .opt("second_tensor_file", second_tensor_file)
                .opt("decomposition_file", decomposition_file)
                .opt("r_max", r_max),
            common,
        ),
        Cmd::Kron { mode, lambda, mu, nu, d, n, a, p, q, r, n_max, stretch, common } => (
            CommandKind::Kron,
            Table::default()
                .opt("mode", mode)
                .opt("lambda", lambda)
                .opt("mu", mu)
                .opt("nu", nu)
                .opt("d", d)
                .opt("n", n)
                .opt("a", a)
                .opt("p", p)
                .opt("q", q)
                .opt("r", r)
                .opt("n_max", n_max)
                .flag("stretch", stretch),
            common,
        ),
        Cmd::Matchgate { mode, matrix, universe, graph_file, signature, basis, side, common } => (
            CommandKind::Matchgate,
            Table::default()
                .opt("mode", mode)
                .opt("matrix", matrix_rows(matrix))
                .list("universe", universe)
                .opt("graph_file", graph_file)
                .list("signature", signature)
                .opt("basis", matrix_rows(basis))
                .opt("side", side),
            common,
        ),
        Cmd::Minrank { mode, n, subspace_file, modulus, trials, common } => (
            CommandKind::Minrank,
            Table::default()
                .opt("mode", mode)
                .opt("n", n)
                .opt("subspace_file", subspace_file)
                .opt("modulus", modulus)
                .opt("trials", trials),
            common,
        ),
    };
    Ok(ExperimentConfig {
        command,
        parameters: table.0,
        seed: common.seed,
        output: OutputSpec { path: common.output, format: common.format },
    })
}

fn init_threads() {
    if let Some(n) = std::env::var("TENSORLAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if n > 0 {
            // fails only if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let result = config(cli.command).and_then(|c| {
        let to_stdout = c.output.path.is_none();
        execute(&c).map(|(_, text)| (to_stdout, text))
    });
    match result {
        Ok((to_stdout, text)) => {
            if to_stdout {
                print!("{text}");
                if !text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("tensorlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
