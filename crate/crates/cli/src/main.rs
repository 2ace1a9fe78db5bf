use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use tensormult_core::ennola::{
    render_table, table_rows, verify_suite, Format, MasterContext, PsiCache, Quantity, Registry, VerifyOptions,
};
use tensormult_core::partition::MultiPartition;
use tensormult_core::types::MultiType;
use tensormult_core::Error;

/// Tensor-product multiplicity polynomials for GL_n(F_q) and GU_n(F_q).
#[derive(Parser)]
#[command(name = "tensormult", version)]
struct Cli {
    /// Number of tensor factors.
    #[arg(long, global = true, default_value_t = 3)]
    k: usize,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory of the Ψ cache.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Compute everything from scratch, neither reading nor writing the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one quantity at a multipartition or multi-type.
    Pair(PairArgs),
    /// All nonzero values for one n, in table order.
    Table(TableArgs),
    /// Check the identity families for every multipartition up to n.
    Verify(VerifyArgs),
    /// Build or clear the Ψ cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
    /// List the available quantities.
    List,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    which: String,
    /// Multipartition, e.g. "1^4,2.1^2,2^2".
    #[arg(long, conflicts_with = "type_", required_unless_present = "type_")]
    mu: Option<String>,
    /// Multi-type, e.g. "1:1^2^1,1:1^2^1,2:1^1" (components separated by ',').
    #[arg(long = "type")]
    type_: Option<String>,
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    which: String,
    #[arg(long, visible_alias = "nmax")]
    n: usize,
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, visible_alias = "nmax")]
    n: usize,
    /// Largest n for the infinite-product comparisons.
    #[arg(long)]
    oracle_max: Option<usize>,
    /// Only `text` and `json` apply.
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: Format,
    #[arg(long, hide = true)]
    inject_sign_bug: bool,
}

#[derive(Subcommand)]
enum CacheAction {
    /// Compute Ψ up to n and write it.
    Build {
        #[arg(long, visible_alias = "nmax")]
        n: usize,
    },
    /// Remove all cache files.
    Clear,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Io(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(e) => Failure::Io(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct App {
    k: usize,
    cache: Option<PsiCache>,
    registry: Registry,
}

impl App {
    fn context(&self, order: usize) -> Result<MasterContext, Failure> {
        if order == 0 {
            return Err(Failure::Usage("n must be at least 1".into()));
        }
        match &self.cache {
            None => Ok(MasterContext::build(self.k, order)?),
            Some(cache) => {
                let (ctx, warnings) = cache.context(self.k, order)?;
                for w in warnings {
                    eprintln!("warning: {w}");
                }
                Ok(ctx)
            }
        }
    }

    fn quantity(&self, name: &str) -> Result<&dyn Quantity, Failure> {
        self.registry
            .get(name)
            .ok_or_else(|| Failure::Usage(format!("unknown quantity {name:?}; expected one of {}", self.registry.names().join(", "))))
    }

    fn pair(&self, args: &PairArgs) -> Result<(), Failure> {
        let q = self.quantity(&args.which)?;
        let (label, value) = if let Some(text) = &args.mu {
            let mu = MultiPartition::parse(text)?;
            if mu.k() != self.k {
                return Err(Error::AlphabetMismatch(self.k, mu.k()).into());
            }
            let value = match q.eval_direct(&mu) {
                Some(v) => v?,
                None => q.eval(&self.context(mu.size())?, &mu)?,
            };
            (mu.to_string(), value)
        } else {
            let omega = MultiType::parse(args.type_.as_deref().unwrap_or_default())?;
            if omega.k() != self.k {
                return Err(Error::AlphabetMismatch(self.k, omega.k()).into());
            }
            let value = q.eval_type(&self.context(omega.size())?, &omega)?;
            (omega.to_string(), value)
        };
        match args.format {
            Format::Text => println!("{value}"),
            Format::Tex => println!("{}", value.to_tex()),
            Format::Csv => println!("input,polynomial\n{label},{value}"),
            Format::Json => {
                let doc = json!({"quantity": q.name(), "input": label, "poly": value.to_json(), "text": value.to_string()});
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            }
        }
        Ok(())
    }

    fn table(&self, args: &TableArgs) -> Result<(), Failure> {
        let q = self.quantity(&args.which)?;
        let ctx = self.context(args.n)?;
        let rows = table_rows(&ctx, q, args.n)?;
        print!("{}", render_table(&rows, self.k, q, args.format));
        Ok(())
    }

    fn verify(&self, args: &VerifyArgs) -> Result<(), Failure> {
        let ctx = self.context(args.n)?;
        let opts = VerifyOptions {
            oracle_max: args.oracle_max,
            inject_sign_bug: args.inject_sign_bug,
        };
        let report = verify_suite(&ctx, &opts)?;
        match args.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable")),
            _ => println!("{report}"),
        }
        if report.passed() {
            Ok(())
        } else {
            Err(Failure::Verify)
        }
    }

    fn cache(&self, action: &CacheAction) -> Result<(), Failure> {
        let cache = self
            .cache
            .as_ref()
            .ok_or_else(|| Failure::Usage("no cache directory; pass --cache-dir".into()))?;
        match action {
            CacheAction::Build { n } => {
                if *n == 0 {
                    return Err(Failure::Usage("n must be at least 1".into()));
                }
                let ctx = MasterContext::build(self.k, *n)?;
                cache.store(&ctx)?;
                println!("wrote Ψ for k = {}, n ≤ {n} to {}", self.k, cache.dir().display());
            }
            CacheAction::Clear => {
                let removed = cache.clear(None)?;
                println!("removed {removed} files from {}", cache.dir().display());
            }
        }
        Ok(())
    }

    fn list(&self) {
        for q in self.registry.iter() {
            println!("{:<16}{}", q.name(), q.summary());
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    if cli.k == 0 {
        return Err(Failure::Usage("k must be at least 1".into()));
    }
    let cache = if cli.no_cache {
        None
    } else {
        cli.cache_dir
            .or_else(|| dirs::data_dir().map(|d| d.join("tensormult")))
            .map(PsiCache::new)
    };
    let app = App {
        k: cli.k,
        cache,
        registry: Registry::standard(),
    };
    match &cli.command {
        Command::Pair(args) => app.pair(args),
        Command::Table(args) => app.table(args),
        Command::Verify(args) => app.verify(args),
        Command::Cache { action } => app.cache(action),
        Command::List => {
            app.list();
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
