mod commands;
mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use chevfq::ffring::RingHandle;
use chevfq::wordnorm::DEFAULT_ELEMENT_CAP;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use commands::{Failure, Inputs, Outcome};
use output::Report;

#[derive(Parser)]
#[command(name = "chevfq", version, about = "Exact computations in Chevalley groups over F_q[T] and its finite quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(clap::Args)]
struct Common {
    /// Ring spec, e.g. `GF(2)`, `GF(3)[T]`, `GF(2)[T]/(1,0,0,1)`.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Root system: A1..A4, C2, G2.
    #[arg(long, global = true)]
    phi: Option<String>,
    /// Ideal generator as a coefficient list, e.g. `0,0,1` for (T^2).
    #[arg(long, global = true)]
    ideal: Option<String>,
    #[arg(long, global = true)]
    l: Option<usize>,
    /// Set of root elements, `coords@coeffs` items separated by `;`.
    #[arg(long, global = true)]
    t: Option<String>,
    /// Ball radius.
    #[arg(long, global = true)]
    k: Option<u32>,
    /// Degree cap for searches; for `relations` over F_q[T], coefficients
    /// range over degrees below this.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    deg_cap: u64,
    /// Cap on enumerated group elements (and on candidate sets for `delta`).
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    element_cap: u64,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value = ".chevfq-cache")]
    cache_dir: PathBuf,
    /// Neither read nor write caches.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Check every commutator relation against the golden sign table.
    Relations,
    /// Least L with G = (U+ U-)^L in a finite group.
    Cover,
    /// Factor a matrix of SL_n(F_q) or SL_n(F_q[T]) into elementary matrices.
    Factorize {
        /// Rows separated by `;`, entries by spaces.
        #[arg(long)]
        matrix: String,
    },
    /// Norm table of the conjugation-invariant word norm for --t.
    Ball,
    /// Delta_l of a finite Chevalley group.
    Delta,
    /// Irreducible h = f (mod g) with deg h = -m0 (mod n0).
    Kornblum {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Degree class `m0,n0`.
        #[arg(long)]
        class: String,
    },
    /// vn_2(R), r(R) and, over finite rings, the six-conjugate certificate.
    Vn2,
    /// Mennicke axioms and [C : E] for --ideal in --ring.
    Mennicke,
    /// The rank-two lower-bound construction for --l.
    Lowerbound {
        /// Further monic irreducibles, `;`-separated, when l exceeds r.
        #[arg(long)]
        extra: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Relations => "relations",
            Command::Cover => "cover",
            Command::Factorize { .. } => "factorize",
            Command::Ball => "ball",
            Command::Delta => "delta",
            Command::Kornblum { .. } => "kornblum",
            Command::Vn2 => "vn2",
            Command::Mennicke => "mennicke",
            Command::Lowerbound { .. } => "lowerbound",
        }
    }

    /// Command-specific parameters for the canonical config.
    fn params(&self) -> Value {
        match self {
            Command::Factorize { matrix } => json!({"matrix": matrix}),
            Command::Kornblum { f, g, class } => json!({"f": f, "g": g, "class": class}),
            Command::Lowerbound { extra } => json!({"extra": extra}),
            _ => json!({}),
        }
    }
}

fn inputs(c: &Common) -> Result<Inputs, Failure> {
    let ring = c.ring.as_deref().map(RingHandle::parse).transpose()?;
    let phi = c.phi.as_deref().map(str::parse).transpose().map_err(|e: chevfq::rootdata::RootError| Failure::Usage(e.to_string()))?;
    Ok(Inputs {
        ring,
        phi,
        ideal: c.ideal.clone(),
        l: c.l,
        t: c.t.clone(),
        k: c.k,
        deg_cap: c.deg_cap as usize,
        element_cap: c.element_cap as usize,
        cache_dir: (!c.no_cache).then(|| c.cache_dir.clone()),
    })
}

fn dispatch(cmd: &Command, inp: &Inputs) -> Result<Outcome, Failure> {
    match cmd {
        Command::Relations => commands::relations(inp),
        Command::Cover => commands::cover(inp),
        Command::Factorize { matrix } => commands::factorize(inp, matrix),
        Command::Ball => commands::ball(inp),
        Command::Delta => commands::delta(inp),
        Command::Kornblum { f, g, class } => commands::kornblum(inp, f, g, class),
        Command::Vn2 => commands::vn2(inp),
        Command::Mennicke => commands::mennicke(inp),
        Command::Lowerbound { extra } => commands::lowerbound(inp, extra.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let c = &cli.common;
    if let Some(n) = c.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let config = json!({
        "ring": c.ring.as_deref().map(|s| s.split_whitespace().collect::<String>()),
        "phi": c.phi, "ideal": c.ideal, "l": c.l, "t": c.t, "k": c.k,
        "deg_cap": c.deg_cap, "element_cap": c.element_cap,
        "params": cli.command.params(),
    });
    let name = cli.command.name();
    let key = output::report_key(name, &config);
    let cache_dir = (!c.no_cache).then_some(c.cache_dir.as_path());

    let (report, code) = match cache_dir.and_then(|d| output::load_cached(d, &key)) {
        Some(out) => {
            let code = if out.pass { 0 } else { 2 };
            (Report::complete(name, config, out, true), code)
        }
        None => match inputs(c).and_then(|inp| dispatch(&cli.command, &inp)) {
            Ok(out) => {
                if let Some(d) = cache_dir {
                    output::store_cached(d, &key, &out);
                }
                let code = if out.pass { 0 } else { 2 };
                let hit = out.cache_hit;
                (Report::complete(name, config, out.into(), hit), code)
            }
            Err(Failure::Usage(msg)) => {
                eprintln!("error: {msg}");
                return ExitCode::from(1);
            }
            Err(Failure::Cap { message, partial }) => {
                eprintln!("error: resource cap: {message}");
                (Report::incomplete(name, config, &message, partial), 3)
            }
        },
    };
    let text = match c.format {
        Format::Json => report.to_json(start.elapsed()),
        Format::Csv => report.to_csv(start.elapsed()),
    };
    let written = match &c.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
