use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eqchar::compute::{self, Quantity, Request};
use eqchar::config::{self, Config, Format};
use eqchar::error::{Error, Result};
use eqchar::{action, bundle, suites};

/// Exact verification of equivariant Chern-Weil identities.
#[derive(Parser)]
#[command(name = "eqchar", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// `key = value` file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long = "p-max", global = true)]
    p_max: Option<usize>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// plain, json or latex.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Suite name or `all`; repeatable or comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    suite: Vec<String>,
    /// Registered bundle example.
    #[arg(long, global = true)]
    example: Option<String>,
    #[arg(long = "corrupt-sign", global = true, hide = true)]
    corrupt_sign: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites.
    Verify,
    /// Print a quantity of a registered example.
    Compute(Target),
    /// Write a quantity as a JSON, LaTeX or plain document.
    Export {
        #[command(flatten)]
        target: Target,
        /// Destination file; standard output if absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// List suites, algebras, actions, examples and quantities.
    List {
        /// One of suites, algebras, actions, examples, quantities.
        what: Option<String>,
    },
}

#[derive(Args)]
struct Target {
    /// char-form, transgression, moment-map, curvature, theta or cochain.
    #[arg(long, default_value = "char-form")]
    what: String,
    /// id or X^2.
    #[arg(long, default_value = "id")]
    polynomial: String,
    /// Replace the group action by the trivial one.
    #[arg(long)]
    trivial_action: bool,
}

fn load_config(o: &Opts) -> Result<Config> {
    let mut c = match &o.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            let mut c = Config::default();
            for (k, v) in config::parse_pairs(&text)? {
                c.set(&k, &v)?;
            }
            c
        }
        None => Config::default(),
    };
    if let Some(s) = o.seed {
        c.seed = s;
    }
    if let Some(p) = o.p_max {
        c.p_max = p;
    }
    if let Some(n) = o.samples {
        c.samples = n;
    }
    if let Some(f) = &o.format {
        c.format = f.parse()?;
    }
    if !o.suite.is_empty() {
        c.suites = o.suite.clone();
    }
    if let Some(e) = &o.example {
        c.example = Some(e.clone());
    }
    c.corrupt_sign |= o.corrupt_sign;
    c.validate()?;
    Ok(c)
}

fn request(cfg: &Config, t: &Target) -> Result<Request> {
    Ok(Request {
        example: cfg.example.clone().ok_or_else(|| Error::Config("`--example` is required".into()))?,
        polynomial: t.polynomial.clone(),
        quantity: t.what.parse::<Quantity>()?,
        trivial_action: t.trivial_action,
        p_max: cfg.p_max,
    })
}

fn listing(what: Option<&str>) -> Result<String> {
    let sections: [(&str, Vec<&str>); 5] = [
        ("suites", suites::suite_names()),
        ("algebras", config::ALGEBRAS.to_vec()),
        ("actions", action::ACTIONS.to_vec()),
        ("examples", bundle::BUNDLES.to_vec()),
        ("quantities", compute::QUANTITIES.to_vec()),
    ];
    match what {
        None => Ok(sections.iter().map(|(h, items)| format!("{h}:\n{}", items.iter().map(|i| format!("  {i}\n")).collect::<String>())).collect()),
        Some(w) => sections
            .iter()
            .find(|(h, _)| *h == w)
            .map(|(_, items)| items.iter().map(|i| format!("{i}\n")).collect())
            .ok_or_else(|| Error::Config(format!("nothing to list under `{w}`"))),
    }
}

fn run(cli: Cli) -> Result<u8> {
    let cfg = load_config(&cli.opts)?;
    match cli.command {
        Command::Verify => {
            let reports = suites::run(&cfg)?;
            print!("{}", suites::render(&reports, cfg.format));
            Ok(suites::exit_code(&reports) as u8)
        }
        Command::Compute(t) => {
            let v = compute::compute(&request(&cfg, &t)?)?;
            print!("{}", compute::render(&v, cfg.format));
            Ok(0)
        }
        Command::Export { target, output } => {
            // Export defaults to JSON unless a format was given explicitly.
            let format = if cli.opts.format.is_some() || cli.opts.config.is_some() { cfg.format } else { Format::Json };
            let text = compute::render(&compute::compute(&request(&cfg, &target)?)?, format);
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::List { what } => {
            print!("{}", listing(what.as_deref())?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e @ (Error::Config(_) | Error::UnknownName { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
