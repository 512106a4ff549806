use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use schreier::oracle::{MAX_MONOID_ORDER, MAX_TOTAL_SIZE};
use schreier_cli::commands::{run, Command, Mode, Options};

/// Extensions of finite monoids: classification, constructions, cohomology
/// and exhaustive censuses.
///
/// Inputs are JSON documents; reports are JSON on stdout. Exit code 0 means
/// success, 1 a well-formed input the operation rejects, 2 unreadable input.
#[derive(Parser, Debug)]
#[command(name = "schreier", version, after_help = limits())]
struct Cli {
    command: Command,
    /// Input document; repeat in the order kernel, total, quotient as needed.
    #[arg(long = "input", value_name = "PATH")]
    inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Strict)]
    mode: Mode,
    /// Generator of the fiber over `h`, as `h:index` into the total monoid.
    #[arg(long = "generator", value_name = "H:INDEX", value_parser = parse_generator)]
    generators: Vec<(usize, usize)>,
    /// Monoid order for `enumerate`, or the largest total size of a census.
    #[arg(long)]
    max_size: Option<usize>,
    /// Census of split extensions only.
    #[arg(long)]
    split: bool,
    /// Indented output.
    #[arg(long)]
    pretty: bool,
}

fn limits() -> String {
    format!("Limits: catalog monoids have order at most {MAX_MONOID_ORDER}; censuses have total size at most {MAX_TOTAL_SIZE}.")
}

fn parse_generator(s: &str) -> Result<(usize, usize), String> {
    let (h, u) = s.split_once(':').ok_or("expected h:index")?;
    let h = h.trim().parse().map_err(|_| format!("bad quotient element `{h}`"))?;
    let u = u.trim().parse().map_err(|_| format!("bad generator index `{u}`"))?;
    Ok((h, u))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        inputs: cli.inputs,
        mode: cli.mode,
        generators: cli.generators,
        max_size: cli.max_size,
        split: cli.split,
    };
    let (code, report) = run(cli.command, &opts);
    let text = if cli.pretty {
        serde_json::to_string_pretty(&report)
    } else {
        serde_json::to_string(&report)
    };
    println!("{}", text.expect("reports serialize"));
    ExitCode::from(code as u8)
}
