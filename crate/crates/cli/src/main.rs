//! `anderson1d <command> key=value ...`

mod commands;
mod error;
mod params;

use std::process::ExitCode;

use error::{CliError, CliResult};
use params::Params;

const USAGE: &str = "\
usage: anderson1d <command> [key=value ...] [config=<file>] [out=<path>] [workers=<n>]

commands:
  generate    sample a realization            dist=exp|stretched|pareto|geometric|bernoulli X=<len>
                                              [eta alpha xm q p l=0.5 h=1 seed=0]
  count       count negative eigenvalues      realization=<file> C=<amp> [W=log|power|const|table
                                              s=2 beta knots bc=D refine_initial refine_max refine_tol]
  well        single-well ground state sweep  [L=25,50,100,200 l=1 h=1 bc=D]
  borderline  growth experiments              dist=... [multipliers=0.25,1,4 grid=1000,10000,100000
                                              trials=100 seed=0 mode=whole|bracket s l h]
                                              out=<prefix> writes per-multiplier summary and trial CSVs
  expect      expected count per well         dist=... [w=0.5,1,2 samples=100000 seed=0]

exit codes: 0 ok, 2 usage, 3 input data, 4 numerical failure";

fn run(args: &[String]) -> CliResult<()> {
    let (command, rest) = args.split_first().ok_or_else(|| CliError::Usage("missing command".into()))?;
    let params = Params::from_tokens(rest)?;
    if let Some(raw) = params.peek("workers") {
        let n: usize = raw.parse().map_err(|_| CliError::Usage(format!("bad value for `workers`: `{raw}`")))?;
        if n == 0 {
            return Err(CliError::Usage("workers must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?;
    }
    match command.as_str() {
        "generate" => commands::generate(params),
        "count" => commands::count(params),
        "well" => commands::well(params),
        "borderline" => commands::borderline_cmd(params),
        "expect" => commands::expect(params),
        other => Err(CliError::Usage(format!("unknown command `{other}`"))),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if matches!(args.first().map(String::as_str), Some("-h" | "--help" | "help")) {
        println!("{USAGE}");
        return ExitCode::SUCCESS;
    }
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("anderson1d: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("run `anderson1d help` for usage");
            }
            e.exit_code()
        }
    }
}
