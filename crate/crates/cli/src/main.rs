mod args;
mod commands;
mod error;
mod inputs;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::error::CliResult;
use crate::inputs::Inputs;

fn run(cli: &Cli) -> CliResult<()> {
    if let Some(n) = cli.global.threads {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let artifact = commands::run(&cli.command, &Inputs::new(&cli.global))?;
    output::emit(&artifact, cli.global.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use clap::CommandFactory;

    use super::*;
    use crate::commands::COMMANDS;

    #[test]
    fn every_operation_has_exactly_one_subcommand() {
        let mut seen: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (path, ops) in COMMANDS {
            for op in *ops {
                seen.entry(op).or_default().push(path);
            }
        }
        for op in ergocorr::OPERATIONS {
            assert_eq!(seen.get(op).map(Vec::len), Some(1), "{op}: {:?}", seen.get(op));
        }
        for op in seen.keys() {
            assert!(ergocorr::OPERATIONS.contains(op), "{op} is not a library operation");
        }
    }

    #[test]
    fn registry_matches_the_command_tree() {
        let root = Cli::command();
        let mut leaves = Vec::new();
        for top in root.get_subcommands() {
            if top.has_subcommands() {
                for sub in top.get_subcommands() {
                    leaves.push(format!("{} {}", top.get_name(), sub.get_name()));
                }
            } else {
                leaves.push(top.get_name().to_string());
            }
        }
        leaves.retain(|l| !l.ends_with(" help"));
        let mut listed: Vec<String> = COMMANDS.iter().map(|(p, _)| p.to_string()).collect();
        leaves.sort();
        listed.sort();
        assert_eq!(leaves, listed);
    }

    #[test]
    fn command_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn documented_example_lines_parse() {
        for line in [
            "ergocorr corr --seq-a a.txt --seq-b b.txt --n-grid log:10:100000",
            "ergocorr experiment example3 --alpha golden --samples 500 --length 100000 --seed 7",
            "ergocorr cocycle fourjump --t 1/3 --tprime 1/7 --u 1/11 --alpha golden --depth 20",
            "ergocorr gen cocycle --alpha golden --t 1/3 --kappa0 -1 --n 10",
        ] {
            Cli::try_parse_from(line.split_whitespace()).unwrap_or_else(|e| panic!("{line}: {e}"));
        }
        assert!(Cli::try_parse_from(["ergocorr", "corr", "--bogus"]).is_err());
    }
}
