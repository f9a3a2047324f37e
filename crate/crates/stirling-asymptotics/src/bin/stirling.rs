use clap::Parser;
use stirling_asymptotics::cli::{run, CliArgs};

fn main() {
    let args = CliArgs::parse();
    std::process::exit(run(args));
}
