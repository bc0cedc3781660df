use clap::Parser;
use khovanov::cli::{run, Cli};

fn main() {
    env_logger::init();
    let cli = Cli::parse();
    let code = run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr());
    std::process::exit(code);
}
