use clap::Parser;

use ktweb_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = run(cli, &mut std::io::stdin(), &mut out) {
        eprintln!("ktweb: {e}");
        std::process::exit(e.exit_code());
    }
}
