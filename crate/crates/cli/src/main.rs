use clap::Parser;

use negspec_cli::Cli;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version print on stdout and succeed; genuine usage
            // errors count as invalid configuration (exit 1).
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = negspec_cli::run(cli) {
        eprintln!("{err}");
        std::process::exit(err.exit_code());
    }
}
