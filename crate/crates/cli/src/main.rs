use clap::Parser;

fn main() {
    let cli = qudit_fourier_cli::Cli::parse();
    if let Err(e) = qudit_fourier_cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
