use clap::Parser;

fn main() {
    let cli = spin_core::cli::Cli::parse();
    std::process::exit(spin_core::cli::run(&cli));
}
