use clap::Parser;

fn main() {
    let cli = quantcat::cli::Cli::parse();
    std::process::exit(quantcat::cli::main_with(cli));
}
