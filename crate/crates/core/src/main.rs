use clap::Parser;

fn main() {
    std::process::exit(matcoh::cli::run(matcoh::cli::Cli::parse()));
}
