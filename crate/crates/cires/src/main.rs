use clap::Parser;

fn main() {
    let cli = cires::cli::Cli::parse();
    std::process::exit(cires::cli::run(&cli.command));
}
