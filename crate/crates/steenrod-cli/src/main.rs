use clap::Parser;

fn main() {
    let cli = steenrod_cli::Cli::parse();
    let outcome = steenrod_cli::run(&cli);
    print!("{}", outcome.stdout);
    std::process::exit(outcome.code);
}
