use clap::Parser;

fn main() {
    let cli = orecalc::cli::Cli::parse();
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    let code = orecalc::cli::run(cli, &mut input, &mut out, &mut err);
    std::process::exit(code);
}
