use clap::Parser;

fn main() {
    let cli = trilink::cli::Cli::parse();
    if let Err(e) = trilink::cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
