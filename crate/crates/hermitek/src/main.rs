use clap::Parser;

fn main() {
    let cli = hermitek::cli::Cli::parse();
    if let Err(e) = hermitek::cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
