use clap::Parser;

fn main() {
    if let Some(n) = std::env::var("PKIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        pkit::par::init_threads(n);
    }
    let cli = pkit::cli::Cli::parse();
    std::process::exit(pkit::cli::run(cli));
}
