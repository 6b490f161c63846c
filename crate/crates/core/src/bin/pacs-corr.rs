fn main() {
    std::process::exit(pacs_correlations::cli::run(std::env::args_os()));
}
