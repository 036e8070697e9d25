fn main() {
    std::process::exit(atfree::cli::run(std::env::args().collect()));
}
