fn main() {
    std::process::exit(dyer::cli::run(std::env::args()));
}
