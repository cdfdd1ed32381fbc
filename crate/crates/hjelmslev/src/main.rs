fn main() {
    std::process::exit(hjelmslev::cli::run(std::env::args()));
}
