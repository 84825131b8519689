fn main() {
    std::process::exit(hiergap::cli::run());
}
