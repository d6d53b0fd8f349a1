fn main() {
    std::process::exit(pecr::cli::main());
}
