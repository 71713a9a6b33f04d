fn main() {
    std::process::exit(mevolve::cli::main());
}
