fn main() {
    std::process::exit(graphguess::cli::main());
}
