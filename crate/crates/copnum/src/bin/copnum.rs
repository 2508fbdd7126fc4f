fn main() {
    std::process::exit(copnum::cli::main());
}
