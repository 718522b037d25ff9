fn main() {
    std::process::exit(ara_core::cli::main());
}
