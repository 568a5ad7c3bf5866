fn main() {
    std::process::exit(symdual::cli::main());
}
