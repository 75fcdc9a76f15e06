fn main() {
    std::process::exit(equitrace::cli::main());
}
