fn main() {
    std::process::exit(pzeta::cli::main());
}
