fn main() {
    std::process::exit(chowcalc::cli::main());
}
