fn main() {
    std::process::exit(tautrec::cli::main())
}
