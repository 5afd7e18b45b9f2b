fn main() {
    std::process::exit(cornercurve::cli::main());
}
