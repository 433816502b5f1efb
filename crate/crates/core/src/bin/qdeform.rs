fn main() {
    std::process::exit(qdeform::cli::main());
}
