fn main() {
    std::process::exit(qlab::cli::main_with_env());
}
