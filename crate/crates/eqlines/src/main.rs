fn main() {
    std::process::exit(eqlines::cli::run(std::env::args_os()));
}
