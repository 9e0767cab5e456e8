fn main() {
    std::process::exit(seriation::cli::run_from_args(std::env::args_os()));
}
