fn main() {
    std::process::exit(hypersample::cli::run_from_args(std::env::args_os()));
}
