fn main() {
    std::process::exit(randic_cli::run_cli(std::env::args_os()));
}
