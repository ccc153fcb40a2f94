fn main() {
    std::process::exit(boundent_cli::run_command(std::env::args_os()));
}
