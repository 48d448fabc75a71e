fn main() {
    std::process::exit(saw_cli::run(std::env::args_os()));
}
