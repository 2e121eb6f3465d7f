fn main() {
    std::process::exit(placenet_cli::run(std::env::args_os()));
}
