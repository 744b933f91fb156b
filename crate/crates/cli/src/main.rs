fn main() {
    std::process::exit(rheology_cli::run(std::env::args_os()));
}
