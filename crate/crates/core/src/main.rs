fn main() {
    std::process::exit(latcut::cli::run(std::env::args_os()));
}
