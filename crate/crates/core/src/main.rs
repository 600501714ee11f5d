fn main() {
    std::process::exit(qcut::cli::run(std::env::args_os()));
}
