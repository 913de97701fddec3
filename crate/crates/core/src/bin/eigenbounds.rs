fn main() {
    std::process::exit(eigenbounds::cli::run(std::env::args_os()));
}
