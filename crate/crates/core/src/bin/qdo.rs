fn main() {
    std::process::exit(qdo::io::cli::run(std::env::args_os()));
}
