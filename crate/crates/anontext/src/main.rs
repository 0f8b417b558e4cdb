fn main() {
    std::process::exit(anontext::cli::run(std::env::args_os()));
}
