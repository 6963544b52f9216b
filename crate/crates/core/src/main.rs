fn main() {
    std::process::exit(orbcheck::cli::run(std::env::args_os()));
}
