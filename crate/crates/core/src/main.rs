fn main() {
    std::process::exit(qhowe::cli::run(std::env::args_os()));
}
