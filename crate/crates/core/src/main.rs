fn main() {
    std::process::exit(rauzy::cli::run(std::env::args_os()));
}
