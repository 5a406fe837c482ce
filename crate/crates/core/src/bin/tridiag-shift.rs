fn main() {
    std::process::exit(tridiag_shift::experiments::cli::run(std::env::args_os()));
}
