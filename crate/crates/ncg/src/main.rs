fn main() {
    std::process::exit(ncg::cli::run(std::env::args_os()));
}
