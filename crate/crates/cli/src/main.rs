fn main() {
    std::process::exit(fracdiff_cli::run(std::env::args_os()));
}
