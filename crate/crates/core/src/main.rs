fn main() {
    std::process::exit(polyg::cli::main_with_args(std::env::args_os()));
}
