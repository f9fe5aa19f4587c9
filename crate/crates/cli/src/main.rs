fn main() {
    std::process::exit(edgeiso_cli::main_with_args(std::env::args_os()));
}
