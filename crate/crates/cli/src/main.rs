fn main() {
    std::process::exit(bitchrom_cli::main_with_args(std::env::args_os()));
}
