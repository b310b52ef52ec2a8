fn main() {
    std::process::exit(magblock::cli::main_with_args(std::env::args_os()));
}
