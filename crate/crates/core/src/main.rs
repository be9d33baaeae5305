fn main() {
    std::process::exit(epitaxy::cli::main_with_args(std::env::args_os()));
}
