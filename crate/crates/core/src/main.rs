fn main() {
    std::process::exit(semidet::cli::main_with_args(std::env::args_os()));
}
