fn main() {
    std::process::exit(besselsum_cli::run::main_with(std::env::args_os()));
}
