fn main() {
    std::process::exit(finkat_cli::main_with(std::env::args_os()));
}
