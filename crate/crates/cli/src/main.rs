fn main() {
    std::process::exit(tspn_cli::app::main_with(std::env::args_os()));
}
