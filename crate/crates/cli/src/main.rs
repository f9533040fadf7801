fn main() {
    std::process::exit(twospin_cli::run(std::env::args_os()));
}
