fn main() {
    std::process::exit(exactify_cli::run(std::env::args_os()));
}
