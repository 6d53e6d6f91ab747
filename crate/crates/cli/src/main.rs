fn main() {
    std::process::exit(unitlab_cli::run(std::env::args_os()));
}
