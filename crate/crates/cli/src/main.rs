fn main() {
    std::process::exit(wordrep_cli::run(std::env::args_os()));
}
