fn main() {
    std::process::exit(chromhom::cli::run(std::env::args_os()));
}
