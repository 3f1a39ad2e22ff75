fn main() {
    std::process::exit(ypflow::cli::run(std::env::args_os()));
}
