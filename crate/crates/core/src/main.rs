fn main() {
    std::process::exit(hd1::cli::run(std::env::args_os()));
}
