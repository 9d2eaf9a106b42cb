fn main() {
    std::process::exit(divorder::cli::run(std::env::args_os()));
}
