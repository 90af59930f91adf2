fn main() {
    std::process::exit(fanokit::cli::run(std::env::args_os()));
}
