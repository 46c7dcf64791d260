fn main() {
    std::process::exit(grtkit::cli::dispatch(std::env::args_os()));
}
