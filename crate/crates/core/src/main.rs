fn main() {
    std::process::exit(widom_core::cli::run(std::env::args_os()));
}
