fn main() {
    std::process::exit(lorentzkit::cli::run(std::env::args_os()));
}
