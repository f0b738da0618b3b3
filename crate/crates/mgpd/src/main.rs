fn main() {
    std::process::exit(mgpd::cli::run());
}
