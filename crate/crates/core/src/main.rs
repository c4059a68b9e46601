fn main() {
    std::process::exit(hgft::cli::run());
}
