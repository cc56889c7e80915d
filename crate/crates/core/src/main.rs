fn main() {
    std::process::exit(leviweb::io::cli::run_cli());
}
