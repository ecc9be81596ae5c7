fn main() {
    std::process::exit(bds_cli::run_main());
}
