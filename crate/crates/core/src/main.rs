fn main() {
    std::process::exit(veckm::cli::cli_main(std::env::args_os()));
}
