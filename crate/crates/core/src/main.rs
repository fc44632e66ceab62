fn main() {
    std::process::exit(builtlat::cli::run(std::env::args_os()));
}
