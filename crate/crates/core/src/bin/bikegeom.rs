fn main() {
    std::process::exit(bikegeom::cli::run(std::env::args_os()));
}
