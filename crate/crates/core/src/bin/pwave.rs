fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(periodic_waves::cli::run(&args));
}
