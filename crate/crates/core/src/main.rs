fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(vicious_core::cli::main_with_args(&args));
}
