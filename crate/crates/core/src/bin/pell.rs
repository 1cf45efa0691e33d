fn main() {
    let stdin = std::io::stdin();
    let code = pell_core::cli::main_with_args(std::env::args_os(), stdin.lock(), std::io::stdout(), std::io::stderr());
    std::process::exit(code);
}
