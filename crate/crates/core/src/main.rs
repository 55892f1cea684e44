fn main() {
    jumplines::cli::init_threads_from_env();
    let code = jumplines::cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
