fn main() {
    let code = labelcut_cli::run_command(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
