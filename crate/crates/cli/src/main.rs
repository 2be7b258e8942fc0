fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let code = finmet_cli::run_command(&argv, &mut std::io::stdout().lock());
    std::process::exit(code);
}
