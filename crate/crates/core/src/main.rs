fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, out, err) = acylbounds::cli::run_cli(&args);
    print!("{out}");
    eprint!("{err}");
    std::process::exit(code);
}
