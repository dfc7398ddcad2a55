fn main() {
    let (code, out) = realrooted_cli::run(std::env::args_os());
    if code == realrooted_cli::EXIT_USAGE {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
