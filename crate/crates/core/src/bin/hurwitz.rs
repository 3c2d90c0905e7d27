use std::io::Write;

fn main() {
    hurwitz_core::cli::init_logging();
    let out = hurwitz_core::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
