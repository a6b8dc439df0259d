use std::io::Write;

fn main() {
    koszul_lab::cli::init_threads();
    let out = koszul_lab::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
