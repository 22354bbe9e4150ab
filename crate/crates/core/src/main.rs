use std::io::Write;

fn main() {
    let mut stdout = std::io::stdout().lock();
    let code = rgt_core::cli::run(std::env::args_os(), &mut stdout, &mut std::io::stderr().lock());
    let _ = stdout.flush();
    std::process::exit(code);
}
