use std::io::Write;

fn main() {
    let mut stdout = std::io::stdout().lock();
    let code = ascgf_cli::run_with(std::env::args_os(), &mut stdout);
    let _ = stdout.flush();
    std::process::exit(code);
}
