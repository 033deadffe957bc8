use std::io::Write;

fn main() {
    let outcome = redsyl_cli::run_from(std::env::args_os());
    if outcome.written.is_none() {
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(outcome.output.as_bytes());
        let _ = stdout.flush();
    }
    std::process::exit(outcome.code);
}
