use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let (code, output) = prenichols::cli::run(&args);
    let mut stdout = std::io::stdout();
    let _ = stdout.write_all(output.as_bytes());
    std::process::exit(code);
}
