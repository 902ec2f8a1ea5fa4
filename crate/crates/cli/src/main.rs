use std::io::Write;

fn main() {
    let inv = emergent_space_cli::execute(std::env::args_os());
    std::io::stdout().write_all(inv.stdout.as_bytes()).expect("stdout");
    std::io::stderr().write_all(inv.stderr.as_bytes()).expect("stderr");
    std::process::exit(inv.code);
}
