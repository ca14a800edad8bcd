use clap::Parser;
use kacseq::cli::{run, Args};
use std::io::Write;

fn main() {
    let args = Args::parse();
    let out = run(&args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.exit_code);
}
