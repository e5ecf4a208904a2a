use std::process::exit;

fn main() {
    exit(valcone::cli::run(std::env::args_os()));
}
