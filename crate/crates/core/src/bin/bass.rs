use std::io::{stderr, stdin, stdout};

fn main() {
    let code = bass_core::cli::main_with(std::env::args_os(), &mut stdin(), &mut stdout(), &mut stderr());
    std::process::exit(code);
}
