// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = rpla::cli::run(std::env::args_os());
    print!("{}", outcome.rendered);
    eprint!("{}", outcome.diagnostics);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.exit_code as u8)
}
