use std::process::ExitCode;

fn main() -> ExitCode {
    let code = conequant_cli::main_with(std::env::args(), &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code)
}
