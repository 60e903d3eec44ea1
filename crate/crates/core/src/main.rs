use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let seed = std::env::var(reflect_lab::cli::SEED_ENV).ok();
    let code = reflect_lab::cli::main_with(
        std::env::args_os(),
        seed.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
