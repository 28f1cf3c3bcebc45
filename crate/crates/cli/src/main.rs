use std::process::ExitCode;

fn main() -> ExitCode {
    hangnail::run()
}
