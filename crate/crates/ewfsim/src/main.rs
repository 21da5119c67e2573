use std::process::ExitCode;

fn main() -> ExitCode {
    ewfsim::cli::main()
}
