fn main() -> std::process::ExitCode {
    cesaro_lab::cli::main_with_args(std::env::args_os())
}
