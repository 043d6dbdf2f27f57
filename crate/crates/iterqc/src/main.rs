fn main() -> std::process::ExitCode {
    iterqc::cli::main()
}
