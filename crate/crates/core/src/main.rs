fn main() -> std::process::ExitCode {
    entperc::cli::main()
}
