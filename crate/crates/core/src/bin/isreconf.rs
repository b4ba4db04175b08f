fn main() -> std::process::ExitCode {
    isreconf::cli::main()
}
