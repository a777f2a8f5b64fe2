fn main() -> std::process::ExitCode {
    qlayer::cli::main_entry()
}
