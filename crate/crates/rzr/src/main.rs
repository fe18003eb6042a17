fn main() -> std::process::ExitCode {
    rzr::cli::main_entry()
}
