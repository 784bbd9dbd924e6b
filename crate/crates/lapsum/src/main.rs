fn main() {
    std::process::exit(lapsum::cli::main_entry());
}
