fn main() {
    std::process::exit(otband::cli::main_entry());
}
