fn main() {
    std::process::exit(gshds::cli::main_entry(std::env::args_os()));
}
