fn main() {
    std::process::exit(pilegame::cli::main_with_std_io());
}
