fn main() {
    std::process::exit(buckspec::run(std::env::args_os()));
}
