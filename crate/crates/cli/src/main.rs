fn main() {
    std::process::exit(reidemeister::run(std::env::args_os()));
}
