fn main() {
    std::process::exit(vlink::cli::run(std::env::args_os()));
}
