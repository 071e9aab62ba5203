fn main() {
    std::process::exit(index_transforms::cli::main_with_args(std::env::args_os()));
}
