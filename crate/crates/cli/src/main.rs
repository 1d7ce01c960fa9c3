fn main() {
    std::process::exit(dyck_cli::run(std::env::args_os()));
}
