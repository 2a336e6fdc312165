fn main() {
    std::process::exit(ema_weyl::cli::run(std::env::args_os()));
}
