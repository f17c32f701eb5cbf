fn main() {
    equisynth::cli::init_logging();
    std::process::exit(equisynth::cli::run(std::env::args_os()));
}
