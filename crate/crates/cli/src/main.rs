fn main() {
    std::process::exit(usc_spectra::main_with_args(std::env::args_os()));
}
