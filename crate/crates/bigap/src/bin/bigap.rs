//! Thin executable shell: all behavior lives in the library.

fn main() {
    std::process::exit(bigap::cli::run());
}
