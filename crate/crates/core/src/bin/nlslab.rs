use clap::Parser;
use nls_lab::cli::{main_with, Args};

fn main() {
    std::process::exit(main_with(Args::parse()));
}
