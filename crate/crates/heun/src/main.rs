use clap::Parser;

fn main() {
    let code = heun_cli::run(heun_cli::Cli::parse());
    std::process::exit(code);
}

mod heun_cli {
    pub use heun::jobs::cli::{run, Cli};
}
