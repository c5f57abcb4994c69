use clap::Parser;

use whichway::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(manifest) => {
            for out in &manifest.outputs {
                println!("{out}");
            }
            println!("{}", manifest.file_name());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
