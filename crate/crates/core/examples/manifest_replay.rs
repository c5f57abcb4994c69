//! Run a command through the manifest layer, then replay the manifest and
//! compare the outputs byte for byte.

use std::f64::consts::PI;
use std::fs;

use whichway::cli::{execute, replay, Command, RunManifest};
use whichway::ExperimentConfig;

fn main() -> whichway::Result<()> {
    let root = std::env::temp_dir().join(format!("whichway-replay-{}", std::process::id()));
    let (first, second) = (root.join("first"), root.join("second"));

    let command = Command::Simulate {
        n_photons: 1_000_000,
        seed: 2024,
        bins: 60,
        window: [-PI, PI],
        confidence: 0.99,
        paper_literal: false,
        ceiling: 1e3,
        svg: true,
    };
    let manifest = execute(&command, &ExperimentConfig::new(0.1)?, &first)?;
    println!(
        "wrote {} files to {}",
        manifest.outputs.len(),
        first.display()
    );

    let loaded = RunManifest::load(&first.join(manifest.file_name()))?;
    replay(&loaded, &second)?;

    let mut names = manifest.outputs.clone();
    names.push(manifest.file_name());
    for name in &names {
        let same = fs::read(first.join(name))? == fs::read(second.join(name))?;
        println!(
            "  {name:<24} {}",
            if same { "identical" } else { "DIFFERS" }
        );
    }
    fs::remove_dir_all(&root)?;
    Ok(())
}
