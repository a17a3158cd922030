//! Loads a model file, re-serializes it and runs a command with machine
//! output, as the `gkm-cm` binary does.

use gkm_cm::io::{load_model, run_command, to_canonical_json, Command, OutputFormat, RunOptions};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "corpus/interval".into());
    let m = load_model(&path).unwrap();
    print!("{}", to_canonical_json(&m.to_document()));
    let options = RunOptions {
        max_degree: 3,
        format: OutputFormat::Machine,
        ..Default::default()
    };
    let out = run_command(Command::Hilbert, &path, options);
    print!("{}", out.rendered);
    std::process::exit(out.exit_code);
}
