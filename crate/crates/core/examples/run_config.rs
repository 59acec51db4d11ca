//! A full run from a TOML config, as the `run` subcommand does it.

use dunkl_lab::cli::{run, RunConfig};

const CONFIG: &str = r#"
suites = ["verify-core", "verify-closed-forms", "schatten-scan"]
seed = 7

[geometry]
n = 1
kappa = [1.0]
"#;

fn main() -> dunkl_lab::Result<()> {
    let mut cfg = RunConfig::parse(CONFIG)?;
    cfg.output_dir = std::env::temp_dir().join("dunkl-lab-example-run");
    let outcome = run(&cfg)?;
    for s in &outcome.summary.suites {
        println!("{:20} passed={} max residual {:.2e} files {:?}", s.suite.name(), s.passed, s.max_residual, s.files);
    }
    println!("exit status would be {}", outcome.exit_code());
    Ok(())
}
