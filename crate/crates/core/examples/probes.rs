//! Running the randomized property probes.

use fclust::{run_probe, ProbeConfig, ProbeId};

fn main() -> fclust::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let config = ProbeConfig { spaces: 30, morphisms: 30, ..ProbeConfig::with_seed(seed) };
    for probe in ProbeId::ALL {
        let report = run_probe(probe, &config)?;
        println!(
            "{:<22} trials {:>5}  violations {}  findings {}",
            probe.name(),
            report.trials,
            report.violations.len(),
            report.findings.len()
        );
    }
    Ok(())
}
