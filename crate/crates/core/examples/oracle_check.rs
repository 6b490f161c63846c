//! Cross-check every closed form against the brute-force Fock oracle at a
//! few parameter points.

use pacs_correlations::fock_oracle::{verify, Bounds};
use pacs_correlations::{ModelParams, Parity};

fn main() {
    let bounds = Bounds::default();
    for (a, m, parity) in [(0.1, 0, Parity::Odd), (0.5, 2, Parity::Even), (1.0, 1, Parity::Even), (3.0, 4, Parity::Odd)] {
        let rec = verify(&ModelParams::new(a, m, parity).unwrap(), None).unwrap();
        println!(
            "alpha2={a} m={m} k={} nmax={}: {}",
            parity.k(),
            rec.nmax,
            if rec.passes(&bounds) { "ok" } else { "MISMATCH" }
        );
        for d in &rec.deviations {
            println!("  {:<11} closed {:>12.9}  oracle {:>12.9}  diff {:+.1e}", d.quantity.name(), d.closed_form, d.oracle, d.signed);
        }
    }
}
