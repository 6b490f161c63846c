//! Concurrence and entanglement of formation of the photon-added quasi-Bell
//! states as the coherent amplitude grows.

use pacs_correlations::{report, ModelParams, Parity};

fn main() {
    for parity in [Parity::Even, Parity::Odd] {
        println!("k = {}", parity.k());
        println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "alpha2", "E12 m=0", "E12 m=1", "E12 m=2", "E12 m=3");
        for a in [0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0] {
            let row: Vec<String> = (0..=3)
                .map(|m| format!("{:>10.6}", report(&ModelParams::new(a, m, parity).unwrap()).e12))
                .collect();
            println!("{a:>8.2} {}", row.join(" "));
        }
        println!();
    }
}
