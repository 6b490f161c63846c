//! Pairwise discord, bipartite discord and the monogamy deficit of the
//! quasi-GHZ states.

use pacs_correlations::{report, ModelParams, Parity};

fn main() {
    let m = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    for parity in [Parity::Even, Parity::Odd] {
        println!("m = {m}, k = {}", parity.k());
        println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "alpha2", "D12", "D23", "D1_23", "Delta123");
        for a in [0.02, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2] {
            let r = report(&ModelParams::new(a, m, parity).unwrap());
            println!("{a:>8.2} {:>10.6} {:>10.6} {:>10.6} {:>10.6}", r.d12, r.d23, r.d1_23, r.delta123);
        }
        println!();
    }
}
