//! Where discord monogamy breaks down for each photon number and parity.

use pacs_correlations::cli::format_threshold;
use pacs_correlations::{violation_threshold, LaguerreOrder, Parity};

fn main() {
    for parity in [Parity::Odd, Parity::Even] {
        for m in 0..=4 {
            let m = LaguerreOrder::new(m).unwrap();
            println!("{}", format_threshold(m, parity, &violation_threshold(m, parity)));
        }
    }
}
