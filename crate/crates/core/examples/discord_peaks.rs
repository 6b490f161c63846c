//! Position and height of the D12 and D23 maxima for symmetric states.

use pacs_correlations::correlations::{discord_12_peak, discord_23_peak};
use pacs_correlations::{LaguerreOrder, Parity};

fn main() {
    for m in 0..=3 {
        let order = LaguerreOrder::new(m).unwrap();
        let d12 = discord_12_peak(order, Parity::Even);
        let d23 = discord_23_peak(order, Parity::Even);
        println!(
            "m={m}: D12 max {:.6} at alpha2 {:.4}; D23 max {:.6} at alpha2 {:.4}",
            d12.value, d12.alpha2, d23.value, d23.alpha2
        );
    }
}
