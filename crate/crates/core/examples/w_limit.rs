//! Odd states at vanishing amplitude reduce to W-type states; compare the
//! analytic limits with the closed forms just above the switch point.

use pacs_correlations::{report, w_limit_report, LaguerreOrder, ModelParams, Parity};

fn main() {
    println!("{:>3} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}", "m", "E12", "C12", "D12", "D23", "D1_23", "Delta123");
    for m in 0..=4 {
        let w = w_limit_report(LaguerreOrder::new(m).unwrap());
        println!(
            "{m:>3} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            w.e12, w.c12, w.d12, w.d23, w.d1_23, w.delta123
        );
        let near = report(&ModelParams::new(1e-6, m, Parity::Odd).unwrap());
        println!(
            "    |alpha|^2 = 1e-6 differs by at most {:.1e}",
            [
                near.e12 - w.e12,
                near.c12 - w.c12,
                near.d12 - w.d12,
                near.d23 - w.d23,
                near.d1_23 - w.d1_23,
                near.delta123 - w.delta123,
            ]
            .iter()
            .fold(0.0f64, |acc, d| acc.max(d.abs()))
        );
    }
}
