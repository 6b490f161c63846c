//! Run the default 400-point verification grid and summarize it.

use pacs_correlations::cli::{run_verification, VerifyGrid};
use pacs_correlations::fock_oracle::Bounds;

fn main() {
    let summary = run_verification(&VerifyGrid::default(), &Bounds::default(), None).unwrap();
    println!(
        "{} points, {} failing, max entropy/concurrence deviation {:.2e}, max discord deviation {:.2e}",
        summary.records.len(),
        summary.failures,
        summary.max_exact,
        summary.max_discord
    );
}
