//! Photon-added coherent states built on a truncated Fock space, and their
//! overlaps compared with the Laguerre closed form.

use pacs_correlations::fock_oracle::{add_photons, add_photons_unnormalized, coherent_vector, truncation};
use pacs_correlations::special::{laguerre, pacs_overlap};
use pacs_correlations::{LaguerreOrder, StrengthParam};

fn main() {
    let alpha2 = 1.0;
    for m in 0..=4 {
        let nmax = truncation(alpha2, m);
        let plus = coherent_vector(alpha2.sqrt(), nmax).unwrap();
        let minus = coherent_vector(-alpha2.sqrt(), nmax).unwrap();
        let raw = add_photons_unnormalized(&plus, m).unwrap();
        let order = LaguerreOrder::new(m).unwrap();
        let numeric = add_photons(&plus, m).unwrap().inner(&add_photons(&minus, m).unwrap());
        let closed = pacs_overlap(order, StrengthParam::new(alpha2).unwrap());
        let factorial: f64 = (1..=m).map(f64::from).product();
        println!(
            "m={m} nmax={nmax}: norm^2 {:.12} vs m! L_m(-a) {:.12}; overlap {:+.12} vs {:+.12}",
            raw.norm_sqr(),
            factorial * laguerre(order, -alpha2).unwrap(),
            numeric,
            closed
        );
    }
}
