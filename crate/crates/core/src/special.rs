//! Scalar special functions and entropy primitives.

use crate::error::{Error, Result};

/// Largest photon-addition order accepted anywhere in the crate.
pub const MAX_ORDER: u32 = 64;

/// Width of the band outside `[0, 1]` that entropy arguments may drift into through
/// round-off before being clamped. Larger excursions are reported as errors.
pub const ENTROPY_GUARD: f64 = 1e-12;

/// Upper end of the window where the first-order expansion of `κ_m` is offered.
pub const SMALL_ALPHA_WINDOW: f64 = 0.05;

/// Number of photons `m` added to the first mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaguerreOrder(u32);

impl LaguerreOrder {
    pub fn new(m: u32) -> Result<Self> {
        if m > MAX_ORDER {
            return Err(Error::Domain(format!(
                "photon-addition order {m} exceeds the cap {MAX_ORDER}"
            )));
        }
        Ok(Self(m))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl std::fmt::Display for LaguerreOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Coherent-state strength `|α|²`.
///
/// The overlap `p = ⟨−α|α⟩ = e^{−2|α|²}` is always derived from it, never stored.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct StrengthParam(f64);

impl StrengthParam {
    pub fn new(alpha2: f64) -> Result<Self> {
        if !alpha2.is_finite() || alpha2 < 0.0 {
            return Err(Error::Domain(format!(
                "|alpha|^2 must be finite and non-negative, got {alpha2}"
            )));
        }
        Ok(Self(alpha2))
    }

    /// Strength from the Glauber overlap `p ∈ (0, 1]`.
    pub fn from_overlap(p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::Domain(format!("overlap p must lie in (0, 1], got {p}")));
        }
        let alpha2 = -0.5 * p.ln();
        // p = 1 gives −0.0
        Self::new(if alpha2 == 0.0 { 0.0 } else { alpha2 })
    }

    pub fn alpha2(self) -> f64 {
        self.0
    }

    /// `p = e^{−2|α|²}`.
    pub fn overlap(self) -> f64 {
        (-2.0 * self.0).exp()
    }
}

/// Laguerre polynomial `L_m(x)` by the three-term recurrence
/// `(n+1) L_{n+1} = (2n+1−x) L_n − n L_{n−1}`.
pub fn laguerre(m: LaguerreOrder, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("Laguerre argument must be finite, got {x}")));
    }
    Ok(laguerre_unchecked(m.get(), x))
}

fn laguerre_unchecked(m: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = 1.0 - x;
    for n in 1..m {
        let n = f64::from(n);
        let next = ((2.0 * n + 1.0 - x) * cur - n * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `κ_m(|α|²) = L_m(|α|²) / L_m(−|α|²)`.
///
/// The denominator is a sum of non-negative terms with leading term 1, so it never vanishes.
pub fn kappa(m: LaguerreOrder, s: StrengthParam) -> f64 {
    let a = s.alpha2();
    laguerre_unchecked(m.get(), a) / laguerre_unchecked(m.get(), -a)
}

/// `1 − κ_m e^{−2n|α|²}` without the cancellation of the direct difference.
///
/// Written as `(L_m(−a) − L_m(a) + L_m(a)(1 − e^{−2na})) / L_m(−a)`, where the
/// first difference collects the odd-power terms of `L_m`, all positive.
pub fn kappa_complement(m: LaguerreOrder, s: StrengthParam, n: u32) -> f64 {
    let a = s.alpha2();
    let m = m.get();
    let mut term = 1.0;
    let mut odd = 0.0;
    for j in 0..m {
        // C(m, j+1) a^{j+1} / (j+1)!
        term *= f64::from(m - j) / f64::from((j + 1) * (j + 1)) * a;
        if j % 2 == 0 {
            odd += term;
        }
    }
    let lp = laguerre_unchecked(m, a);
    let lm = laguerre_unchecked(m, -a);
    (2.0 * odd - lp * (-2.0 * f64::from(n) * a).exp_m1()) / lm
}

/// First-order expansion `κ_m ≈ 1 − 2m|α|²`, valid for `|α|² < 0.05`.
pub fn kappa_small_alpha(m: LaguerreOrder, s: StrengthParam) -> Result<f64> {
    let a = s.alpha2();
    if a >= SMALL_ALPHA_WINDOW {
        return Err(Error::Domain(format!(
            "small-amplitude expansion of kappa requested at |alpha|^2 = {a} (window is < {SMALL_ALPHA_WINDOW})"
        )));
    }
    Ok(1.0 - 2.0 * f64::from(m.get()) * a)
}

/// Overlap `⟨−α, m|α, m⟩ = e^{−2|α|²} κ_m` of opposite-phase photon-added coherent states.
pub fn pacs_overlap(m: LaguerreOrder, s: StrengthParam) -> f64 {
    s.overlap() * kappa(m, s)
}

/// Binary entropy in bits, `H(x) = −x log₂x − (1−x) log₂(1−x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-ENTROPY_GUARD..=1.0 + ENTROPY_GUARD).contains(&x) {
        return Err(Error::Domain(format!(
            "binary entropy argument {x} outside [0, 1]"
        )));
    }
    let x = x.clamp(0.0, 1.0);
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    let y = 1.0 - x;
    Ok(-x * x.log2() - y * y.log2())
}
