//! Encoded qubit states of the photon-added quasi-Bell and quasi-GHZ families.
//!
//! Every mode is mapped onto a qubit through the even/odd cat basis:
//! `|0⟩ ∝ |α,m⟩ + |−α,m⟩`, `|1⟩ ∝ |α,m⟩ − |−α,m⟩`, so that
//!
//! ```text
//! |±α, m⟩ = c⁺ |0⟩ ± c⁻ |1⟩,    c± = sqrt((1 ± ⟨−α,m|α,m⟩) / 2).
//! ```
//!
//! Two-qubit objects use the basis order `|00⟩, |01⟩, |10⟩, |11⟩` with the
//! lower-numbered mode as the left factor. All amplitudes are real: `α` is
//! taken real and the relative phase `e^{ikπ}` is `±1`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::special::{kappa, kappa_complement, LaguerreOrder, StrengthParam};

/// Below this `|α|²` an odd-parity state is treated as its W-type limit.
pub const DEGENERATE_ALPHA2: f64 = 1e-8;

const AMPLITUDE_GUARD: f64 = 1e-12;

/// Relative sign `cos kπ` between the two branches of the superposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    /// `k = 0 (mod 2)`, symmetric states.
    Even,
    /// `k = 1 (mod 2)`, antisymmetric states.
    Odd,
}

impl Parity {
    pub fn from_k(k: u32) -> Self {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `k mod 2`.
    pub fn k(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// `cos kπ`.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    fn flipped(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// The full parameter triple `(|α|², m, k)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub strength: StrengthParam,
    pub order: LaguerreOrder,
    pub parity: Parity,
}

impl ModelParams {
    pub fn new(alpha2: f64, m: u32, parity: Parity) -> Result<Self> {
        Ok(Self {
            strength: StrengthParam::new(alpha2)?,
            order: LaguerreOrder::new(m)?,
            parity,
        })
    }

    pub fn alpha2(&self) -> f64 {
        self.strength.alpha2()
    }

    pub fn m(&self) -> u32 {
        self.order.get()
    }

    /// `p = e^{−2|α|²}`.
    pub fn overlap(&self) -> f64 {
        self.strength.overlap()
    }

    pub fn kappa(&self) -> f64 {
        kappa(self.order, self.strength)
    }

    /// `1 − κ_m e^{−2n|α|²}`, accurate at small amplitude.
    pub fn kappa_complement(&self, n: u32) -> f64 {
        kappa_complement(self.order, self.strength, n)
    }

    /// Odd parity at (numerically) vanishing amplitude, where the normalization is 0/0.
    pub fn is_limit_regime(&self) -> bool {
        self.parity == Parity::Odd && self.alpha2() < DEGENERATE_ALPHA2
    }

    pub(crate) fn ensure_regular(&self) -> Result<()> {
        if self.is_limit_regime() {
            return Err(Error::LimitRegime {
                alpha2: self.alpha2(),
                threshold: DEGENERATE_ALPHA2,
            });
        }
        Ok(())
    }

    fn without_photons(self) -> Self {
        Self {
            order: LaguerreOrder::new(0).expect("order 0 is always valid"),
            ..self
        }
    }
}

/// Coordinates `(c⁺, c⁻)` of `|α, m⟩` in the cat basis; `|−α, m⟩` is `(c⁺, −c⁻)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitAmplitudes {
    pub c_plus: f64,
    pub c_minus: f64,
}

impl QubitAmplitudes {
    /// Amplitudes for a pair of states with real overlap `overlap ∈ [−1, 1]`.
    pub fn from_overlap(overlap: f64) -> Result<Self> {
        Self::from_complement(overlap, 1.0 - overlap)
    }

    /// As [`Self::from_overlap`], with `1 − overlap` supplied by the caller.
    pub fn from_complement(overlap: f64, complement: f64) -> Result<Self> {
        let plus = 0.5 * (1.0 + overlap);
        let minus = 0.5 * complement;
        if plus < -AMPLITUDE_GUARD || minus < -AMPLITUDE_GUARD || !overlap.is_finite() {
            return Err(Error::Internal(format!(
                "overlap {overlap} violates the Cauchy-Schwarz bound"
            )));
        }
        Ok(Self {
            c_plus: plus.max(0.0).sqrt(),
            c_minus: minus.max(0.0).sqrt(),
        })
    }

    /// Coordinates of `|±α⟩` for `branch = ±1`.
    pub fn branch(&self, branch: f64) -> [f64; 2] {
        [self.c_plus, branch * self.c_minus]
    }
}

/// Mode 1 (photon-added) encoding: overlap `κ_m e^{−2|α|²}`.
pub fn mode1_amplitudes(p: &ModelParams) -> Result<QubitAmplitudes> {
    QubitAmplitudes::from_complement(p.kappa() * p.overlap(), p.kappa_complement(1))
}

/// Modes 2 and 3 encoding: overlap `e^{−2|α|²}`.
pub fn mode23_amplitudes(s: StrengthParam) -> QubitAmplitudes {
    QubitAmplitudes::from_complement(s.overlap(), -(-2.0 * s.alpha2()).exp_m1())
        .expect("Glauber overlap lies in (0, 1]")
}

/// Pure two-qubit state `N Σ C_ij |i⟩|j⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitPure {
    /// `C_ij`, first index for the left qubit.
    pub coefficients: [[f64; 2]; 2],
    /// Overall factor `N`.
    pub normalization: f64,
}

impl TwoQubitPure {
    /// Normalized amplitudes in the order `|00⟩, |01⟩, |10⟩, |11⟩`.
    pub fn amplitudes(&self) -> [f64; 4] {
        let c = &self.coefficients;
        let n = self.normalization;
        [n * c[0][0], n * c[0][1], n * c[1][0], n * c[1][1]]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes().iter().map(|a| a * a).sum()
    }

    /// `2 N² |C₀₀C₁₁ − C₀₁C₁₀|`.
    pub fn concurrence(&self) -> f64 {
        let c = &self.coefficients;
        let n2 = self.normalization * self.normalization;
        2.0 * n2 * (c[0][0] * c[1][1] - c[0][1] * c[1][0]).abs()
    }

    /// Schmidt coefficients, largest first.
    pub fn schmidt_coefficients(&self) -> [f64; 2] {
        let conc = self.concurrence().min(1.0);
        let root = (1.0 - conc * conc).max(0.0).sqrt();
        [(0.5 * (1.0 + root)).sqrt(), (0.5 * (1.0 - root)).max(0.0).sqrt()]
    }

    pub fn to_density(&self) -> CMatrix {
        let amps: Vec<Complex64> = self
            .amplitudes()
            .iter()
            .map(|&a| Complex64::new(a, 0.0))
            .collect();
        CMatrix::outer(&amps)
    }
}

/// Two-qubit density matrix supported on the diagonal and the anti-diagonal.
///
/// Only the eight independent reals are stored, so entries off the X pattern are zero by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XStateDensity {
    /// `ρ₀₀,₀₀, ρ₀₁,₀₁, ρ₁₀,₁₀, ρ₁₁,₁₁`.
    pub diagonal: [f64; 4],
    /// `ρ₀₀,₁₁` (its conjugate sits at `ρ₁₁,₀₀`).
    pub outer: Complex64,
    /// `ρ₀₁,₁₀` (its conjugate sits at `ρ₁₀,₀₁`).
    pub inner: Complex64,
}

impl XStateDensity {
    /// `Σ wᵢ |vᵢ⟩⟨vᵢ|` for real vectors whose support respects the X pattern.
    fn from_weighted_pure(terms: &[(f64, [f64; 4])]) -> Result<Self> {
        let mut diagonal = [0.0; 4];
        let mut outer = 0.0;
        let mut inner = 0.0;
        for (w, v) in terms {
            for i in 0..4 {
                diagonal[i] += w * v[i] * v[i];
            }
            outer += w * v[0] * v[3];
            inner += w * v[1] * v[2];
            let leak = (v[0] * v[1]).abs()
                + (v[0] * v[2]).abs()
                + (v[3] * v[1]).abs()
                + (v[3] * v[2]).abs();
            if leak != 0.0 {
                return Err(Error::Internal(
                    "component vector mixes the two X blocks".to_string(),
                ));
            }
        }
        Ok(Self {
            diagonal,
            outer: Complex64::new(outer, 0.0),
            inner: Complex64::new(inner, 0.0),
        })
    }

    pub fn trace(&self) -> f64 {
        self.diagonal.iter().sum()
    }

    /// Eigenvalues of the two 2×2 blocks `{00, 11}` and `{01, 10}`, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let block = |a: f64, d: f64, off: Complex64| {
            let mean = 0.5 * (a + d);
            let radius = (0.25 * (a - d) * (a - d) + off.norm_sqr()).sqrt();
            [mean - radius, mean + radius]
        };
        let [a, b] = block(self.diagonal[0], self.diagonal[3], self.outer);
        let [c, d] = block(self.diagonal[1], self.diagonal[2], self.inner);
        let mut values = [a, b, c, d];
        values.sort_by(f64::total_cmp);
        values
    }

    pub fn purity(&self) -> f64 {
        self.diagonal.iter().map(|d| d * d).sum::<f64>()
            + 2.0 * self.outer.norm_sqr()
            + 2.0 * self.inner.norm_sqr()
    }

    /// Reduced state of the left qubit, `(ρ_00, ρ_11)`; it is diagonal for X states.
    pub fn left_marginal(&self) -> [f64; 2] {
        [
            self.diagonal[0] + self.diagonal[1],
            self.diagonal[2] + self.diagonal[3],
        ]
    }

    /// Reduced state of the right qubit, `(ρ_00, ρ_11)`.
    pub fn right_marginal(&self) -> [f64; 2] {
        [
            self.diagonal[0] + self.diagonal[2],
            self.diagonal[1] + self.diagonal[3],
        ]
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(4, 4);
        for i in 0..4 {
            m[(i, i)] = Complex64::new(self.diagonal[i], 0.0);
        }
        m[(0, 3)] = self.outer;
        m[(3, 0)] = self.outer.conj();
        m[(1, 2)] = self.inner;
        m[(2, 1)] = self.inner.conj();
        m
    }

    /// Unit trace, positivity and the X pattern, within the given tolerances.
    pub fn check(&self, trace_tol: f64, psd_tol: f64) -> Result<()> {
        if (self.trace() - 1.0).abs() > trace_tol {
            return Err(Error::InvalidDensity(format!("trace {}", self.trace())));
        }
        let min = self.eigenvalues()[0];
        if min < -psd_tol {
            return Err(Error::InvalidDensity(format!("min eigenvalue {min}")));
        }
        Ok(())
    }
}

fn bell_coefficients(first: QubitAmplitudes, second: QubitAmplitudes, parity: Parity) -> [[f64; 2]; 2] {
    let s = parity.sign();
    let same = 1.0 + s;
    let diff = 1.0 - s;
    [
        [
            first.c_plus * second.c_plus * same,
            first.c_plus * second.c_minus * diff,
        ],
        [
            first.c_minus * second.c_plus * diff,
            first.c_minus * second.c_minus * same,
        ],
    ]
}

/// `N_k^{−2}(α, m) = 2 + 2 κ_m e^{−4|α|²} cos kπ`.
fn bell_norm_inv_sqr(p: &ModelParams) -> f64 {
    match p.parity {
        Parity::Even => 2.0 + 2.0 * p.kappa() * p.overlap().powi(2),
        Parity::Odd => 2.0 * p.kappa_complement(2),
    }
}

/// `C_k^{−2}(α, m) = 2 + 2 κ_m e^{−6|α|²} cos kπ`.
fn ghz_norm_inv_sqr(p: &ModelParams) -> f64 {
    match p.parity {
        Parity::Even => 2.0 + 2.0 * p.kappa() * p.overlap().powi(3),
        Parity::Odd => 2.0 * p.kappa_complement(3),
    }
}

/// Photon-added quasi-Bell state `N (|m,α⟩|α⟩ + e^{ikπ}|m,−α⟩|−α⟩)` in the cat basis.
pub fn bell_state(p: &ModelParams) -> Result<TwoQubitPure> {
    p.ensure_regular()?;
    Ok(TwoQubitPure {
        coefficients: bell_coefficients(mode1_amplitudes(p)?, mode23_amplitudes(p.strength), p.parity),
        normalization: bell_norm_inv_sqr(p).sqrt().recip(),
    })
}

/// `ρ₁₂ = Tr₃ ρ₁₂₃` written as the mixture of `|B⟩` and `Z|B⟩`.
///
/// `Z` flips the relative sign of the two branches of `|B⟩` while keeping the
/// factor `N_k`; the weights `(1 ± e^{−2|α|²})/2` carry the overlap of the traced mode.
pub fn ghz_rho12(p: &ModelParams) -> Result<XStateDensity> {
    p.ensure_regular()?;
    let traced = (p.overlap(), -(-2.0 * p.alpha2()).exp_m1());
    reduced_mixture(p, *p, traced)
}

/// `ρ₂₃ = Tr₁ ρ₁₂₃`, built on the `m = 0` quasi-Bell state; the traced photon-added
/// mode contributes the weights `(1 ± κ_m e^{−2|α|²})/2`.
pub fn ghz_rho23(p: &ModelParams) -> Result<XStateDensity> {
    p.ensure_regular()?;
    let traced = (p.kappa() * p.overlap(), p.kappa_complement(1));
    reduced_mixture(p, p.without_photons(), traced)
}

/// `traced` is the overlap of the traced mode and its complement `1 − overlap`.
fn reduced_mixture(p: &ModelParams, pair: ModelParams, traced: (f64, f64)) -> Result<XStateDensity> {
    let first = mode1_amplitudes(&pair)?;
    let second = mode23_amplitudes(pair.strength);
    let n = bell_norm_inv_sqr(&pair).sqrt().recip();
    let scaled = |parity: Parity| -> [f64; 4] {
        let c = bell_coefficients(first, second, parity);
        [n * c[0][0], n * c[0][1], n * c[1][0], n * c[1][1]]
    };
    let bell = scaled(pair.parity);
    let flipped = scaled(pair.parity.flipped());
    // C_k² / N_k² = N_k^{−2} / C_k^{−2}
    let prefactor = bell_norm_inv_sqr(&pair) / ghz_norm_inv_sqr(p);
    XStateDensity::from_weighted_pure(&[
        (prefactor * 0.5 * (1.0 + traced.0), bell),
        (prefactor * 0.5 * traced.1, flipped),
    ])
}

/// The quasi-GHZ state across the cut `1 | (23)`, modes 2 and 3 grouped into the
/// qubit spanned by `|α,α⟩ ± |−α,−α⟩`.
pub fn ghz_split_1_23(p: &ModelParams) -> Result<TwoQubitPure> {
    p.ensure_regular()?;
    let x = p.overlap();
    let grouped = QubitAmplitudes::from_complement(x * x, -(-4.0 * p.alpha2()).exp_m1())?;
    Ok(TwoQubitPure {
        coefficients: bell_coefficients(mode1_amplitudes(p)?, grouped, p.parity),
        normalization: ghz_norm_inv_sqr(p).sqrt().recip(),
    })
}
