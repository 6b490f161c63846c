//! Brute-force reference implementation on a truncated Fock space.
//!
//! States are assembled from explicit photon-number amplitudes, every overlap
//! is an amplitude sum, spectra come from the Jacobi solver in [`crate::linalg`]
//! and discord is obtained by minimizing the conditional entropy over
//! projective measurements. Nothing here reads `κ_m` or the Laguerre
//! polynomials; the only shared primitive with the closed forms is
//! [`binary_entropy`].

mod measurement;

pub use measurement::{
    conditional_entropy, discord_numeric, optimize_measurement, MeasuredSide, MeasurementPoint,
};

use num_complex::Complex64;

use crate::correlations::{report, Quantity, QuantityKind};
use crate::error::{Error, Result};
use crate::linalg::{eigh, singular_values, CMatrix};
use crate::special::binary_entropy;
use crate::states::ModelParams;

/// Largest squared amplitude allowed at the truncation edge.
pub const TAIL_BOUND: f64 = 1e-24;

/// Tolerances a [`DensityMatrix`] must meet.
pub const TRACE_TOLERANCE: f64 = 1e-10;
pub const HERMITICITY_TOLERANCE: f64 = 1e-10;
pub const PSD_TOLERANCE: f64 = 1e-9;

/// Default verification bounds.
pub const EXACT_BOUND: f64 = 1e-8;
pub const DISCORD_BOUND: f64 = 1e-3;

/// `nmax = max(m + 4, ⌈|α|² + 10|α| + m + 20⌉)`.
pub fn truncation(alpha2: f64, m: u32) -> usize {
    let m = f64::from(m);
    let rule = (alpha2 + 10.0 * alpha2.sqrt() + m + 20.0).ceil();
    rule.max(m + 4.0) as usize
}

/// Real amplitudes on the photon-number basis `|0⟩ … |nmax⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    amplitudes: Vec<f64>,
}

impl FockVector {
    pub fn new(amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Domain("a Fock vector needs at least |0>".into()));
        }
        if amplitudes.iter().any(|a| !a.is_finite()) {
            return Err(Error::Domain("Fock amplitudes must be finite".into()));
        }
        Ok(Self { amplitudes })
    }

    /// The number state `|n⟩`.
    pub fn number_state(n: usize, nmax: usize) -> Result<Self> {
        if n > nmax {
            return Err(Error::Truncation {
                nmax,
                detail: format!("number state |{n}> does not fit"),
            });
        }
        let mut amplitudes = vec![0.0; nmax + 1];
        amplitudes[n] = 1.0;
        Ok(Self { amplitudes })
    }

    pub fn nmax(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.inner(self)
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(Error::Domain("cannot normalize the zero vector".into()));
        }
        Ok(Self {
            amplitudes: self.amplitudes.iter().map(|a| a / n).collect(),
        })
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        Self {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a + sign * b)
                .collect(),
        }
    }
}

/// `|α⟩ = e^{−α²/2} Σ αⁿ/√n! |n⟩` for real `α`.
pub fn coherent_vector(alpha: f64, nmax: usize) -> Result<FockVector> {
    if !alpha.is_finite() {
        return Err(Error::Domain(format!("coherent amplitude {alpha} is not finite")));
    }
    let mut amplitudes = Vec::with_capacity(nmax + 1);
    let mut c = (-0.5 * alpha * alpha).exp();
    amplitudes.push(c);
    for n in 1..=nmax {
        c *= alpha / (n as f64).sqrt();
        amplitudes.push(c);
    }
    let edge = amplitudes[nmax] * amplitudes[nmax];
    if edge > TAIL_BOUND || (nmax as f64) < alpha * alpha {
        return Err(Error::Truncation {
            nmax,
            detail: format!("|alpha|^2 = {} leaves edge weight {edge:e}", alpha * alpha),
        });
    }
    Ok(FockVector { amplitudes })
}

/// `(a†)^m v` without normalization.
///
/// Fails when more than [`TAIL_BOUND`] of the resulting weight (relative) would be
/// pushed past `nmax`.
pub fn add_photons_unnormalized(v: &FockVector, m: u32) -> Result<FockVector> {
    let nmax = v.nmax();
    let m = m as usize;
    let mut work = v.amplitudes.clone();
    work.resize(nmax + 1 + m, 0.0);
    for _ in 0..m {
        for n in (0..work.len() - 1).rev() {
            work[n + 1] = ((n + 1) as f64).sqrt() * work[n];
        }
        work[0] = 0.0;
    }
    let total: f64 = work.iter().map(|a| a * a).sum();
    let lost: f64 = work[nmax + 1..].iter().map(|a| a * a).sum();
    if lost > TAIL_BOUND * total {
        return Err(Error::Truncation {
            nmax,
            detail: format!("adding {m} photons pushes weight {lost:e} past the cutoff"),
        });
    }
    work.truncate(nmax + 1);
    Ok(FockVector { amplitudes: work })
}

/// `(a†)^m v`, normalized.
pub fn add_photons(v: &FockVector, m: u32) -> Result<FockVector> {
    add_photons_unnormalized(v, m)?.normalized()
}

/// Density matrix on a labelled tensor product of subsystems.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates shape, unit trace, hermiticity and positivity.
    pub fn new(dims: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        let d: usize = dims.iter().product();
        if !matrix.is_square() || matrix.rows() != d {
            return Err(Error::InvalidDensity(format!(
                "{}x{} matrix for subsystem dims {dims:?}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let rho = Self { dims, matrix };
        let tr = rho.matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOLERANCE || tr.im.abs() > TRACE_TOLERANCE {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let defect = rho.matrix.hermiticity_defect();
        if defect > HERMITICITY_TOLERANCE {
            return Err(Error::InvalidDensity(format!("hermiticity defect {defect:e}")));
        }
        let min = rho.eigenvalues()[0];
        if min < -PSD_TOLERANCE {
            return Err(Error::InvalidDensity(format!("min eigenvalue {min:e}")));
        }
        Ok(rho)
    }

    /// Projector onto a pure state; the vector is normalized here.
    pub fn pure(dims: Vec<usize>, psi: &[f64]) -> Result<Self> {
        let norm = psi.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidDensity("zero state vector".into()));
        }
        let amps: Vec<Complex64> = psi.iter().map(|&a| Complex64::new(a / norm, 0.0)).collect();
        Self::new(dims, CMatrix::outer(&amps))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigh(&self.matrix).values
    }

    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).trace().re
    }
}

fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

fn compose(digits: &[usize], dims: &[usize], which: &[usize]) -> usize {
    which.iter().fold(0, |acc, &k| acc * dims[k] + digits[k])
}

/// Trace over every subsystem not listed in `keep` (indices into `dims`).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.dims.len();
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() || kept.iter().any(|&k| k >= n) {
        return Err(Error::Subsystem(format!(
            "cannot keep {keep:?} of {n} subsystems"
        )));
    }
    let traced: Vec<usize> = (0..n).filter(|k| !kept.contains(k)).collect();
    let dims_out: Vec<usize> = kept.iter().map(|&k| rho.dims[k]).collect();
    let d_out: usize = dims_out.iter().product();
    let d: usize = rho.dims.iter().product();
    let mut out = CMatrix::zeros(d_out, d_out);
    let all: Vec<Vec<usize>> = (0..d).map(|i| digits(i, &rho.dims)).collect();
    for (i, di) in all.iter().enumerate() {
        for (j, dj) in all.iter().enumerate() {
            if traced.iter().all(|&k| di[k] == dj[k]) {
                let r = compose(di, &rho.dims, &kept);
                let c = compose(dj, &rho.dims, &kept);
                out[(r, c)] += rho.matrix[(i, j)];
            }
        }
    }
    DensityMatrix::new(dims_out, out)
}

/// `−Σ λ log₂ λ` over the spectrum, with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .into_iter()
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum()
}

/// Wootters concurrence of a two-qubit density matrix.
///
/// With `ρ = W W†`, `W = [√pᵢ vᵢ]`, the square roots of the eigenvalues of
/// `ρ (σy⊗σy) ρ* (σy⊗σy)` are the singular values of `Wᵀ (σy⊗σy) W`.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims != [2, 2] {
        return Err(Error::Subsystem(format!(
            "concurrence needs two qubits, got dims {:?}",
            rho.dims
        )));
    }
    let eig = eigh(&rho.matrix);
    let trace: f64 = eig.values.iter().sum();
    let kept: Vec<usize> = (0..4).filter(|&i| eig.values[i] > 1e-14 * trace).collect();
    let w = CMatrix::from_fn(4, kept.len(), |r, c| {
        eig.vectors[(r, kept[c])] * eig.values[kept[c]].sqrt()
    });
    let sy = CMatrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 1) => Complex64::new(0.0, -1.0),
        (1, 0) => Complex64::new(0.0, 1.0),
        _ => Complex64::new(0.0, 0.0),
    });
    let flip = sy.kron(&sy);
    let tau = w.transpose().matmul(&flip).matmul(&w);
    let mut lambda = singular_values(&tau);
    lambda.resize(4, 0.0);
    Ok((lambda[0] - lambda[1] - lambda[2] - lambda[3]).clamp(0.0, 1.0))
}

/// One mode mapped onto its cat-basis qubit: coordinates of `|α,m⟩` and `|−α,m⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EncodedMode {
    pub plus: [f64; 2],
    pub minus: [f64; 2],
}

/// Orthonormalizes `{u₊ + u₋, u₊ − u₋}` and projects both vectors onto it.
pub fn encode_pair(plus: &FockVector, minus: &FockVector) -> Result<EncodedMode> {
    let even = plus.combine(minus, 1.0);
    let odd = plus.combine(minus, -1.0);
    let even_norm = even.norm_sqr();
    if even_norm < TAIL_BOUND {
        return Err(Error::Internal("cat basis has no even component".into()));
    }
    let e0 = even.normalized()?;
    let coords = |v: &FockVector| -> [f64; 2] {
        let c0 = e0.inner(v);
        // the pair coincides (α = 0): the odd direction does not exist
        if odd.norm_sqr() < TAIL_BOUND {
            [c0, 0.0]
        } else {
            let e1 = odd.normalized().expect("odd component is non-zero");
            [c0, e1.inner(v)]
        }
    };
    Ok(EncodedMode {
        plus: coords(plus),
        minus: coords(minus),
    })
}

/// Cat-basis encodings of the three modes at `p`, all built on `nmax` photons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeEncodings {
    pub photon_added: EncodedMode,
    pub coherent: EncodedMode,
}

pub fn encode_modes(p: &ModelParams, nmax: usize) -> Result<ModeEncodings> {
    let alpha = p.alpha2().sqrt();
    let plus = coherent_vector(alpha, nmax)?;
    let minus = coherent_vector(-alpha, nmax)?;
    Ok(ModeEncodings {
        photon_added: encode_pair(&add_photons(&plus, p.m())?, &add_photons(&minus, p.m())?)?,
        coherent: encode_pair(&plus, &minus)?,
    })
}

/// A normalized pure state on encoded qubits, with the factor that normalized it.
#[derive(Clone, Debug, PartialEq)]
pub struct EncodedState {
    pub amplitudes: Vec<f64>,
    pub normalization: f64,
}

impl EncodedState {
    fn from_branches(modes: &[EncodedMode], sign: f64) -> Result<Self> {
        let n = modes.len();
        let raw: Vec<f64> = (0..1usize << n)
            .map(|index| {
                let bit = |k: usize| (index >> (n - 1 - k)) & 1;
                let plus: f64 = (0..n).map(|k| modes[k].plus[bit(k)]).product();
                let minus: f64 = (0..n).map(|k| modes[k].minus[bit(k)]).product();
                plus + sign * minus
            })
            .collect();
        let norm = raw.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::Internal("branches cancel: state vanishes".into()));
        }
        Ok(Self {
            amplitudes: raw.iter().map(|a| a / norm).collect(),
            normalization: norm.recip(),
        })
    }

    pub fn density(&self) -> Result<DensityMatrix> {
        let n = self.amplitudes.len().trailing_zeros() as usize;
        DensityMatrix::pure(vec![2; n], &self.amplitudes)
    }
}

/// `C (|α,m⟩|α⟩|α⟩ + e^{ikπ} |−α,m⟩|−α⟩|−α⟩)` on three encoded qubits.
pub fn build_tripartite_state(p: &ModelParams, nmax: usize) -> Result<EncodedState> {
    p.ensure_regular()?;
    let modes = encode_modes(p, nmax)?;
    EncodedState::from_branches(
        &[modes.photon_added, modes.coherent, modes.coherent],
        p.parity.sign(),
    )
}

pub fn build_tripartite(p: &ModelParams, nmax: usize) -> Result<DensityMatrix> {
    build_tripartite_state(p, nmax)?.density()
}

/// `N (|α,m⟩|α⟩ + e^{ikπ} |−α,m⟩|−α⟩)` on two encoded qubits.
pub fn build_bell_state(p: &ModelParams, nmax: usize) -> Result<EncodedState> {
    p.ensure_regular()?;
    let modes = encode_modes(p, nmax)?;
    EncodedState::from_branches(&[modes.photon_added, modes.coherent], p.parity.sign())
}

pub fn build_bell(p: &ModelParams, nmax: usize) -> Result<DensityMatrix> {
    build_bell_state(p, nmax)?.density()
}

fn eof(c: f64) -> Result<f64> {
    binary_entropy(0.5 + 0.5 * (1.0 - c * c).max(0.0).sqrt())
}

/// Every report quantity evaluated by brute force.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleValues {
    values: Vec<(Quantity, f64)>,
    /// `D₁₃`, which the closed forms fold into `Δ₁₂₃` via the `2↔3` symmetry.
    pub d13: f64,
}

impl OracleValues {
    pub fn get(&self, q: Quantity) -> f64 {
        self.values
            .iter()
            .find(|(k, _)| *k == q)
            .map(|(_, v)| *v)
            .expect("every quantity is evaluated")
    }
}

pub fn oracle_values(p: &ModelParams, nmax: usize) -> Result<OracleValues> {
    let rho = build_tripartite(p, nmax)?;
    let rho1 = partial_trace(&rho, &[0])?;
    let rho2 = partial_trace(&rho, &[1])?;
    let rho12 = partial_trace(&rho, &[0, 1])?;
    let rho13 = partial_trace(&rho, &[0, 2])?;
    let rho23 = partial_trace(&rho, &[1, 2])?;
    let bell = build_bell(p, nmax)?;

    let s1 = von_neumann_entropy(&rho1);
    let lambda = rho1.eigenvalues();
    let c1_23 = 2.0 * (lambda[0].max(0.0) * lambda[1].max(0.0)).sqrt();
    let c23 = wootters_concurrence(&rho23)?;
    let c13 = wootters_concurrence(&rho13)?;
    let d12 = discord_numeric(&rho12, MeasuredSide::Left)?;
    let d13 = discord_numeric(&rho13, MeasuredSide::Left)?;

    let values = vec![
        (Quantity::S1, s1),
        (Quantity::S2, von_neumann_entropy(&rho2)),
        (Quantity::S12, von_neumann_entropy(&rho12)),
        (Quantity::S23, von_neumann_entropy(&rho23)),
        (Quantity::C12, wootters_concurrence(&bell)?),
        (Quantity::C23, c23),
        (Quantity::C13, c13),
        (Quantity::C1_23, c1_23),
        (Quantity::E12, von_neumann_entropy(&partial_trace(&bell, &[0])?)),
        (Quantity::E23, eof(c23)?),
        (Quantity::E13, eof(c13)?),
        (Quantity::E1_23, s1),
        (Quantity::D12, d12),
        (Quantity::D23, discord_numeric(&rho23, MeasuredSide::Left)?),
        // the measured conditional states of a pure 1|23 state are pure
        (Quantity::D1_23, s1),
        (Quantity::Delta123, s1 - d12 - d13),
    ];
    Ok(OracleValues { values, d13 })
}

/// Deviation bounds by quantity class.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds {
    /// Entropies, concurrences and entanglement of formation.
    pub exact: f64,
    /// Discord fields, which depend on a numerical minimization.
    pub discord: f64,
}

impl Bounds {
    pub fn uniform(bound: f64) -> Self {
        Self {
            exact: bound,
            discord: bound,
        }
    }

    pub fn for_quantity(&self, q: Quantity) -> f64 {
        match q.kind() {
            QuantityKind::Discord => self.discord,
            _ => self.exact,
        }
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            exact: EXACT_BOUND,
            discord: DISCORD_BOUND,
        }
    }
}

/// Closed form against oracle for one field; `signed = closed − oracle`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Deviation {
    pub quantity: Quantity,
    pub closed_form: f64,
    pub oracle: f64,
    pub signed: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationRecord {
    pub params: ModelParams,
    pub nmax: usize,
    pub deviations: Vec<Deviation>,
}

impl VerificationRecord {
    pub fn deviation(&self, q: Quantity) -> Option<&Deviation> {
        self.deviations.iter().find(|d| d.quantity == q)
    }

    /// Largest absolute deviation over all fields.
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().map(|d| d.signed.abs()).fold(0.0, f64::max)
    }

    /// Largest absolute deviation over the fields of one tolerance class.
    pub fn max_deviation_where(&self, discord: bool) -> f64 {
        self.deviations
            .iter()
            .filter(|d| (d.quantity.kind() == QuantityKind::Discord) == discord)
            .map(|d| d.signed.abs())
            .fold(0.0, f64::max)
    }

    pub fn passes(&self, bounds: &Bounds) -> bool {
        self.deviations
            .iter()
            .all(|d| d.signed.abs() <= bounds.for_quantity(d.quantity))
    }
}

/// Compares every report field with the oracle; `nmax` defaults to [`truncation`].
pub fn verify(p: &ModelParams, nmax: Option<usize>) -> Result<VerificationRecord> {
    p.ensure_regular()?;
    let nmax = nmax.unwrap_or_else(|| truncation(p.alpha2(), p.m()));
    let oracle = oracle_values(p, nmax)?;
    let closed = report(p);
    let deviations = Quantity::ALL
        .into_iter()
        .map(|q| {
            let c = closed.get(q).expect("regular reports carry every field");
            let o = oracle.get(q);
            Deviation {
                quantity: q,
                closed_form: c,
                oracle: o,
                signed: c - o,
            }
        })
        .collect();
    Ok(VerificationRecord {
        params: *p,
        nmax,
        deviations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{laguerre, pacs_overlap, LaguerreOrder, StrengthParam};
    use crate::states::{ghz_rho12, ghz_rho23, ghz_split_1_23, Parity};

    fn params(alpha2: f64, m: u32, parity: Parity) -> ModelParams {
        ModelParams::new(alpha2, m, parity).unwrap()
    }

    fn factorial(n: usize) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    #[test]
    fn truncation_rule() {
        assert_eq!(truncation(0.0, 0), 20);
        assert_eq!(truncation(4.0, 2), 46);
        assert!(truncation(20.0, 4) >= 89);
    }

    #[test]
    fn coherent_examples() {
        let v = coherent_vector(0.0, 30).unwrap();
        assert_eq!(v.amplitudes()[0], 1.0);
        assert!(v.amplitudes()[1..].iter().all(|&a| a == 0.0));

        let v = coherent_vector(1.0, 40).unwrap();
        for n in 0..10 {
            let expected = (-0.5f64).exp() / factorial(n).sqrt();
            assert!((v.amplitudes()[n] - expected).abs() < 1e-15);
        }
        assert!((v.norm_sqr() - 1.0).abs() < 1e-12);
        let w = coherent_vector(-1.0, 40).unwrap();
        assert!((v.inner(&w) - (-2f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn coherent_refuses_short_truncation() {
        assert!(matches!(coherent_vector(3.0, 10), Err(Error::Truncation { .. })));
    }

    #[test]
    fn add_photons_examples() {
        let vac = FockVector::number_state(0, 10).unwrap();
        let three = add_photons(&vac, 3).unwrap();
        assert_eq!(three, FockVector::number_state(3, 10).unwrap());

        let alpha1 = coherent_vector(1.0, 40).unwrap();
        let raw = add_photons_unnormalized(&alpha1, 1).unwrap();
        assert!((raw.norm_sqr() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn photon_added_norm_is_laguerre() {
        for m in 0..=6u32 {
            for a in [0.1, 1.0, 3.0, 9.0] {
                let v = coherent_vector(f64::sqrt(a), truncation(a, m)).unwrap();
                let raw = add_photons_unnormalized(&v, m).unwrap();
                let expected = factorial(m as usize)
                    * laguerre(LaguerreOrder::new(m).unwrap(), -a).unwrap();
                assert!((raw.norm_sqr() / expected - 1.0).abs() < 1e-10, "m={m} a={a}");
            }
        }
    }

    #[test]
    fn add_photons_refuses_missing_headroom() {
        let v = coherent_vector(2.0, 40).unwrap();
        let cramped = FockVector::new(v.amplitudes()[..12].to_vec()).unwrap();
        assert!(matches!(add_photons(&cramped, 3), Err(Error::Truncation { .. })));
    }

    #[test]
    fn numeric_overlap_matches_closed_form() {
        let a: f64 = 1.0;
        let nmax = truncation(a, 2);
        let plus = add_photons(&coherent_vector(1.0, nmax).unwrap(), 2).unwrap();
        let minus = add_photons(&coherent_vector(-1.0, nmax).unwrap(), 2).unwrap();
        let closed = pacs_overlap(LaguerreOrder::new(2).unwrap(), StrengthParam::new(a).unwrap());
        assert!((plus.inner(&minus) - closed).abs() < 1e-10);
    }

    #[test]
    fn tripartite_is_pure_with_expected_normalization() {
        let p = params(1.0, 1, Parity::Even);
        let state = build_tripartite_state(&p, truncation(1.0, 1)).unwrap();
        let rho = state.density().unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-10);
        // κ₁(1) = 0, so C^{−2} = 2
        assert!((state.normalization - 0.5f64.sqrt()).abs() < 1e-10);
        let q = params(0.6, 3, Parity::Odd);
        let state = build_tripartite_state(&q, truncation(0.6, 3)).unwrap();
        let x = q.overlap();
        let expected = (2.0 - 2.0 * q.kappa() * x * x * x).sqrt().recip();
        assert!((state.normalization - expected).abs() < 1e-10);
    }

    #[test]
    fn small_amplitude_odd_state_is_w() {
        let p = params(1e-4, 0, Parity::Odd);
        let state = build_tripartite_state(&p, truncation(1e-4, 0)).unwrap();
        let w = 3f64.sqrt().recip();
        // |001⟩, |010⟩, |100⟩ up to a global sign
        let overlap = w * (state.amplitudes[1] + state.amplitudes[2] + state.amplitudes[4]);
        assert!(overlap * overlap >= 1.0 - 1e-3, "{overlap}");
    }

    #[test]
    fn degenerate_point_is_refused() {
        let p = params(0.0, 0, Parity::Odd);
        assert!(matches!(build_tripartite(&p, 20), Err(Error::LimitRegime { .. })));
        assert!(matches!(verify(&p, None), Err(Error::LimitRegime { .. })));
    }

    #[test]
    fn partial_trace_basics() {
        let p = params(0.9, 2, Parity::Odd);
        let rho = build_tripartite(&p, truncation(0.9, 2)).unwrap();
        let scalar = partial_trace(&rho, &[]).unwrap();
        assert_eq!(scalar.dims(), &[] as &[usize]);
        assert!((scalar.matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(matches!(partial_trace(&rho, &[3]), Err(Error::Subsystem(_))));
        assert!(matches!(partial_trace(&rho, &[1, 1]), Err(Error::Subsystem(_))));
        let all = partial_trace(&rho, &[0, 1, 2]).unwrap();
        assert!(all.matrix().max_abs_diff(rho.matrix()) == 0.0);
    }

    #[test]
    fn partial_traces_match_closed_densities() {
        for (a, m, parity) in [
            (1.0, 1, Parity::Even),
            (0.5, 2, Parity::Odd),
            (0.1, 0, Parity::Odd),
            (2.5, 4, Parity::Even),
            (0.3, 3, Parity::Odd),
        ] {
            let p = params(a, m, parity);
            let rho = build_tripartite(&p, truncation(a, m)).unwrap();
            let r12 = partial_trace(&rho, &[0, 1]).unwrap();
            let r23 = partial_trace(&rho, &[1, 2]).unwrap();
            assert!(r12.matrix().max_abs_diff(&ghz_rho12(&p).unwrap().to_dense()) <= 1e-8);
            assert!(r23.matrix().max_abs_diff(&ghz_rho23(&p).unwrap().to_dense()) <= 1e-8);
        }
    }

    #[test]
    fn split_schmidt_matches_marginal() {
        let p = params(1.0, 0, Parity::Even);
        let rho = build_tripartite(&p, truncation(1.0, 0)).unwrap();
        let ev = partial_trace(&rho, &[0]).unwrap().eigenvalues();
        let [l0, l1] = ghz_split_1_23(&p).unwrap().schmidt_coefficients();
        assert!((l0 * l0 - ev[1]).abs() < 1e-8);
        assert!((l1 * l1 - ev[0]).abs() < 1e-8);
    }

    #[test]
    fn entropy_examples() {
        let pure = DensityMatrix::pure(vec![2, 2], &[0.6, 0.0, 0.0, 0.8]).unwrap();
        assert!(von_neumann_entropy(&pure).abs() < 1e-14);
        let mixed = DensityMatrix::new(vec![2], CMatrix::identity(2).scale(0.5)).unwrap();
        assert!((von_neumann_entropy(&mixed) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(vec![2], CMatrix::identity(2)).is_err());
        let neg = CMatrix::from_real(2, 2, &[1.5, 0.0, 0.0, -0.5]);
        assert!(DensityMatrix::new(vec![2], neg).is_err());
        let skew = CMatrix::from_real(2, 2, &[0.5, 0.1, 0.0, 0.5]);
        assert!(DensityMatrix::new(vec![2], skew).is_err());
        assert!(DensityMatrix::new(vec![3], CMatrix::identity(2).scale(0.5)).is_err());
    }

    #[test]
    fn concurrence_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = DensityMatrix::pure(vec![2, 2], &[h, 0.0, 0.0, h]).unwrap();
        assert!((wootters_concurrence(&bell).unwrap() - 1.0).abs() < 1e-12);
        let product = DensityMatrix::pure(vec![2, 2], &[0.6, 0.8, 0.0, 0.0]).unwrap();
        assert!(wootters_concurrence(&product).unwrap() < 1e-12);
        let qubit = DensityMatrix::new(vec![2], CMatrix::identity(2).scale(0.5)).unwrap();
        assert!(wootters_concurrence(&qubit).is_err());
    }

    #[test]
    fn concurrence_of_pure_states() {
        for amps in [[0.1, 0.7, -0.3, 0.2], [0.5, 0.5, 0.5, -0.5], [0.9, 0.0, 0.1, 0.3]] {
            let n = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
            let a: Vec<f64> = amps.iter().map(|x| x / n).collect();
            let rho = DensityMatrix::pure(vec![2, 2], &a).unwrap();
            let expected = 2.0 * (a[0] * a[3] - a[1] * a[2]).abs();
            assert!((wootters_concurrence(&rho).unwrap() - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn werner_state_concurrence() {
        // p |Φ⁺⟩⟨Φ⁺| + (1 − p) I/4 has C = max(0, (3p − 1)/2)
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let phi = CMatrix::outer(&[h, 0.0, 0.0, h].map(|a| Complex64::new(a, 0.0)));
        for p in [0.2, 0.5, 0.8] {
            let m = CMatrix::from_fn(4, 4, |i, j| {
                phi[(i, j)] * p + if i == j { Complex64::new(0.25 * (1.0 - p), 0.0) } else { Complex64::new(0.0, 0.0) }
            });
            let rho = DensityMatrix::new(vec![2, 2], m).unwrap();
            let expected = (1.5 * p - 0.5).max(0.0);
            assert!((wootters_concurrence(&rho).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn verify_examples() {
        let bounds = Bounds::default();
        for (a, m, parity) in [(1.0, 0, Parity::Even), (0.3, 3, Parity::Odd), (20.0, 0, Parity::Even)] {
            let rec = verify(&params(a, m, parity), None).unwrap();
            assert!(rec.passes(&bounds), "{rec:?}");
            assert!(rec.max_deviation_where(false) <= 1e-8);
            assert!(rec.max_deviation_where(true) <= 1e-3);
        }
    }

    #[test]
    fn verify_entropies_tightly() {
        let rec = verify(&params(0.7, 2, Parity::Even), None).unwrap();
        let s1 = rec.deviation(Quantity::S1).unwrap();
        assert!(s1.signed.abs() <= 1e-10);
        let c23 = verify(&params(1.0, 1, Parity::Even), None).unwrap();
        let d = c23.deviation(Quantity::C23).unwrap();
        assert!(d.closed_form == 0.0 && d.oracle.abs() <= 1e-8);
        assert!(c23.deviation(Quantity::C13).unwrap().oracle > 0.1);
    }

    #[test]
    fn truncation_doubling_is_stable() {
        for (a, m, parity) in [(0.5, 1, Parity::Odd), (3.0, 4, Parity::Even)] {
            let p = params(a, m, parity);
            let n = truncation(a, m);
            let base = oracle_values(&p, n).unwrap();
            let doubled = oracle_values(&p, 2 * n).unwrap();
            for q in Quantity::ALL {
                assert!((base.get(q) - doubled.get(q)).abs() <= 1e-10, "{q}");
            }
        }
    }
}
