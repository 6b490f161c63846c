//! Closed-form correlation measures.
//!
//! With `x = e^{−2|α|²}`, `κ = κ_m(|α|²)`, `s = cos kπ` and
//! `den = 1 + κ x³ s`, the quasi-GHZ reduced states are rank two and the
//! Koashi–Winter relation turns every pairwise discord into
//! `S_measured − S_pair + E_complement`. All entropies are in bits.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::special::{binary_entropy, LaguerreOrder, ENTROPY_GUARD};
use crate::states::{ModelParams, Parity};

/// Deficit values below this count as a monogamy violation.
pub const VIOLATION_TOLERANCE: f64 = 1e-9;

/// Range scanned for the monogamy threshold.
pub const THRESHOLD_SCAN: (f64, f64) = (1e-6, 2.0);
const THRESHOLD_SCAN_POINTS: usize = 200;
const THRESHOLD_RESOLUTION: f64 = 1e-7;

/// Range searched for discord peaks.
pub const PEAK_RANGE: (f64, f64) = (0.01, 4.0);
const PEAK_SCAN_POINTS: usize = 400;

#[derive(Clone, Copy, Debug)]
struct Terms {
    x: f64,
    x2: f64,
    kappa: f64,
    sign: f64,
    /// `1 + κ x³ s`
    den: f64,
    /// `1 + κ x² s`
    bell_den: f64,
    /// `1 − x²`
    one_minus_x2: f64,
    /// `1 − x⁴`
    one_minus_x4: f64,
    /// `1 − κ² x²`
    one_minus_kx2: f64,
}

impl Terms {
    fn new(p: &ModelParams) -> Result<Self> {
        p.ensure_regular()?;
        let a = p.alpha2();
        let x = p.overlap();
        let kappa = p.kappa();
        let sign = p.parity.sign();
        let kx = kappa * x;
        // odd parity subtracts nearly equal terms at small amplitude
        let (den, bell_den) = match p.parity {
            Parity::Even => (1.0 + kappa * x * x * x, 1.0 + kappa * x * x),
            Parity::Odd => (p.kappa_complement(3), p.kappa_complement(2)),
        };
        Ok(Self {
            x,
            x2: x * x,
            kappa,
            sign,
            den,
            bell_den,
            one_minus_x2: -(-4.0 * a).exp_m1(),
            one_minus_x4: -(-8.0 * a).exp_m1(),
            one_minus_kx2: p.kappa_complement(1) * (1.0 + kx),
        })
    }
}

fn h(x: f64) -> f64 {
    binary_entropy(x).expect("closed-form entropy argument lies in [0, 1]")
}

fn radicand(v: f64) -> f64 {
    debug_assert!(v >= -ENTROPY_GUARD, "negative radicand {v}");
    v.max(0.0)
}

/// Entanglement of formation from the Wootters concurrence,
/// `H(1/2 + sqrt(1 − C²)/2)`.
pub fn eof_from_concurrence(c: f64) -> Result<f64> {
    if !(0.0..=1.0 + ENTROPY_GUARD).contains(&c) {
        return Err(Error::Domain(format!("concurrence {c} outside [0, 1]")));
    }
    let c = c.min(1.0);
    binary_entropy(0.5 + 0.5 * (1.0 - c * c).max(0.0).sqrt())
}

/// Concurrence of the photon-added quasi-Bell state,
/// `sqrt(1 − x²) sqrt(1 − κ²x²) / (1 + κ x² s)`.
pub fn bell_concurrence(p: &ModelParams) -> Result<f64> {
    let t = Terms::new(p)?;
    Ok(t.one_minus_x2.sqrt() * radicand(t.one_minus_kx2).sqrt() / t.bell_den)
}

/// Entanglement of formation of the quasi-Bell state,
/// `H(1/2 + x(1 + κ s) / (2 + 2κ x² s))`.
pub fn bell_eof(p: &ModelParams) -> Result<f64> {
    let t = Terms::new(p)?;
    let shift = t.x * (1.0 + t.kappa * t.sign) / (2.0 * t.bell_den);
    Ok(h(0.5 + shift))
}

/// `C₁₂(B₁(0, m)) = 2 sqrt(m+1) / (m+2)`.
pub fn w_bell_concurrence_limit(m: LaguerreOrder) -> f64 {
    let m = f64::from(m.get());
    2.0 * (m + 1.0).sqrt() / (m + 2.0)
}

/// Von Neumann entropies of the quasi-GHZ reductions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Entropies {
    pub s1: f64,
    pub s2: f64,
    pub s12: f64,
    pub s23: f64,
}

pub fn entropies(p: &ModelParams) -> Result<Entropies> {
    let t = Terms::new(p)?;
    let kx = t.kappa * t.x;
    let sx2 = match p.parity {
        Parity::Even => 1.0 + t.x2,
        Parity::Odd => t.one_minus_x2,
    };
    let s1 = h(0.5 * (1.0 + kx) * sx2 / t.den);
    let s12 = h(0.5 * t.bell_den * (1.0 + t.x) / t.den);
    let s2 = h(0.5 * (1.0 + t.x) * t.bell_den / t.den);
    let s23 = h(0.5 * sx2 * (1.0 + kx) / t.den);
    Ok(Entropies { s1, s2, s12, s23 })
}

/// Pairwise and bipartition concurrences of the quasi-GHZ state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GhzConcurrences {
    pub c23: f64,
    pub c13: f64,
    pub c1_23: f64,
}

/// `C₂₃ = |κ| x (1 − x²) / den`, `C₁₃ = x sqrt((1 − κ²x²)(1 − x²)) / den`,
/// `C_{1|23} = sqrt((1 − κ²x²)(1 − x⁴)) / den`.
///
/// `C₂₃` is the form whose square enters `E₂₃`; it is the concurrence of the
/// Tr₁ reduction, with the traced mode's overlap `κx` in front.
pub fn ghz_concurrences(p: &ModelParams) -> Result<GhzConcurrences> {
    let t = Terms::new(p)?;
    let kx2 = radicand(t.one_minus_kx2);
    Ok(GhzConcurrences {
        c23: t.kappa.abs() * t.x * t.one_minus_x2 / t.den,
        c13: t.x * (kx2 * t.one_minus_x2).sqrt() / t.den,
        c1_23: (kx2 * t.one_minus_x4).sqrt() / t.den,
    })
}

fn e23(t: &Terms) -> f64 {
    let r = t.kappa * t.kappa * t.x2 * t.one_minus_x2 * t.one_minus_x2 / (t.den * t.den);
    h(0.5 + 0.5 * radicand(1.0 - r).sqrt())
}

fn e13(t: &Terms) -> f64 {
    let r = t.x2 * radicand(t.one_minus_kx2) * t.one_minus_x2 / (t.den * t.den);
    h(0.5 + 0.5 * radicand(1.0 - r).sqrt())
}

/// `D₁₂ = S₁ − S₁₂ + E₂₃`, measurement on mode 1. Equal to `D₁₃`.
pub fn discord_12(p: &ModelParams) -> Result<f64> {
    let t = Terms::new(p)?;
    let s = entropies(p)?;
    Ok(s.s1 - s.s12 + e23(&t))
}

/// `D₂₃ = S₂ − S₂₃ + E₁₃`, measurement on mode 2.
pub fn discord_23(p: &ModelParams) -> Result<f64> {
    let t = Terms::new(p)?;
    let s = entropies(p)?;
    Ok(s.s2 - s.s23 + e13(&t))
}

/// `D_{1|23} = E_{1|23} = H(1/2 + (κx + x² s) / (2 den))`.
pub fn discord_1_23(p: &ModelParams) -> Result<f64> {
    let t = Terms::new(p)?;
    Ok(h(0.5 + 0.5 * (t.kappa * t.x + t.x2 * t.sign) / t.den))
}

/// Monogamy deficit `Δ₁₂₃ = D_{1|23} − D₁₂ − D₁₃ = D_{1|23} − 2 D₁₂`.
pub fn deficit(p: &ModelParams) -> Result<f64> {
    Ok(discord_1_23(p)? - 2.0 * discord_12(p)?)
}

/// Every correlation quantity at one parameter point.
///
/// Fields wrapped in `Option` are absent only for W-limit reports, where no
/// analytic limit is available for them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationReport {
    pub params: ModelParams,
    /// True when the values are the analytic `|α| → 0` limits.
    pub limit: bool,
    pub s1: Option<f64>,
    pub s2: Option<f64>,
    pub s12: Option<f64>,
    pub s23: Option<f64>,
    /// Concurrence of the two-mode quasi-Bell state.
    pub c12: f64,
    pub c23: Option<f64>,
    pub c13: Option<f64>,
    pub c1_23: Option<f64>,
    /// Entanglement of formation of the two-mode quasi-Bell state.
    pub e12: f64,
    pub e23: Option<f64>,
    pub e13: Option<f64>,
    pub e1_23: f64,
    pub d12: f64,
    pub d23: f64,
    pub d1_23: f64,
    pub delta123: f64,
}

impl CorrelationReport {
    pub fn get(&self, q: Quantity) -> Option<f64> {
        match q {
            Quantity::S1 => self.s1,
            Quantity::S2 => self.s2,
            Quantity::S12 => self.s12,
            Quantity::S23 => self.s23,
            Quantity::C12 => Some(self.c12),
            Quantity::C23 => self.c23,
            Quantity::C13 => self.c13,
            Quantity::C1_23 => self.c1_23,
            Quantity::E12 => Some(self.e12),
            Quantity::E23 => self.e23,
            Quantity::E13 => self.e13,
            Quantity::E1_23 => Some(self.e1_23),
            Quantity::D12 => Some(self.d12),
            Quantity::D23 => Some(self.d23),
            Quantity::D1_23 => Some(self.d1_23),
            Quantity::Delta123 => Some(self.delta123),
        }
    }
}

/// Names of the report fields, as used in CSV headers and on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    S1,
    S2,
    S12,
    S23,
    C12,
    C23,
    C13,
    C1_23,
    E12,
    E23,
    E13,
    E1_23,
    D12,
    D23,
    D1_23,
    Delta123,
}

/// Which tolerance class a field is verified under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantityKind {
    Entropy,
    Concurrence,
    Entanglement,
    Discord,
}

impl Quantity {
    pub const ALL: [Quantity; 16] = [
        Quantity::S1,
        Quantity::S2,
        Quantity::S12,
        Quantity::S23,
        Quantity::C12,
        Quantity::C23,
        Quantity::C13,
        Quantity::C1_23,
        Quantity::E12,
        Quantity::E23,
        Quantity::E13,
        Quantity::E1_23,
        Quantity::D12,
        Quantity::D23,
        Quantity::D1_23,
        Quantity::Delta123,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::S1 => "S1",
            Quantity::S2 => "S2",
            Quantity::S12 => "S12",
            Quantity::S23 => "S23",
            Quantity::C12 => "C12_conc",
            Quantity::C23 => "C23_conc",
            Quantity::C13 => "C13_conc",
            Quantity::C1_23 => "C1_23_conc",
            Quantity::E12 => "E12",
            Quantity::E23 => "E23",
            Quantity::E13 => "E13",
            Quantity::E1_23 => "E1_23",
            Quantity::D12 => "D12",
            Quantity::D23 => "D23",
            Quantity::D1_23 => "D1_23",
            Quantity::Delta123 => "Delta123",
        }
    }

    pub fn kind(self) -> QuantityKind {
        match self {
            Quantity::S1 | Quantity::S2 | Quantity::S12 | Quantity::S23 => QuantityKind::Entropy,
            Quantity::C12 | Quantity::C23 | Quantity::C13 | Quantity::C1_23 => {
                QuantityKind::Concurrence
            }
            Quantity::E12 | Quantity::E23 | Quantity::E13 | Quantity::E1_23 => {
                QuantityKind::Entanglement
            }
            Quantity::D12 | Quantity::D23 | Quantity::D1_23 | Quantity::Delta123 => {
                QuantityKind::Discord
            }
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Quantity::ALL.iter().map(|q| q.name()).collect();
                Error::Domain(format!("unknown quantity '{s}' (expected one of {})", known.join(", ")))
            })
    }
}

/// Analytic `|α| → 0` limits of the odd-parity states, which become W-type.
pub fn w_limit_report(m: LaguerreOrder) -> CorrelationReport {
    let mf = f64::from(m.get());
    let d = mf + 3.0;
    let h_two = h(2.0 / d);
    let h_lead = h((mf + 2.0) / d);
    let h_12 = h(0.5 + 0.5 * ((mf + 1.0) * (mf + 5.0)).sqrt() / d);
    let h_23 = h(0.5 + 0.5 * (mf * mf + 2.0 * mf + 5.0).sqrt() / d);
    let d1_23 = h_two;
    CorrelationReport {
        params: ModelParams {
            strength: crate::special::StrengthParam::new(0.0).expect("zero strength is valid"),
            order: m,
            parity: Parity::Odd,
        },
        limit: true,
        s1: None,
        s2: None,
        s12: None,
        s23: None,
        c12: w_bell_concurrence_limit(m),
        c23: None,
        c13: None,
        c1_23: None,
        e12: h((mf + 1.0) / (mf + 2.0)),
        e23: None,
        e13: None,
        e1_23: d1_23,
        d12: h_two - h_lead + h_12,
        d23: h_lead - h_two + h_23,
        d1_23,
        delta123: 2.0 * h_lead - 2.0 * h_12 - h_two,
    }
}

/// All closed forms at `p`; odd parity below the degenerate threshold falls
/// back to [`w_limit_report`].
pub fn report(p: &ModelParams) -> CorrelationReport {
    if p.is_limit_regime() {
        return CorrelationReport {
            params: *p,
            ..w_limit_report(p.order)
        };
    }
    let regular = "parameters outside the limit regime";
    let s = entropies(p).expect(regular);
    let c = ghz_concurrences(p).expect(regular);
    let t = Terms::new(p).expect(regular);
    let d12 = discord_12(p).expect(regular);
    let d1_23 = discord_1_23(p).expect(regular);
    CorrelationReport {
        params: *p,
        limit: false,
        s1: Some(s.s1),
        s2: Some(s.s2),
        s12: Some(s.s12),
        s23: Some(s.s23),
        c12: bell_concurrence(p).expect(regular),
        c23: Some(c.c23),
        c13: Some(c.c13),
        c1_23: Some(c.c1_23),
        e12: bell_eof(p).expect(regular),
        e23: Some(e23(&t)),
        e13: Some(e13(&t)),
        e1_23: d1_23,
        d12,
        d23: discord_23(p).expect(regular),
        d1_23,
        delta123: d1_23 - 2.0 * d12,
    }
}

/// Outcome of the monogamy-threshold search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Threshold {
    /// The deficit is negative for `|α|²` below `alpha2` (within the scan range).
    Root { alpha2: f64, p: f64 },
    MonogamousEverywhere,
    /// Negative across the whole scan range.
    ViolatedThroughout,
}

/// Upper edge of the region where `Δ₁₂₃ < 0`.
///
/// The deficit is sampled on 200 log-spaced points of `[1e−6, 2]`; the last
/// violating sample and the next non-negative one bracket the root, which is
/// then bisected to `1e−7` in `|α|²`.
pub fn violation_threshold(m: LaguerreOrder, parity: Parity) -> Threshold {
    let f = |a: f64| deficit(&ModelParams {
        strength: crate::special::StrengthParam::new(a).expect("scan point is valid"),
        order: m,
        parity,
    })
    .expect("scan stays above the degenerate threshold");

    let (lo, hi) = THRESHOLD_SCAN;
    let ratio = (hi / lo).ln();
    let grid: Vec<f64> = (0..THRESHOLD_SCAN_POINTS)
        .map(|i| {
            if i + 1 == THRESHOLD_SCAN_POINTS {
                hi
            } else {
                lo * (ratio * i as f64 / (THRESHOLD_SCAN_POINTS - 1) as f64).exp()
            }
        })
        .collect();
    let values: Vec<f64> = grid.iter().map(|&a| f(a)).collect();

    let Some(last_bad) = values.iter().rposition(|&v| v < -VIOLATION_TOLERANCE) else {
        return Threshold::MonogamousEverywhere;
    };
    let Some(offset) = values[last_bad..].iter().position(|&v| v >= 0.0) else {
        return Threshold::ViolatedThroughout;
    };
    let mut below = grid[last_bad];
    let mut above = grid[last_bad + offset];
    // tighten the bracket to the last negative sample before `above`
    for i in last_bad..last_bad + offset {
        if values[i] < 0.0 {
            below = grid[i];
        }
    }
    while above - below > THRESHOLD_RESOLUTION {
        let mid = 0.5 * (below + above);
        if f(mid) < 0.0 {
            below = mid;
        } else {
            above = mid;
        }
    }
    let alpha2 = 0.5 * (below + above);
    Threshold::Root {
        alpha2,
        p: (-2.0 * alpha2).exp(),
    }
}

/// Location and height of a maximum over `|α|²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    pub alpha2: f64,
    pub value: f64,
}

/// Maximum of `f` on `[lo, hi]`: coarse scan, then golden-section search in
/// the bracket around the best sample.
pub fn locate_peak(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Peak {
    let step = (hi - lo) / (PEAK_SCAN_POINTS - 1) as f64;
    let point = |i: usize| lo + step * i as f64;
    let best = (0..PEAK_SCAN_POINTS)
        .map(|i| (i, f(point(i))))
        .fold((0, f64::NEG_INFINITY), |acc, cur| if cur.1 > acc.1 { cur } else { acc })
        .0;
    let mut a = point(best.saturating_sub(1));
    let mut b = point((best + 1).min(PEAK_SCAN_POINTS - 1));
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > 1e-10 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let alpha2 = 0.5 * (a + b);
    Peak {
        alpha2,
        value: f(alpha2),
    }
}

/// Peak of `D₁₂` over `|α|² ∈ [0.01, 4]`.
pub fn discord_12_peak(m: LaguerreOrder, parity: Parity) -> Peak {
    peak_of(m, parity, discord_12)
}

/// Peak of `D₂₃` over `|α|² ∈ [0.01, 4]`.
pub fn discord_23_peak(m: LaguerreOrder, parity: Parity) -> Peak {
    peak_of(m, parity, discord_23)
}

fn peak_of(m: LaguerreOrder, parity: Parity, g: fn(&ModelParams) -> Result<f64>) -> Peak {
    let (lo, hi) = PEAK_RANGE;
    locate_peak(
        |a| {
            g(&ModelParams {
                strength: crate::special::StrengthParam::new(a).expect("peak range is valid"),
                order: m,
                parity,
            })
            .expect("peak range is outside the limit regime")
        },
        lo,
        hi,
    )
}
