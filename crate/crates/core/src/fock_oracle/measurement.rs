//! Projective-measurement search for two-qubit discord.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{von_neumann_entropy, DensityMatrix};
use crate::error::{Error, Result};
use crate::special::binary_entropy;

const GRID: usize = 64;
const ANGLE_TOLERANCE: f64 = 1e-10;
const MAX_ITERATIONS: usize = 4000;

/// Which qubit of the pair is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasuredSide {
    Left,
    Right,
}

/// Bloch angles of the measurement axis; the projectors are onto `±n(θ, φ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementPoint {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementPoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::Domain(format!(
                "measurement angles ({theta}, {phi}) outside [0, pi] x [0, 2pi)"
            )));
        }
        Ok(Self { theta, phi })
    }

    /// Folds arbitrary real angles onto the canonical ranges (same axis).
    fn canonical(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(2.0 * PI);
        let mut phi = phi;
        if theta > PI {
            theta = 2.0 * PI - theta;
            phi += PI;
        }
        Self {
            theta,
            phi: phi.rem_euclid(2.0 * PI),
        }
    }

    /// The two orthonormal measurement vectors.
    fn basis(theta: f64, phi: f64) -> [[Complex64; 2]; 2] {
        let (s, c) = (0.5 * theta).sin_cos();
        let e = Complex64::from_polar(1.0, phi);
        [
            [Complex64::new(c, 0.0), e * s],
            [-e.conj() * s, Complex64::new(c, 0.0)],
        ]
    }
}

fn qubit_entropy(block: [[Complex64; 2]; 2], weight: f64) -> f64 {
    let a = block[0][0].re / weight;
    let d = block[1][1].re / weight;
    let b = block[0][1] / weight;
    let r = ((a - d) * (a - d) + 4.0 * b.norm_sqr()).sqrt().min(1.0);
    binary_entropy(0.5 * (1.0 + r)).expect("argument lies in [1/2, 1]")
}

/// `Σₖ pₖ S(ρ_{other|k})` after measuring `side` along `(θ, φ)`.
fn conditional_entropy_at(rho: &DensityMatrix, side: MeasuredSide, theta: f64, phi: f64) -> f64 {
    let basis = MeasurementPoint::basis(theta, phi);
    let m = rho.matrix();
    // index of |a b⟩ with `a` the measured qubit
    let idx = |a: usize, b: usize| match side {
        MeasuredSide::Left => 2 * a + b,
        MeasuredSide::Right => 2 * b + a,
    };
    basis
        .iter()
        .map(|n| {
            let mut block = [[Complex64::new(0.0, 0.0); 2]; 2];
            for (b, row) in block.iter_mut().enumerate() {
                for (b2, entry) in row.iter_mut().enumerate() {
                    for a in 0..2 {
                        for a2 in 0..2 {
                            *entry += n[a].conj() * m[(idx(a, b), idx(a2, b2))] * n[a2];
                        }
                    }
                }
            }
            let weight = block[0][0].re + block[1][1].re;
            if weight <= 1e-15 {
                0.0
            } else {
                weight * qubit_entropy(block, weight)
            }
        })
        .sum()
}

/// Conditional entropy for a given measurement.
pub fn conditional_entropy(rho: &DensityMatrix, side: MeasuredSide, at: MeasurementPoint) -> Result<f64> {
    check_two_qubit(rho)?;
    Ok(conditional_entropy_at(rho, side, at.theta, at.phi))
}

fn check_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::Subsystem(format!(
            "discord needs two qubits, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

/// Minimizer of the conditional entropy: a 64×64 grid over `(θ, φ)` seeds a
/// Nelder–Mead simplex that is shrunk until its extent falls below `1e−10`.
pub fn optimize_measurement(rho: &DensityMatrix, side: MeasuredSide) -> Result<(MeasurementPoint, f64)> {
    check_two_qubit(rho)?;
    let f = |v: [f64; 2]| conditional_entropy_at(rho, side, v[0], v[1]);
    let d_theta = PI / (GRID - 1) as f64;
    let d_phi = 2.0 * PI / GRID as f64;

    let mut best = ([0.0, 0.0], f64::INFINITY);
    for i in 0..GRID {
        for j in 0..GRID {
            let v = [d_theta * i as f64, d_phi * j as f64];
            let value = f(v);
            if value < best.1 {
                best = (v, value);
            }
        }
    }

    let start = best.0;
    let mut simplex = [
        (start, best.1),
        ([start[0] + d_theta, start[1]], 0.0),
        ([start[0], start[1] + d_phi], 0.0),
    ];
    for vertex in simplex.iter_mut().skip(1) {
        vertex.1 = f(vertex.0);
    }
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];

    for _ in 0..MAX_ITERATIONS {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let extent = simplex[1..]
            .iter()
            .map(|(v, _)| (v[0] - simplex[0].0[0]).abs().max((v[1] - simplex[0].0[1]).abs()))
            .fold(0.0, f64::max);
        if extent < ANGLE_TOLERANCE {
            break;
        }
        let centroid = lerp(simplex[0].0, simplex[1].0, 0.5);
        let worst = simplex[2];
        let reflected = lerp(centroid, worst.0, -1.0);
        let fr = f(reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(centroid, worst.0, -2.0);
            let fe = f(expanded);
            simplex[2] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[1].1 {
            simplex[2] = (reflected, fr);
        } else {
            let contracted = if fr < worst.1 {
                lerp(centroid, reflected, 0.5)
            } else {
                lerp(centroid, worst.0, 0.5)
            };
            let fc = f(contracted);
            if fc < worst.1.min(fr) {
                simplex[2] = (contracted, fc);
            } else {
                for k in 1..3 {
                    let v = lerp(simplex[0].0, simplex[k].0, 0.5);
                    simplex[k] = (v, f(v));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (v, value) = simplex[0];
    Ok((MeasurementPoint::canonical(v[0], v[1]), value))
}

/// `D = S(ρ_measured) − S(ρ) + min Σ pₖ S(ρ_{other|k})`, in bits.
pub fn discord_numeric(rho: &DensityMatrix, side: MeasuredSide) -> Result<f64> {
    let (_, conditional) = optimize_measurement(rho, side)?;
    let keep = match side {
        MeasuredSide::Left => 0,
        MeasuredSide::Right => 1,
    };
    let measured = super::partial_trace(rho, &[keep])?;
    Ok(von_neumann_entropy(&measured) - von_neumann_entropy(rho) + conditional)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;

    fn pure(amps: [f64; 4]) -> DensityMatrix {
        DensityMatrix::pure(vec![2, 2], &amps).unwrap()
    }

    #[test]
    fn angle_validation() {
        assert!(MeasurementPoint::new(0.0, 0.0).is_ok());
        assert!(MeasurementPoint::new(PI, 6.0).is_ok());
        assert!(MeasurementPoint::new(-0.1, 0.0).is_err());
        assert!(MeasurementPoint::new(1.0, 2.0 * PI).is_err());
        let c = MeasurementPoint::canonical(-0.5, 7.0);
        assert!(MeasurementPoint::new(c.theta, c.phi).is_ok());
    }

    #[test]
    fn product_state_has_no_discord() {
        let rho = pure([0.6, 0.8, 0.0, 0.0]);
        for side in [MeasuredSide::Left, MeasuredSide::Right] {
            assert!(discord_numeric(&rho, side).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn maximally_entangled_state_has_unit_discord() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rho = pure([h, 0.0, 0.0, h]);
        assert!((discord_numeric(&rho, MeasuredSide::Left).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn pure_state_discord_is_entanglement_entropy() {
        let rho = pure([0.8, 0.0, 0.36, 0.48]);
        let s = von_neumann_entropy(&super::super::partial_trace(&rho, &[0]).unwrap());
        for side in [MeasuredSide::Left, MeasuredSide::Right] {
            assert!((discord_numeric(&rho, side).unwrap() - s).abs() < 1e-8);
        }
    }

    #[test]
    fn classically_correlated_state_has_no_discord() {
        let m = CMatrix::from_real(
            4,
            4,
            &[0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5],
        );
        let rho = DensityMatrix::new(vec![2, 2], m).unwrap();
        let (point, value) = optimize_measurement(&rho, MeasuredSide::Left).unwrap();
        assert!(value.abs() < 1e-9);
        assert!(point.theta < 1e-4 || PI - point.theta < 1e-4);
        assert!(discord_numeric(&rho, MeasuredSide::Left).unwrap().abs() < 1e-9);
    }

    #[test]
    fn werner_discord() {
        // p|Φ⁺⟩⟨Φ⁺| + (1−p) I/4: every axis is optimal, giving
        // D = 1 − S(ρ) + H((1+p)/2) with S(ρ) from the spectrum
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = 0.6;
        let phi = [h, 0.0, 0.0, h];
        let m = CMatrix::from_fn(4, 4, |i, j| {
            let diag = if i == j { 0.25 * (1.0 - p) } else { 0.0 };
            Complex64::new(p * phi[i] * phi[j] + diag, 0.0)
        });
        let rho = DensityMatrix::new(vec![2, 2], m).unwrap();
        let l0 = 0.25 * (1.0 + 3.0 * p);
        let l1 = 0.25 * (1.0 - p);
        let s = -l0 * l0.log2() - 3.0 * l1 * l1.log2();
        let expected = 1.0 - s + binary_entropy(0.5 * (1.0 + p)).unwrap();
        assert!((discord_numeric(&rho, MeasuredSide::Left).unwrap() - expected).abs() < 1e-9);
    }

    #[test]
    fn rejects_non_qubit_pairs() {
        let rho = DensityMatrix::new(vec![2], CMatrix::identity(2).scale(0.5)).unwrap();
        assert!(discord_numeric(&rho, MeasuredSide::Left).is_err());
    }
}
