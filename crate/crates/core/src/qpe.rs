//! Phase-estimation circuits for `P(θ)` with eigenstate `|1⟩`.
//!
//! Layout on `t + 1` qubits: qubits `0..t` form the main register (qubit 0
//! carries the most significant estimate bit), qubit `t` holds the
//! eigenstate. The estimated quantity is `φ = θ / 2π`.

use std::f64::consts::TAU;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{controlled_phase_gate, Gate, Sign, WClass};
use crate::sim::{measurement_distribution, run};

/// Largest main register `build_qpe` accepts; the controlled powers cost
/// `2^t - 1` gates.
pub const MAX_MAIN_QUBITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QpeSpec {
    pub theta: f64,
    pub phi: f64,
    pub k: usize,
    pub epsilon: f64,
    pub t: usize,
    pub total_qubits: usize,
}

impl QpeSpec {
    pub fn new(theta: f64, k: usize, epsilon: f64) -> Result<QpeSpec> {
        if !(theta > 0.0 && theta < TAU) {
            return Err(Error::InvalidArgument(format!("theta {theta} not in (0, 2π)")));
        }
        let t = required_register_size(k, epsilon)?;
        Ok(QpeSpec {
            theta,
            phi: theta / TAU,
            k,
            epsilon,
            t,
            total_qubits: t + 1,
        })
    }
}

/// Main-register size giving the first `k` bits with failure probability
/// at most `epsilon`: `k + ceil(log2(2 + 1/(2ε)))`.
pub fn required_register_size(k: usize, epsilon: f64) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidArgument("bit count k must be at least 1".into()));
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidArgument(format!("epsilon {epsilon} not in (0, 1/2)")));
    }
    let extra = (2.0 + 1.0 / (2.0 * epsilon)).log2().ceil() as usize;
    Ok(k + extra)
}

/// Builds the estimation circuit: eigenstate preparation, Hadamards,
/// `2^(t-1-j)` copies of `cP(θ)` controlled by main qubit `j`, then the
/// inverse Fourier transform from `H`, `cP(-π/2^r)` and cX swap trios.
pub fn build_qpe(theta: f64, t: usize) -> Result<Circuit> {
    if !(1..=MAX_MAIN_QUBITS).contains(&t) {
        return Err(Error::ResourceLimit(format!(
            "main register of {t} qubits outside [1, {MAX_MAIN_QUBITS}]"
        )));
    }
    let cu = controlled_phase_gate(theta)?;
    let mut c = Circuit::new(t + 1)?;
    c.push(Gate::x(), &[t])?;
    for j in 0..t {
        c.push(Gate::h(), &[j])?;
    }
    for j in 0..t {
        for _ in 0..(1usize << (t - 1 - j)) {
            c.push(cu.clone(), &[j, t])?;
        }
    }
    inverse_qft(&mut c, t)?;
    Ok(c)
}

/// Appends the inverse QFT on qubits `0..t` (qubit 0 most significant).
fn inverse_qft(c: &mut Circuit, t: usize) -> Result<()> {
    for q in 0..t / 2 {
        swap(c, q, t - 1 - q)?;
    }
    for j in (0..t).rev() {
        for m in (j + 1..t).rev() {
            let w = WClass::new(true, Sign::Minus, (m - j) as u32)?;
            c.push(w.gate(), &[m, j])?;
        }
        c.push(Gate::h(), &[j])?;
    }
    Ok(())
}

fn swap(c: &mut Circuit, a: usize, b: usize) -> Result<()> {
    c.push(Gate::cx(), &[a, b])?;
    c.push(Gate::cx(), &[b, a])?;
    c.push(Gate::cx(), &[a, b])
}

/// Phase estimation sized for `k` bits at failure bound `epsilon`, with the
/// k-th estimate bit swapped onto qubit 0.
pub fn build_separation_circuit(theta: f64, k: usize, epsilon: f64) -> Result<Circuit> {
    let t = required_register_size(k, epsilon)?;
    let mut c = build_qpe(theta, t)?;
    if k >= 2 {
        swap(&mut c, 0, k - 1)?;
    }
    Ok(c)
}

/// Bit `k` (1-based) of the binary expansion of `phi`.
pub fn phase_bit(phi: f64, k: u32) -> u8 {
    ((phi * 2f64.powi(k as i32)).floor() % 2.0) as u8
}

/// Index of the first binary digit where the two fractions differ.
pub fn first_differing_bit(phi_x: f64, phi_y: f64) -> Result<u32> {
    for phi in [phi_x, phi_y] {
        if !(phi > 0.0 && phi < 1.0) {
            return Err(Error::InvalidArgument(format!("phase fraction {phi} not in (0, 1)")));
        }
    }
    (1..=64)
        .find(|&k| phase_bit(phi_x, k) != phase_bit(phi_y, k))
        .ok_or(Error::IndistinguishablePhases)
}

/// First `k` bits of `phi` as an integer, most significant first.
pub fn leading_bits(phi: f64, k: u32) -> usize {
    (phi * 2f64.powi(k as i32)).floor() as usize
}

/// Exact probability that measuring main qubits `0..k` of `build_qpe(θ, t)`
/// returns the first `k` bits of `θ/2π`.
pub fn prefix_success_probability(theta: f64, k: usize, t: usize) -> Result<f64> {
    if k == 0 || k > t {
        return Err(Error::InvalidArgument(format!("k = {k} not in [1, t = {t}]")));
    }
    let sv = run(&build_qpe(theta, t)?)?;
    let qubits: Vec<usize> = (0..k).collect();
    let dist = measurement_distribution(&sv, &qubits)?;
    let phi = theta.rem_euclid(TAU) / TAU;
    Ok(dist.probability(leading_bits(phi, k as u32)))
}

/// `θ = 2πφ`.
pub fn theta_from_phi(phi: f64) -> f64 {
    phi * TAU
}

/// Shortest distance from `phi` to a multiple of `2^-k`.
pub fn carry_distance(phi: f64, k: u32) -> f64 {
    let scale = 2f64.powi(k as i32);
    let frac = (phi * scale).fract();
    frac.min(1.0 - frac) / scale
}
