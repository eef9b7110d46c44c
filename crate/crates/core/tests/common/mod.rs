//! Test-only generators and independent oracles.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use aqce::gate::{controlled_phase_gate, phase_gate, Sign, WClass};
use aqce::{Circuit, Gate};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random circuit on `1..=max_n` qubits with up to `max_gates` gates
/// drawn from H, X, cX, cH, random P/cP and W gates.
pub fn random_circuit(rng: &mut ChaCha8Rng, max_n: usize, max_gates: usize) -> Circuit {
    let n = rng.random_range(1..=max_n);
    let count = rng.random_range(0..=max_gates);
    let mut c = Circuit::new(n).unwrap();
    for _ in 0..count {
        let two = n >= 2 && rng.random_bool(0.5);
        if two {
            let i = rng.random_range(0..n);
            let j = (i + rng.random_range(1..n)) % n;
            let g = match rng.random_range(0..4) {
                0 => Gate::cx(),
                1 => Gate::ch(),
                2 => controlled_phase_gate(rng.random_range(-TAU..TAU)).unwrap(),
                _ => random_w(rng, n, true),
            };
            c.push(g, &[i, j]).unwrap();
        } else {
            let j = rng.random_range(0..n);
            let g = match rng.random_range(0..4) {
                0 => Gate::h(),
                1 => Gate::x(),
                2 => phase_gate(rng.random_range(-TAU..TAU)).unwrap(),
                _ if n >= 2 => random_w(rng, n, false),
                _ => Gate::h(),
            };
            c.push(g, &[j]).unwrap();
        }
    }
    c
}

fn random_w(rng: &mut ChaCha8Rng, n: usize, controlled: bool) -> Gate {
    let k = rng.random_range(1..n) as u32;
    let sign = if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus };
    WClass::new(controlled, sign, k).unwrap().gate()
}

/// Dense `2^n × 2^n` matrix, row-major.
pub type Dense = Vec<Vec<Complex64>>;

fn bit(index: usize, n: usize, q: usize) -> usize {
    (index >> (n - 1 - q)) & 1
}

/// Embeds a gate application into the full register by enumerating
/// matrix entries directly.
pub fn embed(gate: &Gate, args: &[usize], n: usize) -> Dense {
    let dim = 1 << n;
    let local = |idx: usize| args.iter().fold(0, |acc, &q| 2 * acc + bit(idx, n, q));
    let others_equal = |r: usize, c: usize| {
        (0..n).filter(|q| !args.contains(q)).all(|q| bit(r, n, q) == bit(c, n, q))
    };
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| {
                    if others_equal(r, c) {
                        gate.entry(local(r), local(c))
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let dim = a.len();
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| (0..dim).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Ordered product `U_m ⋯ U_1` of the circuit's gates.
pub fn circuit_unitary(c: &Circuit) -> Dense {
    let dim = 1 << c.n();
    let mut u: Dense = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    for op in c.ops() {
        u = matmul(&embed(op.gate(), op.args(), c.n()), &u);
    }
    u
}

pub fn max_abs_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Closed-form phase-estimation outcome distribution on a `t`-qubit main
/// register: `P(m) = |2^-t Σ_y e^{2πi(φ - m/2^t)y}|²`.
pub fn qpe_distribution(phi: f64, t: usize) -> Vec<f64> {
    let size = 1usize << t;
    (0..size)
        .map(|m| {
            let delta = phi - m as f64 / size as f64;
            let amp: Complex64 = (0..size)
                .map(|y| Complex64::cis(TAU * delta * y as f64))
                .sum::<Complex64>()
                / size as f64;
            amp.norm_sqr()
        })
        .collect()
}

/// Probability the top `k` of `t` estimate bits equal the first `k` bits
/// of `phi`, from the closed form.
pub fn qpe_prefix_probability(phi: f64, k: usize, t: usize) -> f64 {
    let want = (phi * (1u64 << k) as f64).floor() as usize;
    qpe_distribution(phi, t)
        .iter()
        .enumerate()
        .filter(|(m, _)| m >> (t - k) == want)
        .map(|(_, p)| p)
        .sum()
}

/// `φ` drawn uniformly from the guard-separated part of each `k`-bit cell.
pub fn guarded_phi(rng: &mut ChaCha8Rng, k: usize) -> f64 {
    let cells = 1u64 << k;
    let cell = rng.random_range(0..cells) as f64;
    loop {
        let phi = (cell + rng.random_range(0.25..=0.75)) / cells as f64;
        // keep clear of the W phases so the phase gate stays a dictionary entry
        let theta = phi * TAU;
        if (1..=64).all(|j| (theta - PI / 2f64.powi(j)).abs() > 1e-9) {
            return phi;
        }
    }
}
