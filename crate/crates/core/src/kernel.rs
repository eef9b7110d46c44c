//! Gate application kernels over a dense amplitude buffer.
//!
//! Both backends walk the same slice decomposition and perform the same
//! arithmetic per amplitude group, so their results are bit-identical.
//! The parallel backend only changes which thread handles which group.

use num_complex::Complex64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::gate::Gate;

/// Registers at least this large use the parallel backend by default.
pub const PARALLEL_MIN_QUBITS: usize = 14;

#[cfg(feature = "parallel")]
const MIN_GROUPS_PER_TASK: usize = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Backend {
    pub fn for_qubits(n: usize) -> Backend {
        #[cfg(feature = "parallel")]
        if n >= PARALLEL_MIN_QUBITS {
            return Backend::Parallel;
        }
        let _ = n;
        Backend::Sequential
    }
}

/// Applies `gate` to `args` of an `n`-qubit state in place.
pub fn apply(backend: Backend, amps: &mut [Complex64], n: usize, gate: &Gate, args: &[usize]) {
    debug_assert_eq!(amps.len(), 1 << n);
    let mask = |q: usize| 1usize << (n - 1 - q);
    match *args {
        [q] => {
            let u: [Complex64; 4] = gate.matrix().try_into().expect("2x2 matrix");
            match backend {
                Backend::Sequential => one_qubit_seq(amps, mask(q), &u),
                #[cfg(feature = "parallel")]
                Backend::Parallel => one_qubit_par(amps, mask(q), &u),
            }
        }
        [a, b] => {
            let u: [Complex64; 16] = gate.matrix().try_into().expect("4x4 matrix");
            let (ma, mb) = (mask(a), mask(b));
            let pair = Pair {
                hi: ma.max(mb),
                lo: ma.min(mb),
                first_is_hi: ma > mb,
            };
            match backend {
                Backend::Sequential => two_qubit_seq(amps, pair, &u),
                #[cfg(feature = "parallel")]
                Backend::Parallel => two_qubit_par(amps, pair, &u),
            }
        }
        _ => unreachable!("gates act on one or two qubits"),
    }
}

#[inline]
fn mix1(u: &[Complex64; 4], a: &mut Complex64, b: &mut Complex64) {
    let (x, y) = (*a, *b);
    *a = u[0] * x + u[1] * y;
    *b = u[2] * x + u[3] * y;
}

#[derive(Clone, Copy)]
struct Pair {
    hi: usize,
    lo: usize,
    first_is_hi: bool,
}

/// `pXY` holds the amplitude with high-mask bit X and low-mask bit Y.
#[inline]
fn mix2(
    u: &[Complex64; 16],
    first_is_hi: bool,
    p00: &mut Complex64,
    p01: &mut Complex64,
    p10: &mut Complex64,
    p11: &mut Complex64,
) {
    // gate basis index is 2 * b_first + b_second
    let v = if first_is_hi {
        [*p00, *p01, *p10, *p11]
    } else {
        [*p00, *p10, *p01, *p11]
    };
    let mut w = [Complex64::new(0.0, 0.0); 4];
    for (s, out) in w.iter_mut().enumerate() {
        let row = &u[4 * s..4 * s + 4];
        *out = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
    }
    if first_is_hi {
        (*p00, *p01, *p10, *p11) = (w[0], w[1], w[2], w[3]);
    } else {
        (*p00, *p10, *p01, *p11) = (w[0], w[1], w[2], w[3]);
    }
}

fn one_qubit_seq(amps: &mut [Complex64], m: usize, u: &[Complex64; 4]) {
    for chunk in amps.chunks_mut(2 * m) {
        let (lo, hi) = chunk.split_at_mut(m);
        for (a, b) in lo.iter_mut().zip(hi) {
            mix1(u, a, b);
        }
    }
}

fn two_qubit_seq(amps: &mut [Complex64], p: Pair, u: &[Complex64; 16]) {
    for chunk in amps.chunks_mut(2 * p.hi) {
        let (h0, h1) = chunk.split_at_mut(p.hi);
        for (c0, c1) in h0.chunks_mut(2 * p.lo).zip(h1.chunks_mut(2 * p.lo)) {
            let (a00, a01) = c0.split_at_mut(p.lo);
            let (a10, a11) = c1.split_at_mut(p.lo);
            for (((x00, x01), x10), x11) in a00.iter_mut().zip(a01).zip(a10).zip(a11) {
                mix2(u, p.first_is_hi, x00, x01, x10, x11);
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn one_qubit_par(amps: &mut [Complex64], m: usize, u: &[Complex64; 4]) {
    let chunks_per_task = (MIN_GROUPS_PER_TASK / m).max(1);
    amps.par_chunks_mut(2 * m)
        .with_min_len(chunks_per_task)
        .for_each(|chunk| {
            let (lo, hi) = chunk.split_at_mut(m);
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .with_min_len(MIN_GROUPS_PER_TASK)
                .for_each(|(a, b)| mix1(u, a, b));
        });
}

#[cfg(feature = "parallel")]
fn two_qubit_par(amps: &mut [Complex64], p: Pair, u: &[Complex64; 16]) {
    let outer_per_task = (MIN_GROUPS_PER_TASK / p.hi).max(1);
    let inner_per_task = (MIN_GROUPS_PER_TASK / p.lo).max(1);
    amps.par_chunks_mut(2 * p.hi)
        .with_min_len(outer_per_task)
        .for_each(|chunk| {
            let (h0, h1) = chunk.split_at_mut(p.hi);
            h0.par_chunks_mut(2 * p.lo)
                .zip(h1.par_chunks_mut(2 * p.lo))
                .with_min_len(inner_per_task)
                .for_each(|(c0, c1)| {
                    let (a00, a01) = c0.split_at_mut(p.lo);
                    let (a10, a11) = c1.split_at_mut(p.lo);
                    a00.par_iter_mut()
                        .zip(a01.par_iter_mut())
                        .zip(a10.par_iter_mut())
                        .zip(a11.par_iter_mut())
                        .with_min_len(MIN_GROUPS_PER_TASK)
                        .for_each(|(((x00, x01), x10), x11)| {
                            mix2(u, p.first_is_hi, x00, x01, x10, x11)
                        });
                });
        });
}
