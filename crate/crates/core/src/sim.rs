//! Exact dense statevector simulation and the promise decision.
//!
//! Qubit 0 is the most significant bit of the amplitude index.

use std::fmt;

use num_complex::Complex64;

use crate::alias::{dealias, GateDictionary};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::instance::AqceInstance;
use crate::kernel::{self, Backend};

/// Largest register `run` will allocate (2^24 amplitudes, 256 MiB).
pub const MAX_QUBITS: usize = 24;

/// Band around 1/3 and 2/3 within which a probability still counts as
/// satisfying the promise.
pub const PROMISE_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0…0⟩` on `n` qubits.
    pub fn zero(n: usize) -> Result<Statevector> {
        if n == 0 {
            return Err(Error::InvalidArgument("statevector needs at least one qubit".into()));
        }
        if n > MAX_QUBITS {
            return Err(Error::ResourceLimit(format!(
                "{n} qubits exceeds the {MAX_QUBITS}-qubit simulation cap"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Statevector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `|Σ|a|² − 1|`.
    pub fn norm_deviation(&self) -> f64 {
        (self.amps.iter().map(Complex64::norm_sqr).sum::<f64>() - 1.0).abs()
    }
}

/// Simulates `c` from `|0…0⟩` with the default backend.
pub fn run(c: &Circuit) -> Result<Statevector> {
    run_with(c, Backend::for_qubits(c.n()))
}

pub fn run_with(c: &Circuit, backend: Backend) -> Result<Statevector> {
    let mut sv = Statevector::zero(c.n())?;
    for op in c.ops() {
        kernel::apply(backend, &mut sv.amps, c.n(), op.gate(), op.args());
    }
    Ok(sv)
}

/// Probability that measuring qubit 0 yields `|1⟩`.
pub fn first_qubit_one_probability(sv: &Statevector) -> f64 {
    let half = sv.amps.len() / 2;
    sv.amps[half..].iter().map(Complex64::norm_sqr).sum()
}

/// Marginal distribution over a list of qubits. Outcome index `b` has the
/// first listed qubit as its most significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    qubits: Vec<usize>,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn probability(&self, outcome: usize) -> f64 {
        self.probs.get(outcome).copied().unwrap_or(0.0)
    }

    /// Probability of a bitstring such as `"01"`, written in list order.
    pub fn probability_of(&self, bits: &str) -> Option<f64> {
        if bits.len() != self.qubits.len() {
            return None;
        }
        let idx = usize::from_str_radix(bits, 2).ok();
        if bits.is_empty() {
            return Some(self.probs[0]);
        }
        idx.map(|i| self.probs[i])
    }

    pub fn bitstring(&self, outcome: usize) -> String {
        let w = self.qubits.len();
        if w == 0 {
            return String::new();
        }
        format!("{outcome:0w$b}")
    }

    /// Most probable outcome; ties go to the smallest index.
    pub fn most_likely(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.probs.iter().enumerate() {
            if p > self.probs[best] {
                best = i;
            }
        }
        best
    }

    /// Outcomes with probability above `floor`, in index order.
    pub fn support(&self, floor: f64) -> impl Iterator<Item = (String, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .filter(move |(_, &p)| p > floor)
            .map(|(i, &p)| (self.bitstring(i), p))
    }
}

pub fn measurement_distribution(sv: &Statevector, qubits: &[usize]) -> Result<Distribution> {
    for (pos, &q) in qubits.iter().enumerate() {
        if q >= sv.n {
            return Err(Error::InvalidArgument(format!(
                "qubit {q} out of range for {} qubit(s)",
                sv.n
            )));
        }
        if qubits[..pos].contains(&q) {
            return Err(Error::InvalidArgument(format!("qubit {q} listed twice")));
        }
    }
    let width = qubits.len();
    let shifts: Vec<usize> = qubits.iter().map(|&q| sv.n - 1 - q).collect();
    let mut probs = vec![0.0; 1 << width];
    for (idx, a) in sv.amps.iter().enumerate() {
        let mut outcome = 0;
        for &s in &shifts {
            outcome = (outcome << 1) | ((idx >> s) & 1);
        }
        probs[outcome] += a.norm_sqr();
    }
    Ok(Distribution {
        qubits: qubits.to_vec(),
        probs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Accept,
    Reject,
    PromiseViolation,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Accept => "Accept",
            Outcome::Reject => "Reject",
            Outcome::PromiseViolation => "PromiseViolation",
        })
    }
}

impl std::str::FromStr for Outcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Outcome> {
        match s {
            "Accept" => Ok(Outcome::Accept),
            "Reject" => Ok(Outcome::Reject),
            "PromiseViolation" => Ok(Outcome::PromiseViolation),
            _ => Err(Error::InvalidArgument(format!("unknown outcome `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decision {
    pub outcome: Outcome,
    pub p: f64,
}

impl Decision {
    pub fn from_probability(p: f64) -> Decision {
        let outcome = if p >= 2.0 / 3.0 - PROMISE_GUARD {
            Outcome::Accept
        } else if p <= 1.0 / 3.0 + PROMISE_GUARD {
            Outcome::Reject
        } else {
            Outcome::PromiseViolation
        };
        Decision { outcome, p }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} p={:.12}", self.outcome, self.p)
    }
}

/// De-aliases, simulates and classifies the first-qubit probability.
pub fn decide(inst: &AqceInstance, d: &GateDictionary) -> Result<Decision> {
    let c = dealias(inst, d)?;
    let sv = run(&c)?;
    Ok(Decision::from_probability(first_qubit_one_probability(&sv)))
}
