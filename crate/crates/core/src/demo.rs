//! One instance string, two dictionaries, opposite decisions.
//!
//! Two phases whose binary expansions first differ at bit `k` give two
//! phase-estimation circuits that differ only in their `cP` gate. Both
//! alias to the same instance text; de-aliased under their own
//! dictionaries one is accepted and the other rejected.

use std::f64::consts::{PI, TAU};
use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alias::{alias, GateDictionary};
use crate::error::{Error, Result};
use crate::gate::parse_gate;
use crate::instance::AqceInstance;
use crate::qpe::{build_separation_circuit, carry_distance, first_differing_bit};
use crate::sim::{decide, Decision, Outcome};

/// Default failure bound; success probability 0.8.
pub const DEFAULT_EPSILON: f64 = 0.2;

/// Minimum distance (radians) kept from every `π/2^j`, `2π − π/2^j` and
/// `1/2^j`.
pub const PHASE_EXCLUSION: f64 = 1e-9;

/// Largest `k` accepted by [`pick_safe_phases`].
pub const MAX_PICK_BITS: u32 = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationReport {
    pub instance_text: String,
    pub k: u32,
    pub dict_x: GateDictionary,
    pub dict_y: GateDictionary,
    pub p_x: f64,
    pub p_y: f64,
    pub decision_x: Decision,
    pub decision_y: Decision,
    pub strings_identical: bool,
    pub dict_diff_positions: Vec<usize>,
}

/// Guard distance from k-bit carry boundaries, `2^-(k+2)`.
pub fn guard_distance(k: u32) -> f64 {
    2f64.powi(-(k as i32 + 2))
}

/// Names the first safety condition `theta` violates for bit count `k`.
pub fn phase_violation(theta: f64, k: u32) -> Option<String> {
    if !(theta > 0.0 && theta < TAU) {
        return Some(format!("phase {theta} not in (0, 2π)"));
    }
    let phi = theta / TAU;
    if carry_distance(phi, k) < guard_distance(k) {
        return Some(format!(
            "phase {theta} (φ = {phi}) is within 2^-{} of a {k}-bit boundary",
            k + 2
        ));
    }
    for j in 1..=64 {
        let dyadic = 2f64.powi(-j);
        let near = [
            (PI * dyadic, format!("π/2^{j}")),
            (TAU - PI * dyadic, format!("2π − π/2^{j}")),
            (dyadic, format!("1/2^{j}")),
        ];
        for (bad, name) in near {
            if (theta - bad).abs() < PHASE_EXCLUSION {
                return Some(format!("phase {theta} is within {PHASE_EXCLUSION:e} of {name}"));
            }
        }
    }
    None
}

/// Seeded choice of two phases whose fractions `θ/2π` first differ at bit
/// `k`, both guard-separated from carry boundaries and W phases. Which of
/// the two has bit `k` set is itself drawn from the seed.
pub fn pick_safe_phases(seed: u64, k: u32) -> Result<(f64, f64)> {
    if !(1..=MAX_PICK_BITS).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "k = {k} not in [1, {MAX_PICK_BITS}]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = 2f64.powi(k as i32);
    loop {
        let prefix = rng.random_range(0..(1u64 << (k - 1))) as f64;
        let low = (2.0 * prefix + rng.random_range(0.25..0.75)) / scale;
        let high = (2.0 * prefix + 1.0 + rng.random_range(0.25..0.75)) / scale;
        let (phi_x, phi_y) = if rng.random_bool(0.5) {
            (low, high)
        } else {
            (high, low)
        };
        let (x, y) = (phi_x * TAU, phi_y * TAU);
        if phase_violation(x, k).is_none()
            && phase_violation(y, k).is_none()
            && first_differing_bit(x / TAU, y / TAU).ok() == Some(k)
        {
            return Ok((x, y));
        }
    }
}

/// Builds, aliases and decides both circuits for phases `x` and `y`.
pub fn run_demo(x: f64, y: f64, epsilon: f64) -> Result<SeparationReport> {
    for (name, theta) in [("x", x), ("y", y)] {
        if !(theta > 0.0 && theta < TAU) {
            return Err(Error::UnsafePhases(format!("{name} = {theta} not in (0, 2π)")));
        }
    }
    let k = first_differing_bit(x / TAU, y / TAU)?;
    for (name, theta) in [("x", x), ("y", y)] {
        if let Some(why) = phase_violation(theta, k) {
            return Err(Error::UnsafePhases(format!("{name}: {why}")));
        }
    }
    let side = |theta: f64| -> Result<(AqceInstance, GateDictionary, Decision)> {
        let c = build_separation_circuit(theta, k as usize, epsilon)?;
        let (inst, dict) = alias(&c)?;
        let decision = decide(&inst, &dict)?;
        Ok((inst, dict, decision))
    };
    #[cfg(feature = "parallel")]
    let (rx, ry) = rayon::join(|| side(x), || side(y));
    #[cfg(not(feature = "parallel"))]
    let (rx, ry) = (side(x), side(y));
    let (inst_x, dict_x, decision_x) = rx?;
    let (inst_y, dict_y, decision_y) = ry?;
    Ok(SeparationReport {
        instance_text: inst_x.source().to_string(),
        k,
        dict_diff_positions: dict_x.diff_positions(&dict_y),
        strings_identical: inst_x.source() == inst_y.source(),
        p_x: decision_x.p,
        p_y: decision_y.p,
        dict_x,
        dict_y,
        decision_x,
        decision_y,
    })
}

fn dict_inline(d: &GateDictionary) -> String {
    let entries: Vec<String> = d.gates().iter().map(|g| g.to_string()).collect();
    format!("[{}]", entries.join(", "))
}

fn parse_dict_inline(s: &str) -> Result<GateDictionary> {
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::InvalidArgument(format!("expected `[...]`, found `{s}`")))?;
    if inner.is_empty() {
        return GateDictionary::new(Vec::new());
    }
    GateDictionary::new(inner.split(", ").map(parse_gate).collect::<Result<_>>()?)
}

const FIELDS: [&str; 10] = [
    "instance_text",
    "k",
    "dict_x",
    "dict_y",
    "p_x",
    "p_y",
    "decision_x",
    "decision_y",
    "strings_identical",
    "dict_diff_positions",
];

impl SeparationReport {
    /// One `field: value` line per field, in declaration order.
    pub fn to_text(&self) -> String {
        let positions: Vec<String> = self.dict_diff_positions.iter().map(|p| p.to_string()).collect();
        let values = [
            self.instance_text.clone(),
            self.k.to_string(),
            dict_inline(&self.dict_x),
            dict_inline(&self.dict_y),
            self.p_x.to_string(),
            self.p_y.to_string(),
            self.decision_x.outcome.to_string(),
            self.decision_y.outcome.to_string(),
            self.strings_identical.to_string(),
            format!("[{}]", positions.join(", ")),
        ];
        let mut out = String::new();
        for (field, value) in FIELDS.iter().zip(values) {
            writeln!(out, "{field}: {value}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<SeparationReport> {
        let lines: Vec<&str> = text.lines().collect();
        if lines.len() != FIELDS.len() {
            return Err(Error::Format {
                line: lines.len().min(FIELDS.len()) + 1,
                message: format!("expected {} fields, found {}", FIELDS.len(), lines.len()),
            });
        }
        let mut values = Vec::with_capacity(FIELDS.len());
        for (i, (line, field)) in lines.iter().zip(FIELDS).enumerate() {
            let value = line
                .strip_prefix(field)
                .and_then(|rest| rest.strip_prefix(": "))
                .ok_or_else(|| Error::Format {
                    line: i + 1,
                    message: format!("expected `{field}: <value>`"),
                })?;
            values.push(value);
        }
        let fail = |line: usize, e: &dyn fmt::Display| Error::Format {
            line,
            message: e.to_string(),
        };
        let k: u32 = values[1].parse().map_err(|e| fail(2, &e))?;
        let dict_x = parse_dict_inline(values[2]).map_err(|e| fail(3, &e))?;
        let dict_y = parse_dict_inline(values[3]).map_err(|e| fail(4, &e))?;
        let p_x: f64 = values[4].parse().map_err(|e| fail(5, &e))?;
        let p_y: f64 = values[5].parse().map_err(|e| fail(6, &e))?;
        let outcome_x: Outcome = values[6].parse().map_err(|e| fail(7, &e))?;
        let outcome_y: Outcome = values[7].parse().map_err(|e| fail(8, &e))?;
        let strings_identical: bool = values[8].parse().map_err(|e| fail(9, &e))?;
        let positions = values[9]
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| fail(10, &"expected `[...]`"))?;
        let dict_diff_positions = if positions.is_empty() {
            Vec::new()
        } else {
            positions
                .split(", ")
                .map(|p| p.parse::<usize>().map_err(|e| fail(10, &e)))
                .collect::<Result<_>>()?
        };
        Ok(SeparationReport {
            instance_text: values[0].to_string(),
            k,
            dict_x,
            dict_y,
            p_x,
            p_y,
            decision_x: Decision { outcome: outcome_x, p: p_x },
            decision_y: Decision { outcome: outcome_y, p: p_y },
            strings_identical,
            dict_diff_positions,
        })
    }
}

impl fmt::Display for SeparationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
