//! Gate dictionaries and the translation between circuits and
//! (instance string, dictionary) pairs.

use std::fmt::Write as _;

use crate::circuit::{canonical_encode, decode, CanonicalEncoding, Circuit, GateApplication};
use crate::error::{Error, Result};
use crate::gate::{classify_w, gates_equal, parse_gate, Gate, Sign, WClass};
use crate::instance::{AqceInstance, Substring};

/// Ordered gate list `u_1..u_m`; alias `(k)` names entry `k` (1-based).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GateDictionary {
    gates: Vec<Gate>,
}

impl GateDictionary {
    /// Entries must be pairwise distinct. An empty dictionary is allowed
    /// for instances made only of W substrings.
    pub fn new(gates: Vec<Gate>) -> Result<GateDictionary> {
        for (a, ga) in gates.iter().enumerate() {
            for (b, gb) in gates.iter().enumerate().skip(a + 1) {
                if gates_equal(ga, gb) {
                    return Err(Error::InvalidDictionary(format!(
                        "entries {} and {} are the same gate",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(GateDictionary { gates })
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Entry `k`, 1-based.
    pub fn get(&self, k: usize) -> Option<&Gate> {
        k.checked_sub(1).and_then(|i| self.gates.get(i))
    }

    /// Rejects entries that are W gates for an `n`-qubit instance; those
    /// are always written as `(*r)` / `(c*r)`.
    pub fn check_for(&self, n: usize) -> Result<()> {
        match self.gates.iter().position(|g| classify_w(g, n).is_some()) {
            Some(i) => Err(Error::InvalidDictionary(format!(
                "entry {} ({}) is a W gate for {n} qubits",
                i + 1,
                self.gates[i]
            ))),
            None => Ok(()),
        }
    }

    /// 1-based positions where `self` and `other` differ; positions past
    /// the shorter dictionary count as differing.
    pub fn diff_positions(&self, other: &GateDictionary) -> Vec<usize> {
        let longest = self.len().max(other.len());
        (1..=longest)
            .filter(|&k| match (self.get(k), other.get(k)) {
                (Some(a), Some(b)) => !gates_equal(a, b),
                _ => true,
            })
            .collect()
    }

    /// Dictionary file: one `<index>: <gate-text>` line per entry.
    pub fn to_text(&self) -> Result<String> {
        let mut out = String::new();
        for (i, g) in self.gates.iter().enumerate() {
            let text = g.text().ok_or_else(|| {
                Error::InvalidDictionary(format!("entry {} has no text form", i + 1))
            })?;
            writeln!(out, "{}: {text}", i + 1).unwrap();
        }
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<GateDictionary> {
        let mut gates = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let fail = |message: String| Error::Format { line, message };
            let (index, gate_text) = l
                .split_once(':')
                .ok_or_else(|| fail(format!("expected `<index>: <gate>`, found `{l}`")))?;
            let index: usize = index
                .trim()
                .parse()
                .map_err(|_| fail(format!("bad index `{}`", index.trim())))?;
            if index != gates.len() + 1 {
                return Err(fail(format!("expected index {}, found {index}", gates.len() + 1)));
            }
            gates.push(parse_gate(gate_text.trim()).map_err(|e| fail(e.to_string()))?);
        }
        GateDictionary::new(gates)
    }
}

/// Resolves an instance against a dictionary into its canonical encoding.
pub fn dealias_encoding(inst: &AqceInstance, d: &GateDictionary) -> Result<CanonicalEncoding> {
    d.check_for(inst.n())?;
    let mut tokens = Vec::with_capacity(inst.substrings().len());
    for (position, s) in inst.substrings().iter().enumerate() {
        let (gate, args) = match *s {
            Substring::Alias { k, j } => (lookup(d, k, 1, position)?, vec![j]),
            Substring::Alias2 { k, i, j } => (lookup(d, k, 2, position)?, vec![i, j]),
            Substring::W { r, j } => (w_from_exponent(false, r)?.gate(), vec![j]),
            Substring::CW { r, i, j } => (w_from_exponent(true, r)?.gate(), vec![i, j]),
        };
        tokens.push(GateApplication::new(gate, &args)?);
    }
    CanonicalEncoding::from_tokens(inst.n(), tokens)
}

pub fn dealias(inst: &AqceInstance, d: &GateDictionary) -> Result<Circuit> {
    Ok(decode(&dealias_encoding(inst, d)?))
}

fn lookup(d: &GateDictionary, k: usize, expected: usize, position: usize) -> Result<Gate> {
    let g = d.get(k).ok_or(Error::UnknownAlias { k, m: d.len() })?;
    if g.arity() != expected {
        return Err(Error::Arity {
            position: position + 1,
            k,
            expected,
            actual: g.arity(),
        });
    }
    Ok(g.clone())
}

fn w_from_exponent(controlled: bool, r: i64) -> Result<WClass> {
    let sign = if r < 0 { Sign::Minus } else { Sign::Plus };
    let k = u32::try_from(r.unsigned_abs())
        .map_err(|_| Error::InvalidArgument(format!("W exponent {r} too large")))?;
    WClass::new(controlled, sign, k)
}

/// Aliases a circuit: W gates become `(*r)` / `(c*r)`, every other gate
/// gets a dictionary index in order of first appearance in the canonical
/// encoding.
pub fn alias(c: &Circuit) -> Result<(AqceInstance, GateDictionary)> {
    let enc = canonical_encode(c);
    let n = enc.n();
    let mut dict: Vec<Gate> = Vec::new();
    let mut substrings = Vec::with_capacity(enc.tokens().len());
    for t in enc.tokens() {
        let args = t.args();
        let s = match classify_w(t.gate(), n) {
            Some(w) => match args {
                [j] => Substring::W { r: w.signed_exponent(), j: *j },
                [i, j] => Substring::CW { r: w.signed_exponent(), i: *i, j: *j },
                _ => unreachable!(),
            },
            None => {
                let k = match dict.iter().position(|g| gates_equal(g, t.gate())) {
                    Some(p) => p + 1,
                    None => {
                        dict.push(t.gate().clone());
                        dict.len()
                    }
                };
                match args {
                    [j] => Substring::Alias { k, j: *j },
                    [i, j] => Substring::Alias2 { k, i: *i, j: *j },
                    _ => unreachable!(),
                }
            }
        };
        substrings.push(s);
    }
    Ok((AqceInstance::new(n, substrings)?, GateDictionary { gates: dict }))
}
