//! Circuits, greedy layering and the canonical encoding.
//!
//! A layer admits two applications only when their supports are disjoint
//! or they overlap in a single qubit that is the first argument of two
//! controlled gates. Layers are assigned as early as time order allows,
//! and within a layer applications are ordered by
//! `(smallest argument, other argument)`.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::gate::{parse_gate, Gate};

#[derive(Debug, Clone, PartialEq)]
pub struct GateApplication {
    gate: Gate,
    args: Vec<usize>,
}

impl GateApplication {
    pub fn new(gate: Gate, args: &[usize]) -> Result<GateApplication> {
        if args.len() != gate.arity() {
            return Err(Error::InvalidCircuit(format!(
                "{}-qubit gate {gate} given {} argument(s)",
                gate.arity(),
                args.len()
            )));
        }
        if args.len() == 2 && args[0] == args[1] {
            return Err(Error::InvalidCircuit(format!(
                "two-qubit gate {gate} applied to qubit {} twice",
                args[0]
            )));
        }
        Ok(GateApplication {
            gate,
            args: args.to_vec(),
        })
    }

    pub fn gate(&self) -> &Gate {
        &self.gate
    }

    /// Qubit arguments; for two-qubit gates `args()[0]` is the first
    /// (control) argument.
    pub fn args(&self) -> &[usize] {
        &self.args
    }

    /// `(smallest argument, other argument)`; one-qubit applications use
    /// their single argument twice.
    pub fn sort_key(&self) -> (usize, usize) {
        let lo = *self.args.iter().min().expect("non-empty args");
        let hi = *self.args.iter().max().expect("non-empty args");
        (lo, hi)
    }

    fn control(&self) -> Option<usize> {
        if self.gate.is_controlled() {
            Some(self.args[0])
        } else {
            None
        }
    }

    /// Whether `self` and `other` may share a layer.
    pub fn layer_compatible(&self, other: &GateApplication) -> bool {
        let shared: Vec<usize> = self
            .args
            .iter()
            .copied()
            .filter(|q| other.args.contains(q))
            .collect();
        match shared.as_slice() {
            [] => true,
            [q] => self.control() == Some(*q) && other.control() == Some(*q),
            _ => false,
        }
    }
}

impl fmt::Display for GateApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.args.as_slice() {
            [j] => write!(f, "{}[{j}]", self.gate),
            [i, j] => write!(f, "{}[{i},{j}]", self.gate),
            _ => unreachable!("arity is 1 or 2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n: usize,
    ops: Vec<GateApplication>,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Circuit> {
        if n == 0 {
            return Err(Error::InvalidCircuit("a circuit needs at least one qubit".into()));
        }
        Ok(Circuit { n, ops: Vec::new() })
    }

    pub fn from_ops(n: usize, ops: Vec<GateApplication>) -> Result<Circuit> {
        let mut c = Circuit::new(n)?;
        for op in ops {
            c.push_application(op)?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[GateApplication] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, gate: Gate, args: &[usize]) -> Result<()> {
        self.push_application(GateApplication::new(gate, args)?)
    }

    pub fn push_application(&mut self, op: GateApplication) -> Result<()> {
        if let Some(&q) = op.args.iter().find(|&&q| q >= self.n) {
            return Err(Error::InvalidCircuit(format!(
                "qubit index {q} out of range for {} qubit(s)",
                self.n
            )));
        }
        self.ops.push(op);
        Ok(())
    }

    /// Applies `f` to every gate, keeping arguments. Used for the
    /// controlled-unitary substitution property of phase estimation.
    pub fn map_gates(&self, mut f: impl FnMut(&Gate) -> Gate) -> Result<Circuit> {
        let ops = self
            .ops
            .iter()
            .map(|op| GateApplication::new(f(&op.gate), &op.args))
            .collect::<Result<Vec<_>>>()?;
        Circuit::from_ops(self.n, ops)
    }
}

/// Greedy as-soon-as-possible layering. Each returned layer is sorted by
/// [`GateApplication::sort_key`].
pub fn layer(c: &Circuit) -> Vec<Vec<GateApplication>> {
    layer_indices(c)
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| c.ops[i].clone()).collect())
        .collect()
}

fn layer_indices(c: &Circuit) -> Vec<Vec<usize>> {
    // per qubit, one past the latest layer using it as a non-control
    // ("blocking") and as a shared control
    let mut blocking = vec![0usize; c.n];
    let mut as_control = vec![0usize; c.n];
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for (idx, op) in c.ops.iter().enumerate() {
        let control = op.control();
        let slot = op
            .args
            .iter()
            .map(|&q| {
                if control == Some(q) {
                    blocking[q]
                } else {
                    blocking[q].max(as_control[q])
                }
            })
            .max()
            .unwrap_or(0);
        for &q in &op.args {
            if control == Some(q) {
                as_control[q] = as_control[q].max(slot + 1);
            } else {
                blocking[q] = blocking[q].max(slot + 1);
            }
        }
        if slot == layers.len() {
            layers.push(Vec::new());
        }
        layers[slot].push(idx);
    }
    for l in &mut layers {
        l.sort_by_key(|&i| c.ops[i].sort_key());
    }
    layers
}

/// Layer-ordered token sequence with the qubit count as prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalEncoding {
    n: usize,
    tokens: Vec<GateApplication>,
}

impl CanonicalEncoding {
    /// Wraps an already-canonical token sequence, checking index bounds.
    pub fn from_tokens(n: usize, tokens: Vec<GateApplication>) -> Result<CanonicalEncoding> {
        let c = Circuit::from_ops(n, tokens)?;
        Ok(CanonicalEncoding {
            n: c.n,
            tokens: c.ops,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tokens(&self) -> &[GateApplication] {
        &self.tokens
    }
}

pub fn canonical_encode(c: &Circuit) -> CanonicalEncoding {
    let tokens = layer_indices(c)
        .into_iter()
        .flatten()
        .map(|i| c.ops[i].clone())
        .collect();
    CanonicalEncoding { n: c.n, tokens }
}

pub fn decode(e: &CanonicalEncoding) -> Circuit {
    Circuit {
        n: e.n,
        ops: e.tokens.clone(),
    }
}

/// Human-readable U-string. Phase angles are printed with `precision`
/// significant digits, so the output is for display only.
pub fn render(e: &CanonicalEncoding, precision: usize) -> String {
    let precision = precision.clamp(1, 17);
    let mut out = e.n.to_string();
    for t in &e.tokens {
        out.push(' ');
        let name = match t.gate.label() {
            Some(crate::gate::GateLabel::Phase(theta)) => {
                format!("P({})", significant(theta, precision))
            }
            Some(crate::gate::GateLabel::ControlledPhase(theta)) => {
                format!("cP({})", significant(theta, precision))
            }
            _ => t.gate.to_string(),
        };
        out.push_str(&name);
        match t.args.as_slice() {
            [j] => write!(out, "[{j}]").unwrap(),
            [i, j] => write!(out, "[{i},{j}]").unwrap(),
            _ => unreachable!(),
        }
    }
    out
}

fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Circuit file: `n=<count>` then one `<gate-text> <arg0>[ <arg1>]` per line.
pub fn write_circuit(c: &Circuit) -> Result<String> {
    let mut out = format!("n={}\n", c.n);
    for op in &c.ops {
        let text = op.gate.text().ok_or_else(|| {
            Error::InvalidCircuit("gate without a text form cannot be written".into())
        })?;
        out.push_str(&text);
        for a in &op.args {
            write!(out, " {a}").unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn read_circuit(text: &str) -> Result<Circuit> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines.next().ok_or(Error::Format {
        line: 1,
        message: "missing `n=<count>` header".into(),
    })?;
    let n: usize = header
        .strip_prefix("n=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Format {
            line,
            message: format!("expected `n=<count>`, found `{header}`"),
        })?;
    let mut c = Circuit::new(n).map_err(|e| Error::Format {
        line,
        message: e.to_string(),
    })?;
    for (line, l) in lines {
        let fail = |message: String| Error::Format { line, message };
        let mut parts = l.split_whitespace();
        let gate_text = parts.next().expect("non-empty line");
        let gate = parse_gate(gate_text).map_err(|e| fail(e.to_string()))?;
        let args = parts
            .map(|a| a.parse::<usize>().map_err(|_| fail(format!("bad qubit index `{a}`"))))
            .collect::<Result<Vec<_>>>()?;
        c.push(gate, &args).map_err(|e| fail(e.to_string()))?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{controlled_phase_gate, phase_gate};
    use std::f64::consts::PI;

    fn circuit(n: usize, ops: &[(Gate, &[usize])]) -> Circuit {
        let mut c = Circuit::new(n).unwrap();
        for (g, a) in ops {
            c.push(g.clone(), a).unwrap();
        }
        c
    }

    #[test]
    fn disjoint_gates_share_a_layer() {
        let c = circuit(2, &[(Gate::h(), &[0]), (Gate::h(), &[1])]);
        let layers = layer(&c);
        assert_eq!(layers.len(), 1);
        assert_eq!(layers[0].len(), 2);
    }

    #[test]
    fn shared_control_shares_a_layer() {
        let c = circuit(3, &[(Gate::cx(), &[0, 1]), (Gate::cx(), &[0, 2])]);
        assert_eq!(layer(&c).len(), 1);
    }

    #[test]
    fn same_qubit_needs_two_layers() {
        let c = circuit(1, &[(Gate::h(), &[0]), (Gate::x(), &[0])]);
        assert_eq!(layer(&c).len(), 2);
    }

    #[test]
    fn control_on_one_target_on_other_conflicts() {
        let c = circuit(2, &[(Gate::cx(), &[0, 1]), (Gate::cx(), &[1, 0])]);
        assert_eq!(layer(&c).len(), 2);
        let c = circuit(3, &[(Gate::cx(), &[0, 1]), (Gate::cx(), &[2, 1])]);
        assert_eq!(layer(&c).len(), 2);
    }

    #[test]
    fn one_qubit_gate_after_shared_controls() {
        let c = circuit(
            3,
            &[(Gate::cx(), &[0, 1]), (Gate::cx(), &[0, 2]), (Gate::h(), &[0])],
        );
        let layers = layer(&c);
        assert_eq!(layers.len(), 2);
        assert_eq!(layers[1][0].args(), &[0]);
    }

    #[test]
    fn uncontrolled_two_qubit_gates_do_not_share_first_argument() {
        let one = num_complex::Complex64::new(1.0, 0.0);
        let zero = num_complex::Complex64::new(0.0, 0.0);
        let mut m = vec![zero; 16];
        m[0] = one;
        m[6] = one;
        m[9] = one;
        m[15] = one;
        let swap = Gate::from_matrix(2, m).unwrap();
        let c = circuit(3, &[(swap.clone(), &[0, 1]), (swap, &[0, 2])]);
        assert_eq!(layer(&c).len(), 2);
    }

    #[test]
    fn encode_examples() {
        let c = circuit(2, &[(Gate::h(), &[0]), (Gate::cx(), &[0, 1])]);
        assert_eq!(render(&canonical_encode(&c), 6), "2 H[0] cX[0,1]");

        let c = circuit(3, &[(Gate::cx(), &[0, 2]), (Gate::cx(), &[0, 1])]);
        let e = canonical_encode(&c);
        assert_eq!(e.tokens()[0].args(), &[0, 1]);
        assert_eq!(e.tokens()[1].args(), &[0, 2]);

        let c = Circuit::new(1).unwrap();
        assert_eq!(render(&canonical_encode(&c), 6), "1");
        assert_eq!(render(&canonical_encode(&Circuit::new(4).unwrap()), 3), "4");
    }

    #[test]
    fn decode_examples() {
        let c = circuit(3, &[(Gate::x(), &[2]), (Gate::h(), &[0])]);
        let e = CanonicalEncoding::from_tokens(3, c.ops().to_vec()).unwrap();
        let d = decode(&e);
        assert_eq!(d.ops()[0].args(), &[2]);
        assert_eq!(d.ops()[1].args(), &[0]);
        assert!(decode(&CanonicalEncoding::from_tokens(1, vec![]).unwrap()).is_empty());
    }

    #[test]
    fn render_precision() {
        let c = circuit(1, &[(phase_gate(PI).unwrap(), &[0])]);
        assert_eq!(render(&canonical_encode(&c), 5), "1 P(3.1416)[0]");
        let c = circuit(2, &[(controlled_phase_gate(-PI / 4.0).unwrap(), &[1, 0])]);
        assert_eq!(render(&canonical_encode(&c), 3), "2 cP(-0.785)[1,0]");
    }

    #[test]
    fn invalid_applications() {
        assert!(GateApplication::new(Gate::cx(), &[1, 1]).is_err());
        assert!(GateApplication::new(Gate::h(), &[0, 1]).is_err());
        let mut c = Circuit::new(2).unwrap();
        assert!(c.push(Gate::h(), &[2]).is_err());
        assert!(Circuit::new(0).is_err());
    }

    #[test]
    fn circuit_file_round_trip() {
        let c = circuit(
            3,
            &[
                (Gate::h(), &[0]),
                (controlled_phase_gate(0.123456789).unwrap(), &[0, 2]),
                (controlled_phase_gate(-PI / 4.0).unwrap(), &[1, 0]),
                (Gate::ch(), &[2, 1]),
            ],
        );
        let text = write_circuit(&c).unwrap();
        assert!(text.contains("cP(-pi/4) 1 0"));
        let back = read_circuit(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(write_circuit(&back).unwrap(), text);
    }

    #[test]
    fn circuit_file_errors() {
        assert!(matches!(read_circuit(""), Err(Error::Format { line: 1, .. })));
        assert!(matches!(read_circuit("n=x"), Err(Error::Format { line: 1, .. })));
        assert!(matches!(read_circuit("n=2\nH 2"), Err(Error::Format { line: 2, .. })));
        assert!(matches!(read_circuit("# c\nn=2\n\nFoo 0"), Err(Error::Format { line: 4, .. })));
        assert!(matches!(read_circuit("n=2\ncX 0"), Err(Error::Format { line: 2, .. })));
        assert!(read_circuit("# comment\nn=2\nH 0\ncX 0 1\n").is_ok());
    }
}
