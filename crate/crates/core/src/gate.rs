//! One- and two-qubit gates as explicit unitary matrices.
//!
//! Two-qubit matrices are indexed by `2 * b_first + b_second`, where
//! `b_first` is the bit of the first argument (the control for controlled
//! gates). Gate identity is matrix equality within [`GATE_TOLERANCE`];
//! global phase is not quotiented out.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Entrywise tolerance for gate comparison and the unitarity check.
pub const GATE_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Symbolic label carried by the named gate constructors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateLabel {
    H,
    X,
    CX,
    CH,
    Phase(f64),
    ControlledPhase(f64),
}

impl GateLabel {
    pub fn arity(&self) -> usize {
        match self {
            GateLabel::H | GateLabel::X | GateLabel::Phase(_) => 1,
            GateLabel::CX | GateLabel::CH | GateLabel::ControlledPhase(_) => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Gate {
    arity: usize,
    matrix: Vec<Complex64>,
    label: Option<GateLabel>,
}

impl Gate {
    /// Builds a gate from a row-major matrix of dimension `2^arity`.
    pub fn from_matrix(arity: usize, matrix: Vec<Complex64>) -> Result<Gate> {
        if arity != 1 && arity != 2 {
            return Err(Error::InvalidArgument(format!(
                "gate arity must be 1 or 2, got {arity}"
            )));
        }
        let dim = 1usize << arity;
        if matrix.len() != dim * dim {
            return Err(Error::InvalidArgument(format!(
                "a {arity}-qubit gate needs {} matrix entries, got {}",
                dim * dim,
                matrix.len()
            )));
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("matrix entries must be finite".into()));
        }
        let deviation = unitarity_deviation(dim, &matrix);
        if deviation > GATE_TOLERANCE {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Gate {
            arity,
            matrix,
            label: None,
        })
    }

    fn labelled(arity: usize, matrix: Vec<Complex64>, label: GateLabel) -> Gate {
        Gate {
            arity,
            matrix,
            label: Some(label),
        }
    }

    pub fn h() -> Gate {
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Gate::labelled(1, vec![s, s, s, -s], GateLabel::H)
    }

    pub fn x() -> Gate {
        Gate::labelled(1, vec![ZERO, ONE, ONE, ZERO], GateLabel::X)
    }

    pub fn cx() -> Gate {
        Gate::labelled(2, controlled(&Gate::x().matrix), GateLabel::CX)
    }

    pub fn ch() -> Gate {
        Gate::labelled(2, controlled(&Gate::h().matrix), GateLabel::CH)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    /// Row-major matrix entries.
    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[row * self.dim() + col]
    }

    pub fn label(&self) -> Option<GateLabel> {
        self.label
    }

    /// Maximum entrywise modulus of `self - other`; infinite when the
    /// arities differ.
    pub fn distance(&self, other: &Gate) -> f64 {
        if self.arity != other.arity {
            return f64::INFINITY;
        }
        self.matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// True for a two-qubit gate of the form `|0><0| ⊗ I + |1><1| ⊗ U`,
    /// i.e. its first argument acts purely as a control.
    pub fn is_controlled(&self) -> bool {
        if self.arity != 2 {
            return false;
        }
        (0..4).all(|row| {
            (0..4).all(|col| {
                if row >= 2 && col >= 2 {
                    return true;
                }
                let expected = if row == col { ONE } else { ZERO };
                (self.entry(row, col) - expected).norm() <= GATE_TOLERANCE
            })
        })
    }

    /// Gate text (`H`, `cP(pi/4)`, ...) for labelled gates; `None` for
    /// gates built from a raw matrix.
    pub fn text(&self) -> Option<String> {
        let label = self.label?;
        Some(match label {
            GateLabel::H => "H".to_string(),
            GateLabel::X => "X".to_string(),
            GateLabel::CX => "cX".to_string(),
            GateLabel::CH => "cH".to_string(),
            GateLabel::Phase(theta) => format!("P({})", format_angle(theta)),
            GateLabel::ControlledPhase(theta) => format!("cP({})", format_angle(theta)),
        })
    }
}

impl PartialEq for Gate {
    fn eq(&self, other: &Gate) -> bool {
        gates_equal(self, other)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.text() {
            Some(t) => f.write_str(&t),
            None if self.arity == 1 => f.write_str("U"),
            None => f.write_str("U2"),
        }
    }
}

/// `P(θ) = diag(1, e^{iθ})`.
pub fn phase_gate(theta: f64) -> Result<Gate> {
    check_angle(theta)?;
    Ok(Gate::labelled(
        1,
        vec![ONE, ZERO, ZERO, Complex64::cis(theta)],
        GateLabel::Phase(theta),
    ))
}

/// `cP(θ) = diag(1, 1, 1, e^{iθ})`.
pub fn controlled_phase_gate(theta: f64) -> Result<Gate> {
    check_angle(theta)?;
    let p = [ONE, ZERO, ZERO, Complex64::cis(theta)];
    Ok(Gate::labelled(2, controlled(&p), GateLabel::ControlledPhase(theta)))
}

fn check_angle(theta: f64) -> Result<()> {
    if theta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("phase angle must be finite, got {theta}")))
    }
}

fn controlled(u: &[Complex64]) -> Vec<Complex64> {
    let mut m = vec![ZERO; 16];
    m[0] = ONE;
    m[5] = ONE;
    m[10] = u[0];
    m[11] = u[1];
    m[14] = u[2];
    m[15] = u[3];
    m
}

fn unitarity_deviation(dim: usize, m: &[Complex64]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = ZERO;
            for r in 0..dim {
                acc += m[r * dim + i].conj() * m[r * dim + j];
            }
            if i == j {
                acc -= ONE;
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}

pub fn gates_equal(a: &Gate, b: &Gate) -> bool {
    a.distance(b) <= GATE_TOLERANCE
}

/// Sign of a W-gate phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// A dyadic phase gate `P(±π/2^k)` or `cP(±π/2^k)` with `k ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WClass {
    pub controlled: bool,
    pub sign: Sign,
    pub k: u32,
}

impl WClass {
    pub fn new(controlled: bool, sign: Sign, k: u32) -> Result<WClass> {
        if !(1..=1023).contains(&k) {
            return Err(Error::InvalidArgument(format!(
                "W exponent must lie in [1, 1023], got {k}"
            )));
        }
        Ok(WClass { controlled, sign, k })
    }

    /// Signed exponent as written in instance text: `-k` for negative phases.
    pub fn signed_exponent(&self) -> i64 {
        match self.sign {
            Sign::Plus => self.k as i64,
            Sign::Minus => -(self.k as i64),
        }
    }

    pub fn phase(&self) -> f64 {
        self.sign.factor() * PI / 2f64.powi(self.k as i32)
    }

    pub fn gate(&self) -> Gate {
        let theta = self.phase();
        // the phase is finite for every k accepted by `new`
        if self.controlled {
            controlled_phase_gate(theta).expect("finite W phase")
        } else {
            phase_gate(theta).expect("finite W phase")
        }
    }
}

/// Recognises W gates for a circuit on `n` qubits: exponents range over
/// `[1, n - 1]`, positive sign is tried before negative, smallest `k` wins.
pub fn classify_w(g: &Gate, n: usize) -> Option<WClass> {
    if n < 2 {
        return None;
    }
    let controlled = match g.arity {
        1 => false,
        _ => {
            if !g.is_controlled() {
                return None;
            }
            true
        }
    };
    let dim = g.dim();
    // every W gate is diagonal with ones everywhere but the last entry
    for row in 0..dim {
        for col in 0..dim {
            if row == dim - 1 && col == dim - 1 {
                continue;
            }
            let expected = if row == col { ONE } else { ZERO };
            if (g.entry(row, col) - expected).norm() > GATE_TOLERANCE {
                return None;
            }
        }
    }
    let corner = g.entry(dim - 1, dim - 1);
    let max_k = u32::try_from(n - 1).unwrap_or(u32::MAX).min(1023);
    for k in 1..=max_k {
        for sign in [Sign::Plus, Sign::Minus] {
            let w = WClass { controlled, sign, k };
            if (corner - Complex64::cis(w.phase())).norm() <= GATE_TOLERANCE {
                return Some(w);
            }
        }
        // phases π/2^k shrink monotonically; once below tolerance nothing
        // further can match a corner that is not itself ~1
        if PI / 2f64.powi(k as i32) < GATE_TOLERANCE / 2.0 {
            break;
        }
    }
    None
}

/// Formats an angle for gate text. Exact multiples `a·π/2^b` (as `f64`)
/// are written in `pi` form; anything else uses the shortest decimal that
/// round-trips.
pub fn format_angle(theta: f64) -> String {
    if theta == 0.0 {
        return "0".to_string();
    }
    for b in 0..=62u32 {
        let den = (1u64 << b) as f64;
        let scaled = theta / PI * den;
        if scaled.fract() != 0.0 || scaled.abs() > 1e6 {
            continue;
        }
        let num = scaled as i64;
        if (num as f64) * PI / den != theta {
            continue;
        }
        let sign = if num < 0 { "-" } else { "" };
        let mag = num.unsigned_abs();
        let coeff = if mag == 1 { String::new() } else { mag.to_string() };
        return if b == 0 {
            format!("{sign}{coeff}pi")
        } else {
            format!("{sign}{coeff}pi/{}", 1u64 << b)
        };
    }
    format!("{theta:?}")
}

/// Parses an angle written as a decimal or as `[-][a]pi[/b]`.
pub fn parse_angle(text: &str) -> Result<f64> {
    let bad = || Error::InvalidArgument(format!("cannot parse angle `{text}`"));
    if let Some(pos) = text.find("pi") {
        let (head, tail) = (&text[..pos], &text[pos + 2..]);
        let (negative, coeff) = match head.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, head),
        };
        let coeff: f64 = if coeff.is_empty() {
            1.0
        } else if coeff.bytes().all(|b| b.is_ascii_digit()) {
            coeff.parse::<u64>().map_err(|_| bad())? as f64
        } else {
            return Err(bad());
        };
        let den: f64 = match tail.strip_prefix('/') {
            None if tail.is_empty() => 1.0,
            Some(d) if !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) => {
                let d = d.parse::<u64>().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                d as f64
            }
            _ => return Err(bad()),
        };
        let theta = coeff * PI / den;
        return Ok(if negative { -theta } else { theta });
    }
    let theta: f64 = text.parse().map_err(|_| bad())?;
    if !theta.is_finite() {
        return Err(bad());
    }
    Ok(theta)
}

/// Parses gate text: `H`, `X`, `cX`, `cH`, `P(<angle>)`, `cP(<angle>)`.
pub fn parse_gate(text: &str) -> Result<Gate> {
    match text {
        "H" => return Ok(Gate::h()),
        "X" => return Ok(Gate::x()),
        "cX" => return Ok(Gate::cx()),
        "cH" => return Ok(Gate::ch()),
        _ => {}
    }
    let (controlled, rest) = match text.strip_prefix("cP(") {
        Some(rest) => (true, rest),
        None => match text.strip_prefix("P(") {
            Some(rest) => (false, rest),
            None => return Err(Error::InvalidArgument(format!("unknown gate `{text}`"))),
        },
    };
    let inner = rest
        .strip_suffix(')')
        .ok_or_else(|| Error::InvalidArgument(format!("unterminated gate `{text}`")))?;
    let theta = parse_angle(inner)?;
    if controlled {
        controlled_phase_gate(theta)
    } else {
        phase_gate(theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn phase_gate_values() {
        assert!(gates_equal(&phase_gate(0.0).unwrap(), &Gate::from_matrix(1, vec![ONE, ZERO, ZERO, ONE]).unwrap()));
        let z = phase_gate(PI).unwrap();
        assert!((z.entry(1, 1) - c(-1.0, 0.0)).norm() < 1e-15);
        // e^{iπ/4} computed from its cartesian form
        let t = phase_gate(PI / 4.0).unwrap();
        let expected = c(1.0, 1.0) / 2f64.sqrt();
        assert!((t.entry(1, 1) - expected).norm() < 1e-15);
        assert_eq!(t.entry(0, 0), ONE);
        assert_eq!(t.entry(0, 1), ZERO);
    }

    #[test]
    fn controlled_phase_values() {
        let cz = controlled_phase_gate(PI).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = match (i, j) {
                    (3, 3) => c(-1.0, 0.0),
                    _ if i == j => ONE,
                    _ => ZERO,
                };
                assert!((cz.entry(i, j) - want).norm() < 1e-15);
            }
        }
        let id = controlled_phase_gate(0.0).unwrap();
        assert!((0..4).all(|i| id.entry(i, i) == ONE));
        let k2 = controlled_phase_gate(PI / 4.0).unwrap();
        assert!((k2.entry(3, 3) - Complex64::cis(PI / 2f64.powi(2))).norm() < 1e-15);
    }

    #[test]
    fn non_finite_angles_rejected() {
        assert!(matches!(phase_gate(f64::NAN), Err(Error::InvalidArgument(_))));
        assert!(matches!(controlled_phase_gate(f64::INFINITY), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn classify_examples() {
        let w = classify_w(&controlled_phase_gate(PI / 4.0).unwrap(), 8).unwrap();
        assert_eq!(w, WClass { controlled: true, sign: Sign::Plus, k: 2 });
        assert_eq!(classify_w(&Gate::h(), 8), None);
        assert_eq!(classify_w(&phase_gate(PI / 2f64.powi(9)).unwrap(), 8), None);
        let neg = classify_w(&phase_gate(-PI / 8.0).unwrap(), 4).unwrap();
        assert_eq!(neg, WClass { controlled: false, sign: Sign::Minus, k: 3 });
        assert_eq!(classify_w(&phase_gate(PI / 2.0).unwrap(), 1), None);
        // P(π) is Z, not a W gate
        assert_eq!(classify_w(&phase_gate(PI).unwrap(), 8), None);
    }

    #[test]
    fn equality_examples() {
        assert!(gates_equal(&Gate::h(), &Gate::h()));
        assert!(gates_equal(&phase_gate(1.0).unwrap(), &phase_gate(1.0 + 1e-15).unwrap()));
        let minus_x = Gate::from_matrix(1, vec![ZERO, -ONE, -ONE, ZERO]).unwrap();
        assert!(!gates_equal(&Gate::x(), &minus_x));
        assert!(!gates_equal(&Gate::x(), &Gate::cx()));
    }

    #[test]
    fn from_matrix_validates() {
        assert!(matches!(
            Gate::from_matrix(1, vec![ONE, ONE, ZERO, ONE]),
            Err(Error::NotUnitary { .. })
        ));
        assert!(Gate::from_matrix(3, vec![ONE; 64]).is_err());
        assert!(Gate::from_matrix(1, vec![ONE; 3]).is_err());
    }

    #[test]
    fn controlled_structure() {
        assert!(Gate::cx().is_controlled());
        assert!(Gate::ch().is_controlled());
        assert!(controlled_phase_gate(0.3).unwrap().is_controlled());
        let swap = Gate::from_matrix(
            2,
            vec![
                ONE, ZERO, ZERO, ZERO, ZERO, ZERO, ONE, ZERO, ZERO, ONE, ZERO, ZERO, ZERO, ZERO,
                ZERO, ONE,
            ],
        )
        .unwrap();
        assert!(!swap.is_controlled());
        assert!(!Gate::h().is_controlled());
    }

    #[test]
    fn gate_text_round_trip() {
        for text in ["H", "X", "cX", "cH", "cP(pi/4)", "cP(3pi/8)", "cP(-pi/4)", "P(pi)", "P(0.5)", "P(-pi)"] {
            let g = parse_gate(text).unwrap();
            assert_eq!(g.text().unwrap(), text);
        }
        let g = parse_gate("P(1.2345678901234567)").unwrap();
        let again = parse_gate(&g.text().unwrap()).unwrap();
        assert_eq!(g.label(), again.label());
        assert!(parse_gate("Q").is_err());
        assert!(parse_gate("P(pi/0)").is_err());
        assert!(parse_gate("P(inf)").is_err());
        assert!(parse_gate("P(1.0").is_err());
        assert!(parse_gate("cP(xpi)").is_err());
    }

    #[test]
    fn angle_forms() {
        assert_eq!(parse_angle("pi/4").unwrap(), PI / 4.0);
        assert_eq!(parse_angle("3pi/8").unwrap(), 3.0 * PI / 8.0);
        assert_eq!(parse_angle("-pi").unwrap(), -PI);
        assert_eq!(format_angle(0.25), "0.25");
        assert_eq!(format_angle(-PI / 1024.0), "-pi/1024");
    }
}
