//! Classical instance strings.
//!
//! ```text
//! instance  := uint substring*
//! substring := "(" uint ")" "[" uint "]"              type 1
//!            | "(" uint ")" "[" uint "," uint "]"     type 2
//!            | "(*" sint ")" "[" uint "]"             type 3
//!            | "(c*" sint ")" "[" uint "," uint "]"   type 4
//! uint      := "0" | [1-9][0-9]*
//! sint      := "-"? uint
//! ```
//!
//! No whitespace is allowed anywhere. Indices are range-checked against
//! the header qubit count; alias indices are only checked against a
//! dictionary when de-aliasing.

use std::fmt;

use crate::error::{Error, Result};

/// One `( ... )[ ... ]` group of an instance string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Substring {
    /// `(k)[j]`
    Alias { k: usize, j: usize },
    /// `(k)[i,j]`
    Alias2 { k: usize, i: usize, j: usize },
    /// `(*r)[j]`, phase `sign(r)·π/2^|r|`
    W { r: i64, j: usize },
    /// `(c*r)[i,j]`
    CW { r: i64, i: usize, j: usize },
}

impl Substring {
    /// Substring type number, 1 to 4.
    pub fn kind(&self) -> u8 {
        match self {
            Substring::Alias { .. } => 1,
            Substring::Alias2 { .. } => 2,
            Substring::W { .. } => 3,
            Substring::CW { .. } => 4,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Substring::Alias { j, .. } | Substring::W { j, .. } => vec![j],
            Substring::Alias2 { i, j, .. } | Substring::CW { i, j, .. } => vec![i, j],
        }
    }

    fn check(&self, n: usize) -> std::result::Result<(), String> {
        if let Some(q) = self.qubits().into_iter().find(|&q| q >= n) {
            return Err(format!("qubit index {q} not in [0, {}]", n - 1));
        }
        match *self {
            Substring::Alias { k, .. } | Substring::Alias2 { k, .. } if k == 0 => {
                return Err("alias index must be at least 1".into())
            }
            Substring::W { r, .. } | Substring::CW { r, .. }
                if r == 0 || r.unsigned_abs() > (n as u64).saturating_sub(1) =>
            {
                return Err(format!("W exponent {r} outside ±[1, {}]", n.saturating_sub(1)))
            }
            _ => {}
        }
        match *self {
            Substring::Alias2 { i, j, .. } | Substring::CW { i, j, .. } if i == j => {
                Err(format!("both arguments name qubit {i}"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Substring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Substring::Alias { k, j } => write!(f, "({k})[{j}]"),
            Substring::Alias2 { k, i, j } => write!(f, "({k})[{i},{j}]"),
            Substring::W { r, j } => write!(f, "(*{r})[{j}]"),
            Substring::CW { r, i, j } => write!(f, "(c*{r})[{i},{j}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AqceInstance {
    n: usize,
    substrings: Vec<Substring>,
    source: String,
}

impl AqceInstance {
    pub fn new(n: usize, substrings: Vec<Substring>) -> Result<AqceInstance> {
        if n == 0 {
            return Err(Error::Range {
                offset: 0,
                message: "qubit count must be at least 1".into(),
            });
        }
        let mut source = n.to_string();
        for s in &substrings {
            let offset = source.len();
            s.check(n).map_err(|message| Error::Range { offset, message })?;
            source.push_str(&s.to_string());
        }
        Ok(AqceInstance {
            n,
            substrings,
            source,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn substrings(&self) -> &[Substring] {
        &self.substrings
    }

    /// The exact instance text.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Largest alias index referenced, 0 when there are none.
    pub fn max_alias(&self) -> usize {
        self.substrings
            .iter()
            .filter_map(|s| match *s {
                Substring::Alias { k, .. } | Substring::Alias2 { k, .. } => Some(k),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for AqceInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl std::str::FromStr for AqceInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<AqceInstance> {
        parse_instance(s)
    }
}

pub fn parse_instance(text: &str) -> Result<AqceInstance> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    if !p.peek().is_some_and(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedHeader);
    }
    let n = p.uint()?;
    if n == 0 {
        return Err(Error::Range {
            offset: 0,
            message: "qubit count must be at least 1".into(),
        });
    }
    let mut substrings = Vec::new();
    while p.peek().is_some() {
        let start = p.pos;
        let s = p.substring()?;
        s.check(n)
            .map_err(|message| Error::Range { offset: start, message })?;
        substrings.push(s);
    }
    let inst = AqceInstance {
        n,
        substrings,
        source: text.to_string(),
    };
    debug_assert_eq!(AqceInstance::new(n, inst.substrings.clone()).unwrap().source, text);
    Ok(inst)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(b) if b.is_ascii_graphic() => format!("`{}`", b as char),
            Some(b) if b.is_ascii_whitespace() => "whitespace".to_string(),
            Some(b) => format!("byte 0x{b:02x}"),
        }
    }

    fn expect(&mut self, want: u8) -> Result<()> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{}`, found {}", want as char, self.describe())))
        }
    }

    fn uint(&mut self) -> Result<usize> {
        let start = self.pos;
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    self.pos = start;
                    return Err(self.syntax("leading zeros are not allowed"));
                }
                return Ok(0);
            }
            Some(b) if b.is_ascii_digit() => {}
            _ => return Err(self.syntax(format!("expected a decimal integer, found {}", self.describe()))),
        }
        let mut value: usize = 0;
        while let Some(b) = self.peek().filter(u8::is_ascii_digit) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as usize))
                .ok_or_else(|| Error::Range {
                    offset: start,
                    message: "integer overflow".into(),
                })?;
            self.pos += 1;
        }
        Ok(value)
    }

    fn sint(&mut self) -> Result<i64> {
        let start = self.pos;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let mag = self.uint()?;
        let mag = i64::try_from(mag).map_err(|_| Error::Range {
            offset: start,
            message: "integer overflow".into(),
        })?;
        Ok(if negative { -mag } else { mag })
    }

    fn args(&mut self) -> Result<Vec<usize>> {
        self.expect(b'[')?;
        let mut args = vec![self.uint()?];
        if self.peek() == Some(b',') {
            self.pos += 1;
            args.push(self.uint()?);
        }
        if self.peek() != Some(b']') {
            let expected = if args.len() == 1 { "`,` or `]`" } else { "`]`" };
            return Err(self.syntax(format!("expected {expected}, found {}", self.describe())));
        }
        self.pos += 1;
        Ok(args)
    }

    fn substring(&mut self) -> Result<Substring> {
        self.expect(b'(')?;
        enum Head {
            Alias(usize),
            W(i64),
            CW(i64),
        }
        let head = match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                Head::W(self.sint()?)
            }
            Some(b'c') => {
                self.pos += 1;
                self.expect(b'*')?;
                Head::CW(self.sint()?)
            }
            _ => Head::Alias(self.uint()?),
        };
        self.expect(b')')?;
        let args_at = self.pos;
        let args = self.args()?;
        let wrong_arity = |expected: &str| Error::Syntax {
            offset: args_at,
            message: format!("this substring form takes {expected}"),
        };
        Ok(match (head, args.as_slice()) {
            (Head::Alias(k), &[j]) => Substring::Alias { k, j },
            (Head::Alias(k), &[i, j]) => Substring::Alias2 { k, i, j },
            (Head::W(r), &[j]) => Substring::W { r, j },
            (Head::W(_), _) => return Err(wrong_arity("one qubit argument")),
            (Head::CW(r), &[i, j]) => Substring::CW { r, i, j },
            (Head::CW(_), _) => return Err(wrong_arity("two qubit arguments")),
            _ => unreachable!("args has one or two entries"),
        })
    }
}
