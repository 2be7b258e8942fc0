//! Validation reports listing every violated axiom instance.

use std::fmt;

use crate::ext::ExtValue;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `d(x, x) ≠ 0`.
    Diagonal { point: usize, value: ExtValue },
    /// `d(x, z) > d(x, y) + d(y, z)`.
    Triangle {
        x: usize,
        y: usize,
        z: usize,
        direct: ExtValue,
        via: ExtValue,
    },
    /// `γ(x, y) > d(x, y)`.
    AboveBase {
        x: usize,
        y: usize,
        value: ExtValue,
        bound: ExtValue,
    },
    /// `d'(f x, f y) > d(x, y)`.
    Expanding {
        x: usize,
        y: usize,
        source: ExtValue,
        target: ExtValue,
    },
}

/// A list of violations together with the point labels they index into.
/// An empty report means the object is valid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub labels: Vec<String>,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(labels: Vec<String>) -> Self {
        Report {
            labels,
            violations: Vec::new(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    pub fn describe(&self, v: &Violation) -> String {
        let l = |i: usize| self.labels.get(i).map(String::as_str).unwrap_or("?");
        match v {
            Violation::Diagonal { point, value } => {
                format!("diagonal: d({0},{0}) = {1} != 0", l(*point), value)
            }
            Violation::Triangle {
                x,
                y,
                z,
                direct,
                via,
            } => format!(
                "triangle: d({},{}) = {} > {} = d({},{}) + d({},{})",
                l(*x),
                l(*z),
                direct,
                via,
                l(*x),
                l(*y),
                l(*y),
                l(*z)
            ),
            Violation::AboveBase { x, y, value, bound } => format!(
                "above base: gamma({},{}) = {} > {} = d({},{})",
                l(*x),
                l(*y),
                value,
                bound,
                l(*x),
                l(*y)
            ),
            Violation::Expanding {
                x,
                y,
                source,
                target,
            } => format!(
                "expanding: d'(f {},f {}) = {} > {} = d({},{})",
                l(*x),
                l(*y),
                target,
                source,
                l(*x),
                l(*y)
            ),
        }
    }

    pub fn lines(&self) -> Vec<String> {
        self.violations.iter().map(|v| self.describe(v)).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
