//! Stabilizer code families and check-matrix files.
//!
//! Lattice conventions (frozen; golden tests pin the emitted matrices):
//!
//! * **toric / xzzx**: `d × d` torus, qubits on edges. Horizontal edge
//!   `(r, c)` joins vertices `(r, c)`–`(r, c+1)` and has index `r·d + c`;
//!   vertical edge `(r, c)` joins `(r, c)`–`(r+1, c)` and has index
//!   `d² + r·d + c`. Rows are the `d²` vertex (X) checks in row-major vertex
//!   order followed by the `d²` plaquette (Z) checks. A nonzero `twist`
//!   shifts the column by `twist` whenever a path wraps from the last row to
//!   the first. XZZX applies a Hadamard to every vertical edge.
//! * **surface**: unrotated planar layout on a `(2d−1) × (2d−1)` grid. Sites
//!   with `i + j` even are qubits (row-major); sites with `i` odd, `j` even
//!   are X checks, sites with `i` even, `j` odd are Z checks. X rows first.
//! * **color666**: triangular patch of the triangular lattice with side
//!   `L = 3(d−1)/2`, sites `(a, b)` with `a, b ≥ 0`, `a + b ≤ L`, coloured
//!   `(a − b + 1) mod 3`. Colour-0 sites are face centres (kept when they
//!   touch at least four qubits), all others are qubits. Each face carries an
//!   X row and a Z row on the same support; X rows first.

mod color;
mod logicals;
mod surface;
mod toric;

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::pauli_algebra::format::{parse_check_matrix, write_check_matrix, FormatError};
use crate::pauli_algebra::{BitVec, CheckMatrix, Pauli, PauliVector};

pub use color::color_code_666;
pub use logicals::compute_logicals;
pub use surface::surface_code;
pub use toric::{toric_code, xzzx_code, xzzx_hadamard_qubits};

/// An `[[n, k]]` stabilizer code.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    pub name: String,
    pub n: usize,
    pub k: usize,
    /// Design distance, when known.
    pub d: Option<usize>,
    pub check: CheckMatrix,
    /// `2k` representatives; `logicals[i]` and `logicals[k + i]` anticommute,
    /// every other pair commutes.
    pub logicals: Option<Vec<PauliVector>>,
}

impl StabilizerCode {
    /// Builds and validates a code, deriving logical representatives.
    pub fn new(
        name: impl Into<String>,
        k: usize,
        d: Option<usize>,
        check: CheckMatrix,
    ) -> Result<Self, CodeError> {
        let n = check.n();
        let mut code = StabilizerCode {
            name: name.into(),
            n,
            k,
            d,
            check,
            logicals: None,
        };
        validate_code(&code).map_err(CodeError::Validation)?;
        let logicals = compute_logicals(&code.check);
        debug_assert_eq!(logicals.len(), 2 * k);
        code.logicals = Some(logicals);
        Ok(code)
    }

    pub fn m(&self) -> usize {
        self.check.m()
    }

    /// Default BP iteration cap: 60 for built-in lattices, 100 otherwise.
    pub fn default_max_iterations(&self) -> usize {
        if self.d.is_some() && !self.name.starts_with("file:") {
            60
        } else {
            100
        }
    }

    pub fn to_text(&self) -> String {
        let comment = match self.d {
            Some(d) => format!("{} [[{},{},{}]]", self.name, self.n, self.k, d),
            None => format!("{} [[{},{}]]", self.name, self.n, self.k),
        };
        write_check_matrix(&self.check, self.k, Some(&comment))
    }

    /// `true` iff `residual` (assumed to commute with every check) is a
    /// nontrivial logical operator.
    pub fn is_logical_error(&self, residual: &PauliVector) -> bool {
        match &self.logicals {
            Some(ls) => ls.iter().any(|l| l.anticommutes(residual)),
            None => !crate::pauli_algebra::in_rowspace(&self.check, residual)
                .expect("residual length matches code"),
        }
    }
}

/// One violated code condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// 0-based row indices.
    Anticommuting { row_a: usize, row_b: usize },
    Rank { expected: usize, found: usize },
    RankExceedsQubits { n: usize, k: usize },
    LogicalCount { expected: usize, found: usize },
    LogicalAnticommutesWithCheck { logical: usize, row: usize },
    LogicalInRowspace { logical: usize },
    LogicalsDependent,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Anticommuting { row_a, row_b } => {
                write!(f, "rows {} and {} anticommute", row_a + 1, row_b + 1)
            }
            Violation::Rank { expected, found } => {
                write!(f, "check rank {found} != n-k = {expected}")
            }
            Violation::RankExceedsQubits { n, k } => write!(f, "k = {k} exceeds n = {n}"),
            Violation::LogicalCount { expected, found } => {
                write!(f, "expected {expected} logical operators, found {found}")
            }
            Violation::LogicalAnticommutesWithCheck { logical, row } => {
                write!(f, "logical {} anticommutes with row {}", logical + 1, row + 1)
            }
            Violation::LogicalInRowspace { logical } => {
                write!(f, "logical {} lies in the stabilizer rowspace", logical + 1)
            }
            Violation::LogicalsDependent => {
                write!(f, "logical operators are dependent modulo the stabilizers")
            }
        }
    }
}

/// Every violated condition found by [`validate_code`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic(pub Vec<Violation>);

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("{family}: invalid distance d = {d} ({requirement})")]
    InvalidDistance {
        family: &'static str,
        d: usize,
        requirement: &'static str,
    },
    #[error("xzzx: invalid twist {twist} for d = {d} (must be < d)")]
    InvalidTwist { twist: usize, d: usize },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(#[from] FormatError),
    #[error("validation failed: {0}")]
    Validation(Diagnostic),
}

/// Checks commutation, rank `n − k`, and (if present) the logical operators.
pub fn validate_code(code: &StabilizerCode) -> Result<(), Diagnostic> {
    let mut violations = Vec::new();
    let check = &code.check;
    for (a, b) in check.commutation_violations() {
        violations.push(Violation::Anticommuting { row_a: a, row_b: b });
    }
    if code.k > code.n {
        violations.push(Violation::RankExceedsQubits { n: code.n, k: code.k });
    } else {
        let rank = check.rank();
        if rank != code.n - code.k {
            violations.push(Violation::Rank {
                expected: code.n - code.k,
                found: rank,
            });
        }
    }
    if let Some(ls) = &code.logicals {
        if ls.len() != 2 * code.k {
            violations.push(Violation::LogicalCount {
                expected: 2 * code.k,
                found: ls.len(),
            });
        }
        let stabilizers = check.rowspace_basis();
        let mut basis = stabilizers.clone();
        for (li, l) in ls.iter().enumerate() {
            for (ri, row) in check.rows().iter().enumerate() {
                if l.anticommutes(row) {
                    violations.push(Violation::LogicalAnticommutesWithCheck {
                        logical: li,
                        row: ri,
                    });
                }
            }
            if stabilizers.contains(&l.to_symplectic()) {
                violations.push(Violation::LogicalInRowspace { logical: li });
            }
        }
        let independent = ls.iter().all(|l| basis.insert(l.to_symplectic()));
        if !independent {
            violations.push(Violation::LogicalsDependent);
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Diagnostic(violations))
    }
}

/// Reads a check-matrix file and validates it.
pub fn load_code_file(path: impl AsRef<Path>) -> Result<StabilizerCode, CodeError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CodeError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "code".into());
    parse_code(&format!("file:{label}"), &text)
}

pub fn parse_code(name: &str, text: &str) -> Result<StabilizerCode, CodeError> {
    let (_, k, check) = parse_check_matrix(text)?;
    StabilizerCode::new(name, k, None, check)
}

/// Built-in family selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Toric,
    Surface,
    Color666,
    Xzzx,
}

impl Family {
    pub fn build(self, d: usize) -> Result<StabilizerCode, CodeError> {
        match self {
            Family::Toric => toric_code(d),
            Family::Surface => surface_code(d),
            Family::Color666 => color_code_666(d),
            Family::Xzzx => xzzx_code(d, None),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Toric => "toric",
            Family::Surface => "surface",
            Family::Color666 => "color666",
            Family::Xzzx => "xzzx",
        }
    }

    /// Distances accepted by [`build`](Self::build) up to `max_d`.
    pub fn supported_distances(self, max_d: usize) -> Vec<usize> {
        match self {
            Family::Color666 => (3..=max_d).step_by(2).collect(),
            _ => (2..=max_d).collect(),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "toric" => Ok(Family::Toric),
            "surface" | "planar" => Ok(Family::Surface),
            "color666" | "color" => Ok(Family::Color666),
            "xzzx" => Ok(Family::Xzzx),
            other => Err(format!(
                "unknown family {other:?} (expected toric, surface, color666, xzzx)"
            )),
        }
    }
}

/// CSS check matrix from X-type and Z-type supports.
pub(crate) fn css_check(n: usize, x_checks: &[Vec<usize>], z_checks: &[Vec<usize>]) -> CheckMatrix {
    let rows = x_checks
        .iter()
        .map(|s| PauliVector::from_halves(BitVec::from_ones(n, s), BitVec::zeros(n)).unwrap())
        .chain(
            z_checks
                .iter()
                .map(|s| PauliVector::from_halves(BitVec::zeros(n), BitVec::from_ones(n, s)).unwrap()),
        )
        .collect();
    CheckMatrix::new(n, rows).expect("rows built with length n")
}

/// Brute-force minimum weight of a logical operator, searching weights up to
/// `max_weight`. Independent of [`compute_logicals`]: uses the rank-append
/// rowspace test only.
pub fn brute_force_distance(check: &CheckMatrix, max_weight: usize) -> Option<usize> {
    let n = check.n();
    let basis = check.rowspace_basis();
    let letters = [Pauli::X, Pauli::Y, Pauli::Z];
    for w in 1..=max_weight {
        let mut found = false;
        for_each_combination(n, w, &mut |support| {
            if found {
                return;
            }
            let mut digits = vec![0usize; w];
            loop {
                let mut p = PauliVector::identity(n);
                for (slot, &q) in support.iter().enumerate() {
                    p.set(q, letters[digits[slot]]);
                }
                if check.rows().iter().all(|r| !r.anticommutes(&p))
                    && !basis.contains(&p.to_symplectic())
                {
                    found = true;
                    return;
                }
                let mut i = 0;
                while i < w {
                    digits[i] += 1;
                    if digits[i] < 3 {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == w {
                    break;
                }
            }
        });
        if found {
            return Some(w);
        }
    }
    None
}

/// Calls `f` on every `w`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, w: usize, f: &mut dyn FnMut(&[usize])) {
    if w > n {
        return;
    }
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        f(&idx);
        let Some(i) = (0..w).rev().find(|&i| idx[i] != i + n - w) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..w {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
