//! Pauli operators in binary symplectic form, up to global phase.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::gf2::BitVec;
use super::PauliError;

/// A single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// The `(x, z)` bit pair: I→(0,0), X→(1,0), Z→(0,1), Y→(1,1).
    #[inline]
    pub fn to_bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    /// `true` iff the two letters anticommute.
    #[inline]
    pub fn anticommutes(self, other: Pauli) -> bool {
        let (ax, az) = self.to_bits();
        let (bx, bz) = other.to_bits();
        (ax & bz) ^ (az & bx)
    }

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Pauli, PauliError> {
        match c.to_ascii_uppercase() {
            'I' | '_' | '.' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(PauliError::BadLetter(other)),
        }
    }
}

/// An `n`-qubit Pauli operator as the `2n`-bit vector `[x | z]`.
///
/// The two halves are stored separately so symplectic products and Pauli
/// weights stay word-parallel.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliVector {
    x: BitVec,
    z: BitVec,
}

impl PauliVector {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_halves(x: BitVec, z: BitVec) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self { x, z })
    }

    /// Splits a `2n`-bit vector into its halves.
    pub fn from_symplectic(bits: &BitVec) -> Result<Self, PauliError> {
        if !bits.len().is_multiple_of(2) {
            return Err(PauliError::OddLength(bits.len()));
        }
        let n = bits.len() / 2;
        Ok(Self {
            x: bits.slice(0, n),
            z: bits.slice(n, n),
        })
    }

    pub fn from_letters(letters: &[Pauli]) -> Self {
        let mut p = Self::identity(letters.len());
        for (i, &l) in letters.iter().enumerate() {
            p.set(i, l);
        }
        p
    }

    /// Sparse constructor, e.g. `[(3, Pauli::X)]`.
    pub fn from_sparse(n: usize, entries: &[(usize, Pauli)]) -> Self {
        let mut p = Self::identity(n);
        for &(i, l) in entries {
            p.set(i, l);
        }
        p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.x.get(qubit), self.z.get(qubit))
    }

    #[inline]
    pub fn set(&mut self, qubit: usize, letter: Pauli) {
        let (x, z) = letter.to_bits();
        self.x.set(qubit, x);
        self.z.set(qubit, z);
    }

    /// Bit `j` of the `2n`-bit form; `j < n` is the X half.
    #[inline]
    pub fn bit(&self, j: usize) -> bool {
        let n = self.n();
        if j < n {
            self.x.get(j)
        } else {
            self.z.get(j - n)
        }
    }

    #[inline]
    pub fn flip_bit(&mut self, j: usize) {
        let n = self.n();
        if j < n {
            self.x.flip(j)
        } else {
            self.z.flip(j - n)
        }
    }

    /// Concatenated `[x | z]`.
    pub fn to_symplectic(&self) -> BitVec {
        BitVec::from_bools(self.x.iter().chain(self.z.iter()))
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.n()).map(|i| self.get(i)).collect()
    }

    /// Number of non-identity positions; a Y counts once.
    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Symplectic inner product `x·z' + z·x'`; `true` iff the operators anticommute.
    #[inline]
    pub fn anticommutes(&self, other: &PauliVector) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    /// Product up to phase.
    pub fn mul_assign(&mut self, other: &PauliVector) {
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    pub fn mul(&self, other: &PauliVector) -> PauliVector {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    /// Qubit-wise Hadamard on the listed qubits (swaps the two halves there).
    pub fn hadamard_on(&mut self, qubits: impl IntoIterator<Item = usize>) {
        for q in qubits {
            let (x, z) = (self.x.get(q), self.z.get(q));
            self.x.set(q, z);
            self.z.set(q, x);
        }
    }
}

/// `τ`: letters to the binary symplectic vector.
pub fn tau_map(letters: &[Pauli]) -> PauliVector {
    PauliVector::from_letters(letters)
}

/// Inverse of [`tau_map`].
pub fn tau_unmap(p: &PauliVector) -> Vec<Pauli> {
    p.letters()
}

/// Pauli weight of `p`.
pub fn pauli_weight(p: &PauliVector) -> usize {
    p.weight()
}

impl fmt::Display for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            write!(f, "{}", self.get(i).to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliVector({self})")
    }
}

impl FromStr for PauliVector {
    type Err = PauliError;

    /// Dense letter string such as `"XIZY"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .trim()
            .chars()
            .map(Pauli::from_char)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PauliVector::from_letters(&letters))
    }
}
