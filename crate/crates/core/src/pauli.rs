//! Phaseless Pauli words with the symplectic layout `[x | z]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Single-qubit Pauli letter, phase dropped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliWord {
    x: BitVec,
    z: BitVec,
}

impl PauliWord {
    pub fn identity(n_qubits: usize) -> Self {
        Self {
            x: BitVec::zeros(n_qubits),
            z: BitVec::zeros(n_qubits),
        }
    }

    pub fn from_parts(x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self { x, z })
    }

    pub fn pure_x(x: BitVec) -> Self {
        let n = x.len();
        Self {
            x,
            z: BitVec::zeros(n),
        }
    }

    pub fn pure_z(z: BitVec) -> Self {
        let n = z.len();
        Self {
            x: BitVec::zeros(n),
            z,
        }
    }

    /// A word acting with `p` on a single qubit.
    pub fn single(n_qubits: usize, qubit: usize, p: Pauli) -> Result<Self> {
        let mut w = Self::identity(n_qubits);
        w.set(qubit, p)?;
        Ok(w)
    }

    pub fn n_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) -> Result<()> {
        self.check_qubit(q)?;
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
        Ok(())
    }

    /// Multiplies a single-qubit factor into the word.
    pub fn apply(&mut self, q: usize, p: Pauli) -> Result<()> {
        self.check_qubit(q)?;
        let (x, z) = p.bits();
        if x {
            self.x.flip(q);
        }
        if z {
            self.z.flip(q);
        }
        Ok(())
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits() {
            return Err(Error::QubitOutOfRange {
                index: q,
                n_qubits: self.n_qubits(),
            });
        }
        Ok(())
    }

    fn check_size(&self, other: &PauliWord) -> Result<()> {
        if self.n_qubits() != other.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                found: other.n_qubits(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &PauliWord) -> Result<PauliWord> {
        let mut out = self.clone();
        out.mul_assign(other)?;
        Ok(out)
    }

    pub fn mul_assign(&mut self, other: &PauliWord) -> Result<()> {
        self.check_size(other)?;
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
        Ok(())
    }

    pub fn commutes(&self, other: &PauliWord) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.x.dot(&other.z) == self.z.dot(&other.x))
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_pure_x(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_pure_z(&self) -> bool {
        self.x.is_zero()
    }

    fn support_bits(&self) -> BitVec {
        let mut s = self.x.clone();
        s.or_assign(&self.z);
        s
    }

    pub fn weight(&self) -> usize {
        self.support_bits().count_ones()
    }

    pub fn support(&self) -> Vec<usize> {
        self.support_bits().iter_ones().collect()
    }

    pub fn restrict(&self, region: &[usize]) -> Result<PauliWord> {
        let n = self.n_qubits();
        if let Some(&q) = region.iter().find(|&&q| q >= n) {
            return Err(Error::QubitOutOfRange {
                index: q,
                n_qubits: n,
            });
        }
        let mask = BitVec::from_indices(n, region.iter().copied());
        Ok(self.restrict_mask(&mask))
    }

    pub fn restrict_mask(&self, mask: &BitVec) -> PauliWord {
        let mut out = self.clone();
        out.x.and_assign(mask);
        out.z.and_assign(mask);
        out
    }

    /// The `2n`-bit symplectic vector `[x | z]`.
    pub fn to_symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn from_symplectic(v: &BitVec) -> Result<PauliWord> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: v.len() + 1,
                found: v.len(),
            });
        }
        let n = v.len() / 2;
        Ok(PauliWord {
            x: v.slice(0, n),
            z: v.slice(n, 2 * n),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Pauli)> + '_ {
        self.support_bits()
            .iter_ones()
            .collect::<Vec<_>>()
            .into_iter()
            .map(|q| (q, self.get(q)))
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliWord[")?;
        for (i, (q, p)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", p.letter(), q)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, ops: &[(usize, Pauli)]) -> PauliWord {
        let mut out = PauliWord::identity(n);
        for &(q, p) in ops {
            out.apply(q, p).unwrap();
        }
        out
    }

    #[test]
    fn multiply_cases() {
        let a = w(4, &[(0, Pauli::X), (2, Pauli::Y)]);
        assert!(a.multiply(&a).unwrap().is_identity());
        assert_eq!(a.multiply(&PauliWord::identity(4)).unwrap(), a);
        let xi = w(2, &[(0, Pauli::X)]);
        let ix = w(2, &[(1, Pauli::X)]);
        assert_eq!(xi.multiply(&ix).unwrap(), w(2, &[(0, Pauli::X), (1, Pauli::X)]));
        assert!(a.multiply(&PauliWord::identity(3)).is_err());
    }

    #[test]
    fn commutation_cases() {
        let x = w(1, &[(0, Pauli::X)]);
        let z = w(1, &[(0, Pauli::Z)]);
        assert!(!x.commutes(&z).unwrap());
        let a = w(3, &[(0, Pauli::X), (1, Pauli::X)]);
        let b = w(3, &[(1, Pauli::X), (2, Pauli::X)]);
        assert!(a.commutes(&b).unwrap());
        let c = w(3, &[(0, Pauli::Z), (1, Pauli::Z)]);
        assert!(a.commutes(&c).unwrap());
    }

    #[test]
    fn weight_support_restrict() {
        assert_eq!(PauliWord::identity(5).weight(), 0);
        let a = w(5, &[(1, Pauli::X), (3, Pauli::Z), (4, Pauli::Y)]);
        assert_eq!(a.weight(), 3);
        assert_eq!(a.support(), vec![1, 3, 4]);
        assert_eq!(a.restrict(&a.support()).unwrap(), a);
        assert_eq!(a.restrict(&[3]).unwrap(), w(5, &[(3, Pauli::Z)]));
        assert!(a.restrict(&[5]).is_err());
    }

    #[test]
    fn symplectic_round_trip() {
        let a = w(3, &[(0, Pauli::X), (2, Pauli::Z), (1, Pauli::Y)]);
        let v = a.to_symplectic();
        assert_eq!(v.to_string(), "110011");
        assert_eq!(PauliWord::from_symplectic(&v).unwrap(), a);
    }
}
