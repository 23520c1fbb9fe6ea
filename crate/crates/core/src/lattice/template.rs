use crate::pauli::Pauli;

/// Two-qubit entry at a cube corner: `(slot 1, slot 2)`.
pub type SiteOp = (Pauli, Pauli);

/// Corner entries of the two cube generators, indexed by `δx + 2δy + 4δz`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilizerTemplate {
    pub cx: [SiteOp; 8],
    pub cz: [SiteOp; 8],
}

const I: Pauli = Pauli::I;
const X: Pauli = Pauli::X;
const Z: Pauli = Pauli::Z;

impl StabilizerTemplate {
    /// The cubic code cube generators.
    pub const fn cubic() -> Self {
        Self {
            cx: [
                (X, X), // 000
                (I, X), // 100
                (I, X), // 010
                (X, I), // 110
                (I, X), // 001
                (X, I), // 101
                (X, I), // 011
                (I, I), // 111
            ],
            cz: [
                (I, I), // 000
                (I, Z), // 100
                (I, Z), // 010
                (Z, I), // 110
                (I, Z), // 001
                (Z, I), // 101
                (Z, I), // 011
                (Z, Z), // 111
            ],
        }
    }

    pub fn entry(&self, z_type: bool, corner: u8) -> SiteOp {
        if z_type {
            self.cz[corner as usize]
        } else {
            self.cx[corner as usize]
        }
    }

    pub fn x_weight(&self) -> usize {
        weight(&self.cx)
    }

    pub fn z_weight(&self) -> usize {
        weight(&self.cz)
    }
}

impl Default for StabilizerTemplate {
    fn default() -> Self {
        Self::cubic()
    }
}

fn weight(ops: &[SiteOp; 8]) -> usize {
    ops.iter()
        .map(|(a, b)| (*a != I) as usize + (*b != I) as usize)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_weights() {
        let t = StabilizerTemplate::cubic();
        assert_eq!(t.x_weight(), 8);
        assert_eq!(t.z_weight(), 8);
    }
}
