use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i % 3]
    }

    /// Next axis in the cyclic order x → y → z → x.
    pub fn next(self) -> Axis {
        Axis::from_index(self.index() + 1)
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            _ => Err(Error::Config(format!("unknown axis {s:?}"))),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// One of the six faces of the box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub axis: Axis,
    pub positive: bool,
}

impl Face {
    pub const fn new(axis: Axis, positive: bool) -> Self {
        Self { axis, positive }
    }

    /// Position in the `(x, y, z; x̄, ȳ, z̄)` ordering.
    pub fn slot(self) -> usize {
        self.axis.index() + if self.positive { 0 } else { 3 }
    }

    pub fn from_slot(slot: usize) -> Face {
        Face::new(Axis::from_index(slot % 3), slot < 3)
    }

    pub fn all() -> impl Iterator<Item = Face> {
        (0..6).map(Face::from_slot)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.positive { "+" } else { "-" }, self.axis)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FaceType {
    P,
    E,
    M,
}

impl FaceType {
    pub fn letter(self) -> char {
        match self {
            FaceType::P => 'p',
            FaceType::E => 'e',
            FaceType::M => 'm',
        }
    }
}

/// Condensation flavor of an open surface: `M` keeps truncated X terms, `E` truncated Z terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    E,
    M,
}

impl Flavor {
    pub fn swap(self) -> Flavor {
        match self {
            Flavor::E => Flavor::M,
            Flavor::M => Flavor::E,
        }
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim_matches(|c| c == '<' || c == '>') {
            "e" | "E" => Ok(Flavor::E),
            "m" | "M" => Ok(Flavor::M),
            other => Err(Error::Config(format!("unknown flavor {other:?}"))),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::E => "e",
            Flavor::M => "m",
        })
    }
}

/// Face labels in the order `(x, y, z; x̄, ȳ, z̄)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundarySpec {
    pub faces: [FaceType; 6],
}

impl BoundarySpec {
    pub fn periodic() -> Self {
        Self {
            faces: [FaceType::P; 6],
        }
    }

    pub fn face(&self, face: Face) -> FaceType {
        self.faces[face.slot()]
    }

    pub fn is_periodic(&self, axis: Axis) -> bool {
        self.faces[axis.index()] == FaceType::P
    }

    /// True for the faces on which single charges gain mobility instead of condensing:
    /// positive M faces and negative E faces.
    pub fn is_abc(&self, face: Face) -> bool {
        matches!(
            (self.face(face), face.positive),
            (FaceType::M, true) | (FaceType::E, false)
        )
    }

    /// Cyclic relabeling x → y → z applied `shift` times.
    pub fn rotate(&self, shift: usize) -> Self {
        let mut faces = [FaceType::P; 6];
        for (slot, face) in faces.iter_mut().enumerate() {
            let src = Face::from_slot(slot);
            let from = Face::new(Axis::from_index(src.axis.index() + 3 - shift % 3), src.positive);
            *face = self.face(from);
        }
        Self { faces }
    }

    /// Swaps the positive and negative faces and exchanges `e` with `m`.
    pub fn dual(&self) -> Self {
        let swap = |t: FaceType| match t {
            FaceType::E => FaceType::M,
            FaceType::M => FaceType::E,
            FaceType::P => FaceType::P,
        };
        let f = self.faces;
        Self {
            faces: [
                swap(f[3]),
                swap(f[4]),
                swap(f[5]),
                swap(f[0]),
                swap(f[1]),
                swap(f[2]),
            ],
        }
    }

    /// Exchanges the x and y labels on both sides.
    pub fn swap_xy(&self) -> Self {
        let f = self.faces;
        Self {
            faces: [f[1], f[0], f[2], f[4], f[3], f[5]],
        }
    }
}

impl fmt::Display for BoundarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.faces.iter().map(|t| t.letter()).collect();
        write!(f, "{};{}", &s[..3], &s[3..])
    }
}

impl FromStr for BoundarySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BoundaryNotation(s.to_string());
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(inner);
        let (pos, neg) = inner.split_once(';').ok_or_else(bad)?;
        if pos.chars().count() != 3 || neg.chars().count() != 3 {
            return Err(bad());
        }
        let mut faces = [FaceType::P; 6];
        for (slot, c) in pos.chars().chain(neg.chars()).enumerate() {
            faces[slot] = match c.to_ascii_lowercase() {
                'p' => FaceType::P,
                'e' => FaceType::E,
                'm' => FaceType::M,
                _ => return Err(bad()),
            };
        }
        for a in 0..3 {
            if (faces[a] == FaceType::P) != (faces[a + 3] == FaceType::P) {
                return Err(bad());
            }
        }
        Ok(Self { faces })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notation_round_trips() {
        for s in ["mem;mee", "ppp;ppp", "pem;pme", "eee;mmm"] {
            let b: BoundarySpec = s.parse().unwrap();
            assert_eq!(b.to_string(), s);
        }
        let b: BoundarySpec = "(mee;eme)".parse().unwrap();
        assert_eq!(b.to_string(), "mee;eme");
    }

    #[test]
    fn rejects_bad_notation() {
        for s in ["mex;mee", "mem", "mem;me", "pem;mee", ""] {
            assert!(matches!(
                s.parse::<BoundarySpec>(),
                Err(Error::BoundaryNotation(_))
            ));
        }
    }

    #[test]
    fn symmetry_relabelings() {
        let t: BoundarySpec = "mep;emp".parse().unwrap();
        assert_eq!(t.rotate(1).to_string(), "pme;pem");
        assert_eq!(t.rotate(3), t);
        assert_eq!(t.swap_xy().to_string(), "emp;mep");
        assert_eq!(t.dual().to_string(), "mep;emp");
        let tennis: BoundarySpec = "mem;mee".parse().unwrap();
        assert_eq!(tennis.dual().to_string(), "emm;eme");
    }

    #[test]
    fn abc_faces() {
        let b: BoundarySpec = "mem;mee".parse().unwrap();
        assert!(b.is_abc(Face::new(Axis::X, true)));
        assert!(!b.is_abc(Face::new(Axis::X, false)));
        assert!(!b.is_abc(Face::new(Axis::Y, true)));
        assert!(b.is_abc(Face::new(Axis::Y, false)));
    }
}
