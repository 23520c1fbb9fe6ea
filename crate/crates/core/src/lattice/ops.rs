use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::boundary::{Axis, BoundarySpec, Face, Flavor};
use super::defect::global_to_local;
use super::geometry::{build_geometry, FacePattern, LatticeGeometry};
use super::Site;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChargeColor {
    A,
    B,
    C,
}

impl fmt::Display for ChargeColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChargeColor::A => "A",
            ChargeColor::B => "B",
            ChargeColor::C => "C",
        })
    }
}

impl ChargeColor {
    pub fn from_uv(u: i64, v: i64) -> Self {
        match (u + v).rem_euclid(3) {
            0 => ChargeColor::A,
            1 => ChargeColor::B,
            _ => ChargeColor::C,
        }
    }
}

/// In-layer coordinates `(u, v)` of a point on `face`.
///
/// With `(a, b, c)` the cyclic frame whose first axis is the face normal, `u = b` and
/// `v = −c`; the mobile diagonals of an ABC face run along `b = c`, so `u + v` labels them.
pub fn face_uv(face: Face, p: [i64; 3]) -> (i64, i64) {
    let l = global_to_local(face.axis, p);
    (l[1], -l[2])
}

/// Color of an ABC charge with in-layer coordinates `uv` on `face`.
pub fn charge_color(geom: &LatticeGeometry, face: Face, uv: (i64, i64)) -> Result<ChargeColor> {
    if !geom.boundary().is_abc(face) {
        return Err(Error::CondensingFace(face.to_string()));
    }
    Ok(ChargeColor::from_uv(uv.0, uv.1))
}

/// Moves every single-qubit factor of `op` by `delta` through the site chart.
pub fn translate_operator(geom: &LatticeGeometry, op: &PauliWord, delta: [i64; 3]) -> Result<PauliWord> {
    if op.n_qubits() != geom.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: geom.n_qubits(),
            found: op.n_qubits(),
        });
    }
    let mut out = PauliWord::identity(op.n_qubits());
    let mut clipped: Vec<Site> = Vec::new();
    for (q, p) in op.iter() {
        let s = geom.site(q / 2);
        let target = [s[0] + delta[0], s[1] + delta[1], s[2] + delta[2]];
        match geom.site_index(target) {
            Some(t) => out.apply(2 * t + q % 2, p)?,
            None => clipped.push(target),
        }
    }
    if clipped.is_empty() {
        Ok(out)
    } else {
        clipped.sort_unstable();
        clipped.dedup();
        Err(Error::ClippedSupport(clipped))
    }
}

/// Text form: space-separated `(x,y,z,slot,P)` entries in qubit order.
pub fn format_word(geom: &LatticeGeometry, op: &PauliWord) -> String {
    op.iter()
        .map(|(q, p)| {
            let s = geom.site(q / 2);
            format!("({},{},{},{},{})", s[0], s[1], s[2], q % 2 + 1, p.letter())
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses the text form produced by [`format_word`]; repeated entries multiply.
pub fn parse_word(geom: &LatticeGeometry, text: &str) -> Result<PauliWord> {
    let mut out = PauliWord::identity(geom.n_qubits());
    let bad = |t: &str| Error::Config(format!("malformed operator entry {t:?}"));
    for entry in text.split(')').map(str::trim).filter(|t| !t.is_empty()) {
        let body = entry.strip_prefix('(').ok_or_else(|| bad(entry))?;
        let fields: Vec<&str> = body.split(',').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(bad(entry));
        }
        let coord = |i: usize| fields[i].parse::<i64>().map_err(|_| bad(entry));
        let p = [coord(0)?, coord(1)?, coord(2)?];
        let slot: usize = fields[3].parse().map_err(|_| bad(entry))?;
        let pauli = match fields[4] {
            "X" => Pauli::X,
            "Y" => Pauli::Y,
            "Z" => Pauli::Z,
            "I" => Pauli::I,
            _ => return Err(bad(entry)),
        };
        if !(1..=2).contains(&slot) {
            return Err(bad(entry));
        }
        let site = geom
            .site_index(p)
            .ok_or_else(|| Error::ClippedSupport(vec![p]))?;
        out.apply(2 * site + slot - 1, pauli)?;
    }
    Ok(out)
}

/// Geometry of the triangular configuration on an `L × L × L` cube.
///
/// Every face is open and split along the diagonal `b + c = const` of its cyclic frame:
/// cells below the line carry X-type (m) truncations, cells above carry Z-type (e).
/// The split sits at `L − 2` on positive faces and `L − 1` on negative faces.
pub fn triangular_preset(l: usize) -> Result<Arc<LatticeGeometry>> {
    if l < 2 {
        return Err(Error::InvalidLattice(format!("triangular preset needs L >= 2, got {l}")));
    }
    let boundary: BoundarySpec = "mmm;eee".parse()?;
    let mut geom = build_geometry([l, l, l], &boundary, &[])?;
    let split = |threshold| FacePattern::Diagonal {
        threshold,
        anti: false,
        below: Flavor::M,
        above: Flavor::E,
    };
    let l = l as i64;
    for axis in Axis::ALL {
        geom = geom
            .with_face_pattern(Face::new(axis, true), split(l - 2))
            .with_face_pattern(Face::new(axis, false), split(l - 1));
    }
    Ok(Arc::new(geom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn periodic(l: usize) -> LatticeGeometry {
        build_geometry([l, l, l], &BoundarySpec::periodic(), &[]).unwrap()
    }

    #[test]
    fn color_anchors() {
        assert_eq!(ChargeColor::from_uv(0, 0), ChargeColor::A);
        assert_eq!(ChargeColor::from_uv(1, 2), ChargeColor::A);
        assert_eq!(ChargeColor::from_uv(1, 0), ChargeColor::B);
        let g = build_geometry([4, 4, 4], &"mem;mee".parse().unwrap(), &[]).unwrap();
        assert!(charge_color(&g, Face::new(Axis::X, true), (0, 0)).is_ok());
        assert!(matches!(
            charge_color(&g, Face::new(Axis::X, false), (0, 0)),
            Err(Error::CondensingFace(_))
        ));
    }

    #[test]
    fn translation_cases() {
        let g = periodic(3);
        let mut w = PauliWord::identity(g.n_qubits());
        w.apply(g.qubit(g.site_index([0, 1, 2]).unwrap(), 2), Pauli::X).unwrap();
        assert_eq!(translate_operator(&g, &w, [0, 0, 0]).unwrap(), w);
        assert_eq!(translate_operator(&g, &w, [3, 0, 0]).unwrap(), w);
        let moved = translate_operator(&g, &w, [1, 0, 0]).unwrap();
        assert_eq!(format_word(&g, &moved), "(1,1,2,2,X)");

        let open = build_geometry([3, 3, 3], &"mmm;eee".parse().unwrap(), &[]).unwrap();
        let mut w = PauliWord::identity(open.n_qubits());
        w.apply(0, Pauli::Z).unwrap();
        assert!(matches!(
            translate_operator(&open, &w, [-1, 0, 0]),
            Err(Error::ClippedSupport(s)) if s == vec![[-1, 0, 0]]
        ));
    }

    #[test]
    fn text_form_round_trips() {
        let g = periodic(3);
        let text = "(0,0,0,1,X) (2,1,0,2,Z) (1,1,1,1,Y)";
        let w = parse_word(&g, text).unwrap();
        assert_eq!(w.weight(), 3);
        assert_eq!(parse_word(&g, &format_word(&g, &w)).unwrap(), w);
        assert!(parse_word(&g, "(0,0,0,3,X)").is_err());
    }
}
