use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::boundary::{Axis, Flavor};
use super::Site;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Handedness {
    L,
    R,
}

impl Handedness {
    /// Signed Burgers shift along the line picked up on crossing the cut.
    pub fn sign(self) -> i64 {
        match self {
            Handedness::R => 1,
            Handedness::L => -1,
        }
    }
}

impl FromStr for Handedness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim_matches(|c| c == '<' || c == '>') {
            "L" | "l" => Ok(Handedness::L),
            "R" | "r" => Ok(Handedness::R),
            other => Err(Error::Config(format!("unknown handedness {other:?}"))),
        }
    }
}

impl fmt::Display for Handedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Handedness::L => "L",
            Handedness::R => "R",
        })
    }
}

/// Crystal defects with unit Burgers vector.
///
/// Line defects use cyclic local axes: for a line along `a`, `position` holds the
/// coordinates along `a+1` and `a+2` (for a line along x that is `(y, z)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefectSpec {
    /// Removes the box `origin .. origin + size` of sites.
    Vacancy {
        flavor: Flavor,
        origin: Site,
        size: [usize; 3],
    },
    /// Removes the strip of sites at `b = position.0`, `c ∈ [position.1, position.1 + height)`
    /// for every `a`, and glues `b−1` to `b+1` across it. `twist_flavors` are for the lower
    /// (`c = position.1`) and upper twist lines, in that order.
    EdgeDislocation {
        line_axis: Axis,
        position: [i64; 2],
        height: usize,
        twist_flavors: (Flavor, Flavor),
    },
    /// Line through the centre of the cell column at `position`; the cut runs toward `+b`
    /// across the `c` bond and shifts the far side by `±1` along the line.
    Screw {
        line_axis: Axis,
        position: [i64; 2],
        handedness: Handedness,
    },
}

impl DefectSpec {
    pub fn vacancy(flavor: Flavor, origin: Site, size: [usize; 3]) -> Self {
        DefectSpec::Vacancy {
            flavor,
            origin,
            size,
        }
    }

    pub fn edge(line_axis: Axis, position: [i64; 2], height: usize, twist_flavors: (Flavor, Flavor)) -> Self {
        DefectSpec::EdgeDislocation {
            line_axis,
            position,
            height,
            twist_flavors,
        }
    }

    pub fn screw(line_axis: Axis, position: [i64; 2], handedness: Handedness) -> Self {
        DefectSpec::Screw {
            line_axis,
            position,
            handedness,
        }
    }
}

/// Maps local cyclic coordinates `(a, b, c)` of a line along `axis` to global `(x, y, z)`.
pub(crate) fn local_to_global(axis: Axis, local: [i64; 3]) -> [i64; 3] {
    let mut g = [0; 3];
    for (k, v) in local.iter().enumerate() {
        g[(axis.index() + k) % 3] = *v;
    }
    g
}

pub(crate) fn global_to_local(axis: Axis, global: [i64; 3]) -> [i64; 3] {
    let mut l = [0; 3];
    for (k, slot) in l.iter_mut().enumerate() {
        *slot = global[(axis.index() + k) % 3];
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_axes_round_trip() {
        for axis in Axis::ALL {
            let p = [3, -1, 7];
            assert_eq!(global_to_local(axis, local_to_global(axis, p)), p);
        }
        assert_eq!(local_to_global(Axis::Z, [5, 1, 2]), [1, 2, 5]);
    }
}
