//! TOML configuration files describing a lattice, its faces, defects and named regions.
//!
//! ```toml
//! [lattice]
//! Lx = 11
//! Ly = 11
//! Lz = 5
//! faces = "mem;mee"
//!
//! [[defects]]
//! kind = "vacancy"
//! flavor = "m"
//! origin = [3, 3, 0]
//! size = [2, 2, 5]
//!
//! [[regions]]
//! name = "middle"
//! lo = [0, 0, 2]
//! hi = [10, 10, 2]
//! ```
//!
//! Unknown keys are rejected. `preset = "triangular"` replaces `faces` for the split-face cube.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::analysis::box_region;
use crate::closed_forms::ConfigKey;
use crate::error::{Error, Result};
use crate::lattice::{
    build_geometry, build_stabilizers_with, triangular_preset, Axis, BoundarySpec, BuildOptions,
    DefectSpec, Flavor, Handedness, LatticeGeometry, StabilizerSet,
};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub lattice: LatticeSection,
    #[serde(default)]
    pub defects: Vec<DefectRecord>,
    #[serde(default)]
    pub regions: Vec<RegionRecord>,
    /// Closed-form key to compare against, in the `family key=value ...` form.
    #[serde(default)]
    pub oracle: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSection {
    #[serde(rename = "Lx")]
    pub lx: usize,
    #[serde(rename = "Ly")]
    pub ly: usize,
    #[serde(rename = "Lz")]
    pub lz: usize,
    #[serde(default)]
    pub faces: Option<String>,
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default = "default_true")]
    pub complete_seams: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DefectRecord {
    Vacancy {
        flavor: String,
        origin: [i64; 3],
        size: [usize; 3],
    },
    EdgeDislocation {
        line_axis: String,
        position: [i64; 2],
        height: usize,
        /// Two letters, lower twist first: `"mm"`, `"em"`, ...
        twist_flavors: String,
    },
    Screw {
        line_axis: String,
        position: [i64; 2],
        handedness: String,
    },
}

/// Inclusive box of sites; both qubits of each site are included.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionRecord {
    pub name: String,
    pub lo: [i64; 3],
    pub hi: [i64; 3],
}

impl DefectRecord {
    pub fn to_spec(&self) -> Result<DefectSpec> {
        Ok(match self {
            DefectRecord::Vacancy { flavor, origin, size } => {
                DefectSpec::vacancy(flavor.parse()?, *origin, *size)
            }
            DefectRecord::EdgeDislocation {
                line_axis,
                position,
                height,
                twist_flavors,
            } => {
                let t: Vec<char> = twist_flavors.chars().collect();
                let flavor = |c: char| c.to_string().parse::<Flavor>();
                let pair = match t.as_slice() {
                    [a, b] => (flavor(*a)?, flavor(*b)?),
                    _ => {
                        return Err(Error::Config(format!(
                            "twist_flavors needs two letters, got {twist_flavors:?}"
                        )))
                    }
                };
                DefectSpec::edge(line_axis.parse::<Axis>()?, *position, *height, pair)
            }
            DefectRecord::Screw {
                line_axis,
                position,
                handedness,
            } => {
                let h = match handedness.as_str() {
                    "L" | "l" => Handedness::L,
                    "R" | "r" => Handedness::R,
                    other => return Err(Error::Config(format!("unknown handedness {other:?}"))),
                };
                DefectSpec::screw(line_axis.parse::<Axis>()?, *position, h)
            }
        })
    }
}

/// A configuration turned into a geometry and its stabilizers.
pub struct Built {
    pub geometry: Arc<LatticeGeometry>,
    pub stabilizers: StabilizerSet,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Checks everything that can be checked without building the lattice.
    pub fn validate(&self) -> Result<()> {
        let l = &self.lattice;
        match (&l.faces, &l.preset) {
            (Some(f), None) => {
                f.parse::<BoundarySpec>()?;
            }
            (None, Some(p)) if p == "triangular" => {
                if l.lx != l.ly || l.ly != l.lz {
                    return Err(Error::Config("the triangular preset needs a cube".into()));
                }
                if !self.defects.is_empty() {
                    return Err(Error::Config("the triangular preset takes no defects".into()));
                }
            }
            (None, Some(p)) => return Err(Error::Config(format!("unknown preset {p:?}"))),
            (Some(_), Some(_)) => {
                return Err(Error::Config("give either faces or preset, not both".into()))
            }
            (None, None) => return Err(Error::Config("lattice needs faces or preset".into())),
        }
        for d in &self.defects {
            d.to_spec()?;
        }
        if let Some(key) = &self.oracle {
            key.parse::<ConfigKey>()?;
        }
        Ok(())
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.lattice.lx, self.lattice.ly, self.lattice.lz]
    }

    /// Face notation, or the preset name.
    pub fn faces_label(&self) -> String {
        self.lattice
            .faces
            .clone()
            .or_else(|| self.lattice.preset.clone())
            .unwrap_or_default()
    }

    pub fn defect_specs(&self) -> Result<Vec<DefectSpec>> {
        self.defects.iter().map(DefectRecord::to_spec).collect()
    }

    pub fn oracle_key(&self) -> Result<Option<ConfigKey>> {
        self.oracle.as_deref().map(str::parse).transpose()
    }

    pub fn geometry(&self) -> Result<Arc<LatticeGeometry>> {
        if self.lattice.preset.is_some() {
            return triangular_preset(self.lattice.lx);
        }
        let faces: BoundarySpec = self.faces_label().parse()?;
        Ok(Arc::new(build_geometry(self.dims(), &faces, &self.defect_specs()?)?))
    }

    pub fn build(&self) -> Result<Built> {
        let geometry = self.geometry()?;
        let opts = BuildOptions {
            complete_seams: self.lattice.complete_seams,
            ..Default::default()
        };
        let stabilizers = build_stabilizers_with(&geometry, &opts)?;
        Ok(Built {
            geometry,
            stabilizers,
        })
    }

    /// Qubits of the named region.
    pub fn region(&self, s: &StabilizerSet, name: &str) -> Result<Vec<usize>> {
        let r = self
            .regions
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::Config(format!("no region named {name:?}")))?;
        Ok(box_region(s, r.lo, r.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TENNIS: &str = r#"
        [lattice]
        Lx = 5
        Ly = 5
        Lz = 3
        faces = "mem;mee"

        [[regions]]
        name = "top"
        lo = [0, 0, 2]
        hi = [4, 4, 2]
    "#;

    #[test]
    fn parses_and_builds() {
        let cfg = Config::from_toml(TENNIS).unwrap();
        assert_eq!(cfg.dims(), [5, 5, 3]);
        let built = cfg.build().unwrap();
        assert_eq!(built.stabilizers.n_qubits(), 2 * 75);
        assert_eq!(cfg.region(&built.stabilizers, "top").unwrap().len(), 50);
        assert!(cfg.region(&built.stabilizers, "nope").is_err());
    }

    #[test]
    fn defects_parse() {
        let text = r#"
            oracle = "edge_pair_bulk lx=6 delta=3 h=3"
            [lattice]
            Lx = 6
            Ly = 10
            Lz = 10
            faces = "eee;eee"
            [[defects]]
            kind = "edge_dislocation"
            line_axis = "x"
            position = [3, 3]
            height = 3
            twist_flavors = "mm"
            [[defects]]
            kind = "screw"
            line_axis = "z"
            position = [2, 2]
            handedness = "L"
        "#;
        let cfg = Config::from_toml(text).unwrap();
        let specs = cfg.defect_specs().unwrap();
        assert_eq!(specs[0], DefectSpec::edge(Axis::X, [3, 3], 3, (Flavor::M, Flavor::M)));
        assert!(cfg.oracle_key().unwrap().is_some());
    }

    #[test]
    fn rejects_bad_input() {
        let unknown = TENNIS.replace("faces", "colour = 1\nfaces");
        assert!(matches!(Config::from_toml(&unknown), Err(Error::Config(_))));
        let bad_faces = TENNIS.replace("mem;mee", "mex;mee");
        assert!(matches!(Config::from_toml(&bad_faces), Err(Error::BoundaryNotation(_))));
        let no_faces = TENNIS.replace("faces = \"mem;mee\"", "");
        assert!(Config::from_toml(&no_faces).is_err());
        let preset = TENNIS.replace("faces = \"mem;mee\"", "preset = \"triangular\"");
        assert!(Config::from_toml(&preset).is_err(), "non-cube preset");
    }
}
