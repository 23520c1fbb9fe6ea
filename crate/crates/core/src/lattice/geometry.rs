use std::collections::{BTreeMap, HashMap, HashSet};

use super::boundary::{Axis, BoundarySpec, Face, FaceType, Flavor};
use super::defect::{global_to_local, local_to_global, DefectSpec};
use super::{CellAnchor, Site};
use crate::error::{Error, Result};

const NO_SITE: u32 = u32::MAX;

/// Why a cell has no generators of its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DroppedCell {
    /// Cell touching a twist line of edge dislocation `defect`; `upper` selects the line.
    Twist { defect: usize, upper: bool },
    /// Cell whose lower corners sit inside a removed dislocation strip.
    Strip { defect: usize },
    /// Cell straddling a screw line.
    ScrewLine { defect: usize },
}

/// How a cube corner maps onto the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corner {
    Site(usize),
    /// Beyond the lattice: `surfaces` is a bit mask (bits 0–5 are faces by slot, then one
    /// bit per vacancy); `flavor` is `None` when the point lies beyond surfaces of both kinds.
    Outside { surfaces: u64, flavor: Option<Flavor> },
}

/// Per-face override of the condensation flavor, used by the triangular preset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacePattern {
    /// Flavor `below` where `b + c < threshold` (or `b − c` when `anti`) in the face's
    /// cyclic in-plane coordinates, `above` otherwise.
    Diagonal {
        threshold: i64,
        anti: bool,
        below: Flavor,
        above: Flavor,
    },
}

/// One twist line of an edge dislocation, in local cyclic coordinates `(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistLine {
    pub defect: usize,
    pub upper: bool,
    pub line_axis: Axis,
    pub flavor: Flavor,
    /// Transverse `(b, c)` of the five trapezoid sites.
    pub trapezoid: [[i64; 2]; 5],
    /// Transverse `(b, c)` of the cell anchor used to tag the twist generators.
    pub anchor: [i64; 2],
}

#[derive(Clone, Debug)]
pub struct LatticeGeometry {
    dims: [usize; 3],
    boundary: BoundarySpec,
    defects: Vec<DefectSpec>,
    box_site: Vec<u32>,
    sites: Vec<Site>,
    removed: HashMap<usize, (u64, Option<Flavor>)>,
    glue: HashMap<(CellAnchor, u8), Site>,
    dropped: BTreeMap<CellAnchor, DroppedCell>,
    patterns: [Option<FacePattern>; 6],
    twists: Vec<TwistLine>,
    n_vacancies: usize,
}

#[inline]
pub fn corner_delta(corner: u8) -> [i64; 3] {
    [
        (corner & 1) as i64,
        ((corner >> 1) & 1) as i64,
        ((corner >> 2) & 1) as i64,
    ]
}

fn add(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

impl LatticeGeometry {
    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn boundary(&self) -> &BoundarySpec {
        &self.boundary
    }

    pub fn defects(&self) -> &[DefectSpec] {
        &self.defects
    }

    pub fn periodic(&self, axis: Axis) -> bool {
        self.boundary.is_periodic(axis)
    }

    pub fn n_sites(&self) -> usize {
        self.sites.len()
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.sites.len()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn site(&self, index: usize) -> Site {
        self.sites[index]
    }

    pub fn twists(&self) -> &[TwistLine] {
        &self.twists
    }

    pub fn dropped_cells(&self) -> &BTreeMap<CellAnchor, DroppedCell> {
        &self.dropped
    }

    pub fn face_pattern(&self, face: Face) -> Option<FacePattern> {
        self.patterns[face.slot()]
    }

    /// Qubit index of `slot` (1 or 2) at site index `site`.
    pub fn qubit(&self, site: usize, slot: u8) -> usize {
        debug_assert!(slot == 1 || slot == 2);
        2 * site + (slot as usize - 1)
    }

    /// Site index and slot of a qubit.
    pub fn qubit_site(&self, qubit: usize) -> (usize, u8) {
        (qubit / 2, (qubit % 2) as u8 + 1)
    }

    fn box_index(&self, p: [i64; 3]) -> usize {
        let [lx, ly, _] = self.dims;
        p[0] as usize + lx * (p[1] as usize + ly * p[2] as usize)
    }

    /// Wraps periodic axes; `None` if the point is outside an open axis.
    pub fn wrap(&self, p: [i64; 3]) -> Option<[i64; 3]> {
        let mut q = p;
        for a in 0..3 {
            let l = self.dims[a] as i64;
            if self.periodic(Axis::from_index(a)) {
                q[a] = q[a].rem_euclid(l);
            } else if q[a] < 0 || q[a] >= l {
                return None;
            }
        }
        Some(q)
    }

    /// Index of the alive site at `p` (periodic axes wrap).
    pub fn site_index(&self, p: [i64; 3]) -> Option<usize> {
        let q = self.wrap(p)?;
        match self.box_site[self.box_index(q)] {
            NO_SITE => None,
            i => Some(i as usize),
        }
    }

    fn outside_flavor(&self, face: Face, p: [i64; 3]) -> Option<Flavor> {
        match self.boundary.face(face) {
            FaceType::P => None,
            FaceType::E => self.pattern_flavor(face, p).or(Some(Flavor::E)),
            FaceType::M => self.pattern_flavor(face, p).or(Some(Flavor::M)),
        }
    }

    fn pattern_flavor(&self, face: Face, p: [i64; 3]) -> Option<Flavor> {
        let FacePattern::Diagonal {
            threshold,
            anti,
            below,
            above,
        } = self.patterns[face.slot()]?;
        let local = global_to_local(face.axis, p);
        let t = if anti { local[1] - local[2] } else { local[1] + local[2] };
        Some(if t < threshold {
            below
        } else {
            above
        })
    }

    /// Resolves a raw lattice point (no glue).
    pub fn locate(&self, p: [i64; 3]) -> Corner {
        let mut mask = 0u64;
        let mut flavor: Option<Option<Flavor>> = None;
        let merge = |f: Option<Flavor>, flavor: &mut Option<Option<Flavor>>| {
            *flavor = Some(match *flavor {
                None => f,
                Some(prev) if prev == f => f,
                Some(_) => None,
            });
        };
        let mut q = p;
        for a in 0..3 {
            let axis = Axis::from_index(a);
            let l = self.dims[a] as i64;
            if self.periodic(axis) {
                q[a] = q[a].rem_euclid(l);
            } else if q[a] < 0 || q[a] >= l {
                let face = Face::new(axis, q[a] >= l);
                mask |= 1 << face.slot();
                merge(self.outside_flavor(face, p), &mut flavor);
            }
        }
        if mask != 0 {
            return Corner::Outside {
                surfaces: mask,
                flavor: flavor.flatten(),
            };
        }
        let idx = self.box_index(q);
        match self.box_site[idx] {
            NO_SITE => {
                let (surfaces, flavor) = self.removed[&idx];
                Corner::Outside { surfaces, flavor }
            }
            i => Corner::Site(i as usize),
        }
    }

    /// Resolves corner `corner` (bits δx, δy, δz) of the cell anchored at `cell`, honoring glue.
    pub fn resolve(&self, cell: CellAnchor, corner: u8) -> Corner {
        let found = match self.glue.get(&(cell, corner)) {
            Some(&p) => self.locate(p),
            None => self.locate(add(cell, corner_delta(corner))),
        };
        match found {
            // Split faces are read at the cell anchor, so one cell sees one flavor per face.
            Corner::Outside { surfaces, .. } if self.has_face_patterns() && surfaces < 1 << 6 => {
                let mut flavor: Option<Option<Flavor>> = None;
                for face in Face::all() {
                    if surfaces & (1 << face.slot()) != 0 {
                        let f = self.outside_flavor(face, cell);
                        flavor = Some(match flavor {
                            None => f,
                            Some(prev) if prev == f => f,
                            Some(_) => None,
                        });
                    }
                }
                Corner::Outside {
                    surfaces,
                    flavor: flavor.flatten(),
                }
            }
            other => other,
        }
    }

    /// True when some corner of this cell was redirected by a dislocation glue.
    pub fn is_glued(&self, cell: CellAnchor) -> bool {
        (0..8).any(|c| self.glue.contains_key(&(cell, c)))
    }

    /// Raw (unglued) position of a corner, for reporting.
    pub fn corner_position(&self, cell: CellAnchor, corner: u8) -> Site {
        self.glue
            .get(&(cell, corner))
            .copied()
            .unwrap_or_else(|| add(cell, corner_delta(corner)))
    }

    /// All cell anchors whose cube can touch the lattice, in lexicographic `(z, y, x)` order.
    pub fn cells(&self) -> Vec<CellAnchor> {
        let range = |a: usize| {
            let l = self.dims[a] as i64;
            if self.periodic(Axis::from_index(a)) {
                0..l
            } else {
                -1..l
            }
        };
        let mut out = Vec::new();
        for z in range(2) {
            for y in range(1) {
                for x in range(0) {
                    out.push([x, y, z]);
                }
            }
        }
        out
    }

    /// Canonical representative of a cell anchor (periodic axes reduced).
    pub fn canonical_cell(&self, cell: CellAnchor) -> CellAnchor {
        let mut c = cell;
        for a in 0..3 {
            if self.periodic(Axis::from_index(a)) {
                c[a] = c[a].rem_euclid(self.dims[a] as i64);
            }
        }
        c
    }

    pub fn dropped(&self, cell: CellAnchor) -> Option<DroppedCell> {
        self.dropped.get(&self.canonical_cell(cell)).copied()
    }

    /// Alive sites within the given box (inclusive bounds, periodic axes wrap).
    pub fn sites_in_box(&self, lo: [i64; 3], hi: [i64; 3]) -> Vec<usize> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for z in lo[2]..=hi[2] {
            for y in lo[1]..=hi[1] {
                for x in lo[0]..=hi[0] {
                    if let Some(i) = self.site_index([x, y, z]) {
                        if seen.insert(i) {
                            out.push(i);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Both qubits of every listed site.
    pub fn qubits_of_sites(&self, sites: &[usize]) -> Vec<usize> {
        sites.iter().flat_map(|&s| [2 * s, 2 * s + 1]).collect()
    }
}

/// Builds the site chart, removed regions, and dislocation glue.
pub fn build_geometry(
    dims: [usize; 3],
    boundary: &BoundarySpec,
    defects: &[DefectSpec],
) -> Result<LatticeGeometry> {
    if dims.iter().any(|&l| l < 2) {
        return Err(Error::InvalidLattice(format!(
            "every dimension must be at least 2, got {dims:?}"
        )));
    }
    let total = dims[0] * dims[1] * dims[2];
    if total >= NO_SITE as usize {
        return Err(Error::InvalidLattice("lattice too large".into()));
    }
    let mut geom = LatticeGeometry {
        dims,
        boundary: *boundary,
        defects: defects.to_vec(),
        box_site: vec![0; total],
        sites: Vec::new(),
        removed: HashMap::new(),
        glue: HashMap::new(),
        dropped: BTreeMap::new(),
        patterns: [None; 6],
        twists: Vec::new(),
        n_vacancies: 0,
    };
    let periodic = |a: usize| boundary.is_periodic(Axis::from_index(a));
    let dim = |a: usize| dims[a] as i64;

    // Removed sites, with the surface bit and flavor they present to the cubes around them.
    let mut removed: HashMap<usize, (u64, Option<Flavor>)> = HashMap::new();
    let claim = |geom: &LatticeGeometry,
                     removed: &mut HashMap<usize, (u64, Option<Flavor>)>,
                     p: [i64; 3],
                     info: (u64, Option<Flavor>)|
     -> Result<()> {
        let q = geom
            .wrap(p)
            .ok_or_else(|| Error::InvalidDefect(format!("site {p:?} lies outside the lattice")))?;
        if removed.insert(geom.box_index(q), info).is_some() {
            return Err(Error::InvalidDefect(format!(
                "defects overlap at site {q:?}"
            )));
        }
        Ok(())
    };

    let mut bit = 6u32;
    for (d, defect) in defects.iter().enumerate() {
        match defect {
            DefectSpec::Vacancy {
                flavor,
                origin,
                size,
            } => {
                if bit >= 64 {
                    return Err(Error::InvalidDefect("too many vacancies".into()));
                }
                for a in 0..3 {
                    let (o, w, l) = (origin[a], size[a] as i64, dim(a));
                    if w < 1 {
                        return Err(Error::InvalidDefect(format!(
                            "vacancy {d} has zero width along {}",
                            Axis::from_index(a)
                        )));
                    }
                    if periodic(a) {
                        if w > l {
                            return Err(Error::InvalidDefect(format!(
                                "vacancy {d} is wider than the periodic axis {}",
                                Axis::from_index(a)
                            )));
                        }
                    } else if o < 1 || o + w > l - 1 {
                        return Err(Error::InvalidDefect(format!(
                            "vacancy {d} touches an open face along {}",
                            Axis::from_index(a)
                        )));
                    }
                }
                if (0..3).all(|a| size[a] as i64 == dim(a)) {
                    return Err(Error::InvalidDefect(format!("vacancy {d} removes every site")));
                }
                for z in 0..size[2] as i64 {
                    for y in 0..size[1] as i64 {
                        for x in 0..size[0] as i64 {
                            let p = [origin[0] + x, origin[1] + y, origin[2] + z];
                            claim(&geom, &mut removed, p, (1 << bit, Some(*flavor)))?;
                        }
                    }
                }
                bit += 1;
                geom.n_vacancies += 1;
            }
            DefectSpec::EdgeDislocation {
                line_axis,
                position,
                height,
                twist_flavors,
            } => {
                let axis = *line_axis;
                let (b_axis, c_axis) = (axis.next().index(), axis.next().next().index());
                let [b0, c0] = *position;
                let h = *height as i64;
                if h < 1 {
                    return Err(Error::InvalidDefect(format!(
                        "edge dislocation {d} needs height ≥ 1"
                    )));
                }
                if !periodic(b_axis) && (b0 < 1 || b0 > dim(b_axis) - 2) {
                    return Err(Error::InvalidDefect(format!(
                        "edge dislocation {d} touches an open face along {}",
                        Axis::from_index(b_axis)
                    )));
                }
                if periodic(b_axis) && dim(b_axis) < 3 {
                    return Err(Error::InvalidDefect(format!(
                        "edge dislocation {d} needs at least 3 sites across the cut"
                    )));
                }
                if !periodic(c_axis) && (c0 < 1 || c0 + h > dim(c_axis) - 1) {
                    return Err(Error::InvalidDefect(format!(
                        "edge dislocation {d} touches an open face along {}",
                        Axis::from_index(c_axis)
                    )));
                }
                if periodic(c_axis) && h + 2 > dim(c_axis) {
                    return Err(Error::InvalidDefect(format!(
                        "edge dislocation {d} is too tall for the periodic axis {}",
                        Axis::from_index(c_axis)
                    )));
                }
                let la = dim(axis.index());
                let a_range = if periodic(axis.index()) { 0..la } else { -1..la };
                for a in 0..la {
                    for c in c0..c0 + h {
                        let p = local_to_global(axis, [a, b0, c]);
                        claim(&geom, &mut removed, p, (0, None))?;
                    }
                }
                let drop = |geom: &mut LatticeGeometry, local: [i64; 3], role: DroppedCell| {
                    let cell = geom.canonical_cell(local_to_global(axis, local));
                    geom.dropped.insert(cell, role);
                };
                for a in a_range {
                    for (bb, cc, upper) in [
                        (b0 - 1, c0 - 1, false),
                        (b0, c0 - 1, false),
                        (b0 - 1, c0 + h - 1, true),
                        (b0, c0 + h - 1, true),
                    ] {
                        drop(&mut geom, [a, bb, cc], DroppedCell::Twist { defect: d, upper });
                    }
                    for c in c0..c0 + h - 1 {
                        drop(&mut geom, [a, b0, c], DroppedCell::Strip { defect: d });
                        let cell = geom.canonical_cell(local_to_global(axis, [a, b0 - 1, c]));
                        for corner in 0..8u8 {
                            let delta = global_to_local(axis, corner_delta(corner));
                            if delta[1] == 1 {
                                let target = local_to_global(
                                    axis,
                                    [a + delta[0], b0 + 1, c + delta[2]],
                                );
                                geom.glue.insert((cell, corner), target);
                            }
                        }
                    }
                }
                let (lower, upper) = *twist_flavors;
                geom.twists.push(TwistLine {
                    defect: d,
                    upper: false,
                    line_axis: axis,
                    flavor: lower,
                    trapezoid: [
                        [b0 - 1, c0 - 1],
                        [b0, c0 - 1],
                        [b0 + 1, c0 - 1],
                        [b0 - 1, c0],
                        [b0 + 1, c0],
                    ],
                    anchor: [b0 - 1, c0 - 1],
                });
                geom.twists.push(TwistLine {
                    defect: d,
                    upper: true,
                    line_axis: axis,
                    flavor: upper,
                    trapezoid: [
                        [b0 - 1, c0 + h - 1],
                        [b0 + 1, c0 + h - 1],
                        [b0 - 1, c0 + h],
                        [b0, c0 + h],
                        [b0 + 1, c0 + h],
                    ],
                    anchor: [b0 - 1, c0 + h - 1],
                });
            }
            DefectSpec::Screw {
                line_axis,
                position,
                ..
            } => {
                let axis = *line_axis;
                let (b_axis, c_axis) = (axis.next().index(), axis.next().next().index());
                if !periodic(axis.index()) {
                    return Err(Error::InvalidDefect(format!(
                        "screw {d} must run along a periodic axis"
                    )));
                }
                let [bs, cs] = *position;
                let c_ok = if periodic(c_axis) {
                    true
                } else {
                    cs >= 1 && cs <= dim(c_axis) - 3
                };
                if bs < 1 || bs > dim(b_axis) - 3 || !c_ok {
                    return Err(Error::InvalidDefect(format!(
                        "screw {d} touches an open face"
                    )));
                }
            }
        }
    }

    // Screw glue: accumulate shifts per cell so that opposite screws cancel.
    let mut shifts: HashMap<CellAnchor, (Axis, i64)> = HashMap::new();
    for (d, defect) in defects.iter().enumerate() {
        if let DefectSpec::Screw {
            line_axis,
            position,
            handedness,
        } = defect
        {
            let axis = *line_axis;
            let [bs, cs] = *position;
            let la = dim(axis.index());
            let lb = dim(axis.next().index());
            for a in 0..la {
                let line_cell = geom.canonical_cell(local_to_global(axis, [a, bs, cs]));
                if geom.dropped.insert(line_cell, DroppedCell::ScrewLine { defect: d }).is_some() {
                    return Err(Error::InvalidDefect(format!("screw {d} overlaps another defect")));
                }
                for b in bs + 1..lb {
                    let cell = geom.canonical_cell(local_to_global(axis, [a, b, cs]));
                    let entry = shifts.entry(cell).or_insert((axis, 0));
                    if entry.0 != axis {
                        return Err(Error::InvalidDefect(
                            "screws along different axes share a cut".into(),
                        ));
                    }
                    entry.1 += handedness.sign();
                }
            }
        }
    }
    // On a periodic cut axis the cut wraps around, so the shifts must cancel by the far end.
    for (cell, (axis, shift)) in &shifts {
        let b_axis = axis.next().index();
        if *shift != 0 && periodic(b_axis) && cell[b_axis] == dim(b_axis) - 1 {
            return Err(Error::InvalidDefect(format!(
                "screws along {axis} with a periodic {} axis need zero net handedness",
                Axis::from_index(b_axis)
            )));
        }
    }
    for (cell, (axis, shift)) in shifts {
        // A screw line sitting on another screw's cut keeps no cube, so it needs no glue.
        if shift == 0 || matches!(geom.dropped.get(&cell), Some(DroppedCell::ScrewLine { .. })) {
            continue;
        }
        for corner in 0..8u8 {
            let delta = global_to_local(axis, corner_delta(corner));
            if delta[2] == 1 {
                let mut p = add(cell, corner_delta(corner));
                p[axis.index()] += shift;
                geom.glue.insert((cell, corner), p);
            }
        }
    }
    let glued_cells: HashSet<CellAnchor> = geom.glue.keys().map(|(c, _)| *c).collect();
    for cell in &glued_cells {
        if geom.dropped.contains_key(cell) {
            return Err(Error::InvalidDefect(format!(
                "dislocations overlap at cell {cell:?}"
            )));
        }
    }

    let mut sites = Vec::new();
    for z in 0..dims[2] as i64 {
        for y in 0..dims[1] as i64 {
            for x in 0..dims[0] as i64 {
                let idx = geom.box_index([x, y, z]);
                if removed.contains_key(&idx) {
                    geom.box_site[idx] = NO_SITE;
                } else {
                    geom.box_site[idx] = sites.len() as u32;
                    sites.push([x, y, z]);
                }
            }
        }
    }
    if sites.is_empty() {
        return Err(Error::InvalidLattice("no sites remain".into()));
    }
    geom.sites = sites;
    geom.removed = removed;
    Ok(geom)
}

/// Installs a diagonal flavor split on one face (triangular preset).
impl LatticeGeometry {
    /// Splits an open face into two flavors; periodic faces are left untouched.
    pub fn with_face_pattern(mut self, face: Face, pattern: FacePattern) -> Self {
        if self.boundary.face(face) != FaceType::P {
            self.patterns[face.slot()] = Some(pattern);
        }
        self
    }

    pub fn has_face_patterns(&self) -> bool {
        self.patterns.iter().any(Option::is_some)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::defect::Handedness;

    fn spec(s: &str) -> BoundarySpec {
        s.parse().unwrap()
    }

    #[test]
    fn periodic_chart() {
        let g = build_geometry([3, 3, 3], &spec("ppp;ppp"), &[]).unwrap();
        assert_eq!(g.n_sites(), 27);
        assert_eq!(g.n_qubits(), 54);
        assert_eq!(g.site_index([3, -1, 5]), g.site_index([0, 2, 2]));
        assert_eq!(g.cells().len(), 27);
    }

    #[test]
    fn vacancy_removes_sites() {
        let v = DefectSpec::vacancy(Flavor::M, [2, 2, 2], [1, 1, 1]);
        let g = build_geometry([5, 5, 5], &spec("mmm;eee"), &[v]).unwrap();
        assert_eq!(g.n_sites(), 124);
        assert!(matches!(
            g.locate([2, 2, 2]),
            Corner::Outside {
                flavor: Some(Flavor::M),
                ..
            }
        ));
    }

    #[test]
    fn rejects_bad_defects() {
        let touching = DefectSpec::vacancy(Flavor::M, [0, 2, 2], [1, 1, 1]);
        assert!(build_geometry([5, 5, 5], &spec("mmm;eee"), &[touching]).is_err());
        let a = DefectSpec::vacancy(Flavor::M, [1, 1, 1], [2, 2, 2]);
        let b = DefectSpec::vacancy(Flavor::E, [2, 2, 2], [1, 1, 1]);
        assert!(build_geometry([5, 5, 5], &spec("mmm;eee"), &[a, b]).is_err());
        assert!(build_geometry([1, 5, 5], &spec("mmm;eee"), &[]).is_err());
    }

    #[test]
    fn screw_glue_shifts_far_side() {
        let s = DefectSpec::screw(Axis::Z, [1, 2], Handedness::R);
        let g = build_geometry([5, 5, 5], &spec("mmp;eep"), &[s]).unwrap();
        // A cell beyond the line on the +x side of the cut sees its upper-y corners one step up in z.
        let cell = [3, 2, 1];
        assert_eq!(g.corner_position(cell, 0b010), [3, 3, 2]);
        assert_eq!(g.corner_position(cell, 0b000), [3, 2, 1]);
        assert!(g.dropped([1, 2, 4]).is_some());
        assert!(!g.is_glued([0, 2, 1]));
    }

    #[test]
    fn edge_dislocation_glues_across_strip() {
        let e = DefectSpec::edge(Axis::X, [2, 2], 2, (Flavor::M, Flavor::M));
        let g = build_geometry([4, 5, 6], &spec("pmm;pee"), &[e]).unwrap();
        assert_eq!(g.n_sites(), 4 * 5 * 6 - 4 * 2);
        assert_eq!(g.corner_position([0, 1, 2], 0b110), [0, 3, 3]);
        assert_eq!(g.twists().len(), 2);
        assert!(matches!(g.dropped([1, 1, 1]), Some(DroppedCell::Twist { upper: false, .. })));
        assert!(matches!(g.dropped([1, 2, 3]), Some(DroppedCell::Twist { upper: true, .. })));
    }
}
