use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::boundary::{Face, Flavor};
use super::defect::local_to_global;
use super::geometry::{Corner, LatticeGeometry};
use super::template::StabilizerTemplate;
use super::CellAnchor;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::pauli::PauliWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorKind {
    BulkX,
    BulkZ,
    PlaquetteX,
    PlaquetteZ,
    EdgeX,
    EdgeZ,
    VertexX,
    VertexZ,
    TwistX,
    TwistZ,
    SlantedX,
    SlantedZ,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 12] = [
        GeneratorKind::BulkX,
        GeneratorKind::BulkZ,
        GeneratorKind::PlaquetteX,
        GeneratorKind::PlaquetteZ,
        GeneratorKind::EdgeX,
        GeneratorKind::EdgeZ,
        GeneratorKind::VertexX,
        GeneratorKind::VertexZ,
        GeneratorKind::TwistX,
        GeneratorKind::TwistZ,
        GeneratorKind::SlantedX,
        GeneratorKind::SlantedZ,
    ];

    pub fn is_x_type(self) -> bool {
        matches!(
            self,
            GeneratorKind::BulkX
                | GeneratorKind::PlaquetteX
                | GeneratorKind::EdgeX
                | GeneratorKind::VertexX
                | GeneratorKind::TwistX
                | GeneratorKind::SlantedX
        )
    }

    /// Kind of a truncated cube that crosses `faces` box faces.
    fn truncated(x_type: bool, faces: u32) -> Self {
        match (faces, x_type) {
            (0 | 1, true) => GeneratorKind::PlaquetteX,
            (0 | 1, false) => GeneratorKind::PlaquetteZ,
            (2, true) => GeneratorKind::EdgeX,
            (2, false) => GeneratorKind::EdgeZ,
            (_, true) => GeneratorKind::VertexX,
            (_, false) => GeneratorKind::VertexZ,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::BulkX => "bulkX",
            GeneratorKind::BulkZ => "bulkZ",
            GeneratorKind::PlaquetteX => "plaquetteX",
            GeneratorKind::PlaquetteZ => "plaquetteZ",
            GeneratorKind::EdgeX => "edgeX",
            GeneratorKind::EdgeZ => "edgeZ",
            GeneratorKind::VertexX => "vertexX",
            GeneratorKind::VertexZ => "vertexZ",
            GeneratorKind::TwistX => "twistX",
            GeneratorKind::TwistZ => "twistZ",
            GeneratorKind::SlantedX => "slantedX",
            GeneratorKind::SlantedZ => "slantedZ",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub word: PauliWord,
    pub kind: GeneratorKind,
    pub anchor: CellAnchor,
}

/// Tagged stabilizer generators over a shared geometry.
#[derive(Clone, Debug)]
pub struct StabilizerSet {
    geom: Arc<LatticeGeometry>,
    generators: Vec<Generator>,
}

impl StabilizerSet {
    /// Wraps a generator list, checking sizes and pairwise commutation.
    pub fn new(geom: Arc<LatticeGeometry>, generators: Vec<Generator>) -> Result<Self> {
        let set = Self::new_unchecked(geom, generators)?;
        set.check_commutation()?;
        Ok(set)
    }

    /// Like [`StabilizerSet::new`] without the commutation check.
    pub fn new_unchecked(geom: Arc<LatticeGeometry>, generators: Vec<Generator>) -> Result<Self> {
        let n = geom.n_qubits();
        if let Some(g) = generators.iter().find(|g| g.word.n_qubits() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.word.n_qubits(),
            });
        }
        Ok(Self { geom, generators })
    }

    pub fn geometry(&self) -> &Arc<LatticeGeometry> {
        &self.geom
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn n_qubits(&self) -> usize {
        self.geom.n_qubits()
    }

    pub fn words(&self) -> impl Iterator<Item = &PauliWord> {
        self.generators.iter().map(|g| &g.word)
    }

    pub fn is_css(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.word.is_pure_x() || g.word.is_pure_z())
    }

    /// X blocks of the generators that have one.
    pub fn x_matrix(&self) -> BitMatrix {
        self.block_matrix(|w| w.x_bits())
    }

    /// Z blocks of the generators that have one.
    pub fn z_matrix(&self) -> BitMatrix {
        self.block_matrix(|w| w.z_bits())
    }

    fn block_matrix(&self, part: impl Fn(&PauliWord) -> &BitVec) -> BitMatrix {
        let mut m = BitMatrix::empty(self.n_qubits());
        for g in &self.generators {
            let v = part(&g.word);
            if !v.is_zero() {
                m.push_row(v).expect("generator width checked");
            }
        }
        m
    }

    /// Rows `[x | z]` for every generator.
    pub fn symplectic_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::empty(2 * self.n_qubits());
        for g in &self.generators {
            m.push_row(&g.word.to_symplectic())
                .expect("generator width checked");
        }
        m
    }

    pub fn kind_counts(&self) -> BTreeMap<GeneratorKind, usize> {
        let mut counts = BTreeMap::new();
        for g in &self.generators {
            *counts.entry(g.kind).or_insert(0) += 1;
        }
        counts
    }

    pub fn push(&mut self, generator: Generator) -> Result<()> {
        if generator.word.n_qubits() != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                found: generator.word.n_qubits(),
            });
        }
        for g in &self.generators {
            if !g.word.commutes(&generator.word)? {
                return Err(Error::Anticommuting {
                    first_kind: g.kind,
                    first_anchor: g.anchor,
                    second_kind: generator.kind,
                    second_anchor: generator.anchor,
                });
            }
        }
        self.generators.push(generator);
        Ok(())
    }

    pub fn remove(&mut self, index: usize) -> Generator {
        self.generators.remove(index)
    }

    /// Sparse pairwise commutation check; reports the first offending pair.
    pub fn check_commutation(&self) -> Result<()> {
        let n = self.n_qubits();
        let mut x_on: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut z_on: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (i, g) in self.generators.iter().enumerate() {
            for q in g.word.x_bits().iter_ones() {
                x_on[q].push(i as u32);
            }
            for q in g.word.z_bits().iter_ones() {
                z_on[q].push(i as u32);
            }
        }
        let mut parity: BTreeMap<u32, bool> = BTreeMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            parity.clear();
            for q in g.word.x_bits().iter_ones() {
                for &j in &z_on[q] {
                    *parity.entry(j).or_insert(false) ^= true;
                }
            }
            for q in g.word.z_bits().iter_ones() {
                for &j in &x_on[q] {
                    *parity.entry(j).or_insert(false) ^= true;
                }
            }
            if let Some((&j, _)) = parity.iter().find(|(&j, &odd)| odd && j as usize > i) {
                let h = &self.generators[j as usize];
                return Err(Error::Anticommuting {
                    first_kind: g.kind,
                    first_anchor: g.anchor,
                    second_kind: h.kind,
                    second_anchor: h.anchor,
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub template: StabilizerTemplate,
    /// Add local seam terms found by [`derive_local_stabilizers`] along open edges and corners.
    pub complete_seams: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            template: StabilizerTemplate::cubic(),
            complete_seams: true,
        }
    }
}

pub fn build_stabilizers(geom: &Arc<LatticeGeometry>) -> Result<StabilizerSet> {
    build_stabilizers_with(geom, &BuildOptions::default())
}

pub fn build_stabilizers_with(
    geom: &Arc<LatticeGeometry>,
    options: &BuildOptions,
) -> Result<StabilizerSet> {
    let n = geom.n_qubits();
    let mut generators = Vec::new();
    for cell in geom.cells() {
        if geom.dropped(cell).is_some() {
            continue;
        }
        let corners: Vec<Corner> = (0..8).map(|c| geom.resolve(cell, c)).collect();
        let mut surfaces = 0u64;
        let mut outside_flavors = Vec::new();
        for c in &corners {
            if let Corner::Outside { surfaces: s, flavor } = c {
                surfaces |= s;
                outside_flavors.push(*flavor);
            }
        }
        if outside_flavors.len() == 8 {
            continue;
        }
        let faces = (surfaces & 0b11_1111).count_ones();
        let glued = geom.is_glued(cell);
        for (z_type, keep_flavor) in [(false, Flavor::M), (true, Flavor::E)] {
            if !outside_flavors.iter().all(|f| *f == Some(keep_flavor)) {
                continue;
            }
            let mut word = PauliWord::identity(n);
            for (corner, c) in corners.iter().enumerate() {
                if let Corner::Site(s) = c {
                    let (p1, p2) = options.template.entry(z_type, corner as u8);
                    word.apply(2 * s, p1)?;
                    word.apply(2 * s + 1, p2)?;
                }
            }
            if word.is_identity() {
                continue;
            }
            let kind = if outside_flavors.is_empty() {
                match (glued, z_type) {
                    (false, false) => GeneratorKind::BulkX,
                    (false, true) => GeneratorKind::BulkZ,
                    (true, false) => GeneratorKind::SlantedX,
                    (true, true) => GeneratorKind::SlantedZ,
                }
            } else {
                GeneratorKind::truncated(!z_type, faces)
            };
            generators.push(Generator {
                word,
                kind,
                anchor: geom.canonical_cell(cell),
            });
        }
    }
    let mut set = StabilizerSet::new(geom.clone(), generators)?;
    if !geom.twists().is_empty() {
        add_twist_terms(&mut set)?;
    }
    if options.complete_seams {
        complete_seams(&mut set)?;
    }
    Ok(set)
}

fn add_twist_terms(set: &mut StabilizerSet) -> Result<()> {
    let geom = set.geometry().clone();
    let mut deriver = LocalDeriver::new(set);
    for twist in geom.twists() {
        let axis = twist.line_axis;
        let la = geom.dims()[axis.index()] as i64;
        let a_range = if geom.periodic(axis) { 0..la } else { -1..la };
        let want_x = twist.flavor == Flavor::M;
        for a in a_range {
            let mut sites = Vec::new();
            for da in 0..2 {
                for [b, c] in twist.trapezoid {
                    if let Some(s) = geom.site_index(local_to_global(axis, [a + da, b, c])) {
                        sites.push(s);
                    }
                }
            }
            sites.sort_unstable();
            sites.dedup();
            let window = geom.qubits_of_sites(&sites);
            let anchor = geom.canonical_cell(local_to_global(
                axis,
                [a, twist.anchor[0], twist.anchor[1]],
            ));
            for word in deriver.derive(&window, want_x, !want_x) {
                let kind = if want_x {
                    GeneratorKind::TwistX
                } else {
                    GeneratorKind::TwistZ
                };
                let g = Generator { word, kind, anchor };
                deriver.add(&g.word);
                set.generators.push(g);
            }
        }
    }
    set.check_commutation()
}

/// Adds local terms along open edges and corners until no window admits a new one.
fn complete_seams(set: &mut StabilizerSet) -> Result<()> {
    let geom = set.geometry().clone();
    let dims = geom.dims();
    let open: Vec<usize> = (0..3)
        .filter(|&a| !geom.periodic(super::Axis::from_index(a)))
        .collect();
    if open.len() < 2 {
        return Ok(());
    }
    let mut deriver = LocalDeriver::new(set);
    let mut windows: Vec<(Vec<usize>, CellAnchor, u32)> = Vec::new();
    if geom.has_face_patterns() {
        // Split faces have interfaces inside the faces too: sweep the whole boundary shell.
        let range = |a: usize| {
            let l = dims[a] as i64;
            if open.contains(&a) {
                -1..l
            } else {
                0..l
            }
        };
        for z in range(2) {
            for y in range(1) {
                for x in range(0) {
                    let lo = [x, y, z];
                    let faces = open
                        .iter()
                        .filter(|&&a| lo[a] <= 0 || lo[a] + 1 >= dims[a] as i64 - 1)
                        .count() as u32;
                    if faces == 0 {
                        continue;
                    }
                    let sites = geom.sites_in_box(lo, [x + 1, y + 1, z + 1]);
                    windows.push((sites, geom.canonical_cell(lo), faces.min(3)));
                }
            }
        }
    }
    // Windows of 2×2 sites in the corner plane of every edge, slid along the edge.
    for &a in &open {
        for &b in &open {
            if b <= a {
                continue;
            }
            let run = 3 - a - b;
            let lr = dims[run] as i64;
            for pa in [0, dims[a] as i64 - 2] {
                for pb in [0, dims[b] as i64 - 2] {
                    for t in -1..lr {
                        let mut lo = [0i64; 3];
                        lo[a] = pa;
                        lo[b] = pb;
                        lo[run] = t;
                        let mut hi = lo;
                        hi[a] += 1;
                        hi[b] += 1;
                        hi[run] += 1;
                        let sites = geom.sites_in_box(lo, hi);
                        let faces = if geom.periodic(super::Axis::from_index(run)) {
                            2
                        } else if t <= 0 || t >= lr - 2 {
                            3
                        } else {
                            2
                        };
                        windows.push((sites, geom.canonical_cell(lo), faces));
                    }
                }
            }
        }
    }
    for (sites, anchor, faces) in windows {
        let window = geom.qubits_of_sites(&sites);
        for (want_x, z_type) in [(true, false), (false, true)] {
            for word in deriver.derive(&window, want_x, !want_x) {
                let kind = GeneratorKind::truncated(!z_type, faces);
                let g = Generator { word, kind, anchor };
                deriver.add(&g.word);
                set.generators.push(g);
            }
        }
    }
    set.check_commutation()
}

/// Incremental finder of local commuting words modulo the current stabilizer group.
pub(crate) struct LocalDeriver {
    n: usize,
    x_span: Echelon,
    z_span: Echelon,
    x_on: Vec<Vec<u32>>,
    z_on: Vec<Vec<u32>>,
    words: Vec<PauliWord>,
}

impl LocalDeriver {
    pub(crate) fn new(set: &StabilizerSet) -> Self {
        let n = set.n_qubits();
        let mut d = Self {
            n,
            x_span: set.x_matrix().echelon(),
            z_span: set.z_matrix().echelon(),
            x_on: vec![Vec::new(); n],
            z_on: vec![Vec::new(); n],
            words: Vec::new(),
        };
        for w in set.words() {
            d.index(w);
        }
        d
    }

    fn index(&mut self, w: &PauliWord) {
        let id = self.words.len() as u32;
        for q in w.x_bits().iter_ones() {
            self.x_on[q].push(id);
        }
        for q in w.z_bits().iter_ones() {
            self.z_on[q].push(id);
        }
        self.words.push(w.clone());
    }

    pub(crate) fn add(&mut self, w: &PauliWord) {
        if !w.x_bits().is_zero() {
            self.x_span.insert(w.x_bits());
        }
        if !w.z_bits().is_zero() {
            self.z_span.insert(w.z_bits());
        }
        self.index(w);
    }

    /// Generators whose Z block (or X block) touches any window qubit.
    fn touching(&self, window: &[usize], z_part: bool) -> Vec<usize> {
        let on = if z_part { &self.z_on } else { &self.x_on };
        let mut ids: Vec<usize> = window
            .iter()
            .flat_map(|&q| on[q].iter().map(|&i| i as usize))
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Pure-X (and/or pure-Z) words supported on `window` that commute with every word
    /// and are independent modulo the current span.
    pub(crate) fn derive(&self, window: &[usize], want_x: bool, want_z: bool) -> Vec<PauliWord> {
        let mut out = Vec::new();
        for (want, x_type) in [(want_x, true), (want_z, false)] {
            if !want {
                continue;
            }
            // X candidates must commute with the Z blocks and vice versa.
            let ids = self.touching(window, x_type);
            let mut a = BitMatrix::zeros(ids.len(), window.len());
            for (r, &id) in ids.iter().enumerate() {
                let bits = if x_type {
                    self.words[id].z_bits()
                } else {
                    self.words[id].x_bits()
                };
                for (c, &q) in window.iter().enumerate() {
                    if bits.get(q) {
                        a.set(r, c, true);
                    }
                }
            }
            let kernel = a.kernel_basis();
            let span = if x_type { &self.x_span } else { &self.z_span };
            let mut fresh = Echelon::empty(self.n);
            for k in kernel.rows() {
                let v = BitVec::from_indices(self.n, k.iter_ones().map(|c| window[c]));
                let mut r = v.clone();
                span.reduce(&mut r);
                if fresh.insert(&r) {
                    out.push(if x_type {
                        PauliWord::pure_x(v)
                    } else {
                        PauliWord::pure_z(v)
                    });
                }
            }
        }
        out
    }
}

/// Basis of pure-X and pure-Z words supported on `window` (qubit indices) that commute with
/// every generator of `partial` and are independent modulo the stabilizer group.
pub fn derive_local_stabilizers(partial: &StabilizerSet, window: &[usize]) -> Vec<PauliWord> {
    let mut w = window.to_vec();
    w.sort_unstable();
    w.dedup();
    LocalDeriver::new(partial).derive(&w, true, true)
}

/// Helper used by the twist windows and tests: both qubits of the listed box of sites.
pub fn window_of_box(geom: &LatticeGeometry, lo: [i64; 3], hi: [i64; 3]) -> Vec<usize> {
    geom.qubits_of_sites(&geom.sites_in_box(lo, hi))
}

/// Kind of boundary a generator sits on, for reports.
pub fn touches_face(geom: &LatticeGeometry, g: &Generator, face: Face) -> bool {
    let l = geom.dims()[face.axis.index()] as i64;
    let a = face.axis.index();
    g.word.support().iter().any(|&q| {
        let p = geom.site(q / 2)[a];
        if face.positive {
            p == l - 1
        } else {
            p == 0
        }
    })
}
