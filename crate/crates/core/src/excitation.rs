//! Syndromes, excitation patterns and the constructive operators that move fracton charges.
//!
//! Word shapes (F, G, O_j, cages) are built on an abstract, unwrapped copy of the cubic lattice
//! and only mapped onto a [`LatticeGeometry`] at the end. Periodic axes wrap; sites that do not
//! exist give [`Error::ClippedSupport`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{solve_row_combination, BitMatrix, BitVec};
use crate::lattice::{
    charge_color, corner_delta, face_uv, global_to_local, local_to_global, touches_face,
    translate_operator, Axis, CellAnchor, ChargeColor, DefectSpec, Face, FaceType, GeneratorKind,
    LatticeGeometry, Site, StabilizerSet, StabilizerTemplate,
};
use crate::pauli::{Pauli, PauliWord};

/// Charge species: `e` flips X-type generators, `m` flips Z-type generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Species {
    E,
    M,
}

impl Species {
    /// Pauli that creates this species.
    pub fn creator(self) -> Pauli {
        match self {
            Species::E => Pauli::Z,
            Species::M => Pauli::X,
        }
    }

    fn of_generator(kind: GeneratorKind) -> Self {
        if kind.is_x_type() {
            Species::E
        } else {
            Species::M
        }
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Species::E => "e",
            Species::M => "m",
        })
    }
}

impl FromStr for Species {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "e" | "E" => Ok(Species::E),
            "m" | "M" => Ok(Species::M),
            other => Err(Error::Config(format!("unknown charge species {other:?}"))),
        }
    }
}

/// Coordinate plane spanned by two lattice axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Plane {
    XY,
    XZ,
    YZ,
}

impl Plane {
    /// In-plane axes in label order.
    pub fn axes(self) -> (Axis, Axis) {
        match self {
            Plane::XY => (Axis::X, Axis::Y),
            Plane::XZ => (Axis::X, Axis::Z),
            Plane::YZ => (Axis::Y, Axis::Z),
        }
    }

    pub fn normal(self) -> Axis {
        match self {
            Plane::XY => Axis::Z,
            Plane::XZ => Axis::Y,
            Plane::YZ => Axis::X,
        }
    }

    pub fn spanned_by(a: Axis, b: Axis) -> Result<Self> {
        match (a.min(b), a.max(b)) {
            (Axis::X, Axis::Y) => Ok(Plane::XY),
            (Axis::X, Axis::Z) => Ok(Plane::XZ),
            (Axis::Y, Axis::Z) => Ok(Plane::YZ),
            _ => Err(Error::Precondition(format!("axes {a} and {b} do not span a plane"))),
        }
    }

    pub fn contains(self, axis: Axis) -> bool {
        axis != self.normal()
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Plane::XY => "xy",
            Plane::XZ => "xz",
            Plane::YZ => "yz",
        })
    }
}

impl FromStr for Plane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "xy" | "yx" => Ok(Plane::XY),
            "xz" | "zx" => Ok(Plane::XZ),
            "yz" | "zy" => Ok(Plane::YZ),
            other => Err(Error::Config(format!("unknown plane {other:?}"))),
        }
    }
}

/// One of the six planar cascade operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FVariant {
    pub species: Species,
    pub plane: Plane,
}

impl FVariant {
    pub fn new(species: Species, plane: Plane) -> Self {
        Self { species, plane }
    }

    /// Direction the cascade pushes charges: negative for `m`, positive for `e`.
    pub fn direction(self) -> i64 {
        match self.species {
            Species::E => 1,
            Species::M => -1,
        }
    }

    /// Default travel axis: the second axis of the plane label.
    pub fn default_travel(self) -> Axis {
        self.plane.axes().1
    }
}

impl fmt::Display for FVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.species, self.plane)
    }
}

impl FromStr for FVariant {
    type Err = Error;

    /// `"m:yz"` or `"e:xy"`.
    fn from_str(s: &str) -> Result<Self> {
        let (sp, pl) = s
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("expected species:plane, got {s:?}")))?;
        Ok(Self::new(sp.parse()?, pl.parse()?))
    }
}

/// A flipped generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Excitation {
    pub generator: usize,
    pub species: Species,
    pub kind: GeneratorKind,
    pub anchor: CellAnchor,
    /// Color when the generator sits on exactly one ABC face.
    pub color: Option<ChargeColor>,
}

impl fmt::Display for Excitation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.anchor;
        write!(f, "{} {x},{y},{z} {}", self.species, self.kind)?;
        if let Some(c) = self.color {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyProfile {
    /// Energy after each single-qubit step.
    pub energies: Vec<usize>,
    pub peak: usize,
    pub final_energy: usize,
}

/// Generators touching each qubit, with the Pauli they place there.
pub struct Incidence {
    by_qubit: Vec<Vec<(usize, Pauli)>>,
    n_generators: usize,
}

impl Incidence {
    pub fn new(s: &StabilizerSet) -> Self {
        let mut by_qubit = vec![Vec::new(); s.n_qubits()];
        for (g, gen) in s.generators().iter().enumerate() {
            for (q, p) in gen.word.iter() {
                by_qubit[q].push((g, p));
            }
        }
        Self {
            by_qubit,
            n_generators: s.len(),
        }
    }

    /// Generators anticommuting with `p` on qubit `q`.
    pub fn flips(&self, q: usize, p: Pauli) -> impl Iterator<Item = usize> + '_ {
        self.by_qubit[q]
            .iter()
            .filter(move |(_, g)| anticommute(*g, p))
            .map(|&(g, _)| g)
    }

    /// Syndrome bit vector over generators.
    pub fn syndrome_bits(&self, op: &PauliWord) -> Result<BitVec> {
        if op.n_qubits() != self.by_qubit.len() {
            return Err(Error::DimensionMismatch {
                expected: self.by_qubit.len(),
                found: op.n_qubits(),
            });
        }
        let mut bits = BitVec::zeros(self.n_generators);
        for (q, p) in op.iter() {
            for g in self.flips(q, p) {
                bits.flip(g);
            }
        }
        Ok(bits)
    }
}

fn anticommute(a: Pauli, b: Pauli) -> bool {
    let (ax, az) = a.bits();
    let (bx, bz) = b.bits();
    (ax & bz) ^ (az & bx)
}

/// Generators anticommuting with `op`, in generator order.
pub fn syndrome(s: &StabilizerSet, op: &PauliWord) -> Result<Vec<Excitation>> {
    let bits = Incidence::new(s).syndrome_bits(op)?;
    Ok(excitations_of(s, &bits))
}

fn excitations_of(s: &StabilizerSet, bits: &BitVec) -> Vec<Excitation> {
    let geom = s.geometry();
    let abc: Vec<Face> = Face::all()
        .filter(|&f| geom.boundary().face(f) != FaceType::P && geom.boundary().is_abc(f))
        .collect();
    bits.iter_ones()
        .map(|g| {
            let gen = &s.generators()[g];
            let faces: Vec<Face> = abc
                .iter()
                .copied()
                .filter(|&f| touches_face(geom, gen, f))
                .collect();
            let color = match faces.as_slice() {
                [f] => {
                    let (u, v) = face_uv(*f, gen.anchor);
                    Some(ChargeColor::from_uv(u, v))
                },
                _ => None,
            };
            Excitation {
                generator: g,
                species: Species::of_generator(gen.kind),
                kind: gen.kind,
                anchor: gen.anchor,
                color,
            }
        })
        .collect()
}

/// Energies along `order`, which must be a permutation of the support of `op`.
pub fn energy_profile(s: &StabilizerSet, op: &PauliWord, order: &[usize]) -> Result<EnergyProfile> {
    if op.n_qubits() != s.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: s.n_qubits(),
            found: op.n_qubits(),
        });
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != op.support() {
        return Err(Error::Precondition(
            "order is not a permutation of the operator support".into(),
        ));
    }
    energy_profile_unchecked(&Incidence::new(s), op, order)
}

fn energy_profile_unchecked(inc: &Incidence, op: &PauliWord, order: &[usize]) -> Result<EnergyProfile> {
    let mut state = BitVec::zeros(inc.n_generators);
    let mut energy = 0usize;
    let mut energies = Vec::with_capacity(order.len());
    for &q in order {
        for g in inc.flips(q, op.get(q)) {
            if state.get(g) {
                energy -= 1;
            } else {
                energy += 1;
            }
            state.flip(g);
        }
        energies.push(energy);
    }
    Ok(EnergyProfile {
        peak: energies.iter().copied().max().unwrap_or(0),
        final_energy: energy,
        energies,
    })
}

// Abstract words: (site offset, slot, Pauli) on an infinite cubic lattice.

type Term = (Site, u8, Pauli);

fn add(a: Site, b: Site) -> Site {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: Site, b: Site) -> Site {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn unit(axis: Axis, len: i64) -> Site {
    let mut v = [0; 3];
    v[axis.index()] = len;
    v
}

fn toggle<T: Ord + Copy>(set: &mut BTreeSet<T>, item: T) {
    if !set.remove(&item) {
        set.insert(item);
    }
}

/// Bulk syndrome cells of an abstract single-type word.
fn bulk_syndrome(terms: &[Term]) -> BTreeSet<CellAnchor> {
    let t = StabilizerTemplate::cubic();
    let mut cells = BTreeSet::new();
    for &(site, slot, p) in terms {
        for z_type in [false, true] {
            for corner in 0..8u8 {
                let (a, b) = t.entry(z_type, corner);
                let g = if slot == 1 { a } else { b };
                if anticommute(g, p) {
                    toggle(&mut cells, sub(site, corner_delta(corner)));
                }
            }
        }
    }
    cells
}

/// Product of `terms` translated to each offset in `shifts` (same Pauli type throughout).
fn convolve(terms: &[Term], shifts: impl IntoIterator<Item = Site>) -> Vec<Term> {
    let mut acc: BTreeSet<(Site, u8)> = BTreeSet::new();
    let mut pauli = Pauli::I;
    for s in shifts {
        for &(site, slot, p) in terms {
            pauli = p;
            toggle(&mut acc, (add(site, s), slot));
        }
    }
    acc.into_iter().map(|(site, slot)| (site, slot, pauli)).collect()
}

fn realize(geom: &LatticeGeometry, anchor: Site, terms: &[Term]) -> Result<PauliWord> {
    realize_with(geom, anchor, terms, |p| p)
}

fn realize_with(
    geom: &LatticeGeometry,
    anchor: Site,
    terms: &[Term],
    chart: impl Fn(Site) -> Site,
) -> Result<PauliWord> {
    let mut word = PauliWord::identity(geom.n_qubits());
    let mut clipped = Vec::new();
    for &(off, slot, p) in terms {
        let target = chart(add(anchor, off));
        match geom.site_index(target) {
            Some(i) => word.apply(geom.qubit(i, slot), p)?,
            None => clipped.push(target),
        }
    }
    if clipped.is_empty() {
        Ok(word)
    } else {
        clipped.sort_unstable();
        clipped.dedup();
        Err(Error::ClippedSupport(clipped))
    }
}

fn f_terms(v: FVariant) -> Vec<Term> {
    let (a, b) = v.plane.axes();
    match v.species {
        Species::M => vec![(unit(a, 1), 1, Pauli::X), (unit(b, 1), 1, Pauli::X), ([0; 3], 2, Pauli::X)],
        Species::E => vec![([0; 3], 1, Pauli::Z), (unit(a, -1), 2, Pauli::Z), (unit(b, -1), 2, Pauli::Z)],
    }
}

/// The weight-3 planar cascade word with its corner qubit at `anchor`.
///
/// Its six charges form a triangle in one plane: `m` words spread toward the positive in-plane
/// directions (so the apexes push charges negatively), `e` words the other way round.
pub fn build_f(geom: &LatticeGeometry, variant: FVariant, anchor: Site) -> Result<PauliWord> {
    realize(geom, anchor, &f_terms(variant))
}

/// Output of [`cascade`].
#[derive(Clone, Debug)]
pub struct Cascade {
    pub word: PauliWord,
    pub weight: usize,
    /// Number of F words composed.
    pub applications: usize,
    /// Energy profile in constructive order.
    pub profile: EnergyProfile,
}

struct AbstractCascade {
    terms: Vec<Term>,
    charges: BTreeSet<CellAnchor>,
    /// Each term position in first-touch order.
    order: Vec<(Site, u8)>,
    applications: usize,
}

fn abstract_cascade(variant: FVariant, travel: Axis, delta: usize) -> Result<AbstractCascade> {
    if !variant.plane.contains(travel) {
        return Err(Error::Precondition(format!(
            "travel axis {travel} is not in the {} plane",
            variant.plane
        )));
    }
    let f = f_terms(variant);
    let pattern = bulk_syndrome(&f);
    let t = travel.index();
    let dir = variant.direction();
    // The star is the unique charge furthest against the travel direction.
    let star = *pattern
        .iter()
        .max_by_key(|c| -dir * c[t])
        .expect("F has a nonempty syndrome");
    let mut charges = pattern.clone();
    let mut shifts = vec![[0i64; 3]];
    for step in 1..=delta as i64 {
        let row = star[t] + dir * step;
        let in_row: Vec<CellAnchor> = charges.iter().copied().filter(|c| c[t] == row).collect();
        for c in in_row {
            let shift = sub(c, star);
            for p in &pattern {
                toggle(&mut charges, add(*p, shift));
            }
            shifts.push(shift);
        }
    }
    let mut first: BTreeMap<(Site, u8), usize> = BTreeMap::new();
    let mut order = Vec::new();
    for s in &shifts {
        for &(site, slot, _) in &f {
            let key = (add(site, *s), slot);
            if let std::collections::btree_map::Entry::Vacant(e) = first.entry(key) {
                e.insert(order.len());
                order.push(key);
            }
        }
    }
    Ok(AbstractCascade {
        terms: convolve(&f, shifts.iter().copied()),
        charges,
        order,
        applications: shifts.len(),
    })
}

/// Composes translated F words row by row, pushing charges `delta` rows along `travel`.
///
/// Each row in the travel direction is cleared by applying F with its star on every charge in
/// that row, from the lowest coordinate up. `delta = 0` is the bare F word.
pub fn cascade(
    s: &StabilizerSet,
    variant: FVariant,
    travel: Axis,
    anchor: Site,
    delta: usize,
) -> Result<Cascade> {
    let geom = s.geometry();
    let ac = abstract_cascade(variant, travel, delta)?;
    let word = realize(geom, anchor, &ac.terms)?;
    let mut seen = vec![false; s.n_qubits()];
    let mut order = Vec::new();
    for (site, slot) in ac.order {
        if let Some(i) = geom.site_index(add(anchor, site)) {
            let q = geom.qubit(i, slot);
            if !seen[q] && word.get(q) != Pauli::I {
                seen[q] = true;
                order.push(q);
            }
        }
    }
    let profile = energy_profile_unchecked(&Incidence::new(s), &word, &order)?;
    Ok(Cascade {
        weight: word.weight(),
        applications: ac.applications,
        word,
        profile,
    })
}

/// [`cascade`] on a fresh periodic lattice large enough that the word never meets itself:
/// in-plane sides `2Δ + 12`, four layers along the normal.
pub fn cascade_on_torus(variant: FVariant, travel: Axis, delta: usize) -> Result<Cascade> {
    let n = 2 * delta + 12;
    let mut dims = [n; 3];
    dims[variant.plane.normal().index()] = 4;
    let geom = std::sync::Arc::new(crate::lattice::build_geometry(
        dims,
        &crate::lattice::BoundarySpec::periodic(),
        &[],
    )?);
    let s = crate::lattice::build_stabilizers(&geom)?;
    let mut anchor = [(n / 2) as i64; 3];
    anchor[variant.plane.normal().index()] = 1;
    cascade(&s, variant, travel, anchor, delta)
}

fn g_terms() -> Vec<Term> {
    vec![([0; 3], 2, Pauli::Z), ([0, 0, 1], 1, Pauli::Z)]
}

/// The two-qubit Z word `IZ` at `anchor`, `ZI` directly above.
///
/// Its four `e` charges share one `x − y` diagonal class: two neighbours along `x̂ + ŷ` in the
/// layer `anchor.z + 1`, and one in each of the two layers below.
pub fn build_g(geom: &LatticeGeometry, anchor: Site) -> Result<PauliWord> {
    realize(geom, anchor, &g_terms())
}

/// Layer-cleaning word `O_j` wrapped around periodic `x` and `y`.
///
/// `O_3` is three G words stepped along `x̂ + ŷ`; `O_2j` doubles `O_j` about its leftmost top
/// charge; the result is repeated `L / j` times around the diagonal. The top layer of the G
/// words is `anchor.z + 1`.
pub fn build_o(geom: &LatticeGeometry, j: usize, anchor: Site) -> Result<PauliWord> {
    let [lx, ly, _] = geom.dims();
    if j < 3 || !j.is_multiple_of(3) || !(j / 3).is_power_of_two() {
        return Err(Error::OutOfDomain(format!("O_j needs j = 3·2^z, got {j}")));
    }
    if !geom.periodic(Axis::X) || !geom.periodic(Axis::Y) || lx != ly {
        return Err(Error::Precondition(
            "O_j needs periodic x and y of equal length".into(),
        ));
    }
    if lx % 3 != 0 || lx % j != 0 {
        return Err(Error::OutOfDomain(format!("O_{j} needs 3 | L and j | L, got L = {lx}")));
    }
    let d = [1, 1, 0];
    let step = |k: i64| [d[0] * k, d[1] * k, 0];
    let mut terms = convolve(&g_terms(), (0..3).map(step));
    let mut jj = 3;
    while jj < j {
        let cells = bulk_syndrome(&terms);
        let top = cells.iter().map(|c| c[2]).max().unwrap_or(0);
        let a = *cells
            .iter()
            .filter(|c| c[2] == top)
            .min_by_key(|c| c[0])
            .expect("O_j has top-layer charges before wrapping");
        terms = convolve(&terms, cells.iter().map(|&c| sub(c, a)));
        jj *= 2;
    }
    let terms = convolve(&terms, (0..(lx / j) as i64).map(|k| step(k * j as i64)));
    realize(geom, anchor, &terms)
}

/// Consecutive syndrome-free layers counted down from layer `top`.
pub fn cleaned_layers(s: &StabilizerSet, op: &PauliWord, top: i64) -> Result<usize> {
    let geom = s.geometry();
    let lz = geom.dims()[2] as i64;
    let wrap = |z: i64| if geom.periodic(Axis::Z) { z.rem_euclid(lz) } else { z };
    let layers: BTreeSet<i64> = syndrome(s, op)?.iter().map(|e| wrap(e.anchor[2])).collect();
    let mut depth = 0usize;
    while (depth as i64) < lz && !layers.contains(&wrap(top - depth as i64)) {
        depth += 1;
    }
    Ok(depth)
}

/// `z_max` measured with the largest `O_j` (j = 3·2^z, j | L) on an `L × L` periodic lattice.
pub fn zmax_via_operators(l: usize) -> Result<usize> {
    if l == 0 {
        return Err(Error::OutOfDomain("L must be positive".into()));
    }
    if !l.is_multiple_of(3) {
        return Ok(0);
    }
    let mut j = 3;
    while l.is_multiple_of(2 * j) {
        j *= 2;
    }
    let lz = 2 * j / 3 + 4;
    let geom = std::sync::Arc::new(crate::lattice::build_geometry(
        [l, l, lz],
        &crate::lattice::BoundarySpec::periodic(),
        &[],
    )?);
    let s = crate::lattice::build_stabilizers(&geom)?;
    let anchor = [0, 0, lz as i64 - 2];
    let o = build_o(&geom, j, anchor)?;
    cleaned_layers(&s, &o, anchor[2] + 1)
}

fn min_image(geom: &LatticeGeometry, v: Site) -> Site {
    let dims = geom.dims();
    let mut out = v;
    for a in Axis::ALL {
        let i = a.index();
        if geom.periodic(a) {
            let l = dims[i] as i64;
            let r = v[i].rem_euclid(l);
            out[i] = if r > l / 2 { r - l } else { r };
        }
    }
    out
}

/// Doubling: the product of `op` translated so that the chosen anchor excitation lands
/// on each of its excitations. The new pattern is the old one scaled by 2 about that anchor.
pub fn fractal_double(s: &StabilizerSet, op: &PauliWord, anchor_choice: usize) -> Result<PauliWord> {
    if !op.is_pure_x() && !op.is_pure_z() {
        return Err(Error::Precondition("doubling needs a pure X or pure Z word".into()));
    }
    let syn = syndrome(s, op)?;
    if syn.len() < 2 {
        return Err(Error::Precondition(format!(
            "doubling needs more than one excitation, found {}",
            syn.len()
        )));
    }
    let a = syn
        .get(anchor_choice)
        .ok_or_else(|| {
            Error::Precondition(format!(
                "anchor choice {anchor_choice} out of range for {} excitations",
                syn.len()
            ))
        })?
        .anchor;
    let geom = s.geometry();
    let mut out = PauliWord::identity(op.n_qubits());
    for e in &syn {
        out.mul_assign(&translate_operator(geom, op, min_image(geom, sub(e.anchor, a)))?)?;
    }
    Ok(out)
}

/// Cage word in the plane `plane`, enclosing an `extents[0] × extents[1]` box from `anchor`.
///
/// With `A` a cascade along the first in-plane axis (F in the plane of that axis and the normal)
/// and `B` one along the second, the cage is `A` placed on every charge of `B` times `B` placed
/// on every charge of `A`. Both halves leave the same charges, so the product is closed in the
/// bulk. Its support is a shell whose height along the normal grows with the extents.
/// Points are placed directly; if that lands on a removed dislocation strip, the far side of
/// every strip is stepped over instead.
pub fn build_cage(
    s: &StabilizerSet,
    species: Species,
    plane: Plane,
    extents: [usize; 2],
    anchor: Site,
) -> Result<PauliWord> {
    let (u, v) = plane.axes();
    let n = plane.normal();
    let a = abstract_cascade(FVariant::new(species, Plane::spanned_by(u, n)?), u, extents[0])?;
    let b = abstract_cascade(FVariant::new(species, Plane::spanned_by(v, n)?), v, extents[1])?;
    let mut acc: BTreeSet<(Site, u8)> = BTreeSet::new();
    for (terms, shifts) in [(&a.terms, &b.charges), (&b.terms, &a.charges)] {
        for (site, slot, _) in convolve(terms, shifts.iter().copied()) {
            toggle(&mut acc, (site, slot));
        }
    }
    let p = species.creator();
    let terms: Vec<Term> = acc.into_iter().map(|(site, slot)| (site, slot, p)).collect();
    let geom = s.geometry();
    match realize(geom, anchor, &terms) {
        Err(Error::ClippedSupport(_)) if has_edge_dislocations(geom) => {
            realize_with(geom, anchor, &terms, |p| skip_removed_strips(geom, p))
        }
        other => other,
    }
}

fn has_edge_dislocations(geom: &LatticeGeometry) -> bool {
    geom.defects()
        .iter()
        .any(|d| matches!(d, DefectSpec::EdgeDislocation { .. }))
}

/// Maps a point of the perfect lattice into a lattice with edge dislocations by stepping over
/// each removed strip. The chart is cut along the rows through the twist lines on the far side
/// of the strip, so a loop around one twist comes back displaced by the Burgers vector.
fn skip_removed_strips(geom: &LatticeGeometry, p: Site) -> Site {
    let mut p = p;
    for d in geom.defects() {
        if let DefectSpec::EdgeDislocation {
            line_axis,
            position: [b0, c0],
            height,
            ..
        } = *d
        {
            let mut l = global_to_local(line_axis, p);
            if l[1] >= b0 && l[2] >= c0 && l[2] < c0 + height as i64 {
                l[1] += 1;
                p = local_to_global(line_axis, l);
            }
        }
    }
    p
}

fn layer_coordinate(geom: &LatticeGeometry, face: Face, depth: i64) -> i64 {
    let l = geom.dims()[face.axis.index()] as i64;
    if face.positive {
        l - 1 - depth
    } else {
        depth
    }
}

/// Word in the boundary layer of an ABC face whose syndrome is exactly the two charges at cell
/// anchors `from` and `to`.
///
/// The word is found by a GF(2) solve over boundary-layer qubits, growing the search box around
/// the two charges until a solution exists. `color` must be the color of `from`.
pub fn boundary_hop(
    s: &StabilizerSet,
    face: Face,
    color: ChargeColor,
    from: CellAnchor,
    to: CellAnchor,
) -> Result<PauliWord> {
    let geom = s.geometry();
    if geom.boundary().face(face) == FaceType::P || !geom.boundary().is_abc(face) {
        return Err(Error::CondensingFace(face.to_string()));
    }
    let species = if face.positive { Species::M } else { Species::E };
    let found = charge_color(geom, face, face_uv(face, from))?;
    if found != color {
        return Err(Error::Precondition(format!(
            "charge at {from:?} has color {found}, not {color}"
        )));
    }
    let find = |cell: CellAnchor| -> Result<usize> {
        s.generators()
            .iter()
            .position(|g| {
                g.anchor == cell && Species::of_generator(g.kind) == species && touches_face(geom, g, face)
            })
            .ok_or_else(|| {
                Error::Precondition(format!("no {species} boundary generator at {cell:?} on {face}"))
            })
    };
    let (gf, gt) = (find(from)?, find(to)?);
    if gf == gt {
        return Ok(PauliWord::identity(s.n_qubits()));
    }
    let mut target = BitVec::zeros(s.len());
    target.flip(gf);
    target.flip(gt);
    let inc = Incidence::new(s);
    let a = face.axis.index();
    let dims = geom.dims();
    let layer = layer_coordinate(geom, face, 0);
    let max_r = dims.iter().copied().max().unwrap_or(1) as i64;
    for r in 0..=max_r {
        let mut lo = [0i64; 3];
        let mut hi = [0i64; 3];
        for i in 0..3 {
            lo[i] = from[i].min(to[i]) - r;
            hi[i] = from[i].max(to[i]) + 1 + r;
        }
        lo[a] = layer;
        hi[a] = layer;
        let qubits = geom.qubits_of_sites(&geom.sites_in_box(lo, hi));
        let rows: Vec<BitVec> = qubits
            .iter()
            .map(|&q| {
                let mut v = BitVec::zeros(s.len());
                for g in inc.flips(q, species.creator()) {
                    v.flip(g);
                }
                v
            })
            .collect();
        let m = BitMatrix::from_rows(s.len(), &rows)?;
        if let Some(coeffs) = solve_row_combination(&m, &target) {
            let mut word = PauliWord::identity(s.n_qubits());
            for i in coeffs.iter_ones() {
                word.apply(qubits[i], species.creator())?;
            }
            return Ok(word);
        }
    }
    Err(Error::Precondition(format!(
        "no boundary word connects {from:?} and {to:?} on {face}"
    )))
}

/// Per-site CNOT controlled on slot 2, so that `XX ↔ IX`, `XI ↔ XI`, `ZZ ↔ ZI`, `IZ ↔ IZ`.
///
/// Every word must live on the two site layers next to `face`. The map is a Clifford
/// conjugation, so commutation relations are preserved.
pub fn pair_map_to_color_code(
    geom: &LatticeGeometry,
    face: Face,
    ops: &[PauliWord],
) -> Result<Vec<PauliWord>> {
    let a = face.axis.index();
    let layers = [layer_coordinate(geom, face, 0), layer_coordinate(geom, face, 1)];
    ops.iter()
        .map(|op| {
            if op.n_qubits() != geom.n_qubits() {
                return Err(Error::DimensionMismatch {
                    expected: geom.n_qubits(),
                    found: op.n_qubits(),
                });
            }
            let mut out = PauliWord::identity(op.n_qubits());
            let sites: BTreeSet<usize> = op.support().iter().map(|q| q / 2).collect();
            for site in sites {
                let p = geom.site(site);
                if !layers.contains(&p[a]) {
                    return Err(Error::Precondition(format!(
                        "support at {p:?} is outside the two layers next to {face}"
                    )));
                }
                let (xi, zi) = op.get(geom.qubit(site, 1)).bits();
                let (xj, zj) = op.get(geom.qubit(site, 2)).bits();
                out.set(geom.qubit(site, 1), Pauli::from_bits(xi ^ xj, zi))?;
                out.set(geom.qubit(site, 2), Pauli::from_bits(xj, zj ^ zi))?;
            }
            Ok(out)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::analysis::{classify, OperatorClass};
    use crate::lattice::{build_geometry, build_stabilizers, build_stabilizers_with, BoundarySpec, BuildOptions, Flavor};

    fn periodic(dims: [usize; 3]) -> StabilizerSet {
        let g = Arc::new(build_geometry(dims, &BoundarySpec::periodic(), &[]).unwrap());
        build_stabilizers(&g).unwrap()
    }

    fn single(s: &StabilizerSet, site: Site, slot: u8, p: Pauli) -> PauliWord {
        let g = s.geometry();
        PauliWord::single(s.n_qubits(), g.qubit(g.site_index(site).unwrap(), slot), p).unwrap()
    }

    fn anchors(s: &StabilizerSet, op: &PauliWord) -> BTreeSet<CellAnchor> {
        syndrome(s, op).unwrap().iter().map(|e| e.anchor).collect()
    }

    #[test]
    fn single_qubit_tetrahedra() {
        let s = periodic([5, 5, 5]);
        for (slot, p, species) in [
            (1, Pauli::Z, Species::E),
            (2, Pauli::Z, Species::E),
            (1, Pauli::X, Species::M),
            (2, Pauli::X, Species::M),
        ] {
            let syn = syndrome(&s, &single(&s, [2, 2, 2], slot, p)).unwrap();
            assert_eq!(syn.len(), 4, "slot {slot} {p:?}");
            assert!(syn.iter().all(|e| e.species == species && e.color.is_none()));
        }
    }

    #[test]
    fn syndrome_is_linear() {
        let s = periodic([4, 4, 4]);
        let inc = Incidence::new(&s);
        let a = single(&s, [0, 1, 2], 1, Pauli::Y);
        let b = single(&s, [1, 1, 2], 2, Pauli::X);
        let mut sum = inc.syndrome_bits(&a).unwrap();
        sum.xor_assign(&inc.syndrome_bits(&b).unwrap());
        assert_eq!(inc.syndrome_bits(&a.multiply(&b).unwrap()).unwrap(), sum);
        let stab = &s.generators()[3].word;
        assert_eq!(syndrome(&s, stab).unwrap().len(), 0);
    }

    #[test]
    fn f_words_make_planar_triangles() {
        let s = periodic([6, 6, 6]);
        for species in [Species::E, Species::M] {
            for plane in [Plane::XY, Plane::XZ, Plane::YZ] {
                let v = FVariant::new(species, plane);
                let f = build_f(s.geometry(), v, [2, 2, 2]).unwrap();
                assert_eq!(f.weight(), 3);
                let cells = anchors(&s, &f);
                assert_eq!(cells.len(), 6, "{v}");
                let n = plane.normal().index();
                let layer = cells.iter().next().unwrap()[n];
                assert!(cells.iter().all(|c| c[n] == layer), "{v} is not planar");
                let twice = f.multiply(&f).unwrap();
                assert!(twice.is_identity());
            }
        }
        assert_eq!("m:yz".parse::<FVariant>().unwrap().to_string(), "F_m^yz");
        assert!("q:yz".parse::<FVariant>().is_err());
    }

    #[test]
    fn cascade_small_cases() {
        let s = periodic([8, 8, 8]);
        let v = FVariant::new(Species::M, Plane::YZ);
        let c0 = cascade(&s, v, Axis::Z, [3, 3, 5], 0).unwrap();
        assert_eq!(c0.word, build_f(s.geometry(), v, [3, 3, 5]).unwrap());
        assert_eq!(c0.applications, 1);
        assert_eq!(c0.profile.final_energy, 6);
        let c1 = cascade(&s, v, Axis::Z, [3, 3, 5], 1).unwrap();
        assert_eq!(c1.applications, 3);
        assert_eq!(c1.profile.final_energy, 4);
        assert_eq!(c1.profile.final_energy, syndrome(&s, &c1.word).unwrap().len());
        assert_eq!(c1.profile.energies.len(), c1.weight);
        assert!(cascade(&s, v, Axis::X, [0; 3], 1).is_err());
    }

    #[test]
    fn energy_profile_checks_order() {
        let s = periodic([4, 4, 4]);
        let f = build_f(s.geometry(), FVariant::new(Species::E, Plane::XY), [1, 1, 1]).unwrap();
        let order = f.support();
        let p = energy_profile(&s, &f, &order).unwrap();
        assert_eq!(p.final_energy, 6);
        assert!(p.peak >= p.final_energy);
        assert!(energy_profile(&s, &f, &order[..2]).is_err());
    }

    #[test]
    fn g_charges_share_a_diagonal_class() {
        let s = periodic([6, 6, 6]);
        let g = build_g(s.geometry(), [2, 2, 2]).unwrap();
        let cells: Vec<CellAnchor> = anchors(&s, &g).into_iter().collect();
        assert_eq!(cells.len(), 4);
        let class = (cells[0][0] - cells[0][1]).rem_euclid(3);
        assert!(cells.iter().all(|c| (c[0] - c[1]).rem_euclid(3) == class));
        let layers: Vec<usize> = [3, 2, 1]
            .iter()
            .map(|z| cells.iter().filter(|c| c[2] == *z).count())
            .collect();
        assert_eq!(layers, vec![2, 1, 1]);
    }

    #[test]
    fn zmax_from_o_words() {
        let got: Vec<usize> = [3, 6, 9, 12].iter().map(|&l| zmax_via_operators(l).unwrap()).collect();
        assert_eq!(got, vec![1, 2, 1, 4]);
        assert_eq!(zmax_via_operators(4).unwrap(), 0);
        let g = build_geometry([6, 6, 6], &BoundarySpec::periodic(), &[]).unwrap();
        assert!(matches!(build_o(&g, 5, [0; 3]), Err(Error::OutOfDomain(_))));
        assert!(matches!(build_o(&g, 12, [0; 3]), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn doubling_scales_the_pattern() {
        let s = periodic([12, 12, 12]);
        let f = build_f(s.geometry(), FVariant::new(Species::M, Plane::XY), [4, 4, 6]).unwrap();
        let syn = syndrome(&s, &f).unwrap();
        let a = syn[0].anchor;
        let before: BTreeSet<Site> = syn.iter().map(|e| e.anchor).collect();
        let doubled = fractal_double(&s, &f, 0).unwrap();
        let after = anchors(&s, &doubled);
        let scaled: BTreeSet<Site> = before
            .iter()
            .map(|c| [2 * c[0] - a[0], 2 * c[1] - a[1], 2 * c[2] - a[2]])
            .collect();
        assert_eq!(after, scaled);
        let mixed = single(&s, [0, 0, 0], 1, Pauli::Y);
        assert!(fractal_double(&s, &mixed, 0).is_err());
    }

    #[test]
    fn bulk_cages_are_stabilizers() {
        let s = periodic([14, 14, 14]);
        for species in [Species::E, Species::M] {
            let cage = build_cage(&s, species, Plane::XY, [2, 3], [3, 3, 6]).unwrap();
            assert!(syndrome(&s, &cage).unwrap().is_empty());
            assert_eq!(classify(&s, &cage).unwrap(), OperatorClass::Stabilizer);
        }
    }

    #[test]
    fn cages_around_twists() {
        let def = DefectSpec::edge(Axis::Z, [11, 8], 6, (Flavor::M, Flavor::M));
        let g = Arc::new(build_geometry([30, 36, 8], &"eep;eep".parse().unwrap(), &[def]).unwrap());
        let opts = BuildOptions {
            complete_seams: true,
            ..Default::default()
        };
        let s = build_stabilizers_with(&g, &opts).unwrap();
        let syn_len = |ext: [usize; 2], a: [i64; 2]| {
            let c = build_cage(&s, Species::E, Plane::XY, ext, [a[0], a[1], 3]).unwrap();
            syndrome(&s, &c).unwrap().len()
        };
        // Around both twist lines, or around neither: closed.
        assert_eq!(syn_len([8, 16], [6, 3]), 0);
        assert_eq!(syn_len([4, 4], [20, 24]), 0);
        // Around one: open.
        assert!(syn_len([8, 8], [6, 3]) > 0);
        assert!(syn_len([8, 8], [6, 10]) > 0);
    }

    #[test]
    fn boundary_hops() {
        let g = Arc::new(build_geometry([6, 6, 6], &"mee;eee".parse().unwrap(), &[]).unwrap());
        let s = build_stabilizers(&g).unwrap();
        let face = Face::new(Axis::X, true);
        let from: CellAnchor = [4, 1, 3];
        let to: CellAnchor = [4, 2, 4];
        let color = charge_color(&g, face, face_uv(face, from)).unwrap();
        let hop = boundary_hop(&s, face, color, from, to).unwrap();
        assert!(hop.is_pure_x());
        assert_eq!(anchors(&s, &hop), [from, to].into_iter().collect());
        let wrong = match color {
            ChargeColor::A => ChargeColor::B,
            _ => ChargeColor::A,
        };
        assert!(boundary_hop(&s, face, wrong, from, to).is_err());
        assert!(matches!(
            boundary_hop(&s, Face::new(Axis::Y, true), color, from, to),
            Err(Error::CondensingFace(_))
        ));
    }

    #[test]
    fn pair_map_is_a_clifford_involution() {
        let g = build_geometry([4, 4, 4], &"mpp;epp".parse().unwrap(), &[]).unwrap();
        let face = Face::new(Axis::X, true);
        let n = g.n_qubits();
        let q = |p: Site, slot| g.qubit(g.site_index(p).unwrap(), slot);
        let mut a = PauliWord::identity(n);
        a.apply(q([3, 0, 0], 1), Pauli::X).unwrap();
        a.apply(q([3, 0, 0], 2), Pauli::X).unwrap();
        a.apply(q([2, 1, 0], 2), Pauli::Z).unwrap();
        let mut b = PauliWord::identity(n);
        b.apply(q([3, 0, 0], 1), Pauli::Z).unwrap();
        b.apply(q([2, 1, 0], 1), Pauli::Y).unwrap();
        let mapped = pair_map_to_color_code(&g, face, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(mapped[0].get(q([3, 0, 0], 1)), Pauli::I);
        assert_eq!(mapped[0].get(q([3, 0, 0], 2)), Pauli::X);
        assert_eq!(a.commutes(&b).unwrap(), mapped[0].commutes(&mapped[1]).unwrap());
        let back = pair_map_to_color_code(&g, face, &mapped).unwrap();
        assert_eq!(back, vec![a, b]);
        let deep = PauliWord::single(n, q([0, 0, 0], 1), Pauli::X).unwrap();
        assert!(pair_map_to_color_code(&g, face, &[deep]).is_err());
    }
}
