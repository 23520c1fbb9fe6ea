//! Symplectic analysis of stabilizer sets: logical counts, bases, region counts, gauge-out.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::lattice::{Axis, StabilizerSet};
use crate::pauli::PauliWord;

/// Symplectically paired logical representatives.
#[derive(Clone, Debug, Default)]
pub struct LogicalBasis {
    pub pairs: Vec<(PauliWord, PauliWord)>,
}

impl LogicalBasis {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Entry `(i, j)` is set when X̄_i anticommutes with Z̄_j.
    pub fn pairing_matrix(&self) -> BitMatrix {
        let k = self.pairs.len();
        let mut m = BitMatrix::zeros(k, k);
        for (i, (x, _)) in self.pairs.iter().enumerate() {
            for (j, (_, z)) in self.pairs.iter().enumerate() {
                if !x.commutes(z).expect("basis words share a size") {
                    m.set(i, j, true);
                }
            }
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorClass {
    Stabilizer,
    Logical,
    DetectableError,
}

/// Swaps the X and Z halves of each symplectic row, so kernels give commutants.
fn swapped(m: &BitMatrix) -> BitMatrix {
    let n = m.n_cols() / 2;
    let cols: Vec<usize> = (n..2 * n).chain(0..n).collect();
    m.select_columns(&cols)
}

fn require_commuting(s: &StabilizerSet) -> Result<()> {
    s.check_commutation()
}

/// `k = n − rank` of the generator matrix.
pub fn num_logical_qubits(s: &StabilizerSet) -> Result<usize> {
    require_commuting(s)?;
    Ok(logical_count_unchecked(s))
}

pub(crate) fn logical_count_unchecked(s: &StabilizerSet) -> usize {
    let n = s.n_qubits();
    let rank = generator_rank(s);
    n - rank
}

/// Rank of the generator set (number of independent generators).
pub fn generator_rank(s: &StabilizerSet) -> usize {
    if s.is_css() {
        let (hx, hz) = rayon::join(|| s.x_matrix().rank(), || s.z_matrix().rank());
        hx + hz
    } else {
        s.symplectic_matrix().rank()
    }
}

/// Picks rows of `candidates` independent modulo `span`, in order.
fn independent_mod(span: &Echelon, candidates: &BitMatrix) -> Vec<BitVec> {
    let mut fresh = Echelon::empty(candidates.n_cols());
    let mut out = Vec::new();
    for v in candidates.rows() {
        let mut r = v.clone();
        span.reduce(&mut r);
        if fresh.insert(&r) {
            out.push(v);
        }
    }
    out
}

/// Inverse of a square invertible matrix over F_2.
fn invert(m: &BitMatrix) -> Option<BitMatrix> {
    let k = m.n_rows();
    let mut aug = BitMatrix::zeros(k, 2 * k);
    for i in 0..k {
        for j in m.row(i).iter_ones() {
            aug.set(i, j, true);
        }
        aug.set(i, k + i, true);
    }
    let (rref, pivots) = aug.row_reduce();
    if pivots.len() < k || pivots[k - 1] >= k {
        return None;
    }
    let cols: Vec<usize> = (k..2 * k).collect();
    Some(rref.select_columns(&cols))
}

/// Symplectic Gram–Schmidt over the centralizer modulo the stabilizer group.
pub fn logical_basis(s: &StabilizerSet) -> Result<LogicalBasis> {
    require_commuting(s)?;
    let n = s.n_qubits();
    if s.is_css() {
        let hx = s.x_matrix();
        let hz = s.z_matrix();
        let xs = independent_mod(&hx.echelon(), &hz.kernel_basis());
        let zs = independent_mod(&hz.echelon(), &hx.kernel_basis());
        let k = xs.len();
        debug_assert_eq!(k, zs.len());
        if k == 0 {
            return Ok(LogicalBasis::default());
        }
        // M_ij = x_i · z_j; replacing Z by M^{-T} Z makes the pairing the identity.
        let mut m = BitMatrix::zeros(k, k);
        for (i, x) in xs.iter().enumerate() {
            for (j, z) in zs.iter().enumerate() {
                if x.dot(z) {
                    m.set(i, j, true);
                }
            }
        }
        let inv_t = invert(&m)
            .ok_or_else(|| Error::Precondition("logical pairing is degenerate".into()))?
            .transpose();
        let zmat = BitMatrix::from_rows(n, &zs)?;
        let pairs = xs
            .into_iter()
            .enumerate()
            .map(|(i, x)| {
                let z = zmat.combine_rows(&inv_t.row(i));
                (PauliWord::pure_x(x), PauliWord::pure_z(z))
            })
            .collect();
        return Ok(LogicalBasis { pairs });
    }
    let stab = s.symplectic_matrix();
    let centralizer = swapped(&stab).kernel_basis();
    let mut pool: Vec<BitVec> = independent_mod(&stab.echelon(), &centralizer);
    let form = |a: &BitVec, b: &BitVec| {
        let (ax, az) = (a.slice(0, n), a.slice(n, 2 * n));
        let (bx, bz) = (b.slice(0, n), b.slice(n, 2 * n));
        ax.dot(&bz) ^ az.dot(&bx)
    };
    let mut pairs = Vec::new();
    while let Some(x) = pool.pop() {
        let Some(pos) = pool.iter().position(|z| form(&x, z)) else {
            return Err(Error::Precondition(
                "centralizer element commutes with every other logical".into(),
            ));
        };
        let z = pool.swap_remove(pos);
        for v in pool.iter_mut() {
            let (fx, fz) = (form(v, &x), form(v, &z));
            if fz {
                v.xor_assign(&x);
            }
            if fx {
                v.xor_assign(&z);
            }
        }
        pairs.push((
            PauliWord::from_symplectic(&x)?,
            PauliWord::from_symplectic(&z)?,
        ));
    }
    Ok(LogicalBasis { pairs })
}

pub fn classify(s: &StabilizerSet, op: &PauliWord) -> Result<OperatorClass> {
    if op.n_qubits() != s.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: s.n_qubits(),
            found: op.n_qubits(),
        });
    }
    for w in s.words() {
        if !w.commutes(op)? {
            return Ok(OperatorClass::DetectableError);
        }
    }
    let in_group = if s.is_css() {
        s.x_matrix().in_rowspace(op.x_bits())? && s.z_matrix().in_rowspace(op.z_bits())?
    } else {
        s.symplectic_matrix().in_rowspace(&op.to_symplectic())?
    };
    Ok(if in_group {
        OperatorClass::Stabilizer
    } else {
        OperatorClass::Logical
    })
}

fn region_mask(n: usize, region: &[usize]) -> Result<BitVec> {
    if let Some(&q) = region.iter().find(|&&q| q >= n) {
        return Err(Error::QubitOutOfRange {
            index: q,
            n_qubits: n,
        });
    }
    Ok(BitVec::from_indices(n, region.iter().copied()))
}

/// Independent logical representatives supported inside `region`: `dim K_R − dim S_R`.
pub fn count_logicals_in_region(s: &StabilizerSet, region: &[usize]) -> Result<usize> {
    let n = s.n_qubits();
    let mask = region_mask(n, region)?;
    let mut cols: Vec<usize> = mask.iter_ones().collect();
    if cols.is_empty() {
        return Ok(0);
    }
    if s.is_css() {
        let hx = s.x_matrix();
        let hz = s.z_matrix();
        let (kx, kz) = rayon::join(
            || cols.len() - hz.select_columns(&cols).rank(),
            || cols.len() - hx.select_columns(&cols).rank(),
        );
        let (sx, sz) = rayon::join(
            || hx.rowspace_restricted_to(&mask).map(|m| m.n_rows()),
            || hz.rowspace_restricted_to(&mask).map(|m| m.n_rows()),
        );
        return Ok(kx + kz - sx? - sz?);
    }
    let stab = s.symplectic_matrix();
    let mut both = cols.clone();
    both.extend(cols.iter().map(|c| c + n));
    let k_dim = both.len() - swapped(&stab).select_columns(&both).rank();
    let mut full_mask = BitVec::zeros(2 * n);
    for &c in &both {
        full_mask.set(c, true);
    }
    let s_dim = stab.rowspace_restricted_to(&full_mask)?.n_rows();
    cols.clear();
    Ok(k_dim - s_dim)
}

/// How the slab for [`min_support_width`] grows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlabProtocol {
    /// Slab of width `w` starting at coordinate `start`.
    FromStart(i64),
    /// Slab of width `w` centred on `center` (the lower middle for even widths).
    Centered(i64),
}

/// Qubits whose site coordinate along `axis` lies in `[lo, hi)`.
pub fn slab_region(s: &StabilizerSet, axis: Axis, lo: i64, hi: i64) -> Vec<usize> {
    let geom = s.geometry();
    let a = axis.index();
    geom.sites()
        .iter()
        .enumerate()
        .filter(|(_, p)| p[a] >= lo && p[a] < hi)
        .flat_map(|(i, _)| [2 * i, 2 * i + 1])
        .collect()
}

/// Smallest slab width along `axis` that supports a nontrivial logical representative.
pub fn min_support_width(
    s: &StabilizerSet,
    axis: Axis,
    protocol: SlabProtocol,
) -> Result<Option<usize>> {
    min_support_width_within(s, axis, protocol, None)
}

/// [`min_support_width`] with every slab intersected with the qubit set `within`.
///
/// Clipping to a neighbourhood of a defect keeps out operators that run from the defect to a
/// distant boundary inside a single layer.
pub fn min_support_width_within(
    s: &StabilizerSet,
    axis: Axis,
    protocol: SlabProtocol,
    within: Option<&[usize]>,
) -> Result<Option<usize>> {
    let l = s.geometry().dims()[axis.index()];
    let keep = within.map(|w| region_mask(s.n_qubits(), w)).transpose()?;
    if logical_count_unchecked(s) == 0 {
        return Ok(None);
    }
    for w in 1..=l {
        let (lo, hi) = match protocol {
            SlabProtocol::FromStart(start) => (start, start + w as i64),
            SlabProtocol::Centered(c) => {
                let lo = c - (w as i64 - 1) / 2;
                (lo, lo + w as i64)
            }
        };
        let mut region = slab_region(s, axis, lo, hi);
        if let Some(keep) = &keep {
            region.retain(|&q| keep.get(q));
        }
        if count_logicals_in_region(s, &region)? >= 1 {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Qubits on sites inside the box `lo ..= hi`.
pub fn box_region(s: &StabilizerSet, lo: [i64; 3], hi: [i64; 3]) -> Vec<usize> {
    s.geometry()
        .sites()
        .iter()
        .enumerate()
        .filter(|(_, p)| (0..3).all(|a| p[a] >= lo[a] && p[a] <= hi[a]))
        .flat_map(|(i, _)| [2 * i, 2 * i + 1])
        .collect()
}

/// Logical qubits left after promoting every logical supported in a gauge region to a gauge
/// operator: half the dimension of the centralizer modulo the gauge group.
pub fn gauge_out(s: &StabilizerSet, gauge_regions: &[Vec<usize>]) -> Result<usize> {
    require_commuting(s)?;
    let n = s.n_qubits();
    if !s.is_css() {
        return Err(Error::Precondition(
            "gauge_out needs a CSS stabilizer set".into(),
        ));
    }
    let mut gx = s.x_matrix();
    let mut gz = s.z_matrix();
    for region in gauge_regions {
        let mask = region_mask(n, region)?;
        let cols: Vec<usize> = mask.iter_ones().collect();
        if cols.is_empty() {
            continue;
        }
        for (dst, commutant) in [(&mut gx, s.z_matrix()), (&mut gz, s.x_matrix())] {
            let kernel = commutant.select_columns(&cols).kernel_basis();
            for k in kernel.rows() {
                let v = BitVec::from_indices(n, k.iter_ones().map(|c| cols[c]));
                dst.push_row(&v)?;
            }
        }
    }
    let sector = |g: &BitMatrix, other: &BitMatrix| -> Result<usize> {
        let c = other.kernel_basis();
        let g_rank = g.rank();
        let mut both = g.clone();
        both.append(&c)?;
        Ok(both.rank() - g_rank)
    };
    let (a, b) = rayon::join(|| sector(&gx, &gz), || sector(&gz, &gx));
    let total = a? + b?;
    Ok(total / 2)
}

/// Exact minimum weight of a logical operator, by enumeration; only for `n ≤ 14`.
pub fn brute_force_distance(s: &StabilizerSet) -> Result<Option<usize>> {
    let n = s.n_qubits();
    if n > 14 {
        return Err(Error::Precondition(format!(
            "brute-force distance limited to 14 qubits, got {n}"
        )));
    }
    require_commuting(s)?;
    if logical_count_unchecked(s) == 0 {
        return Ok(None);
    }
    let stab = s.symplectic_matrix();
    let ech = stab.echelon();
    let words: Vec<BitVec> = s.words().map(|w| w.to_symplectic()).collect();
    let mut best: Option<usize> = None;
    for bits in 1u64..(1u64 << (2 * n)) {
        let v = BitVec::from_indices(2 * n, (0..2 * n).filter(|i| bits >> i & 1 == 1));
        let w = PauliWord::from_symplectic(&v)?;
        let weight = w.weight();
        if best.is_some_and(|b| weight >= b) {
            continue;
        }
        let commutes = words
            .iter()
            .all(|g| PauliWord::from_symplectic(g).map(|g| g.commutes(&w)).ok() == Some(Ok(true)));
        if commutes && !ech.contains(&v) {
            best = Some(weight);
        }
    }
    Ok(best)
}
