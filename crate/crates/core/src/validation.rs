//! Golden checks: the engine against closed forms and known exact values.
//!
//! Each check returns an [`Outcome`]. A few defect families do not reproduce their closed forms;
//! those checks report a failure against the formula and separately compare the measured values
//! against pinned engine output, so regressions are still caught. See the README for the
//! analysis of those families.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{
    box_region, count_logicals_in_region, gauge_out, min_support_width, min_support_width_within,
    num_logical_qubits, slab_region, SlabProtocol,
};
use crate::closed_forms::{k_formula, k_ppp, tau, zmax, ConfigKey, Family};
use crate::error::{Error, Result};
use crate::excitation::{
    cascade_on_torus, fractal_double, pair_map_to_color_code, syndrome, zmax_via_operators, FVariant,
    Plane, Species,
};
use crate::gf2::{BitMatrix, BitVec};
use crate::lattice::{
    build_geometry, build_stabilizers, build_stabilizers_with, triangular_preset, Axis,
    BoundarySpec, BuildOptions, DefectSpec, Face, Flavor, GeneratorKind, Handedness, Site,
    StabilizerSet, StabilizerTemplate,
};
use crate::pauli::{Pauli, PauliWord};

/// Result of one golden check.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    /// Agreement with the closed form or exact reference.
    pub passed: bool,
    /// For known divergences: whether the measured values still equal the pinned engine output.
    pub pinned: Option<bool>,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    /// Passed, or a known divergence whose measurements are unchanged.
    pub fn acceptable(&self) -> bool {
        self.passed || self.pinned == Some(true)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} [{}] {}: {}", self.id, self.title, self.detail)?;
        match self.pinned {
            Some(true) => write!(f, " (known divergence, measurements match pinned values)")?,
            Some(false) => write!(f, " (known divergence, measurements CHANGED from pinned values)")?,
            None => {}
        }
        write!(f, " [{:.2?}]", self.elapsed)
    }
}

struct Report {
    passed: bool,
    pinned: Option<bool>,
    detail: String,
}

impl Report {
    fn new(passed: bool, detail: String) -> Self {
        Self {
            passed,
            pinned: None,
            detail,
        }
    }
}

type Check = fn(u64) -> Result<Report>;

const CHECKS: [(&str, &str, Check); 19] = [
    ("1", "periodic k(L)", check_periodic),
    ("2", "commutation suite", check_commutation_suite),
    ("3", "tetrahedral syndromes", check_tetrahedra),
    ("4", "open-boundary k column", check_open_table),
    ("5", "partly periodic k column", check_periodic_table),
    ("6", "z_max via layer-cleaning words", check_zmax),
    ("7", "doubling scales syndromes", check_doubling),
    ("8", "cascade scaling", check_cascade_scaling),
    ("9", "subsystem gauge-out", check_gauge_out),
    ("10a", "single periodic vacancy", check_single_vacancy),
    ("10b", "two periodic vacancies", check_two_periodic_vacancies),
    ("10c", "two bulk vacancies", check_two_bulk_vacancies),
    ("10d", "<mm> dislocation pair", check_edge_pair),
    ("10e", "periodic <ee> dislocation", check_edge_periodic),
    ("10f", "screw dislocations", check_screws),
    ("11", "support-width trend", check_support_width),
    ("12", "cleaning count", check_cleaning_count),
    ("13", "pair map", check_pair_map),
    ("14", "gf2 against dense oracle", check_gf2_oracle),
];

/// Identifiers of every check, in report order.
pub fn check_ids() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|(id, _, _)| *id)
}

/// Runs one check. `seed` drives the randomized checks (7 and 14).
pub fn run_check(id: &str, seed: u64) -> Result<Outcome> {
    let (id, title, f) = CHECKS
        .iter()
        .find(|(i, _, _)| *i == id)
        .ok_or_else(|| Error::Config(format!("unknown check {id:?}")))?;
    let start = Instant::now();
    let (passed, pinned, detail) = match f(seed) {
        Ok(r) => (r.passed, r.pinned, r.detail),
        Err(e) => (false, None, format!("error: {e}")),
    };
    Ok(Outcome {
        id,
        title,
        passed,
        pinned,
        detail,
        elapsed: start.elapsed(),
    })
}

/// Runs every check, possibly concurrently; results come back in report order.
pub fn run_all(seed: u64) -> Vec<Outcome> {
    let ids: Vec<&str> = check_ids().collect();
    ids.par_iter()
        .map(|id| run_check(id, seed).expect("ids come from the check table"))
        .collect()
}

fn stabilizers(dims: [usize; 3], faces: &str, defects: &[DefectSpec]) -> Result<StabilizerSet> {
    let b: BoundarySpec = faces.parse()?;
    build_stabilizers(&Arc::new(build_geometry(dims, &b, defects)?))
}

fn k_of(dims: [usize; 3], faces: &str, defects: &[DefectSpec]) -> Result<usize> {
    num_logical_qubits(&stabilizers(dims, faces, defects)?)
}

fn formula(key: ConfigKey) -> Result<usize> {
    k_formula(&key)?
        .exact()
        .map(|k| k as usize)
        .ok_or_else(|| Error::OutOfDomain(format!("{key} has no exact value")))
}

fn cube(l: usize) -> [usize; 3] {
    [l, l, l]
}

/// Compares engine and formula over a list of points; the detail lists mismatches.
fn compare(points: Vec<(String, usize, usize)>) -> Report {
    let bad: Vec<String> = points
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(label, got, want)| format!("{label}: engine {got}, formula {want}"))
        .collect();
    if bad.is_empty() {
        let listed: Vec<String> = points.iter().map(|(l, g, _)| format!("{l}={g}")).collect();
        Report::new(true, listed.join(" "))
    } else {
        Report::new(false, bad.join("; "))
    }
}

fn check_periodic(_: u64) -> Result<Report> {
    let mut points = Vec::new();
    let mut slowest = Duration::ZERO;
    for l in 2..=16usize {
        let t = Instant::now();
        let k = k_of(cube(l), "ppp;ppp", &[])?;
        slowest = slowest.max(t.elapsed());
        points.push((format!("L{l}"), k, k_ppp(l as u64)? as usize));
    }
    let mut r = compare(points);
    if slowest > Duration::from_secs(60) {
        r.passed = false;
    }
    r.detail = format!("{} (slowest point {slowest:.2?})", r.detail);
    Ok(r)
}

fn table_configs() -> Vec<String> {
    Family::all().filter_map(|f| f.boundary()).map(|b| b.to_string()).collect()
}

fn corrupted_templates() -> Vec<(String, StabilizerTemplate)> {
    let mut out = Vec::new();
    for z_type in [false, true] {
        for corner in 0..8 {
            for slot in 0..2 {
                for flip_z in [false, true] {
                    let mut t = StabilizerTemplate::cubic();
                    let table = if z_type { &mut t.cz } else { &mut t.cx };
                    let entry = &mut table[corner];
                    let p = if slot == 0 { &mut entry.0 } else { &mut entry.1 };
                    let (x, z) = p.bits();
                    *p = Pauli::from_bits(x ^ !flip_z, z ^ flip_z);
                    let label = format!(
                        "{}[{corner}].{} {}",
                        if z_type { "cz" } else { "cx" },
                        slot + 1,
                        if flip_z { "z" } else { "x" }
                    );
                    out.push((label, t));
                }
            }
        }
    }
    out
}

fn check_commutation_suite(_: u64) -> Result<Report> {
    let mut built = 0;
    let mut failures = Vec::new();
    for l in [5usize, 6] {
        for faces in table_configs() {
            match stabilizers(cube(l), &faces, &[]) {
                Ok(_) => built += 1,
                Err(e) => failures.push(format!("{faces} L={l}: {e}")),
            }
        }
        match triangular_preset(l).and_then(|g| build_stabilizers(&g)) {
            Ok(_) => built += 1,
            Err(e) => failures.push(format!("triangular L={l}: {e}")),
        }
    }
    let geom = Arc::new(build_geometry(cube(5), &BoundarySpec::periodic(), &[])?);
    let corruptions = corrupted_templates();
    let mut missed = Vec::new();
    for (label, template) in &corruptions {
        let opts = BuildOptions {
            template: *template,
            complete_seams: true,
        };
        if !matches!(build_stabilizers_with(&geom, &opts), Err(Error::Anticommuting { .. })) {
            missed.push(label.clone());
        }
    }
    let passed = failures.is_empty() && missed.is_empty();
    let detail = if passed {
        format!(
            "{built} configurations commute; {} single-bit corruptions all caught",
            corruptions.len()
        )
    } else {
        format!("build failures: {failures:?}; corruptions not caught: {missed:?}")
    };
    Ok(Report::new(passed, detail))
}

fn det3(a: Site, b: Site, c: Site) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn check_tetrahedra(_: u64) -> Result<Report> {
    let s = stabilizers(cube(6), "ppp;ppp", &[])?;
    let g = s.geometry();
    let site = g.site_index([3, 3, 3]).expect("bulk site exists");
    let mut notes = Vec::new();
    let mut ok = true;
    for (slot, p) in [(1u8, Pauli::X), (2, Pauli::X), (1, Pauli::Z), (2, Pauli::Z)] {
        let w = PauliWord::single(s.n_qubits(), g.qubit(site, slot), p)?;
        let syn = syndrome(&s, &w)?;
        let one_kind = syn.windows(2).all(|e| e[0].species == e[1].species);
        let independent = syn.len() == 4 && {
            let a = syn[0].anchor;
            let d = |i: usize| {
                let b = syn[i].anchor;
                [b[0] - a[0], b[1] - a[1], b[2] - a[2]]
            };
            det3(d(1), d(2), d(3)) != 0
        };
        ok &= syn.len() == 4 && one_kind && independent;
        notes.push(format!(
            "{}{slot}: {} {}",
            p.letter(),
            syn.len(),
            syn.first().map(|e| e.species.to_string()).unwrap_or_default()
        ));
    }
    Ok(Report::new(ok, notes.join(", ")))
}

fn check_open_table(_: u64) -> Result<Report> {
    use Family::*;
    let mut points = Vec::new();
    let mut add = |family: Family, dims: [usize; 3]| -> Result<()> {
        let k = match family.boundary() {
            Some(b) => k_of(dims, &b.to_string(), &[])?,
            None => num_logical_qubits(&build_stabilizers(&triangular_preset(dims[0])?)?)?,
        };
        let key = ConfigKey::with_dims(family, dims.map(|d| d as u64));
        let want = k_formula(&key)?;
        let label = format!("{family}{dims:?}");
        if let crate::closed_forms::KValue::Exact { clamped: true, .. } = want {
            return Err(Error::OutOfDomain(format!("{label} is in the clamped range")));
        }
        points.push((label, k, formula(key)?));
        Ok(())
    };
    for lz in [3, 4, 5] {
        add(Tennis1, [11, 11, lz])?;
    }
    for lz in [5, 6, 7] {
        add(Tennis2, [7, 7, lz])?;
    }
    for l in [4, 5, 6] {
        add(Tube, cube(l))?;
    }
    for family in [OnlyE, OneM, OneMabc, TwoMabc, MAndMabc, HalfHalf1] {
        add(family, cube(5))?;
    }
    for l in [5, 6] {
        add(TwoMFaces, cube(l))?;
        add(HalfHalf2, cube(l))?;
    }
    for l in [4, 5] {
        add(Triangular, cube(l))?;
    }
    Ok(compare(points))
}

fn check_periodic_table(_: u64) -> Result<Report> {
    let families = [
        Family::PpePpe,
        Family::PpmPpe,
        Family::PmmPem,
        Family::PemPem,
        Family::PpePpm,
        Family::PemPme,
        Family::PemPmm,
        Family::PmmPmm,
        Family::PmmPee,
        Family::PeePmm,
    ];
    let jobs: Vec<(Family, usize)> = families
        .iter()
        .flat_map(|&f| [4usize, 6, 9, 12].map(|l| (f, l)))
        .collect();
    let points = jobs
        .par_iter()
        .map(|&(f, l)| {
            let faces = f.boundary().expect("table II families are boxes").to_string();
            let k = k_of(cube(l), &faces, &[])?;
            Ok((format!("{f}@{l}"), k, formula(ConfigKey::cube(f, l as u64))?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(compare(points))
}

fn check_zmax(_: u64) -> Result<Report> {
    let points = [3usize, 6, 9, 12]
        .iter()
        .map(|&l| Ok((format!("L{l}"), zmax_via_operators(l)?, zmax(l as u64) as usize)))
        .collect::<Result<Vec<_>>>()?;
    Ok(compare(points))
}

fn check_doubling(seed: u64) -> Result<Report> {
    let l = 16i64;
    let s = stabilizers(cube(l as usize), "ppp;ppp", &[])?;
    let g = s.geometry().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words = 0;
    let mut anchors = 0;
    let mut bad = Vec::new();
    while words < 20 {
        let p = if rng.gen_bool(0.5) { Pauli::X } else { Pauli::Z };
        let mut w = PauliWord::identity(s.n_qubits());
        for _ in 0..rng.gen_range(1..=4) {
            let site = [6 + rng.gen_range(0..3), 6 + rng.gen_range(0..3), 6 + rng.gen_range(0..3)];
            let q = g.qubit(g.site_index(site).expect("bulk site"), rng.gen_range(1..=2));
            w.apply(q, p)?;
        }
        let syn = syndrome(&s, &w)?;
        if syn.len() < 2 {
            continue;
        }
        words += 1;
        for (i, e) in syn.iter().enumerate() {
            anchors += 1;
            let a = e.anchor;
            let mut want: Vec<Site> = syn
                .iter()
                .map(|c| [0, 1, 2].map(|k| (2 * c.anchor[k] - a[k]).rem_euclid(l)))
                .collect();
            want.sort_unstable();
            let mut got: Vec<Site> = syndrome(&s, &fractal_double(&s, &w, i)?)?
                .iter()
                .map(|c| c.anchor)
                .collect();
            got.sort_unstable();
            if got != want {
                bad.push(format!("word {words} anchor {i}"));
            }
        }
    }
    let detail = format!("{words} words, {anchors} anchor choices, {} mismatches {bad:?}", bad.len());
    Ok(Report::new(bad.is_empty(), detail))
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

/// `(Δ, weight, peak energy)` of the `F_m^{yz}` cascade along `z`.
pub fn cascade_series(deltas: &[usize]) -> Result<Vec<(usize, usize, usize)>> {
    let v = FVariant::new(Species::M, Plane::YZ);
    deltas
        .par_iter()
        .map(|&d| cascade_on_torus(v, Axis::Z, d).map(|c| (d, c.weight, c.profile.peak)))
        .collect()
}

fn check_cascade_scaling(_: u64) -> Result<Report> {
    let series = cascade_series(&[2, 4, 8, 16, 32])?;
    let w: Vec<(f64, f64)> = series.iter().map(|&(d, w, _)| (d as f64, w as f64)).collect();
    let p: Vec<(f64, f64)> = series.iter().map(|&(d, _, p)| (d as f64, p as f64)).collect();
    let (sw, sp) = (log_log_slope(&w), log_log_slope(&p));
    let detail = format!(
        "weight slope {sw:.3} (> 1.05), peak slope {sp:.3} (<= 1.3); weights {:?} peaks {:?}",
        series.iter().map(|t| t.1).collect::<Vec<_>>(),
        series.iter().map(|t| t.2).collect::<Vec<_>>()
    );
    Ok(Report::new(sw > 1.05 && sp <= 1.3, detail))
}

/// The two gauge slabs `z ∈ [⌈2L_z/3⌉, L_z)` and `z ∈ [0, ⌊L_z/3⌋)`.
pub fn tennis_gauge_regions(s: &StabilizerSet) -> Vec<Vec<usize>> {
    let lz = s.geometry().dims()[2] as i64;
    vec![
        slab_region(s, Axis::Z, (2 * lz + 2) / 3, lz),
        slab_region(s, Axis::Z, 0, lz / 3),
    ]
}

fn check_gauge_out(_: u64) -> Result<Report> {
    let points = [6usize, 7, 9]
        .iter()
        .map(|&lz| {
            let s = stabilizers([11, 11, lz], "mem;mee", &[])?;
            let k = gauge_out(&s, &tennis_gauge_regions(&s))?;
            let key: ConfigKey = format!("subsystem_tennis1 lz={lz}").parse()?;
            Ok((format!("Lz{lz}"), k, formula(key)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(compare(points))
}

fn periodic_vacancies(v: usize, lz: usize) -> (Vec<DefectSpec>, [usize; 3]) {
    let defects = (0..v)
        .map(|i| DefectSpec::vacancy(Flavor::M, [5 + 9 * i as i64, 5, 0], [2, 2, lz]))
        .collect();
    (defects, [14 + 8 * (v - 1), 14, lz])
}

fn check_single_vacancy(_: u64) -> Result<Report> {
    let points = [5usize, 6]
        .iter()
        .map(|&lz| {
            let (defects, dims) = periodic_vacancies(1, lz);
            let key: ConfigKey = format!("vacancy_periodic lz={lz}").parse()?;
            Ok((format!("Lz{lz}"), k_of(dims, "eep;eep", &defects)?, formula(key)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(compare(points))
}

fn check_two_periodic_vacancies(_: u64) -> Result<Report> {
    let (defects, dims) = periodic_vacancies(2, 5);
    let key: ConfigKey = "vacancies_periodic_v lz=5 v=2".parse()?;
    Ok(compare(vec![("v2 Lz5".into(), k_of(dims, "eep;eep", &defects)?, formula(key)?)]))
}

/// Two `<m>` vacancies stacked along z: `(w_x, 1, 1)` at z = 2 and `(2, 2, 1)` after `delta`
/// empty layers, sharing their lowest x, y corner.
pub fn two_bulk_vacancies(wx: usize, delta: usize) -> Vec<DefectSpec> {
    vec![
        DefectSpec::vacancy(Flavor::M, [6, 5, 2], [wx, 1, 1]),
        DefectSpec::vacancy(Flavor::M, [6, 5, 3 + delta as i64], [2, 2, 1]),
    ]
}

fn check_two_bulk_vacancies(_: u64) -> Result<Report> {
    let points = (2usize..=6)
        .map(|wx| {
            let k = k_of([24, 12, 16], "eee;eee", &two_bulk_vacancies(wx, 4))?;
            let key: ConfigKey = format!("two_vacancies_bulk w1={wx},1 delta=4").parse()?;
            Ok((format!("wx{wx}"), k, formula(key)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(compare(points))
}

/// Pinned divergence: compares against the formula, then against recorded engine output.
fn divergence(points: Vec<(String, usize, usize)>, pinned: &[usize], extra: String) -> Report {
    let measured: Vec<usize> = points.iter().map(|p| p.1).collect();
    let mut r = compare(points);
    r.pinned = Some(measured == pinned);
    r.detail = format!("{}; {extra}", r.detail);
    r
}

/// Two `<mm>` edge dislocations along x of height `h`, `h` columns apart, lower corner at `(m, m)`.
pub fn edge_pair(h: usize, m: i64) -> Vec<DefectSpec> {
    vec![
        DefectSpec::edge(Axis::X, [m, m], h, (Flavor::M, Flavor::M)),
        DefectSpec::edge(Axis::X, [m + h as i64, m], h, (Flavor::M, Flavor::M)),
    ]
}

fn check_edge_pair(_: u64) -> Result<Report> {
    let ks = [4usize, 5, 6]
        .iter()
        .map(|&lx| k_of([lx, 18, 15], "eee;eee", &edge_pair(3, 6)))
        .collect::<Result<Vec<_>>>()?;
    let diffs: Vec<i64> = ks.iter().zip([4i64, 5, 6]).map(|(&k, lx)| k as i64 - 4 * lx).collect();
    let constant = diffs.windows(2).all(|w| w[0] == w[1]);
    let detail = format!("k = {ks:?} for Lx = 4,5,6; k - 4Lx = {diffs:?}");
    let mut r = Report::new(constant, detail);
    r.pinned = Some(ks == [14, 20, 26]);
    Ok(r)
}

fn check_edge_periodic(_: u64) -> Result<Report> {
    let points = [4usize, 5, 6]
        .iter()
        .map(|&lx| {
            let def = DefectSpec::edge(Axis::X, [7, 6], 4, (Flavor::E, Flavor::E));
            let k = k_of([lx, 14, 18], "pee;pee", &[def])?;
            let key: ConfigKey = format!("edge_periodic lx={lx} flavors=ee").parse()?;
            Ok((format!("Lx{lx}"), k, formula(key)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let extra = format!("2Lx + 4tau(Lx) + (2 or 1) = {:?}", [4u64, 5, 6].map(|l| 2 * l + 4 * tau(l, None) + if l % 2 == 0 { 2 } else { 1 }));
    Ok(divergence(points, &[10, 11, 22], extra))
}

fn check_screws(_: u64) -> Result<Report> {
    let screw = |x: i64, h| DefectSpec::screw(Axis::Z, [x, 7], h);
    let mut points = Vec::new();
    for lz in [5usize, 6] {
        let dims = [14, 14, lz];
        let key = |text: String| -> Result<usize> { formula(text.parse()?) };
        points.push((
            format!("single Lz{lz}"),
            k_of(dims, "eep;eep", &[screw(5, Handedness::R)])?,
            key(format!("screw_single lz={lz}"))?,
        ));
        for d in [2usize, 3] {
            let x2 = 5 + d as i64;
            points.push((
                format!("LR Lz{lz} d{d}"),
                k_of(dims, "eep;eep", &[screw(5, Handedness::L), screw(x2, Handedness::R)])?,
                key(format!("screw_LR lz={lz} delta={d}"))?,
            ));
            points.push((
                format!("RR Lz{lz} d{d}"),
                k_of(dims, "eep;eep", &[screw(5, Handedness::R), screw(x2, Handedness::R)])?,
                key(format!("screw_same lz={lz} delta={d}"))?,
            ));
        }
    }
    let pinned = [1, 11, 11, 10, 10, 9, 21, 21, 20, 20];
    Ok(divergence(points, &pinned, "engine: single 4tau + 1, pairs 2Lz + O(1)".into()))
}

/// Widths for the `<mm>` pair with `Δ = h`, slabs clipped to a box of margin `h` around the
/// four twist lines. Also returns the unclipped widths.
pub fn support_widths(h: usize) -> Result<(Option<usize>, Option<usize>)> {
    let r = h as i64;
    let m = r + 6;
    let hh = h as i64;
    let dims = [16, 2 * m as usize + 2 * h, 2 * m as usize + h];
    let s = stabilizers(dims, "eee;eee", &edge_pair(h, m))?;
    let region = box_region(&s, [0, m - r, m - r], [15, m + 2 * hh + r - 1, m + hh + r - 1]);
    let clipped = min_support_width_within(&s, Axis::X, SlabProtocol::Centered(8), Some(&region))?;
    let full = min_support_width(&s, Axis::X, SlabProtocol::Centered(8))?;
    Ok((clipped, full))
}

fn check_support_width(_: u64) -> Result<Report> {
    let widths = [2usize, 3, 4, 5]
        .par_iter()
        .map(|&h| support_widths(h))
        .collect::<Result<Vec<_>>>()?;
    let clipped: Vec<Option<usize>> = widths.iter().map(|w| w.0).collect();
    let full: Vec<Option<usize>> = widths.iter().map(|w| w.1).collect();
    let vals: Option<Vec<usize>> = clipped.iter().copied().collect();
    let passed = vals.as_ref().is_some_and(|v| {
        v.windows(2).all(|w| w[0] <= w[1]) && v.windows(2).filter(|w| w[0] < w[1]).count() >= 2
    });
    let detail = format!("h = 2..5: clipped widths {clipped:?}; unclipped {full:?}");
    Ok(Report::new(passed, detail))
}

fn check_cleaning_count(_: u64) -> Result<Report> {
    let s = stabilizers([11, 11, 5], "mem;mee", &[])?;
    let n = count_logicals_in_region(&s, &slab_region(&s, Axis::Z, 2, 3))?;
    Ok(Report::new(n == 4, format!("z = 2 plane supports {n} logicals")))
}

fn commutation_matrix(words: &[PauliWord]) -> Result<Vec<Vec<bool>>> {
    words
        .iter()
        .map(|a| words.iter().map(|b| a.commutes(b)).collect())
        .collect()
}

fn check_pair_map(_: u64) -> Result<Report> {
    let s = stabilizers([5, 5, 5], "mpp;epp", &[])?;
    let g = s.geometry().clone();
    let mut notes = Vec::new();
    let mut ok = true;
    for (face, kind) in [
        (Face::new(Axis::X, true), GeneratorKind::PlaquetteX),
        (Face::new(Axis::X, false), GeneratorKind::PlaquetteZ),
    ] {
        let layers = if face.positive { [3, 4] } else { [0, 1] };
        let in_layers = |w: &PauliWord| w.support().iter().all(|q| layers.contains(&g.site(q / 2)[0]));
        let gens: Vec<_> = s.generators().iter().filter(|gen| in_layers(&gen.word)).collect();
        let mut words: Vec<PauliWord> = gens.iter().map(|gen| gen.word.clone()).collect();
        let plaquettes: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].kind == kind).collect();
        // Single-qubit probes make the commutation matrix nontrivial.
        for (site, p) in g.sites().iter().enumerate() {
            if p[0] == layers[0] && p[1] < 2 {
                for slot in [1, 2] {
                    for pauli in [Pauli::X, Pauli::Z] {
                        words.push(PauliWord::single(g.n_qubits(), g.qubit(site, slot), pauli)?);
                    }
                }
            }
        }
        let mapped = pair_map_to_color_code(&g, face, &words)?;
        let same = commutation_matrix(&words)? == commutation_matrix(&mapped)?;
        let weights: Vec<usize> = plaquettes.iter().map(|&i| mapped[i].weight()).collect();
        let six = !weights.is_empty() && weights.iter().all(|&w| w == 6);
        ok &= same && six;
        notes.push(format!(
            "{face}: {} words, commutation {}, {} plaquettes of weight {:?}",
            words.len(),
            if same { "preserved" } else { "CHANGED" },
            weights.len(),
            weights.iter().min().zip(weights.iter().max())
        ));
    }
    Ok(Report::new(ok, notes.join("; ")))
}

/// Dense brute-force GF(2) reference used to validate the bit-packed kernels.
pub mod reference {
    use std::collections::BTreeSet;

    use crate::gf2::{BitMatrix, BitVec};

    fn as_u64(v: &BitVec) -> u64 {
        v.iter_ones().fold(0, |acc, i| acc | 1 << i)
    }

    /// Every vector in the row space, as bitmasks.
    pub fn rowspace(m: &BitMatrix) -> BTreeSet<u64> {
        let rows: Vec<u64> = m.rows().map(|r| as_u64(&r)).collect();
        (0u64..1 << rows.len())
            .map(|c| {
                rows.iter()
                    .enumerate()
                    .filter(|(i, _)| c >> i & 1 == 1)
                    .fold(0, |acc, (_, r)| acc ^ r)
            })
            .collect()
    }

    pub fn rank(m: &BitMatrix) -> usize {
        rowspace(m).len().trailing_zeros() as usize
    }

    /// Every `x` with `M x = 0`.
    pub fn kernel(m: &BitMatrix) -> BTreeSet<u64> {
        let rows: Vec<u64> = m.rows().map(|r| as_u64(&r)).collect();
        (0u64..1 << m.n_cols())
            .filter(|x| rows.iter().all(|r| (r & x).count_ones() % 2 == 0))
            .collect()
    }

    /// Row-space vectors supported inside `mask`.
    pub fn restricted(m: &BitMatrix, mask: &BitVec) -> BTreeSet<u64> {
        let mk = as_u64(mask);
        rowspace(m).into_iter().filter(|v| v & !mk == 0).collect()
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BitMatrix {
    let density = rng.gen_range(0.1..0.9);
    let rs: Vec<BitVec> = (0..rows)
        .map(|_| BitVec::from_bools(&(0..cols).map(|_| rng.gen_bool(density)).collect::<Vec<_>>()))
        .collect();
    BitMatrix::from_rows(cols, &rs).expect("rows have the right length")
}

fn check_gf2_oracle(seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9f2);
    let mut bad = Vec::new();
    for trial in 0..500 {
        let (r, c) = (rng.gen_range(1..=10), rng.gen_range(1..=10));
        let m = random_matrix(&mut rng, r, c);
        let mask = BitVec::from_bools(&(0..c).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
        let rank_ok = m.rank() == reference::rank(&m);
        let ker = m.kernel_basis();
        let ker_ok = ker.n_rows() == c - m.rank() && reference::rowspace(&ker) == reference::kernel(&m);
        let restricted = m.rowspace_restricted_to(&mask)?;
        let res_ok = reference::rowspace(&restricted) == reference::restricted(&m, &mask);
        if !(rank_ok && ker_ok && res_ok) {
            bad.push(format!("trial {trial} ({r}x{c}): rank {rank_ok} kernel {ker_ok} restriction {res_ok}"));
        }
    }
    Ok(Report::new(bad.is_empty(), format!("500 matrices, {} disagreements {bad:?}", bad.len())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [1.0f64, 2.0, 4.0, 8.0].iter().map(|&x| (x, 3.0 * x.powf(1.5))).collect();
        assert!((log_log_slope(&pts) - 1.5).abs() < 1e-9);
    }

    #[test]
    fn ids_are_unique_and_runnable() {
        let ids: Vec<&str> = check_ids().collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        assert!(run_check("nope", 0).is_err());
        let o = run_check("3", 0).unwrap();
        assert!(o.passed, "{o}");
    }
}
