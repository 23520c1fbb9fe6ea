//! Closed-form encoded-qubit counts used as golden references for the numerical engine.
//!
//! Every function here is pure. Formulas that are empirical fits can go negative at tiny sizes;
//! those are clamped at zero and the clamp is reported in [`KValue::Exact::clamped`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::BoundarySpec;

/// 1 if `n` divides `l`, else 0.
pub fn q(n: u64, l: u64) -> u64 {
    u64::from(n != 0 && l.is_multiple_of(n))
}

/// Largest power of two dividing `l`. By convention `zeta(0) = 0`.
pub fn zeta(l: u64) -> u64 {
    if l == 0 {
        0
    } else {
        1 << l.trailing_zeros()
    }
}

/// [`zeta`] of the rational `num / den`: zero unless the ratio is an integer.
pub fn zeta_ratio(num: u64, den: u64) -> u64 {
    if den == 0 || !num.is_multiple_of(den) {
        0
    } else {
        zeta(num / den)
    }
}

/// `min(ζ(l1 / 3), l2)`; `None` stands for an unbounded second argument.
pub fn tau(l1: u64, l2: Option<u64>) -> u64 {
    let z = zeta_ratio(l1, 3);
    l2.map_or(z, |b| z.min(b))
}

/// Number of z layers the periodic layer-cleaning words can clear: `ζ(L / 3)`.
pub fn zmax(l: u64) -> u64 {
    zeta_ratio(l, 3)
}

/// Periodic cubic code, valid for `2 ≤ L ≤ 200`.
pub fn k_ppp(l: u64) -> Result<u64> {
    if !(2..=200).contains(&l) {
        return Err(Error::OutOfDomain(format!("periodic formula holds for 2 <= L <= 200, got {l}")));
    }
    let (q2, q15, q63) = (q(2, l), q(15, l), q(63, l));
    Ok(2 * (1 + 2 * zeta(l) * (q2 + 12 * q15 + 60 * q63) - 2 * q2))
}

/// Configuration families with a closed-form `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Ppp,
    OnlyE,
    OneM,
    OneMabc,
    TwoMFaces,
    TwoMabc,
    MAndMabc,
    Tennis1,
    Tennis2,
    Tube,
    HalfHalf1,
    HalfHalf2,
    Triangular,
    PpePpe,
    PpmPpe,
    PpePpm,
    PmmPem,
    PemPem,
    PemPme,
    PemPmm,
    PmmPmm,
    PmmPee,
    PeePmm,
    SubsystemTennis1,
    VacancyPeriodic,
    VacanciesPeriodicV,
    VacanciesMmp,
    TwoVacanciesBulk,
    EdgePairBulk,
    EdgePeriodic,
    ScrewSingle,
    #[serde(rename = "screw_LR")]
    ScrewLR,
    ScrewSame,
}

const NAMES: [(Family, &str); 33] = [
    (Family::Ppp, "ppp"),
    (Family::OnlyE, "only_e"),
    (Family::OneM, "one_m"),
    (Family::OneMabc, "one_mabc"),
    (Family::TwoMFaces, "two_m_faces"),
    (Family::TwoMabc, "two_mabc"),
    (Family::MAndMabc, "m_and_mabc"),
    (Family::Tennis1, "tennis1"),
    (Family::Tennis2, "tennis2"),
    (Family::Tube, "tube"),
    (Family::HalfHalf1, "half_half_1"),
    (Family::HalfHalf2, "half_half_2"),
    (Family::Triangular, "triangular"),
    (Family::PpePpe, "ppe_ppe"),
    (Family::PpmPpe, "ppm_ppe"),
    (Family::PpePpm, "ppe_ppm"),
    (Family::PmmPem, "pmm_pem"),
    (Family::PemPem, "pem_pem"),
    (Family::PemPme, "pem_pme"),
    (Family::PemPmm, "pem_pmm"),
    (Family::PmmPmm, "pmm_pmm"),
    (Family::PmmPee, "pmm_pee"),
    (Family::PeePmm, "pee_pmm"),
    (Family::SubsystemTennis1, "subsystem_tennis1"),
    (Family::VacancyPeriodic, "vacancy_periodic"),
    (Family::VacanciesPeriodicV, "vacancies_periodic_v"),
    (Family::VacanciesMmp, "vacancies_mmp"),
    (Family::TwoVacanciesBulk, "two_vacancies_bulk"),
    (Family::EdgePairBulk, "edge_pair_bulk"),
    (Family::EdgePeriodic, "edge_periodic"),
    (Family::ScrewSingle, "screw_single"),
    (Family::ScrewLR, "screw_LR"),
    (Family::ScrewSame, "screw_same"),
];

/// Boundary notation of the families that are plain boxes.
const BOUNDARIES: [(Family, &str); 22] = [
    (Family::Ppp, "ppp;ppp"),
    (Family::OnlyE, "eee;eee"),
    (Family::OneM, "eee;mee"),
    (Family::OneMabc, "mee;eee"),
    (Family::TwoMFaces, "eee;mem"),
    (Family::TwoMabc, "mem;eee"),
    (Family::MAndMabc, "mee;eme"),
    (Family::Tennis1, "mem;mee"),
    (Family::Tennis2, "mee;mem"),
    (Family::Tube, "mee;mee"),
    (Family::HalfHalf1, "mmm;eee"),
    (Family::HalfHalf2, "eee;mmm"),
    (Family::PpePpe, "ppe;ppe"),
    (Family::PpmPpe, "ppm;ppe"),
    (Family::PpePpm, "ppe;ppm"),
    (Family::PmmPem, "pmm;pem"),
    (Family::PemPem, "pem;pem"),
    (Family::PemPme, "pem;pme"),
    (Family::PemPmm, "pem;pmm"),
    (Family::PmmPmm, "pmm;pmm"),
    (Family::PmmPee, "pmm;pee"),
    (Family::PeePmm, "pee;pmm"),
];

impl Family {
    pub fn all() -> impl Iterator<Item = Family> {
        NAMES.iter().map(|&(f, _)| f)
    }

    pub fn name(self) -> &'static str {
        NAMES.iter().find(|(f, _)| *f == self).map(|(_, n)| *n).unwrap_or("?")
    }

    /// Boundary notation for box families, `None` for presets and defect families.
    pub fn boundary(self) -> Option<BoundarySpec> {
        BOUNDARIES
            .iter()
            .find(|(f, _)| *f == self)
            .map(|(_, b)| b.parse().expect("table entries are valid notation"))
    }

    /// The box family whose faces are exactly `spec`.
    pub fn for_boundary(spec: &BoundarySpec) -> Option<Family> {
        BOUNDARIES
            .iter()
            .find(|(_, b)| b.parse::<BoundarySpec>().ok().as_ref() == Some(spec))
            .map(|(f, _)| *f)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        NAMES
            .iter()
            .find(|(_, n)| n.eq_ignore_ascii_case(t))
            .map(|(f, _)| *f)
            .ok_or_else(|| Error::Config(format!("unknown family {t:?}")))
    }
}

/// Twist flavors of an edge dislocation, as in `<mm>` or `<em>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistPair(pub char, pub char);

impl TwistPair {
    pub fn same_type(self) -> bool {
        self.0 == self.1
    }
}

impl FromStr for TwistPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: Vec<char> = s
            .trim_matches(|c| c == '<' || c == '>')
            .chars()
            .map(|c| c.to_ascii_lowercase())
            .collect();
        match t.as_slice() {
            [a @ ('e' | 'm'), b @ ('e' | 'm')] => Ok(TwistPair(*a, *b)),
            _ => Err(Error::Config(format!("twist flavors must be two of e/m, got {s:?}"))),
        }
    }
}

/// A family together with whichever parameters its formula needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigKey {
    pub family: Family,
    pub dims: Option<[u64; 3]>,
    /// Number of vacancies.
    pub v: Option<u64>,
    /// Separation between the two defects.
    pub delta: Option<u64>,
    /// Dislocation height.
    pub h: Option<u64>,
    /// `(w_1x, w_1y)` of the lower vacancy.
    pub w1: Option<[u64; 2]>,
    pub flavors: Option<TwistPair>,
    /// Confining length used in `τ`; `None` is unbounded.
    pub l_inf: Option<u64>,
}

impl ConfigKey {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            dims: None,
            v: None,
            delta: None,
            h: None,
            w1: None,
            flavors: None,
            l_inf: None,
        }
    }

    pub fn with_dims(family: Family, dims: [u64; 3]) -> Self {
        Self {
            dims: Some(dims),
            ..Self::new(family)
        }
    }

    pub fn cube(family: Family, l: u64) -> Self {
        Self::with_dims(family, [l, l, l])
    }

    fn need<T: Copy>(&self, v: Option<T>, what: &str) -> Result<T> {
        v.ok_or_else(|| Error::OutOfDomain(format!("{} needs parameter {what}", self.family)))
    }

    fn dims_checked(&self) -> Result<[u64; 3]> {
        let d = self.need(self.dims, "dims")?;
        if d.iter().any(|&l| l < 2) {
            return Err(Error::OutOfDomain(format!("dims must be at least 2, got {d:?}")));
        }
        Ok(d)
    }

    fn cube_side(&self) -> Result<u64> {
        let [lx, ly, lz] = self.dims_checked()?;
        if lx != ly || ly != lz {
            return Err(Error::OutOfDomain(format!(
                "{} is only defined for L = Lx = Ly = Lz",
                self.family
            )));
        }
        Ok(lx)
    }
}

impl fmt::Display for ConfigKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if let Some([x, y, z]) = self.dims {
            write!(f, " dims={x},{y},{z}")?;
        }
        for (k, v) in [("v", self.v), ("delta", self.delta), ("h", self.h), ("linf", self.l_inf)] {
            if let Some(v) = v {
                write!(f, " {k}={v}")?;
            }
        }
        if let Some([a, b]) = self.w1 {
            write!(f, " w1={a},{b}")?;
        }
        if let Some(TwistPair(a, b)) = self.flavors {
            write!(f, " flavors={a}{b}")?;
        }
        Ok(())
    }
}

impl FromStr for ConfigKey {
    type Err = Error;

    /// `family key=value ...` with keys `dims` (or `L` for a cube), `lx`/`lz` shorthands,
    /// `v`, `delta`, `h`, `w1=a,b`, `flavors=mm` and `linf`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let family: Family = parts
            .next()
            .ok_or_else(|| Error::Config("empty oracle key".into()))?
            .parse()?;
        let mut kv = BTreeMap::new();
        for p in parts {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value, got {p:?}")))?;
            if kv.insert(k.to_ascii_lowercase(), v.to_string()).is_some() {
                return Err(Error::Config(format!("duplicate key {k:?}")));
            }
        }
        ConfigKey::from_params(family, &kv)
    }
}

fn parse_u64(key: &str, v: &str) -> Result<u64> {
    v.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key} must be a non-negative integer, got {v:?}")))
}

fn parse_list<const N: usize>(key: &str, v: &str) -> Result<[u64; N]> {
    let items = v.split(',').map(|x| parse_u64(key, x)).collect::<Result<Vec<_>>>()?;
    items
        .try_into()
        .map_err(|_| Error::Config(format!("{key} needs {N} comma-separated values, got {v:?}")))
}

impl ConfigKey {
    pub fn from_params(family: Family, kv: &BTreeMap<String, String>) -> Result<Self> {
        let mut key = ConfigKey::new(family);
        for (k, v) in kv {
            match k.as_str() {
                "dims" => key.dims = Some(parse_list::<3>(k, v)?),
                "l" => {
                    let l = parse_u64(k, v)?;
                    key.dims = Some([l, l, l]);
                }
                // Defect families only read one length; the others are placeholders.
                "lx" => key.dims = Some([parse_u64(k, v)?, 2, 2]),
                "lz" => key.dims = Some([2, 2, parse_u64(k, v)?]),
                "v" => key.v = Some(parse_u64(k, v)?),
                "delta" => key.delta = Some(parse_u64(k, v)?),
                "h" => key.h = Some(parse_u64(k, v)?),
                "w1" => key.w1 = Some(parse_list::<2>(k, v)?),
                "flavors" => key.flavors = Some(v.parse()?),
                "linf" => key.l_inf = Some(parse_u64(k, v)?),
                other => return Err(Error::Config(format!("unknown oracle parameter {other:?}"))),
            }
        }
        Ok(key)
    }
}

/// Result of [`k_formula`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KValue {
    /// `raw` is the formula before clamping; `clamped` is set when `raw < 0`.
    Exact { k: u64, raw: i64, clamped: bool },
    /// Only `k − linear` is fixed, to a constant that depends on the defect details.
    LinearPlusConstant { linear: u64 },
}

impl KValue {
    fn from_raw(raw: i64) -> Self {
        KValue::Exact {
            k: raw.max(0) as u64,
            raw,
            clamped: raw < 0,
        }
    }

    pub fn exact(self) -> Option<u64> {
        match self {
            KValue::Exact { k, .. } => Some(k),
            KValue::LinearPlusConstant { .. } => None,
        }
    }
}

impl fmt::Display for KValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KValue::Exact { k, clamped: false, .. } => write!(f, "{k}"),
            KValue::Exact { k, raw, clamped: true } => write!(f, "{k} (clamped from {raw})"),
            KValue::LinearPlusConstant { linear } => write!(f, "{linear} + const"),
        }
    }
}

/// Closed-form `k` for `key`.
pub fn k_formula(key: &ConfigKey) -> Result<KValue> {
    use Family::*;
    let i = |x: u64| x as i64;
    let raw = match key.family {
        OnlyE | OneM | OneMabc | TwoMabc | MAndMabc | HalfHalf1 | PpePpm | PemPme | PemPmm
        | PmmPmm | PmmPee | PeePmm => {
            key.dims_checked()?;
            0
        }
        Ppp => i(k_ppp(key.cube_side()?)?),
        Tennis1 => 2 * i(key.dims_checked()?[2]),
        Tennis2 => 2 * i(key.dims_checked()?[2]) - 6,
        Tube => {
            let [lx, ly, lz] = key.dims_checked()?;
            2 * (i(ly) + i(lz) - i(lx)) - 3
        }
        TwoMFaces => {
            let [lx, _, lz] = key.dims_checked()?;
            2 * i(lx.min(lz)) - 6
        }
        HalfHalf2 => 4 * i(*key.dims_checked()?.iter().min().unwrap()) - 12,
        Triangular => {
            let l = key.cube_side()?;
            if l < 4 {
                return Err(Error::OutOfDomain(format!("triangular split needs L >= 4, got {l}")));
            }
            4 * i(l) - 4
        }
        PpePpe => {
            let l = key.cube_side()?;
            i(k_ppp(l)? / 2 + 2 * tau(l, None))
        }
        PpmPpe => {
            let [lx, ly, lz] = key.dims_checked()?;
            4 * i(tau(lx, Some(lz)).min(tau(ly, Some(lz))))
        }
        PmmPem => {
            let [lx, _, lz] = key.dims_checked()?;
            2 * i(tau(lx, Some(lz)))
        }
        PemPem => 2 * i(key.dims_checked()?[0]),
        SubsystemTennis1 => {
            let lz = key.dims_checked()?[2];
            2 * i(lz / 3 + lz % 3)
        }
        VacancyPeriodic | ScrewSingle => 4 * i(tau(key.dims_checked()?[2], key.l_inf)),
        VacanciesPeriodicV | VacanciesMmp => {
            let lz = key.dims_checked()?[2];
            let v = key.need(key.v, "v")?;
            if v == 0 {
                return Err(Error::OutOfDomain("need at least one vacancy".into()));
            }
            let per = if key.family == VacanciesMmp { v } else { v - 1 };
            2 * i(per * lz) + 4 * i(tau(lz, key.l_inf))
        }
        TwoVacanciesBulk => {
            let [wx, wy] = key.need(key.w1, "w1")?;
            let delta = key.need(key.delta, "delta")?;
            if wx == 0 || wy == 0 {
                return Err(Error::OutOfDomain("vacancy widths must be positive".into()));
            }
            2 * (i(wx + wy) - i(delta)) + i(two_vacancy_correction([wx, wy], delta))
        }
        EdgePairBulk => {
            let lx = key.dims_checked()?[0];
            key.need(key.delta, "delta")?;
            key.need(key.h, "h")?;
            return Ok(KValue::LinearPlusConstant { linear: 4 * lx });
        }
        EdgePeriodic => {
            let lx = key.dims_checked()?[0];
            let flavors = key.need(key.flavors, "flavors")?;
            let extra = match (flavors.same_type(), lx % 2 == 0) {
                (false, _) => 0,
                (true, true) => 2,
                (true, false) => 1,
            };
            8 * i(tau(lx, key.l_inf)) + extra
        }
        ScrewLR | ScrewSame => {
            let lz = key.dims_checked()?[2];
            let delta = key.need(key.delta, "delta")?;
            let base = 4 * i(tau(lz, key.l_inf)) + 2 * i(q(2, delta));
            if key.family == ScrewSame {
                base + 4 * i((lz - 1) / 2)
            } else {
                base
            }
        }
    };
    Ok(KValue::from_raw(raw))
}

/// The correction `c` for two bulk vacancies: 1 when `3 | 1 + w_1x + w_1y` and
/// `w_1x + w_1y = Δ`, else 0.
pub fn two_vacancy_correction(w1: [u64; 2], delta: u64) -> u64 {
    let s = w1[0] + w1[1];
    u64::from((1 + s).is_multiple_of(3) && s == delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(key: ConfigKey) -> u64 {
        k_formula(&key).unwrap().exact().unwrap()
    }

    #[test]
    fn helper_values() {
        assert_eq!(zeta(12), 4);
        assert_eq!(zeta(7), 1);
        assert_eq!(zeta_ratio(7, 3), 0);
        assert_eq!(tau(9, Some(100)), 1);
        assert_eq!(tau(7, Some(5)), 0);
        assert_eq!(tau(48, None), 16);
        assert_eq!(tau(48, Some(3)), 3);
        assert_eq!(zmax(6), 2);
        assert_eq!((q(2, 4), q(2, 5), q(3, 0)), (1, 0, 1));
    }

    #[test]
    fn periodic_values_and_bounds() {
        let got: Vec<u64> = [2, 3, 4, 8, 15, 16].iter().map(|&l| k_ppp(l).unwrap()).collect();
        assert_eq!(got, vec![6, 2, 14, 30, 50, 62]);
        for l in 2..=200 {
            let v = k_ppp(l).unwrap();
            assert!((2..=4 * l - 2).contains(&v), "L = {l}: {v}");
        }
        for m in 1..=7 {
            assert_eq!(k_ppp(1 << m).unwrap(), 4 * (1 << m) - 2);
        }
        assert!(k_ppp(1).is_err());
        assert!(k_ppp(201).is_err());
    }

    #[test]
    fn tau_bounds() {
        for l1 in 1..200 {
            for l2 in [1, 2, 5, 40] {
                assert!(tau(l1, Some(l2)) <= l2);
                if l1 % 3 != 0 {
                    assert_eq!(tau(l1, Some(l2)), 0);
                }
            }
        }
    }

    #[test]
    fn table_rows() {
        use Family::*;
        assert_eq!(k(ConfigKey::cube(Tube, 4)), 5);
        assert_eq!(k(ConfigKey::with_dims(Tennis1, [11, 11, 4])), 8);
        assert_eq!(k(ConfigKey::with_dims(Tennis2, [7, 7, 6])), 6);
        assert_eq!(k(ConfigKey::cube(TwoMFaces, 5)), 4);
        assert_eq!(k(ConfigKey::cube(HalfHalf2, 6)), 12);
        assert_eq!(k(ConfigKey::cube(Triangular, 5)), 16);
        assert_eq!(k(ConfigKey::cube(PpePpe, 6)), 3 + 4);
        assert_eq!(k(ConfigKey::cube(PpmPpe, 12)), 16);
        assert_eq!(k(ConfigKey::cube(PmmPem, 9)), 2);
        assert_eq!(k(ConfigKey::cube(PemPem, 4)), 8);
        assert_eq!(k(ConfigKey::cube(OnlyE, 4)), 0);
        let wide = k_formula(&ConfigKey::with_dims(Tube, [12, 4, 4])).unwrap();
        assert_eq!(wide, KValue::Exact { k: 0, raw: -11, clamped: true });
        assert!(k_formula(&ConfigKey::with_dims(Ppp, [4, 4, 5])).is_err());
        assert!(k_formula(&ConfigKey::new(Tube)).is_err());
    }

    #[test]
    fn defect_rows() {
        let key: ConfigKey = "two_vacancies_bulk w1=4,1 delta=5".parse().unwrap();
        assert_eq!(two_vacancy_correction([4, 1], 5), 1);
        assert_eq!(k(key), 1);
        assert_eq!(k("vacancy_periodic lz=6".parse().unwrap()), 8);
        assert_eq!(k("vacancies_periodic_v lz=5 v=2".parse().unwrap()), 10);
        assert_eq!(k("vacancies_mmp lz=6 v=1".parse().unwrap()), 20);
        assert_eq!(k("edge_periodic lx=6 flavors=ee".parse().unwrap()), 18);
        assert_eq!(k("edge_periodic lx=5 flavors=<mm>".parse().unwrap()), 1);
        assert_eq!(k("edge_periodic lx=5 flavors=em".parse().unwrap()), 0);
        assert_eq!(k("screw_LR lz=6 delta=2".parse().unwrap()), 10);
        assert_eq!(k("screw_same lz=5 delta=3".parse().unwrap()), 8);
        assert_eq!(k("subsystem_tennis1 lz=7".parse().unwrap()), 6);
        assert_eq!(
            k_formula(&"edge_pair_bulk lx=5 delta=3 h=3".parse().unwrap()).unwrap(),
            KValue::LinearPlusConstant { linear: 20 }
        );
        assert!("edge_pair_bulk lx=5 bogus=1".parse::<ConfigKey>().is_err());
    }

    #[test]
    fn names_and_boundaries_round_trip() {
        for f in Family::all() {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
            if let Some(b) = f.boundary() {
                assert_eq!(Family::for_boundary(&b), Some(f));
            }
        }
        let key: ConfigKey = "tube dims=4,5,6".parse().unwrap();
        assert_eq!(key.to_string().parse::<ConfigKey>().unwrap(), key);
    }
}
