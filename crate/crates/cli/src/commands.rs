use std::path::Path;

use rayon::prelude::*;

use cubic_code::analysis::generator_rank;
use cubic_code::closed_forms::{self, ConfigKey, Family, KValue};
use cubic_code::excitation::{cascade_on_torus, syndrome as syndrome_of, FVariant};
use cubic_code::lattice::{build_stabilizers, parse_word, triangular_preset};
use cubic_code::validation;
use cubic_code::{
    box_region, build_geometry, count_logicals_in_region, min_support_width_within,
    num_logical_qubits, Axis, BoundarySpec, Config, Error, SlabProtocol, StabilizerSet,
};

use crate::record::{dims_from_template, emit_csv, parse_values, ScanRecord, SCAN_HEADER};
use crate::{Failure, ScanKArgs, SupportArgs};

type CmdResult = Result<(), Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

/// Explicit oracle key, else the box family matching the faces when there are no defects.
fn oracle_for(cfg: &Config) -> Result<Option<ConfigKey>, Error> {
    if let Some(key) = cfg.oracle_key()? {
        return Ok(Some(key));
    }
    if !cfg.defects.is_empty() {
        return Ok(None);
    }
    let family = match (&cfg.lattice.faces, &cfg.lattice.preset) {
        (Some(f), _) => Family::for_boundary(&f.parse()?),
        (None, Some(_)) => Some(Family::Triangular),
        _ => None,
    };
    Ok(family.map(|f| ConfigKey::with_dims(f, cfg.dims().map(|d| d as u64))))
}

pub fn analyze(path: &Path, regions: bool) -> CmdResult {
    let cfg = Config::from_path(path)?;
    let built = cfg.build()?;
    let s = &built.stabilizers;
    let n = s.n_qubits();
    let k = num_logical_qubits(s)?;
    let [lx, ly, lz] = cfg.dims();
    println!("lattice {lx}x{ly}x{lz} {}", cfg.faces_label());
    println!("defects {}", cfg.defects.len());
    println!("n {n}");
    println!("generators {}", s.len());
    println!("s {}", generator_rank(s));
    println!("k {k}");
    for (kind, count) in s.kind_counts() {
        println!("  {kind} {count}");
    }
    if let Some(key) = oracle_for(&cfg)? {
        match closed_forms::k_formula(&key) {
            Ok(v) => {
                let verdict = match v.exact() {
                    Some(o) if o == k as u64 => "match",
                    Some(_) => "MISMATCH",
                    None => "not exact",
                };
                println!("oracle {key}: {v} ({verdict})");
            }
            Err(e) => println!("oracle {key}: {e}"),
        }
    }
    if regions {
        for r in &cfg.regions {
            let qubits = box_region(s, r.lo, r.hi);
            println!("region {} logicals {}", r.name, count_logicals_in_region(s, &qubits)?);
        }
    }
    Ok(())
}

/// Source of lattices for a k sweep.
enum ScanSource {
    Faces(BoundarySpec, Family),
    Triangular,
    Config(Box<Config>),
}

impl ScanSource {
    fn stabilizers(&self, dims: [usize; 3]) -> Result<StabilizerSet, Error> {
        match self {
            ScanSource::Faces(b, _) => build_stabilizers(&std::sync::Arc::new(build_geometry(dims, b, &[])?)),
            ScanSource::Triangular => {
                if dims[0] != dims[1] || dims[1] != dims[2] {
                    return Err(Error::Config("the triangular family needs cube dims".into()));
                }
                build_stabilizers(&triangular_preset(dims[0])?)
            }
            ScanSource::Config(cfg) => {
                let mut c = cfg.as_ref().clone();
                [c.lattice.lx, c.lattice.ly, c.lattice.lz] = dims;
                Ok(c.build()?.stabilizers)
            }
        }
    }

    fn oracle(&self, dims: [usize; 3]) -> Result<Option<ConfigKey>, Error> {
        let dims64 = dims.map(|d| d as u64);
        match self {
            ScanSource::Faces(_, f) => Ok(Some(ConfigKey::with_dims(*f, dims64))),
            ScanSource::Triangular => Ok(Some(ConfigKey::with_dims(Family::Triangular, dims64))),
            ScanSource::Config(cfg) => {
                let mut c = cfg.as_ref().clone();
                [c.lattice.lx, c.lattice.ly, c.lattice.lz] = dims;
                Ok(oracle_for(&c)?.map(|mut key| {
                    key.dims = Some(dims64);
                    key
                }))
            }
        }
    }
}

fn scan_point(src: &ScanSource, dims: [usize; 3]) -> Result<ScanRecord, Error> {
    let s = src.stabilizers(dims)?;
    let k_oracle = match src.oracle(dims)? {
        // Out-of-domain sizes just have no oracle value.
        Some(key) => closed_forms::k_formula(&key).ok().and_then(KValue::exact),
        None => None,
    };
    Ok(ScanRecord {
        dims,
        n: s.n_qubits(),
        s: generator_rank(&s),
        k: num_logical_qubits(&s)?,
        k_oracle,
    })
}

pub fn scan_k(args: &ScanKArgs) -> CmdResult {
    let src = match (&args.family, &args.config) {
        (Some(name), None) => {
            let family: Family = name.parse()?;
            match family.boundary() {
                Some(b) => ScanSource::Faces(b, family),
                None if family == Family::Triangular => ScanSource::Triangular,
                None => {
                    return Err(Failure::Io(format!(
                        "family {family} has defects; describe it with --config instead"
                    )))
                }
            }
        }
        (None, Some(path)) => ScanSource::Config(Box::new(Config::from_path(path)?)),
        _ => return Err(Failure::Io("give exactly one of --family or --config".into())),
    };
    let dims: Vec<[usize; 3]> = parse_values(&args.values)?
        .into_iter()
        .map(|v| dims_from_template(&args.dims, v))
        .collect::<Result<_, _>>()?;
    let rows = dims
        .par_iter()
        .map(|&d| scan_point(&src, d).map(|r| r.csv_row()))
        .collect::<Result<Vec<_>, _>>()?;
    emit_csv(SCAN_HEADER, &rows, args.out.as_deref())
}

pub fn support_scan(args: &SupportArgs) -> CmdResult {
    if let Some(values) = &args.twist_pair {
        let hs = parse_values(values)?;
        let widths = hs
            .par_iter()
            .map(|&h| validation::support_widths(h))
            .collect::<Result<Vec<_>, _>>()?;
        let fmt = |w: Option<usize>| w.map(|w| w.to_string()).unwrap_or_default();
        let rows: Vec<String> = hs
            .iter()
            .zip(&widths)
            .map(|(h, (clipped, full))| format!("{h},{},{}", fmt(*clipped), fmt(*full)))
            .collect();
        return emit_csv("h,min_width,min_width_unclipped", &rows, args.out.as_deref());
    }
    let path = args
        .config
        .as_ref()
        .ok_or_else(|| Failure::Io("support-scan needs --config or --twist-pair".into()))?;
    let cfg = Config::from_path(path)?;
    let built = cfg.build()?;
    let s = &built.stabilizers;
    let axis: Axis = args.axis.parse()?;
    let protocol = match (args.center, args.start) {
        (_, Some(start)) => SlabProtocol::FromStart(start),
        (Some(c), None) => SlabProtocol::Centered(c),
        (None, None) => SlabProtocol::Centered(cfg.dims()[axis.index()] as i64 / 2),
    };
    let region = args.region.as_deref().map(|name| cfg.region(s, name)).transpose()?;
    let w = min_support_width_within(s, axis, protocol, region.as_deref())?;
    let row = format!("{axis},{}", w.map(|w| w.to_string()).unwrap_or_default());
    emit_csv("axis,min_width", &[row], args.out.as_deref())
}

pub fn cascade_scan(variant: &str, travel: Option<&str>, values: &str, out: Option<&Path>) -> CmdResult {
    let variant: FVariant = variant.parse()?;
    let travel = match travel {
        Some(t) => t.parse::<Axis>()?,
        None => variant.default_travel(),
    };
    let deltas = parse_values(values)?;
    let rows = deltas
        .par_iter()
        .map(|&d| {
            cascade_on_torus(variant, travel, d).map(|c| format!("{d},{},{}", c.weight, c.profile.peak))
        })
        .collect::<Result<Vec<_>, _>>()?;
    emit_csv("delta,weight,peak_energy", &rows, out)
}

pub fn syndrome(config: &Path, operator: &Path) -> CmdResult {
    let cfg = Config::from_path(config)?;
    let built = cfg.build()?;
    let word = parse_word(&built.geometry, &read_text(operator)?)?;
    for e in syndrome_of(&built.stabilizers, &word)? {
        println!("{e}");
    }
    Ok(())
}

pub fn oracle(words: &[String]) -> CmdResult {
    let num = |i: usize| -> Result<u64, Failure> {
        words
            .get(i)
            .ok_or_else(|| Failure::Io(format!("{} needs more arguments", words[0])))?
            .parse::<u64>()
            .map_err(|_| Failure::Io(format!("{:?} is not a nonnegative integer", words[i])))
    };
    let value = match words[0].as_str() {
        "zeta" => closed_forms::zeta(num(1)?).to_string(),
        "zmax" => closed_forms::zmax(num(1)?).to_string(),
        "q" => closed_forms::q(num(1)?, num(2)?).to_string(),
        "tau" => {
            let l2 = if words.len() > 2 { Some(num(2)?) } else { None };
            closed_forms::tau(num(1)?, l2).to_string()
        }
        _ => {
            let key: ConfigKey = words.join(" ").parse()?;
            closed_forms::k_formula(&key)?.to_string()
        }
    };
    println!("{value}");
    Ok(())
}

pub fn validate(seed: u64, only: &[String]) -> CmdResult {
    let outcomes = if only.is_empty() {
        validation::run_all(seed)
    } else {
        only.iter()
            .map(|id| validation::run_check(id, seed))
            .collect::<Result<Vec<_>, _>>()?
    };
    let mut failed = 0;
    for o in &outcomes {
        println!("{o}");
        if !o.acceptable() {
            failed += 1;
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} checks pass; {failed} unacceptable", outcomes.len());
    if failed > 0 {
        return Err(Failure::ChecksFailed(failed));
    }
    Ok(())
}
