//! Mapping-torus volumes joined with translation-length estimates.
//!
//! Volumes come from outside (a hyperbolic-geometry program); this module
//! reads them, checks vol(T_{wⁿ}) = n·vol(T_w), and reports the ratios
//! volume / ℓ̂ together with the empirical constant K̂ = max max(r, 1/r).
//!
//! Volume CSV: header `name,genus,word,volume[,power_of,power]`, genus 1
//! meaning the once-punctured torus. Exchange file:
//!
//! ```text
//! fibered-monodromy v1
//! surface: closed genus=2
//! word: t1 t2^-1 t3 t4^-1 t5
//! volume: 8.79334560386499
//! ```

use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::curves::CurveSystem;
use crate::error::{Error, Result};
use crate::pants::{Cutoff, PantsDecomposition, Status};
use crate::scalar::Real;
use crate::surface::{Model, SurfaceSpec};
use crate::translation::{
    assemble, default_curve_probes, default_slope_probes, orbit_distances_escalating, reducibility_heuristic,
    stable_length, Sample, TranslationEstimate, Verdict,
};
use crate::word::MappingClassWord;

/// Supremum of volumes of hyperbolic tetrahedra, 3Λ(π/3).
pub const V3: f64 = 1.0149416064096536;

#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyRecord<F = f64> {
    pub name: String,
    pub surface: SurfaceSpec,
    pub word: MappingClassWord,
    pub volume: Option<F>,
    /// Declared as `power` times the record named here.
    pub power_of: Option<(String, u32)>,
    pub estimate: Option<TranslationEstimate<i64>>,
}

fn surface_for_genus(g: u32) -> Result<SurfaceSpec> {
    if g == 1 {
        Ok(SurfaceSpec::punctured_torus())
    } else {
        SurfaceSpec::closed(g)
    }
}

fn genus_column(s: &SurfaceSpec) -> u32 {
    match s.model {
        Model::PuncturedTorus => 1,
        Model::Closed { genus } => genus,
    }
}

fn parse_volume<F: Real>(text: &str) -> Option<F> {
    text.trim().parse::<f64>().ok().filter(|v| v.is_finite()).and_then(F::from_f64)
}

/// Reads and validates a volume table.
pub fn load_volumes<F: Real, R: Read>(source: R) -> Result<Vec<MonodromyRecord<F>>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).flexible(true).from_reader(source);
    let header = rdr.headers().map_err(|e| Error::Schema { line: 1, message: e.to_string() })?.clone();
    let names: Vec<&str> = header.iter().collect();
    let base = ["name", "genus", "word", "volume"];
    let ok = names == base || names == ["name", "genus", "word", "volume", "power_of", "power"];
    if !ok {
        return Err(Error::Schema {
            line: 1,
            message: format!("expected header name,genus,word,volume[,power_of,power], found {}", names.join(",")),
        });
    }
    let mut out: Vec<MonodromyRecord<F>> = Vec::new();
    let mut seen = HashMap::new();
    for (i, row) in rdr.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| Error::Schema { line, message: e.to_string() })?;
        if row.len() != names.len() {
            return Err(Error::Schema { line, message: format!("expected {} fields, found {}", names.len(), row.len()) });
        }
        let schema = |message: String| Error::Schema { line, message };
        let name = row[0].to_string();
        if name.is_empty() {
            return Err(schema("empty name".into()));
        }
        let genus: u32 = row[1].trim().parse().map_err(|_| schema(format!("bad genus {:?}", &row[1])))?;
        let surface = surface_for_genus(genus).map_err(|e| schema(e.to_string()))?;
        let word = MappingClassWord::parse(surface, &row[2]).map_err(|e| schema(e.to_string()))?;
        if word.is_identity() {
            return Err(schema("empty word".into()));
        }
        let volume: F = parse_volume(&row[3]).ok_or_else(|| schema(format!("bad volume {:?}", &row[3])))?;
        if volume <= F::zero() {
            return Err(Error::NonPositiveVolume { line });
        }
        let power_of = if names.len() == 6 && !(row[4].is_empty() && row[5].is_empty()) {
            let n: u32 = row[5].trim().parse().map_err(|_| schema(format!("bad power {:?}", &row[5])))?;
            if row[4].is_empty() || n < 2 {
                return Err(schema("power_of needs a record name and a power >= 2".into()));
            }
            Some((row[4].to_string(), n))
        } else {
            None
        };
        if seen.insert(name.clone(), line).is_some() {
            return Err(Error::DuplicateName { line, name });
        }
        out.push(MonodromyRecord { name, surface, word, volume: Some(volume), power_of, estimate: None });
    }
    Ok(out)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Writes records in the table format read by [`load_volumes`], with the
/// word column quoted. The power columns are emitted when any record
/// declares a power.
pub fn write_volumes<F: Real, W: Write>(records: &[MonodromyRecord<F>], mut out: W) -> Result<()> {
    let powers = records.iter().any(|r| r.power_of.is_some());
    out.write_all(if powers { b"name,genus,word,volume,power_of,power\n" } else { b"name,genus,word,volume\n" })?;
    for r in records {
        let volume = r.volume.map(|v| v.to_string()).unwrap_or_default();
        let mut line = format!("{},{},\"{}\",{}", csv_field(&r.name), genus_column(&r.surface), r.word, volume);
        if powers {
            match &r.power_of {
                Some((b, n)) => line.push_str(&format!(",{},{}", csv_field(b), n)),
                None => line.push_str(",,"),
            }
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerCheck {
    pub base: String,
    pub power: String,
    pub n: u32,
    pub expected: f64,
    pub actual: f64,
    /// |vol(wⁿ) - n·vol(w)| / vol(w).
    pub relative_residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerReport {
    pub tolerance: f64,
    pub checks: Vec<PowerCheck>,
    pub all_pass: bool,
}

/// Checks vol(T_{wⁿ}) = n·vol(T_w) within `tol`·vol(T_w) for each pair
/// declared in a `power_of` column or detected from the letters.
pub fn power_consistency<F: Real>(records: &[MonodromyRecord<F>], tol: f64) -> PowerReport {
    let by_name: HashMap<&str, &MonodromyRecord<F>> = records.iter().map(|r| (r.name.as_str(), r)).collect();
    let mut pairs: Vec<(&MonodromyRecord<F>, &MonodromyRecord<F>, u32)> = Vec::new();
    for r in records {
        if let Some((b, n)) = &r.power_of {
            if let Some(base) = by_name.get(b.as_str()) {
                pairs.push((base, r, *n));
            }
            continue;
        }
        for base in records {
            if let Some(n) = r.word.power_of(&base.word) {
                pairs.push((base, r, n));
            }
        }
    }
    pairs.sort_by(|a, b| (&a.1.name, &a.0.name).cmp(&(&b.1.name, &b.0.name)));
    pairs.dedup_by(|a, b| a.0.name == b.0.name && a.1.name == b.1.name);
    let checks: Vec<PowerCheck> = pairs
        .into_iter()
        .filter_map(|(b, p, n)| {
            let v = b.volume?.to_f64()?;
            let vn = p.volume?.to_f64()?;
            let expected = f64::from(n) * v;
            let rel = (vn - expected).abs() / v;
            Some(PowerCheck {
                base: b.name.clone(),
                power: p.name.clone(),
                n,
                expected,
                actual: vn,
                relative_residual: rel,
                pass: rel <= tol,
            })
        })
        .collect();
    let all_pass = checks.iter().all(|c| c.pass);
    PowerReport { tolerance: tol, checks, all_pass }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EstimatorConfig {
    pub n_max: u32,
    pub cutoff: Cutoff,
    /// Escalation attempts per orbit sample.
    pub rounds: u32,
    /// Iterations tried by the reducibility heuristic.
    pub probe_depth: u32,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            n_max: 2,
            cutoff: Cutoff::new(1, 16).expect("positive cutoff").with_budget(100_000),
            rounds: 1,
            probe_depth: 3,
        }
    }
}

fn ratio_str<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Joined {
    pub name: String,
    pub word: MappingClassWord,
    pub volume: f64,
    #[serde(serialize_with = "ratio_str")]
    pub length: Ratio<u64>,
    /// volume / ℓ̂.
    pub ratio: f64,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Excluded {
    pub name: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub records: Vec<Joined>,
    #[serde(rename = "empirical_K")]
    pub empirical_k: Option<f64>,
    pub excluded: Vec<Excluded>,
    pub config: EstimatorConfig,
    pub tetrahedron_cap: f64,
}

/// max over ratios of max(r, 1/r).
pub fn empirical_k(ratios: impl IntoIterator<Item = f64>) -> Option<f64> {
    ratios.into_iter().map(|r| r.max(1.0 / r)).fold(None, |m, x| Some(m.map_or(x, |m: f64| m.max(x))))
}

fn verdict_reason<P>(v: &Verdict<P>) -> Option<String> {
    match v {
        Verdict::ProbablyPseudoAnosov { .. } => None,
        Verdict::ReducibleDetected { period, .. } => Some(format!("reducible: a probe curve returns after {period}")),
        Verdict::PeriodicDetected { order } => Some(format!("periodic of order {order}")),
    }
}

fn exclusion<F: Real>(r: &MonodromyRecord<F>, config: &EstimatorConfig) -> Result<Option<String>> {
    if r.volume.and_then(|v| v.to_f64()).is_none() {
        return Ok(Some("no volume".into()));
    }
    Ok(match r.surface.model {
        Model::PuncturedTorus => {
            verdict_reason(&reducibility_heuristic(&r.word, &default_slope_probes::<i64>(), config.probe_depth)?)
        }
        Model::Closed { .. } => verdict_reason(&reducibility_heuristic(
            &r.word,
            &default_curve_probes::<i64>() as &[CurveSystem<i64>],
            config.probe_depth,
        )?),
    })
}

/// Estimates every record that [`compare`] would use and that carries no
/// estimate yet.
pub fn attach_estimates<F: Real>(records: &mut [MonodromyRecord<F>], config: &EstimatorConfig) -> Result<()> {
    for r in records.iter_mut() {
        if r.estimate.is_some() || exclusion(r, config)?.is_some() {
            continue;
        }
        let base = PantsDecomposition::<i64>::base(r.surface)?;
        r.estimate = Some(orbit_distances_escalating(&r.word, &base, config.n_max, &config.cutoff, config.rounds)?);
    }
    Ok(())
}

/// Joins volumes with stable-length estimates. Records that carry an
/// estimate reuse it; the others are estimated under `config`. Words the
/// reducibility heuristic does not call pseudo-Anosov, and records without a
/// positive exact-sample estimate, are listed in `excluded`.
pub fn compare<F: Real>(records: &[MonodromyRecord<F>], config: &EstimatorConfig) -> Result<ComparisonReport> {
    let ordered: BTreeMap<&str, &MonodromyRecord<F>> = records.iter().map(|r| (r.name.as_str(), r)).collect();
    let mut joined = Vec::new();
    let mut excluded = Vec::new();
    for (name, r) in ordered {
        let exclude = |reason: String| Excluded { name: name.to_string(), reason };
        if let Some(reason) = exclusion(r, config)? {
            excluded.push(exclude(reason));
            continue;
        }
        let volume = r.volume.and_then(|v| v.to_f64()).unwrap_or(f64::NAN);
        let estimate = match &r.estimate {
            Some(e) => e.clone(),
            None => {
                let base = PantsDecomposition::<i64>::base(r.surface)?;
                orbit_distances_escalating(&r.word, &base, config.n_max, &config.cutoff, config.rounds)?
            }
        };
        let length = match stable_length(&estimate) {
            Ok(l) if *l.numer() > 0 => l,
            Ok(_) => {
                excluded.push(exclude("stable length estimate is 0".into()));
                continue;
            }
            Err(_) => {
                excluded.push(exclude("no exact orbit samples".into()));
                continue;
            }
        };
        let mut flags = Vec::new();
        if !estimate.diagnostics.converged {
            flags.push("not converged".to_string());
        }
        if !estimate.diagnostics.inexact.is_empty() {
            flags.push(format!("inexact samples at n = {:?}", estimate.diagnostics.inexact));
        }
        if !estimate.diagnostics.subadditivity_violations.is_empty() {
            flags.push("subadditivity violated".to_string());
        }
        let l = length.to_f64().unwrap_or(f64::NAN);
        joined.push(Joined { name: name.to_string(), word: r.word.clone(), volume, length, ratio: volume / l, flags });
    }
    Ok(ComparisonReport {
        empirical_k: empirical_k(joined.iter().map(|j| j.ratio)),
        records: joined,
        excluded,
        config: *config,
        tetrahedron_cap: V3,
    })
}

const SAMPLES_HEADER: &str = "name,n,distance,status,max_twist,max_radius,max_vertices";

fn status_str(s: &Sample) -> &'static str {
    match s.status {
        Some(Status::ExactWithinCutoff) => "exact_within_cutoff",
        Some(Status::UpperBoundOnly) => "upper_bound_only",
        None => "not_found",
    }
}

/// Writes the orbit samples of every estimated record, one row per sample:
/// `name,n,distance,status,max_twist,max_radius,max_vertices`.
pub fn write_samples<F: Real, W: Write>(records: &[MonodromyRecord<F>], mut out: W) -> Result<()> {
    writeln!(out, "{SAMPLES_HEADER}")?;
    let ordered: BTreeMap<&str, &MonodromyRecord<F>> = records.iter().map(|r| (r.name.as_str(), r)).collect();
    for (name, r) in ordered {
        for s in r.estimate.iter().flat_map(|e| &e.samples) {
            let d = s.distance.map(|d| d.to_string()).unwrap_or_default();
            let c = &s.cutoff;
            writeln!(
                out,
                "{},{},{d},{},{},{},{}",
                csv_field(name),
                s.n,
                status_str(s),
                c.max_twist,
                c.max_radius,
                c.max_vertices
            )?;
        }
    }
    Ok(())
}

/// Reads a table written by [`write_samples`], grouped by record name.
pub fn load_samples<R: Read>(source: R) -> Result<BTreeMap<String, Vec<Sample>>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(source);
    let header = rdr.headers().map_err(|e| Error::Schema { line: 1, message: e.to_string() })?;
    if header.iter().collect::<Vec<_>>().join(",") != SAMPLES_HEADER {
        return Err(Error::Schema { line: 1, message: format!("expected header {SAMPLES_HEADER}") });
    }
    let mut out: BTreeMap<String, Vec<Sample>> = BTreeMap::new();
    for (i, row) in rdr.records().enumerate() {
        let line = i + 2;
        let schema = |message: String| Error::Schema { line, message };
        let row = row.map_err(|e| schema(e.to_string()))?;
        let int = |k: usize| -> Result<u64> { row[k].trim().parse().map_err(|_| schema(format!("bad integer {:?}", &row[k]))) };
        let n = int(1)? as u32;
        let (status, error) = match &row[3] {
            "exact_within_cutoff" => (Some(Status::ExactWithinCutoff), None),
            "upper_bound_only" => (Some(Status::UpperBoundOnly), None),
            "not_found" => (None, Some("not found within cutoff".to_string())),
            other => return Err(schema(format!("bad status {other:?}"))),
        };
        let distance = if status.is_some() { Some(int(2)? as u32) } else { None };
        let cutoff = Cutoff { max_twist: int(4)? as u32, max_radius: int(5)? as u32, max_vertices: int(6)? as usize };
        if n == 0 || cutoff.check().is_err() {
            return Err(schema("n and cutoff values must be positive".into()));
        }
        out.entry(row[0].to_string()).or_default().push(Sample { n, distance, status, cutoff, error });
    }
    Ok(out)
}

/// Attaches stored samples to the records of the same name.
pub fn attach_samples<F: Real>(
    records: &mut [MonodromyRecord<F>],
    samples: &BTreeMap<String, Vec<Sample>>,
) -> Result<()> {
    for r in records.iter_mut() {
        if let Some(s) = samples.get(&r.name) {
            let base = PantsDecomposition::<i64>::base(r.surface)?;
            r.estimate = Some(assemble(r.word.clone(), base, s.clone()));
        }
    }
    Ok(())
}

/// Writes the exchange file for `r`.
pub fn export_monodromy<F: Real, W: Write>(r: &MonodromyRecord<F>, mut out: W) -> Result<()> {
    let surface = match r.surface.model {
        Model::PuncturedTorus => "punctured-torus".to_string(),
        Model::Closed { genus } => format!("closed genus={genus}"),
    };
    let mut text = format!("fibered-monodromy v1\nsurface: {surface}\nword: {}\n", r.word);
    if let Some(v) = r.volume {
        text.push_str(&format!("volume: {v}\n"));
    }
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Reads an exchange file; the name is not part of the format.
pub fn parse_monodromy<F: Real>(name: &str, text: &str) -> Result<MonodromyRecord<F>> {
    let err = |line: usize, message: &str| Error::Schema { line, message: message.to_string() };
    if text.contains('\r') {
        return Err(err(1, "line endings must be LF"));
    }
    let body = text.strip_suffix('\n').ok_or_else(|| err(1, "missing final newline"))?;
    let lines: Vec<&str> = body.split('\n').collect();
    if !(3..=4).contains(&lines.len()) {
        return Err(err(lines.len(), "expected three or four lines"));
    }
    for (i, l) in lines.iter().enumerate() {
        if l.ends_with([' ', '\t']) {
            return Err(err(i + 1, "trailing whitespace"));
        }
    }
    if lines[0] != "fibered-monodromy v1" {
        return Err(err(1, "expected `fibered-monodromy v1`"));
    }
    let surface = match lines[1].strip_prefix("surface: ") {
        Some("punctured-torus") => SurfaceSpec::punctured_torus(),
        Some(s) => {
            let g = s
                .strip_prefix("closed genus=")
                .and_then(|g| g.parse().ok())
                .ok_or_else(|| err(2, "expected `surface: closed genus=G` or `surface: punctured-torus`"))?;
            SurfaceSpec::closed(g)?
        }
        None => return Err(err(2, "expected `surface: ...`")),
    };
    let word = lines[2].strip_prefix("word: ").ok_or_else(|| err(3, "expected `word: ...`"))?;
    let word = MappingClassWord::parse(surface, word)?;
    let volume = match lines.get(3) {
        None => None,
        Some(l) => {
            let v = l.strip_prefix("volume: ").ok_or_else(|| err(4, "expected `volume: ...`"))?;
            let v: F = parse_volume(v).ok_or_else(|| err(4, "bad volume"))?;
            if v <= F::zero() {
                return Err(Error::NonPositiveVolume { line: 4 });
            }
            Some(v)
        }
    };
    Ok(MonodromyRecord { name: name.to_string(), surface, word, volume, power_of: None, estimate: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only_table_is_empty() {
        let r: Vec<MonodromyRecord> = load_volumes("name,genus,word,volume\n".as_bytes()).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn zero_volume_is_rejected() {
        let r = load_volumes::<f64, _>("name,genus,word,volume\nx,2,\"t1 t2^-1\",0.0\n".as_bytes());
        assert_eq!(r, Err(Error::NonPositiveVolume { line: 2 }));
    }

    #[test]
    fn k_from_ratios() {
        assert_eq!(empirical_k([2.0, 1.0 / 3.0]), Some(3.0));
        assert_eq!(empirical_k([1.0]), Some(1.0));
        assert_eq!(empirical_k([]), None);
    }
}
