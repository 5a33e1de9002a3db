//! Golden values for the named examples and the `reproduce` command.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;
use serde_json::{json, Value};

use qcag::aut::{orbit_partition, Automorphism, OrbitPartition};
use qcag::catalog::{self, CatalogError, Preset, PresetId};
use qcag::census::{census_for, crosscheck};
use qcag::code::{build_code, build_gqc_with_short_orbits, Classification, QcCode};
use qcag::curve::Point;

use crate::{CliError, Rendered};

pub const FIXTURE: &str = include_str!("../fixtures/golden.toml");

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub preset: Vec<GoldenPreset>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenPreset {
    pub id: String,
    pub about: String,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub key: String,
    pub expect: Value,
    pub source: String,
}

pub fn fixture() -> Fixture {
    toml::from_str(FIXTURE).expect("bundled fixture parses")
}

/// Expected values for family presets missing from the fixture, taken
/// from the closed-form point counts.
fn formula_checks(pid: &PresetId) -> Option<Vec<Check>> {
    let check = |key: &str, expect: Value, source: &str| Check { key: key.into(), expect, source: source.into() };
    let census = check("census_pass", json!(true), "every sampled map matches its predicted census");
    let p = &pid.params;
    let points = match (pid.name.as_str(), p.as_slice()) {
        ("hermitian", &[q]) => check("points", json!(q.pow(3) + 1), "q^3 + 1"),
        ("normtrace", &[q, r]) => check("points", json!(q.pow(2 * r as u32 - 1) + 1), "q^(2r-1) + 1"),
        ("quotient", &[q, m]) => check("points", json!(m * q * (q - 1) + q + 1), "mq(q-1) + q + 1"),
        ("maximal", &[q, g]) => check("points", json!(q * q + 2 * g * q + 1), "q^2 + 2gq + 1"),
        _ => return None,
    };
    Some(vec![points, census])
}

struct Observer {
    preset: Preset,
    partition: OrbitPartition,
    budget: u64,
}

fn point_pair(p: &Point) -> Value {
    json!([p.x.index(), p.y.index()])
}

fn lengths(map: &BTreeMap<usize, usize>) -> Value {
    Value::Object(map.iter().map(|(l, c)| (l.to_string(), json!(c))).collect())
}

fn code_summary(code: &QcCode) -> Value {
    json!({"n": code.n, "k": code.k, "co_index": code.co_index(), "qc": code.verify_shift_invariance()})
}

impl Observer {
    fn long_code(&self, t: u64) -> Result<QcCode, CliError> {
        let long = self.partition.long_orbits().map_err(crate::constraint)?;
        build_code(&self.preset.sigma, &long, t).map_err(crate::constraint)
    }

    fn census_pass(&self) -> Result<bool, CliError> {
        let mut maps = catalog::sample_maps(&self.preset.curve);
        if maps.is_empty() {
            maps.push(self.preset.sigma.clone());
        }
        let points = self.preset.curve.points();
        let mut pass = true;
        for m in &maps {
            let cen = census_for(m).map_err(crate::constraint)?;
            pass &= crosscheck(&cen, &orbit_partition(m, &points).map_err(crate::constraint)?).pass;
        }
        Ok(pass)
    }

    fn observe(&self, key: &str) -> Result<Value, CliError> {
        let curve = &self.preset.curve;
        let part = &self.partition;
        let f = curve.field();
        Ok(match key {
            "points" => json!(curve.points().count()),
            "genus" => json!(curve.genus()),
            "order" => json!(part.order),
            "maximal" => json!(curve.is_maximal().map_err(crate::constraint)?),
            "orbit_census" => lengths(&part.length_census()),
            "long_orbit_census" => {
                let long = part.length_census().into_iter().filter(|&(l, _)| l as u64 == part.order).collect();
                lengths(&long)
            }
            "orbit_sets" => json!(part.orbits.iter().map(|o| o.points.iter().map(point_pair).collect::<Vec<_>>()).collect::<Vec<_>>()),
            "long_orbit_sets" => json!(part
                .orbits
                .iter()
                .filter(|o| o.long)
                .map(|o| o.points.iter().map(point_pair).collect::<Vec<_>>())
                .collect::<Vec<_>>()),
            "census_pass" => json!(self.census_pass()?),
            "example_map_preserves_curve" => {
                // the example prints (19 x, 2 y); the preset uses (100 x, 2 y)
                json!(Automorphism::diagonal(curve.clone(), f.from_int(19), f.from_int(2)).is_ok())
            }
            "gqc_t4" => code_summary(&build_gqc_with_short_orbits(&self.preset.sigma, 4).map_err(crate::constraint)?),
            "distance_by_t" | "nmds_t" => {
                let n = part.long_orbits().map_err(crate::constraint)?.iter().map(|o| o.len()).sum::<usize>() as u64;
                let g = curve.genus();
                let mut ds = serde_json::Map::new();
                let mut nmds = Vec::new();
                for t in (2 * g - 1)..n {
                    let rep = self.long_code(t)?.report(self.budget);
                    ds.insert(t.to_string(), if rep.exact { json!(rep.d_lower) } else { Value::Null });
                    if rep.classification == Classification::Nmds {
                        nmds.push(t);
                    }
                }
                if key == "nmds_t" {
                    json!(nmds)
                } else {
                    Value::Object(ds)
                }
            }
            k => match k.strip_prefix("code_t").and_then(|t| t.parse::<u64>().ok()) {
                Some(t) => code_summary(&self.long_code(t)?),
                None => return Err(CliError::Config(format!("fixture key {k:?} is not observable"))),
            },
        })
    }
}

/// Sorts nested arrays so orbit listings compare as sets.
fn as_sets(v: &Value) -> Value {
    match v {
        Value::Array(outer) => {
            let mut inner: Vec<Value> = outer
                .iter()
                .map(|o| match o {
                    Value::Array(pts) => {
                        let mut pts = pts.clone();
                        pts.sort_by_key(|p| p.to_string());
                        Value::Array(pts)
                    }
                    other => other.clone(),
                })
                .collect();
            inner.sort_by_key(|o| o.to_string());
            Value::Array(inner)
        }
        other => other.clone(),
    }
}

fn render(v: &Value) -> String {
    let s = v.to_string();
    if s.len() > 70 {
        format!("{}...", &s[..67])
    } else {
        s
    }
}

pub(crate) fn reproduce(id: &str, budget: u64) -> Result<Rendered, CliError> {
    let pid = PresetId::parse(id).map_err(|e| CliError::Config(e.to_string()))?;
    let fix = fixture();
    let (about, checks) = match fix.preset.into_iter().find(|p| p.id == id) {
        Some(g) => (g.about, g.checks),
        None => {
            let checks = formula_checks(&pid)
                .ok_or_else(|| CliError::Config(format!("no golden values for {id:?}")))?;
            (format!("{id} (closed-form expectations)"), checks)
        }
    };
    let preset = catalog::preset(id).map_err(|e| match e {
        CatalogError::UnknownId(_) => CliError::Config(e.to_string()),
        other => crate::constraint(other),
    })?;
    let partition = orbit_partition(&preset.sigma, &preset.curve.points()).map_err(crate::constraint)?;
    let obs = Observer { preset, partition, budget };

    let mut table = format!("{id}: {about}\n{}\n{}\n", obs.preset.curve.describe(), obs.preset.sigma.describe());
    let mut rows = Vec::new();
    let mut failed = 0;
    for c in &checks {
        let observed = obs.observe(&c.key)?;
        let pass = if c.key.ends_with("_sets") { as_sets(&observed) == as_sets(&c.expect) } else { observed == c.expect };
        if !pass {
            failed += 1;
        }
        let mark = if pass { "PASS    " } else { "MISMATCH" };
        writeln!(table, "  {mark} {:<28} expected {}", c.key, render(&c.expect)).unwrap();
        if !pass {
            writeln!(table, "  {:8} {:<28} observed {}", "", "", render(&observed)).unwrap();
        }
        writeln!(table, "  {:8} {:<28} source: {}", "", "", c.source).unwrap();
        rows.push(json!({"key": c.key, "expected": c.expect, "observed": observed, "pass": pass, "source": c.source}));
    }
    let ok = failed == 0;
    writeln!(table, "reproduce {id}: {}", if ok { "PASS".to_string() } else { format!("MISMATCH ({failed} of {} checks)", checks.len()) }).unwrap();
    Ok(Rendered { table, records: json!({"id": id, "pass": ok, "checks": rows}), ok })
}
