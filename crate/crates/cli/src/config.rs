//! TOML job files. Field elements are written either as an integer (reduced
//! into the prime field) or as a little-endian coefficient array.

use std::path::PathBuf;
use std::sync::Arc;

use serde::Deserialize;

use qcag::aut::{AffineMap, Automorphism};
use qcag::catalog::{self, Preset};
use qcag::census::maximal_hyperelliptic;
use qcag::curve::{Family, KummerCurve};
use qcag::gf::{Fe, Field, FieldCtx};

use crate::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub preset: Option<String>,
    pub field: Option<FieldSpec>,
    pub curve: Option<CurveSpec>,
    pub automorphism: Option<AutSpec>,
    #[serde(default)]
    pub orbits: OrbitSelection,
    #[serde(default)]
    pub job: JobSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub h: u32,
    #[serde(default = "one")]
    pub r: u32,
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum ElemSpec {
    Int(i64),
    Coeffs(Vec<u32>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    Generic {
        m: u64,
        #[serde(rename = "B")]
        b: Vec<ElemSpec>,
    },
    Hyperelliptic {
        #[serde(rename = "B")]
        b: Vec<ElemSpec>,
    },
    Hermitian {
        q: u64,
    },
    NormTrace {
        q: u64,
        r: u32,
    },
    HermitianQuotient {
        q: u64,
        m: u64,
    },
    MaximalHyperelliptic {
        q: u64,
        g: u64,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AutSpec {
    Identity,
    /// The natural map of a family preset.
    Preset,
    Diagonal { ex: ElemSpec, ey: ElemSpec },
    HermitianPsi { a: ElemSpec, b: ElemSpec, c: ElemSpec },
    NormTrace { b: ElemSpec, a: ElemSpec },
    QuotientEta { zeta: ElemSpec },
    Raw { alpha: ElemSpec, beta: ElemSpec, gamma: ElemSpec, delta: ElemSpec, epsilon: ElemSpec },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectKind {
    #[default]
    AllLong,
    Lengths,
    Explicit,
    /// Every orbit of length above one, short ones first.
    Gqc,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitSelection {
    #[serde(default)]
    pub select: SelectKind,
    pub lengths: Option<Vec<usize>>,
    pub ids: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Records,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub t: Option<u64>,
    pub t_range: Option<String>,
    pub budget: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }
}

/// `A..B` (exclusive) or `A..=B` (inclusive).
pub fn parse_t_range(s: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::Config(format!("bad t range {s:?}, expected A..B or A..=B"));
    let (a, b, inclusive) = if let Some((a, b)) = s.split_once("..=") {
        (a, b, true)
    } else {
        let (a, b) = s.split_once("..").ok_or_else(bad)?;
        (a, b, false)
    };
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    Ok(if inclusive { (a..=b).collect() } else { (a..b).collect() })
}

pub fn elem(f: &FieldCtx, e: &ElemSpec) -> Result<Fe, CliError> {
    match e {
        ElemSpec::Int(n) => Ok(f.from_int(*n)),
        ElemSpec::Coeffs(c) => f.element(c).map_err(|e| CliError::Config(format!("field element {c:?}: {e}"))),
    }
}

fn build_field(spec: &FieldSpec) -> Result<Field, CliError> {
    FieldCtx::new(spec.p, spec.h, spec.r, spec.modulus.as_deref()).map_err(|e| CliError::Config(format!("field: {e}")))
}

fn constraint(e: impl std::fmt::Display) -> CliError {
    CliError::Constraint(e.to_string())
}

/// Curve and automorphism named by a job.
pub struct Resolved {
    pub curve: Arc<KummerCurve>,
    pub sigma: Option<Automorphism>,
    /// Set when the map came from a family preset; the census command then
    /// samples every case of the family.
    pub family_preset: bool,
}

pub fn resolve(cfg: &JobConfig, preset_flag: Option<&str>) -> Result<Resolved, CliError> {
    let preset_id = preset_flag.or(cfg.preset.as_deref());
    if let Some(id) = preset_id {
        if cfg.curve.is_some() || cfg.field.is_some() || cfg.automorphism.is_some() {
            return Err(CliError::Config("a preset cannot be combined with field, curve or automorphism sections".into()));
        }
        let Preset { curve, sigma, .. } = catalog::preset(id).map_err(|e| match e {
            catalog::CatalogError::UnknownId(_) => CliError::Config(e.to_string()),
            other => constraint(other),
        })?;
        let family_preset = !catalog::FIXED_IDS.contains(&id);
        return Ok(Resolved { curve, sigma: Some(sigma), family_preset });
    }
    let spec = cfg.curve.as_ref().ok_or_else(|| CliError::Config("missing [curve] section".into()))?;
    let field = match (spec, &cfg.field) {
        (CurveSpec::Generic { .. } | CurveSpec::Hyperelliptic { .. }, Some(fs)) => Some(build_field(fs)?),
        (CurveSpec::Generic { .. } | CurveSpec::Hyperelliptic { .. }, None) => {
            return Err(CliError::Config("missing [field] section".into()))
        }
        (_, Some(_)) => return Err(CliError::Config("the [field] section is implied by the curve family".into())),
        (_, None) => None,
    };
    let mut preset_sigma = None;
    let curve = match spec {
        CurveSpec::Generic { m, b } => {
            let f = field.expect("field set above");
            let b = b.iter().map(|e| elem(&f, e)).collect::<Result<Vec<_>, _>>()?;
            KummerCurve::new(f, *m, b, Family::Generic)
        }
        CurveSpec::Hyperelliptic { b } => {
            let f = field.expect("field set above");
            let b = b.iter().map(|e| elem(&f, e)).collect::<Result<Vec<_>, _>>()?;
            KummerCurve::hyperelliptic(f, b)
        }
        CurveSpec::Hermitian { q } => KummerCurve::hermitian(*q),
        CurveSpec::NormTrace { q, r } => KummerCurve::norm_trace(*q, *r),
        CurveSpec::HermitianQuotient { q, m } => KummerCurve::hermitian_quotient(*q, *m),
        CurveSpec::MaximalHyperelliptic { q, g } => {
            let (c, s) = maximal_hyperelliptic(*q, *g).map_err(constraint)?;
            preset_sigma = Some(s);
            Ok(c)
        }
    }
    .map_err(constraint)?;
    let curve = Arc::new(curve);
    let f = curve.field().clone();
    let mut family_preset = false;
    let sigma = match &cfg.automorphism {
        None => None,
        Some(AutSpec::Identity) => Some(Ok(Automorphism::identity(curve.clone()))),
        Some(AutSpec::Preset) => {
            family_preset = true;
            let id = match spec {
                CurveSpec::Hermitian { q } => format!("hermitian-{q}"),
                CurveSpec::NormTrace { q, r } => format!("normtrace-{q}-{r}"),
                CurveSpec::HermitianQuotient { q, m } => format!("quotient-{q}-{m}"),
                CurveSpec::MaximalHyperelliptic { .. } => {
                    let s = preset_sigma.take().expect("built with the curve");
                    return Ok(Resolved { curve: s.curve().clone(), sigma: Some(s), family_preset });
                }
                _ => return Err(CliError::Config("kind = \"preset\" needs a family preset curve".into())),
            };
            let pr = catalog::preset(&id).map_err(constraint)?;
            return Ok(Resolved { curve: pr.curve, sigma: Some(pr.sigma), family_preset });
        }
        Some(AutSpec::Diagonal { ex, ey }) => Some(Automorphism::diagonal(curve.clone(), elem(&f, ex)?, elem(&f, ey)?)),
        Some(AutSpec::HermitianPsi { a, b, c }) => {
            Some(Automorphism::hermitian_psi(curve.clone(), elem(&f, a)?, elem(&f, b)?, elem(&f, c)?))
        }
        Some(AutSpec::NormTrace { b, a }) => Some(Automorphism::norm_trace_map(curve.clone(), elem(&f, b)?, elem(&f, a)?)),
        Some(AutSpec::QuotientEta { zeta }) => Some(Automorphism::quotient_eta(curve.clone(), elem(&f, zeta)?)),
        Some(AutSpec::Raw { alpha, beta, gamma, delta, epsilon }) => {
            let map = AffineMap {
                alpha: elem(&f, alpha)?,
                beta: elem(&f, beta)?,
                gamma: elem(&f, gamma)?,
                delta: elem(&f, delta)?,
                epsilon: elem(&f, epsilon)?,
            };
            Some(Automorphism::new(curve.clone(), map))
        }
    }
    .transpose()
    .map_err(constraint)?;
    Ok(Resolved { curve, sigma, family_preset })
}
