//! Named curve and automorphism pairs: `hyper-31`, `hyper-41`, `hyper-73`,
//! `kummer-127`, `hermitian-Q`, `normtrace-Q-R`, `quotient-Q-M` and
//! `maximal-Q-G`.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::aut::{AutError, Automorphism};
use crate::census::{maximal_hyperelliptic, CensusError};
use crate::curve::{CurveError, Family, KummerCurve};
use crate::gf::{Fe, FieldCtx, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown preset id {0:?}")]
    UnknownId(String),
    #[error("preset {id}: {reason}")]
    Unavailable { id: String, reason: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Family tag and the integers following it in the id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresetId {
    pub name: String,
    pub params: Vec<u64>,
}

impl PresetId {
    pub fn parse(id: &str) -> Result<Self, CatalogError> {
        let mut parts = id.split('-');
        let name = parts.next().unwrap_or_default().to_string();
        let params: Result<Vec<u64>, _> = parts.map(str::parse).collect();
        let params = params.map_err(|_| CatalogError::UnknownId(id.to_string()))?;
        let arity = match name.as_str() {
            "hyper" | "kummer" | "hermitian" => 1,
            "normtrace" | "quotient" | "maximal" => 2,
            _ => return Err(CatalogError::UnknownId(id.to_string())),
        };
        if params.len() != arity {
            return Err(CatalogError::UnknownId(id.to_string()));
        }
        Ok(PresetId { name, params })
    }
}

#[derive(Debug, Clone)]
pub struct Preset {
    pub id: String,
    pub curve: Arc<KummerCurve>,
    pub sigma: Automorphism,
}

pub const FIXED_IDS: [&str; 4] = ["hyper-31", "hyper-41", "hyper-73", "kummer-127"];

fn unavailable(id: &str, reason: impl Into<String>) -> CatalogError {
    CatalogError::Unavailable { id: id.to_string(), reason: reason.into() }
}

fn fixed(p: u32, m: u64, b: &[i64], family: Family, ex: i64, ey: i64, id: &str) -> Result<Preset, CatalogError> {
    let f = FieldCtx::prime(p)?;
    let curve = Arc::new(KummerCurve::from_ints(f.clone(), m, b, family)?);
    let sigma = Automorphism::diagonal(curve.clone(), f.from_int(ex), f.from_int(ey))?;
    Ok(Preset { id: id.to_string(), curve, sigma })
}

/// Nonzero `c` with `c^q + c = 0`.
pub fn hermitian_translation(f: &FieldCtx, q: u64) -> Option<Fe> {
    f.elements().find(|&c| !c.is_zero() && f.add(f.pow(c, q), c).is_zero())
}

/// Nonzero `a` with trace zero down to `F_q`.
pub fn trace_zero_element(f: &FieldCtx) -> Option<Fe> {
    f.elements().find(|&a| !a.is_zero() && f.trace(a, f.h()).map(|t| t.is_zero()).unwrap_or(false))
}

pub fn preset(id: &str) -> Result<Preset, CatalogError> {
    let pid = PresetId::parse(id)?;
    let p = &pid.params;
    match (pid.name.as_str(), p.as_slice()) {
        ("hyper", [31]) => fixed(31, 2, &[1, 0, 0, 0, 0, 1], Family::Hyperelliptic, -1, 2, id),
        ("hyper", [41]) => fixed(41, 2, &[0, -1, 0, 0, 0, 1], Family::Hyperelliptic, 3, 9, id),
        ("hyper", [73]) => fixed(73, 2, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1], Family::Hyperelliptic, -1, 2, id),
        // 100^3 = 2 makes (100 x, 2 y) scale both sides of x^3 = y^8 - y by 2
        ("kummer", [127]) => fixed(127, 3, &[0, -1, 0, 0, 0, 0, 0, 0, 1], Family::Generic, 100, 2, id),
        ("hermitian", &[q]) => {
            let curve = Arc::new(KummerCurve::hermitian(q)?);
            let f = curve.field().clone();
            let c = hermitian_translation(&f, q).ok_or_else(|| unavailable(id, "no translation"))?;
            let sigma = Automorphism::hermitian_psi(curve.clone(), Fe::ONE, Fe::ZERO, c)?;
            Ok(Preset { id: id.to_string(), curve, sigma })
        }
        ("normtrace", &[q, r]) => {
            let r = u32::try_from(r).map_err(|_| unavailable(id, "r too large"))?;
            let curve = Arc::new(KummerCurve::norm_trace(q, r)?);
            let f = curve.field().clone();
            let a = trace_zero_element(&f).ok_or_else(|| unavailable(id, "no trace-zero element"))?;
            let sigma = Automorphism::norm_trace_map(curve.clone(), Fe::ONE, a)?;
            Ok(Preset { id: id.to_string(), curve, sigma })
        }
        ("quotient", &[q, m]) => {
            let curve = Arc::new(KummerCurve::hermitian_quotient(q, m)?);
            let zeta = curve.field().element_of_order(m).ok_or_else(|| unavailable(id, format!("no element of order {m}")))?;
            let sigma = Automorphism::quotient_eta(curve.clone(), zeta)?;
            Ok(Preset { id: id.to_string(), curve, sigma })
        }
        ("maximal", &[q, g]) => {
            let (curve, sigma) = maximal_hyperelliptic(q, g)?;
            Ok(Preset { id: id.to_string(), curve: Arc::new(curve), sigma })
        }
        _ => Err(CatalogError::UnknownId(id.to_string())),
    }
}

/// A few automorphisms per family that between them reach every census case
/// the field allows. Candidates the curve rejects are skipped.
pub fn sample_maps(curve: &Arc<KummerCurve>) -> Vec<Automorphism> {
    let f = curve.field().clone();
    let g = f.generator();
    let mut out = Vec::new();
    match curve.family() {
        Family::Hermitian { q } => {
            let c0 = hermitian_translation(&f, q).unwrap_or(Fe::ZERO);
            let mut cands = vec![(Fe::ONE, c0), (f.neg(Fe::ONE), c0)];
            if let Some(a) = f.element_of_order(q + 1) {
                cands.push((a, Fe::ZERO));
            }
            cands.push((g, Fe::ZERO));
            for (a, c) in cands {
                if let Ok(s) = Automorphism::hermitian_psi(curve.clone(), a, Fe::ZERO, c) {
                    out.push(s);
                }
            }
        }
        Family::NormTrace { .. } => {
            let a0 = trace_zero_element(&f).unwrap_or(Fe::ZERO);
            let mut cands = vec![(Fe::ONE, a0), (g, Fe::ZERO), (g, a0)];
            if let Some(b) = f.element_of_order(curve.m()).filter(|&b| b != Fe::ONE) {
                cands.push((b, a0));
            }
            for (b, a) in cands {
                if let Ok(s) = Automorphism::norm_trace_map(curve.clone(), b, a) {
                    out.push(s);
                }
            }
        }
        Family::HermitianQuotient { .. } => {
            if let Some(zeta) = f.element_of_order(curve.m()) {
                out.extend(Automorphism::quotient_eta(curve.clone(), zeta));
            }
        }
        Family::Generic | Family::Hyperelliptic => {}
    }
    out.dedup_by(|a, b| a.map() == b.map());
    out
}
