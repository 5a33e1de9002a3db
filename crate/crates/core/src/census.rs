//! Orbit structures and code parameters predicted from closed formulas for
//! each curve family, and comparison against computed partitions.
//!
//! Nothing here walks an orbit: predictions use point-count formulas, root
//! counts of `B` and element orders only.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::aut::{AutError, Automorphism, OrbitPartition};
use crate::curve::{CurveError, Family, KummerCurve, Point};
use crate::gf::{prime_power, Fe, FieldCtx, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{what}: {num} is not divisible by {den}")]
    NonIntegral { what: &'static str, num: u64, den: u64 },
    #[error("automorphism matches no case: {0}")]
    NoCase(String),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Field(#[from] GfError),
}

fn pre(cond: bool, msg: impl FnOnce() -> String) -> Result<(), CensusError> {
    if cond {
        Ok(())
    } else {
        Err(CensusError::Precondition(msg()))
    }
}

fn exact_div(what: &'static str, num: u64, den: u64) -> Result<usize, CensusError> {
    if den == 0 || num % den != 0 {
        return Err(CensusError::NonIntegral { what, num, den });
    }
    Ok((num / den) as usize)
}

/// Parameters `[n, t + 1 - g, >= n - t]` for `t_lo < t < t_hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictedParams {
    pub kind: &'static str,
    pub n: usize,
    pub genus: u64,
    pub blocks: Vec<usize>,
    pub t_lo: i64,
    pub t_hi: i64,
}

impl PredictedParams {
    fn new(kind: &'static str, genus: u64, blocks: Vec<usize>) -> Self {
        let n = blocks.iter().sum();
        PredictedParams { kind, n, genus, blocks, t_lo: 2 * genus as i64 - 2, t_hi: n as i64 }
    }

    pub fn k(&self, t: u64) -> i64 {
        t as i64 + 1 - self.genus as i64
    }

    pub fn designed_distance(&self, t: u64) -> i64 {
        self.n as i64 - t as i64
    }

    pub fn t_range(&self) -> std::ops::Range<u64> {
        (self.t_lo + 1).max(0) as u64..self.t_hi.max(0) as u64
    }

    pub fn co_index(&self) -> String {
        crate::code::co_index(&self.blocks)
    }
}

fn blocks(groups: &[(usize, usize)]) -> Vec<usize> {
    groups.iter().flat_map(|&(len, count)| std::iter::repeat(len).take(count)).collect()
}

/// Predicted orbit-length multiset over the affine points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub family: &'static str,
    pub case: String,
    pub order: u64,
    pub lengths: BTreeMap<usize, usize>,
    pub affine_count: usize,
    pub short_sets: Vec<BTreeSet<Point>>,
    pub params: Vec<PredictedParams>,
    pub notes: Vec<String>,
}

impl OrbitCensus {
    fn new(family: &'static str, case: impl Into<String>, order: u64, groups: &[(usize, usize)]) -> Self {
        let mut lengths = BTreeMap::new();
        for &(len, count) in groups {
            if count > 0 {
                *lengths.entry(len).or_insert(0) += count;
            }
        }
        let affine_count = groups.iter().map(|&(l, c)| l * c).sum();
        OrbitCensus {
            family,
            case: case.into(),
            order,
            lengths,
            affine_count,
            short_sets: Vec::new(),
            params: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// `(length, count)` for lengths below the order.
    pub fn short_orbits(&self) -> Vec<(usize, usize)> {
        self.lengths.iter().filter(|(&l, _)| (l as u64) < self.order).map(|(&l, &c)| (l, c)).collect()
    }

    pub fn long_count(&self) -> usize {
        self.lengths.get(&(self.order as usize)).copied().unwrap_or(0)
    }

    pub fn balanced(&self) -> bool {
        self.lengths.iter().map(|(l, c)| l * c).sum::<usize>() == self.affine_count
    }
}

fn b_equals(curve: &KummerCurve, coeffs: &[i64]) -> bool {
    let f = curve.field();
    let want: Vec<Fe> = coeffs.iter().map(|&c| f.from_int(c)).collect();
    curve.b() == want.as_slice()
}

/// `tau = (eps x, y)` with `eps` of order `m`: the roots of `B` give fixed
/// points `(0, v)` and every other affine point has a full orbit.
pub fn census_diagonal_kummer(curve: &KummerCurve, eps: Fe) -> Result<OrbitCensus, CensusError> {
    let f = curve.field();
    let m = curve.m();
    let q1 = f.order() as u64 - 1;
    pre(q1 % m == 0, || format!("m = {m} does not divide {q1}"))?;
    pre(!eps.is_zero() && f.element_order(eps)? == m, || format!("eps must have order {m}"))?;
    let roots = curve.b_roots();
    let l = roots.len();
    let count = curve.points().count();
    let long = exact_div("long orbit count", (count - l - 1) as u64, m)?;
    let mut c = OrbitCensus::new("kummer", "diagonal", m, &[(1, l), (m as usize, long)]);
    c.short_sets = roots.iter().map(|&v| BTreeSet::from([Point::new(Fe::ZERO, v)])).collect();
    c.params.push(PredictedParams::new("qc", curve.genus(), blocks(&[(m as usize, long)])));
    Ok(c)
}

/// `x^2 = y^5 - y` with `sigma = (a x, a^2 y)`, `a` of order 8.
pub fn census_genus2_order8(curve: &KummerCurve) -> Result<OrbitCensus, CensusError> {
    let f = curve.field();
    pre(curve.m() == 2 && b_equals(curve, &[0, -1, 0, 0, 0, 1]), || "curve must be x^2 = y^5 - y".into())?;
    pre(f.p() != 2 && f.p() != 5, || "characteristic must avoid 2 and 5".into())?;
    pre((f.order() - 1) % 8 == 0, || format!("{} is not 1 mod 8", f.order()))?;
    let count = curve.points().count() as u64;
    let long = exact_div("(#Y - 6) / 8", count - 6, 8)?;
    let mut c = OrbitCensus::new("genus2", "order8", 8, &[(1, 1), (4, 1), (8, long)]);
    let i = f.element_of_order(4).expect("4 | Q - 1");
    let (one, mone, mi) = (Fe::ONE, f.neg(Fe::ONE), f.neg(i));
    c.short_sets = vec![
        BTreeSet::from([Point::new(Fe::ZERO, Fe::ZERO)]),
        [one, mone, i, mi].into_iter().map(|y| Point::new(Fe::ZERO, y)).collect(),
    ];
    c.params.push(PredictedParams::new("qc", 2, blocks(&[(8, long)])));
    Ok(c)
}

/// `x^2 = y^5 + 1` with `sigma = (-x, xi y)`, `xi` of order 5.
pub fn census_genus2_order10(curve: &KummerCurve) -> Result<OrbitCensus, CensusError> {
    let f = curve.field();
    pre(curve.m() == 2 && b_equals(curve, &[1, 0, 0, 0, 0, 1]), || "curve must be x^2 = y^5 + 1".into())?;
    pre(f.p() != 2 && f.p() != 5, || "characteristic must avoid 2 and 5".into())?;
    pre((f.order() - 1) % 5 == 0, || format!("{} is not 1 mod 5", f.order()))?;
    let count = curve.points().count() as u64;
    let long = exact_div("(#X - 8) / 10", count - 8, 10)?;
    let mut c = OrbitCensus::new("genus2", "order10", 10, &[(2, 1), (5, 1), (10, long)]);
    let mone = f.neg(Fe::ONE);
    c.short_sets = vec![
        BTreeSet::from([Point::new(Fe::ONE, Fe::ZERO), Point::new(mone, Fe::ZERO)]),
        f.roots_of_unity(5).into_iter().map(|xi| Point::new(Fe::ZERO, f.neg(xi))).collect(),
    ];
    c.params.push(PredictedParams::new("qc", 2, blocks(&[(10, long)])));
    c.params.push(PredictedParams::new("gqc", 2, blocks(&[(2, 1), (5, 1), (10, long)])));
    Ok(c)
}

/// `X_g : x^2 = y^{2g+1} + 1` over `F_{q^2}` and `sigma = (-x, xi y)` with `xi`
/// a primitive `(2g+1)`-th root of unity.
pub fn maximal_hyperelliptic(q: u64, g: u64) -> Result<(KummerCurve, Automorphism), CensusError> {
    let f = FieldCtx::extension_of(q, 2)?;
    let mut b = vec![0i64; 2 * g as usize + 2];
    b[0] = 1;
    b[2 * g as usize + 1] = 1;
    let curve = KummerCurve::from_ints(f.clone(), 2, &b, Family::Hyperelliptic)?;
    let xi = f
        .element_of_order(2 * g + 1)
        .ok_or_else(|| CensusError::Precondition(format!("no element of order {}", 2 * g + 1)))?;
    let sigma = Automorphism::diagonal(std::sync::Arc::new(curve.clone()), f.neg(Fe::ONE), xi)?;
    Ok((curve, sigma))
}

pub fn census_maximal_hyperelliptic(q: u64, g: u64) -> Result<OrbitCensus, CensusError> {
    pre(q % 2 == 1, || format!("q = {q} must be odd"))?;
    pre(g >= 1 && (q + 1) % (2 * g + 1) == 0, || format!("2g + 1 = {} must divide q + 1", 2 * g + 1))?;
    let order = 4 * g + 2;
    let long = (q - 1) as usize / 2 + exact_div("(q - 2)(q + 1) / (4g + 2)", (q - 2) * (q + 1), order)?;
    let mut c = OrbitCensus::new("maximal_hyperelliptic", "sigma", order, &[(2, 1), (2 * g as usize + 1, 1), (order as usize, long)]);
    let predicted_count = q * q + 2 * g * q + 1;
    if c.affine_count as u64 + 1 != predicted_count {
        c.notes.push(format!("orbit total {} + 1 differs from q^2 + 2gq + 1 = {predicted_count}", c.affine_count));
    }
    let qc_n = q * q + 2 * g * (q - 1) - 3;
    let gqc_n = q * q + 2 * g * q;
    c.params.push(PredictedParams::new("qc", g, blocks(&[(order as usize, exact_div("QC length", qc_n, order)?)])));
    c.params.push(PredictedParams::new("gqc", g, blocks(&[(2, 1), (2 * g as usize + 1, 1), (order as usize, long)])));
    debug_assert_eq!(c.params[1].n as u64, gqc_n);
    Ok(c)
}

/// Norm-trace curve and `sigma = (b x, b^m y + a)`, dispatched over the
/// translation, scaling and mixed cases.
pub fn census_norm_trace(curve: &KummerCurve, b: Fe, a: Fe) -> Result<OrbitCensus, CensusError> {
    let Family::NormTrace { q, r } = curve.family() else {
        return Err(CensusError::Precondition("curve is not a norm-trace curve".into()));
    };
    let f = curve.field();
    let p = f.p() as u64;
    pre(!b.is_zero(), || "b must be nonzero".into())?;
    pre(f.trace(a, f.h())?.is_zero(), || "Tr(a) must be zero".into())?;
    let m = (q.pow(r) - 1) / (q - 1);
    let gamma = f.pow(b, m);
    let ord_b = f.element_order(b)?;
    let ord_g = f.element_order(gamma)?;
    let affine = q.pow(2 * r - 1);
    let omega = q.pow(r - 1);
    let off = affine - omega;
    let genus = curve.genus();

    let c = if b == Fe::ONE {
        if a.is_zero() {
            return Err(CensusError::NoCase("identity map".into()));
        }
        let count = exact_div("q^(2r-1) / p", affine, p)?;
        let mut c = OrbitCensus::new("norm_trace", "translation", p, &[(p as usize, count)]);
        c.notes.push(format!(
            "the count q^(2r)/p = {} would need more than the q^(2r-1) affine points; using q^(2r-1)/p = {count}",
            q.pow(2 * r) / p
        ));
        c.params.push(PredictedParams::new("qc", genus, blocks(&[(p as usize, count)])));
        c
    } else if gamma != Fe::ONE || a.is_zero() {
        let fixed_y = if a.is_zero() { Fe::ZERO } else { f.div(a, f.sub(Fe::ONE, gamma))? };
        let case = if a.is_zero() { "scaling" } else { "mixed_gamma_ne_1" };
        let short = exact_div("(q^(r-1) - 1) / ord(gamma)", omega - 1, ord_g)?;
        let long = exact_div("off-Omega count / ord(b)", off, ord_b)?;
        let mut c = OrbitCensus::new("norm_trace", case, ord_b, &[(1, 1), (ord_g as usize, short), (ord_b as usize, long)]);
        c.short_sets = vec![BTreeSet::from([Point::new(Fe::ZERO, fixed_y)])];
        c.params.push(PredictedParams::new("qc", genus, blocks(&[(ord_b as usize, long)])));
        if ord_g > 1 {
            c.params.push(PredictedParams::new("gqc", genus, blocks(&[(ord_g as usize, short), (ord_b as usize, long)])));
        }
        c
    } else {
        let order = p * ord_b;
        let short = exact_div("q^(r-1) / p", omega, p)?;
        let long = exact_div("off-Omega count / (p ord(b))", off, order)?;
        let mut c = OrbitCensus::new("norm_trace", "mixed_gamma_eq_1", order, &[(p as usize, short), (order as usize, long)]);
        c.params.push(PredictedParams::new("qc", genus, blocks(&[(order as usize, long)])));
        c.params.push(PredictedParams::new("gqc", genus, blocks(&[(p as usize, short), (order as usize, long)])));
        c
    };
    Ok(c)
}

/// Hermitian `psi_{a,b,c}` census. The case is read off `a` and the order
/// of the map.
pub fn census_hermitian(psi: &Automorphism) -> Result<OrbitCensus, CensusError> {
    let curve = psi.curve();
    let Family::Hermitian { q } = curve.family() else {
        return Err(CensusError::Precondition("curve is not Hermitian".into()));
    };
    let f = curve.field();
    let map = psi.map();
    let (a, b, c) = (map.alpha, map.beta, map.epsilon);
    if map.gamma != f.mul(a, f.pow(b, q)) || map.delta != f.pow(a, q + 1) || f.add(f.pow(c, q), c) != f.pow(b, q + 1) {
        return Err(CensusError::NoCase("map is not of the form psi_{a,b,c}".into()));
    }
    let (p, _) = prime_power(q).expect("q is a prime power");
    let p = p as u64;
    let ord = psi.order();
    let genus = curve.genus();
    let affine = q * q * q;
    let cen = if a == Fe::ONE {
        if ord == 1 {
            return Err(CensusError::NoCase("identity map".into()));
        }
        let count = exact_div("q^3 / p", affine, p)?;
        let mut cen = OrbitCensus::new("hermitian", "S_p", p, &[(p as usize, count)]);
        if ord != p {
            cen.notes.push(format!("map order {ord} differs from p = {p}"));
        }
        cen.params.push(PredictedParams::new("qc", genus, blocks(&[(ord as usize, exact_div("q^3 / ord", affine, ord)?)])));
        cen
    } else {
        let long = exact_div("(q^3 - q) / ord", affine - q, ord)?;
        let mut cen = if ord % p == 0 {
            OrbitCensus::new("hermitian", "case1", ord, &[(p as usize, exact_div("q / p", q, p)?), (ord as usize, long)])
        } else if (q + 1) % ord == 0 {
            OrbitCensus::new("hermitian", "case2", ord, &[(1, q as usize), (ord as usize, long)])
        } else {
            let oa = f.element_order(a)?;
            let oaq = f.element_order(f.pow(a, q + 1))?;
            let long_a = exact_div("(q^3 - q) / ord(a)", affine - q, oa)?;
            let short = exact_div("(q - 1) / ord(a^(q+1))", q - 1, oaq)?;
            OrbitCensus::new("hermitian", "case3", ord, &[(1, 1), (oaq as usize, short), (oa as usize, long_a)])
        };
        cen.params.push(PredictedParams::new("qc", genus, blocks(&[(ord as usize, long)])));
        cen
    };
    Ok(cen)
}

/// `C_m : y^q - y = x^m` with `eta = (zeta x, y + 1)`.
pub fn census_hermitian_quotient(q: u64, m: u64) -> Result<OrbitCensus, CensusError> {
    let (p, _) = prime_power(q).ok_or_else(|| CensusError::Precondition(format!("{q} is not a prime power")))?;
    let p = p as u64;
    pre(m > 1, || "m must exceed 1".into())?;
    pre(p != 3, || "characteristic 3 is excluded".into())?;
    pre(m.gcd(&p) == 1, || format!("gcd(m, p) = gcd({m}, {p}) must be 1"))?;
    pre((q + 1) % m == 0, || format!("m = {m} must divide q + 1"))?;
    let order = p * m;
    let off = m * q * (q - 1);
    let short = exact_div("q / p", q, p)?;
    let long = exact_div("mq(q-1) / (pm)", off, order)?;
    let mut c = OrbitCensus::new("hermitian_quotient", "eta", order, &[(p as usize, short), (order as usize, long)]);
    let f = FieldCtx::extension_of(q, 2)?;
    let omega: BTreeSet<Point> = f
        .elements()
        .filter(|&y| f.in_subfield(y, f.h()).unwrap_or(false))
        .map(|y| Point::new(Fe::ZERO, y))
        .collect();
    if short == 1 {
        c.short_sets = vec![omega];
    }
    let genus = (q - 1) * (m - 1) / 2;
    c.params.push(PredictedParams::new("qc", genus, blocks(&[(order as usize, long)])));
    c.params.push(PredictedParams::new("gqc", genus, blocks(&[(p as usize, short), (order as usize, long)])));
    Ok(c)
}

/// Chooses the census that matches the curve family and the shape of `sigma`.
pub fn census_for(sigma: &Automorphism) -> Result<OrbitCensus, CensusError> {
    let curve = sigma.curve();
    let f = curve.field();
    let map = sigma.map();
    let triangular_only = map.beta.is_zero() && map.gamma.is_zero();
    match curve.family() {
        Family::Hermitian { .. } => census_hermitian(sigma),
        Family::NormTrace { .. } => {
            if !triangular_only {
                return Err(CensusError::NoCase("norm-trace census needs (b x, b^m y + a)".into()));
            }
            census_norm_trace(curve, map.alpha, map.epsilon)
        }
        Family::HermitianQuotient { q } => {
            if !triangular_only || map.delta != Fe::ONE || map.epsilon != Fe::ONE {
                return Err(CensusError::NoCase("quotient census needs (zeta x, y + 1)".into()));
            }
            pre(f.element_order(map.alpha)? == curve.m(), || format!("zeta must have order {}", curve.m()))?;
            census_hermitian_quotient(q, curve.m())
        }
        Family::Generic | Family::Hyperelliptic => {
            if !triangular_only || !map.epsilon.is_zero() {
                return Err(CensusError::NoCase("expected a diagonal map".into()));
            }
            let (alpha, delta) = (map.alpha, map.delta);
            if delta == Fe::ONE && alpha != Fe::ONE {
                return census_diagonal_kummer(curve, alpha);
            }
            let d = curve.d();
            let mone = f.neg(Fe::ONE);
            if curve.m() == 2 && alpha == mone && d % 2 == 1 && b_is_monomial_plus_one(curve) {
                let g = (d - 1) / 2;
                let big = f.order() as u64;
                let q = (big as f64).sqrt().round() as u64;
                let maximal = q * q == big && q % 2 == 1 && (q + 1) % d == 0;
                if maximal && f.element_order(delta)? == d {
                    return census_maximal_hyperelliptic(q, g);
                }
                if d == 5 && f.element_order(delta)? == 5 {
                    return census_genus2_order10(curve);
                }
            }
            if b_equals(curve, &[0, -1, 0, 0, 0, 1]) && !alpha.is_zero() && f.element_order(alpha)? == 8 && delta == f.mul(alpha, alpha) {
                return census_genus2_order8(curve);
            }
            Err(CensusError::NoCase(format!("no census covers {} with {}", curve.describe(), sigma.describe())))
        }
    }
}

fn b_is_monomial_plus_one(curve: &KummerCurve) -> bool {
    let b = curve.b();
    b.first() == Some(&Fe::ONE) && b.last() == Some(&Fe::ONE) && b[1..b.len() - 1].iter().all(|c| c.is_zero())
}

/// Structured comparison of a census with a computed partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub family: &'static str,
    pub case: String,
    pub pass: bool,
    pub predicted_order: u64,
    pub computed_order: u64,
    pub predicted: BTreeMap<usize, usize>,
    pub computed: BTreeMap<usize, usize>,
    pub diffs: Vec<String>,
    pub notes: Vec<String>,
}

pub fn crosscheck(census: &OrbitCensus, partition: &OrbitPartition) -> CrosscheckReport {
    let computed = partition.length_census();
    let mut diffs = Vec::new();
    if census.order != partition.order {
        diffs.push(format!("order: predicted {}, computed {}", census.order, partition.order));
    }
    if census.affine_count != partition.affine_count {
        diffs.push(format!("affine points: predicted {}, computed {}", census.affine_count, partition.affine_count));
    }
    let lens: BTreeSet<usize> = census.lengths.keys().chain(computed.keys()).copied().collect();
    for l in lens {
        let (pc, cc) = (census.lengths.get(&l).copied().unwrap_or(0), computed.get(&l).copied().unwrap_or(0));
        if pc != cc {
            diffs.push(format!("orbits of length {l}: predicted {pc}, computed {cc}"));
        }
    }
    let computed_sets: Vec<BTreeSet<Point>> =
        partition.orbits.iter().map(|o| o.points.iter().copied().collect()).collect();
    for s in &census.short_sets {
        if !computed_sets.contains(s) {
            let first = s.iter().next().map(|p| p.to_string()).unwrap_or_default();
            diffs.push(format!("predicted orbit containing {first} (size {}) not found", s.len()));
        }
    }
    CrosscheckReport {
        family: census.family,
        case: census.case.clone(),
        pass: diffs.is_empty(),
        predicted_order: census.order,
        computed_order: partition.order,
        predicted: census.lengths.clone(),
        computed,
        diffs,
        notes: census.notes.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::orbit_partition;
    use std::sync::Arc;

    fn check(census: &OrbitCensus, sigma: &Automorphism) -> CrosscheckReport {
        assert!(census.balanced());
        crosscheck(census, &orbit_partition(sigma, &sigma.curve().points()).unwrap())
    }

    #[test]
    fn genus2_examples() {
        let f = FieldCtx::prime(41).unwrap();
        let c = Arc::new(KummerCurve::from_ints(f.clone(), 2, &[0, -1, 0, 0, 0, 1], Family::Hyperelliptic).unwrap());
        let cen = census_genus2_order8(&c).unwrap();
        assert_eq!(cen.long_count(), 6);
        assert_eq!(cen.params[0].n, 48);
        let s = Automorphism::diagonal(c.clone(), f.from_int(3), f.from_int(9)).unwrap();
        let rep = check(&cen, &s);
        assert!(rep.pass, "{:?}", rep.diffs);

        let f31 = FieldCtx::prime(31).unwrap();
        let c = Arc::new(KummerCurve::from_ints(f31.clone(), 2, &[1, 0, 0, 0, 0, 1], Family::Hyperelliptic).unwrap());
        let cen = census_genus2_order10(&c).unwrap();
        assert_eq!(cen.long_count(), 2);
        assert_eq!(cen.params[1].n, 27);
        let s = Automorphism::diagonal(c.clone(), f31.from_int(-1), f31.from_int(2)).unwrap();
        assert!(check(&cen, &s).pass);
        // negative control: sigma^2 has order 5
        let rep = check(&cen, &s.pow(2));
        assert!(!rep.pass);
        assert!(!rep.diffs.is_empty());
        assert!(matches!(census_genus2_order8(&c), Err(CensusError::Precondition(_))));
    }

    #[test]
    fn diagonal_kummer_on_hermitian() {
        let h = Arc::new(KummerCurve::hermitian(3).unwrap());
        let f = h.field().clone();
        let eps = f.element_of_order(4).unwrap();
        let cen = census_diagonal_kummer(&h, eps).unwrap();
        assert_eq!(cen.lengths, BTreeMap::from([(1, 3), (4, 6)]));
        let s = Automorphism::diagonal(h, eps, Fe::ONE).unwrap();
        assert!(check(&cen, &s).pass);
    }

    #[test]
    fn maximal_hyperelliptic_q9() {
        let cen = census_maximal_hyperelliptic(9, 2).unwrap();
        assert_eq!(cen.long_count(), 11);
        assert_eq!(cen.params[0].n, 110);
        assert_eq!(cen.params[1].n, 117);
        assert!(cen.notes.is_empty());
        let (_, s) = maximal_hyperelliptic(9, 2).unwrap();
        assert!(check(&cen, &s).pass);
        assert!(census_maximal_hyperelliptic(7, 2).is_err());
    }

    #[test]
    fn hermitian_cases() {
        let h = Arc::new(KummerCurve::hermitian(3).unwrap());
        let f = h.field().clone();
        let c0 = f.elements().find(|&c| !c.is_zero() && f.add(f.pow(c, 3), c).is_zero()).unwrap();
        let a8 = f.element_of_order(8).unwrap();
        let a4 = f.element_of_order(4).unwrap();
        let cases = [
            (Fe::ONE, c0, "S_p"),
            (f.neg(Fe::ONE), c0, "case1"),
            (a4, Fe::ZERO, "case2"),
            (a8, Fe::ZERO, "case3"),
        ];
        for (a, c, name) in cases {
            let psi = Automorphism::hermitian_psi(h.clone(), a, Fe::ZERO, c).unwrap();
            let cen = census_hermitian(&psi).unwrap();
            assert_eq!(cen.case, name);
            let rep = check(&cen, &psi);
            assert!(rep.pass, "{name}: {:?}", rep.diffs);
        }
    }

    #[test]
    fn norm_trace_cases() {
        let c = Arc::new(KummerCurve::norm_trace(2, 3).unwrap());
        let f = c.field().clone();
        let b7 = f.element_of_order(7).unwrap();
        let a = f.elements().find(|&a| !a.is_zero() && f.trace(a, 1).unwrap().is_zero()).unwrap();
        for (b, a, name) in [(Fe::ONE, a, "translation"), (b7, Fe::ZERO, "scaling"), (b7, a, "mixed_gamma_eq_1")] {
            let s = Automorphism::norm_trace_map(c.clone(), b, a).unwrap();
            let cen = census_norm_trace(&c, b, a).unwrap();
            assert_eq!(cen.case, name);
            let rep = check(&cen, &s);
            assert!(rep.pass, "{name}: {:?}", rep.diffs);
        }
        assert!(matches!(census_norm_trace(&c, Fe::ONE, Fe::ZERO), Err(CensusError::NoCase(_))));
    }

    #[test]
    fn norm_trace_gamma_not_one_fixed_point() {
        let c = Arc::new(KummerCurve::norm_trace(3, 3).unwrap());
        let f = c.field().clone();
        let b = f.generator();
        let a = f.elements().find(|&a| !a.is_zero() && f.trace(a, 1).unwrap().is_zero()).unwrap();
        let s = Automorphism::norm_trace_map(c.clone(), b, a).unwrap();
        let cen = census_norm_trace(&c, b, a).unwrap();
        assert_eq!(cen.case, "mixed_gamma_ne_1");
        let rep = check(&cen, &s);
        assert!(rep.pass, "{:?}", rep.diffs);
        let gamma = f.pow(b, 13);
        let printed = Point::new(Fe::ZERO, f.div(a, f.sub(gamma, Fe::ONE)).unwrap());
        assert_ne!(s.apply(&printed).unwrap(), printed);
    }

    #[test]
    fn quotient_preconditions() {
        assert!(matches!(census_hermitian_quotient(5, 1), Err(CensusError::Precondition(_))));
        assert!(matches!(census_hermitian_quotient(9, 2), Err(CensusError::Precondition(_))));
        let cen = census_hermitian_quotient(5, 2).unwrap();
        assert_eq!(cen.lengths, BTreeMap::from([(5, 1), (10, 4)]));
        assert_eq!(cen.params[0].n, 40);
        assert_eq!(cen.params[1].blocks, vec![5, 10, 10, 10, 10]);
    }

    #[test]
    fn quotient_census_holds_when_m_divides_half_of_q_plus_one() {
        let cen = census_hermitian_quotient(5, 3).unwrap();
        let c = Arc::new(KummerCurve::hermitian_quotient(5, 3).unwrap());
        let f = c.field().clone();
        let eta = Automorphism::quotient_eta(c, f.element_of_order(3).unwrap()).unwrap();
        let rep = check(&cen, &eta);
        assert!(rep.pass, "{:?}", rep.diffs);
    }
}
