//! Triangular automorphisms `(x, y) -> (ax + b, cx + dy + e)` of a Kummer curve
//! and the orbits they cut out on the affine rational points.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::curve::{CurveError, Family, KummerCurve, Point, RationalPointSet};
use crate::gf::{Fe, FieldCtx};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("map is not invertible (alpha = {alpha}, delta = {delta})")]
    NotInvertible { alpha: Fe, delta: Fe },
    #[error("map does not send the curve to itself")]
    DoesNotPreserveCurve,
    #[error("Hermitian constraint c^q + c = b^(q+1) fails")]
    HermitianConstraint,
    #[error("translation {0} does not have trace zero")]
    NonZeroTrace(Fe),
    #[error("{preset} needs a {expected} curve, got {got}")]
    WrongFamily { preset: &'static str, expected: &'static str, got: &'static str },
    #[error("order search exceeded {0} compositions")]
    OrderCapExceeded(u64),
    #[error("image {0} of an enumerated point is missing from the point set")]
    ImageOutsidePointSet(Point),
    #[error("partition has no long orbits")]
    NoLongOrbits,
    #[error("partition has no orbits of length {0}")]
    NoOrbitsOfLength(usize),
}

/// Coefficients of `(x, y) -> (alpha x + beta, gamma x + delta y + epsilon)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AffineMap {
    pub alpha: Fe,
    pub beta: Fe,
    pub gamma: Fe,
    pub delta: Fe,
    pub epsilon: Fe,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        alpha: Fe::ONE,
        beta: Fe::ZERO,
        gamma: Fe::ZERO,
        delta: Fe::ONE,
        epsilon: Fe::ZERO,
    };

    pub fn diagonal(alpha: Fe, delta: Fe) -> Self {
        AffineMap { alpha, delta, ..Self::IDENTITY }
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, f: &FieldCtx, inner: &AffineMap) -> AffineMap {
        let (o, i) = (self, inner);
        AffineMap {
            alpha: f.mul(o.alpha, i.alpha),
            beta: f.add(f.mul(o.alpha, i.beta), o.beta),
            gamma: f.add(f.mul(o.gamma, i.alpha), f.mul(o.delta, i.gamma)),
            delta: f.mul(o.delta, i.delta),
            epsilon: f.add(f.add(f.mul(o.gamma, i.beta), f.mul(o.delta, i.epsilon)), o.epsilon),
        }
    }

    pub fn pow(&self, f: &FieldCtx, mut e: u64) -> AffineMap {
        let mut acc = Self::IDENTITY;
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(f, &base);
            }
            base = base.compose(f, &base);
            e >>= 1;
        }
        acc
    }

    pub fn apply(&self, f: &FieldCtx, p: &Point) -> Point {
        Point {
            x: f.add(f.mul(self.alpha, p.x), self.beta),
            y: f.add(f.add(f.mul(self.gamma, p.x), f.mul(self.delta, p.y)), self.epsilon),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

/// Dense bivariate polynomial, `c[i * stride + j]` is the coefficient of `X^i Y^j`.
struct Bivariate {
    stride: usize,
    c: Vec<Fe>,
}

impl Bivariate {
    fn zero(size: usize) -> Self {
        Bivariate { stride: size, c: vec![Fe::ZERO; size * size] }
    }

    fn at(&self, i: usize, j: usize) -> Fe {
        self.c[i * self.stride + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut Fe {
        &mut self.c[i * self.stride + j]
    }

    /// Multiplies in place by `gx X + dy Y + e`; the caller keeps total degree
    /// below the stride.
    fn mul_linear(&self, f: &FieldCtx, gx: Fe, dy: Fe, e: Fe) -> Self {
        let n = self.stride;
        let mut out = Bivariate::zero(n);
        for i in 0..n {
            for j in 0..n - i {
                let mut v = f.mul(e, self.at(i, j));
                if i > 0 {
                    v = f.add(v, f.mul(gx, self.at(i - 1, j)));
                }
                if j > 0 {
                    v = f.add(v, f.mul(dy, self.at(i, j - 1)));
                }
                *out.at_mut(i, j) = v;
            }
        }
        out
    }
}

/// Expands `F(alpha X + beta, gamma X + delta Y + epsilon)` for
/// `F = X^m - B(Y)` and returns `lambda` with `F ∘ map = lambda F`, if any.
fn preservation_factor(curve: &KummerCurve, map: &AffineMap) -> Option<Fe> {
    let f = curve.field();
    let m = curve.m() as usize;
    let b = curve.b();
    let size = m.max(b.len() - 1) + 1;

    let mut lhs = Bivariate::zero(size);
    *lhs.at_mut(0, 0) = Fe::ONE;
    for _ in 0..m {
        lhs = lhs.mul_linear(f, map.alpha, Fe::ZERO, map.beta);
    }
    let mut power = Bivariate::zero(size);
    *power.at_mut(0, 0) = Fe::ONE;
    for (k, &bk) in b.iter().enumerate() {
        if k > 0 {
            power = power.mul_linear(f, map.gamma, map.delta, map.epsilon);
        }
        if bk.is_zero() {
            continue;
        }
        for (dst, &src) in lhs.c.iter_mut().zip(&power.c) {
            *dst = f.sub(*dst, f.mul(bk, src));
        }
    }

    let lambda = lhs.at(m, 0);
    if lambda.is_zero() {
        return None;
    }
    let mut expected = Bivariate::zero(size);
    *expected.at_mut(m, 0) = lambda;
    for (j, &bj) in b.iter().enumerate() {
        *expected.at_mut(0, j) = f.sub(expected.at(0, j), f.mul(lambda, bj));
    }
    (expected.c == lhs.c).then_some(lambda)
}

#[derive(Clone)]
pub struct Automorphism {
    curve: Arc<KummerCurve>,
    map: AffineMap,
    lambda: Fe,
    order: u64,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Automorphism").field("map", &self.map).field("order", &self.order).finish()
    }
}

impl Automorphism {
    /// Validates the map symbolically against the curve equation and computes
    /// its order.
    pub fn new(curve: Arc<KummerCurve>, map: AffineMap) -> Result<Self, AutError> {
        let f = curve.field().clone();
        for c in [map.alpha, map.beta, map.gamma, map.delta, map.epsilon] {
            f.check(c).map_err(CurveError::from)?;
        }
        if map.alpha.is_zero() || map.delta.is_zero() {
            return Err(AutError::NotInvertible { alpha: map.alpha, delta: map.delta });
        }
        let lambda = preservation_factor(&curve, &map).ok_or(AutError::DoesNotPreserveCurve)?;

        let cap = f.p() as u64 * (f.order() as u64 - 1);
        let mut order = 1;
        let mut cur = map;
        while !cur.is_identity() {
            if order >= cap {
                return Err(AutError::OrderCapExceeded(cap));
            }
            cur = map.compose(&f, &cur);
            order += 1;
        }
        Ok(Automorphism { curve, map, lambda, order })
    }

    pub fn identity(curve: Arc<KummerCurve>) -> Self {
        Self::new(curve, AffineMap::IDENTITY).expect("identity preserves every curve")
    }

    /// `(x, y) -> (ex x, ey y)`.
    pub fn diagonal(curve: Arc<KummerCurve>, ex: Fe, ey: Fe) -> Result<Self, AutError> {
        Self::new(curve, AffineMap::diagonal(ex, ey))
    }

    /// Hermitian `psi_{a,b,c} : (x, y) -> (a x + b, a b^q x + a^{q+1} y + c)`
    /// with `c^q + c = b^{q+1}`.
    pub fn hermitian_psi(curve: Arc<KummerCurve>, a: Fe, b: Fe, c: Fe) -> Result<Self, AutError> {
        let Family::Hermitian { q } = curve.family() else {
            return Err(AutError::WrongFamily {
                preset: "hermitian_psi",
                expected: "hermitian",
                got: curve.family().name(),
            });
        };
        let f = curve.field().clone();
        if f.add(f.pow(c, q), c) != f.pow(b, q + 1) {
            return Err(AutError::HermitianConstraint);
        }
        let map = AffineMap {
            alpha: a,
            beta: b,
            gamma: f.mul(a, f.pow(b, q)),
            delta: f.pow(a, q + 1),
            epsilon: c,
        };
        Self::new(curve, map)
    }

    /// Norm-trace map `(x, y) -> (b x, b^m y + a)` with `Tr(a) = 0`.
    pub fn norm_trace_map(curve: Arc<KummerCurve>, b: Fe, a: Fe) -> Result<Self, AutError> {
        if !matches!(curve.family(), Family::NormTrace { .. }) {
            return Err(AutError::WrongFamily {
                preset: "norm_trace_map",
                expected: "norm_trace",
                got: curve.family().name(),
            });
        }
        let f = curve.field().clone();
        let tr = f.trace(a, f.h()).map_err(CurveError::from)?;
        if !tr.is_zero() {
            return Err(AutError::NonZeroTrace(a));
        }
        let map = AffineMap { alpha: b, delta: f.pow(b, curve.m()), epsilon: a, ..AffineMap::IDENTITY };
        Self::new(curve, map)
    }

    /// `eta : (x, y) -> (zeta x, y + 1)` on `y^q - y = x^m`.
    pub fn quotient_eta(curve: Arc<KummerCurve>, zeta: Fe) -> Result<Self, AutError> {
        if !matches!(curve.family(), Family::HermitianQuotient { .. }) {
            return Err(AutError::WrongFamily {
                preset: "quotient_eta",
                expected: "hermitian_quotient",
                got: curve.family().name(),
            });
        }
        let map = AffineMap { alpha: zeta, epsilon: Fe::ONE, ..AffineMap::IDENTITY };
        Self::new(curve, map)
    }

    pub fn curve(&self) -> &Arc<KummerCurve> {
        &self.curve
    }

    pub fn map(&self) -> &AffineMap {
        &self.map
    }

    /// The constant with `F ∘ sigma = lambda F`.
    pub fn lambda(&self) -> Fe {
        self.lambda
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn compose(&self, inner: &Automorphism) -> Result<Automorphism, AutError> {
        Self::new(self.curve.clone(), self.map.compose(self.curve.field(), &inner.map))
    }

    pub fn pow(&self, e: u64) -> Automorphism {
        Self::new(self.curve.clone(), self.map.pow(self.curve.field(), e))
            .expect("powers of an automorphism are automorphisms")
    }

    pub fn apply(&self, p: &Point) -> Result<Point, AutError> {
        self.curve.check_point(p)?;
        Ok(self.map.apply(self.curve.field(), p))
    }

    pub fn describe(&self) -> String {
        let f = self.curve.field();
        let AffineMap { alpha, beta, gamma, delta, epsilon } = self.map;
        let x_image = linear_form(f, &[(alpha, "x"), (beta, "")]);
        let y_image = linear_form(f, &[(gamma, "x"), (delta, "y"), (epsilon, "")]);
        format!("(x, y) -> ({x_image}, {y_image}), order {}", self.order)
    }
}

fn linear_form(f: &FieldCtx, terms: &[(Fe, &str)]) -> String {
    let parts: Vec<String> = terms
        .iter()
        .filter(|(c, _)| !c.is_zero())
        .map(|&(c, var)| {
            let shown = f.display(c);
            match (c == Fe::ONE, var.is_empty()) {
                (true, false) => var.to_string(),
                (_, true) => shown,
                _ if shown.contains('+') => format!("({shown}){var}"),
                _ => format!("{shown}{var}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// One orbit, listed as `[P, sP, s^2 P, ..]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub points: Vec<Point>,
    pub long: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_fixed_point(&self) -> bool {
        self.points.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub order: u64,
    pub orbits: Vec<Orbit>,
    pub affine_count: usize,
}

/// Partitions the affine points into orbits. Orbits are sorted by their
/// smallest point and each one starts there.
pub fn orbit_partition(sigma: &Automorphism, points: &RationalPointSet) -> Result<OrbitPartition, AutError> {
    let f = sigma.curve().field();
    let mut seen = vec![false; points.affine.len()];
    let mut orbits = Vec::new();
    for (start_idx, &start) in points.affine.iter().enumerate() {
        if seen[start_idx] {
            continue;
        }
        seen[start_idx] = true;
        let mut orbit = vec![start];
        let mut cur = sigma.map().apply(f, &start);
        while cur != start {
            let idx = points.position(&cur).ok_or(AutError::ImageOutsidePointSet(cur))?;
            if seen[idx] || orbit.len() as u64 >= sigma.order() {
                return Err(AutError::ImageOutsidePointSet(cur));
            }
            seen[idx] = true;
            orbit.push(cur);
            cur = sigma.map().apply(f, &cur);
        }
        let long = orbit.len() as u64 == sigma.order();
        orbits.push(Orbit { points: orbit, long });
    }
    Ok(OrbitPartition { order: sigma.order(), orbits, affine_count: points.affine.len() })
}

impl OrbitPartition {
    pub fn long_orbits(&self) -> Result<Vec<Orbit>, AutError> {
        let out: Vec<Orbit> = self.orbits.iter().filter(|o| o.long).cloned().collect();
        if out.is_empty() {
            return Err(AutError::NoLongOrbits);
        }
        Ok(out)
    }

    /// Every orbit whose length is among `lengths`; each requested length must occur.
    pub fn orbits_by_length(&self, lengths: &[usize]) -> Result<Vec<Orbit>, AutError> {
        for &l in lengths {
            if !self.orbits.iter().any(|o| o.len() == l) {
                return Err(AutError::NoOrbitsOfLength(l));
            }
        }
        Ok(self.orbits.iter().filter(|o| lengths.contains(&o.len())).cloned().collect())
    }

    /// Short orbits of length > 1 followed by long orbits, each group in canonical order.
    pub fn nontrivial_orbits(&self) -> Vec<Orbit> {
        let short = self.orbits.iter().filter(|o| !o.long && !o.is_fixed_point());
        let long = self.orbits.iter().filter(|o| o.long);
        short.chain(long).cloned().collect()
    }

    /// Orbit length -> number of orbits with that length.
    pub fn length_census(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for o in &self.orbits {
            *m.entry(o.len()).or_insert(0) += 1;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use std::collections::BTreeSet;

    fn hyper(p: u32, b: &[i64]) -> Arc<KummerCurve> {
        let f = FieldCtx::prime(p).unwrap();
        Arc::new(KummerCurve::from_ints(f, 2, b, Family::Hyperelliptic).unwrap())
    }

    fn pt(f: &FieldCtx, x: i64, y: i64) -> Point {
        Point::new(f.from_int(x), f.from_int(y))
    }

    #[test]
    fn validation_accepts_and_rejects() {
        let f = FieldCtx::prime(127).unwrap();
        let c = Arc::new(KummerCurve::from_ints(f.clone(), 3, &[0, -1, 0, 0, 0, 0, 0, 0, 1], Family::Generic).unwrap());
        // 100^3 = 2, so (100x, 2y) scales both sides by 2
        let s = Automorphism::diagonal(c.clone(), f.from_int(100), f.from_int(2)).unwrap();
        assert_eq!(s.order(), 21);
        assert_eq!(s.lambda(), f.from_int(2));
        // 19^3 = 1 while (2y)^8 - 2y = 2(y^8 - y)
        assert_eq!(
            Automorphism::diagonal(c, f.from_int(19), f.from_int(2)).unwrap_err(),
            AutError::DoesNotPreserveCurve
        );

        let c31 = hyper(31, &[1, 0, 0, 0, 0, 1]);
        let f31 = c31.field().clone();
        assert_eq!(
            Automorphism::diagonal(c31.clone(), Fe::ONE, f31.from_int(3)).unwrap_err(),
            AutError::DoesNotPreserveCurve
        );
        assert!(matches!(
            Automorphism::diagonal(c31, Fe::ZERO, Fe::ONE),
            Err(AutError::NotInvertible { .. })
        ));
    }

    #[test]
    fn hermitian_psi_constraint() {
        let h = Arc::new(KummerCurve::hermitian(3).unwrap());
        let f = h.field().clone();
        let cs: Vec<Fe> = f.elements().filter(|&c| f.add(f.pow(c, 3), c).is_zero()).collect();
        assert_eq!(cs.len(), 3);
        let psi = Automorphism::hermitian_psi(h.clone(), Fe::ONE, Fe::ZERO, cs[1]).unwrap();
        assert_eq!(psi.order(), 3);
        let bad = f.elements().find(|&c| !f.add(f.pow(c, 3), c).is_zero()).unwrap();
        assert_eq!(
            Automorphism::hermitian_psi(h.clone(), Fe::ONE, Fe::ZERO, bad).unwrap_err(),
            AutError::HermitianConstraint
        );
        // b != 0 members of S_p have order p
        for b in f.elements().skip(1) {
            for c in f.elements() {
                if f.add(f.pow(c, 3), c) == f.pow(b, 4) {
                    let psi = Automorphism::hermitian_psi(h.clone(), Fe::ONE, b, c).unwrap();
                    assert_eq!(psi.order(), 3);
                }
            }
        }
        let c31 = hyper(31, &[1, 0, 0, 0, 0, 1]);
        assert!(matches!(
            Automorphism::hermitian_psi(c31, Fe::ONE, Fe::ZERO, Fe::ZERO),
            Err(AutError::WrongFamily { .. })
        ));
    }

    #[test]
    fn norm_trace_translation_needs_trace_zero() {
        let c = Arc::new(KummerCurve::norm_trace(2, 3).unwrap());
        let f = c.field().clone();
        for a in f.elements() {
            let r = Automorphism::norm_trace_map(c.clone(), Fe::ONE, a);
            if f.trace(a, 1).unwrap().is_zero() {
                assert!(r.is_ok());
            } else {
                assert_eq!(r.unwrap_err(), AutError::NonZeroTrace(a));
            }
        }
    }

    #[test]
    fn orders_and_application() {
        let c = hyper(31, &[1, 0, 0, 0, 0, 1]);
        let f = c.field().clone();
        let s = Automorphism::diagonal(c.clone(), f.from_int(-1), f.from_int(2)).unwrap();
        assert_eq!(s.order(), 10);
        assert_eq!(Automorphism::identity(c.clone()).order(), 1);
        assert_eq!(s.apply(&pt(&f, 21, 11)).unwrap(), pt(&f, 10, 22));
        assert!(matches!(s.apply(&pt(&f, 1, 1)), Err(AutError::Curve(CurveError::NotOnCurve { .. }))));
        for i in 0..25u64 {
            let expect = 10 / num_integer::gcd(i, 10);
            assert_eq!(s.pow(i).order(), if i % 10 == 0 { 1 } else { expect });
        }

        let c41 = hyper(41, &[0, -1, 0, 0, 0, 1]);
        let f41 = c41.field().clone();
        let s41 = Automorphism::diagonal(c41, f41.from_int(3), f41.from_int(9)).unwrap();
        assert_eq!(s41.order(), 8);
        assert_eq!(s41.apply(&pt(&f41, 7, 19)).unwrap(), pt(&f41, 21, 7));
    }

    #[test]
    fn diagonal_order_is_lcm_of_coordinate_orders() {
        let c = hyper(41, &[0, -1, 0, 0, 0, 1]);
        let f = c.field().clone();
        for a in f.roots_of_unity(8) {
            let s = Automorphism::diagonal(c.clone(), a, f.mul(a, a)).unwrap();
            let oa = f.element_order(a).unwrap();
            let od = f.element_order(f.mul(a, a)).unwrap();
            assert_eq!(s.order(), num_integer::lcm(oa, od));
        }
    }

    #[test]
    fn f31_partition() {
        let c = hyper(31, &[1, 0, 0, 0, 0, 1]);
        let f = c.field().clone();
        let s = Automorphism::diagonal(c.clone(), f.from_int(-1), f.from_int(2)).unwrap();
        let part = orbit_partition(&s, &c.points()).unwrap();
        assert_eq!(part.affine_count, 27);
        let census = part.length_census();
        assert_eq!(census, BTreeMap::from([(2, 1), (5, 1), (10, 2)]));
        let short: Vec<BTreeSet<Point>> =
            part.orbits.iter().filter(|o| !o.long).map(|o| o.points.iter().copied().collect()).collect();
        assert_eq!(short[0], [pt(&f, 1, 0), pt(&f, -1, 0)].into_iter().collect());
        assert_eq!(
            short[1],
            [15, 23, 27, 29, 30].iter().map(|&y| pt(&f, 0, y)).collect::<BTreeSet<_>>()
        );
        let gqc: Vec<usize> = part.nontrivial_orbits().iter().map(Orbit::len).collect();
        assert_eq!(gqc, vec![2, 5, 10, 10]);
    }

    #[test]
    fn orbit_chain_property() {
        let c = hyper(41, &[0, -1, 0, 0, 0, 1]);
        let f = c.field().clone();
        let s = Automorphism::diagonal(c.clone(), f.from_int(3), f.from_int(9)).unwrap();
        let part = orbit_partition(&s, &c.points()).unwrap();
        let mut all: Vec<Point> = Vec::new();
        for o in &part.orbits {
            assert_eq!(s.order() % o.len() as u64, 0);
            for w in o.points.windows(2) {
                assert_eq!(s.apply(&w[0]).unwrap(), w[1]);
            }
            assert_eq!(s.apply(o.points.last().unwrap()).unwrap(), o.points[0]);
            assert_eq!(o.points[0], *o.points.iter().min().unwrap());
            all.extend(&o.points);
        }
        all.sort();
        assert_eq!(all, c.points().affine);
        assert!(part.orbits.windows(2).all(|w| w[0].points[0] < w[1].points[0]));
    }

    #[test]
    fn identity_gives_singletons_and_filters_error() {
        let c = hyper(31, &[1, 0, 0, 0, 0, 1]);
        let id = Automorphism::identity(c.clone());
        let part = orbit_partition(&id, &c.points()).unwrap();
        assert!(part.orbits.iter().all(|o| o.len() == 1 && o.long));
        assert_eq!(part.orbits_by_length(&[3]).unwrap_err(), AutError::NoOrbitsOfLength(3));
        let f = c.field().clone();
        let s = Automorphism::diagonal(c.clone(), f.from_int(-1), f.from_int(2)).unwrap();
        let part = orbit_partition(&s, &c.points()).unwrap();
        assert_eq!(part.orbits_by_length(&[2, 5]).unwrap().len(), 2);
        assert_eq!(part.long_orbits().unwrap().len(), 2);
    }

    #[test]
    fn quotient_eta() {
        let c = Arc::new(KummerCurve::hermitian_quotient(5, 2).unwrap());
        let f = c.field().clone();
        let eta = Automorphism::quotient_eta(c.clone(), f.from_int(-1)).unwrap();
        assert_eq!(eta.order(), 10);
        let s = Automorphism::quotient_eta(c, f.from_int(2));
        assert_eq!(s.unwrap_err(), AutError::DoesNotPreserveCurve);
    }
}
