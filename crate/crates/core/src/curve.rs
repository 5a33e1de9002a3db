//! Plane curves `x^m = B(y)` with a single point at infinity.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Fe, Field, FieldCtx, GfError};
use crate::poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("exponent m = {0} must be at least 2")]
    ExponentTooSmall(u64),
    #[error("B(y) must have degree at least 1")]
    ConstantB,
    #[error("m = {m} is divisible by the characteristic {p}")]
    ExponentDivisibleByCharacteristic { m: u64, p: u32 },
    #[error("gcd(m, d) = gcd({m}, {d}) != 1")]
    NotCoprime { m: u64, d: usize },
    #[error("curve degree max(m, d) = {0} is below 3")]
    DegreeTooSmall(u64),
    #[error("B(y) is not separable")]
    Inseparable,
    #[error("characteristic 2 is not supported for the {0} family")]
    CharacteristicTwo(&'static str),
    #[error("{family} preset shape violated: {reason}")]
    PresetShape { family: &'static str, reason: String },
    #[error("field order {0} is not a square")]
    NonSquareOrder(u32),
    #[error("point ({x}, {y}) is not on the curve")]
    NotOnCurve { x: Fe, y: Fe },
}

/// Which named family a curve belongs to, with the parameters that fix its shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Generic,
    Hyperelliptic,
    /// `x^{(q^r-1)/(q-1)} = y^{q^{r-1}} + .. + y` over `F_{q^r}`.
    NormTrace { q: u64, r: u32 },
    /// `x^{q+1} = y^q + y` over `F_{q^2}`.
    Hermitian { q: u64 },
    /// `x^m = y^q - y` over `F_{q^2}` with `m | q + 1`.
    HermitianQuotient { q: u64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Generic => "generic",
            Family::Hyperelliptic => "hyperelliptic",
            Family::NormTrace { .. } => "norm_trace",
            Family::Hermitian { .. } => "hermitian",
            Family::HermitianQuotient { .. } => "hermitian_quotient",
        }
    }
}

/// An affine point. Points are ordered by `y` first, then `x`, matching the
/// enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: Fe,
    pub y: Fe,
}

impl Point {
    pub fn new(x: Fe, y: Fe) -> Self {
        Point { x, y }
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A rational point of the projective curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RationalPoint {
    Affine(Point),
    Infinity,
}

impl From<Point> for RationalPoint {
    fn from(p: Point) -> Self {
        RationalPoint::Affine(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalPointSet {
    pub affine: Vec<Point>,
    pub has_infinity: bool,
}

impl RationalPointSet {
    /// Total number of rational points, `P_inf` included.
    pub fn count(&self) -> usize {
        self.affine.len() + usize::from(self.has_infinity)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.affine.binary_search(p).is_ok()
    }

    pub fn position(&self, p: &Point) -> Option<usize> {
        self.affine.binary_search(p).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KummerCurve {
    field: Field,
    m: u64,
    b: Vec<Fe>,
    family: Family,
    genus: u64,
}

impl KummerCurve {
    pub fn new(field: Field, m: u64, b: Vec<Fe>, family: Family) -> Result<Self, CurveError> {
        for &c in &b {
            field.check(c)?;
        }
        let b = poly::trim(b);
        let d = match poly::degree(&b) {
            Some(d) if d >= 1 => d,
            _ => return Err(CurveError::ConstantB),
        };
        if m < 2 {
            return Err(CurveError::ExponentTooSmall(m));
        }
        let p = field.p();
        if m % p as u64 == 0 {
            return Err(CurveError::ExponentDivisibleByCharacteristic { m, p });
        }
        if m.gcd(&(d as u64)) != 1 {
            return Err(CurveError::NotCoprime { m, d });
        }
        if m.max(d as u64) < 3 {
            return Err(CurveError::DegreeTooSmall(m.max(d as u64)));
        }
        if !poly::is_separable(&field, &b) {
            return Err(CurveError::Inseparable);
        }
        check_family(&field, m, &b, family)?;
        let genus = (m - 1) * (d as u64 - 1) / 2;
        Ok(KummerCurve { field, m, b, family, genus })
    }

    /// Curve with integer coefficients reduced into the prime subfield.
    pub fn from_ints(field: Field, m: u64, b: &[i64], family: Family) -> Result<Self, CurveError> {
        let coeffs = b.iter().map(|&c| field.from_int(c)).collect();
        Self::new(field, m, coeffs, family)
    }

    pub fn hyperelliptic(field: Field, f: Vec<Fe>) -> Result<Self, CurveError> {
        Self::new(field, 2, f, Family::Hyperelliptic)
    }

    /// `H_q : x^{q+1} = y^q + y` over `F_{q^2}`.
    pub fn hermitian(q: u64) -> Result<Self, CurveError> {
        let field = FieldCtx::extension_of(q, 2)?;
        let mut b = vec![Fe::ZERO; q as usize + 1];
        b[1] = Fe::ONE;
        b[q as usize] = Fe::ONE;
        Self::new(field, q + 1, b, Family::Hermitian { q })
    }

    /// Norm-trace curve over `F_{q^r}`.
    pub fn norm_trace(q: u64, r: u32) -> Result<Self, CurveError> {
        let field = FieldCtx::extension_of(q, r)?;
        let m = (q.pow(r) - 1) / (q - 1);
        let mut b = vec![Fe::ZERO; q.pow(r - 1) as usize + 1];
        for i in 0..r {
            b[q.pow(i) as usize] = Fe::ONE;
        }
        Self::new(field, m, b, Family::NormTrace { q, r })
    }

    /// `C_m : x^m = y^q - y` over `F_{q^2}`.
    pub fn hermitian_quotient(q: u64, m: u64) -> Result<Self, CurveError> {
        let field = FieldCtx::extension_of(q, 2)?;
        let mut b = vec![Fe::ZERO; q as usize + 1];
        b[1] = field.from_int(-1);
        b[q as usize] = Fe::ONE;
        Self::new(field, m, b, Family::HermitianQuotient { q })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Degree `d` of `B`.
    pub fn d(&self) -> u64 {
        self.b.len() as u64 - 1
    }

    pub fn b(&self) -> &[Fe] {
        &self.b
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Genus 0 and 1 curves are accepted but give no room for `2g - 2 < t`.
    pub fn low_genus(&self) -> bool {
        self.genus < 2
    }

    pub fn eval_b(&self, y: Fe) -> Fe {
        poly::eval(&self.field, &self.b, y)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.field.pow(p.x, self.m) == self.eval_b(p.y)
    }

    pub fn check_point(&self, p: &Point) -> Result<(), CurveError> {
        if self.field.check(p.x).is_err() || self.field.check(p.y).is_err() || !self.contains(p) {
            return Err(CurveError::NotOnCurve { x: p.x, y: p.y });
        }
        Ok(())
    }

    /// Roots of `B` in the field, ascending.
    pub fn b_roots(&self) -> Vec<Fe> {
        self.field.elements().filter(|&v| self.eval_b(v).is_zero()).collect()
    }

    /// All rational points: for each `y` (ascending), every `x` with
    /// `x^m = B(y)` (ascending), then `P_inf`.
    pub fn points(&self) -> RationalPointSet {
        let f = &self.field;
        let q = f.order() as usize;
        // bucket x by x^m, CSR layout
        let powers: Vec<u32> = f.elements().map(|x| f.pow(x, self.m).index()).collect();
        let mut start = vec![0usize; q + 1];
        for &v in &powers {
            start[v as usize + 1] += 1;
        }
        for i in 0..q {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut roots = vec![Fe::ZERO; q];
        for (x, &v) in powers.iter().enumerate() {
            roots[fill[v as usize]] = f.from_index(x as u32).expect("in range");
            fill[v as usize] += 1;
        }

        let db = poly::derivative(f, &self.b);
        let mut affine = Vec::new();
        for y in f.elements() {
            let v = self.eval_b(y).index() as usize;
            for &x in &roots[start[v]..start[v + 1]] {
                // no affine singular points: F_x = m x^{m-1} and F_y = -B'(y) never both vanish
                let fx = f.mul(f.from_int((self.m % f.p() as u64) as i64), f.pow(x, self.m - 1));
                assert!(
                    !(fx.is_zero() && poly::eval(f, &db, y).is_zero()),
                    "singular affine point ({x}, {y})"
                );
                affine.push(Point { x, y });
            }
        }
        RationalPointSet { affine, has_infinity: true }
    }

    /// Whether the point count meets the Hasse-Weil upper bound
    /// `Q + 1 + 2 g sqrt(Q)`. Requires a square field order.
    pub fn is_maximal(&self) -> Result<bool, CurveError> {
        let order = self.field.order() as u64;
        let s = order.isqrt();
        if s * s != order {
            return Err(CurveError::NonSquareOrder(self.field.order()));
        }
        let count = self.points().count() as u64;
        Ok(count == order + 1 + 2 * self.genus * s)
    }

    /// `|N - (Q + 1)| <= 2 g floor(sqrt Q)`.
    pub fn within_hasse_weil(&self, count: usize) -> bool {
        let order = self.field.order() as i64;
        let bound = 2 * self.genus as i64 * (order as u64).isqrt() as i64;
        (count as i64 - (order + 1)).abs() <= bound
    }

    pub fn describe(&self) -> String {
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, &c) in self.b.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c == Fe::ONE && i > 0 { String::new() } else { f.display(c) };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}y"),
                _ => format!("{coeff}y^{i}"),
            });
        }
        format!("x^{} = {} over F_{}", self.m, terms.join(" + "), f.order())
    }
}

fn check_family(field: &FieldCtx, m: u64, b: &[Fe], family: Family) -> Result<(), CurveError> {
    let shape = |family: &'static str, reason: String| Err(CurveError::PresetShape { family, reason });
    let monomials = |exps: &[(u64, Fe)]| {
        let deg = exps.iter().map(|e| e.0).max().unwrap_or(0) as usize;
        let mut v = vec![Fe::ZERO; deg + 1];
        for &(e, c) in exps {
            v[e as usize] = c;
        }
        v
    };
    match family {
        Family::Generic => {
            if field.p() == 2 {
                return Err(CurveError::CharacteristicTwo("generic"));
            }
        }
        Family::Hyperelliptic => {
            if field.p() == 2 {
                return Err(CurveError::CharacteristicTwo("hyperelliptic"));
            }
            if m != 2 {
                return shape("hyperelliptic", format!("m = {m}, expected 2"));
            }
        }
        Family::Hermitian { q } => {
            if field.order() as u64 != q * q {
                return shape("hermitian", format!("field order {} != q^2", field.order()));
            }
            if m != q + 1 {
                return shape("hermitian", format!("m = {m}, expected q + 1 = {}", q + 1));
            }
            if b != monomials(&[(1, Fe::ONE), (q, Fe::ONE)]) {
                return shape("hermitian", "B(y) must be y^q + y".into());
            }
        }
        Family::NormTrace { q, r } => {
            if r < 2 || field.order() as u64 != q.pow(r) {
                return shape("norm_trace", format!("field order {} != q^r", field.order()));
            }
            if m != (q.pow(r) - 1) / (q - 1) {
                return shape("norm_trace", format!("m = {m}, expected (q^r - 1)/(q - 1)"));
            }
            let terms: Vec<(u64, Fe)> = (0..r).map(|i| (q.pow(i), Fe::ONE)).collect();
            if b != monomials(&terms) {
                return shape("norm_trace", "B(y) must be the trace polynomial".into());
            }
        }
        Family::HermitianQuotient { q } => {
            if field.order() as u64 != q * q {
                return shape("hermitian_quotient", format!("field order {} != q^2", field.order()));
            }
            if (q + 1) % m != 0 || m.gcd(&q) != 1 {
                return shape("hermitian_quotient", format!("need m | q + 1 and gcd(m, q) = 1, m = {m}"));
            }
            if b != monomials(&[(1, field.from_int(-1)), (q, Fe::ONE)]) {
                return shape("hermitian_quotient", "B(y) must be y^q - y".into());
            }
        }
    }
    Ok(())
}
