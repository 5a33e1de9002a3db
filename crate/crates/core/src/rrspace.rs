//! Monomial bases of `L(t P_inf)` on `x^m = B(y)`. The pole orders at `P_inf`
//! are `d` for `x` and `m` for `y`.

use serde::Serialize;
use thiserror::Error;

use crate::curve::{CurveError, KummerCurve, Point, RationalPoint};
use crate::gf::{Fe, FieldCtx};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RrError {
    #[error("monomials have a pole at the point at infinity")]
    PointAtInfinity,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// `x^a y^b` with its pole order `a d + b m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub a: u64,
    pub b: u64,
    pub pole_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialBasis {
    pub t: u64,
    pub m: u64,
    pub d: u64,
    pub genus: u64,
    pub monomials: Vec<Monomial>,
}

/// All `x^a y^b` with `a < m` and `a d + b m <= t`, sorted by pole order.
pub fn rr_basis(curve: &KummerCurve, t: u64) -> MonomialBasis {
    let (m, d) = (curve.m(), curve.d());
    let mut monomials = Vec::new();
    for a in 0..m {
        if a * d > t {
            break;
        }
        for b in 0..=(t - a * d) / m {
            monomials.push(Monomial { a, b, pole_order: a * d + b * m });
        }
    }
    monomials.sort_by_key(|mo| (mo.pole_order, mo.a));
    let basis = MonomialBasis { t, m, d, genus: curve.genus(), monomials };
    if t + 2 > 2 * basis.genus {
        assert_eq!(basis.dim() as u64, t + 1 - basis.genus, "dimension of L({t} P_inf)");
    }
    basis
}

impl MonomialBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Evaluates every monomial at an affine point, skipping the on-curve check.
    pub fn evaluate_affine(&self, f: &FieldCtx, p: &Point) -> Vec<Fe> {
        let max_b = self.monomials.iter().map(|mo| mo.b).max().unwrap_or(0);
        let max_a = self.monomials.iter().map(|mo| mo.a).max().unwrap_or(0);
        let xs = powers(f, p.x, max_a);
        let ys = powers(f, p.y, max_b);
        self.monomials.iter().map(|mo| f.mul(xs[mo.a as usize], ys[mo.b as usize])).collect()
    }

    pub fn evaluate(&self, curve: &KummerCurve, p: &RationalPoint) -> Result<Vec<Fe>, RrError> {
        match p {
            RationalPoint::Infinity => Err(RrError::PointAtInfinity),
            RationalPoint::Affine(pt) => {
                curve.check_point(pt)?;
                Ok(self.evaluate_affine(curve.field(), pt))
            }
        }
    }

    pub fn pole_orders(&self) -> Vec<u64> {
        self.monomials.iter().map(|mo| mo.pole_order).collect()
    }
}

fn powers(f: &FieldCtx, v: Fe, n: u64) -> Vec<Fe> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = Fe::ONE;
    for _ in 0..=n {
        out.push(acc);
        acc = f.mul(acc, v);
    }
    out
}

/// Gaps of the numerical semigroup generated by coprime `m` and `d`.
pub fn gaps(m: u64, d: u64) -> Vec<u64> {
    let conductor = (m - 1) * (d - 1);
    let mut reachable = vec![false; conductor as usize + 1];
    reachable[0] = true;
    for s in 1..=conductor as usize {
        reachable[s] = (s >= m as usize && reachable[s - m as usize]) || (s >= d as usize && reachable[s - d as usize]);
    }
    (0..conductor).filter(|&s| !reachable[s as usize]).collect()
}
