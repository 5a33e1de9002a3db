//! Dense univariate polynomials over a [`FieldCtx`], little-endian coefficients.

use crate::gf::{Fe, FieldCtx};

pub fn trim(mut a: Vec<Fe>) -> Vec<Fe> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Degree of a polynomial; `None` for the zero polynomial.
pub fn degree(a: &[Fe]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn eval(f: &FieldCtx, a: &[Fe], x: Fe) -> Fe {
    a.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn derivative(f: &FieldCtx, a: &[Fe]) -> Vec<Fe> {
    let d = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
        .collect();
    trim(d)
}

pub fn mul(f: &FieldCtx, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem(f: &FieldCtx, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).expect("leading coefficient is nonzero");
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        for (j, &bc) in b[..=db].iter().enumerate() {
            let slot = &mut r[dr - db + j];
            *slot = f.sub(*slot, f.mul(c, bc));
        }
        r = trim(r);
    }
    r
}

/// Monic gcd; the gcd of two zero polynomials is zero.
pub fn gcd(f: &FieldCtx, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while degree(&b).is_some() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    if let Some(d) = degree(&a) {
        let inv = f.inv(a[d]).expect("nonzero leading coefficient");
        a.iter_mut().for_each(|c| *c = f.mul(*c, inv));
    }
    a
}

/// `gcd(a, a') = 1`.
pub fn is_separable(f: &FieldCtx, a: &[Fe]) -> bool {
    let g = gcd(f, a, &derivative(f, a));
    degree(&g) == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;

    #[test]
    fn separability() {
        let f = FieldCtx::prime(31).unwrap();
        let e = |v: &[i64]| v.iter().map(|&c| f.from_int(c)).collect::<Vec<_>>();
        assert!(is_separable(&f, &e(&[1, 0, 0, 0, 0, 1])));
        // (y - 1)^2 = y^2 - 2y + 1
        assert!(!is_separable(&f, &e(&[1, -2, 1])));
        // y^31 - y has zero-free derivative -1 in characteristic 31
        let mut b = vec![Fe::ZERO; 32];
        b[1] = f.from_int(-1);
        b[31] = Fe::ONE;
        assert!(is_separable(&f, &b));
    }

    #[test]
    fn gcd_of_products() {
        let f = FieldCtx::prime(7).unwrap();
        let e = |v: &[i64]| v.iter().map(|&c| f.from_int(c)).collect::<Vec<_>>();
        let a = mul(&f, &e(&[1, 1]), &e(&[2, 0, 1]));
        let b = mul(&f, &e(&[1, 1]), &e(&[3, 1]));
        assert_eq!(gcd(&f, &a, &b), e(&[1, 1]));
        assert_eq!(eval(&f, &a, f.from_int(-1)), Fe::ZERO);
    }
}
