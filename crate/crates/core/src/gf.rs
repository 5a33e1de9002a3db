//! Finite fields `F_{p^n}` realized as a single extension of the prime field.
//!
//! Elements are stored as their canonical integer encoding: the coefficient
//! vector `(c_0, .., c_{n-1})` of the reduced polynomial representative,
//! packed little-endian in base `p`. Multiplication goes through discrete
//! log tables built from a primitive element, addition is digit-wise.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

mod fp_poly;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degrees must be positive (h = {h}, r = {r})")]
    ZeroDegree { h: u32, r: u32 },
    #[error("field order {p}^{degree} exceeds the supported bound 2^20")]
    TooLarge { p: u64, degree: u32 },
    #[error("modulus must be monic of degree {expected} (got {got:?})")]
    BadModulus { expected: u32, got: Vec<u32> },
    #[error("modulus {0:?} is reducible over the prime field")]
    ReducibleModulus(Vec<u32>),
    #[error("coefficient {value} out of range [0, {p})")]
    CoefficientOutOfRange { value: u64, p: u32 },
    #[error("coefficient vector has {got} entries, field degree is {degree}")]
    TooManyCoefficients { got: usize, degree: u32 },
    #[error("element index {index} does not belong to a field of order {order}")]
    ForeignElement { index: u32, order: u32 },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("subfield degree {k} does not divide the field degree {degree}")]
    SubfieldDegree { k: u32, degree: u32 },
}

/// A field element, identified by its canonical integer encoding.
///
/// The value only has meaning together with the [`FieldCtx`] it was created by.
#[derive(
    Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shared handle to an immutable field context.
pub type Field = Arc<FieldCtx>;

/// The field `F_{p^{h r}}`, viewed as the extension `F_{q^r}` of `F_q = F_{p^h}`.
pub struct FieldCtx {
    p: u32,
    h: u32,
    r: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: Fe,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("r", &self.r)
            .field("order", &self.order)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^h` into `(p, h)`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let (mut h, mut rest) = (0, q);
    while rest > 1 {
        rest /= p;
        h += 1;
    }
    Some((p as u32, h))
}

impl FieldCtx {
    /// Builds `F_{p^{h r}}`. Without an explicit modulus the lexicographically
    /// smallest monic irreducible polynomial of degree `h r` is used, where
    /// candidates are ordered by the base-`p` integer formed by their lower
    /// coefficients.
    pub fn new(p: u32, h: u32, r: u32, modulus: Option<&[u32]>) -> Result<Field, GfError> {
        if !is_prime(p as u64) {
            return Err(GfError::NotPrime(p as u64));
        }
        if h == 0 || r == 0 {
            return Err(GfError::ZeroDegree { h, r });
        }
        let degree = h
            .checked_mul(r)
            .ok_or(GfError::TooLarge { p: p as u64, degree: u32::MAX })?;
        let order = (p as u64).checked_pow(degree).filter(|&o| o <= MAX_ORDER);
        let order = order.ok_or(GfError::TooLarge { p: p as u64, degree })? as u32;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != degree as usize + 1 || m[degree as usize] != 1 {
                    return Err(GfError::BadModulus { expected: degree, got: m.to_vec() });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(GfError::CoefficientOutOfRange { value: c as u64, p });
                }
                if !fp_poly::is_irreducible(m, p) {
                    return Err(GfError::ReducibleModulus(m.to_vec()));
                }
                m.to_vec()
            }
            None => fp_poly::smallest_irreducible(degree, p),
        };

        let (generator, exp, log) = build_tables(p, degree, order, &modulus);
        Ok(Arc::new(FieldCtx { p, h, r, degree, order, modulus, generator, exp, log }))
    }

    pub fn prime(p: u32) -> Result<Field, GfError> {
        Self::new(p, 1, 1, None)
    }

    /// `F_{q^r}` for a prime power `q`.
    pub fn extension_of(q: u64, r: u32) -> Result<Field, GfError> {
        let (p, h) = prime_power(q).ok_or(GfError::NotPrime(q))?;
        Self::new(p, h, r, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Degree `h r` over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements `Q = p^{h r}`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the base field `q = p^h`.
    pub fn base_order(&self) -> u64 {
        (self.p as u64).pow(self.h)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element the log tables are built on.
    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order).map(Fe)
    }

    pub fn check(&self, a: Fe) -> Result<Fe, GfError> {
        if a.0 < self.order {
            Ok(a)
        } else {
            Err(GfError::ForeignElement { index: a.0, order: self.order })
        }
    }

    pub fn from_index(&self, index: u32) -> Result<Fe, GfError> {
        self.check(Fe(index))
    }

    /// Element from a little-endian coefficient vector; missing high
    /// coefficients are zero.
    pub fn element(&self, coeffs: &[u32]) -> Result<Fe, GfError> {
        if coeffs.len() > self.degree as usize {
            return Err(GfError::TooManyCoefficients { got: coeffs.len(), degree: self.degree });
        }
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(GfError::CoefficientOutOfRange { value: c as u64, p: self.p });
            }
            v = v * self.p + c;
        }
        Ok(Fe(v))
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut v = a.0;
        (0..self.degree)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.degree == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x != 0 || y != 0 {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        if self.degree == 1 {
            return Fe(self.p - a.0);
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x != 0 {
            let d = x % self.p;
            out += ((self.p - d) % self.p) * place;
            place *= self.p;
            x /= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let n = self.order - 1;
        let mut e = self.log[a.0 as usize] + self.log[b.0 as usize];
        if e >= n {
            e -= n;
        }
        Fe(self.exp[e as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        if a.0 == 0 {
            return Err(GfError::ZeroInverse);
        }
        let n = self.order - 1;
        let l = self.log[a.0 as usize];
        Ok(Fe(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn try_add(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.add(self.check(a)?, self.check(b)?))
    }

    pub fn try_sub(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.sub(self.check(a)?, self.check(b)?))
    }

    pub fn try_mul(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(self.check(a)?, self.check(b)?))
    }

    pub fn try_inv(&self, a: Fe) -> Result<Fe, GfError> {
        self.inv(self.check(a)?)
    }

    pub fn try_pow(&self, a: Fe, e: u64) -> Result<Fe, GfError> {
        Ok(self.pow(self.check(a)?, e))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fe) -> Result<u64, GfError> {
        let a = self.check(a)?;
        if a.is_zero() {
            return Err(GfError::ZeroOrder);
        }
        let n = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Ok(n / l.gcd(&n))
    }

    /// All solutions of `a^n = 1`, in increasing encoding order.
    pub fn roots_of_unity(&self, n: u64) -> Vec<Fe> {
        let order = (self.order - 1) as u64;
        let step = order / n.gcd(&order);
        let mut roots: Vec<Fe> = (0..order)
            .step_by(step as usize)
            .map(|e| Fe(self.exp[e as usize]))
            .collect();
        roots.sort();
        roots
    }

    /// Some element of exact multiplicative order `n`, if one exists.
    pub fn element_of_order(&self, n: u64) -> Option<Fe> {
        let order = (self.order - 1) as u64;
        if n == 0 || order % n != 0 {
            return None;
        }
        Some(self.pow(self.generator, order / n))
    }

    /// Applies the Frobenius `a -> a^{p^k}`.
    pub fn frobenius(&self, a: Fe, k: u32) -> Fe {
        self.pow(a, (self.p as u64).pow(k % self.degree))
    }

    /// Whether `a` lies in the subfield `F_{p^k}`.
    pub fn in_subfield(&self, a: Fe, k: u32) -> Result<bool, GfError> {
        let a = self.check(a)?;
        if k == 0 || self.degree % k != 0 {
            return Err(GfError::SubfieldDegree { k, degree: self.degree });
        }
        Ok(self.frobenius(a, k) == a)
    }

    /// Trace from this field down to `F_{p^k}`: the sum of the conjugates
    /// `a^{p^{k i}}`.
    pub fn trace(&self, a: Fe, k: u32) -> Result<Fe, GfError> {
        let a = self.check(a)?;
        if k == 0 || self.degree % k != 0 {
            return Err(GfError::SubfieldDegree { k, degree: self.degree });
        }
        let mut acc = Fe::ZERO;
        let mut conj = a;
        for _ in 0..self.degree / k {
            acc = self.add(acc, conj);
            conj = self.frobenius(conj, k);
        }
        Ok(acc)
    }

    /// Human readable form: the integer for prime fields, otherwise the
    /// polynomial in `z`.
    pub fn display(&self, a: Fe) -> String {
        if self.degree == 1 {
            return a.0.to_string();
        }
        let coeffs = self.coeffs(a);
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "z".to_string(),
                (1, c) => format!("{c}z"),
                (i, 1) => format!("z^{i}"),
                (i, c) => format!("{c}z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

fn build_tables(p: u32, degree: u32, order: u32, modulus: &[u32]) -> (Fe, Vec<u32>, Vec<u32>) {
    let n = (order - 1) as u64;
    let factors = prime_factors(n);
    let encode = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c);
    let decode = |mut x: u32| {
        (0..degree)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect::<Vec<u32>>()
    };

    let is_primitive = |g: &[u32]| {
        factors.iter().all(|&l| {
            let e = fp_poly::pow_mod(g, n / l, modulus, p);
            !(e.len() == 1 && e[0] == 1)
        })
    };
    let generator = if order == 2 {
        1
    } else {
        (1..order).find(|&c| is_primitive(&decode(c))).expect("a finite field has a primitive element")
    };

    let g = decode(generator);
    let mut exp = Vec::with_capacity(n as usize);
    let mut log = vec![0u32; order as usize];
    let mut cur = vec![1u32];
    for e in 0..n as u32 {
        let mut padded = cur.clone();
        padded.resize(degree as usize, 0);
        let idx = encode(&padded);
        exp.push(idx);
        log[idx as usize] = e;
        cur = fp_poly::mul_mod(&cur, &g, modulus, p);
    }
    (Fe(generator), exp, log)
}
