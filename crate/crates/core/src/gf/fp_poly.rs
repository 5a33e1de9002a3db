//! Dense polynomials over a prime field, only what modulus selection needs.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, a nonzero
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    if dm == 0 {
        return vec![0];
    }
    let p64 = p as u64;
    let lead_inv = inv_mod(m[dm], p) as u64;
    let mut r = a.to_vec();
    for i in (dm..r.len()).rev() {
        let c = r[i] as u64 * lead_inv % p64;
        if c == 0 {
            continue;
        }
        for (j, &mc) in m.iter().enumerate() {
            let slot = &mut r[i - dm + j];
            *slot = ((*slot as u64 + p64 - c * mc as u64 % p64) % p64) as u32;
        }
    }
    r.truncate(dm);
    trim(r)
}

pub(super) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    rem(&prod, m, p)
}

pub(super) fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !(b.len() == 1 && b[0] == 0) {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or: `f` of degree `n` is irreducible iff `gcd(x^{p^i} - x, f) = 1`
/// for every `i <= n/2`.
pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 0..n / 2 {
        xp = pow_mod(&xp, p as u64, &f, p);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = gcd(&f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible of the given degree, ordering candidates by the
/// base-`p` integer of their lower coefficients.
pub(super) fn smallest_irreducible(degree: u32, p: u32) -> Vec<u32> {
    if degree == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(degree);
    for v in 0..count {
        let mut f = Vec::with_capacity(degree as usize + 1);
        let mut x = v;
        for _ in 0..degree {
            f.push((x % p as u64) as u32);
            x /= p as u64;
        }
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
