//! Dense polynomial arithmetic over the prime field F_p.
//!
//! Coefficients are u64 values reduced mod p, little-endian, trimmed (no
//! trailing zeros; the empty vector is the zero polynomial). These helpers
//! back both the defining-polynomial search and all extension-field
//! element arithmetic.

use crate::intarith::{modinv, mulmod};

pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn deg(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

#[cfg_attr(not(test), allow(dead_code))]
pub fn add(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + y) % p;
    }
    trim(out)
}

pub fn sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

pub fn mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

pub fn scale(p: u64, a: &[u64], c: u64) -> Vec<u64> {
    trim(a.iter().map(|&x| mulmod(x, c, p)).collect())
}

/// Quotient and remainder; the divisor need not be monic.
pub fn divrem(p: u64, a: &[u64], d: &[u64]) -> (Vec<u64>, Vec<u64>) {
    assert!(!d.is_empty(), "division by zero polynomial");
    let dd = d.len() - 1;
    if a.len() < d.len() {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = modinv(d[dd], p).expect("leading coefficient is a unit");
    let mut rem = a.to_vec();
    let mut quo = vec![0u64; a.len() - d.len() + 1];
    for i in (dd..rem.len()).rev() {
        let c = mulmod(rem[i], lead_inv, p);
        if c == 0 {
            continue;
        }
        quo[i - dd] = c;
        for (j, &dc) in d.iter().enumerate() {
            let idx = i - dd + j;
            rem[idx] = (rem[idx] + p - mulmod(c, dc, p)) % p;
        }
    }
    (trim(quo), trim(rem))
}

pub fn rem(p: u64, a: &[u64], d: &[u64]) -> Vec<u64> {
    divrem(p, a, d).1
}

/// Monic gcd.
pub fn gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = rem(p, &a, &b);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        if lead != 1 {
            let inv = modinv(lead, p).unwrap();
            a = scale(p, &a, inv);
        }
    }
    a
}

/// a^e mod m, binary exponentiation with a u64 exponent.
pub fn powmod(p: u64, a: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = rem(p, a, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(p, &mul(p, &acc, &base), m);
        }
        base = rem(p, &mul(p, &base, &base), m);
        e >>= 1;
    }
    acc
}

/// Extended Euclid: inverse of `a` modulo `m`, if coprime.
pub fn invmod(p: u64, a: &[u64], m: &[u64]) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (m.to_vec(), rem(p, a, m));
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(p, &r0, &r1);
        let t = sub(p, &t0, &mul(p, &q, &t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if deg(&r0) != Some(0) {
        return None;
    }
    let inv = modinv(r0[0], p).ok()?;
    Some(rem(p, &scale(p, &t0, inv), m))
}

/// Irreducibility of `f` over F_p: f of degree d is irreducible iff
/// X^(p^d) = X mod f and gcd(X^(p^(d/l)) - X, f) = 1 for every prime l | d.
pub fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let d = match deg(f) {
        Some(0) | None => return false,
        Some(1) => return true,
        Some(d) => d,
    };
    let x = rem(p, &[0, 1], f);
    let mut checkpoints: Vec<usize> = crate::intarith::factorize(d as u64)
        .expect("degree fits")
        .primes()
        .map(|l| d / l as usize)
        .collect();
    checkpoints.sort_unstable();
    let mut u = x.clone();
    for j in 1..=d {
        u = powmod(p, &u, p, f);
        if checkpoints.contains(&j) {
            let g = gcd(p, &sub(p, &u, &x), f);
            if deg(&g) != Some(0) {
                return false;
            }
        }
    }
    u == x
}

/// The lexicographically smallest monic irreducible of the given degree,
/// candidates ordered by the integer value of their low coefficients as
/// base-p digits.
pub fn smallest_irreducible(p: u64, degree: u32) -> Vec<u64> {
    assert!(degree >= 1);
    let mut value = 0u64;
    loop {
        let mut coeffs = vec![0u64; degree as usize + 1];
        let mut v = value;
        for c in coeffs.iter_mut().take(degree as usize) {
            *c = v % p;
            v /= p;
        }
        assert!(v == 0, "no irreducible of degree {degree} found in range");
        coeffs[degree as usize] = 1;
        if is_irreducible(p, &coeffs) {
            return coeffs;
        }
        value += 1;
    }
}
