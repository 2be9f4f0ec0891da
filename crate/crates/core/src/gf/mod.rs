//! Exact arithmetic in F_p, F_q = F_{p^e}, and extensions F_{q^k}, plus
//! roots of unity forming a compatible family within a context.
//!
//! Every field is represented as a single extension of its prime field:
//! F_p[Z]/(defining), with the lexicographically smallest monic irreducible
//! defining polynomial (coefficients compared low-to-high as base-p digits).
//! Elements are fixed-length coordinate vectors; the canonical element order
//! is the base-p value order of those vectors. Field cardinalities may
//! exceed u64 (group-order work then switches to big integers); the
//! extension degree over F_p is capped instead.

pub mod ext;
mod fppoly;
pub mod poly;

pub use ext::Extension;
pub use poly::GFPoly;

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex, OnceLock};

use num_bigint::BigUint;

use crate::intarith::{self, Factored};
use crate::{Error, Result};

/// Cap on the extension degree over the prime field.
pub const MAX_FIELD_DEGREE: u32 = 128;

/// A finite field F_{p^degree} with its canonical defining polynomial.
pub struct FieldCtx {
    p: u64,
    degree: u32,
    defining: Vec<u64>,
    generator: OnceLock<Option<Vec<u64>>>,
    dlog_table: OnceLock<Option<HashMap<Vec<u64>, u64>>>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldCtx(p={}, degree={})", self.p, self.degree)
    }
}

static CTX_CACHE: LazyLock<Mutex<HashMap<(u64, u32), Arc<FieldCtx>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The canonical context for F_{p^degree}. Cached; deterministic.
pub fn field_context(p: u64, degree: u32) -> Result<Arc<FieldCtx>> {
    if !intarith::is_prime(p) {
        return Err(Error::domain(format!("field_context: {p} is not prime")));
    }
    if degree == 0 || degree > MAX_FIELD_DEGREE {
        return Err(Error::resource(format!(
            "field_context: degree {degree} out of range 1..={MAX_FIELD_DEGREE}"
        )));
    }
    if let Some(ctx) = CTX_CACHE.lock().unwrap().get(&(p, degree)) {
        return Ok(ctx.clone());
    }
    let defining = fppoly::smallest_irreducible(p, degree);
    let ctx = Arc::new(FieldCtx {
        p,
        degree,
        defining,
        generator: OnceLock::new(),
        dlog_table: OnceLock::new(),
    });
    let mut cache = CTX_CACHE.lock().unwrap();
    Ok(cache.entry((p, degree)).or_insert(ctx).clone())
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn defining(&self) -> &[u64] {
        &self.defining
    }

    /// Field cardinality when it fits in u64.
    pub fn cardinality_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..self.degree {
            acc = acc.checked_mul(self.p)?;
            if acc >= (1 << 63) {
                return None;
            }
        }
        Some(acc)
    }

    pub fn cardinality_big(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree)
    }

    fn raw_zero(&self) -> Vec<u64> {
        vec![0; self.degree as usize]
    }

    fn pad(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.resize(self.degree as usize, 0);
        v
    }

    pub(crate) fn raw_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub(crate) fn raw_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect()
    }

    pub(crate) fn raw_neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub(crate) fn raw_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        // Fused schoolbook multiply and monic reduction; the hot path.
        let d = self.degree as usize;
        let p = self.p;
        let mut buf = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    let cell = &mut buf[i + j];
                    *cell = (*cell + intarith::mulmod(x, y, p)) % p;
                }
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for (j, &m) in self.defining.iter().take(d).enumerate() {
                if m != 0 {
                    let cell = &mut buf[i - d + j];
                    *cell = (*cell + p - intarith::mulmod(c, m, p)) % p;
                }
            }
        }
        buf.truncate(d);
        buf
    }

    pub(crate) fn raw_inv(&self, a: &[u64]) -> Result<Vec<u64>> {
        let t = fppoly::trim(a.to_vec());
        if t.is_empty() {
            return Err(Error::domain("inverse of zero"));
        }
        let inv = fppoly::invmod(self.p, &t, &self.defining)
            .ok_or_else(|| Error::internal("element not invertible modulo defining polynomial"))?;
        Ok(self.pad(inv))
    }

    pub(crate) fn raw_pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.pad(vec![1]);
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(&acc, &base);
            }
            base = self.raw_mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn raw_pow_big(&self, a: &[u64], e: &BigUint) -> Vec<u64> {
        let mut acc = self.pad(vec![1]);
        let mut base = a.to_vec();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = self.raw_mul(&acc, &base);
            }
            if i + 1 < bits {
                base = self.raw_mul(&base, &base);
            }
        }
        acc
    }

    /// x -> x^(p^times), by repeated p-th powers.
    pub(crate) fn raw_frob(&self, a: &[u64], times: u32) -> Vec<u64> {
        let mut acc = a.to_vec();
        for _ in 0..times {
            acc = self.raw_pow(&acc, self.p);
        }
        acc
    }

    /// Canonical value order: coordinate vectors compared as base-p numbers.
    pub(crate) fn raw_cmp(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
        for i in (0..a.len().max(b.len())).rev() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            match x.cmp(&y) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        std::cmp::Ordering::Equal
    }

    /// The smallest element of full multiplicative order, or None when the
    /// group order does not fit the u64 factorizer.
    pub fn generator_raw(&self) -> Option<&[u64]> {
        self.generator
            .get_or_init(|| {
                let q = self.cardinality_u64()?;
                let group = intarith::factorize(q - 1).ok()?;
                for v in 1..q {
                    let cand = self.element_coords_from_value(v);
                    let full = group
                        .primes()
                        .all(|r| self.raw_pow(&cand, (q - 1) / r) != self.pad(vec![1]));
                    if full {
                        return Some(cand);
                    }
                }
                None
            })
            .as_deref()
    }

    fn element_coords_from_value(&self, mut v: u64) -> Vec<u64> {
        let mut out = self.raw_zero();
        for c in out.iter_mut() {
            *c = v % self.p;
            v /= self.p;
            if v == 0 {
                break;
            }
        }
        out
    }

    /// Discrete-log table over the canonical generator, for display. Only
    /// materialized for fields of at most 2^16 elements.
    fn dlog(&self, coords: &[u64]) -> Option<u64> {
        self.dlog_table
            .get_or_init(|| {
                let q = self.cardinality_u64()?;
                if q > 1 << 16 {
                    return None;
                }
                let g = self.generator_raw()?.to_vec();
                let mut table = HashMap::new();
                let mut acc = self.pad(vec![1]);
                for i in 0..q - 1 {
                    table.entry(acc.clone()).or_insert(i);
                    acc = self.raw_mul(&acc, &g);
                }
                Some(table)
            })
            .as_ref()?
            .get(coords)
            .copied()
    }
}

/// An element of a finite field context.
#[derive(Clone)]
pub struct GFElement {
    ctx: Arc<FieldCtx>,
    coords: Vec<u64>,
}

impl std::fmt::Debug for GFElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF{:?}{:?}", (self.ctx.p, self.ctx.degree), self.coords)
    }
}

impl PartialEq for GFElement {
    fn eq(&self, other: &Self) -> bool {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx),
            "comparing elements of different fields"
        );
        self.coords == other.coords
    }
}

impl Eq for GFElement {}

impl GFElement {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        GFElement {
            ctx: ctx.clone(),
            coords: ctx.raw_zero(),
        }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        GFElement {
            ctx: ctx.clone(),
            coords: ctx.pad(vec![1]),
        }
    }

    /// The class of Z, the defining root.
    pub fn gen_root(ctx: &Arc<FieldCtx>) -> Self {
        if ctx.degree == 1 {
            // Z maps to the scalar root of the linear defining polynomial.
            let c = (ctx.p - ctx.defining[0]) % ctx.p;
            return GFElement {
                ctx: ctx.clone(),
                coords: vec![c],
            };
        }
        GFElement {
            ctx: ctx.clone(),
            coords: ctx.pad(vec![0, 1]),
        }
    }

    pub fn from_coords(ctx: &Arc<FieldCtx>, coords: Vec<u64>) -> Result<Self> {
        if coords.len() != ctx.degree as usize || coords.iter().any(|&c| c >= ctx.p) {
            return Err(Error::domain("bad coordinate vector"));
        }
        Ok(GFElement {
            ctx: ctx.clone(),
            coords,
        })
    }

    pub fn from_value(ctx: &Arc<FieldCtx>, v: u64) -> Self {
        GFElement {
            ctx: ctx.clone(),
            coords: ctx.element_coords_from_value(v),
        }
    }

    /// The canonical generator g (smallest element of full order); None for
    /// fields whose group order is beyond the u64 factorizer.
    pub fn generator(ctx: &Arc<FieldCtx>) -> Option<Self> {
        ctx.generator_raw().map(|g| GFElement {
            ctx: ctx.clone(),
            coords: g.to_vec(),
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0] == 1 && self.coords[1..].iter().all(|&c| c == 0)
    }

    fn same_ctx(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx),
            "mixing elements of different field contexts"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ctx(other);
        GFElement {
            ctx: self.ctx.clone(),
            coords: self.ctx.raw_add(&self.coords, &other.coords),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_ctx(other);
        GFElement {
            ctx: self.ctx.clone(),
            coords: self.ctx.raw_sub(&self.coords, &other.coords),
        }
    }

    pub fn neg(&self) -> Self {
        GFElement {
            ctx: self.ctx.clone(),
            coords: self.ctx.raw_neg(&self.coords),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ctx(other);
        GFElement {
            ctx: self.ctx.clone(),
            coords: self.ctx.raw_mul(&self.coords, &other.coords),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(GFElement {
            ctx: self.ctx.clone(),
            coords: self.ctx.raw_inv(&self.coords)?,
        })
    }

    pub fn pow(&self, e: u64) -> Self {
        GFElement {
            ctx: self.ctx.clone(),
            coords: self.ctx.raw_pow(&self.coords, e),
        }
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        GFElement {
            ctx: self.ctx.clone(),
            coords: self.ctx.raw_pow_big(&self.coords, e),
        }
    }

    /// Frobenius x -> x^(p^times).
    pub fn frobenius(&self, times: u32) -> Self {
        GFElement {
            ctx: self.ctx.clone(),
            coords: self.ctx.raw_frob(&self.coords, times),
        }
    }

    /// Canonical (base-p value) order.
    pub fn cmp_canonical(&self, other: &Self) -> std::cmp::Ordering {
        self.same_ctx(other);
        FieldCtx::raw_cmp(&self.coords, &other.coords)
    }

    /// Render a coefficient for display: integers over a prime field,
    /// `a^i` powers of the canonical generator over extension fields.
    pub fn display_coeff(&self) -> String {
        if self.ctx.degree == 1 {
            return self.coords[0].to_string();
        }
        if self.is_zero() {
            return "0".to_string();
        }
        match self.ctx.dlog(&self.coords) {
            Some(0) => "1".to_string(),
            Some(1) => "a".to_string(),
            Some(i) => format!("a^{i}"),
            None => format!(
                "[{}]",
                self.coords
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

/// Least r >= 1 with a^r = 1. Requires the group order to fit in u64.
pub fn element_order(a: &GFElement) -> Result<u64> {
    if a.is_zero() {
        return Err(Error::domain("element_order: zero element"));
    }
    let q = a
        .ctx()
        .cardinality_u64()
        .ok_or_else(|| Error::resource("element_order: group order beyond u64"))?;
    let mut t = q - 1;
    let group: Factored = intarith::factorize(t)?;
    for r in group.primes().collect::<Vec<_>>() {
        while t % r == 0 && a.pow(t / r).is_one() {
            t /= r;
        }
    }
    Ok(t)
}

/// A compatible family of roots of unity within one context:
/// zeta_d = zeta_n^(n/d) for every divisor d of n.
#[derive(Debug, Clone)]
pub struct RootFamily {
    n: u64,
    zeta_n: GFElement,
}

impl RootFamily {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.zeta_n.ctx()
    }

    pub fn zeta_n(&self) -> &GFElement {
        &self.zeta_n
    }

    /// zeta_d for a divisor d of n; has exact multiplicative order d.
    pub fn zeta(&self, d: u64) -> Result<GFElement> {
        if d == 0 || self.n % d != 0 {
            return Err(Error::domain(format!(
                "root family modulo {} has no zeta_{d}",
                self.n
            )));
        }
        Ok(self.zeta_n.pow(self.n / d))
    }
}

/// Fix the compatible family of roots of unity of order dividing `n` in the
/// given context. zeta_n = g^((Q-1)/n) over the canonical generator when the
/// group order is factorable; for larger fields, the smallest base element
/// (canonical order) whose (Q-1)/n-th power has exact order n is used.
pub fn nth_root_family(ctx: &Arc<FieldCtx>, n: u64) -> Result<RootFamily> {
    if n == 0 {
        return Err(Error::domain("nth_root_family: n must be positive"));
    }
    let q_big = ctx.cardinality_big();
    let group_big = &q_big - 1u32;
    if (&group_big % n) != BigUint::ZERO {
        return Err(Error::domain(format!(
            "nth_root_family: {n} does not divide the group order of F_{{{}^{}}}",
            ctx.p(),
            ctx.degree()
        )));
    }
    let n_f = intarith::factorize(n)?;
    let exact_order_n = |z: &GFElement| -> bool {
        if !z.pow(n).is_one() {
            return false;
        }
        n_f.primes().all(|r| !z.pow(n / r).is_one())
    };
    let zeta_n = if let Some(q) = ctx.cardinality_u64() {
        let g = GFElement::generator(ctx)
            .ok_or_else(|| Error::internal("generator missing for small field"))?;
        g.pow((q - 1) / n)
    } else {
        let exp = &group_big / n;
        let mut found = None;
        for v in 2..(1u64 << 20) {
            let a = GFElement::from_value(ctx, v);
            let z = a.pow_big(&exp);
            if exact_order_n(&z) {
                found = Some(z);
                break;
            }
        }
        found.ok_or_else(|| Error::internal("no primitive n-th root located by scan"))?
    };
    if !exact_order_n(&zeta_n) {
        return Err(Error::internal(format!(
            "constructed zeta_{n} does not have exact order {n}"
        )));
    }
    Ok(RootFamily { n, zeta_n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_examples() {
        let f2 = field_context(2, 1).unwrap();
        assert_eq!(f2.defining(), &[0, 1]); // X itself
        assert_eq!(
            GFElement::generator(&f2).unwrap().coords(),
            &[1],
            "F_2 has g = 1"
        );

        let f8 = field_context(2, 3).unwrap();
        assert_eq!(f8.defining(), &[1, 1, 0, 1]); // X^3 + X + 1

        let f9 = field_context(3, 2).unwrap();
        assert_eq!(f9.defining(), &[1, 0, 1]); // X^2 + 1

        assert!(field_context(4, 1).is_err());
    }

    #[test]
    fn order_examples() {
        let f4 = field_context(2, 2).unwrap();
        assert_eq!(element_order(&GFElement::one(&f4)).unwrap(), 1);
        let g = GFElement::generator(&f4).unwrap();
        assert_eq!(element_order(&g).unwrap(), 3);

        let f5 = field_context(5, 1).unwrap();
        let two = GFElement::from_value(&f5, 2);
        assert_eq!(element_order(&two).unwrap(), 4);
        assert!(element_order(&GFElement::zero(&f5)).is_err());
    }

    #[test]
    fn field_axioms_spot_checks() {
        for (p, e) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (5, 2), (3, 3)] {
            let ctx = field_context(p, e).unwrap();
            let q = ctx.cardinality_u64().unwrap();
            let els: Vec<GFElement> = (0..q.min(32))
                .map(|v| GFElement::from_value(&ctx, v))
                .collect();
            for a in &els {
                for b in &els {
                    // commutativity and distributivity over a third element
                    assert_eq!(a.mul(b), b.mul(a));
                    let c = &els[(a.coords()[0] as usize + 1) % els.len()];
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                }
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn frobenius_order() {
        // Frobenius x -> x^q has order k on F_{q^k} over F_q.
        let ctx = field_context(2, 6).unwrap(); // F_64 = F_4^3 = F_8^2
        let q = 64u64;
        for v in 0..q {
            let a = GFElement::from_value(&ctx, v);
            assert_eq!(a.frobenius(6), a);
        }
        // some element moves under every proper power
        for j in 1..6u32 {
            assert!(
                (0..q).any(|v| {
                    let a = GFElement::from_value(&ctx, v);
                    a.frobenius(j) != a
                }),
                "Frobenius^{j} fixed everything"
            );
        }
    }

    #[test]
    fn root_family_examples() {
        let f2 = field_context(2, 1).unwrap();
        let fam = nth_root_family(&f2, 1).unwrap();
        assert!(fam.zeta(1).unwrap().is_one());

        // q=2, k=3, n=7: zeta_7 = g of F_8.
        let f8 = field_context(2, 3).unwrap();
        let fam = nth_root_family(&f8, 7).unwrap();
        assert_eq!(fam.zeta_n(), &GFElement::generator(&f8).unwrap());
        assert_eq!(element_order(fam.zeta_n()).unwrap(), 7);

        // q=3, k=4, n=5: zeta_5 = g^16 in F_81.
        let f81 = field_context(3, 4).unwrap();
        let fam = nth_root_family(&f81, 5).unwrap();
        let g = GFElement::generator(&f81).unwrap();
        assert_eq!(fam.zeta_n(), &g.pow(16));
        assert!(fam.zeta_n().pow(5).is_one());
        assert!(!fam.zeta_n().is_one());

        assert!(nth_root_family(&f8, 3).is_err());
    }

    #[test]
    fn root_family_compatibility() {
        // zeta_{d1}^{d1/d2} = zeta_{d2} along divisor chains d2 | d1 | n.
        let ctx = field_context(3, 4).unwrap(); // group order 80
        for n in [80u64, 40, 20, 16, 10, 8, 5, 4, 2, 1] {
            let fam = nth_root_family(&ctx, n).unwrap();
            let divs = intarith::factorize(n).unwrap().divisors();
            for &d1 in &divs {
                for &d2 in &divs {
                    if d1 % d2 == 0 {
                        assert_eq!(
                            fam.zeta(d1).unwrap().pow(d1 / d2),
                            fam.zeta(d2).unwrap(),
                            "n={n} d1={d1} d2={d2}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn big_field_roots() {
        // A field beyond u64 cardinality: F_{3^52}; find a 53rd root of unity.
        let ctx = field_context(3, 52).unwrap();
        let fam = nth_root_family(&ctx, 53).unwrap();
        let z = fam.zeta_n();
        assert!(z.pow(53).is_one());
        assert!(!z.is_one());
    }
}
