//! Polynomials over a finite field context: the arithmetic needed to
//! assemble, divide, and certify factors of X^n - 1.

use std::sync::Arc;

use num_bigint::BigUint;

use super::{FieldCtx, GFElement};
use crate::intarith;
use crate::{Error, Result};

/// Dense polynomial with coefficients in one field context. Coefficients
/// are stored little-endian and trimmed: empty = zero polynomial.
#[derive(Clone)]
pub struct GFPoly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<Vec<u64>>,
}

impl PartialEq for GFPoly {
    fn eq(&self, other: &Self) -> bool {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx),
            "comparing polynomials over different fields"
        );
        self.coeffs == other.coeffs
    }
}

impl Eq for GFPoly {}

impl std::fmt::Debug for GFPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GFPoly({self})")
    }
}

impl GFPoly {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        GFPoly {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        GFPoly::constant(GFElement::one(ctx))
    }

    pub fn x(ctx: &Arc<FieldCtx>) -> Self {
        GFPoly {
            ctx: ctx.clone(),
            coeffs: vec![ctx.raw_zero(), ctx.pad(vec![1])],
        }
    }

    pub fn constant(c: GFElement) -> Self {
        let ctx = c.ctx().clone();
        let mut p = GFPoly {
            ctx,
            coeffs: vec![c.coords().to_vec()],
        };
        p.trim();
        p
    }

    pub fn monomial(deg: usize, c: GFElement) -> Self {
        let ctx = c.ctx().clone();
        let mut coeffs = vec![ctx.raw_zero(); deg + 1];
        coeffs[deg] = c.coords().to_vec();
        let mut p = GFPoly { ctx, coeffs };
        p.trim();
        p
    }

    pub fn from_elements(ctx: &Arc<FieldCtx>, elements: Vec<GFElement>) -> Self {
        let coeffs = elements
            .into_iter()
            .map(|e| {
                assert!(Arc::ptr_eq(e.ctx(), ctx), "coefficient from another field");
                e.coords().to_vec()
            })
            .collect();
        let mut p = GFPoly {
            ctx: ctx.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    /// X^n - 1 over the context.
    pub fn xn_minus_one(ctx: &Arc<FieldCtx>, n: u64) -> Self {
        let n = n as usize;
        let mut coeffs = vec![ctx.raw_zero(); n + 1];
        coeffs[0] = ctx.raw_neg(&ctx.pad(vec![1]));
        coeffs[n] = ctx.pad(vec![1]);
        let mut p = GFPoly {
            ctx: ctx.clone(),
            coeffs,
        };
        p.trim(); // n = 0 gives the zero polynomial 1 - 1
        p
    }

    fn trim(&mut self) {
        while self
            .coeffs
            .last()
            .is_some_and(|c| c.iter().all(|&x| x == 0))
        {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> GFElement {
        let coords = self
            .coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ctx.raw_zero());
        GFElement::from_coords(&self.ctx, coords).expect("stored coefficient is valid")
    }

    pub fn coefficients(&self) -> Vec<GFElement> {
        (0..self.coeffs.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn leading(&self) -> Option<GFElement> {
        self.degree().map(|d| self.coeff(d))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    fn same_ctx(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx),
            "mixing polynomials over different field contexts"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ctx(other);
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => self.ctx.raw_add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        let mut p = GFPoly {
            ctx: self.ctx.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GFPoly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| self.ctx.raw_neg(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ctx(other);
        if self.is_zero() || other.is_zero() {
            return GFPoly::zero(&self.ctx);
        }
        let mut coeffs = vec![self.ctx.raw_zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.iter().all(|&x| x == 0) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = self.ctx.raw_mul(a, b);
                coeffs[i + j] = self.ctx.raw_add(&coeffs[i + j], &prod);
            }
        }
        let mut p = GFPoly {
            ctx: self.ctx.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn mul_scalar(&self, c: &GFElement) -> Self {
        GFPoly {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|a| self.ctx.raw_mul(a, c.coords()))
                .collect(),
        }
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_ctx(divisor);
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::domain("polynomial division by zero"))?;
        if self.degree().map_or(true, |d| d < dd) {
            return Ok((GFPoly::zero(&self.ctx), self.clone()));
        }
        let lead_inv = self.ctx.raw_inv(&divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![self.ctx.raw_zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = self.ctx.raw_mul(&rem[i], &lead_inv);
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            quo[i - dd] = c.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = self.ctx.raw_mul(&c, dc);
                rem[i - dd + j] = self.ctx.raw_sub(&rem[i - dd + j], &t);
            }
        }
        let mut q = GFPoly {
            ctx: self.ctx.clone(),
            coeffs: quo,
        };
        let mut r = GFPoly {
            ctx: self.ctx.clone(),
            coeffs: rem,
        };
        q.trim();
        r.trim();
        Ok((q, r))
    }

    pub fn rem_by(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Division known to be exact; the nonzero remainder is a bug signal.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::internal(format!(
                "exact_div: nonzero remainder dividing {self} by {divisor}"
            )));
        }
        Ok(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem_by(&b)?;
            a = b;
            b = r;
        }
        Ok(a.into_monic())
    }

    pub fn into_monic(self) -> Self {
        match self.leading() {
            None => self,
            Some(l) if l.is_one() => self,
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                self.mul_scalar(&inv)
            }
        }
    }

    /// self^e modulo m, big-integer exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Result<Self> {
        let mut acc = GFPoly::one(&self.ctx);
        let mut base = self.rem_by(m)?;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem_by(m)?;
            }
            if i + 1 < bits {
                base = base.mul(&base).rem_by(m)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &GFElement) -> GFElement {
        let mut acc = GFElement::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(
                &GFElement::from_coords(&self.ctx, c.clone()).expect("stored coefficient valid"),
            );
        }
        acc
    }

    /// Reciprocal polynomial g* = g(0)^{-1} X^{deg g} g(1/X).
    /// Requires g(0) != 0.
    pub fn reciprocal(&self) -> Result<Self> {
        let d = self
            .degree()
            .ok_or_else(|| Error::domain("reciprocal of zero polynomial"))?;
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::domain(
                "reciprocal: constant coefficient must be nonzero",
            ));
        }
        let inv = c0.inv()?;
        let mut coeffs: Vec<Vec<u64>> = (0..=d)
            .map(|i| self.ctx.raw_mul(&self.coeffs[d - i], inv.coords()))
            .collect();
        while coeffs.last().is_some_and(|c| c.iter().all(|&x| x == 0)) {
            coeffs.pop();
        }
        Ok(GFPoly {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    /// Distinct-degree style irreducibility test over this context's field
    /// of cardinality Q: f of degree d is irreducible iff X^(Q^d) = X mod f
    /// and gcd(X^(Q^(d/l)) - X, f) = 1 for every prime l dividing d.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(d) => d,
        };
        let f = self.clone().into_monic();
        let x = GFPoly::x(&self.ctx).rem_by(&f)?;
        let checkpoints: Vec<usize> = intarith::factorize(d as u64)?
            .primes()
            .map(|l| d / l as usize)
            .collect();
        let p = BigUint::from(self.ctx.p());
        let steps = self.ctx.degree();
        let mut u = x.clone();
        for j in 1..=d {
            for _ in 0..steps {
                u = u.pow_mod(&p, &f)?;
            }
            if checkpoints.contains(&j) {
                let g = u.sub(&x).gcd(&f)?;
                if g.degree() != Some(0) {
                    return Ok(false);
                }
            }
        }
        Ok(u == x)
    }

    /// True for monic X^a - c with a >= 1 and c != 0: the binomial shape
    /// the splitting-field criterion counts.
    pub fn is_binomial(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(d) => {
                self.is_monic()
                    && !self.coeff(0).is_zero()
                    && (1..d).all(|i| self.coeffs[i].iter().all(|&x| x == 0))
            }
        }
    }
}

impl std::fmt::Display for GFPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let cs = c.display_coeff();
            let term = match (i, cs.as_str()) {
                (0, _) => cs,
                (1, "1") => "X".to_string(),
                (1, _) => format!("{cs}*X"),
                (_, "1") => format!("X^{i}"),
                (_, _) => format!("{cs}*X^{i}"),
            };
            terms.push(term);
        }
        write!(f, "{}", terms.join(" + "))
    }
}
