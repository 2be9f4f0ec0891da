//! Irreducible factorizations of X^n - 1 and of the cyclotomic polynomial
//! Phi_n over F_q, indexed by the coset transversal.
//!
//! Two routes produce each factor: the direct product over the coset orbit
//! in the splitting field, and the equal-difference route that works in the
//! far smaller field F_{q^omega_gamma} by multiplying binomials in
//! Y = X^(tau/omega). Both are anchored to the same root-of-unity family,
//! so they agree coefficient for coefficient.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::cosets::{self, Coset, CosetSpec};
use crate::gf::{self, ext, FieldCtx, GFElement, GFPoly, RootFamily};
use crate::intarith;
use crate::{Error, Result};

/// Subset enumeration bound for the symmetric-sum evaluation; above this
/// the route switches to sequential root-product accumulation.
const SUBSET_ENUM_MAX_OMEGA: u64 = 20;
/// Memory guard for the subset table (number of field coordinates).
const SUBSET_TABLE_COORD_CAP: u128 = 1 << 23;

/// Shared data for factoring X^n - 1 over F_q: the base and splitting
/// contexts and the anchored root family.
pub struct FactorContext {
    spec: CosetSpec,
    base: Arc<FieldCtx>,
    splitting: Arc<FieldCtx>,
    family: RootFamily,
    ord: u64,
}

impl FactorContext {
    pub fn new(spec: &CosetSpec) -> Result<Self> {
        let ord = intarith::mult_order(spec.q(), spec.n())?;
        let degree = spec.ext_degree() as u64 * ord;
        if degree > gf::MAX_FIELD_DEGREE as u64 {
            return Err(Error::resource(format!(
                "splitting field degree {degree} over F_{} exceeds {}",
                spec.char(),
                gf::MAX_FIELD_DEGREE
            )));
        }
        let base = gf::field_context(spec.char(), spec.ext_degree())?;
        let splitting = gf::field_context(spec.char(), degree as u32)?;
        let family = gf::nth_root_family(&splitting, spec.n())?;
        Ok(FactorContext {
            spec: spec.clone(),
            base,
            splitting,
            family,
            ord,
        })
    }

    pub fn spec(&self) -> &CosetSpec {
        &self.spec
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn splitting(&self) -> &Arc<FieldCtx> {
        &self.splitting
    }

    pub fn family(&self) -> &RootFamily {
        &self.family
    }

    pub fn ord(&self) -> u64 {
        self.ord
    }
}

/// The minimal polynomial of zeta_n^gamma over F_q: the product of
/// (X - zeta_n^(gamma q^j)) over the coset orbit, projected into F_q.
pub fn minimal_poly_direct(fc: &FactorContext, coset: &Coset) -> Result<GFPoly> {
    if coset.modulus() != fc.spec.n() || coset.q() != fc.spec.q() {
        return Err(Error::domain("coset does not belong to this factorization"));
    }
    let k = &fc.splitting;
    let mut acc = GFPoly::one(k);
    for e in coset.orbit() {
        let root = fc.family.zeta_n().pow(e);
        let linear = GFPoly::from_elements(k, vec![root.neg(), GFElement::one(k)]);
        acc = acc.mul(&linear);
    }
    let down = ext::extension(&fc.base, k)?;
    down.project_poly(&acc).ok_or_else(|| {
        Error::internal(format!(
            "direct minimal polynomial of coset {} has a coefficient outside F_q",
            coset.representative()
        ))
    })
}

/// The same factor through the coarsest equal-difference representation:
/// omega_gamma binomial roots in F_{q^omega_gamma}, assembled in
/// Y = X^(tau/omega) and projected into F_q.
pub fn minimal_poly_equal_difference(fc: &FactorContext, coset: &Coset) -> Result<GFPoly> {
    if coset.modulus() != fc.spec.n() || coset.q() != fc.spec.q() {
        return Err(Error::domain("coset does not belong to this factorization"));
    }
    let n = fc.spec.n();
    let gamma = coset.representative();
    let tau = coset.size();
    let params = cosets::equal_difference_params(coset)?;
    let omega = params.omega;
    let stride = (tau / omega) as usize;

    // d_gamma and the reduced exponent gamma~.
    let diff = n * omega / tau;
    let g = if gamma == 0 {
        diff
    } else {
        intarith::gcd(diff, gamma)
    };
    let d_gamma = diff / g;
    let gamma_tilde = gamma / g;

    // Working field F_{q^omega}, with zeta_{d_gamma} pulled down from the
    // anchor so both routes label factors identically.
    let w_degree = fc.spec.ext_degree() as u64 * omega;
    let w = gf::field_context(fc.spec.char(), w_degree as u32)?;
    let w_to_k = ext::extension(&w, &fc.splitting)?;
    let zeta_k = fc.family.zeta(d_gamma)?;
    let zeta_w = w_to_k.project(&zeta_k).ok_or_else(|| {
        Error::internal(format!(
            "zeta_{d_gamma} is not in the subfield F_{{q^{omega}}}"
        ))
    })?;

    // Roots of the binomials: beta_j = zeta^(gamma~ q^j), j = 0..omega-1.
    let d_mod = d_gamma.max(1);
    let mut roots = Vec::with_capacity(omega as usize);
    let mut exp = gamma_tilde % d_mod;
    for _ in 0..omega {
        roots.push(zeta_w.pow(exp));
        exp = intarith::mulmod(exp, fc.spec.q() % d_mod, d_mod);
    }

    // Signed elementary symmetric sums of the roots.
    let sums = symmetric_sums(&w, &roots);
    let mut elements = vec![GFElement::zero(&w); stride * omega as usize + 1];
    for (k, e_k) in sums.iter().enumerate() {
        // coefficient of Y^(omega - k) is (-1)^k e_k
        let idx = (omega as usize - k) * stride;
        elements[idx] = if k % 2 == 0 { e_k.clone() } else { e_k.neg() };
    }
    let poly_w = GFPoly::from_elements(&w, elements);
    // Project into F_q through the anchor field, along the same embedding
    // the direct route uses; composing the W and base embeddings directly
    // would pick an incompatible conjugate.
    let lifted = w_to_k.embed_poly(&poly_w);
    let down = ext::extension(&fc.base, &fc.splitting)?;
    down.project_poly(&lifted).ok_or_else(|| {
        Error::internal(format!(
            "equal-difference factor of coset {gamma} has a coefficient outside F_q"
        ))
    })
}

/// Elementary symmetric sums e_0..e_m of the roots. Subset enumeration for
/// small m (the literal formula), sequential accumulation beyond. Works on
/// raw coordinate vectors; this is the factorization hot path.
fn symmetric_sums(ctx: &Arc<FieldCtx>, roots: &[GFElement]) -> Vec<GFElement> {
    let m = roots.len();
    let one = GFElement::one(ctx).coords().to_vec();
    let zero = GFElement::zero(ctx).coords().to_vec();
    let raw_roots: Vec<&[u64]> = roots.iter().map(|r| r.coords()).collect();
    let table_coords = (1u128 << m) * ctx.degree() as u128;
    let sums: Vec<Vec<u64>> = if m as u64 <= SUBSET_ENUM_MAX_OMEGA
        && table_coords <= SUBSET_TABLE_COORD_CAP
    {
        let mut products: Vec<Vec<u64>> = Vec::with_capacity(1 << m);
        products.push(one.clone());
        let mut sums = vec![zero; m + 1];
        sums[0] = one;
        for mask in 1usize..(1 << m) {
            let low = mask.trailing_zeros() as usize;
            let prod = ctx.raw_mul(&products[mask & (mask - 1)], raw_roots[low]);
            let k = mask.count_ones() as usize;
            sums[k] = ctx.raw_add(&sums[k], &prod);
            products.push(prod);
        }
        sums
    } else {
        // Vieta accumulation: multiply out (Y - beta) one root at a time,
        // tracking the unsigned symmetric sums.
        let mut sums = vec![zero; m + 1];
        sums[0] = one;
        for (i, r) in raw_roots.iter().enumerate() {
            for k in (1..=i + 1).rev() {
                let t = ctx.raw_mul(&sums[k - 1], r);
                sums[k] = ctx.raw_add(&sums[k], &t);
            }
        }
        sums
    };
    sums.into_iter()
        .map(|c| GFElement::from_coords(ctx, c).expect("sums have valid coords"))
        .collect()
}

/// One irreducible factor with its coset label.
#[derive(Debug, Clone)]
pub struct FactorEntry {
    pub rep: u64,
    pub size: u64,
    pub multiplicity: u32,
    pub poly: GFPoly,
}

/// A certified factorization of X^n - 1 or Phi_n over F_q.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub q: u64,
    pub n: u64,
    pub modulus_poly: GFPoly,
    pub factors: Vec<FactorEntry>,
}

impl Factorization {
    /// Multiply the factors back together.
    pub fn product(&self) -> GFPoly {
        let ctx = self.modulus_poly.ctx();
        let mut acc = GFPoly::one(ctx);
        for f in &self.factors {
            for _ in 0..f.multiplicity {
                acc = acc.mul(&f.poly);
            }
        }
        acc
    }

    /// Machine-readable form: coefficients ascending; integers over prime
    /// fields, coordinate vectors over extensions.
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "n": self.n,
            "factors": self.factors.iter().map(|f| json!({
                "rep": f.rep,
                "size": f.size,
                "poly": poly_to_json(&f.poly),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Coefficient list JSON per the wire contract.
pub fn poly_to_json(poly: &GFPoly) -> Value {
    let prime_field = poly.ctx().degree() == 1;
    Value::Array(
        poly.coefficients()
            .iter()
            .map(|c| {
                if prime_field {
                    json!(c.coords()[0])
                } else {
                    json!(c.coords())
                }
            })
            .collect(),
    )
}

/// Factor X^n - 1 over F_q through the closed-form transversal; one factor
/// per coset, multiplicity 1, in transversal order.
pub fn factor_xn_minus_1(spec: &CosetSpec) -> Result<Factorization> {
    let fc = FactorContext::new(spec)?;
    factor_with_context(&fc, false)
}

/// Factor the cyclotomic polynomial Phi_n over F_q: exactly the factors
/// whose representatives are coprime to n.
pub fn factor_cyclotomic(spec: &CosetSpec) -> Result<Factorization> {
    let fc = FactorContext::new(spec)?;
    factor_with_context(&fc, true)
}

fn factor_with_context(fc: &FactorContext, phi_only: bool) -> Result<Factorization> {
    let spec = &fc.spec;
    let n = spec.n();
    let reps = cosets::transversal(spec)?;
    let mut factors = Vec::new();
    for rep in &reps {
        if phi_only && intarith::gcd(rep.rep(), n) != 1 {
            continue;
        }
        let coset = Coset::from_representative(n, spec.q(), rep.rep());
        if coset.size() != rep.size() {
            return Err(Error::internal(format!(
                "closed-form size {} disagrees with orbit size {} at rep {}",
                rep.size(),
                coset.size(),
                rep.rep()
            )));
        }
        let poly = minimal_poly_equal_difference(fc, &coset)?;
        factors.push(FactorEntry {
            rep: rep.rep(),
            size: rep.size(),
            multiplicity: 1,
            poly,
        });
    }
    let modulus_poly = if phi_only {
        phi_poly(&fc.base, n)?
    } else {
        GFPoly::xn_minus_one(&fc.base, n)
    };
    Ok(Factorization {
        q: spec.q(),
        n,
        modulus_poly,
        factors,
    })
}

/// Phi_n over the given field by the Moebius product
/// prod (X^d - 1)^(mu(n/d)), evaluated with exact division.
pub fn phi_poly(ctx: &Arc<FieldCtx>, n: u64) -> Result<GFPoly> {
    let mut numerator = GFPoly::one(ctx);
    let mut denominator = GFPoly::one(ctx);
    for d in intarith::factorize(n)?.divisors() {
        match intarith::moebius(&intarith::factorize(n / d)?) {
            1 => numerator = numerator.mul(&GFPoly::xn_minus_one(ctx, d)),
            -1 => denominator = denominator.mul(&GFPoly::xn_minus_one(ctx, d)),
            _ => {}
        }
    }
    numerator.exact_div(&denominator)
}

/// Degree omega_1 of the smallest extension of F_q over which X^n - 1
/// factors into irreducible binomials: the omega of the coset of 1.
pub fn binomial_field_degree(spec: &CosetSpec) -> Result<u64> {
    let coset = Coset::from_representative(spec.n(), spec.q(), 1 % spec.n());
    Ok(cosets::equal_difference_params(&coset)?.omega)
}

/// Factors of X^n - 1 over the extension F_{q^t} (t dividing ord_n(q)),
/// computed in the splitting field and projected onto the subfield of
/// q^t elements. Returns (coset representative, factor) pairs.
pub fn factor_xn_minus_1_over(spec: &CosetSpec, t: u64) -> Result<Vec<(u64, GFPoly)>> {
    let fc = FactorContext::new(spec)?;
    if t == 0 || fc.ord % t != 0 {
        return Err(Error::domain(format!(
            "factor_xn_minus_1_over: t = {t} must divide ord_n(q) = {}",
            fc.ord
        )));
    }
    let n = spec.n();
    let qt = intarith::modpow(spec.q() % n.max(1), t, n.max(1));
    let sub = gf::field_context(spec.char(), spec.ext_degree() * t as u32)?;
    let down = ext::extension(&sub, &fc.splitting)?;
    let mut out = Vec::new();
    for coset in cosets::orbit_partition(n, qt)? {
        let mut acc = GFPoly::one(&fc.splitting);
        for e in coset.orbit() {
            let root = fc.family.zeta_n().pow(e);
            let linear = GFPoly::from_elements(
                &fc.splitting,
                vec![root.neg(), GFElement::one(&fc.splitting)],
            );
            acc = acc.mul(&linear);
        }
        let projected = down.project_poly(&acc).ok_or_else(|| {
            Error::internal(format!(
                "factor of coset {} over F_{{q^{t}}} escaped the subfield",
                coset.representative()
            ))
        })?;
        out.push((coset.representative(), projected));
    }
    Ok(out)
}

/// Expected per-factor parameters from the even-modulus factorization
/// theorem's case tables, compared against the values the concrete coset
/// computation produces. A mismatch is recorded, not normalized away: the
/// concrete computation is authoritative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm1Check {
    pub rep: u64,
    pub sign_plus: bool,
    pub d: u32,
    pub v: u32,
    pub e0: u32,
    /// (omega', r, h) from the case tables.
    pub expected: (u64, u64, u64),
    /// (omega_gamma, d_gamma, tau/omega_gamma) from the coset itself.
    pub actual: (u64, u64, u64),
    pub matches: bool,
}

impl Thm1Check {
    /// The one known boundary discrepancy: the plus-stratum h table floors
    /// the 2-exponent at 1 where the coset sizes floor it at 0, doubling h
    /// whenever d + v exceeds e0. Everything else must agree.
    pub fn is_known_h_boundary(&self) -> bool {
        self.sign_plus
            && self.d as u64 + self.v as u64 >= self.e0 as u64
            && self.expected.0 == self.actual.0
            && self.expected.1 == self.actual.1
            && self.expected.2 == 2 * self.actual.2
    }
}

/// Evaluate the even-modulus case tables against every transversal entry.
pub fn thm1_assertion_layer(spec: &CosetSpec) -> Result<Vec<Thm1Check>> {
    let n = spec.n();
    let (e0, _) = spec.two_part();
    if e0 == 0 {
        return Err(Error::domain("thm1_assertion_layer: n must be even"));
    }
    let e0 = e0 as u64;
    let reps = cosets::even_transversal(spec)?;
    let odd_parts: Vec<(u64, u32)> = spec
        .n_factored()
        .factors()
        .iter()
        .copied()
        .filter(|&(p, _)| p != 2)
        .collect();
    let mut out = Vec::new();
    for rep in &reps {
        // prod p_i^{M_i} and prod p_i^{e_i - y_i - M_i} from the tuple.
        let mut p_m = 1u64;
        let mut p_rest = 1u64;
        for (i, &(p, e)) in odd_parts.iter().enumerate() {
            let y = rep.tuple.y[i];
            let m = rep.tuple.m_caps[i];
            p_m *= p.pow(m);
            p_rest *= p.pow(e - y - m);
        }
        let omega_y = rep.tuple.omega;
        let d = rep.d as u64;
        let v = rep.v as u64;
        let expected = if rep.sign_plus {
            let r = (1u64 << (e0 - d).min(v)) * p_rest;
            let h = (1u64 << (e0.saturating_sub(d + v)).max(1)) * p_m;
            (omega_y, r, h)
        } else {
            let omega_prime = if d + 3 <= e0 { 2 * omega_y } else { omega_y };
            let r = if d + 3 <= e0 {
                (1u64 << (e0 - d).min(v + 1)) * p_rest
            } else if d < e0 {
                2 * p_rest
            } else {
                p_rest
            };
            let h = if d + 3 <= e0 {
                (1u64 << e0.saturating_sub(d + v + 1)) * p_m
            } else if d + 2 == e0 {
                2 * p_m
            } else {
                p_m
            };
            (omega_prime, r, h)
        };
        // Actual parameters from the concrete coset.
        let coset = Coset::from_representative(n, spec.q(), rep.rep);
        let params = cosets::equal_difference_params(&coset)?;
        let tau = coset.size();
        let diff = n * params.omega / tau;
        let g = if rep.rep == 0 {
            diff
        } else {
            intarith::gcd(diff, rep.rep)
        };
        let actual = (params.omega, diff / g, tau / params.omega);
        let matches = expected == actual;
        out.push(Thm1Check {
            rep: rep.rep,
            sign_plus: rep.sign_plus,
            d: rep.d,
            v: rep.v,
            e0: e0 as u32,
            expected,
            actual,
            matches,
        });
    }
    Ok(out)
}
