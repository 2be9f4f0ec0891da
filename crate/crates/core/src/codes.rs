//! Cyclic codes of length m = p^v * n over F_q: generator-polynomial
//! classification, duals, the self-reciprocity criterion, and self-dual
//! classification and enumeration.
//!
//! X^m - 1 = (X^n - 1)^(p^v), so a cyclic code is an exponent vector Omega
//! over the irreducible factors of X^n - 1, each multiplicity in 0..=p^v.

use serde_json::{json, Value};

use crate::cosets::{self, Coset, CosetRep, CosetSpec};
use crate::factorizer::{self, Factorization};
use crate::gf::GFPoly;
use crate::intarith;
use crate::{Error, Result};

/// A cyclic code identified by its exponent vector over the factor
/// transversal, with the derived generator polynomial.
#[derive(Debug, Clone)]
pub struct CyclicCode {
    pub q: u64,
    pub m: u64,
    /// Multiplicity per factor, in transversal order.
    pub omega: Vec<u32>,
    pub generator: GFPoly,
    pub dim: u64,
}

impl PartialEq for CyclicCode {
    fn eq(&self, other: &Self) -> bool {
        // Ideals of the quotient ring biject with monic generators.
        self.q == other.q && self.m == other.m && self.generator == other.generator
    }
}

impl Eq for CyclicCode {}

/// Shared factorization data for all cyclic codes of length m over F_q.
pub struct CodeFamily {
    q: u64,
    m: u64,
    /// p^v, the repeated-root multiplicity.
    pv: u64,
    n: u64,
    reps: Vec<CosetRep>,
    factorization: Factorization,
}

impl CodeFamily {
    pub fn new(q: u64, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("code length must be positive"));
        }
        let q_f = intarith::factorize(q)?;
        if !q_f.is_prime_power() || q < 2 {
            return Err(Error::domain(format!("q = {q} is not a prime power")));
        }
        let p = q_f.factors()[0].0;
        let mut n = m;
        let mut pv = 1u64;
        while n % p == 0 {
            n /= p;
            pv *= p;
        }
        let spec = CosetSpec::new(q, n)?;
        let reps = cosets::transversal(&spec)?;
        let factorization = factorizer::factor_xn_minus_1(&spec)?;
        Ok(CodeFamily {
            q,
            m,
            pv,
            n,
            reps,
            factorization,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// The simple-root length n with m = p^v * n.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// p^v: one more than the largest allowed multiplicity.
    pub fn repeated_multiplicity(&self) -> u64 {
        self.pv
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn reps(&self) -> &[CosetRep] {
        &self.reps
    }

    fn base_ctx(&self) -> &std::sync::Arc<crate::gf::FieldCtx> {
        self.factorization.modulus_poly.ctx()
    }

    /// Total number of cyclic codes: (p^v + 1)^(number of factors).
    pub fn code_count(&self) -> Result<u128> {
        let mut acc: u128 = 1;
        for _ in 0..self.factorization.factors.len() {
            acc = acc
                .checked_mul(self.pv as u128 + 1)
                .ok_or_else(|| Error::resource("code count exceeds u128"))?;
        }
        Ok(acc)
    }

    /// Build the code for an explicit exponent vector.
    pub fn code_from_omega(&self, omega: &[u32]) -> Result<CyclicCode> {
        if omega.len() != self.factorization.factors.len() {
            return Err(Error::domain("omega length does not match factor count"));
        }
        let ctx = self.base_ctx();
        let mut generator = GFPoly::one(ctx);
        for (f, &mult) in self.factorization.factors.iter().zip(omega) {
            if mult as u64 > self.pv {
                return Err(Error::domain(format!(
                    "multiplicity {mult} exceeds p^v = {}",
                    self.pv
                )));
            }
            for _ in 0..mult {
                generator = generator.mul(&f.poly);
            }
        }
        let deg = generator.degree().unwrap_or(0) as u64;
        Ok(CyclicCode {
            q: self.q,
            m: self.m,
            omega: omega.to_vec(),
            generator,
            dim: self.m - deg,
        })
    }

    /// Stream every cyclic code of length m in lexicographic Omega order.
    pub fn enumerate_codes(&self) -> CodeIter<'_> {
        CodeIter {
            family: self,
            next_omega: Some(vec![0; self.factorization.factors.len()]),
        }
    }

    /// X^m - 1 over the base field.
    fn length_poly(&self) -> GFPoly {
        let ctx = self.base_ctx();
        let mut xm = GFPoly::xn_minus_one(ctx, self.n);
        for _ in 1..self.pv {
            xm = xm.mul(&GFPoly::xn_minus_one(ctx, self.n));
        }
        xm
    }

    /// Euclidean dual: generated by the reciprocal of (X^m - 1)/generator.
    pub fn dual_code(&self, code: &CyclicCode) -> Result<CyclicCode> {
        let h = self.length_poly().exact_div(&code.generator)?;
        let dual_gen = h.reciprocal()?;
        // Recover the dual's exponent vector by dividing out the factors.
        let mut omega = Vec::with_capacity(self.factorization.factors.len());
        let mut rest = dual_gen.clone();
        for f in &self.factorization.factors {
            let mut mult = 0u32;
            while (mult as u64) < self.pv {
                let (qt, r) = rest.divrem(&f.poly)?;
                if r.is_zero() {
                    rest = qt;
                    mult += 1;
                } else {
                    break;
                }
            }
            omega.push(mult);
        }
        if rest.degree() != Some(0) {
            return Err(Error::internal(
                "dual generator did not factor over the transversal",
            ));
        }
        let deg = dual_gen.degree().unwrap_or(0) as u64;
        Ok(CyclicCode {
            q: self.q,
            m: self.m,
            omega,
            generator: dual_gen,
            dim: self.m - deg,
        })
    }

    /// Self-reciprocity of the factor at a transversal index, by the
    /// order criterion: a common j with q^j = -1 modulo every active prime
    /// power, located through the CRT system j = f_i/2 (mod f_i). The
    /// empty active set (the zero coset, factor X + 1) is self-reciprocal.
    /// Stated for 2-power q, odd n.
    pub fn self_reciprocal_test(&self, index: usize) -> Result<bool> {
        if self.q % 2 != 0 {
            return Err(Error::domain(
                "self_reciprocal_test: stated for 2-power q only",
            ));
        }
        if self.n % 2 == 0 {
            return Err(Error::domain("self_reciprocal_test: n must be odd"));
        }
        let rep = self
            .reps
            .get(index)
            .ok_or_else(|| Error::domain(format!("factor index {index} out of range")))?;
        let tuple = rep.tuple();
        let parts = self.n_parts();
        let mut congruences = Vec::new();
        for (i, &f_i) in tuple.f.iter().enumerate() {
            if tuple.y[i] >= parts[i].1 {
                continue; // inactive prime
            }
            if f_i % 2 != 0 {
                return Ok(false);
            }
            congruences.push((f_i / 2, f_i));
        }
        Ok(intarith::crt_solve(&congruences)?.is_some())
    }

    fn n_parts(&self) -> Vec<(u64, u32)> {
        intarith::factorize(self.n)
            .expect("n already validated")
            .factors()
            .to_vec()
    }

    /// Strata of the transversal under reciprocity: self-reciprocal factor
    /// indices, and the pairing of the rest with their mirror cosets.
    pub fn selfdual_classify(&self) -> Result<SelfDualClassification> {
        if self.q % 2 != 0 {
            return Err(Error::domain(
                "self-dual cyclic codes exist only over fields of characteristic 2",
            ));
        }
        if self.m % 2 != 0 {
            return Err(Error::domain(
                "self-dual cyclic codes exist only for even length",
            ));
        }
        let mut sigma_prime = Vec::new();
        let mut rest: Vec<usize> = Vec::new();
        for i in 0..self.reps.len() {
            if self.self_reciprocal_test(i)? {
                sigma_prime.push(i);
            } else {
                rest.push(i);
            }
        }
        // Pair the rest by matching the coset of -rep.
        let mut leader_to_index = std::collections::HashMap::new();
        for (i, r) in self.reps.iter().enumerate() {
            let c = Coset::from_representative(self.n, self.q, r.rep());
            leader_to_index.insert(c.leader(), i);
        }
        let mut pairs = Vec::new();
        let mut seen = vec![false; self.reps.len()];
        for &i in &rest {
            if seen[i] {
                continue;
            }
            let neg = (self.n - self.reps[i].rep() % self.n) % self.n;
            let mirror = Coset::from_representative(self.n, self.q, neg);
            let j = *leader_to_index
                .get(&mirror.leader())
                .ok_or_else(|| Error::internal("mirror coset missing from the transversal"))?;
            if j == i || seen[j] || sigma_prime.contains(&j) {
                return Err(Error::internal(format!(
                    "reciprocity pairing broke at indices {i}, {j}"
                )));
            }
            seen[i] = true;
            seen[j] = true;
            pairs.push((i, j));
        }
        let count = {
            let mut acc: u128 = 1;
            for _ in 0..pairs.len() {
                acc = acc
                    .checked_mul(self.pv as u128 + 1)
                    .ok_or_else(|| Error::resource("self-dual count exceeds u128"))?;
            }
            acc
        };
        Ok(SelfDualClassification {
            sigma_prime,
            pairs,
            count,
        })
    }

    /// Stream all self-dual cyclic codes: self-reciprocal factors pinned at
    /// multiplicity 2^(v-1), each mirror pair (i, j) ranging over
    /// Omega_i + Omega_j = 2^v, lexicographic in the free choices.
    pub fn selfdual_enumerate(&self) -> Result<SelfDualIter<'_>> {
        let classification = self.selfdual_classify()?;
        let next_choice = Some(vec![0; classification.pairs.len()]);
        Ok(SelfDualIter {
            family: self,
            classification,
            next_choice,
        })
    }
}

/// The reciprocity strata of the factor transversal.
#[derive(Debug, Clone)]
pub struct SelfDualClassification {
    /// Indices of self-reciprocal factors (pinned at 2^(v-1)).
    pub sigma_prime: Vec<usize>,
    /// Mirror pairs (i, j) with coset(rep_j) = coset(-rep_i).
    pub pairs: Vec<(usize, usize)>,
    /// (2^v + 1)^(number of pairs).
    pub count: u128,
}

/// Iterator over all cyclic codes in lexicographic Omega order.
pub struct CodeIter<'a> {
    family: &'a CodeFamily,
    next_omega: Option<Vec<u32>>,
}

impl Iterator for CodeIter<'_> {
    type Item = CyclicCode;

    fn next(&mut self) -> Option<CyclicCode> {
        let omega = self.next_omega.take()?;
        let code = self
            .family
            .code_from_omega(&omega)
            .expect("enumerated omega is in range");
        // advance, last index fastest
        let cap = self.family.pv as u32;
        let mut next = omega;
        let mut i = next.len();
        loop {
            if i == 0 {
                self.next_omega = None;
                break;
            }
            i -= 1;
            if next[i] < cap {
                next[i] += 1;
                self.next_omega = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(code)
    }
}

/// Iterator over self-dual codes.
pub struct SelfDualIter<'a> {
    family: &'a CodeFamily,
    classification: SelfDualClassification,
    next_choice: Option<Vec<u32>>,
}

impl SelfDualIter<'_> {
    pub fn classification(&self) -> &SelfDualClassification {
        &self.classification
    }
}

impl Iterator for SelfDualIter<'_> {
    type Item = CyclicCode;

    fn next(&mut self) -> Option<CyclicCode> {
        let choice = self.next_choice.take()?;
        let pv = self.family.pv as u32;
        let mut omega = vec![0u32; self.family.factorization.factors.len()];
        for &i in &self.classification.sigma_prime {
            omega[i] = pv / 2;
        }
        for (k, &(i, j)) in self.classification.pairs.iter().enumerate() {
            omega[i] = choice[k];
            omega[j] = pv - choice[k];
        }
        let code = self
            .family
            .code_from_omega(&omega)
            .expect("self-dual omega is in range");
        // advance, last pair fastest
        let mut next = choice;
        let mut i = next.len();
        loop {
            if i == 0 {
                self.next_choice = None;
                break;
            }
            i -= 1;
            if next[i] < pv {
                next[i] += 1;
                self.next_choice = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(code)
    }
}

/// Closed-form stratum cardinalities for odd n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataCounts {
    /// Total number of cosets |Sigma(n;q)|.
    pub sigma: u64,
    /// Per 2-adic stratum of the primes: (common v2 of the orders, count).
    pub sigma_k: Vec<(u32, u64)>,
    /// Self-reciprocal stratum size.
    pub sigma_prime: u64,
    /// The paired remainder.
    pub sigma_double_prime: u64,
}

/// Evaluate the counting formulas: |Sigma| as the sum over y of
/// phi-products divided by the lcm of orders, |Sigma_k| restricted to each
/// 2-adic stratum of the primes, and the derived self-reciprocal count.
pub fn count_cosets(spec: &CosetSpec) -> Result<StrataCounts> {
    let n = spec.n();
    if n % 2 == 0 {
        return Err(Error::domain("count_cosets: n must be odd"));
    }
    let q = spec.q();
    let parts: Vec<(u64, u32)> = spec.n_factored().factors().to_vec();

    let sigma = sum_over_y(q, &parts)?;

    // Group the primes by v2(ord_{p_i}(q)), ascending.
    let mut by_v2: Vec<(u32, Vec<(u64, u32)>)> = Vec::new();
    for &(p, e) in &parts {
        let v2 = intarith::valuation(2, intarith::mult_order(q % p, p)?)?;
        match by_v2.iter_mut().find(|(v, _)| *v == v2) {
            Some((_, group)) => group.push((p, e)),
            None => by_v2.push((v2, vec![(p, e)])),
        }
    }
    by_v2.sort_by_key(|&(v, _)| v);

    let mut sigma_k = Vec::new();
    let mut sigma_prime = 1u64; // the zero coset (factor X + 1)
    for (v2, group) in &by_v2 {
        let count = sum_over_y(q, group)?;
        if *v2 > 0 {
            sigma_prime += count - 1;
        }
        sigma_k.push((*v2, count));
    }
    Ok(StrataCounts {
        sigma,
        sigma_k,
        sigma_prime,
        sigma_double_prime: sigma - sigma_prime,
    })
}

/// Sum over y of prod phi(p_i^(e_i - y_i)) / lcm of the orders.
fn sum_over_y(q: u64, parts: &[(u64, u32)]) -> Result<u64> {
    let s = parts.len();
    let mut total = 0u64;
    let mut y = vec![0u32; s];
    loop {
        let mut phi_prod = 1u64;
        let mut l = 1u64;
        for (i, &(p, e)) in parts.iter().enumerate() {
            let rem = e - y[i];
            let pd = p.pow(rem);
            phi_prod *= if rem == 0 { 1 } else { pd / p * (p - 1) };
            l = intarith::lcm(l, intarith::mult_order(q % pd, pd)?)?;
        }
        total += phi_prod / l;
        // odometer
        let mut i = s;
        loop {
            if i == 0 {
                return Ok(total);
            }
            i -= 1;
            y[i] += 1;
            if y[i] <= parts[i].1 {
                break;
            }
            y[i] = 0;
            if i == 0 {
                return Ok(total);
            }
        }
    }
}

/// Machine-readable form of a code.
pub fn code_to_json(family: &CodeFamily, code: &CyclicCode, self_dual: bool) -> Value {
    let mut omega = serde_json::Map::new();
    for (f, &mult) in family.factorization().factors.iter().zip(&code.omega) {
        omega.insert(f.rep.to_string(), json!(mult));
    }
    json!({
        "q": code.q,
        "m": code.m,
        "dim": code.dim,
        "generator": factorizer::poly_to_json(&code.generator),
        "self_dual": self_dual,
        "omega": omega,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::GFElement;

    /// Exhaustive oracle: generators of all divisors of X^m - 1 whose code
    /// is self-dual by the direct reciprocal computation.
    fn selfdual_oracle(q: u64, m: u64) -> Vec<String> {
        let family = CodeFamily::new(q, m).unwrap();
        let mut out = Vec::new();
        for code in family.enumerate_codes() {
            let dual = family.dual_code(&code).unwrap();
            if dual == code {
                out.push(code.generator.to_string());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumerate_examples() {
        let family = CodeFamily::new(2, 3).unwrap();
        let gens: Vec<String> = family
            .enumerate_codes()
            .map(|c| c.generator.to_string())
            .collect();
        assert_eq!(gens.len(), 4);
        assert_eq!(family.code_count().unwrap(), 4);
        let mut sorted = gens.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["1", "X + 1", "X^2 + X + 1", "X^3 + 1"]);

        let family = CodeFamily::new(2, 2).unwrap();
        assert_eq!(family.code_count().unwrap(), 3);
        assert_eq!(family.enumerate_codes().count(), 3);

        // q=3, m=4: three simple factors, 2^3 = 8 divisors.
        let family = CodeFamily::new(3, 4).unwrap();
        assert_eq!(family.code_count().unwrap(), 8);
        assert_eq!(family.enumerate_codes().count(), 8);
    }

    #[test]
    fn code_count_matches_divisor_scan() {
        for (q, m) in [(2u64, 6u64), (2, 12), (3, 6), (2, 9), (3, 9), (2, 20)] {
            let family = CodeFamily::new(q, m).unwrap();
            let count = family.enumerate_codes().count() as u128;
            assert_eq!(count, family.code_count().unwrap(), "q={q} m={m}");
            // All generators distinct, all divide X^m - 1.
            let xm = family.length_poly();
            let mut gens = std::collections::HashSet::new();
            for code in family.enumerate_codes() {
                assert!(xm.rem_by(&code.generator).unwrap().is_zero());
                assert!(gens.insert(code.generator.to_string()));
                assert_eq!(code.dim, m - code.generator.degree().unwrap_or(0) as u64);
            }
        }
    }

    #[test]
    fn dual_examples() {
        let family = CodeFamily::new(2, 7).unwrap();
        // Full space dualizes to the zero code.
        let full = family.code_from_omega(&[0, 0, 0]).unwrap();
        let dual = family.dual_code(&full).unwrap();
        assert_eq!(dual.dim, 0);
        assert_eq!(dual.generator.degree(), Some(7));

        // C = (X^3+X+1): dual = ((X+1)(X^3+X+1)).
        let idx = family
            .factorization()
            .factors
            .iter()
            .position(|f| f.poly.to_string() == "X^3 + X + 1")
            .unwrap();
        let mut omega = vec![0u32; 3];
        omega[idx] = 1;
        let c = family.code_from_omega(&omega).unwrap();
        let dual = family.dual_code(&c).unwrap();
        let ctx = family.factorization().modulus_poly.ctx();
        let x_plus_1 =
            GFPoly::from_elements(ctx, vec![GFElement::one(ctx), GFElement::one(ctx)]);
        assert_eq!(dual.generator, x_plus_1.mul(&c.generator));
    }

    #[test]
    fn dual_is_involution() {
        for (q, m) in [(2u64, 7u64), (2, 14), (3, 8), (4, 6), (5, 10)] {
            let family = CodeFamily::new(q, m).unwrap();
            for code in family.enumerate_codes() {
                let dual = family.dual_code(&code).unwrap();
                assert_eq!(code.dim + dual.dim, m);
                let back = family.dual_code(&dual).unwrap();
                assert_eq!(back, code, "q={q} m={m}");
            }
        }
    }

    #[test]
    fn self_reciprocal_examples() {
        // q=2, n=7: ord_7(2)=3 odd, so the nonzero cosets are not
        // self-reciprocal; the zero coset is.
        let family = CodeFamily::new(2, 7).unwrap();
        for (i, rep) in family.reps().iter().enumerate() {
            let want = rep.rep() == 0;
            assert_eq!(family.self_reciprocal_test(i).unwrap(), want);
        }

        // q=2, n=5: ord_5(2)=4, v2 = 2 > 0: both factors self-reciprocal.
        let family = CodeFamily::new(2, 5).unwrap();
        for i in 0..family.reps().len() {
            assert!(family.self_reciprocal_test(i).unwrap());
        }

        // Criterion agrees with the direct reciprocal check.
        for (q, n) in [(2u64, 7u64), (2, 15), (2, 21), (4, 9), (2, 45), (8, 35)] {
            let family = CodeFamily::new(q, n).unwrap();
            for (i, f) in family.factorization().factors.iter().enumerate() {
                let direct = f.poly.reciprocal().unwrap() == f.poly;
                assert_eq!(
                    family.self_reciprocal_test(i).unwrap(),
                    direct,
                    "q={q} n={n} rep={}",
                    f.rep
                );
            }
        }

        assert!(CodeFamily::new(3, 5)
            .unwrap()
            .self_reciprocal_test(0)
            .is_err());
    }

    #[test]
    fn selfdual_classify_examples() {
        let family = CodeFamily::new(2, 14).unwrap();
        let c = family.selfdual_classify().unwrap();
        assert_eq!(c.count, 3);
        assert_eq!(c.pairs.len(), 1);

        let family = CodeFamily::new(2, 2).unwrap();
        let c = family.selfdual_classify().unwrap();
        assert_eq!(c.count, 1);

        let family = CodeFamily::new(2, 10).unwrap();
        let c = family.selfdual_classify().unwrap();
        assert_eq!(c.count, 1);
        assert!(c.pairs.is_empty());

        assert!(CodeFamily::new(3, 6).unwrap().selfdual_classify().is_err());
        assert!(CodeFamily::new(2, 7).unwrap().selfdual_classify().is_err());
    }

    #[test]
    fn selfdual_enumeration_matches_exhaustive_scan() {
        for (q, m) in [(2u64, 14u64), (2, 2), (2, 10), (2, 12), (4, 6), (2, 30)] {
            let family = CodeFamily::new(q, m).unwrap();
            let mut got: Vec<String> = family
                .selfdual_enumerate()
                .unwrap()
                .map(|c| {
                    let dual = family.dual_code(&c).unwrap();
                    assert_eq!(dual, c, "emitted code is not self-dual at q={q} m={m}");
                    c.generator.to_string()
                })
                .collect();
            got.sort();
            assert_eq!(got, selfdual_oracle(q, m), "q={q} m={m}");
            assert_eq!(got.len() as u128, family.selfdual_classify().unwrap().count);
        }
    }

    #[test]
    fn selfdual_q2_m14_dimensions() {
        let family = CodeFamily::new(2, 14).unwrap();
        let codes: Vec<CyclicCode> = family.selfdual_enumerate().unwrap().collect();
        assert_eq!(codes.len(), 3);
        for c in &codes {
            assert_eq!(c.dim, 7);
        }
    }

    #[test]
    fn count_cosets_examples() {
        let s = CosetSpec::new(2, 7).unwrap();
        let c = count_cosets(&s).unwrap();
        assert_eq!(c.sigma, 3);
        assert_eq!(c.sigma_prime, 1);
        assert_eq!(c.sigma_double_prime, 2);

        let s = CosetSpec::new(2, 1).unwrap();
        let c = count_cosets(&s).unwrap();
        assert_eq!(c.sigma, 1);
        assert_eq!(c.sigma_prime, 1);

        // |Sigma| equals the oracle coset count over a sweep; the strata
        // sizes match the enumerated classification.
        for (q, n) in [(2u64, 15u64), (2, 45), (4, 21), (8, 9), (2, 33), (4, 15)] {
            let s = CosetSpec::new(q, n).unwrap();
            let c = count_cosets(&s).unwrap();
            assert_eq!(
                c.sigma as usize,
                cosets::cosets_oracle(&s).unwrap().len(),
                "sigma at q={q} n={n}"
            );
            let family = CodeFamily::new(q, n).unwrap();
            let enumerated = (0..family.reps().len())
                .filter(|&i| family.self_reciprocal_test(i).unwrap())
                .count() as u64;
            assert_eq!(c.sigma_prime, enumerated, "sigma' at q={q} n={n}");
            assert_eq!(c.sigma_double_prime % 2, 0, "sigma'' parity at q={q} n={n}");
        }
    }

    #[test]
    fn json_shape() {
        let family = CodeFamily::new(2, 14).unwrap();
        let code = family.selfdual_enumerate().unwrap().next().unwrap();
        let v = code_to_json(&family, &code, true);
        assert_eq!(v["q"], 2);
        assert_eq!(v["m"], 14);
        assert_eq!(v["dim"], 7);
        assert_eq!(v["self_dual"], true);
        assert!(v["omega"].is_object());
    }
}
