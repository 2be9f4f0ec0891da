//! q-cyclotomic cosets modulo n: explicit representatives and sizes for odd
//! and even moduli, the 2-adic splitting machinery, and a brute-force oracle.
//!
//! The closed forms: for odd n the transversal is indexed by applicable
//! tuples (y, x) over a primitive root system; for even n = 2^e0 * n' each
//! odd-modulus coset grows a binary splitting tree whose branches are read
//! off the 2-adic expansion of -gamma/n'.

use crate::intarith::{self, Factored};
use crate::primroots::{self, PrimRootSystem};
use crate::{Error, Result};

/// The pair (q, n) with q a prime power coprime to n.
#[derive(Debug, Clone)]
pub struct CosetSpec {
    q: u64,
    n: u64,
    q_factored: Factored,
    n_factored: Factored,
    p: u64,
    e: u32,
}

impl CosetSpec {
    pub fn new(q: u64, n: u64) -> Result<Self> {
        let q_factored = intarith::factorize(q)?;
        if q < 2 || !q_factored.is_prime_power() {
            return Err(Error::domain(format!("q = {q} is not a prime power")));
        }
        let n_factored = intarith::factorize(n)?;
        if intarith::gcd(q, n) != 1 {
            return Err(Error::domain(format!("gcd(q, n) = gcd({q}, {n}) != 1")));
        }
        let (p, e) = q_factored.factors()[0];
        Ok(CosetSpec {
            q,
            n,
            q_factored,
            n_factored,
            p,
            e,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q_factored(&self) -> &Factored {
        &self.q_factored
    }

    pub fn n_factored(&self) -> &Factored {
        &self.n_factored
    }

    /// Field characteristic p with q = p^e.
    pub fn char(&self) -> u64 {
        self.p
    }

    pub fn ext_degree(&self) -> u32 {
        self.e
    }

    /// Writes n = 2^e0 * n' with n' odd; returns (e0, n').
    pub fn two_part(&self) -> (u32, u64) {
        let e0 = self.n.trailing_zeros();
        (e0, self.n >> e0)
    }
}

/// One q-cyclotomic coset modulo n. Identified by representative and size;
/// the element list is materialized on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    n: u64,
    q: u64,
    representative: u64,
    leader: u64,
    size: u64,
}

impl Coset {
    /// Build the coset of `gamma` by walking the orbit under multiplication
    /// by q, recording leader and size.
    pub fn from_representative(n: u64, q: u64, gamma: u64) -> Self {
        let gamma = if n == 0 { gamma } else { gamma % n };
        let mut leader = gamma;
        let mut size = 1u64;
        let mut cur = intarith::mulmod(gamma, q % n.max(1), n.max(1));
        while cur != gamma {
            leader = leader.min(cur);
            cur = intarith::mulmod(cur, q % n, n);
            size += 1;
        }
        Coset {
            n,
            q,
            representative: gamma,
            leader,
            size,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn representative(&self) -> u64 {
        self.representative
    }

    pub fn leader(&self) -> u64 {
        self.leader
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Elements in orbit order starting from the representative.
    pub fn orbit(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.size as usize);
        let mut cur = self.representative;
        loop {
            out.push(cur);
            cur = intarith::mulmod(cur, self.q % self.n.max(1), self.n.max(1));
            if cur == self.representative {
                break;
            }
        }
        out
    }

    /// Elements sorted ascending.
    pub fn elements_sorted(&self) -> Vec<u64> {
        let mut v = self.orbit();
        v.sort_unstable();
        v
    }
}

/// Partition of Z/nZ under multiplication by an arbitrary unit; shared by
/// the oracle and by base-q^t factorizations.
pub fn orbit_partition(n: u64, multiplier: u64) -> Result<Vec<Coset>> {
    if n == 0 {
        return Err(Error::domain("orbit_partition: n must be positive"));
    }
    if intarith::gcd(multiplier % n, n) != 1 && n > 1 {
        return Err(Error::domain(format!(
            "orbit_partition: multiplier {multiplier} is not a unit modulo {n}"
        )));
    }
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start as usize] {
            continue;
        }
        let mut cur = start;
        let mut size = 0u64;
        loop {
            seen[cur as usize] = true;
            size += 1;
            cur = intarith::mulmod(cur, multiplier % n, n);
            if cur == start {
                break;
            }
        }
        out.push(Coset {
            n,
            q: multiplier,
            representative: start,
            leader: start,
            size,
        });
    }
    Ok(out)
}

/// Independent brute-force oracle: the full partition of Z/nZ into
/// q-cyclotomic cosets, by orbit scan, leaders ascending.
pub fn cosets_oracle(spec: &CosetSpec) -> Result<Vec<Coset>> {
    orbit_partition(spec.n, spec.q)
}

/// Index (y, x) of one coset representative in the odd-modulus transversal,
/// with the cached order data the closed forms need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApplicableTuple {
    /// Exponent vector y with 0 <= y_i <= e_i.
    pub y: Vec<u32>,
    /// Exponent vector x, bounded per the gcd-adjusted ranges.
    pub x: Vec<u64>,
    /// f_i = ord of q modulo p_i^(e_i - y_i).
    pub f: Vec<u64>,
    /// g_i = phi(p_i^(e_i - y_i)) / f_i.
    pub g: Vec<u64>,
    /// Coset size tau_y = lcm(f_1, ..., f_s).
    pub tau: u64,
    /// omega_y = lcm of the orders of q modulo rad(p_i^(e_i - y_i)).
    pub omega: u64,
    /// M_i = max(e_i - y_i - v_{p_i}(q^omega - 1), 0).
    pub m_caps: Vec<u32>,
}

/// Enumerate all applicable tuples for odd n in lexicographic (y, x) order.
///
/// The per-tuple data satisfies tau_y = omega_y * prod p_i^{M_i}; that
/// identity is asserted here since everything downstream leans on it.
pub fn applicable_tuples(spec: &CosetSpec) -> Result<Vec<ApplicableTuple>> {
    let n = spec.n;
    if n % 2 == 0 {
        return Err(Error::domain(format!(
            "applicable_tuples: n = {n} is even; use the even-modulus path"
        )));
    }
    let parts: Vec<(u64, u32)> = spec.n_factored.factors().to_vec();
    let s = parts.len();
    let q = spec.q;
    let mut out = Vec::new();
    let mut y = vec![0u32; s];
    loop {
        // Per-y data.
        let mut f = Vec::with_capacity(s);
        let mut g = Vec::with_capacity(s);
        for (i, &(p, e)) in parts.iter().enumerate() {
            let pd = p.pow(e - y[i]);
            let fi = intarith::mult_order(q % pd, pd)?;
            let phi = if e == y[i] { 1 } else { pd / p * (p - 1) };
            f.push(fi);
            g.push(phi / fi);
        }
        let mut tau = 1u64;
        for &fi in &f {
            tau = intarith::lcm(tau, fi)?;
        }
        let mut omega = 1u64;
        for (i, &(p, e)) in parts.iter().enumerate() {
            let m_i = if e - y[i] >= 1 { p } else { 1 };
            omega = intarith::lcm(omega, intarith::mult_order(q % m_i, m_i)?)?;
        }
        let mut m_caps = Vec::with_capacity(s);
        let mut tau_check = omega;
        for (i, &(p, e)) in parts.iter().enumerate() {
            let rem = e - y[i];
            let v = if rem == 0 {
                0
            } else {
                intarith::valuation_pow_minus_one(q, omega, p)?
            };
            let m = (rem as i64 - v as i64).max(0) as u32;
            m_caps.push(m);
            tau_check = tau_check
                .checked_mul(p.pow(m))
                .ok_or_else(|| Error::resource("applicable_tuples: size overflow"))?;
        }
        if tau_check != tau {
            return Err(Error::internal(format!(
                "size identity broke at y={y:?}: lcm gives {tau}, closed form gives {tau_check}"
            )));
        }

        // x ranges: cap_i = g_i * gcd(lcm(f_1..f_{i-1}), f_i).
        let mut caps = Vec::with_capacity(s);
        let mut prefix_lcm = 1u64;
        for i in 0..s {
            caps.push(g[i] * intarith::gcd(prefix_lcm, f[i]));
            prefix_lcm = intarith::lcm(prefix_lcm, f[i])?;
        }
        let mut x = vec![0u64; s];
        loop {
            out.push(ApplicableTuple {
                y: y.clone(),
                x: x.clone(),
                f: f.clone(),
                g: g.clone(),
                tau,
                omega,
                m_caps: m_caps.clone(),
            });
            // advance x odometer, last index fastest
            let mut i = s;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                x[i] += 1;
                if x[i] < caps[i] {
                    break;
                }
                x[i] = 0;
                if i == 0 {
                    i = s; // signal wrap
                    break;
                }
            }
            if i == s || s == 0 {
                break;
            }
        }
        // advance y odometer
        let mut i = s;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            y[i] += 1;
            if y[i] <= parts[i].1 {
                break;
            }
            y[i] = 0;
            if i == 0 {
                return Ok(out);
            }
        }
    }
}

/// One entry of the odd-modulus transversal.
#[derive(Debug, Clone)]
pub struct OddRep {
    pub tuple: ApplicableTuple,
    /// eta^(y,x) reduced into [0, n).
    pub rep: u64,
    /// Coset size tau_y.
    pub size: u64,
}

/// Thm-3 transversal for odd n >= 3 over an explicit primitive root system.
pub fn representatives_odd(spec: &CosetSpec, eta: &PrimRootSystem) -> Result<Vec<OddRep>> {
    let n = spec.n;
    if n % 2 == 0 {
        return Err(Error::domain("representatives_odd: n must be odd"));
    }
    if eta.modulus().value() != n {
        return Err(Error::domain(format!(
            "representatives_odd: eta modulus {} does not match n = {n}",
            eta.modulus().value()
        )));
    }
    build_odd_reps(spec, eta.eta())
}

/// Convenience entry that constructs the primitive root system internally
/// (and handles n = 1, which needs no system at all).
pub fn odd_transversal(spec: &CosetSpec) -> Result<Vec<OddRep>> {
    let n = spec.n;
    if n % 2 == 0 {
        return Err(Error::domain("odd_transversal: n must be odd"));
    }
    if n == 1 {
        return build_odd_reps(spec, &[]);
    }
    let eta = primroots::primitive_root_system(spec.n_factored())?;
    build_odd_reps(spec, eta.eta())
}

fn build_odd_reps(spec: &CosetSpec, eta: &[u64]) -> Result<Vec<OddRep>> {
    let n = spec.n;
    let parts: Vec<(u64, u32)> = spec.n_factored.factors().to_vec();
    let tuples = applicable_tuples(spec)?;
    let mut out = Vec::with_capacity(tuples.len());
    for tuple in tuples {
        let mut rep = 1 % n;
        for (i, &(p, _)) in parts.iter().enumerate() {
            rep = intarith::mulmod(rep, intarith::modpow(eta[i], tuple.x[i], n), n);
            rep = intarith::mulmod(rep, intarith::modpow(p, tuple.y[i] as u64, n), n);
        }
        let size = tuple.tau;
        out.push(OddRep { tuple, rep, size });
    }
    Ok(out)
}

/// Outcome of the Lemma-4 dichotomy for one coset along Z/2mZ : Z/mZ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitKind {
    /// Preimage is two cosets of equal size: c(gamma) and c(gamma + m).
    Splitting,
    /// Preimage is a single coset of doubled size.
    Stable,
}

/// Decide whether the coset of `gamma` modulo `m` (of size `tau`) splits
/// along the projection from Z/2mZ: splitting iff
/// v2(gamma) + v2(q^tau - 1) >= v2(m) + 1, with v2(0) treated as infinite.
pub fn split_test(m: u64, q: u64, gamma: u64, tau: u64) -> Result<SplitKind> {
    if q % 2 == 0 {
        return Err(Error::domain("split_test: q must be odd"));
    }
    if m == 0 || intarith::gcd(q % (2 * m), 2 * m) != 1 {
        return Err(Error::domain(format!(
            "split_test: need gcd(q, 2m) = 1, got q = {q}, m = {m}"
        )));
    }
    let gamma = gamma % m;
    if gamma == 0 {
        return Ok(SplitKind::Splitting);
    }
    let v_gamma = gamma.trailing_zeros();
    let v_q = intarith::valuation_pow_minus_one(q, tau, 2)?;
    let v_m = m.trailing_zeros();
    Ok(if v_gamma + v_q >= v_m + 1 {
        SplitKind::Splitting
    } else {
        SplitKind::Stable
    })
}

/// The inductive doubling computation: partitions of Z/(2^i n')Z for
/// i = 0 ..= e0, starting from the odd transversal sorted by leader.
#[derive(Debug, Clone)]
pub struct DoublingChain {
    /// levels[i] is the full coset partition modulo 2^i * n'.
    pub levels: Vec<Vec<Coset>>,
}

impl DoublingChain {
    pub fn final_level(&self) -> &[Coset] {
        self.levels.last().expect("chain has at least one level")
    }
}

/// Compute the partition of Z/nZ by repeated application of the splitting
/// dichotomy, keeping every intermediate level for tracing.
pub fn doubling_chain(spec: &CosetSpec) -> Result<DoublingChain> {
    let (e0, nprime) = spec.two_part();
    if e0 > 0 && spec.q % 2 == 0 {
        return Err(Error::domain("doubling_chain: q must be odd when n is even"));
    }
    let base_spec = CosetSpec::new(spec.q, nprime)?;
    let mut level: Vec<Coset> = odd_transversal(&base_spec)?
        .iter()
        .map(|r| Coset::from_representative(nprime, spec.q, r.rep))
        .collect();
    level.sort_by_key(|c| c.leader());
    let mut levels = vec![level];
    for i in 0..e0 {
        let m = nprime << i;
        let mut next = Vec::new();
        for c in levels.last().unwrap() {
            let gamma = c.representative();
            match split_test(m, spec.q, gamma, c.size())? {
                SplitKind::Splitting => {
                    let a = Coset::from_representative(2 * m, spec.q, gamma);
                    let b = Coset::from_representative(2 * m, spec.q, gamma + m);
                    if a.size() != c.size() || b.size() != c.size() {
                        return Err(Error::internal(format!(
                            "split of c_{m}({gamma}) changed sizes"
                        )));
                    }
                    next.push(a);
                    next.push(b);
                }
                SplitKind::Stable => {
                    let a = Coset::from_representative(2 * m, spec.q, gamma);
                    if a.size() != 2 * c.size() {
                        return Err(Error::internal(format!(
                            "stable coset c_{m}({gamma}) did not double"
                        )));
                    }
                    next.push(a);
                }
            }
        }
        levels.push(next);
    }
    Ok(DoublingChain { levels })
}

/// Truncation of the 2-adic series whose partial sums shift `gamma` into
/// ever higher powers of two: bit i is the i-th digit of -gamma/n' in Z_2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoAdicSeries {
    pub gamma: i64,
    pub base: u64,
    pub bits: Vec<u8>,
}

impl TwoAdicSeries {
    /// The partial sum of bits 0..=i (or 0 when i is negative).
    pub fn partial(&self, upto: i64) -> u64 {
        if upto < 0 {
            return 0;
        }
        self.bits
            .iter()
            .take(upto as usize + 1)
            .enumerate()
            .map(|(k, &b)| (b as u64) << k)
            .sum()
    }
}

/// First `len` bits of the cyclotomic 2-adic integer of `gamma` over the odd
/// base `nprime`: the unique bits with 2^(i+1) dividing
/// gamma + nprime * (partial sum through bit i).
pub fn two_adic_series(gamma: i64, nprime: u64, len: u32) -> Result<TwoAdicSeries> {
    if nprime % 2 == 0 || nprime == 0 {
        return Err(Error::domain("two_adic_series: base must be odd"));
    }
    if len == 0 || len > 62 {
        return Err(Error::resource(format!(
            "two_adic_series: depth {len} out of range 1..=62"
        )));
    }
    let modulus = 1u64 << len;
    let neg_gamma = (-(gamma as i128)).rem_euclid(modulus as i128) as u64;
    let x = intarith::mulmod(neg_gamma, intarith::modinv(nprime % modulus, modulus)?, modulus);
    let bits = (0..len).map(|i| ((x >> i) & 1) as u8).collect();
    Ok(TwoAdicSeries {
        gamma,
        base: nprime,
        bits,
    })
}

/// The d-th generator U_d(gamma): agrees with the 2-adic series below bit d
/// and is flipped at bit d. Returned as an integer of at most d+1 bits.
pub fn generator_u(gamma: i64, nprime: u64, d: u32) -> Result<u64> {
    let series = two_adic_series(gamma, nprime, d + 1)?;
    let mut u = series.partial(d as i64 - 1);
    if series.bits[d as usize] == 0 {
        u |= 1u64 << d;
    }
    Ok(u)
}

/// One component of a chain in the 2-adic cyclotomic system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComponent {
    pub modulus: u64,
    pub rep: u64,
    /// Closed-form size (verified against orbits in the test suites).
    pub size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemKind {
    /// The unique chain that splits at every degree.
    Principal,
    /// A stable chain seeded by the generator U_d and offset vector t.
    Stable {
        d: u32,
        t: Vec<u8>,
        quasi_stable_degree: u32,
        stable_degree: u32,
    },
}

/// A chain of compatible cosets modulo 2^i * n', i = 0 ..= depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemElement {
    pub kind: SystemKind,
    pub components: Vec<ChainComponent>,
}

/// Enumerate the elements of the 2-adic cyclotomic system over the coset of
/// `gamma` modulo `nprime`, truncated to `depth` doubling steps: the
/// principal chain plus, for every d with quasi-stable degree d+1 <= depth,
/// the full family of stable chains.
pub fn system_elements(gamma: u64, nprime: u64, q: u64, depth: u32) -> Result<Vec<SystemElement>> {
    if q % 2 == 0 {
        return Err(Error::domain("system_elements: q must be odd"));
    }
    if nprime % 2 == 0 || nprime == 0 {
        return Err(Error::domain("system_elements: base modulus must be odd"));
    }
    if intarith::gcd(q, nprime) != 1 {
        return Err(Error::domain("system_elements: gcd(q, n') must be 1"));
    }
    if depth == 0 || depth > 32 || (nprime as u128) << depth >= (1u128 << 63) {
        return Err(Error::resource(format!(
            "system_elements: depth {depth} out of range for base {nprime}"
        )));
    }
    let gamma = gamma % nprime;
    let tau = Coset::from_representative(nprime, q, gamma).size();
    let plus = q % 4 == 1 || tau % 2 == 0;
    let v = if plus {
        intarith::valuation_pow_minus_one(q, tau, 2)?
    } else {
        intarith::valuation(2, q + 1)?
    };
    if v > 20 {
        return Err(Error::resource(format!(
            "system_elements: 2^{} chains per degree is beyond desk scale",
            v - 1
        )));
    }
    let series = two_adic_series(gamma as i64, nprime, depth.max(1))?;

    let component = |shift_bits: u64, i: u32| -> ChainComponent {
        let modulus = nprime << i;
        let masked = if i == 0 { 0 } else { shift_bits & ((1u64 << i) - 1) };
        let rep = ((gamma as u128 + nprime as u128 * masked as u128) % modulus as u128) as u64;
        ChainComponent {
            modulus,
            rep,
            size: 0,
        }
    };

    let mut out = Vec::new();

    // Principal chain: sizes are constant.
    let phi_full = series.partial(depth as i64 - 1);
    let mut comps: Vec<ChainComponent> = (0..=depth).map(|i| component(phi_full, i)).collect();
    for c in &mut comps {
        c.size = tau;
    }
    out.push(SystemElement {
        kind: SystemKind::Principal,
        components: comps,
    });

    for d in 0..depth {
        let u_d = generator_u(gamma as i64, nprime, d)?;
        let t_len = v - 1;
        for t_int in 0..(1u64 << t_len) {
            let t: Vec<u8> = (1..=t_len)
                .map(|j| ((t_int >> (t_len - j)) & 1) as u8)
                .collect();
            let mut shift = u_d;
            for (j, &tj) in t.iter().enumerate() {
                let pos = if plus {
                    d + 1 + j as u32
                } else {
                    d + 2 + j as u32
                };
                shift |= (tj as u64) << pos;
            }
            let stable_degree = if plus { d + v } else { d + v + 1 };
            let mut comps: Vec<ChainComponent> =
                (0..=depth).map(|i| component(shift, i)).collect();
            for (i, c) in comps.iter_mut().enumerate() {
                let i = i as u32;
                c.size = if plus {
                    if i <= d + v {
                        tau
                    } else {
                        tau << (i - d - v)
                    }
                } else if i <= d + 1 {
                    tau
                } else if i <= d + v + 1 {
                    2 * tau
                } else {
                    tau << (i - d - v)
                };
            }
            out.push(SystemElement {
                kind: SystemKind::Stable {
                    d,
                    t,
                    quasi_stable_degree: d + 1,
                    stable_degree,
                },
                components: comps,
            });
        }
    }
    Ok(out)
}

/// One entry of the even-modulus transversal (Thm-7 style).
#[derive(Debug, Clone)]
pub struct EvenRep {
    pub tuple: ApplicableTuple,
    /// eta^(y,x) reduced into [0, n').
    pub odd_rep: u64,
    pub d: u32,
    pub t: Vec<u8>,
    /// True when q^tau_y = 1 mod 4 (the Sigma+ stratum).
    pub sign_plus: bool,
    /// v+(y) or v-(y) for the stratum.
    pub v: u32,
    /// mu(y,x)_{d,t} reduced into [0, n).
    pub rep: u64,
    /// Closed-form coset size.
    pub size: u64,
}

/// Transversal for even n = 2^e0 * n' over an explicit primitive root
/// system modulo n'. Strata ordered lexicographically in (y, x), then d,
/// then the offset tuple t.
pub fn representatives_even(spec: &CosetSpec, eta: &PrimRootSystem) -> Result<Vec<EvenRep>> {
    let (_, nprime) = spec.two_part();
    if eta.modulus().value() != nprime {
        return Err(Error::domain(format!(
            "representatives_even: eta modulus {} does not match n' = {nprime}",
            eta.modulus().value()
        )));
    }
    build_even_reps(spec, eta.eta())
}

/// Convenience entry that constructs the primitive root system internally.
pub fn even_transversal(spec: &CosetSpec) -> Result<Vec<EvenRep>> {
    let (_, nprime) = spec.two_part();
    if nprime == 1 {
        return build_even_reps(spec, &[]);
    }
    let eta = primroots::primitive_root_system(&intarith::factorize(nprime)?)?;
    build_even_reps(spec, eta.eta())
}

fn build_even_reps(spec: &CosetSpec, eta: &[u64]) -> Result<Vec<EvenRep>> {
    let n = spec.n;
    let q = spec.q;
    let (e0, nprime) = spec.two_part();
    if e0 == 0 {
        return Err(Error::domain(
            "representatives_even: n is odd; use representatives_odd",
        ));
    }
    if q % 2 == 0 {
        return Err(Error::domain("representatives_even: q must be odd"));
    }
    let base_spec = CosetSpec::new(q, nprime)?;
    let odd = build_odd_reps(&base_spec, eta)?;
    let mut out = Vec::new();
    for odd_rep in odd {
        let tau = odd_rep.size;
        let plus = q % 4 == 1 || tau % 2 == 0;
        let v = if plus {
            intarith::valuation_pow_minus_one(q, tau, 2)?
        } else {
            intarith::valuation(2, q + 1)?
        };
        let gamma = odd_rep.rep;
        for d in 0..=e0 {
            let u_d = generator_u(gamma as i64, nprime, d)?;
            let s_len = {
                let margin = if plus {
                    e0 as i64 - d as i64 - 1
                } else {
                    e0 as i64 - d as i64 - 2
                };
                margin.min(v as i64 - 1).max(0) as u32
            };
            for t_int in 0..(1u64 << s_len) {
                let t: Vec<u8> = (1..=s_len)
                    .map(|j| ((t_int >> (s_len - j)) & 1) as u8)
                    .collect();
                let mut shift = u_d;
                for (j, &tj) in t.iter().enumerate() {
                    let pos = if plus {
                        d + 1 + j as u32
                    } else {
                        d + 2 + j as u32
                    };
                    shift |= (tj as u64) << pos;
                }
                let rep = ((gamma as u128 + nprime as u128 * shift as u128) % n as u128) as u64;
                let size = if plus {
                    let extra = (e0 as i64 - d as i64 - v as i64).max(0) as u32;
                    tau << extra
                } else if d + 2 <= e0 {
                    let extra = (e0 as i64 - d as i64 - v as i64).max(1) as u32;
                    tau << extra
                } else {
                    tau
                };
                out.push(EvenRep {
                    tuple: odd_rep.tuple.clone(),
                    odd_rep: gamma,
                    d,
                    t,
                    sign_plus: plus,
                    v,
                    rep,
                    size,
                });
            }
        }
    }
    Ok(out)
}

/// A unified transversal entry for any modulus.
#[derive(Debug, Clone)]
pub enum CosetRep {
    Odd(OddRep),
    Even(EvenRep),
}

impl CosetRep {
    pub fn rep(&self) -> u64 {
        match self {
            CosetRep::Odd(r) => r.rep,
            CosetRep::Even(r) => r.rep,
        }
    }

    pub fn size(&self) -> u64 {
        match self {
            CosetRep::Odd(r) => r.size,
            CosetRep::Even(r) => r.size,
        }
    }

    pub fn tuple(&self) -> &ApplicableTuple {
        match self {
            CosetRep::Odd(r) => &r.tuple,
            CosetRep::Even(r) => &r.tuple,
        }
    }
}

/// The closed-form transversal for any modulus coprime to q.
pub fn transversal(spec: &CosetSpec) -> Result<Vec<CosetRep>> {
    if spec.n % 2 == 1 {
        Ok(odd_transversal(spec)?.into_iter().map(CosetRep::Odd).collect())
    } else {
        Ok(even_transversal(spec)?.into_iter().map(CosetRep::Even).collect())
    }
}

/// Parameters of the coarsest equal-difference structure of a coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqualDifferenceParams {
    /// n_gamma = n / gcd(gamma, n).
    pub n_gamma: u64,
    /// Degree of the smallest extension splitting this coset's factor into
    /// binomials.
    pub omega: u64,
    /// True when the coset itself is an arithmetic progression.
    pub is_equal_difference: bool,
}

/// Compute (n_gamma, omega_gamma, equal-difference flag) for a coset.
pub fn equal_difference_params(coset: &Coset) -> Result<EqualDifferenceParams> {
    let n = coset.modulus();
    let q = coset.q();
    let gamma = coset.representative();
    let n_gamma = n / intarith::gcd(gamma, n);
    let rad = intarith::radical(&intarith::factorize(n_gamma)?);
    let ord = intarith::mult_order(q % rad, rad)?;
    // q^ord mod 4 via parity: only odd q can hit 3 mod 4.
    let q_ord_is_3_mod4 = q % 4 == 3 && ord % 2 == 1;
    let omega = if q_ord_is_3_mod4 && n_gamma % 8 == 0 {
        2 * ord
    } else {
        ord
    };
    let is_equal_difference = (q - 1) % rad == 0 && (n_gamma % 8 != 0 || q % 4 == 1);
    Ok(EqualDifferenceParams {
        n_gamma,
        omega,
        is_equal_difference,
    })
}

/// Canonical form of a partition for set-equality checks: each block sorted,
/// blocks ordered by smallest element.
pub fn canonical_partition(cosets: &[Coset]) -> Vec<Vec<u64>> {
    let mut blocks: Vec<Vec<u64>> = cosets.iter().map(|c| c.elements_sorted()).collect();
    blocks.sort();
    blocks
}
