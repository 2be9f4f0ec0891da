//! Exact integer number theory shared by all modules: factorization,
//! valuations, multiplicative orders, totients, CRT.
//!
//! All inputs are capped below 2^63; factorization is deterministic
//! (trial division, then Miller-Rabin plus Brent's rho).

use crate::{Error, Result};

/// Upper bound (exclusive) for all integer inputs.
pub const MAX_INPUT: u64 = 1 << 63;

const TRIAL_BOUND: u64 = 1 << 16;

/// A positive integer together with its prime factorization.
///
/// Primes are strictly increasing and the product of `prime^exponent`
/// reconstructs the value. `Factored::new(1)` has an empty factor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factored {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// The list of (prime, exponent) pairs, primes strictly increasing.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// All divisors of the value, sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let prev = divs.clone();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                divs.extend(prev.iter().map(|d| d * pk));
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Factor `n` into primes. Errors when `n` is zero or at least 2^63.
pub fn factorize(n: u64) -> Result<Factored> {
    if n == 0 || n >= MAX_INPUT {
        return Err(Error::domain(format!(
            "factorize: n must satisfy 1 <= n < 2^63, got {n}"
        )));
    }
    let mut rest = n;
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d < TRIAL_BOUND && d * d <= rest {
        while rest % d == 0 {
            primes.push(d);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        if rest < TRIAL_BOUND * TRIAL_BOUND || is_prime(rest) {
            primes.push(rest);
        } else {
            factor_large(rest, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factored { value: n, factors })
}

fn factor_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    factor_large(d, out);
    factor_large(n / d, out);
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = modpow(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle variant of Pollard's rho with a deterministic offset sweep.
fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1..64u64 {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let f = |v: u64| (mulmod(v, v, n) + c) % n;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    // 63 offsets never all fail for composite n below 2^63 in practice;
    // fall back to slow trial division to stay total.
    let mut d = TRIAL_BOUND | 1;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple; errors if it does not fit below 2^63.
pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    let v = (a / gcd(a, b)) as u128 * b as u128;
    if v >= MAX_INPUT as u128 {
        return Err(Error::resource(format!("lcm({a}, {b}) exceeds 2^63")));
    }
    Ok(v as u64)
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn modpow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse of `a` modulo `m` for coprime inputs.
pub fn modinv(a: u64, m: u64) -> Result<u64> {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return Err(Error::domain(format!("{a} is not a unit modulo {m}")));
    }
    Ok(x.rem_euclid(m as i128) as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// The `ell`-adic valuation of `n`: the largest k with ell^k dividing n.
pub fn valuation(ell: u64, n: u64) -> Result<u32> {
    if !is_prime(ell) {
        return Err(Error::domain(format!("valuation: {ell} is not prime")));
    }
    if n == 0 {
        return Err(Error::domain("valuation: undefined at n = 0"));
    }
    let mut v = 0u32;
    let mut n = n;
    while n % ell == 0 {
        n /= ell;
        v += 1;
    }
    Ok(v)
}

/// Multiplicative order of `m` modulo `n`.
///
/// Computed by descending from the group order phi(n) over its prime
/// divisors, never by naive iteration.
pub fn mult_order(m: u64, n: u64) -> Result<u64> {
    if n == 0 || n >= MAX_INPUT {
        return Err(Error::domain(format!("mult_order: bad modulus {n}")));
    }
    if n == 1 {
        return Ok(1);
    }
    let m = m % n;
    if gcd(m, n) != 1 {
        return Err(Error::domain(format!(
            "mult_order: {m} is not a unit modulo {n}"
        )));
    }
    let mut t = euler_phi(&factorize(n)?);
    for p in factorize(t)?.primes().collect::<Vec<_>>() {
        while t % p == 0 && modpow(m, t / p, n) == 1 {
            t /= p;
        }
    }
    Ok(t)
}

/// v_ell(m^d - 1) by the lift-the-exponent lemmas, without computing m^d.
///
/// For odd `ell` requires ell | m - 1; for ell = 2 requires m odd. `m` must
/// be odd and at least 3.
pub fn lte_valuation_minus(m: u64, ell: u64, d: u64) -> Result<u32> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::domain(format!(
            "lte_valuation_minus: m must be odd and >= 3, got {m}"
        )));
    }
    if d == 0 {
        return Err(Error::domain("lte_valuation_minus: d must be positive"));
    }
    if !is_prime(ell) {
        return Err(Error::domain(format!(
            "lte_valuation_minus: {ell} is not prime"
        )));
    }
    if ell == 2 {
        // m odd: split on m mod 4 and the parity of d.
        if m % 4 == 1 {
            Ok(valuation(2, m - 1)? + valuation(2, d)?)
        } else if d % 2 == 1 {
            Ok(1)
        } else {
            Ok(valuation(2, m + 1)? + valuation(2, d)?)
        }
    } else {
        if (m - 1) % ell != 0 {
            return Err(Error::domain(format!(
                "lte_valuation_minus: {ell} does not divide m - 1 = {}",
                m - 1
            )));
        }
        Ok(valuation(ell, m - 1)? + valuation(ell, d)?)
    }
}

/// v_ell(q^t - 1) for any unit q mod ell, reduced to the lift-the-exponent
/// range via the order of q modulo ell. Returns 0 when ord_ell(q) does not
/// divide t. Never forms q^t.
pub fn valuation_pow_minus_one(q: u64, t: u64, ell: u64) -> Result<u32> {
    if t == 0 {
        return Err(Error::domain("valuation_pow_minus_one: t must be positive"));
    }
    if !is_prime(ell) {
        return Err(Error::domain(format!(
            "valuation_pow_minus_one: {ell} is not prime"
        )));
    }
    if q % ell == 0 {
        return Err(Error::domain(format!(
            "valuation_pow_minus_one: {q} not a unit mod {ell}"
        )));
    }
    if ell == 2 {
        // q odd; Lemma-2 style case split on q mod 4.
        return if q % 4 == 1 {
            Ok(valuation(2, q - 1)? + valuation(2, t)?)
        } else if t % 2 == 1 {
            Ok(1)
        } else {
            Ok(valuation(2, q + 1)? + valuation(2, t)?)
        };
    }
    let ord = mult_order(q, ell)?;
    if t % ord != 0 {
        return Ok(0);
    }
    // v_ell(q^ord - 1) by a modular ladder: test q^ord mod ell^k for growing k.
    let mut v0 = 1u32;
    let mut pk = ell * ell;
    loop {
        if modpow(q % pk, ord, pk) != 1 {
            break;
        }
        v0 += 1;
        match pk.checked_mul(ell) {
            Some(next) if next < MAX_INPUT => pk = next,
            _ => {
                return Err(Error::resource(format!(
                    "valuation_pow_minus_one: v_{ell}(q^ord - 1) exceeds the u64 ladder"
                )))
            }
        }
    }
    Ok(v0 + valuation(ell, t / ord)?)
}

/// Solution of a simultaneous congruence system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrtSolution {
    pub residue: u64,
    pub modulus: u64,
}

/// Solve a system of congruences (residue, modulus); moduli need not be
/// coprime. `Ok(None)` reports an inconsistent system, which is a
/// legitimate outcome, not an error.
pub fn crt_solve(congruences: &[(u64, u64)]) -> Result<Option<CrtSolution>> {
    let mut r = 0u64;
    let mut m = 1u64;
    for &(r2, m2) in congruences {
        if m2 == 0 || m2 >= MAX_INPUT {
            return Err(Error::domain(format!("crt_solve: bad modulus {m2}")));
        }
        let r2 = r2 % m2;
        let g = gcd(m, m2);
        if (r2 as i128 - r as i128).rem_euclid(g as i128) != 0 {
            return Ok(None);
        }
        let l = lcm(m, m2)?;
        // r + m*k == r2 (mod m2)  =>  k == (r2 - r)/g * inv(m/g) (mod m2/g)
        let diff = ((r2 as i128 - r as i128) / g as i128).rem_euclid((m2 / g) as i128) as u64;
        let k = mulmod(diff, modinv((m / g) % (m2 / g).max(1), (m2 / g).max(1))?, (m2 / g).max(1));
        r = ((r as u128 + m as u128 * k as u128) % l as u128) as u64;
        m = l;
    }
    Ok(Some(CrtSolution { residue: r, modulus: m }))
}

/// Euler's totient from a factorization.
pub fn euler_phi(f: &Factored) -> u64 {
    let mut phi = 1u64;
    for &(p, e) in f.factors() {
        phi *= p.pow(e - 1) * (p - 1);
    }
    phi
}

/// Product of the distinct primes dividing the value.
pub fn radical(f: &Factored) -> u64 {
    f.primes().product::<u64>().max(1)
}

/// Moebius function: 0 on non-squarefree values, else (-1)^(number of primes).
pub fn moebius(f: &Factored) -> i8 {
    if f.factors().iter().any(|&(_, e)| e > 1) {
        0
    } else if f.factors().len() % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    /// Oracle: v_ell(m^d - 1) with exact big-integer powers.
    fn lte_oracle(m: u64, ell: u64, d: u64) -> u32 {
        let mut x = BigUint::from(m).pow(d as u32) - BigUint::from(1u32);
        let ell = BigUint::from(ell);
        let mut v = 0u32;
        while (&x % &ell) == BigUint::from(0u32) {
            x /= &ell;
            v += 1;
        }
        v
    }

    /// Oracle: multiplicative order by repeated multiplication.
    fn order_oracle(m: u64, n: u64) -> u64 {
        if n == 1 {
            return 1;
        }
        let mut t = 1u64;
        let mut acc = m % n;
        while acc != 1 {
            acc = mulmod(acc, m, n);
            t += 1;
        }
        t
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(40).unwrap().factors(), &[(2, 3), (5, 1)]);
        assert_eq!(factorize(1).unwrap().factors(), &[]);
        assert_eq!(factorize(8).unwrap().factors(), &[(2, 3)]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorize_reconstruction_small() {
        for n in 1..=10_000u64 {
            let f = factorize(n).unwrap();
            let back: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            for w in f.factors().windows(2) {
                assert!(w[0].0 < w[1].0);
            }
            for &(p, e) in f.factors() {
                assert!(is_prime(p), "{p} not prime in factorization of {n}");
                assert!(e >= 1);
            }
        }
    }

    #[test]
    fn factorize_large_semiprime() {
        // 64-bit scale: product of two distinct large primes.
        let p = 4_294_967_291u64; // 2^32 - 5
        let q = 2_147_483_647u64; // 2^31 - 1
        let f = factorize(p * q).unwrap();
        assert_eq!(f.factors(), &[(q, 1), (p, 1)]);
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(2, 8).unwrap(), 3);
        assert_eq!(valuation(2, 3 * 3 - 1).unwrap(), 3);
        assert_eq!(valuation(5, 40).unwrap(), 1);
        assert!(valuation(2, 0).is_err());
        assert!(valuation(4, 12).is_err());
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(3, 5).unwrap(), 4);
        assert_eq!(mult_order(17, 1).unwrap(), 1);
        assert_eq!(mult_order(2, 7).unwrap(), order_oracle(2, 7));
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert!(mult_order(2, 4).is_err());
    }

    #[test]
    fn mult_order_matches_oracle() {
        for n in 1..=2000u64 {
            for m in [2u64, 3, 5, 7, 10, 13] {
                if gcd(m % n.max(2), n) != 1 {
                    continue;
                }
                let t = mult_order(m, n).unwrap();
                assert_eq!(t, order_oracle(m, n), "order of {m} mod {n}");
                assert_eq!(modpow(m, t, n), 1 % n);
            }
        }
    }

    #[test]
    fn lte_examples() {
        assert_eq!(lte_oracle(3, 2, 4), 4);
        assert_eq!(lte_valuation_minus(3, 2, 4).unwrap(), 4);
        assert_eq!(lte_valuation_minus(5, 2, 1).unwrap(), 2);
        assert_eq!(lte_oracle(7, 2, 2), 4);
        assert_eq!(lte_valuation_minus(7, 2, 2).unwrap(), 4);
        assert!(lte_valuation_minus(4, 2, 1).is_err()); // even m rejected
        assert!(lte_valuation_minus(7, 5, 2).is_err()); // 5 does not divide m - 1 = 6
    }

    #[test]
    fn lte_matches_bigint_oracle() {
        for m in (3..=49u64).step_by(2) {
            for ell in [2u64, 3, 5, 7, 11, 13] {
                if ell != 2 && (m - 1) % ell != 0 {
                    continue;
                }
                for d in 1..=64u64 {
                    assert_eq!(
                        lte_valuation_minus(m, ell, d).unwrap(),
                        lte_oracle(m, ell, d),
                        "m={m} ell={ell} d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn valuation_pow_minus_one_matches_oracle() {
        for q in 2..=20u64 {
            for ell in [2u64, 3, 5, 7, 11, 13] {
                if q % ell == 0 {
                    continue;
                }
                for t in 1..=40u64 {
                    assert_eq!(
                        valuation_pow_minus_one(q, t, ell).unwrap(),
                        lte_oracle(q, ell, t),
                        "q={q} t={t} ell={ell}"
                    );
                }
            }
        }
    }

    #[test]
    fn crt_examples() {
        // Oracle for the first: scan 0..14.
        let want = (0..15u64).find(|x| x % 3 == 1 && x % 5 == 2).unwrap();
        assert_eq!(want, 7);
        let s = crt_solve(&[(1, 3), (2, 5)]).unwrap().unwrap();
        assert_eq!((s.residue, s.modulus), (7, 15));

        let s = crt_solve(&[(0, 1)]).unwrap().unwrap();
        assert_eq!((s.residue, s.modulus), (0, 1));

        assert_eq!(crt_solve(&[(1, 2), (0, 2)]).unwrap(), None);

        // Non-coprime consistent system.
        let s = crt_solve(&[(2, 4), (4, 6)]).unwrap().unwrap();
        assert_eq!(s.modulus, 12);
        assert_eq!(s.residue % 4, 2);
        assert_eq!(s.residue % 6, 4);
    }

    #[test]
    fn moebius_divisor_sum() {
        for n in 1..=1000u64 {
            let sum: i64 = factorize(n)
                .unwrap()
                .divisors()
                .into_iter()
                .map(|d| moebius(&factorize(d).unwrap()) as i64)
                .sum();
            assert_eq!(sum, if n == 1 { 1 } else { 0 }, "n={n}");
        }
    }

    #[test]
    fn phi_and_radical() {
        let f = factorize(40).unwrap();
        assert_eq!(euler_phi(&f), 16);
        assert_eq!(radical(&f), 10);
        assert_eq!(radical(&factorize(1).unwrap()), 1);
    }

    proptest! {
        #[test]
        fn prop_factorize_reconstructs(n in 1u64..10_000_000) {
            let f = factorize(n).unwrap();
            let back: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
            prop_assert_eq!(back, n);
        }

        #[test]
        fn prop_crt_solution_satisfies(r1 in 0u64..100, m1 in 1u64..100, r2 in 0u64..100, m2 in 1u64..100) {
            if let Some(s) = crt_solve(&[(r1, m1), (r2, m2)]).unwrap() {
                prop_assert_eq!(s.residue % m1, r1 % m1);
                prop_assert_eq!(s.residue % m2, r2 % m2);
                prop_assert_eq!(s.modulus, lcm(m1, m2).unwrap());
            } else {
                // inconsistent: no x below the lcm satisfies both
                let l = lcm(m1, m2).unwrap();
                prop_assert!((0..l).all(|x| x % m1 != r1 % m1 || x % m2 != r2 % m2));
            }
        }
    }
}
