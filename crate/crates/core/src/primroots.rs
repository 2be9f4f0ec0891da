//! Primitive roots modulo odd prime powers and primitive root systems.
//!
//! A primitive root system modulo p_1^e_1 ... p_s^e_s is a tuple
//! (eta_1, ..., eta_s) where eta_i generates the unit group modulo p_i^d for
//! every d >= 1 and eta_i = 1 modulo every other p_j^e_j. It is the seed for
//! all closed-form coset representatives.

use crate::intarith::{self, Factored};
use crate::{Error, Result};

/// A primitive root system modulo an odd integer.
#[derive(Debug, Clone)]
pub struct PrimRootSystem {
    modulus: Factored,
    eta: Vec<u64>,
}

impl PrimRootSystem {
    pub fn modulus(&self) -> &Factored {
        &self.modulus
    }

    /// One entry per prime of the modulus, reduced modulo the modulus.
    pub fn eta(&self) -> &[u64] {
        &self.eta
    }
}

/// Smallest primitive root modulo the odd prime `ell`, bumped by `+ell`
/// when its (ell-1)-th power is 1 modulo ell^2, so that the result is a
/// primitive root modulo ell^d for every d >= 1.
pub fn primitive_root_all_powers(ell: u64) -> Result<u64> {
    if ell % 2 == 0 || !intarith::is_prime(ell) {
        return Err(Error::domain(format!(
            "primitive_root_all_powers: {ell} is not an odd prime"
        )));
    }
    if ell >= 1 << 31 {
        return Err(Error::resource(format!(
            "primitive_root_all_powers: {ell}^2 exceeds the supported range"
        )));
    }
    let group = intarith::factorize(ell - 1)?;
    let mu = (2..ell)
        .find(|&c| {
            group
                .primes()
                .all(|r| intarith::modpow(c, (ell - 1) / r, ell) != 1)
        })
        .ok_or_else(|| Error::internal(format!("no primitive root modulo {ell}")))?;
    if intarith::modpow(mu, ell - 1, ell * ell) == 1 {
        Ok(mu + ell)
    } else {
        Ok(mu)
    }
}

/// Construct the primitive root system modulo an odd `modulus` >= 3 by
/// eta_i = mu_i + (1 - mu_i) * p_i^(product of the other phi(p_j^e_j)),
/// reduced modulo the modulus. Deterministic: smallest mu_i per prime.
pub fn primitive_root_system(modulus: &Factored) -> Result<PrimRootSystem> {
    let n = modulus.value();
    if n % 2 == 0 || n < 3 {
        return Err(Error::domain(format!(
            "primitive_root_system: modulus must be odd and >= 3, got {n}"
        )));
    }
    let parts: Vec<(u64, u32)> = modulus.factors().to_vec();
    let mut eta = Vec::with_capacity(parts.len());
    if parts.len() == 1 {
        // Single prime power: the system is just mu itself. The shifted
        // construction below needs the exponent on p_i to be at least 2,
        // which only holds once a second prime contributes a phi factor.
        eta.push(primitive_root_all_powers(parts[0].0)? % n);
    } else {
        for (i, &(p, _)) in parts.iter().enumerate() {
            let mu = primitive_root_all_powers(p)?;
            let mut exp = 1u64;
            for (j, &(q, f)) in parts.iter().enumerate() {
                if j != i {
                    exp = exp.checked_mul(q.pow(f - 1) * (q - 1)).ok_or_else(|| {
                        Error::resource("primitive_root_system: exponent overflow")
                    })?;
                }
            }
            let shift = intarith::modpow(p, exp, n);
            // eta = mu + (1 - mu) * shift  (mod n), computed without signed math
            let one_minus_mu = (1 + n - (mu % n)) % n;
            let e = (mu % n + intarith::mulmod(one_minus_mu, shift, n)) % n;
            eta.push(e);
        }
    }
    let sys = PrimRootSystem {
        modulus: modulus.clone(),
        eta,
    };
    verify_system(&sys)?;
    Ok(sys)
}

/// Check both defining properties by direct order computation.
fn verify_system(sys: &PrimRootSystem) -> Result<()> {
    let parts = sys.modulus.factors();
    for (i, &(p, e)) in parts.iter().enumerate() {
        let eta = sys.eta[i];
        let mut pd = 1u64;
        for _ in 0..e {
            pd *= p;
            let phi = pd / p * (p - 1);
            if intarith::mult_order(eta % pd, pd)? != phi {
                return Err(Error::internal(format!(
                    "eta_{i} = {eta} does not generate the units modulo {pd}"
                )));
            }
        }
        for (j, &(q, f)) in parts.iter().enumerate() {
            if j != i && sys.eta[i] % q.pow(f) != 1 {
                return Err(Error::internal(format!(
                    "eta_{i} = {eta} is not 1 modulo {}",
                    q.pow(f)
                )));
            }
        }
    }
    Ok(())
}
