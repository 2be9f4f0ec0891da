//! Canonical embeddings between field contexts sharing a prime field.
//!
//! The embedding of F_{p^a} into F_{p^b} (a | b) maps the base defining
//! root to the smallest root (canonical element order) of the base defining
//! polynomial inside the big field. Locating that root goes through the
//! subfield: a Frobenius-kernel basis gives a generator theta of the
//! subfield, a root of theta's minimal polynomial is pulled back into the
//! abstract base field, and the resulting isomorphism transports the base
//! root forward. Projection is a linear solve against the root powers.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigUint;

use super::{poly::GFPoly, FieldCtx, GFElement};
use crate::{Error, Result};

/// An embedding base -> big together with its projection data.
pub struct Extension {
    base: Arc<FieldCtx>,
    big: Arc<FieldCtx>,
    /// Image of the base defining root; the powers 0..deg(base) span the
    /// subfield.
    root_powers: Vec<Vec<u64>>,
}

impl std::fmt::Debug for Extension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Extension(F_{}^{} -> F_{}^{})",
            self.base.p(),
            self.base.degree(),
            self.big.p(),
            self.big.degree()
        )
    }
}

static EXT_CACHE: LazyLock<Mutex<HashMap<(u64, u32, u32), Arc<Extension>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The canonical extension for the pair of degrees. Cached; deterministic.
pub fn extension(base: &Arc<FieldCtx>, big: &Arc<FieldCtx>) -> Result<Arc<Extension>> {
    let p = base.p();
    if p != big.p() {
        return Err(Error::domain("extension: mismatched characteristics"));
    }
    if big.degree() % base.degree() != 0 {
        return Err(Error::domain(format!(
            "extension: {} does not divide {}",
            base.degree(),
            big.degree()
        )));
    }
    let key = (p, base.degree(), big.degree());
    if let Some(e) = EXT_CACHE.lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let ext = Arc::new(build_extension(base, big)?);
    let mut cache = EXT_CACHE.lock().unwrap();
    Ok(cache.entry(key).or_insert(ext).clone())
}

fn build_extension(base: &Arc<FieldCtx>, big: &Arc<FieldCtx>) -> Result<Extension> {
    let p = base.p();
    let db = base.degree() as usize;
    let root = if base.degree() == big.degree() {
        GFElement::gen_root(big).coords().to_vec()
    } else if db == 1 {
        // Prime field: Z of the linear defining polynomial is a scalar.
        let mut c = big.raw_zero();
        c[0] = (p - base.defining()[0] % p) % p;
        c
    } else {
        locate_base_root(base, big)?
    };
    let mut root_powers = Vec::with_capacity(db);
    let mut acc = big.pad(vec![1]);
    for _ in 0..db {
        root_powers.push(acc.clone());
        acc = big.raw_mul(&acc, &root);
    }
    let ext = Extension {
        base: base.clone(),
        big: big.clone(),
        root_powers,
    };
    // The embedding must kill the base defining polynomial.
    let w_at_root = eval_fp_poly_in_big(big, base.defining(), &root);
    if w_at_root.iter().any(|&c| c != 0) {
        return Err(Error::internal(
            "extension root is not a root of the base defining polynomial",
        ));
    }
    Ok(ext)
}

/// Smallest root (canonical order) of the base defining polynomial in big.
fn locate_base_root(base: &Arc<FieldCtx>, big: &Arc<FieldCtx>) -> Result<Vec<u64>> {
    let p = base.p();
    let db = base.degree() as usize;
    let dbig = big.degree() as usize;

    // Matrix of x -> x^(p^db) in the power basis: columns are t^i where
    // t = Z^(p^db).
    let z = GFElement::gen_root(big);
    let t = z.frobenius(base.degree()).coords().to_vec();
    let mut columns = Vec::with_capacity(dbig);
    let mut acc = big.pad(vec![1]);
    for _ in 0..dbig {
        columns.push(acc.clone());
        acc = big.raw_mul(&acc, &t);
    }
    // Kernel of (T - I): the subfield of p^db elements.
    let mut mat = vec![vec![0u64; dbig]; dbig];
    for (j, col) in columns.iter().enumerate() {
        for i in 0..dbig {
            mat[i][j] = col[i];
        }
        mat[j][j] = (mat[j][j] + p - 1) % p;
    }
    let basis = nullspace(p, mat);
    if basis.len() != db {
        return Err(Error::internal(format!(
            "subfield dimension {}, expected {db}",
            basis.len()
        )));
    }

    // Scan combinations of the kernel basis for a field generator theta.
    let mut theta = None;
    'scan: for c in 1u64..1 << 20 {
        let mut v = big.raw_zero();
        let mut digits = c;
        for b in &basis {
            let d = digits % p;
            digits /= p;
            if d != 0 {
                for (vi, &bi) in v.iter_mut().zip(b) {
                    *vi = (*vi + d * bi) % p;
                }
            }
        }
        if digits != 0 {
            break 'scan;
        }
        // Powers theta^0 .. theta^{db-1} must be independent.
        let mut powers = Vec::with_capacity(db + 1);
        let mut acc = big.pad(vec![1]);
        for _ in 0..=db {
            powers.push(acc.clone());
            acc = big.raw_mul(&acc, &v);
        }
        if rank(p, &powers[..db]) == db {
            theta = Some((v, powers));
            break;
        }
    }
    let (_theta, theta_powers) =
        theta.ok_or_else(|| Error::internal("no subfield generator found in scan range"))?;

    // Minimal polynomial of theta: theta^db = sum a_i theta^i.
    let a = gauss_solve(p, &theta_powers[..db], &theta_powers[db])
        .ok_or_else(|| Error::internal("theta^db escaped the power span"))?;
    let mut min_poly = vec![0u64; db + 1];
    for i in 0..db {
        min_poly[i] = (p - a[i]) % p;
    }
    min_poly[db] = 1;

    // A root rho of min_poly inside the abstract base field.
    let rho = find_root_in_field(base, &min_poly)?;

    // Express the base root Z in powers of rho, then transport to theta.
    let mut rho_powers = Vec::with_capacity(db);
    let mut acc = base.pad(vec![1]);
    for _ in 0..db {
        rho_powers.push(acc.clone());
        acc = base.raw_mul(&acc, rho.coords());
    }
    let z_base = GFElement::gen_root(base);
    let coeffs = gauss_solve(p, &rho_powers, z_base.coords())
        .ok_or_else(|| Error::internal("rho does not generate the base field"))?;
    let mut r0 = big.raw_zero();
    for (i, &ci) in coeffs.iter().enumerate() {
        if ci != 0 {
            for (ri, &ti) in r0.iter_mut().zip(&theta_powers[i]) {
                *ri = (*ri + ci * ti) % p;
            }
        }
    }
    debug_assert!(eval_fp_poly_in_big(big, base.defining(), &r0)
        .iter()
        .all(|&c| c == 0));

    // All conjugates are roots; take the canonical smallest.
    let mut best = r0.clone();
    let mut cur = r0;
    for _ in 1..db {
        cur = big.raw_frob(&cur, 1);
        if FieldCtx::raw_cmp(&cur, &best) == std::cmp::Ordering::Less {
            best = cur.clone();
        }
    }
    Ok(best)
}

fn eval_fp_poly_in_big(big: &Arc<FieldCtx>, poly: &[u64], at: &[u64]) -> Vec<u64> {
    let p = big.p();
    let mut acc = big.raw_zero();
    for &c in poly.iter().rev() {
        acc = big.raw_mul(&acc, at);
        acc[0] = (acc[0] + c) % p;
    }
    acc
}

/// Deterministic root of a monic squarefree polynomial (given by prime-field
/// coefficients) that splits completely over `field`: small fields by scan,
/// larger ones by fixed-seed equal-degree splitting.
fn find_root_in_field(field: &Arc<FieldCtx>, poly_fp: &[u64]) -> Result<GFElement> {
    let h = GFPoly::from_elements(
        field,
        poly_fp
            .iter()
            .map(|&c| GFElement::from_value(field, c))
            .collect(),
    );
    if let Some(q) = field.cardinality_u64() {
        if q <= 1 << 16 {
            for v in 0..q {
                let x = GFElement::from_value(field, v);
                if h.eval(&x).is_zero() {
                    return Ok(x);
                }
            }
            return Err(Error::internal("no root found by scan"));
        }
    }
    cz_root(field, h)
}

/// Equal-degree splitting down to a linear factor; the "randomness" is a
/// fixed-seed SplitMix64 stream, so results are reproducible.
fn cz_root(field: &Arc<FieldCtx>, mut h: GFPoly) -> Result<GFElement> {
    let mut rng = SplitMix64(0x00c1_c105_eed5_eed5);
    let p = field.p();
    let half: BigUint = (field.cardinality_big() - 1u32) / 2u32;
    for _ in 0..512 {
        if h.degree() == Some(1) {
            let c0 = h.clone().into_monic().coeff(0);
            return Ok(c0.neg());
        }
        let a = GFElement::from_coords(
            field,
            (0..field.degree()).map(|_| rng.next() % p).collect(),
        )?;
        let g = if p != 2 {
            // gcd(h, (X + a)^((Q-1)/2) - 1)
            let shifted = GFPoly::x(field).add(&GFPoly::constant(a));
            let powed = shifted.pow_mod(&half, &h)?;
            powed.sub(&GFPoly::one(field)).gcd(&h)?
        } else {
            // gcd(h, Tr(aX)) with the absolute trace over F_2.
            let y0 = GFPoly::x(field).mul_scalar(&a).rem_by(&h)?;
            let mut acc = y0.clone();
            let mut y = y0;
            for _ in 1..field.degree() {
                y = y.mul(&y).rem_by(&h)?;
                acc = acc.add(&y);
            }
            acc.gcd(&h)?
        };
        if let (Some(dg), Some(dh)) = (g.degree(), h.degree()) {
            if dg > 0 && dg < dh {
                h = if dg * 2 <= dh { g } else { h.exact_div(&g)? };
            }
        }
    }
    Err(Error::internal("equal-degree splitting did not converge"))
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Rank of the span of the given vectors over F_p.
fn rank(p: u64, vectors: &[Vec<u64>]) -> usize {
    let mut rows: Vec<Vec<u64>> = vectors.to_vec();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = crate::intarith::modinv(rows[rank][c], p).unwrap();
        for x in rows[rank].iter_mut() {
            *x = crate::intarith::mulmod(*x, inv, p);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let factor = rows[r][c];
                for j in 0..cols {
                    let t = crate::intarith::mulmod(factor, rows[rank][j], p);
                    rows[r][j] = (rows[r][j] + p - t) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Solve sum_i x_i * columns[i] = rhs over F_p, if consistent.
fn gauss_solve(p: u64, columns: &[Vec<u64>], rhs: &[u64]) -> Option<Vec<u64>> {
    let n_rows = rhs.len();
    let n_cols = columns.len();
    // Augmented row-major matrix.
    let mut m: Vec<Vec<u64>> = (0..n_rows)
        .map(|r| {
            let mut row: Vec<u64> = columns.iter().map(|c| c[r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    let mut pivot_of_col = vec![usize::MAX; n_cols];
    let mut rank = 0;
    for c in 0..n_cols {
        let Some(pr) = (rank..n_rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = crate::intarith::modinv(m[rank][c], p).unwrap();
        for x in m[rank].iter_mut() {
            *x = crate::intarith::mulmod(*x, inv, p);
        }
        for r in 0..n_rows {
            if r != rank && m[r][c] != 0 {
                let factor = m[r][c];
                for j in 0..=n_cols {
                    let t = crate::intarith::mulmod(factor, m[rank][j], p);
                    m[r][j] = (m[r][j] + p - t) % p;
                }
            }
        }
        pivot_of_col[c] = rank;
        rank += 1;
    }
    // Inconsistent if any zero row has nonzero rhs.
    for r in rank..n_rows {
        if m[r][n_cols] != 0 {
            return None;
        }
    }
    let mut x = vec![0u64; n_cols];
    for c in 0..n_cols {
        if pivot_of_col[c] != usize::MAX {
            x[c] = m[pivot_of_col[c]][n_cols];
        }
    }
    // Verify (guards against unnoticed free-variable interactions).
    for r in 0..n_rows {
        let mut acc = 0u64;
        for (c, col) in columns.iter().enumerate() {
            acc = (acc + crate::intarith::mulmod(x[c], col[r], p)) % p;
        }
        if acc != rhs[r] {
            return None;
        }
    }
    Some(x)
}

/// Basis of the kernel of a square row-major matrix over F_p, in reduced
/// echelon form (canonical).
fn nullspace(p: u64, mut m: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0;
    for c in 0..n {
        let Some(pr) = (rank..n).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = crate::intarith::modinv(m[rank][c], p).unwrap();
        for x in m[rank].iter_mut() {
            *x = crate::intarith::mulmod(*x, inv, p);
        }
        for r in 0..n {
            if r != rank && m[r][c] != 0 {
                let factor = m[r][c];
                for j in 0..n {
                    let t = crate::intarith::mulmod(factor, m[rank][j], p);
                    m[r][j] = (m[r][j] + p - t) % p;
                }
            }
        }
        pivot_col_of_row.push(c);
        rank += 1;
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = (p - m[row][free]) % p;
        }
        basis.push(v);
    }
    basis
}

impl Extension {
    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn big(&self) -> &Arc<FieldCtx> {
        &self.big
    }

    /// Image of the base defining root in the big field.
    pub fn root(&self) -> GFElement {
        GFElement::from_coords(&self.big, self.root_powers[1 % self.root_powers.len()].clone())
            .expect("root coords valid")
    }

    /// Embed a base-field element.
    pub fn embed(&self, a: &GFElement) -> GFElement {
        assert!(
            Arc::ptr_eq(a.ctx(), &self.base),
            "embedding element from the wrong field"
        );
        let p = self.big.p();
        let mut out = self.big.raw_zero();
        for (i, &ci) in a.coords().iter().enumerate() {
            if ci != 0 {
                for (o, &ri) in out.iter_mut().zip(&self.root_powers[i]) {
                    *o = (*o + ci * ri % p) % p;
                }
            }
        }
        GFElement::from_coords(&self.big, out).expect("embedding produced valid coords")
    }

    /// Project a big-field element onto the base field, or report that it
    /// lies outside the subfield.
    pub fn project(&self, a: &GFElement) -> Option<GFElement> {
        assert!(
            Arc::ptr_eq(a.ctx(), &self.big),
            "projecting element from the wrong field"
        );
        let x = gauss_solve(self.big.p(), &self.root_powers, a.coords())?;
        Some(GFElement::from_coords(&self.base, x).expect("projection produced valid coords"))
    }

    /// Embed a whole polynomial coefficient-wise.
    pub fn embed_poly(&self, f: &GFPoly) -> GFPoly {
        GFPoly::from_elements(
            &self.big,
            f.coefficients().iter().map(|c| self.embed(c)).collect(),
        )
    }

    /// Project a polynomial coefficient-wise; None if any coefficient
    /// escapes the subfield.
    pub fn project_poly(&self, f: &GFPoly) -> Option<GFPoly> {
        let mut out = Vec::new();
        for c in f.coefficients() {
            out.push(self.project(&c)?);
        }
        Some(GFPoly::from_elements(&self.base, out))
    }
}

/// The base-field representation of `a` when it is Frobenius-fixed under
/// x -> x^|base|; None signals not-in-subfield.
pub fn subfield_project(ext: &Extension, a: &GFElement) -> Option<GFElement> {
    ext.project(a)
}
