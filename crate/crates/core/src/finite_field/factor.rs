//! Squarefree decomposition, distinct-degree and equal-degree factorization.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::{FieldElement, FiniteField, Poly};

/// Rabin's irreducibility test.
pub fn is_irreducible(k: &FiniteField, f: &Poly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = f.monic(k);
    let q = k.cardinality();
    let x = Poly::x();
    let mut frob = vec![x.clone()];
    for i in 1..=n {
        let next = frob[i - 1].pow_mod(k, q, &f);
        frob.push(next);
    }
    if frob[n] != x.rem(k, &f) {
        return false;
    }
    let mut m = n;
    let mut r = 2;
    while m > 1 {
        if m % r == 0 {
            let g = frob[n / r].sub(k, &x).gcd(k, &f);
            if !g.is_one() {
                return false;
            }
            while m % r == 0 {
                m /= r;
            }
        }
        r += 1;
    }
    true
}

/// Pairs `(g_i, i)` with `monic(f) = prod g_i^i`, each `g_i` squarefree and
/// the `g_i` pairwise coprime. Handles purely inseparable parts by taking
/// `p`-th roots.
pub fn squarefree_decomposition(k: &FiniteField, f: &Poly) -> Vec<(Poly, usize)> {
    assert!(!f.is_zero(), "squarefree decomposition of the zero polynomial");
    let f = f.monic(k);
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let mut c = f.gcd(k, &f.derivative(k));
    let mut w = f.div_exact(k, &c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(k, &c);
        let z = w.div_exact(k, &y).expect("gcd divides");
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(k, &w).expect("gcd divides");
    }
    if !c.is_one() {
        let root = c.pth_root(k).expect("remaining part is a p-th power");
        let p = k.characteristic() as usize;
        for (g, m) in squarefree_decomposition(k, &root) {
            out.push((g, m * p));
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Monic product of the distinct irreducible factors of `f`.
pub fn squarefree_part(k: &FiniteField, f: &Poly) -> Poly {
    let parts = squarefree_decomposition(k, f);
    Poly::product(k, parts.iter().map(|(g, _)| g))
}

/// Monic product of the irreducible factors occurring in `f` to an odd
/// power. `y^2 = odd_part(f)` is the normalization of `y^2 = f`.
pub fn odd_part(k: &FiniteField, f: &Poly) -> Poly {
    let parts = squarefree_decomposition(k, f);
    Poly::product(k, parts.iter().filter(|(_, m)| m % 2 == 1).map(|(g, _)| g))
}

/// Splits a monic squarefree polynomial into `(d, product of all its
/// irreducible factors of degree d)`.
pub fn distinct_degree(k: &FiniteField, f: &Poly) -> Vec<(usize, Poly)> {
    let q = k.cardinality();
    let mut rest = f.monic(k);
    let mut out = Vec::new();
    let x = Poly::x();
    let mut h = x.clone();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            break;
        }
        d += 1;
        h = h.pow_mod(k, q, &rest);
        let g = h.sub(k, &x).gcd(k, &rest);
        if !g.is_one() {
            rest = rest.div_exact(k, &g).expect("gcd divides");
            h = h.rem(k, &rest);
            out.push((d, g));
        }
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((deg, rest));
        }
    }
    out
}

fn seed_for(k: &FiniteField, f: &Poly) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(k.characteristic().to_le_bytes());
    hasher.update(k.degree().to_le_bytes());
    for c in f.coeffs() {
        hasher.update(c.packed().to_le_bytes());
    }
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

/// Cantor-Zassenhaus splitting of a monic squarefree `f` whose irreducible
/// factors all have degree `d`. The random stream is seeded from `f`.
pub fn equal_degree(k: &FiniteField, f: &Poly, d: usize) -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(k, f));
    let q = BigUint::from(k.cardinality());
    let exponent = (q.pow(d as u32) - 1u32) / 2u32;
    let mut out = Vec::new();
    split(k, &f.monic(k), d, &exponent, &mut rng, &mut out);
    out
}

fn split(k: &FiniteField, f: &Poly, d: usize, exponent: &BigUint, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.degree().unwrap_or(0);
    if n == d {
        out.push(f.clone());
        return;
    }
    let card = k.cardinality();
    loop {
        let r = Poly::from_coeffs((0..n).map(|_| FieldElement(rng.gen_range(0..card) as u32)).collect());
        if r.is_constant() {
            continue;
        }
        let s = r.pow_mod_big(k, exponent, f).sub(k, &Poly::one());
        let g = s.gcd(k, f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.div_exact(k, &g).expect("gcd divides");
            split(k, &g, d, exponent, rng, out);
            split(k, &h, d, exponent, rng, out);
            return;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by (factor, multiplicity).
pub fn factor(k: &FiniteField, f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(k, f) {
        for (d, g) in distinct_degree(k, &part) {
            for h in equal_degree(k, &g, d) {
                out.push((h, mult));
            }
        }
    }
    out.sort();
    out
}

/// Distinct roots of `f` in `k`, sorted in the canonical order.
pub fn roots(k: &FiniteField, f: &Poly) -> Vec<FieldElement> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sqf = squarefree_part(k, f);
    let Some((1, linear)) = distinct_degree(k, &sqf).into_iter().find(|(d, _)| *d == 1) else {
        return Vec::new();
    };
    let mut rs: Vec<FieldElement> = equal_degree(k, &linear, 1)
        .into_iter()
        .map(|g| k.neg(g.coeff(0)))
        .collect();
    rs.sort();
    rs
}
