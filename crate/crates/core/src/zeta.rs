//! Zeta functions of `y^2 = h(x)`: point counts, L-polynomials, base
//! change, p-rank, the Cartier-Manin matrix, and the checks that certify a
//! Jacobian as a power of one ordinary elliptic curve.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::construct::HyperellipticModel;
use crate::elliptic::COUNT_GUARD;
use crate::finite_field::{character_sum, make_field, Embedding, FieldElement, FieldError, FiniteField, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("counting over a field of {size} elements exceeds the enumeration guard")]
    GuardExceeded { size: u128 },
    #[error("point counts are inconsistent with any L-polynomial: {0}")]
    CountInconsistency(String),
    #[error("L-polynomial is malformed: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `L(T) = 1 + a_1 T + ... + a_{2g} T^{2g}` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    pub coeffs: Vec<BigInt>,
    pub q: BigInt,
    pub g: usize,
}

impl LPolynomial {
    /// Checks the shape and the functional equation.
    pub fn new(coeffs: Vec<BigInt>, q: BigInt, g: usize) -> Result<LPolynomial, ZetaError> {
        let l = LPolynomial { coeffs, q, g };
        if l.coeffs.len() != 2 * g + 1 || !l.coeffs[0].is_one() {
            return Err(ZetaError::Malformed(format!("expected {} coefficients with constant term 1", 2 * g + 1)));
        }
        if l.q < BigInt::from(2) {
            return Err(ZetaError::Malformed("q must be at least 2".into()));
        }
        if !l.functional_equation_holds() {
            return Err(ZetaError::Malformed("functional equation fails".into()));
        }
        Ok(l)
    }

    pub fn functional_equation_holds(&self) -> bool {
        (0..=self.g).all(|i| self.coeffs[2 * self.g - i] == self.q.pow((self.g - i) as u32) * &self.coeffs[i])
    }

    /// Power sums `S_1..S_n` of the inverse roots.
    pub fn power_sums(&self, n: usize) -> Vec<BigInt> {
        let a = |i: usize| self.coeffs.get(i).cloned().unwrap_or_default();
        let mut s: Vec<BigInt> = Vec::with_capacity(n);
        for m in 1..=n {
            let mut v = -BigInt::from(m) * a(m);
            for i in 1..m {
                v -= a(i) * &s[m - i - 1];
            }
            s.push(v);
        }
        s
    }

    /// `N_1..N_n` of the curve with this L-polynomial.
    pub fn counts(&self, n: usize) -> Vec<BigInt> {
        self.power_sums(n)
            .into_iter()
            .enumerate()
            .map(|(i, s)| self.q.pow(i as u32 + 1) + 1 - s)
            .collect()
    }

    /// `|N_m - q^m - 1| <= 2 g q^{m/2}` for `m = 1..n`.
    pub fn weil_bounds_hold(&self, n: usize) -> bool {
        let g = BigInt::from(self.g);
        self.power_sums(n)
            .iter()
            .enumerate()
            .all(|(i, s)| s * s <= BigInt::from(4) * &g * &g * self.q.pow(i as u32 + 1))
    }

    /// `L(1)`, the order of the Jacobian.
    pub fn jacobian_order(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

fn guard(size: u128) -> Result<(), ZetaError> {
    if size > COUNT_GUARD as u128 {
        Err(ZetaError::GuardExceeded { size })
    } else {
        Ok(())
    }
}

/// The extension of degree `m` of the base of `h` and the embedding into it.
pub fn extension(k: &FiniteField, m: u32) -> Result<Embedding, ZetaError> {
    guard((k.cardinality() as u128).pow(m))?;
    if m == 1 {
        return Ok(Embedding::identity(k));
    }
    let ext = make_field(k.characteristic() as u64, k.degree() * m)?;
    Ok(Embedding::canonical(k, &ext)?)
}

/// Points of `y^2 = h(x)` over the target of `emb`, including those at
/// infinity of the smooth model.
pub fn count_points_over(h: &Poly, emb: &Embedding) -> Result<u64, ZetaError> {
    let l = emb.target();
    guard(l.cardinality() as u128)?;
    let hh = emb.embed_poly(h);
    let affine = l.cardinality() as i64 + character_sum(l, &hh);
    let deg = hh.degree().ok_or(ZetaError::Malformed("zero polynomial".into()))?;
    let at_infinity = if deg % 2 == 1 {
        1
    } else if l.is_square(hh.lead()) {
        2
    } else {
        0
    };
    Ok((affine + at_infinity) as u64)
}

pub fn count_points_hyperelliptic(model: &HyperellipticModel, m: u32) -> Result<u64, ZetaError> {
    count_points_over(model.h(), &extension(model.base(), m)?)
}

/// `N_1..N_g` of the model.
pub fn counts(model: &HyperellipticModel) -> Result<Vec<u64>, ZetaError> {
    (1..=model.genus() as u32).map(|m| count_points_hyperelliptic(model, m)).collect()
}

/// Newton's identities on `S_m = q^m + 1 - N_m`, completed by the
/// functional equation.
pub fn lpoly_from_counts(counts: &[u64], q: &BigInt, g: usize) -> Result<LPolynomial, ZetaError> {
    if counts.len() < g {
        return Err(ZetaError::CountInconsistency(format!("{} counts given, {} needed", counts.len(), g)));
    }
    let gg = BigInt::from(g);
    let s: Vec<BigInt> = counts[..g]
        .iter()
        .enumerate()
        .map(|(i, &n)| q.pow(i as u32 + 1) + 1 - BigInt::from(n))
        .collect();
    for (i, si) in s.iter().enumerate() {
        if si * si > BigInt::from(4) * &gg * &gg * q.pow(i as u32 + 1) {
            return Err(ZetaError::CountInconsistency(format!("N_{} violates the Weil bound", i + 1)));
        }
    }
    let mut a = vec![BigInt::one()];
    for k in 1..=g {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            acc -= &s[i - 1] * &a[k - i];
        }
        let (quot, rem) = acc.div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(ZetaError::CountInconsistency(format!("a_{k} is not an integer")));
        }
        a.push(quot);
    }
    for i in (0..g).rev() {
        a.push(q.pow((g - i) as u32) * &a[i]);
    }
    let l = LPolynomial::new(a, q.clone(), g)?;
    if !l.weil_bounds_hold(2 * g) {
        return Err(ZetaError::CountInconsistency("derived counts violate the Weil bound".into()));
    }
    Ok(l)
}

type Matrix = Vec<Vec<BigInt>>;

fn mat_mul(x: &Matrix, y: &Matrix) -> Matrix {
    let n = x.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect())
        .collect()
}

fn mat_pow(x: &Matrix, mut e: u32) -> Matrix {
    let n = x.len();
    let mut acc: Matrix =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    acc
}

/// `det(X I - A) = X^n + c_1 X^{n-1} + ... + c_n`, returned as `[1, c_1, ..., c_n]`,
/// by the Faddeev-LeVerrier recursion with exact integer division.
fn charpoly(a: &Matrix) -> Vec<BigInt> {
    let n = a.len();
    let mut c = vec![BigInt::one()];
    let mut m: Matrix = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[k - 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (quot, rem) = (-trace).div_rem(&BigInt::from(k));
        assert!(rem.is_zero(), "integer matrix has an integral characteristic polynomial");
        c.push(quot);
    }
    c
}

/// The L-polynomial over the degree-`n` extension: the reversed
/// characteristic polynomial of the `n`-th power of the companion matrix of
/// `T^{2g} L(1/T)`.
pub fn base_change(l: &LPolynomial, n: u32) -> LPolynomial {
    let d = 2 * l.g;
    if n == 1 || d == 0 {
        return LPolynomial { coeffs: l.coeffs.clone(), q: l.q.pow(n), g: l.g };
    }
    // companion matrix of X^d + a_1 X^{d-1} + ... + a_d
    let mut comp: Matrix = vec![vec![BigInt::zero(); d]; d];
    for i in 1..d {
        comp[i][i - 1] = BigInt::one();
    }
    for (i, row) in comp.iter_mut().enumerate() {
        row[d - 1] = -&l.coeffs[d - i];
    }
    let coeffs = charpoly(&mat_pow(&comp, n));
    LPolynomial { coeffs, q: l.q.pow(n), g: l.g }
}

/// The same base change through power sums: `S_m` of the result is
/// `S_{mn}` of the input.
pub fn base_change_by_power_sums(l: &LPolynomial, n: u32) -> LPolynomial {
    let g = l.g;
    let s = l.power_sums(2 * g * n as usize);
    let q_n = l.q.pow(n);
    // Newton: m a_m = -(S_m + a_1 S_{m-1} + ... + a_{m-1} S_1)
    let mut coeffs = vec![BigInt::one()];
    for m in 1..=g {
        let mut acc = s[m * n as usize - 1].clone();
        for i in 1..m {
            acc += &coeffs[i] * &s[(m - i) * n as usize - 1];
        }
        let (a, r) = (-acc).div_rem(&BigInt::from(m));
        assert!(r.is_zero(), "power sums of a valid L-polynomial");
        coeffs.push(a);
    }
    for i in (0..g).rev() {
        let mirrored = q_n.pow((g - i) as u32) * &coeffs[i];
        coeffs.push(mirrored);
    }
    LPolynomial { coeffs, q: q_n, g }
}

/// Degree of `L mod p`.
pub fn p_rank(l: &LPolynomial, p: u64) -> usize {
    let p = BigInt::from(p);
    (0..l.coeffs.len()).rev().find(|&i| !l.coeffs[i].mod_floor(&p).is_zero()).unwrap_or(0).min(l.g)
}

/// `M[i][j]` = coefficient of `x^{ip - j}` in `h^{(p-1)/2}`, `1 <= i, j <= g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierManinMatrix {
    pub entries: Vec<Vec<FieldElement>>,
}

fn rank(k: &FiniteField, mut rows: Vec<Vec<FieldElement>>) -> usize {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..n).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, pivot);
        let inv = k.inv(rows[r][c]).expect("nonzero");
        for i in 0..n {
            if i != r && !rows[i][c].is_zero() {
                let factor = k.mul(rows[i][c], inv);
                for j in c..cols {
                    let v = k.mul(factor, rows[r][j]);
                    rows[i][j] = k.sub(rows[i][j], v);
                }
            }
        }
        r += 1;
    }
    r
}

fn mat_mul_field(k: &FiniteField, x: &[Vec<FieldElement>], y: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(FieldElement::ZERO, |s, t| k.add(s, k.mul(x[i][t], y[t][j]))))
                .collect()
        })
        .collect()
}

/// The matrix and its stable rank, the rank of
/// `M M^(p) M^(p^2) ... M^(p^(a g - 1))`.
pub fn cartier_manin(model: &HyperellipticModel) -> (CartierManinMatrix, usize) {
    let k = model.base();
    let p = k.characteristic() as usize;
    let g = model.genus();
    let power = model.h().pow(k, ((p - 1) / 2) as u64);
    let entries: Vec<Vec<FieldElement>> =
        (1..=g).map(|i| (1..=g).map(|j| if i * p >= j { power.coeff(i * p - j) } else { FieldElement::ZERO }).collect()).collect();
    let mut product = entries.clone();
    let mut twisted = entries.clone();
    for _ in 1..(k.degree() as usize * g) {
        twisted = twisted.iter().map(|row| row.iter().map(|&v| k.frobenius(v)).collect()).collect();
        product = mat_mul_field(k, &product, &twisted);
    }
    (CartierManinMatrix { entries }, rank(k, product))
}

/// `a_i = 0` whenever `g` does not divide `i`.
pub fn inert_shape_check(l: &LPolynomial, g: usize) -> bool {
    g > 0 && l.coeffs.iter().enumerate().all(|(i, a)| i % g == 0 || a.is_zero())
}

/// `L_K = (1 - a T + q_K T^2)^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerOfElliptic {
    pub a: BigInt,
    pub q_k: BigInt,
    pub ordinary: bool,
}

pub fn expand_power(a: &BigInt, q_k: &BigInt, g: usize) -> Vec<BigInt> {
    let quad = [BigInt::one(), -a.clone(), q_k.clone()];
    let mut acc = vec![BigInt::one()];
    for _ in 0..g {
        let mut next = vec![BigInt::zero(); acc.len() + 2];
        for (i, x) in acc.iter().enumerate() {
            for (j, y) in quad.iter().enumerate() {
                next[i + j] += x * y;
            }
        }
        acc = next;
    }
    acc
}

/// Recovers `a` from the linear coefficient and confirms the expansion.
pub fn power_of_elliptic(l_k: &LPolynomial, g: usize, p: u64) -> Option<PowerOfElliptic> {
    if g == 0 || l_k.g != g || l_k.coeffs.len() != 2 * g + 1 {
        return None;
    }
    let (a, rem) = (-&l_k.coeffs[1]).div_rem(&BigInt::from(g));
    if !rem.is_zero() {
        return None;
    }
    if &a * &a > BigInt::from(4) * &l_k.q {
        return None;
    }
    if expand_power(&a, &l_k.q, g) != l_k.coeffs {
        return None;
    }
    let ordinary = !a.mod_floor(&BigInt::from(p)).is_zero();
    Some(PowerOfElliptic { a, q_k: l_k.q.clone(), ordinary })
}

/// The spectral certificate that `Jac(D)` becomes a power of one ordinary
/// elliptic curve over the degree-`k_degree` extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCertificate {
    pub counts: Vec<u64>,
    pub l_over_k: LPolynomial,
    pub ell: u64,
    pub k_degree: u32,
    pub l_over_big_k: LPolynomial,
    pub a: BigInt,
    pub q_k: BigInt,
    pub ordinary: bool,
    pub inert_shape_ok: bool,
    pub p_rank: usize,
    pub cartier_manin_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitOutcome {
    Certified(SplitCertificate),
    /// L over k lacks the shape forced by an inert kernel.
    NotInertShape(LPolynomial),
    /// L over K is not a g-th power of an elliptic quadratic.
    NotAPower(LPolynomial),
    /// The quadratic factor is supersingular.
    NotOrdinary(SplitCertificate),
}

/// Counts `D` over `F_q, ..., F_{q^g}`, recovers `L` over `k`, base-changes
/// to the degree-`(ell - 1)` extension and checks the power shape.
pub fn certify_split(model: &HyperellipticModel, ell: u64) -> Result<SplitOutcome, ZetaError> {
    let k = model.base();
    let g = model.genus();
    let q = BigInt::from(k.cardinality());
    let counts = counts(model)?;
    let l_k = lpoly_from_counts(&counts, &q, g)?;
    if !inert_shape_check(&l_k, g) {
        return Ok(SplitOutcome::NotInertShape(l_k));
    }
    let k_degree = (ell - 1) as u32;
    let l_big = base_change(&l_k, k_degree);
    let Some(pe) = power_of_elliptic(&l_big, g, k.characteristic() as u64) else {
        return Ok(SplitOutcome::NotAPower(l_big));
    };
    let p_rank = p_rank(&l_k, k.characteristic() as u64);
    let (_, cm_rank) = cartier_manin(model);
    let cert = SplitCertificate {
        counts,
        l_over_k: l_k,
        ell,
        k_degree,
        l_over_big_k: l_big,
        a: pe.a,
        q_k: pe.q_k,
        ordinary: pe.ordinary && p_rank == g,
        inert_shape_ok: true,
        p_rank,
        cartier_manin_rank: cm_rank,
    };
    Ok(if cert.ordinary { SplitOutcome::Certified(cert) } else { SplitOutcome::NotOrdinary(cert) })
}

/// Largest `K` for which [`cross_check_over_big_k`] counts directly.
pub const CROSS_CHECK_LIMIT: u64 = 1 << 21;

/// Recounts `D` over `K` directly when `|K|` is at most
/// [`CROSS_CHECK_LIMIT`] and compares with `N_1` predicted by `L_K`.
/// `None` when too large.
pub fn cross_check_over_big_k(model: &HyperellipticModel, l_big: &LPolynomial, k_degree: u32) -> Option<bool> {
    let size = model.base().cardinality().checked_pow(k_degree)?;
    if size > CROSS_CHECK_LIMIT {
        return None;
    }
    let emb = extension(model.base(), k_degree).ok()?;
    let direct = count_points_over(model.h(), &emb).ok()?;
    Some(BigInt::from(direct) == l_big.counts(1)[0])
}

/// `sqrt(n)` rounded down, for bounds on BigInt quantities.
pub fn isqrt(n: &BigInt) -> BigInt {
    BigInt::from(n.magnitude().sqrt())
}

/// `q^n` as a BigInt.
pub fn big_pow(q: u64, n: u32) -> BigInt {
    BigInt::from(BigUint::from(q).pow(n))
}

pub fn abs_le_two_sqrt(a: &BigInt, q: &BigInt) -> bool {
    a.abs() * a.abs() <= BigInt::from(4) * q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::factor;
    use num_traits::ToPrimitive;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn model(p: u64, n: u32, h: &[i64]) -> HyperellipticModel {
        let k = make_field(p, n).unwrap();
        HyperellipticModel::new(&k, &Poly::from_ints(&k, h)).unwrap()
    }

    #[test]
    fn elliptic_examples() {
        let e = model(5, 1, &[0, 1, 0, 1]);
        assert_eq!(count_points_hyperelliptic(&e, 1).unwrap(), 4);
        let l = lpoly_from_counts(&[4], &BigInt::from(5), 1).unwrap();
        assert_eq!(l.coeffs, big(&[1, -2, 5]));
        assert_eq!(l.jacobian_order(), BigInt::from(4));
        assert_eq!(p_rank(&l, 5), 1);
        let l2 = base_change(&l, 2);
        assert_eq!(l2.coeffs, big(&[1, -(4 - 10), 25]));
        assert_eq!(base_change(&l, 1), l);
    }

    #[test]
    fn counts_agree_with_enumeration() {
        for (p, n, h) in [(3, 1, vec![2, 1, 0, 1]), (5, 1, vec![1, 0, 2, 0, 0, 1]), (7, 1, vec![3, 1, 0, 0, 1, 0, 2]), (3, 2, vec![1, 1, 0, 1, 1, 0, 1])] {
            let m = model(p, n, &h);
            let k = m.base();
            let mut brute = 0u64;
            for x in k.elements() {
                let v = m.h().eval(k, x);
                brute += if v.is_zero() { 1 } else if k.is_square(v) { 2 } else { 0 };
            }
            let deg = m.h().degree().unwrap();
            brute += if deg % 2 == 1 { 1 } else if k.is_square(m.h().lead()) { 2 } else { 0 };
            assert_eq!(count_points_hyperelliptic(&m, 1).unwrap(), brute);
        }
    }

    #[test]
    fn cartier_manin_examples() {
        let s = model(3, 1, &[2, 1, 0, 1]);
        let (m, r) = cartier_manin(&s);
        assert_eq!(m.entries, vec![vec![FieldElement::ZERO]]);
        assert_eq!(r, 0);
        let o = model(3, 1, &[2, 0, 1, 1]);
        let (m, r) = cartier_manin(&o);
        assert_eq!(m.entries, vec![vec![FieldElement::ONE]]);
        assert_eq!(r, 1);
        assert!(matches!(count_points_hyperelliptic(&o, 30), Err(ZetaError::GuardExceeded { .. })));
    }

    #[test]
    fn p_rank_examples() {
        let l = LPolynomial::new(big(&[1, 0, 3]), BigInt::from(3), 1).unwrap();
        assert_eq!(p_rank(&l, 3), 0);
        let sq = LPolynomial::new(big(&[1, -4, 22, -36, 81]), BigInt::from(9), 2).unwrap();
        assert_eq!(p_rank(&sq, 3), 2);
    }

    #[test]
    fn power_of_elliptic_examples() {
        let l = LPolynomial::new(big(&[1, -4, 22, -36, 81]), BigInt::from(9), 2).unwrap();
        let pe = power_of_elliptic(&l, 2, 3).unwrap();
        assert_eq!((pe.a, pe.q_k, pe.ordinary), (BigInt::from(2), BigInt::from(9), true));
        let e = LPolynomial::new(big(&[1, -3, 7]), BigInt::from(7), 1).unwrap();
        assert_eq!(power_of_elliptic(&e, 1, 7).unwrap().a, BigInt::from(3));
        // (1 - 2T + 9T^2)(1 - 4T + 9T^2)
        let mixed = LPolynomial::new(big(&[1, -6, 26, -54, 81]), BigInt::from(9), 2).unwrap();
        assert!(power_of_elliptic(&mixed, 2, 3).is_none());
    }

    #[test]
    fn inert_shape_examples() {
        let l = LPolynomial::new(big(&[1, -3, 7]), BigInt::from(7), 1).unwrap();
        assert!(inert_shape_check(&l, 1));
        let shaped = LPolynomial::new(big(&[1, 0, 5, 0, 81]), BigInt::from(9), 2).unwrap();
        assert!(inert_shape_check(&shaped, 2));
        let mixed = LPolynomial::new(big(&[1, -6, 26, -54, 81]), BigInt::from(9), 2).unwrap();
        assert!(!inert_shape_check(&mixed, 2));
    }

    #[test]
    fn count_inconsistency_is_reported() {
        // S_1 = -1 gives a_1 = 1, then 2 a_2 = -(S_2 + S_1 a_1) = -1
        let q = BigInt::from(3);
        let err = lpoly_from_counts(&[5, 8], &q, 2).unwrap_err();
        assert!(matches!(err, ZetaError::CountInconsistency(_)), "{err:?}");
        assert!(lpoly_from_counts(&[100], &q, 1).is_err());
    }

    /// A random valid L-polynomial: a product of Weil quadratics.
    pub(crate) fn random_lpoly(rng: &mut ChaCha8Rng, q: i64, g: usize) -> LPolynomial {
        let bound = (2.0 * (q as f64).sqrt()).floor() as i64;
        let mut coeffs = vec![BigInt::one()];
        for _ in 0..g {
            let t = rng.gen_range(-bound..=bound);
            let quad = big(&[1, -t, q]);
            let mut next = vec![BigInt::zero(); coeffs.len() + 2];
            for (i, x) in coeffs.iter().enumerate() {
                for (j, y) in quad.iter().enumerate() {
                    next[i + j] += x * y;
                }
            }
            coeffs = next;
        }
        LPolynomial::new(coeffs, BigInt::from(q), g).unwrap()
    }

    #[test]
    fn lpoly_machinery_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for i in 0..200 {
            let q = [3, 5, 7, 9, 25, 27][i % 6];
            let g = 1 + i % 3;
            let l = loop {
                let l = random_lpoly(&mut rng, q, g);
                if l.counts(2 * g).iter().all(|c| !c.is_negative()) {
                    break l;
                }
            };
            assert!(l.functional_equation_holds());
            assert!(l.weil_bounds_hold(2 * g));
            let counts: Vec<u64> = l.counts(g).iter().map(|c| c.to_u64().unwrap()).collect();
            assert_eq!(lpoly_from_counts(&counts, &l.q, g).unwrap(), l);
            let (m, n) = (1 + (i % 3) as u32, 1 + (i % 4) as u32);
            let composed = base_change(&base_change(&l, m), n);
            assert_eq!(composed, base_change(&l, m * n));
            assert_eq!(base_change(&l, n), base_change_by_power_sums(&l, n));
            let b = base_change(&l, n);
            assert!(b.functional_equation_holds());
            assert!(b.weil_bounds_hold(2 * g));
            assert_eq!(p_rank(&l, 3) == g, p_rank(&b, 3) == g || q % 3 != 0);
        }
    }

    /// Squarefree models of genus 1..3 with `q^g` at most 10^6.
    pub(crate) fn random_models(count: usize) -> Vec<HyperellipticModel> {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let fields = [make_field(3, 1).unwrap(), make_field(5, 1).unwrap(), make_field(3, 2).unwrap()];
        let mut out = Vec::new();
        while out.len() < count {
            let k = &fields[out.len() % 3];
            let q = k.cardinality();
            let g = 1 + rng.gen_range(0..3usize);
            if q.pow(g as u32) > 1_000_000 {
                continue;
            }
            let deg = 2 * g + 1 + rng.gen_range(0..2usize);
            let mut cs: Vec<FieldElement> = (0..deg).map(|_| FieldElement(rng.gen_range(0..q) as u32)).collect();
            cs.push(FieldElement(rng.gen_range(1..q) as u32));
            let h = Poly::from_coeffs(cs);
            if let Some(m) = HyperellipticModel::new(k, &h) {
                out.push(m);
            }
        }
        out
    }

    #[test]
    fn cartier_manin_matches_p_rank() {
        for m in random_models(60) {
            let l = lpoly_from_counts(&counts(&m).unwrap(), &BigInt::from(m.base().cardinality()), m.genus()).unwrap();
            let (_, r) = cartier_manin(&m);
            assert_eq!(r, p_rank(&l, m.base().characteristic() as u64), "{:?}", m);
        }
    }

    #[test]
    fn direct_count_over_extension_matches_base_change() {
        let k = make_field(3, 1).unwrap();
        let m = [[1, 1, 0, 0, 0, 1], [2, 1, 0, 0, 0, 1], [1, 0, 1, 0, 0, 1], [2, 2, 1, 0, 0, 1]]
            .iter()
            .find_map(|h| HyperellipticModel::new(&k, &Poly::from_ints(&k, h)))
            .unwrap();
        let l = lpoly_from_counts(&counts(&m).unwrap(), &BigInt::from(3), 2).unwrap();
        for n in 1..=4 {
            assert_eq!(cross_check_over_big_k(&m, &base_change(&l, n), n), Some(true));
        }
        assert!(factor::squarefree_part(m.base(), m.h()) == *m.h());
    }
}
