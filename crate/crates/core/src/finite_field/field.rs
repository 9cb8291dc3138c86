//! Prime fields and their extensions `F_p[t]/(m(t))`.
//!
//! Elements are stored as packed base-`p` integers: the coordinate vector
//! `(c_0, .., c_{n-1})` with respect to the powers of the modulus root is the
//! little-endian digit expansion of the packed value. The packed value is
//! always reduced, so equality is structural, and the prime subfield is the
//! range `0..p`. The derived `Ord` on [`FieldElement`] (packed integer order)
//! is the canonical order used for every "smallest representative" choice.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

/// Largest supported field cardinality.
pub const MAX_CARDINALITY: u64 = 1 << 31;

/// Fields up to this size get discrete-log tables.
const TABLE_LIMIT: u64 = 1 << 21;

const MAX_DEGREE: usize = 31;
const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    BadCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("a field with {p}^{degree} elements exceeds the supported size 2^31")]
    TooLarge { p: u64, degree: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {0} is not an element of this field")]
    NotInField(u64),
    #[error("element is not a square")]
    NotASquare,
    #[error("coordinate vector does not describe an element of F_{p}^{degree}")]
    BadCoordinates { p: u32, degree: u32 },
    #[error("degree {source_degree} does not divide degree {target_degree}")]
    NotASubfield { source_degree: u32, target_degree: u32 },
    #[error("fields differ")]
    FieldMismatch,
}

/// A field element, meaningful only together with its [`FiniteField`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The packed base-`p` value.
    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

struct Tables {
    /// `exp[i] = g^i`, doubled so that sums of two logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[n] = log(1 + g^n)`, or `NO_LOG` when `1 + g^n = 0`.
    zech: Vec<u32>,
}

struct Inner {
    p: u32,
    degree: u32,
    /// Monic modulus, little-endian, length `degree + 1`. Empty for prime fields.
    modulus: Vec<u32>,
    cardinality: u32,
    powers_of_p: Vec<u32>,
    tables: Option<Tables>,
}

/// A finite field `F_{p^n}` of odd characteristic. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.degree == other.inner.degree
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.degree == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.inner.p, self.inner.degree, self.inner.modulus)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn check_size(p: u64, degree: u32) -> Result<u32, FieldError> {
    if degree == 0 {
        return Err(FieldError::ZeroDegree);
    }
    if p % 2 == 0 || !is_prime(p) {
        return Err(FieldError::BadCharacteristic(p));
    }
    let mut card: u64 = 1;
    for _ in 0..degree {
        card = card.saturating_mul(p);
        if card > MAX_CARDINALITY {
            return Err(FieldError::TooLarge { p, degree });
        }
    }
    Ok(card as u32)
}

/// The field with `p^degree` elements whose modulus is the smallest monic
/// irreducible polynomial of that degree, ordered by the packed value of its
/// low coefficients.
pub fn make_field(p: u64, degree: u32) -> Result<FiniteField, FieldError> {
    let card = check_size(p, degree)?;
    let p32 = p as u32;
    if degree == 1 {
        return Ok(FiniteField::build(p32, 1, Vec::new(), card));
    }
    let prime = FiniteField::build(p32, 1, Vec::new(), p32);
    for packed in 0..card {
        let mut coeffs: Vec<FieldElement> = (0..degree)
            .map(|i| FieldElement((packed / p32.pow(i)) % p32))
            .collect();
        if coeffs[0].is_zero() {
            continue;
        }
        coeffs.push(FieldElement::ONE);
        let candidate = super::Poly::from_coeffs(coeffs);
        if super::factor::is_irreducible(&prime, &candidate) {
            let modulus = candidate.coeffs().iter().map(|c| c.0).collect();
            return Ok(FiniteField::build(p32, degree, modulus, card));
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<FiniteField, FieldError> {
        make_field(p, 1)
    }

    fn build(p: u32, degree: u32, modulus: Vec<u32>, cardinality: u32) -> FiniteField {
        let powers_of_p = (0..degree).map(|i| p.pow(i)).collect();
        let mut inner = Inner { p, degree, modulus, cardinality, powers_of_p, tables: None };
        if (cardinality as u64) <= TABLE_LIMIT && cardinality > 2 {
            inner.tables = Some(build_tables(&inner));
        }
        FiniteField { inner: Arc::new(inner) }
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    pub fn cardinality(&self) -> u64 {
        self.inner.cardinality as u64
    }

    /// Monic modulus coefficients (little-endian), `None` for a prime field.
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.inner.degree == 1 {
            None
        } else {
            Some(&self.inner.modulus)
        }
    }

    /// Whether log tables back the arithmetic of this field.
    pub fn has_tables(&self) -> bool {
        self.inner.tables.is_some()
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.degree == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The class of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn element(&self, packed: u64) -> Result<FieldElement, FieldError> {
        if packed < self.cardinality() {
            Ok(FieldElement(packed as u32))
        } else {
            Err(FieldError::NotInField(packed))
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.inner.cardinality
    }

    /// The modulus root `t` (the field generator over `F_p`).
    pub fn generator(&self) -> FieldElement {
        if self.inner.degree == 1 {
            FieldElement::ONE
        } else {
            FieldElement(self.inner.p)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.cardinality).map(FieldElement)
    }

    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        self.digits(a.0)[..self.inner.degree as usize].to_vec()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement, FieldError> {
        let bad = FieldError::BadCoordinates { p: self.inner.p, degree: self.inner.degree };
        if coords.len() != self.inner.degree as usize || coords.iter().any(|&c| c >= self.inner.p) {
            return Err(bad);
        }
        Ok(FieldElement(self.pack(coords)))
    }

    /// Whether `a` lies in the prime subfield.
    pub fn in_prime_field(&self, a: FieldElement) -> bool {
        a.0 < self.inner.p
    }

    fn digits(&self, mut v: u32) -> [u32; MAX_DEGREE] {
        let p = self.inner.p;
        let mut d = [0u32; MAX_DEGREE];
        for slot in d.iter_mut().take(self.inner.degree as usize) {
            *slot = v % p;
            v /= p;
        }
        d
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .zip(&self.inner.powers_of_p)
            .map(|(d, pw)| d * pw)
            .sum()
    }

    // -- arithmetic ---------------------------------------------------------

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.degree == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return FieldElement((s % inner.p as u64) as u32);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        match &inner.tables {
            Some(t) => {
                let order = inner.cardinality - 1;
                let la = t.log[a.0 as usize];
                let lb = t.log[b.0 as usize];
                let n = if lb >= la { lb - la } else { lb + order - la };
                let z = t.zech[n as usize];
                if z == NO_LOG {
                    FieldElement::ZERO
                } else {
                    FieldElement(t.exp[(la + z) as usize])
                }
            }
            None => FieldElement(self.plain_add(a.0, b.0)),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            return a;
        }
        let inner = &*self.inner;
        if inner.degree == 1 {
            return FieldElement(inner.p - a.0);
        }
        let p = inner.p;
        let d = self.digits(a.0);
        let neg: Vec<u32> = d[..inner.degree as usize].iter().map(|&c| (p - c) % p).collect();
        FieldElement(self.pack(&neg))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let inner = &*self.inner;
        if inner.degree == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32);
        }
        match &inner.tables {
            Some(t) => FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => FieldElement(self.plain_mul(a.0, b.0)),
        }
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        match &self.inner.tables {
            Some(t) => {
                let order = self.inner.cardinality - 1;
                Ok(FieldElement(t.exp[(order - t.log[a.0 as usize]) as usize]))
            }
            None => Ok(self.pow(a, self.cardinality() - 2)),
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Checked binary operation: both operands must belong to this field.
    pub fn arith(&self, a: FieldElement, b: FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(FieldError::NotInField(x.0 as u64));
            }
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return a;
        }
        if let Some(t) = &self.inner.tables {
            let order = (self.inner.cardinality - 1) as u64;
            let l = (t.log[a.0 as usize] as u64 * (e % order)) % order;
            return FieldElement(t.exp[l as usize]);
        }
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: FieldElement, e: &BigUint) -> FieldElement {
        let order = BigUint::from(self.cardinality() - 1);
        if a.0 == 0 {
            return if e.bits() == 0 { FieldElement::ONE } else { a };
        }
        let reduced = e % &order;
        let r: u64 = reduced.try_into().expect("reduced exponent fits in u64");
        self.pow(a, r)
    }

    /// `a^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.inner.p as u64)
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        let mut r = a;
        for _ in 1..self.inner.degree {
            r = self.frobenius(r);
        }
        r
    }

    /// +1 for nonzero squares, -1 for non-squares, 0 for zero.
    pub fn quadratic_character(&self, a: FieldElement) -> i32 {
        if a.0 == 0 {
            return 0;
        }
        match &self.inner.tables {
            Some(t) => {
                if t.log[a.0 as usize] % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            None => {
                let r = self.pow(a, (self.cardinality() - 1) / 2);
                if r == FieldElement::ONE {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        self.quadratic_character(a) >= 0
    }

    /// Square root; of the two roots the smaller one in the canonical order.
    pub fn sqrt(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Ok(a);
        }
        if self.quadratic_character(a) < 0 {
            return Err(FieldError::NotASquare);
        }
        let r = match &self.inner.tables {
            Some(t) => FieldElement(t.exp[(t.log[a.0 as usize] / 2) as usize]),
            None => self.tonelli_shanks(a),
        };
        Ok(r.min(self.neg(r)))
    }

    fn tonelli_shanks(&self, a: FieldElement) -> FieldElement {
        let q1 = self.cardinality() - 1;
        let s = q1.trailing_zeros();
        let t = q1 >> s;
        let z = self
            .elements()
            .skip(2)
            .find(|&z| self.quadratic_character(z) < 0)
            .expect("odd fields have non-squares");
        let mut m = s;
        let mut c = self.pow(z, t);
        let mut x = self.pow(a, (t + 1) / 2);
        let mut b = self.pow(a, t);
        while b != FieldElement::ONE {
            let mut i = 0;
            let mut b2 = b;
            while b2 != FieldElement::ONE {
                b2 = self.square(b2);
                i += 1;
            }
            let mut w = c;
            for _ in 0..(m - i - 1) {
                w = self.square(w);
            }
            x = self.mul(x, w);
            c = self.square(w);
            b = self.mul(b, c);
            m = i;
        }
        x
    }

    /// The smallest non-square in the canonical order.
    pub fn smallest_nonsquare(&self) -> FieldElement {
        self.elements()
            .find(|&z| self.quadratic_character(z) < 0)
            .expect("odd fields have non-squares")
    }

    // -- table-free arithmetic ---------------------------------------------

    fn plain_add(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        let da = self.digits(a);
        let db = self.digits(b);
        let n = self.inner.degree as usize;
        let sum: Vec<u32> = (0..n).map(|i| (da[i] + db[i]) % p).collect();
        self.pack(&sum)
    }

    fn plain_mul(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.inner;
        let p = inner.p as u64;
        let n = inner.degree as usize;
        if n == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] += da[i] as u64 * db[j] as u64;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = prod[k] % p;
            prod[k] = 0;
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for j in 0..n {
                prod[k - n + j] += neg * inner.modulus[j] as u64;
            }
            prod[k - 1] %= p;
        }
        let out: Vec<u32> = prod[..n].iter().map(|&c| (c % p) as u32).collect();
        self.pack(&out)
    }

    fn plain_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.plain_mul(acc, base);
            }
            base = self.plain_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn build_tables(inner: &Inner) -> Tables {
    let view = FiniteField {
        inner: Arc::new(Inner {
            p: inner.p,
            degree: inner.degree,
            modulus: inner.modulus.clone(),
            cardinality: inner.cardinality,
            powers_of_p: inner.powers_of_p.clone(),
            tables: None,
        }),
    };
    let q = inner.cardinality as u64;
    let order = q - 1;
    let divisors = prime_divisors(order);
    let g = (2..q as u32)
        .find(|&g| divisors.iter().all(|&r| view.plain_pow(g, order / r) != 1))
        .expect("multiplicative group is cyclic");
    let order = order as usize;
    let mut exp = vec![0u32; 2 * order];
    let mut log = vec![NO_LOG; q as usize];
    let mut cur = 1u32;
    for (i, slot) in exp.iter_mut().take(order).enumerate() {
        *slot = cur;
        log[cur as usize] = i as u32;
        cur = view.plain_mul(cur, g);
    }
    for i in 0..order {
        exp[order + i] = exp[i];
    }
    let p = inner.p;
    let zech = (0..order)
        .map(|n| {
            let v = exp[n];
            let low = v % p;
            let plus_one = v - low + (low + 1) % p;
            if plus_one == 0 {
                NO_LOG
            } else {
                log[plus_one as usize]
            }
        })
        .collect();
    Tables { exp, log, zech }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_small_fields() -> Vec<FiniteField> {
        [(3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1), (7, 2)]
            .iter()
            .map(|&(p, n)| make_field(p, n).unwrap())
            .collect()
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert_eq!(make_field(2, 1).unwrap_err(), FieldError::BadCharacteristic(2));
        assert_eq!(make_field(9, 1).unwrap_err(), FieldError::BadCharacteristic(9));
        assert_eq!(make_field(3, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(make_field(3, 20), Err(FieldError::TooLarge { .. })));
    }

    #[test]
    fn lexicographically_minimal_moduli() {
        assert_eq!(make_field(3, 1).unwrap().modulus(), None);
        assert_eq!(make_field(3, 2).unwrap().modulus(), Some(&[1, 0, 1][..]));
        assert_eq!(make_field(5, 2).unwrap().modulus(), Some(&[2, 0, 1][..]));
    }

    #[test]
    fn small_arithmetic_examples() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(f3.add(f3.from_int(2), f3.from_int(2)), f3.from_int(1));
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.inv(f5.from_int(2)).unwrap(), f5.from_int(3));
        let f9 = make_field(3, 2).unwrap();
        let i = f9.generator();
        assert_eq!(f9.mul(i, i), f9.from_int(2));
        assert_eq!(f5.inv(FieldElement::ZERO), Err(FieldError::DivisionByZero));
        assert_eq!(f5.arith(FieldElement(7), FieldElement::ONE, ArithOp::Add), Err(FieldError::NotInField(7)));
    }

    #[test]
    fn character_and_sqrt_examples() {
        let f7 = make_field(7, 1).unwrap();
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f7.quadratic_character(FieldElement::ZERO), 0);
        assert_eq!(f7.quadratic_character(f7.from_int(2)), 1);
        assert_eq!(f5.quadratic_character(f5.from_int(2)), -1);
        assert_eq!(f7.sqrt(f7.from_int(4)).unwrap(), f7.from_int(2));
        assert_eq!(f7.sqrt(f7.from_int(2)).unwrap(), f7.from_int(3));
        assert_eq!(f5.sqrt(f5.from_int(2)), Err(FieldError::NotASquare));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for k in all_small_fields() {
            let els: Vec<_> = k.elements().collect();
            for &a in &els {
                assert_eq!(k.add(a, FieldElement::ZERO), a);
                assert_eq!(k.add(a, k.neg(a)), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), FieldElement::ONE);
                }
            }
            // triples are cubic; sample a stride for the larger fields
            let stride = if els.len() > 27 { 7 } else { 1 };
            for &a in els.iter().step_by(stride) {
                for &b in &els {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for &c in els.iter().step_by(stride) {
                        assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
                        assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn tables_agree_with_plain_arithmetic() {
        let k = make_field(3, 4).unwrap();
        for a in k.elements() {
            for b in k.elements().step_by(5) {
                assert_eq!(k.mul(a, b).0, k.plain_mul(a.0, b.0));
                assert_eq!(k.add(a, b).0, k.plain_add(a.0, b.0));
            }
        }
    }

    #[test]
    fn character_is_multiplicative() {
        for k in all_small_fields() {
            for a in k.elements() {
                for b in k.elements() {
                    assert_eq!(
                        k.quadratic_character(a) * k.quadratic_character(b),
                        k.quadratic_character(k.mul(a, b))
                    );
                }
            }
        }
    }

    #[test]
    fn sqrt_without_tables() {
        // 3^14 > 2^21, so this field runs on plain arithmetic and Tonelli-Shanks
        let k = make_field(3, 14).unwrap();
        assert!(k.inner.tables.is_none());
        let mut x = k.generator();
        for _ in 0..20 {
            let sq = k.square(x);
            let r = k.sqrt(sq).unwrap();
            assert_eq!(k.square(r), sq);
            assert!(r <= k.neg(r));
            assert_eq!(k.mul(x, k.inv(x).unwrap()), FieldElement::ONE);
            x = k.add(k.mul(x, x), k.from_int(1));
        }
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let k = make_field(5, 2).unwrap();
        for a in k.elements() {
            assert_eq!(k.frobenius(k.pth_root(a)), a);
        }
    }
}
