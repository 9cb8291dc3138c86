//! Dense univariate polynomials over a [`FiniteField`].

use num_bigint::BigUint;

use super::{FieldElement, FiniteField};

/// Little-endian coefficients with trailing zeros stripped. The zero
/// polynomial has no coefficients and degree `None`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(k: &FiniteField, ints: &[i64]) -> Poly {
        Poly::from_coeffs(ints.iter().map(|&c| k.from_int(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(FieldElement::ONE)
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Poly {
        Poly::from_coeffs(vec![FieldElement::ZERO, FieldElement::ONE])
    }

    /// `x - a`.
    pub fn linear(k: &FiniteField, a: FieldElement) -> Poly {
        Poly::from_coeffs(vec![k.neg(a), FieldElement::ONE])
    }

    pub fn monomial(c: FieldElement, n: usize) -> Poly {
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[n] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of coefficients; 0 for the zero polynomial.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == FieldElement::ONE
    }

    pub fn add(&self, k: &FiniteField, other: &Poly) -> Poly {
        let n = self.len().max(other.len());
        Poly::from_coeffs((0..n).map(|i| k.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, k: &FiniteField, other: &Poly) -> Poly {
        let n = self.len().max(other.len());
        Poly::from_coeffs((0..n).map(|i| k.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, k: &FiniteField) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| k.neg(c)).collect())
    }

    pub fn scale(&self, k: &FiniteField, c: FieldElement) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    /// Multiplication by `x^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElement::ZERO; n];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn mul(&self, k: &FiniteField, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.len() + other.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn square(&self, k: &FiniteField) -> Poly {
        self.mul(k, self)
    }

    pub fn pow(&self, k: &FiniteField, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square(k);
            }
        }
        acc
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, k: &FiniteField, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let inv_lead = k.inv(divisor.lead()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let f = k.mul(c, inv_lead);
            quot[i - dd] = f;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = k.sub(rem[i - dd + j], k.mul(f, d));
            }
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, k: &FiniteField, divisor: &Poly) -> Poly {
        self.div_rem(k, divisor).1
    }

    /// Exact quotient, `None` if the division leaves a remainder.
    pub fn div_exact(&self, k: &FiniteField, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(k, divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, k: &FiniteField, other: &Poly) -> bool {
        other.rem(k, self).is_zero()
    }

    pub fn monic(&self, k: &FiniteField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = k.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(k, inv)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, k: &FiniteField, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(k, &b);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn ext_gcd(&self, k: &FiniteField, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(k, &r1);
            let s = s0.sub(k, &q.mul(k, &s1));
            let t = t0.sub(k, &q.mul(k, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = k.inv(r0.lead()).expect("nonzero leading coefficient");
        (r0.scale(k, inv), s0.scale(k, inv), t0.scale(k, inv))
    }

    pub fn derivative(&self, k: &FiniteField) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| k.mul(c, k.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, k: &FiniteField, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
    }

    /// `self(g(x))`.
    pub fn compose(&self, k: &FiniteField, g: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| acc.mul(k, g).add(k, &Poly::constant(c)))
    }

    pub fn mul_mod(&self, k: &FiniteField, other: &Poly, modulus: &Poly) -> Poly {
        self.mul(k, other).rem(k, modulus)
    }

    pub fn pow_mod(&self, k: &FiniteField, mut e: u64, modulus: &Poly) -> Poly {
        let mut base = self.rem(k, modulus);
        let mut acc = Poly::one().rem(k, modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(k, &base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(k, &base, modulus);
            }
        }
        acc
    }

    pub fn pow_mod_big(&self, k: &FiniteField, e: &BigUint, modulus: &Poly) -> Poly {
        let base = self.rem(k, modulus);
        let mut acc = Poly::one().rem(k, modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(k, &acc, modulus);
            if e.bit(i) {
                acc = acc.mul_mod(k, &base, modulus);
            }
        }
        acc
    }

    /// For a polynomial in `x^p`, the polynomial `g` with `g^p = self`.
    /// Returns `None` when some exponent is not a multiple of `p`.
    pub fn pth_root(&self, k: &FiniteField) -> Option<Poly> {
        let p = k.characteristic() as usize;
        let mut out = Vec::with_capacity(self.len() / p + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(k.pth_root(c));
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Poly::from_coeffs(out))
    }

    /// Applies a coefficient map, e.g. a field embedding.
    pub fn map_coeffs(&self, f: impl FnMut(&FieldElement) -> FieldElement) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn is_squarefree(&self, k: &FiniteField) -> bool {
        !self.is_zero() && self.gcd(k, &self.derivative(k)).is_one()
    }

    pub fn product<'a>(k: &FiniteField, polys: impl IntoIterator<Item = &'a Poly>) -> Poly {
        polys.into_iter().fold(Poly::one(), |acc, f| acc.mul(k, f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;

    #[test]
    fn gcd_examples() {
        let f5 = make_field(5, 1).unwrap();
        let a = Poly::from_ints(&f5, &[-1, 0, 1]);
        let b = Poly::from_ints(&f5, &[-1, 1]);
        assert_eq!(a.gcd(&f5, &b), b);
        let c = Poly::from_ints(&f5, &[2, 0, 3]);
        assert_eq!(c.gcd(&f5, &Poly::zero()), c.monic(&f5));

        let f3 = make_field(3, 1).unwrap();
        let f = Poly::from_ints(&f3, &[2, 0, 1, 1]);
        let g = Poly::from_ints(&f3, &[0, 2]);
        assert!(f.gcd(&f3, &g).is_one());
    }

    #[test]
    fn division_identity() {
        let k = make_field(3, 2).unwrap();
        let a = Poly::from_coeffs(k.elements().take(7).collect());
        let b = Poly::from_coeffs(k.elements().skip(3).take(3).collect());
        let (q, r) = a.div_rem(&k, &b);
        assert_eq!(q.mul(&k, &b).add(&k, &r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn ext_gcd_bezout() {
        let k = make_field(7, 1).unwrap();
        let a = Poly::from_ints(&k, &[1, 2, 3, 4]);
        let b = Poly::from_ints(&k, &[5, 0, 1]);
        let (g, s, t) = a.ext_gcd(&k, &b);
        assert_eq!(s.mul(&k, &a).add(&k, &t.mul(&k, &b)), g);
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
    }

    #[test]
    fn compose_and_eval_agree() {
        let k = make_field(5, 1).unwrap();
        let f = Poly::from_ints(&k, &[1, 0, 2, 1]);
        let g = Poly::from_ints(&k, &[3, 1, 1]);
        let fg = f.compose(&k, &g);
        for x in k.elements() {
            assert_eq!(fg.eval(&k, x), f.eval(&k, g.eval(&k, x)));
        }
    }
}
