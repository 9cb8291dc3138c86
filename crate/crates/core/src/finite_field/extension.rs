//! Residue fields `F_q[x]/(g)` for an irreducible `g`, used where the
//! absolute size would exceed what [`FiniteField`] supports (e.g. the field
//! of definition of a torsion point).

use num_bigint::BigUint;

use super::{FieldElement, FieldOps, FiniteField, Poly};

#[derive(Clone, Debug)]
pub struct ResidueField {
    base: FiniteField,
    modulus: Poly,
}

impl ResidueField {
    /// `modulus` must be irreducible over `base`; it is made monic.
    pub fn new(base: &FiniteField, modulus: &Poly) -> ResidueField {
        assert!(modulus.degree().unwrap_or(0) >= 1, "residue field modulus must be non-constant");
        ResidueField { base: base.clone(), modulus: modulus.monic(base) }
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Degree over the base field.
    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("non-constant modulus")
    }

    /// The class of `x`.
    pub fn generator(&self) -> Poly {
        Poly::x().rem(&self.base, &self.modulus)
    }

    pub fn lift(&self, c: FieldElement) -> Poly {
        Poly::constant(c)
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        f.rem(&self.base, &self.modulus)
    }

    pub fn pow(&self, a: &Poly, e: u64) -> Poly {
        a.pow_mod(&self.base, e, &self.modulus)
    }

    pub fn pow_big(&self, a: &Poly, e: &BigUint) -> Poly {
        a.pow_mod_big(&self.base, e, &self.modulus)
    }

    /// The base-field Frobenius `a -> a^q`.
    pub fn frobenius(&self, a: &Poly) -> Poly {
        self.pow(a, self.base.cardinality())
    }

    pub fn is_square(&self, a: &Poly) -> bool {
        if a.is_zero() {
            return true;
        }
        let q = BigUint::from(self.base.cardinality());
        let e = (q.pow(self.degree() as u32) - 1u32) / 2u32;
        self.pow_big(a, &e).is_one()
    }

    /// The element as a base-field constant, if it is one.
    pub fn as_base(&self, a: &Poly) -> Option<FieldElement> {
        a.is_constant().then(|| a.coeff(0))
    }
}

impl FieldOps for ResidueField {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }

    fn one(&self) -> Poly {
        Poly::one()
    }

    fn from_int(&self, n: i64) -> Poly {
        Poly::constant(self.base.from_int(n))
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(&self.base, b)
    }

    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(&self.base, b)
    }

    fn neg(&self, a: &Poly) -> Poly {
        a.neg(&self.base)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_mod(&self.base, b, &self.modulus)
    }

    fn inv(&self, a: &Poly) -> Option<Poly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.ext_gcd(&self.base, &self.modulus);
        g.is_one().then(|| s.rem(&self.base, &self.modulus))
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
}
