//! Finite fields of odd characteristic, polynomials and rational functions
//! over them, factorization, and embeddings between fields of a tower.

mod charsum;
mod embed;
mod extension;
pub mod factor;
mod field;
mod poly;
mod rational;

use std::fmt::Debug;

pub use charsum::character_sum;
pub use embed::Embedding;
pub use extension::ResidueField;
pub use field::{is_prime, make_field, ArithOp, FieldElement, FieldError, FiniteField, MAX_CARDINALITY};
pub use poly::Poly;
pub use rational::{P1Point, RationalFunction};

/// The field operations needed by curve arithmetic, shared by absolute
/// fields and residue fields.
pub trait FieldOps {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

impl FieldOps for FiniteField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    fn from_int(&self, n: i64) -> FieldElement {
        FiniteField::from_int(self, n)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FiniteField::add(self, *a, *b)
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FiniteField::sub(self, *a, *b)
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        FiniteField::neg(self, *a)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FiniteField::mul(self, *a, *b)
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        FiniteField::inv(self, *a).ok()
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
}
