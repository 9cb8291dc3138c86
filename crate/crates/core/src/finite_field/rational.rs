//! Rational functions `N/M` in one variable.

use super::{FieldElement, FiniteField, Poly};

/// A point of the projective line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum P1Point {
    Finite(FieldElement),
    Infinity,
}

/// `numerator / denominator` with a monic denominator and coprime parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Poly,
    denominator: Poly,
}

impl RationalFunction {
    /// Normalizes; `None` for a zero denominator.
    pub fn new(k: &FiniteField, numerator: &Poly, denominator: &Poly) -> Option<RationalFunction> {
        if denominator.is_zero() {
            return None;
        }
        let g = numerator.gcd(k, denominator);
        let g = if g.is_zero() { Poly::one() } else { g };
        let mut num = numerator.div_exact(k, &g).expect("gcd divides");
        let mut den = denominator.div_exact(k, &g).expect("gcd divides");
        let lead = k.inv(den.lead()).expect("nonzero");
        num = num.scale(k, lead);
        den = den.scale(k, lead);
        Some(RationalFunction { numerator: num, denominator: den })
    }

    pub fn from_poly(f: &Poly) -> RationalFunction {
        RationalFunction { numerator: f.clone(), denominator: Poly::one() }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    /// Degree as a map of the projective line.
    pub fn degree(&self) -> usize {
        self.numerator.degree().unwrap_or(0).max(self.denominator.degree().unwrap_or(0))
    }

    /// Value at a finite point; `Infinity` at poles.
    pub fn eval(&self, k: &FiniteField, x: FieldElement) -> P1Point {
        let d = self.denominator.eval(k, x);
        if d.is_zero() {
            P1Point::Infinity
        } else {
            P1Point::Finite(k.mul(self.numerator.eval(k, x), k.inv(d).expect("nonzero")))
        }
    }

    pub fn eval_p1(&self, k: &FiniteField, t: P1Point) -> P1Point {
        match t {
            P1Point::Finite(x) => self.eval(k, x),
            P1Point::Infinity => {
                let dn = self.numerator.degree();
                let dd = self.denominator.degree().expect("nonzero denominator");
                match dn {
                    Some(n) if n > dd => P1Point::Infinity,
                    Some(n) if n == dd => P1Point::Finite(self.numerator.lead()),
                    _ => P1Point::Finite(FieldElement::ZERO),
                }
            }
        }
    }

    pub fn derivative(&self, k: &FiniteField) -> RationalFunction {
        let num = self
            .numerator
            .derivative(k)
            .mul(k, &self.denominator)
            .sub(k, &self.numerator.mul(k, &self.denominator.derivative(k)));
        RationalFunction::new(k, &num, &self.denominator.square(k)).expect("nonzero denominator")
    }

    pub fn map_coeffs(&self, k: &FiniteField, mut f: impl FnMut(&FieldElement) -> FieldElement) -> RationalFunction {
        RationalFunction::new(k, &self.numerator.map_coeffs(&mut f), &self.denominator.map_coeffs(&mut f))
            .expect("embeddings are injective")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;

    #[test]
    fn normalizes_common_factors() {
        let k = make_field(5, 1).unwrap();
        let a = Poly::from_ints(&k, &[1, 1]);
        let num = a.mul(&k, &Poly::from_ints(&k, &[2, 1]));
        let den = a.mul(&k, &Poly::from_ints(&k, &[0, 2]));
        let r = RationalFunction::new(&k, &num, &den).unwrap();
        assert_eq!(r.denominator(), &Poly::x());
        assert!(r.numerator().gcd(&k, r.denominator()).is_one());
        assert!(RationalFunction::new(&k, &num, &Poly::zero()).is_none());
        assert_eq!(r.eval(&k, FieldElement::ZERO), P1Point::Infinity);
    }
}
