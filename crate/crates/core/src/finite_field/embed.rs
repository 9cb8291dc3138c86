//! Field embeddings `F_{p^a} -> F_{p^b}` for `a | b`.

use super::factor::roots;
use super::{FieldElement, FieldError, FiniteField, Poly};

#[derive(Clone, Debug)]
pub struct Embedding {
    source: FiniteField,
    target: FiniteField,
    image_of_generator: FieldElement,
}

impl Embedding {
    pub fn identity(k: &FiniteField) -> Embedding {
        Embedding { source: k.clone(), target: k.clone(), image_of_generator: k.generator() }
    }

    /// Sends the source generator to the smallest root of the source modulus
    /// in the target.
    pub fn canonical(source: &FiniteField, target: &FiniteField) -> Result<Embedding, FieldError> {
        if source.characteristic() != target.characteristic() {
            return Err(FieldError::FieldMismatch);
        }
        if target.degree() % source.degree() != 0 {
            return Err(FieldError::NotASubfield {
                source_degree: source.degree(),
                target_degree: target.degree(),
            });
        }
        if source == target {
            return Ok(Embedding::identity(source));
        }
        let image_of_generator = match source.modulus() {
            None => FieldElement::ONE,
            Some(m) => {
                let poly = Poly::from_coeffs(m.iter().map(|&c| FieldElement(c)).collect());
                *roots(target, &poly).first().expect("subfield modulus splits in the target")
            }
        };
        Ok(Embedding { source: source.clone(), target: target.clone(), image_of_generator })
    }

    pub fn source(&self) -> &FiniteField {
        &self.source
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }

    pub fn image_of_generator(&self) -> FieldElement {
        self.image_of_generator
    }

    pub fn embed(&self, a: FieldElement) -> FieldElement {
        if self.source.is_prime_field() || self.source == self.target {
            return a;
        }
        let t = &self.target;
        self.source
            .coords(a)
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| t.add(t.mul(acc, self.image_of_generator), FieldElement(c)))
    }

    pub fn embed_poly(&self, f: &Poly) -> Poly {
        f.map_coeffs(|&c| self.embed(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;

    #[test]
    fn embedding_examples() {
        let f9 = make_field(3, 2).unwrap();
        let id = Embedding::identity(&f9);
        for a in f9.elements() {
            assert_eq!(id.embed(a), a);
        }
        let f3 = make_field(3, 1).unwrap();
        let e = Embedding::canonical(&f3, &f9).unwrap();
        assert_eq!(e.embed(f3.from_int(2)), f9.from_int(2));

        let f81 = make_field(3, 4).unwrap();
        let e = Embedding::canonical(&f9, &f81).unwrap();
        let i = e.image_of_generator();
        assert_eq!(f81.add(f81.mul(i, i), FieldElement::ONE), FieldElement::ZERO);
        let other = f81.neg(i);
        assert!(i < other);
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        for (small, big) in [((3, 1), (3, 4)), ((3, 2), (3, 4)), ((5, 1), (5, 2)), ((7, 1), (7, 2))] {
            let s = make_field(small.0, small.1).unwrap();
            let t = make_field(big.0, big.1).unwrap();
            let e = Embedding::canonical(&s, &t).unwrap();
            assert_eq!(e.embed(FieldElement::ONE), FieldElement::ONE);
            for a in s.elements() {
                for b in s.elements() {
                    assert_eq!(e.embed(s.add(a, b)), t.add(e.embed(a), e.embed(b)));
                    assert_eq!(e.embed(s.mul(a, b)), t.mul(e.embed(a), e.embed(b)));
                }
            }
        }
    }

    #[test]
    fn tower_composition_lands_on_a_conjugate() {
        let f9 = make_field(3, 2).unwrap();
        let f81 = make_field(3, 4).unwrap();
        let f3_8 = make_field(3, 8).unwrap();
        let a = Embedding::canonical(&f9, &f81).unwrap();
        let b = Embedding::canonical(&f81, &f3_8).unwrap();
        let direct = Embedding::canonical(&f9, &f3_8).unwrap();
        let composed = b.embed(a.embed(f9.generator()));
        let m = Poly::from_coeffs(f9.modulus().unwrap().iter().map(|&c| FieldElement(c)).collect());
        assert!(m.eval(&f3_8, composed).is_zero());
        assert!(m.eval(&f3_8, direct.image_of_generator()).is_zero());
        assert!(direct.image_of_generator() <= composed);
    }

    #[test]
    fn rejects_non_subfield() {
        let f9 = make_field(3, 2).unwrap();
        let f27 = make_field(3, 3).unwrap();
        assert!(matches!(Embedding::canonical(&f9, &f27), Err(FieldError::NotASubfield { .. })));
    }
}
