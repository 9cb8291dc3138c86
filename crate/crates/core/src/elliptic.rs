//! Elliptic curves `y^2 = x^3 + a2 x^2 + a4 x + a6` over finite fields of odd
//! characteristic (characteristic 3 included).

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::finite_field::{
    character_sum, factor, make_field, Embedding, FieldElement, FieldError, FieldOps, FiniteField, Poly,
};

/// Largest field over which points are counted by enumeration.
pub const COUNT_GUARD: u64 = 1 << 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EllipticError {
    #[error("singular model: the cubic has a repeated root")]
    Singular,
    #[error("point is not on the curve")]
    OffCurve,
    #[error("counting over a field of {size} elements exceeds the enumeration guard")]
    GuardExceeded { size: u64 },
    #[error("division polynomial index {n} must be odd, at least 3 and prime to the characteristic")]
    BadDivisionIndex { n: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A point of a Weierstrass model over some field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point<E> {
    Infinity,
    Affine(E, E),
}

pub type CurvePoint = Point<FieldElement>;

impl<E> Point<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&E> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(x),
        }
    }
}

/// Chord-tangent law on `d y^2 = x^3 + a2 x^2 + a4 x + a6` over any field
/// implementing [`FieldOps`]. With `d = 1` this is the usual model; other
/// `d` give quadratic twists without leaving the field.
#[derive(Clone, Debug)]
pub struct GroupLaw<'a, F: FieldOps> {
    pub field: &'a F,
    pub d: F::Elem,
    pub a2: F::Elem,
    pub a4: F::Elem,
    pub a6: F::Elem,
}

impl<'a, F: FieldOps> GroupLaw<'a, F> {
    pub fn rhs(&self, x: &F::Elem) -> F::Elem {
        let k = self.field;
        let t = k.add(&k.mul(&k.add(x, &self.a2), x), &self.a4);
        k.add(&k.mul(&t, x), &self.a6)
    }

    fn rhs_derivative(&self, x: &F::Elem) -> F::Elem {
        let k = self.field;
        let three_x = k.mul(&k.from_int(3), x);
        let two_a2 = k.mul(&k.from_int(2), &self.a2);
        k.add(&k.mul(&k.add(&three_x, &two_a2), x), &self.a4)
    }

    pub fn contains(&self, p: &Point<F::Elem>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let k = self.field;
                k.mul(&self.d, &k.mul(y, y)) == self.rhs(x)
            }
        }
    }

    pub fn neg(&self, p: &Point<F::Elem>) -> Point<F::Elem> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), self.field.neg(y)),
        }
    }

    fn from_slope(&self, lambda: &F::Elem, x1: &F::Elem, y1: &F::Elem, x2: &F::Elem) -> Point<F::Elem> {
        let k = self.field;
        let x3 = k.sub(&k.sub(&k.sub(&k.mul(&self.d, &k.mul(lambda, lambda)), &self.a2), x1), x2);
        let y3 = k.sub(&k.mul(lambda, &k.sub(x1, &x3)), y1);
        Point::Affine(x3, y3)
    }

    pub fn double(&self, p: &Point<F::Elem>) -> Point<F::Elem> {
        let k = self.field;
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                if k.is_zero(y) {
                    return Point::Infinity;
                }
                let denom = k.mul(&k.from_int(2), &k.mul(&self.d, y));
                let inv = k.inv(&denom).expect("2dy is a unit");
                let lambda = k.mul(&self.rhs_derivative(x), &inv);
                self.from_slope(&lambda, x, y, x)
            }
        }
    }

    pub fn add(&self, p: &Point<F::Elem>, q: &Point<F::Elem>) -> Point<F::Elem> {
        let k = self.field;
        match (p, q) {
            (Point::Infinity, _) => q.clone(),
            (_, Point::Infinity) => p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => {
                if x1 == x2 {
                    if y1 == y2 {
                        return self.double(p);
                    }
                    return Point::Infinity;
                }
                let inv = k.inv(&k.sub(x2, x1)).expect("distinct x");
                let lambda = k.mul(&k.sub(y2, y1), &inv);
                self.from_slope(&lambda, x1, y1, x2)
            }
        }
    }

    pub fn sub(&self, p: &Point<F::Elem>, q: &Point<F::Elem>) -> Point<F::Elem> {
        self.add(p, &self.neg(q))
    }

    pub fn mul(&self, n: i64, p: &Point<F::Elem>) -> Point<F::Elem> {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut run = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &run);
            }
            e >>= 1;
            if e > 0 {
                run = self.double(&run);
            }
        }
        acc
    }
}

/// The three roots of the cubic, in the canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoTorsion {
    pub roots: [FieldElement; 3],
}

#[derive(Clone, PartialEq, Eq)]
pub struct EllipticCurveModel {
    base: FiniteField,
    pub a2: FieldElement,
    pub a4: FieldElement,
    pub a6: FieldElement,
}

impl fmt::Debug for EllipticCurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + {:?}x^2 + {:?}x + {:?} over {:?}", self.a2, self.a4, self.a6, self.base)
    }
}

impl EllipticCurveModel {
    pub fn new(
        base: &FiniteField,
        a2: FieldElement,
        a4: FieldElement,
        a6: FieldElement,
    ) -> Result<EllipticCurveModel, EllipticError> {
        for c in [a2, a4, a6] {
            if !base.contains(c) {
                return Err(FieldError::NotInField(c.packed() as u64).into());
            }
        }
        let e = EllipticCurveModel { base: base.clone(), a2, a4, a6 };
        if e.discriminant().is_zero() {
            return Err(EllipticError::Singular);
        }
        Ok(e)
    }

    pub fn from_ints(base: &FiniteField, a2: i64, a4: i64, a6: i64) -> Result<EllipticCurveModel, EllipticError> {
        EllipticCurveModel::new(base, base.from_int(a2), base.from_int(a4), base.from_int(a6))
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn coefficients(&self) -> [FieldElement; 3] {
        [self.a2, self.a4, self.a6]
    }

    pub fn cubic(&self) -> Poly {
        Poly::from_coeffs(vec![self.a6, self.a4, self.a2, FieldElement::ONE])
    }

    pub fn law(&self) -> GroupLaw<'_, FiniteField> {
        GroupLaw { field: &self.base, d: FieldElement::ONE, a2: self.a2, a4: self.a4, a6: self.a6 }
    }

    /// `(b2, b4, b6, b8)` of the long Weierstrass form with `a1 = a3 = 0`.
    pub fn b_invariants(&self) -> [FieldElement; 4] {
        let k = &self.base;
        let b2 = k.mul(k.from_int(4), self.a2);
        let b4 = k.mul(k.from_int(2), self.a4);
        let b6 = k.mul(k.from_int(4), self.a6);
        let b8 = k.sub(k.mul(b2, self.a6), k.square(self.a4));
        [b2, b4, b6, b8]
    }

    pub fn discriminant(&self) -> FieldElement {
        let k = &self.base;
        let [b2, b4, b6, b8] = self.b_invariants();
        let t1 = k.neg(k.mul(k.square(b2), b8));
        let t2 = k.mul(k.from_int(8), k.mul(k.square(b4), b4));
        let t3 = k.mul(k.from_int(27), k.square(b6));
        let t4 = k.mul(k.from_int(9), k.mul(b2, k.mul(b4, b6)));
        k.add(k.sub(k.sub(t1, t2), t3), t4)
    }

    pub fn c4(&self) -> FieldElement {
        let k = &self.base;
        let [b2, b4, _, _] = self.b_invariants();
        k.sub(k.square(b2), k.mul(k.from_int(24), b4))
    }

    pub fn j_invariant(&self) -> FieldElement {
        let k = &self.base;
        let c4 = self.c4();
        k.div(k.mul(k.square(c4), c4), self.discriminant()).expect("smooth model")
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        self.law().contains(p)
    }

    fn check(&self, p: &CurvePoint) -> Result<(), EllipticError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(EllipticError::OffCurve)
        }
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint, EllipticError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.law().add(p, q))
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        self.law().neg(p)
    }

    pub fn scalar_mul(&self, n: i64, p: &CurvePoint) -> Result<CurvePoint, EllipticError> {
        self.check(p)?;
        Ok(self.law().mul(n, p))
    }

    /// A point with the given x-coordinate, taking the canonical square root.
    pub fn lift_x(&self, x: FieldElement) -> Option<CurvePoint> {
        let r = self.law().rhs(&x);
        self.base.sqrt(r).ok().map(|y| Point::Affine(x, y))
    }

    /// All rational points, sorted with Infinity first.
    pub fn points(&self) -> Vec<CurvePoint> {
        let k = &self.base;
        let mut out = vec![Point::Infinity];
        for x in k.elements() {
            if let Some(Point::Affine(_, y)) = self.lift_x(x) {
                out.push(Point::Affine(x, y));
                if !y.is_zero() {
                    out.push(Point::Affine(x, k.neg(y)));
                }
            }
        }
        out[1..].sort();
        out
    }

    /// A random affine point, or infinity when there is none.
    pub fn random_point(&self, rng: &mut impl Rng) -> CurvePoint {
        let q = self.base.cardinality();
        for _ in 0..64 {
            let x = FieldElement(rng.gen_range(0..q) as u32);
            if let Some(Point::Affine(x, y)) = self.lift_x(x) {
                let y = if rng.gen_bool(0.5) { self.base.neg(y) } else { y };
                return Point::Affine(x, y);
            }
        }
        // few affine points, or none at all
        let xs: Vec<FieldElement> = self.base.elements().filter(|&x| self.lift_x(x).is_some()).collect();
        if xs.is_empty() {
            return Point::Infinity;
        }
        let Some(Point::Affine(x, y)) = self.lift_x(xs[rng.gen_range(0..xs.len())]) else { unreachable!() };
        Point::Affine(x, if rng.gen_bool(0.5) { self.base.neg(y) } else { y })
    }

    /// `#E(F_{q^m})` by a character sum.
    pub fn count_points(&self, m: u32) -> Result<u64, EllipticError> {
        if m == 1 {
            return self.count_points_over(&Embedding::identity(&self.base));
        }
        let size = (self.base.cardinality() as u128).pow(m);
        if size > COUNT_GUARD as u128 {
            return Err(EllipticError::GuardExceeded { size: size.min(u64::MAX as u128) as u64 });
        }
        let ext = make_field(self.base.characteristic() as u64, self.base.degree() * m)?;
        self.count_points_over(&Embedding::canonical(&self.base, &ext)?)
    }

    /// `#E(L)` for the target `L` of an embedding of the base field.
    pub fn count_points_over(&self, emb: &Embedding) -> Result<u64, EllipticError> {
        let size = emb.target().cardinality();
        if size > COUNT_GUARD {
            return Err(EllipticError::GuardExceeded { size });
        }
        let f = emb.embed_poly(&self.cubic());
        Ok((1 + size as i64 + character_sum(emb.target(), &f)) as u64)
    }

    /// Frobenius trace and whether it is prime to `p`.
    pub fn trace_and_ordinary(&self) -> (i64, bool) {
        let n = self.count_points(1).expect("base field within the guard");
        let t = self.base.cardinality() as i64 + 1 - n as i64;
        (t, t.rem_euclid(self.base.characteristic() as i64) != 0)
    }

    pub fn full_two_torsion(&self) -> Option<TwoTorsion> {
        let k = &self.base;
        let rs: Vec<FieldElement> = if k.cardinality() <= 1024 {
            let f = self.cubic();
            k.elements().filter(|&x| f.eval(k, x).is_zero()).collect()
        } else {
            factor::roots(k, &self.cubic())
        };
        (rs.len() == 3).then(|| TwoTorsion { roots: [rs[0], rs[1], rs[2]] })
    }

    /// Whether all of `E[4]` is rational: every difference of two 2-torsion
    /// abscissae must be a square.
    pub fn has_rational_four_torsion(&self) -> bool {
        let Some(t) = self.full_two_torsion() else { return false };
        let k = &self.base;
        (0..3).all(|i| (0..3).all(|j| i == j || k.is_square(k.sub(t.roots[i], t.roots[j]))))
    }

    /// The model `d y^2 = f(x)` rewritten as `y^2 = x^3 + d a2 x^2 + d^2 a4 x + d^3 a6`.
    pub fn quadratic_twist(&self, d: FieldElement) -> Result<EllipticCurveModel, EllipticError> {
        let k = &self.base;
        let d2 = k.square(d);
        EllipticCurveModel::new(k, k.mul(d, self.a2), k.mul(d2, self.a4), k.mul(k.mul(d2, d), self.a6))
    }

    pub fn base_change(&self, emb: &Embedding) -> EllipticCurveModel {
        EllipticCurveModel {
            base: emb.target().clone(),
            a2: emb.embed(self.a2),
            a4: emb.embed(self.a4),
            a6: emb.embed(self.a6),
        }
    }

    /// `psi_n` for odd `n >= 3` prime to `p`.
    pub fn division_polynomial(&self, n: u64) -> Result<Poly, EllipticError> {
        if n < 3 || n % 2 == 0 || n % self.base.characteristic() as u64 == 0 {
            return Err(EllipticError::BadDivisionIndex { n });
        }
        Ok(self.division_polynomial_any(n))
    }

    /// `psi_n` for odd `n >= 1` without the coprimality check. When `p | n`
    /// the result is still the polynomial whose roots are the abscissae of
    /// the nonzero points killed by `n`, with inseparable multiplicities.
    pub fn division_polynomial_any(&self, n: u64) -> Poly {
        assert!(n % 2 == 1, "odd index");
        self.division_sequence(n as usize).swap_remove(n as usize)
    }

    /// `f_0, ..., f_n` with `psi_m = f_m` for odd `m` and `psi_m = 2y f_m`
    /// for even `m`.
    fn division_sequence(&self, n: usize) -> Vec<Poly> {
        let k = &self.base;
        let c = |v: i64| k.from_int(v);
        let [b2, b4, b6, b8] = self.b_invariants();
        let (a2, a4, a6) = (self.a2, self.a4, self.a6);
        let big_f = self.cubic().scale(k, c(4));
        let f2 = big_f.square(k);
        let mut fs = vec![Poly::zero(), Poly::one(), Poly::one()];
        fs.push(Poly::from_coeffs(vec![
            k.sub(k.mul(c(4), k.mul(a2, a6)), k.square(a4)),
            k.mul(c(12), a6),
            k.mul(c(6), a4),
            k.mul(c(4), a2),
            c(3),
        ]));
        fs.push(Poly::from_coeffs(vec![
            k.sub(k.mul(b4, b8), k.square(b6)),
            k.sub(k.mul(b2, b8), k.mul(b4, b6)),
            k.mul(c(10), b8),
            k.mul(c(10), b6),
            k.mul(c(5), b4),
            b2,
            c(2),
        ]));
        for i in 5..=n {
            let m = i / 2;
            let next = if i % 2 == 1 {
                let left = fs[m + 2].mul(k, &fs[m].pow(k, 3));
                let right = fs[m - 1].mul(k, &fs[m + 1].pow(k, 3));
                if m % 2 == 0 {
                    f2.mul(k, &left).sub(k, &right)
                } else {
                    left.sub(k, &f2.mul(k, &right))
                }
            } else {
                let inner = fs[m + 2]
                    .mul(k, &fs[m - 1].square(k))
                    .sub(k, &fs[m - 2].mul(k, &fs[m + 1].square(k)));
                fs[m].mul(k, &inner)
            };
            fs.push(next);
        }
        fs.truncate(n + 1);
        fs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::ResidueField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64, n: u32) -> FiniteField {
        make_field(p, n).unwrap()
    }

    fn pt(k: &FiniteField, x: i64, y: i64) -> CurvePoint {
        Point::Affine(k.from_int(x), k.from_int(y))
    }

    #[test]
    fn add_examples() {
        let k = f(5, 1);
        let e = EllipticCurveModel::from_ints(&k, 0, 1, 0).unwrap();
        assert_eq!(e.add(&pt(&k, 2, 0), &pt(&k, 3, 0)).unwrap(), pt(&k, 0, 0));
        let p = e.points()[3];
        assert_eq!(e.add(&p, &Point::Infinity).unwrap(), p);
        assert_eq!(e.add(&p, &e.neg(&p)).unwrap(), Point::Infinity);
        assert_eq!(e.add(&pt(&k, 1, 1), &p), Err(EllipticError::OffCurve));
        for p in e.points() {
            assert_eq!(e.scalar_mul(4, &p).unwrap(), Point::Infinity);
        }
        assert_eq!(e.scalar_mul(0, &p).unwrap(), Point::Infinity);
        assert_eq!(e.scalar_mul(1, &p).unwrap(), p);
    }

    #[test]
    fn count_examples() {
        let f5 = f(5, 1);
        let f3 = f(3, 1);
        let e = EllipticCurveModel::from_ints(&f5, 0, 1, 0).unwrap();
        assert_eq!(e.count_points(1).unwrap(), 4);
        assert_eq!(e.trace_and_ordinary(), (2, true));
        let s = EllipticCurveModel::from_ints(&f3, 0, 1, 2).unwrap();
        assert_eq!(s.count_points(1).unwrap(), 4);
        assert_eq!(s.trace_and_ordinary(), (0, false));
        let o = EllipticCurveModel::from_ints(&f3, 1, 0, 2).unwrap();
        assert_eq!(o.count_points(1).unwrap(), 3);
        assert_eq!(o.trace_and_ordinary(), (1, true));
        assert!(matches!(o.count_points(17), Err(EllipticError::GuardExceeded { .. })));
    }

    #[test]
    fn counts_match_enumeration_and_hasse() {
        for (p, n) in [(3, 1), (3, 2), (5, 1), (7, 1), (5, 2), (7, 2), (3, 4)] {
            let k = f(p, n);
            let q = k.cardinality() as i64;
            for (a2, a4, a6) in [(0, 1, 1), (1, 0, 2), (1, 2, 1), (2, 1, 1)] {
                let Ok(e) = EllipticCurveModel::from_ints(&k, a2, a4, a6) else { continue };
                let n1 = e.count_points(1).unwrap() as i64;
                assert_eq!(n1, e.points().len() as i64);
                let t = q + 1 - n1;
                assert!(t * t <= 4 * q);
                if q * q <= 10_000 {
                    let ext = f(p, 2 * n);
                    let emb = Embedding::canonical(&k, &ext).unwrap();
                    assert_eq!(e.count_points(2).unwrap(), e.base_change(&emb).points().len() as u64);
                    assert_eq!(e.count_points(2).unwrap() as i64, q * q + 1 - (t * t - 2 * q));
                }
            }
        }
    }

    #[test]
    fn group_axioms_exhaustive() {
        for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (7, 2)] {
            let k = f(p, n);
            for (a2, a4, a6) in [(1, 0, 1), (0, 1, 1), (1, 1, 2)] {
                let Ok(e) = EllipticCurveModel::from_ints(&k, a2, a4, a6) else { continue };
                let law = e.law();
                let pts = e.points();
                let order = pts.len() as i64;
                for a in &pts {
                    assert_eq!(law.add(a, &law.neg(a)), Point::Infinity);
                    assert_eq!(law.mul(order, a), Point::Infinity);
                    for b in &pts {
                        let ab = law.add(a, b);
                        assert!(e.contains(&ab));
                        assert_eq!(ab, law.add(b, a));
                    }
                }
                if pts.len() <= 30 {
                    for a in &pts {
                        for b in &pts {
                            for c in &pts {
                                assert_eq!(law.add(&law.add(a, b), c), law.add(a, &law.add(b, c)));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn j_invariant_examples() {
        let f5 = f(5, 1);
        let e = EllipticCurveModel::from_ints(&f5, 0, 1, 0).unwrap();
        assert_eq!(e.j_invariant(), f5.from_int(3));
        let f7 = f(7, 1);
        assert_eq!(EllipticCurveModel::from_ints(&f7, 0, 0, 1).unwrap().j_invariant(), FieldElement::ZERO);
        let e = EllipticCurveModel::from_ints(&f7, 1, 2, 4).unwrap();
        for u in 1..7 {
            let u = f7.from_int(u);
            let u2 = f7.square(u);
            let scaled = EllipticCurveModel::new(
                &f7,
                f7.mul(u2, e.a2),
                f7.mul(f7.square(u2), e.a4),
                f7.mul(f7.mul(u2, f7.square(u2)), e.a6),
            )
            .unwrap();
            assert_eq!(scaled.j_invariant(), e.j_invariant());
            assert_eq!(e.quadratic_twist(u).unwrap().j_invariant(), e.j_invariant());
        }
        // characteristic 3: y^2 = x^3 + x^2 + 2 has j = -1/a6 = 1
        let f3 = f(3, 1);
        assert_eq!(EllipticCurveModel::from_ints(&f3, 1, 0, 2).unwrap().j_invariant(), f3.from_int(1));
    }

    #[test]
    fn two_torsion_examples() {
        let f5 = f(5, 1);
        let e = EllipticCurveModel::from_ints(&f5, 0, -1, 0).unwrap();
        assert_eq!(e.full_two_torsion().unwrap().roots, [0, 1, 4].map(|v| f5.from_int(v)));
        let e = EllipticCurveModel::from_ints(&f5, 0, 1, 0).unwrap();
        assert_eq!(e.full_two_torsion().unwrap().roots, [0, 2, 3].map(|v| f5.from_int(v)));
        let f3 = f(3, 1);
        assert!(EllipticCurveModel::from_ints(&f3, 0, 1, 0).unwrap().full_two_torsion().is_none());
    }

    #[test]
    fn singular_rejected() {
        let k = f(5, 1);
        assert_eq!(EllipticCurveModel::from_ints(&k, 0, 0, 0), Err(EllipticError::Singular));
        assert_eq!(EllipticCurveModel::from_ints(&k, 1, 0, 0), Err(EllipticError::Singular));
    }

    #[test]
    fn four_torsion_by_enumeration() {
        for (p, n) in [(5, 1), (13, 1), (3, 2), (5, 2), (17, 1)] {
            let k = f(p, n);
            for lambda in k.elements().skip(2) {
                let a2 = k.neg(k.add(FieldElement::ONE, lambda));
                let Ok(e) = EllipticCurveModel::new(&k, a2, lambda, FieldElement::ZERO) else { continue };
                let pts = e.points();
                let four = pts.iter().filter(|q| e.law().mul(4, q).is_infinity()).count();
                assert_eq!(e.has_rational_four_torsion(), four == 16, "{e:?}");
            }
        }
    }

    #[test]
    fn division_polynomial_degrees() {
        let k = f(7, 1);
        let e = EllipticCurveModel::from_ints(&k, 1, 2, 4).unwrap();
        assert_eq!(e.division_polynomial(3).unwrap().degree(), Some(4));
        assert_eq!(e.division_polynomial(5).unwrap().degree(), Some(12));
        assert!(e.division_polynomial(7).is_err());
        assert!(e.division_polynomial(4).is_err());
        let k = f(5, 1);
        let e = EllipticCurveModel::from_ints(&k, 0, 1, 0).unwrap();
        assert_eq!(e.division_polynomial(3).unwrap(), Poly::from_ints(&k, &[4, 0, 1, 0, 3]));
        assert_eq!(e.division_polynomial(7).unwrap().degree(), Some(24));
    }

    /// Every root of `psi_n` is the abscissa of a point of exact order `n`.
    #[test]
    fn division_polynomial_roots_have_order_n() {
        let cases = [(5, 1, (0, 1, 0)), (7, 1, (1, 2, 4)), (3, 1, (1, 0, 2)), (3, 2, (1, 1, 1)), (11, 1, (0, 3, 5))];
        for (p, deg, (a2, a4, a6)) in cases {
            let k = f(p, deg);
            let e = EllipticCurveModel::from_ints(&k, a2, a4, a6).unwrap();
            for n in [3u64, 5, 7] {
                if n % p == 0 {
                    continue;
                }
                let psi = e.division_polynomial(n).unwrap();
                for (g, mult) in factor::factor(&k, &psi) {
                    assert_eq!(mult, 1);
                    let r = ResidueField::new(&k, &g);
                    let xi = r.generator();
                    let c = |v: FieldElement| Poly::constant(v);
                    let probe = GroupLaw { field: &r, d: r.one(), a2: c(e.a2), a4: c(e.a4), a6: c(e.a6) };
                    let d = probe.rhs(&xi);
                    let law = GroupLaw { field: &r, d, ..probe };
                    let point = Point::Affine(xi, r.one());
                    assert!(law.contains(&point));
                    assert!(law.mul(n as i64, &point).is_infinity());
                    for j in 1..n as i64 {
                        assert!(!law.mul(j, &point).is_infinity());
                    }
                }
            }
        }
    }

    #[test]
    fn characteristic_p_division_polynomial_is_inseparable() {
        // ordinary curve over F_3: psi_3 is a cube of a linear polynomial
        let k = f(3, 1);
        let e = EllipticCurveModel::from_ints(&k, 1, 0, 2).unwrap();
        let psi = e.division_polynomial_any(3);
        let parts = factor::factor(&k, &psi);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0.degree(), Some(1));
        assert_eq!(parts[0].1, 3);
    }

    #[test]
    fn random_points_lie_on_curve() {
        let k = f(3, 5);
        let e = EllipticCurveModel::from_ints(&k, 1, 1, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = e.count_points(1).unwrap() as i64;
        for _ in 0..20 {
            let p = e.random_point(&mut rng);
            assert!(e.contains(&p));
            assert!(e.law().mul(n, &p).is_infinity());
        }
    }
}
