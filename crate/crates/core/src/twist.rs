//! The quadratic twist of an elliptic curve over `K(x)` by a hyperelliptic
//! extension `K(D) | K(x)`, and the rank bound it inherits.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::elliptic::{EllipticCurveModel, COUNT_GUARD};
use crate::finite_field::{FieldElement, FiniteField, Poly, RationalFunction};
use crate::zeta::SplitCertificate;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistError {
    #[error("twisting polynomial must be non-constant and squarefree")]
    BadTwistingPolynomial,
    #[error("curve and polynomial live over different fields")]
    FieldMismatch,
    #[error("certificate is not verified as an ordinary power: no rank bound")]
    Unverified,
}

/// `Y^2 = X^3 + A2(x) X^2 + A4(x) X + A6(x)` over `K(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionFieldCurve {
    pub base: FiniteField,
    pub a2: Poly,
    pub a4: Poly,
    pub a6: Poly,
}

impl FunctionFieldCurve {
    fn c4_and_discriminant(&self) -> (Poly, Poly) {
        let k = &self.base;
        let c = |v: i64| k.from_int(v);
        let b2 = self.a2.scale(k, c(4));
        let b4 = self.a4.scale(k, c(2));
        let b6 = self.a6.scale(k, c(4));
        let b8 = b2.mul(k, &self.a6).sub(k, &self.a4.square(k));
        let c4 = b2.square(k).sub(k, &b4.scale(k, c(24)));
        let disc = b2
            .square(k)
            .mul(k, &b8)
            .neg(k)
            .sub(k, &b4.pow(k, 3).scale(k, c(8)))
            .sub(k, &b6.square(k).scale(k, c(27)))
            .add(k, &b2.mul(k, &b4).mul(k, &b6).scale(k, c(9)));
        (c4, disc)
    }

    pub fn discriminant(&self) -> Poly {
        self.c4_and_discriminant().1
    }

    pub fn j_invariant(&self) -> RationalFunction {
        let k = &self.base;
        let (c4, disc) = self.c4_and_discriminant();
        RationalFunction::new(k, &c4.pow(k, 3), &disc).expect("nonzero discriminant")
    }

    /// `j` when it is a constant of `K`.
    pub fn constant_j(&self) -> Option<FieldElement> {
        let j = self.j_invariant();
        (j.denominator().is_one() && j.numerator().degree().unwrap_or(0) == 0).then(|| j.numerator().coeff(0))
    }
}

/// The twist of `y^2 = x^3 + a2 x^2 + a4 x + a6` by `h`:
/// `Y^2 = X^3 + a2 h X^2 + a4 h^2 X + a6 h^3`.
pub fn make_twist(e: &EllipticCurveModel, h: &Poly) -> Result<FunctionFieldCurve, TwistError> {
    let k = e.base();
    if h.degree().unwrap_or(0) == 0 || !h.is_squarefree(k) {
        return Err(TwistError::BadTwistingPolynomial);
    }
    if h.coeffs().iter().any(|&c| !k.contains(c)) {
        return Err(TwistError::FieldMismatch);
    }
    let h2 = h.square(k);
    Ok(FunctionFieldCurve {
        base: k.clone(),
        a2: h.scale(k, e.a2),
        a4: h2.scale(k, e.a4),
        a6: h2.mul(k, h).scale(k, e.a6),
    })
}

/// With `X = h s` the right-hand side becomes `h^3 (s^3 + a2 s^2 + a4 s + a6)`,
/// so `Y = h w y` with `w^2 = h` turns the twist into `y^2 = f(s)`: the
/// twist is isomorphic to `E` over `K(D)`. Checks that identity
/// coefficientwise in `s`.
pub fn twist_relation_holds(e: &EllipticCurveModel, h: &Poly, twist: &FunctionFieldCurve) -> bool {
    let k = e.base();
    let h3 = h.pow(k, 3);
    // coefficient of s^i in (h s)^3 + A2 (h s)^2 + A4 (h s) + A6
    let lhs = [twist.a6.clone(), twist.a4.mul(k, h), twist.a2.mul(k, &h.square(k)), h3.clone()];
    let rhs = [e.a6, e.a4, e.a2, FieldElement::ONE].map(|c| h3.scale(k, c));
    lhs.iter().zip(rhs.iter()).all(|(l, r)| l == r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankBound {
    pub bound: usize,
    pub provenance: String,
}

/// `rank >= g` for the twist of the elliptic factor by `D`, given a split
/// certificate for `D`.
pub fn rank_bound(cert: &SplitCertificate, provenance: &str) -> Result<RankBound, TwistError> {
    if !cert.ordinary || !cert.inert_shape_ok {
        return Err(TwistError::Unverified);
    }
    Ok(RankBound { bound: cert.l_over_k.g, provenance: provenance.to_string() })
}

/// The first curve `y^2 = x^3 + x^2 + a4 x + a6`, ordered by `(a4, a6)`, or
/// its quadratic twist by the smallest nonsquare, with Frobenius trace `t`.
/// Candidates are screened by checking that random points are killed by
/// `q + 1 - t` and then confirmed by an exact count.
pub fn find_curve_with_trace(k: &FiniteField, t: &BigInt) -> Option<EllipticCurveModel> {
    let q = k.cardinality();
    if q > COUNT_GUARD {
        return None;
    }
    let t = t.to_i64()?;
    let n = q as i64 + 1 - t;
    let n_twist = q as i64 + 1 + t;
    let nonsquare = k.smallest_nonsquare();
    let mut rng = ChaCha8Rng::seed_from_u64(q);
    for a4 in k.elements() {
        for a6 in k.elements() {
            let Ok(e) = EllipticCurveModel::new(k, FieldElement::ONE, a4, a6) else { continue };
            let points: Vec<_> = (0..3).map(|_| e.random_point(&mut rng)).collect();
            let killed_by = |m: i64| points.iter().all(|p| e.law().mul(m, p).is_infinity());
            let candidate = if killed_by(n) {
                e.clone()
            } else if killed_by(n_twist) {
                e.quadratic_twist(nonsquare).ok()?
            } else {
                continue;
            };
            if candidate.count_points(1).ok()? as i64 == n {
                return Some(candidate);
            }
        }
    }
    None
}
