//! Rational cyclic kernels of prime order, their Frobenius character, and
//! the quotient isogeny by Vélu's formulas.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::elliptic::{EllipticCurveModel, EllipticError, GroupLaw, Point};
use crate::finite_field::{factor, is_prime, FieldElement, FieldOps, FiniteField, Poly, RationalFunction, ResidueField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsogenyError {
    #[error("ell = {0} must be an odd prime")]
    NotOddPrime(u64),
    #[error("ell equals the characteristic; enable the characteristic-ell mode to allow it")]
    EllEqualsP,
    #[error("polynomial is not the kernel polynomial of a rational cyclic subgroup of order {ell}")]
    NotAKernel { ell: u64 },
    #[error("codomain is singular")]
    SingularCodomain,
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
}

/// A Galois-stable cyclic subgroup of order `ell` of `domain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelData {
    pub domain: EllipticCurveModel,
    pub ell: u64,
    pub kernel_poly: Poly,
    /// `chi` with `Frob(P) = chi * P` on the kernel.
    pub chi: u64,
    /// Degree of the field of definition of a kernel point; equals `ord(chi)`.
    pub point_field_degree: u64,
}

impl KernelData {
    pub fn frobenius_character_order(&self) -> u64 {
        self.point_field_degree
    }

    /// `ell` stable kernel in the inert case: `ord(chi) = ell - 1`.
    pub fn is_inert(&self) -> bool {
        self.point_field_degree == self.ell - 1
    }
}

/// The isogeny `(x, y) -> (u(x), y v(x))` with `u = N/M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyData {
    pub domain: EllipticCurveModel,
    pub codomain: EllipticCurveModel,
    pub ell: u64,
    pub kernel_poly: Poly,
    pub u: RationalFunction,
    pub y_map_factor: RationalFunction,
}

impl IsogenyData {
    pub fn n(&self) -> &Poly {
        self.u.numerator()
    }

    pub fn m(&self) -> &Poly {
        self.u.denominator()
    }
}

pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * a % n;
        k += 1;
        assert!(k <= n, "{a} is not a unit mod {n}");
    }
    k
}

fn check_ell(e: &EllipticCurveModel, ell: u64, allow_ell_eq_p: bool) -> Result<(), IsogenyError> {
    if ell < 3 || ell % 2 == 0 || !is_prime(ell) {
        return Err(IsogenyError::NotOddPrime(ell));
    }
    if !allow_ell_eq_p && ell == e.base().characteristic() as u64 {
        return Err(IsogenyError::EllEqualsP);
    }
    Ok(())
}

struct Orbit {
    kernel_poly: Poly,
    chi: u64,
}

/// Works in `R = F_q[x]/(g)` with `xi` the class of `x`: the point
/// `(xi, 1)` lies on the twist `f(xi) y^2 = f(x)`, which is `E` over
/// `R(sqrt f(xi))`. Returns the kernel polynomial of the subgroup it
/// generates when that polynomial is rational.
fn orbit_of_factor(e: &EllipticCurveModel, ell: u64, g: &Poly) -> Option<Orbit> {
    let k = e.base();
    let half = (ell - 1) / 2;
    if g.degree()? as u64 > half {
        return None;
    }
    let r = ResidueField::new(k, g);
    let xi = r.generator();
    let lift = |c: FieldElement| Poly::constant(c);
    let d = r.reduce(&e.cubic().compose(k, &xi));
    let law = GroupLaw { field: &r, d: d.clone(), a2: lift(e.a2), a4: lift(e.a4), a6: lift(e.a6) };
    let p = Point::Affine(xi.clone(), r.one());
    let mut multiples = Vec::with_capacity(half as usize);
    let mut acc = p.clone();
    for i in 1..=half {
        if i > 1 {
            acc = law.add(&acc, &p);
        }
        match &acc {
            Point::Affine(x, y) => multiples.push((x.clone(), y.clone())),
            Point::Infinity => return None,
        }
    }
    // prod (X - x_i) over R; rational iff every coefficient is constant
    let mut coeffs: Vec<Poly> = vec![r.one()];
    for (x, _) in &multiples {
        let mut next = vec![r.zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = r.add(&next[i + 1], c);
            next[i] = r.sub(&next[i], &r.mul(c, x));
        }
        coeffs = next;
    }
    let kernel_poly = Poly::from_coeffs(coeffs.iter().map(|c| r.as_base(c)).collect::<Option<Vec<_>>>()?);
    let xi_q = r.frobenius(&xi);
    let norm_sign = r.pow_big(&d, &((num_bigint::BigUint::from(k.cardinality()) - 1u32) / 2u32));
    let (i, (_, y)) = multiples.iter().enumerate().find(|(_, (x, _))| *x == xi_q)?;
    let i = i as u64 + 1;
    let chi = if *y == norm_sign { i } else { ell - i };
    Some(Orbit { kernel_poly, chi })
}

/// One entry per Galois-stable cyclic subgroup of order `ell`, sorted by
/// kernel polynomial. `ell` must differ from the characteristic.
pub fn enumerate_rational_kernels(e: &EllipticCurveModel, ell: u64) -> Result<Vec<KernelData>, IsogenyError> {
    enumerate_rational_kernels_with(e, ell, false)
}

/// As [`enumerate_rational_kernels`]; with `allow_ell_eq_p` the étale
/// subgroup of order `p` of an ordinary curve is returned as well.
pub fn enumerate_rational_kernels_with(
    e: &EllipticCurveModel,
    ell: u64,
    allow_ell_eq_p: bool,
) -> Result<Vec<KernelData>, IsogenyError> {
    check_ell(e, ell, allow_ell_eq_p)?;
    let k = e.base();
    let psi = e.division_polynomial_any(ell);
    if psi.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let mut found: BTreeMap<Poly, u64> = BTreeMap::new();
    for (g, _) in factor::factor(k, &factor::squarefree_part(k, &psi)) {
        if found.keys().any(|m| m.divides(k, &g)) {
            continue;
        }
        if let Some(o) = orbit_of_factor(e, ell, &g) {
            found.insert(o.kernel_poly, o.chi);
        }
    }
    Ok(found
        .into_iter()
        .map(|(kernel_poly, chi)| KernelData {
            domain: e.clone(),
            ell,
            kernel_poly,
            chi,
            point_field_degree: multiplicative_order(chi, ell),
        })
        .collect())
}

/// Recomputes the kernel data of a claimed kernel polynomial, failing if it
/// is not the kernel polynomial of a rational cyclic subgroup.
pub fn kernel_from_poly(
    e: &EllipticCurveModel,
    ell: u64,
    kernel_poly: &Poly,
    allow_ell_eq_p: bool,
) -> Result<KernelData, IsogenyError> {
    check_ell(e, ell, allow_ell_eq_p)?;
    let k = e.base();
    let not_kernel = IsogenyError::NotAKernel { ell };
    if !kernel_poly.is_monic() || kernel_poly.degree() != Some(((ell - 1) / 2) as usize) {
        return Err(not_kernel);
    }
    let psi = e.division_polynomial_any(ell);
    if psi.is_zero() || !kernel_poly.divides(k, &psi) || !kernel_poly.is_squarefree(k) {
        return Err(not_kernel);
    }
    let (g, _) = factor::factor(k, kernel_poly).into_iter().next().ok_or(not_kernel.clone())?;
    let o = orbit_of_factor(e, ell, &g).ok_or(not_kernel.clone())?;
    if &o.kernel_poly != kernel_poly {
        return Err(not_kernel);
    }
    Ok(KernelData {
        domain: e.clone(),
        ell,
        kernel_poly: o.kernel_poly,
        chi: o.chi,
        point_field_degree: multiplicative_order(o.chi, ell),
    })
}

/// The scalar by which Frobenius acts on the kernel.
pub fn frobenius_character(kernel: &KernelData) -> u64 {
    let k = kernel.domain.base();
    let (g, _) = factor::factor(k, &kernel.kernel_poly).into_iter().next().expect("non-constant kernel polynomial");
    orbit_of_factor(&kernel.domain, kernel.ell, &g).expect("valid kernel").chi
}

/// Power sums `p_1, p_2, p_3` of the roots of a monic polynomial.
fn power_sums(k: &FiniteField, m: &Poly) -> [FieldElement; 3] {
    let d = m.degree().expect("nonzero");
    let e = |i: usize| -> FieldElement {
        if i > d {
            return FieldElement::ZERO;
        }
        let c = m.coeff(d - i);
        if i % 2 == 1 {
            k.neg(c)
        } else {
            c
        }
    };
    let p1 = e(1);
    let p2 = k.sub(k.mul(e(1), p1), k.mul(k.from_int(2), e(2)));
    let p3 = k.add(k.sub(k.mul(e(1), p2), k.mul(e(2), p1)), k.mul(k.from_int(3), e(3)));
    [p1, p2, p3]
}

/// The quotient by the kernel, normalized so that the invariant
/// differential pulls back to itself.
pub fn velu(kernel: &KernelData) -> Result<IsogenyData, IsogenyError> {
    let e = &kernel.domain;
    let k = e.base();
    let c = |v: i64| k.from_int(v);
    let m = &kernel.kernel_poly;
    let d = m.degree().expect("nonzero") as i64;
    let [p1, p2, p3] = power_sums(k, m);
    let (a2, a4, a6) = (e.a2, e.a4, e.a6);
    let v = k.add(k.add(k.mul(c(6), p2), k.mul(k.mul(c(4), a2), p1)), k.mul(c(2 * d), a4));
    let w = [k.mul(c(10), p3), k.mul(k.mul(c(8), a2), p2), k.mul(k.mul(c(6), a4), p1), k.mul(c(4 * d), a6)]
        .into_iter()
        .fold(FieldElement::ZERO, |s, t| k.add(s, t));
    let big_a4 = k.sub(a4, k.mul(c(5), v));
    let big_a6 = k.sub(k.sub(a6, k.mul(k.mul(c(4), a2), v)), k.mul(c(7), w));
    let codomain = EllipticCurveModel::new(k, a2, big_a4, big_a6).map_err(|_| IsogenyError::SingularCodomain)?;

    let f = e.cubic();
    let m1 = m.derivative(k);
    let m2 = m1.derivative(k);
    let lin = Poly::from_coeffs(vec![k.mul(c(-2), p1), c(2 * d + 1)]);
    let n = lin
        .mul(k, &m.square(k))
        .add(k, &f.scale(k, c(4)).mul(k, &m1.square(k).sub(k, &m.mul(k, &m2))))
        .sub(k, &f.derivative(k).scale(k, c(2)).mul(k, &m1.mul(k, m)));
    let u = RationalFunction::new(k, &n, &m.square(k)).expect("nonzero denominator");
    let y_map_factor = u.derivative(k);
    Ok(IsogenyData { domain: e.clone(), codomain, ell: kernel.ell, kernel_poly: m.clone(), u, y_map_factor })
}

/// Checks `x(phi(P)) = u(x(P))`: the symbolic identity
/// `f (N'M - NM')^2 = M F(N/M) M^3` (so `(u, y u')` maps the domain into the
/// codomain), the recomputation of `u` from the kernel, the degree
/// bookkeeping, and evaluation at the rational points of the domain.
pub fn check_cover_compatibility(iso: &IsogenyData) -> bool {
    let k = iso.domain.base();
    let (n, m) = (iso.n(), iso.m());
    let ell = iso.ell as usize;
    if n.degree() != Some(ell) || m.degree() != Some(ell - 1) || !n.gcd(k, m).is_one() {
        return false;
    }
    if m != &iso.kernel_poly.square(k) {
        return false;
    }
    let cod = &iso.codomain;
    let lhs = iso
        .domain
        .cubic()
        .mul(k, &n.derivative(k).mul(k, m).sub(k, &n.mul(k, &m.derivative(k))).square(k));
    let m2 = m.square(k);
    let rhs_inner = [
        n.pow(k, 3),
        n.square(k).mul(k, m).scale(k, cod.a2),
        n.mul(k, &m2).scale(k, cod.a4),
        m2.mul(k, m).scale(k, cod.a6),
    ]
    .iter()
    .fold(Poly::zero(), |s, t| s.add(k, t));
    if lhs != rhs_inner.mul(k, m) {
        return false;
    }
    if let Ok(kernel) = kernel_from_poly(&iso.domain, iso.ell, &iso.kernel_poly, true) {
        match velu(&kernel) {
            Ok(again) if again.u == iso.u && again.codomain == iso.codomain => {}
            _ => return false,
        }
    } else {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(iso.ell);
    (0..8).all(|_| {
        let p = iso.domain.random_point(&mut rng);
        match apply(iso, &p) {
            Some(img) => cod.contains(&img),
            None => true,
        }
    })
}

/// `phi(P)` for a rational point, `None` only if the y-factor has a pole
/// at a point outside the kernel (it cannot for a valid isogeny).
pub fn apply(iso: &IsogenyData, p: &Point<FieldElement>) -> Option<Point<FieldElement>> {
    let k = iso.domain.base();
    match p {
        Point::Infinity => Some(Point::Infinity),
        Point::Affine(x, y) => {
            if iso.m().eval(k, *x).is_zero() {
                return Some(Point::Infinity);
            }
            let ux = k.div(iso.n().eval(k, *x), iso.m().eval(k, *x)).ok()?;
            let num = iso.y_map_factor.numerator().eval(k, *x);
            let den = iso.y_map_factor.denominator().eval(k, *x);
            let vx = k.div(num, den).ok()?;
            Some(Point::Affine(ux, k.mul(*y, vx)))
        }
    }
}
