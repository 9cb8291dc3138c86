//! Matching `E'` with `E` through their 2-torsion, the degenerate
//! configuration, and the hyperelliptic curves `D` and `D'` obtained from
//! fiber products with the x-line map `u` of an isogeny.

use thiserror::Error;

use crate::elliptic::EllipticCurveModel;
use crate::finite_field::{factor, FieldElement, FiniteField, P1Point, Poly, RationalFunction};
use crate::isogeny::IsogenyData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("2-torsion of {0} is not fully rational")]
    NotFullyRational(&'static str),
    #[error("pairing must be a permutation of 0, 1, 2")]
    BadPairing,
    #[error("interpolation points are not distinct")]
    RepeatedRoots,
    #[error("degenerate configuration: P' = P")]
    Degenerate,
    #[error("P' is the image of a 2-torsion point")]
    PPrimeInTwoTorsion,
    #[error("the fiber of u over P' is ramified: the branch polynomial is not squarefree")]
    NotSquarefreeDefect,
    #[error("frame does not belong to this isogeny")]
    FrameMismatch,
}

/// The six orderings of a triple, in lexicographic order. A pairing `s`
/// matches the `i`-th 2-torsion root of `E'` with the `s[i]`-th of `E`.
pub const PAIRINGS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn check_pairing(s: [usize; 3]) -> Result<(), ConstructError> {
    if PAIRINGS.contains(&s) {
        Ok(())
    } else {
        Err(ConstructError::BadPairing)
    }
}

/// `t -> (a t + b) / (c t + d)`, scaled so the first nonzero entry in
/// row-major order is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MobiusMap {
    pub matrix: [[FieldElement; 2]; 2],
}

impl MobiusMap {
    pub fn new(k: &FiniteField, m: [[FieldElement; 2]; 2]) -> Option<MobiusMap> {
        let det = k.sub(k.mul(m[0][0], m[1][1]), k.mul(m[0][1], m[1][0]));
        if det.is_zero() {
            return None;
        }
        let lead = [m[0][0], m[0][1], m[1][0], m[1][1]].into_iter().find(|v| !v.is_zero())?;
        let s = k.inv(lead).expect("nonzero");
        Some(MobiusMap { matrix: m.map(|row| row.map(|v| k.mul(v, s))) })
    }

    pub fn identity() -> MobiusMap {
        MobiusMap { matrix: [[FieldElement::ONE, FieldElement::ZERO], [FieldElement::ZERO, FieldElement::ONE]] }
    }

    pub fn is_identity(&self) -> bool {
        *self == MobiusMap::identity()
    }

    /// Whether the map fixes infinity, i.e. is affine.
    pub fn is_affine(&self) -> bool {
        self.matrix[1][0].is_zero()
    }

    pub fn apply(&self, k: &FiniteField, t: P1Point) -> P1Point {
        let [[a, b], [c, d]] = self.matrix;
        let (num, den) = match t {
            P1Point::Infinity => (a, c),
            P1Point::Finite(t) => (k.add(k.mul(a, t), b), k.add(k.mul(c, t), d)),
        };
        if den.is_zero() {
            P1Point::Infinity
        } else {
            P1Point::Finite(k.div(num, den).expect("nonzero"))
        }
    }

    /// `self after other`.
    pub fn compose(&self, k: &FiniteField, other: &MobiusMap) -> MobiusMap {
        let (x, y) = (self.matrix, other.matrix);
        let e = |i: usize, j: usize| k.add(k.mul(x[i][0], y[0][j]), k.mul(x[i][1], y[1][j]));
        MobiusMap::new(k, [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]).expect("invertible")
    }

    pub fn inverse(&self, k: &FiniteField) -> MobiusMap {
        let [[a, b], [c, d]] = self.matrix;
        MobiusMap::new(k, [[d, k.neg(b)], [k.neg(c), a]]).expect("invertible")
    }
}

/// The map sending `z1, z2, z3` to `0, 1, infinity`.
fn cross_ratio_map(k: &FiniteField, z: [FieldElement; 3]) -> Option<MobiusMap> {
    let a = k.sub(z[1], z[2]);
    let c = k.sub(z[1], z[0]);
    MobiusMap::new(k, [[a, k.neg(k.mul(z[0], a))], [c, k.neg(k.mul(z[2], c))]])
}

/// The unique Möbius map with `mu(from[i]) = to[i]`.
pub fn interpolate(k: &FiniteField, from: [FieldElement; 3], to: [FieldElement; 3]) -> Result<MobiusMap, ConstructError> {
    let a = cross_ratio_map(k, from).ok_or(ConstructError::RepeatedRoots)?;
    let b = cross_ratio_map(k, to).ok_or(ConstructError::RepeatedRoots)?;
    Ok(b.inverse(k).compose(k, &a))
}

/// The Möbius map sending the 2-torsion abscissae of `e_prime` to those of
/// `e` according to `pairing`.
pub fn mobius_matching(
    e: &EllipticCurveModel,
    e_prime: &EllipticCurveModel,
    pairing: [usize; 3],
) -> Result<MobiusMap, ConstructError> {
    check_pairing(pairing)?;
    let r = e.full_two_torsion().ok_or(ConstructError::NotFullyRational("E"))?.roots;
    let r_prime = e_prime.full_two_torsion().ok_or(ConstructError::NotFullyRational("E'"))?.roots;
    interpolate(e.base(), r_prime, pairing.map(|i| r[i]))
}

/// Whether some x-line isomorphism `t -> s t + r` carries the 2-torsion of
/// `e_prime` onto that of `e` as prescribed by `pairing`; over the algebraic
/// closure such maps are exactly the x-parts of isomorphisms `E' -> E`
/// fixing the origin and respecting the pairing. Searches all `s`.
pub fn brute_force_matching_isomorphism(
    e: &EllipticCurveModel,
    e_prime: &EllipticCurveModel,
    pairing: [usize; 3],
) -> bool {
    let k = e.base();
    let (Some(r), Some(r_prime)) = (e.full_two_torsion(), e_prime.full_two_torsion()) else { return false };
    let target = pairing.map(|i| r.roots[i]);
    k.elements().skip(1).any(|s| {
        let shift = k.sub(target[0], k.mul(s, r_prime.roots[0]));
        (1..3).all(|i| k.add(k.mul(s, r_prime.roots[i]), shift) == target[i])
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionFrame {
    pub e_tilde: EllipticCurveModel,
    pub e: EllipticCurveModel,
    pub e_prime: EllipticCurveModel,
    pub pairing: [usize; 3],
    pub mu: MobiusMap,
    /// Always infinity: the cover of the x-line is the x-coordinate map.
    pub p: P1Point,
    pub p_prime: P1Point,
}

impl ConstructionFrame {
    /// `c` with `P' = c`, when finite.
    pub fn c(&self) -> Option<FieldElement> {
        match self.p_prime {
            P1Point::Finite(c) => Some(c),
            P1Point::Infinity => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateReport {
    pub degenerate: bool,
    pub p_prime_in_two_torsion: bool,
    pub description: Option<String>,
}

pub const DEGENERATE_DESCRIPTION: &str =
    "P = P': the genus 2 fiber degenerates to two copies of E meeting at the origin";

pub fn compute_frame(
    iso: &IsogenyData,
    e_prime: &EllipticCurveModel,
    pairing: [usize; 3],
) -> Result<(ConstructionFrame, DegenerateReport), ConstructError> {
    let (mu, p_prime, report) = frame_parts(&iso.codomain, e_prime, pairing)?;
    let frame = ConstructionFrame {
        e_tilde: iso.domain.clone(),
        e: iso.codomain.clone(),
        e_prime: e_prime.clone(),
        pairing,
        mu,
        p: P1Point::Infinity,
        p_prime,
    };
    Ok((frame, report))
}

fn frame_parts(
    e: &EllipticCurveModel,
    e_prime: &EllipticCurveModel,
    pairing: [usize; 3],
) -> Result<(MobiusMap, P1Point, DegenerateReport), ConstructError> {
    let k = e.base();
    let mu = mobius_matching(e, e_prime, pairing)?;
    let p_prime = mu.apply(k, P1Point::Infinity);
    let degenerate = p_prime == P1Point::Infinity;
    let roots = e.full_two_torsion().expect("checked by the matching").roots;
    let p_prime_in_two_torsion = matches!(p_prime, P1Point::Finite(c) if roots.contains(&c));
    let report = DegenerateReport {
        degenerate,
        p_prime_in_two_torsion,
        description: degenerate.then(|| DEGENERATE_DESCRIPTION.to_string()),
    };
    Ok((mu, p_prime, report))
}

/// The degeneracy report for pairing the 2-torsion of `e_prime` with that
/// of `e`, without an isogeny.
pub fn degenerate_report(
    e: &EllipticCurveModel,
    e_prime: &EllipticCurveModel,
    pairing: [usize; 3],
) -> Result<DegenerateReport, ConstructError> {
    Ok(frame_parts(e, e_prime, pairing)?.2)
}

/// `y^2 = h(x)` with `h` squarefree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticModel {
    base: FiniteField,
    h: Poly,
}

impl HyperellipticModel {
    pub fn new(base: &FiniteField, h: &Poly) -> Option<HyperellipticModel> {
        (h.degree()? >= 3 && h.is_squarefree(base)).then(|| HyperellipticModel { base: base.clone(), h: h.clone() })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn genus(&self) -> usize {
        (self.h.degree().expect("nonzero") - 1) / 2
    }
}

fn usable_c(frame: &ConstructionFrame) -> Result<FieldElement, ConstructError> {
    let c = frame.c().ok_or(ConstructError::Degenerate)?;
    let roots = frame.e.full_two_torsion().ok_or(ConstructError::NotFullyRational("E"))?.roots;
    if roots.contains(&c) {
        return Err(ConstructError::PPrimeInTwoTorsion);
    }
    Ok(c)
}

fn check_frame(iso: &IsogenyData, frame: &ConstructionFrame) -> Result<(), ConstructError> {
    if frame.e != iso.codomain || frame.e_tilde != iso.domain {
        return Err(ConstructError::FrameMismatch);
    }
    Ok(())
}

/// `N - cM`, the branch polynomial of `D`.
pub fn branch_polynomial(k: &FiniteField, u: &RationalFunction, c: FieldElement) -> Poly {
    u.numerator().sub(k, &u.denominator().scale(k, c))
}

/// `D`: the normalization of the fiber product of `u` with the double cover
/// of the line branched over `P = infinity` and `P' = c`, i.e.
/// `w^2 = u(x) - c`, whose normalization is `y^2 = N - cM` since `M` is a
/// square.
pub fn build_d(iso: &IsogenyData, frame: &ConstructionFrame) -> Result<HyperellipticModel, ConstructError> {
    check_frame(iso, frame)?;
    let k = iso.domain.base();
    let c = usable_c(frame)?;
    let branch = branch_polynomial(k, &iso.u, c);
    let h = factor::odd_part(k, &branch.mul(k, iso.m()));
    if h != branch || !branch.is_squarefree(k) {
        return Err(ConstructError::NotSquarefreeDefect);
    }
    let model = HyperellipticModel::new(k, &h).ok_or(ConstructError::NotSquarefreeDefect)?;
    assert_eq!(h.degree(), Some(iso.ell as usize));
    assert_eq!(model.genus() as u64, (iso.ell - 1) / 2);
    Ok(model)
}

/// The quartic `w^2 = kappa (t - e1)(t - e2)(t - e3)(t - c)` on the E-side
/// x-line that is `E'` pulled back through `mu^{-1}`.
pub fn e_prime_quartic(k: &FiniteField, frame: &ConstructionFrame) -> Result<Poly, ConstructError> {
    let c = frame.c().ok_or(ConstructError::Degenerate)?;
    let r_prime = frame.e_prime.full_two_torsion().ok_or(ConstructError::NotFullyRational("E'"))?.roots;
    let [[a, b], [g, d]] = frame.mu.inverse(k).matrix;
    // y'^2 (g t + d)^4 = (g t + d) prod ((a - g e'_i) t + (b - d e'_i))
    let mut quartic = Poly::from_coeffs(vec![d, g]);
    for e in r_prime {
        quartic = quartic.mul(k, &Poly::from_coeffs(vec![k.sub(b, k.mul(d, e)), k.sub(a, k.mul(g, e))]));
    }
    debug_assert!(quartic.eval(k, c).is_zero());
    Ok(quartic)
}

/// `D'`: the normalization of the fiber product of `u` with the x-map of
/// `E'` transported by `mu`. Pulling the quartic back along `u` and
/// dropping squares gives a branch polynomial of degree `ell + 3`.
pub fn build_d_prime(iso: &IsogenyData, frame: &ConstructionFrame) -> Result<HyperellipticModel, ConstructError> {
    check_frame(iso, frame)?;
    let k = iso.domain.base();
    usable_c(frame)?;
    let quartic = e_prime_quartic(k, frame)?;
    let (n, m) = (iso.n(), iso.m());
    // quartic(N/M) M^4, homogenized
    let d = quartic.degree().expect("nonzero");
    let mut pulled = Poly::zero();
    for (i, &coeff) in quartic.coeffs().iter().enumerate() {
        let term = n.pow(k, i as u64).mul(k, &m.pow(k, (4 - i) as u64)).scale(k, coeff);
        pulled = pulled.add(k, &term);
    }
    debug_assert!(d == 4 || d == 3);
    let kappa = quartic.lead();
    let odd = factor::odd_part(k, &pulled);
    let h = odd.scale(k, kappa);
    let model = HyperellipticModel::new(k, &h).ok_or(ConstructError::NotSquarefreeDefect)?;
    let deg = h.degree().expect("nonzero");
    let g = model.genus();
    if g as u64 != (iso.ell + 1) / 2 || !(2 * g + 1..=2 * g + 2).contains(&deg) {
        return Err(ConstructError::NotSquarefreeDefect);
    }
    Ok(model)
}

/// Ramification indices of `u` over `t`, over the algebraic closure, sorted.
pub fn ramification_profile(k: &FiniteField, u: &RationalFunction, t: P1Point) -> Vec<usize> {
    let ell = u.degree();
    let fiber = match t {
        P1Point::Infinity => u.denominator().clone(),
        P1Point::Finite(c) => branch_polynomial(k, u, c),
    };
    let mut out = Vec::new();
    let finite_degree = fiber.degree().unwrap_or(0);
    if finite_degree > 0 {
        for (g, mult) in factor::factor(k, &fiber) {
            for _ in 0..g.degree().expect("nonzero") {
                out.push(mult);
            }
        }
    }
    if finite_degree < ell {
        out.push(ell - finite_degree);
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;
    use crate::isogeny::{enumerate_rational_kernels, velu};

    fn full_two_torsion_curves(k: &FiniteField) -> Vec<EllipticCurveModel> {
        let mut out = Vec::new();
        for a2 in k.elements() {
            for a4 in k.elements() {
                for a6 in k.elements() {
                    if let Ok(e) = EllipticCurveModel::new(k, a2, a4, a6) {
                        if e.full_two_torsion().is_some() {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn matching_examples() {
        let k = make_field(5, 1).unwrap();
        let e = EllipticCurveModel::from_ints(&k, 0, -1, 0).unwrap();
        let mu = mobius_matching(&e, &e, [0, 1, 2]).unwrap();
        assert!(mu.is_identity());

        let from = [0, 1, 2].map(|v| k.from_int(v));
        let to = [0, 2, 1].map(|v| k.from_int(v));
        let mu = interpolate(&k, from, to).unwrap();
        for i in 0..3 {
            assert_eq!(mu.apply(&k, P1Point::Finite(from[i])), P1Point::Finite(to[i]));
        }
        let back = interpolate(&k, to, from).unwrap();
        assert!(back.compose(&k, &mu).is_identity());
        assert!(interpolate(&k, [from[0], from[0], from[1]], to).is_err());
    }

    #[test]
    fn interpolation_is_unique() {
        let k = make_field(7, 1).unwrap();
        let from = [1, 3, 4].map(|v| k.from_int(v));
        let to = [2, 0, 6].map(|v| k.from_int(v));
        let mu = interpolate(&k, from, to).unwrap();
        let mut solutions = 0;
        for a in k.elements() {
            for b in k.elements() {
                for c in k.elements() {
                    for d in k.elements() {
                        let Some(m) = MobiusMap::new(&k, [[a, b], [c, d]]) else { continue };
                        if m.matrix != [[a, b], [c, d]] {
                            continue;
                        }
                        if (0..3).all(|i| m.apply(&k, P1Point::Finite(from[i])) == P1Point::Finite(to[i])) {
                            assert_eq!(m, mu);
                            solutions += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(solutions, 1);
    }

    #[test]
    fn twists_and_self_pairing_are_degenerate() {
        let k = make_field(7, 1).unwrap();
        let kernels_by_curve: Vec<_> = full_two_torsion_curves(&k)
            .into_iter()
            .filter_map(|e| enumerate_rational_kernels(&e, 3).ok()?.into_iter().next())
            .collect();
        assert!(!kernels_by_curve.is_empty());
        let nonsquare = k.smallest_nonsquare();
        for kd in kernels_by_curve.iter().take(10) {
            let iso = velu(kd).unwrap();
            let e = iso.codomain.clone();
            if e.full_two_torsion().is_none() {
                continue;
            }
            let (_, report) = compute_frame(&iso, &e, [0, 1, 2]).unwrap();
            assert!(report.degenerate);
            assert!(report.description.is_some());
            // the twist's 2-torsion abscissae are those of E scaled by d
            let twist = e.quadratic_twist(nonsquare).unwrap();
            let roots = e.full_two_torsion().unwrap().roots;
            let twisted = twist.full_two_torsion().unwrap().roots;
            let s = [0, 1, 2].map(|j| roots.iter().position(|&r| k.mul(nonsquare, r) == twisted[j]).unwrap());
            let (frame, report) = compute_frame(&iso, &twist, s).unwrap();
            assert!(report.degenerate);
            assert!(frame.mu.is_affine());
            assert!(brute_force_matching_isomorphism(&e, &twist, s));
        }
    }

    #[test]
    fn detector_matches_brute_force() {
        for (p, n) in [(5, 1), (7, 1), (3, 2), (11, 1)] {
            let k = make_field(p, n).unwrap();
            let curves = full_two_torsion_curves(&k);
            for e in curves.iter().step_by(3) {
                for e_prime in curves.iter().step_by(17) {
                    for s in PAIRINGS {
                        let mu = mobius_matching(e, e_prime, s).unwrap();
                        let degenerate = mu.apply(&k, P1Point::Infinity) == P1Point::Infinity;
                        assert_eq!(degenerate, brute_force_matching_isomorphism(e, e_prime, s));
                    }
                }
                assert!(mobius_matching(e, e, [0, 1, 2]).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn d_and_d_prime_have_the_predicted_genus() {
        for (p, deg, ell) in [(7u64, 1u32, 3u64), (3, 2, 5), (11, 1, 5), (3, 2, 7), (5, 2, 3)] {
            let k = make_field(p, deg).unwrap();
            let curves = full_two_torsion_curves(&k);
            let e_prime = curves.iter().find(|e| e.trace_and_ordinary().1).unwrap().clone();
            let mut built = 0;
            for e in curves.iter().step_by(5) {
                for kd in enumerate_rational_kernels(e, ell).unwrap() {
                    let iso = velu(&kd).unwrap();
                    if iso.codomain.full_two_torsion().is_none() {
                        continue;
                    }
                    for s in PAIRINGS {
                        let (frame, report) = compute_frame(&iso, &e_prime, s).unwrap();
                        if report.degenerate {
                            assert_eq!(build_d(&iso, &frame), Err(ConstructError::Degenerate));
                            continue;
                        }
                        if report.p_prime_in_two_torsion {
                            continue;
                        }
                        let c = frame.c().unwrap();
                        assert_eq!(ramification_profile(&k, &iso.u, P1Point::Infinity), {
                            let mut v = vec![1];
                            v.extend(std::iter::repeat(2).take(((ell - 1) / 2) as usize));
                            v
                        });
                        let profile = ramification_profile(&k, &iso.u, P1Point::Finite(c));
                        assert_eq!(profile.iter().sum::<usize>(), ell as usize);
                        match build_d(&iso, &frame) {
                            Ok(d) => {
                                assert_eq!(profile, vec![1; ell as usize]);
                                assert_eq!(d.h().degree(), Some(ell as usize));
                                assert_eq!(d.genus() as u64, (ell - 1) / 2);
                                for x in factor::roots(&k, d.h()) {
                                    assert_eq!(iso.u.eval(&k, x), P1Point::Finite(c));
                                }
                                let dp = build_d_prime(&iso, &frame).unwrap();
                                assert_eq!(dp.genus() as u64, (ell + 1) / 2);
                                assert_eq!(dp.h().degree(), Some(ell as usize + 3));
                                built += 1;
                            }
                            Err(err) => {
                                assert_eq!(err, ConstructError::NotSquarefreeDefect);
                                assert!(profile.iter().any(|&i| i > 1));
                            }
                        }
                    }
                }
            }
            assert!(built > 0, "nothing built for p={p} ell={ell}");
        }
    }
}
