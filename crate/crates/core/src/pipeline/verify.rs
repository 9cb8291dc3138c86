//! Offline re-derivation of every claim in a certificate. Each check parses
//! what it needs from the document and recomputes it from scratch, so one
//! corrupted field fails the checks that read it and leaves the others
//! meaningful.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;

use super::certificate::*;
use super::{divisible, select_e_prime, BASE_CHANGE_NOTE};
use crate::construct::{build_d, build_d_prime, compute_frame, HyperellipticModel};
use crate::elliptic::EllipticCurveModel;
use crate::finite_field::{is_prime, Embedding, FiniteField, Poly, RationalFunction};
use crate::isogeny::{check_cover_compatibility, kernel_from_poly, velu, IsogenyData};
use crate::twist::{make_twist, twist_relation_holds};
use crate::zeta::{
    base_change, big_pow, cartier_manin, counts, cross_check_over_big_k, expand_power, inert_shape_check,
    lpoly_from_counts, p_rank, power_of_elliptic, LPolynomial,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                let status = if c.passed { "ok  " } else { "FAIL" };
                if c.detail.is_empty() {
                    format!("{status} {}\n", c.name)
                } else {
                    format!("{status} {}: {}\n", c.name, c.detail)
                }
            })
            .collect()
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn field(c: &Certificate) -> Result<FiniteField, String> {
    parse_field(&c.field)
}

fn genus(c: &Certificate) -> usize {
    ((c.config.ell.max(1) - 1) / 2) as usize
}

fn curves(c: &Certificate) -> Result<(FiniteField, EllipticCurveModel, EllipticCurveModel), String> {
    let k = field(c)?;
    let e_tilde = parse_curve(&k, &c.e_tilde)?;
    let e = parse_curve(&k, &c.e)?;
    Ok((k, e_tilde, e))
}

/// The isogeny exactly as stored.
fn stored_isogeny(c: &Certificate) -> Result<IsogenyData, String> {
    let (k, e_tilde, e) = curves(c)?;
    let n = parse_poly(&k, &c.isogeny.n)?;
    let m = parse_poly(&k, &c.isogeny.m)?;
    let u = RationalFunction::new(&k, &n, &m).ok_or("u has zero denominator")?;
    ensure(u.numerator() == &n && u.denominator() == &m, "u = N/M is not in lowest terms")?;
    let vn = parse_poly(&k, &c.isogeny.v_numerator)?;
    let vd = parse_poly(&k, &c.isogeny.v_denominator)?;
    let v = RationalFunction::new(&k, &vn, &vd).ok_or("v has zero denominator")?;
    ensure(v.numerator() == &vn && v.denominator() == &vd, "v is not in lowest terms")?;
    Ok(IsogenyData {
        domain: e_tilde,
        codomain: e,
        ell: c.config.ell,
        kernel_poly: parse_poly(&k, &c.kernel.poly)?,
        u,
        y_map_factor: v,
    })
}

fn stored_h(c: &Certificate, which: &HyperellipticJson) -> Result<HyperellipticModel, String> {
    let k = field(c)?;
    ensure(which.field == c.field, "curve is defined over a different field")?;
    let h = parse_poly(&k, &which.h)?;
    HyperellipticModel::new(&k, &h).ok_or_else(|| "h is not squarefree of degree at least 3".into())
}

fn stored_l_k(c: &Certificate) -> Result<LPolynomial, String> {
    let q = BigInt::from(field(c)?.cardinality());
    LPolynomial::new(c.split.l_k.clone(), q, genus(c)).map_err(|e| e.to_string())
}

fn stored_l_big_k(c: &Certificate) -> Result<LPolynomial, String> {
    LPolynomial::new(c.split.l_big_k.clone(), c.split.q_big_k.clone(), genus(c)).map_err(|e| e.to_string())
}

fn check_schema(c: &Certificate) -> Outcome {
    ensure(c.schema == SCHEMA_VERSION, format!("unknown schema {}", c.schema))?;
    ensure(c.artifact_version == ARTIFACT_VERSION, format!("artifact version {}", c.artifact_version))?;
    ensure(c.note == BASE_CHANGE_NOTE, "note text altered")?;
    Ok(String::new())
}

fn check_config(c: &Certificate) -> Outcome {
    let cfg = &c.config;
    ensure(cfg.p != 2 && is_prime(cfg.p), "p is not an odd prime")?;
    ensure(cfg.ell != 2 && is_prime(cfg.ell), "ell is not an odd prime")?;
    ensure(cfg.ell != cfg.p || cfg.allow_ell_eq_p, "ell = p without allow_ell_eq_p")?;
    ensure(c.field.p == cfg.p, "field characteristic differs from p")?;
    ensure((1..=cfg.max_base_degree).contains(&c.field.degree), "base degree outside the searched range")?;
    ensure(c.kernel.ell == cfg.ell && c.split.ell == cfg.ell, "ell differs between sections")?;
    if cfg.paper_faithful {
        ensure(field(c)?.cardinality() % 4 == 1, "paper-faithful mode needs q = 1 mod 4")?;
    }
    Ok(String::new())
}

fn check_field(c: &Certificate) -> Outcome {
    let k = field(c)?;
    Ok(format!("q = {}", k.cardinality()))
}

fn check_e_prime(c: &Certificate) -> Outcome {
    let k = field(c)?;
    let e_prime = parse_curve(&k, &c.e_prime)?;
    ensure(e_prime.full_two_torsion().is_some(), "2-torsion of E' not rational")?;
    let (t, ordinary) = e_prime.trace_and_ordinary();
    ensure(ordinary, format!("E' has trace {t}, divisible by p"))?;
    Ok(if select_e_prime(&k).as_ref() == Some(&e_prime) {
        "the search's choice".into()
    } else {
        "caller's choice".into()
    })
}

fn check_e_tilde(c: &Certificate) -> Outcome {
    let (_, e_tilde, _) = curves(c)?;
    ensure(e_tilde.full_two_torsion().is_some(), "2-torsion not rational")?;
    let (t, ordinary) = e_tilde.trace_and_ordinary();
    ensure(ordinary, format!("trace {t} divisible by p"))?;
    if c.config.paper_faithful {
        ensure(e_tilde.has_rational_four_torsion(), "4-torsion not rational")?;
    }
    Ok(format!("trace {t}"))
}

fn check_kernel(c: &Certificate) -> Outcome {
    let (k, e_tilde, _) = curves(c)?;
    let poly = parse_poly(&k, &c.kernel.poly)?;
    let kern = kernel_from_poly(&e_tilde, c.config.ell, &poly, c.config.allow_ell_eq_p).map_err(|e| e.to_string())?;
    ensure(kern.chi == c.kernel.chi, format!("chi is {}, recorded {}", kern.chi, c.kernel.chi))?;
    let order = kern.frobenius_character_order();
    ensure(order == c.kernel.chi_order, format!("order of chi is {order}"))?;
    ensure(kern.is_inert() && order == c.config.ell - 1, "kernel is not inert")?;
    Ok(format!("chi = {}, order {order}", kern.chi))
}

fn check_velu(c: &Certificate) -> Outcome {
    let (k, e_tilde, e) = curves(c)?;
    let poly = parse_poly(&k, &c.kernel.poly)?;
    let kern = kernel_from_poly(&e_tilde, c.config.ell, &poly, c.config.allow_ell_eq_p).map_err(|e| e.to_string())?;
    let iso = velu(&kern).map_err(|e| e.to_string())?;
    let stored = stored_isogeny(c)?;
    ensure(iso.codomain == e, "codomain differs from recomputation")?;
    ensure(&iso.u == &stored.u, "u = N/M differs from recomputation")?;
    ensure(iso.y_map_factor == stored.y_map_factor, "y-map factor differs from recomputation")?;
    Ok(String::new())
}

fn check_cover(c: &Certificate) -> Outcome {
    let iso = stored_isogeny(c)?;
    ensure(iso.m() == &iso.kernel_poly.square(iso.domain.base()), "M is not the squared kernel polynomial")?;
    ensure(check_cover_compatibility(&iso), "the stored maps do not send the domain onto the codomain")?;
    Ok(String::new())
}

fn check_frame(c: &Certificate) -> Outcome {
    let iso = stored_isogeny(c)?;
    let k = iso.domain.base().clone();
    let e_prime = parse_curve(&k, &c.e_prime)?;
    let (frame, report) = compute_frame(&iso, &e_prime, c.pairing).map_err(|e| e.to_string())?;
    let mu = frame.mu.matrix.map(|row| row.map(|a| element_json(&k, a)));
    ensure(mu == c.frame.mu, "mu differs from the matching of 2-torsion")?;
    ensure(c.frame.p == "infinity", "P must be the point at infinity")?;
    ensure(!report.degenerate && !c.frame.degenerate, "frame is degenerate")?;
    ensure(!report.p_prime_in_two_torsion && !c.frame.p_prime_in_two_torsion, "P' lies over the 2-torsion")?;
    let c_val = frame.c().ok_or("P' is infinite")?;
    ensure(element_json(&k, c_val) == c.frame.p_prime, "P' differs from mu(infinity)")?;
    Ok(String::new())
}

fn frame_and_iso(c: &Certificate) -> Result<(IsogenyData, crate::construct::ConstructionFrame), String> {
    let iso = stored_isogeny(c)?;
    let k = iso.domain.base().clone();
    let e_prime = parse_curve(&k, &c.e_prime)?;
    let (mut frame, _) = compute_frame(&iso, &e_prime, c.pairing).map_err(|e| e.to_string())?;
    frame.p_prime = crate::finite_field::P1Point::Finite(parse_element(&k, &c.frame.p_prime)?);
    Ok((iso, frame))
}

fn check_h(c: &Certificate) -> Outcome {
    let (iso, frame) = frame_and_iso(c)?;
    let k = iso.domain.base();
    let cval = frame.c().expect("finite");
    let expected = iso.n().sub(k, &iso.m().scale(k, cval));
    let stored = parse_poly(k, &c.d.h)?;
    ensure(stored == expected, "h is not N - cM")?;
    let d = build_d(&iso, &frame).map_err(|e| e.to_string())?;
    ensure(d.h() == &stored, "h differs from the rebuilt D")?;
    Ok(String::new())
}

fn check_h_prime(c: &Certificate) -> Outcome {
    let (iso, frame) = frame_and_iso(c)?;
    let d_prime = build_d_prime(&iso, &frame).map_err(|e| e.to_string())?;
    let stored = parse_poly(iso.domain.base(), &c.d_prime.h)?;
    ensure(d_prime.h() == &stored, "h' differs from the rebuilt D'")?;
    Ok(String::new())
}

fn check_genus(c: &Certificate) -> Outcome {
    let ell = c.config.ell as usize;
    let d = stored_h(c, &c.d)?;
    let d_prime = stored_h(c, &c.d_prime)?;
    ensure(d.h().degree() == Some(ell), "deg h differs from ell")?;
    ensure(d.genus() == (ell - 1) / 2 && c.d.genus == d.genus(), "genus of D")?;
    ensure(d_prime.genus() == (ell + 1) / 2 && c.d_prime.genus == d_prime.genus(), "genus of D'")?;
    Ok(format!("g(D) = {}, g(D') = {}", d.genus(), d_prime.genus()))
}

fn check_counts(c: &Certificate) -> Outcome {
    let d = stored_h(c, &c.d)?;
    let recount = counts(&d).map_err(|e| e.to_string())?;
    ensure(recount == c.point_counts, format!("recount gives {recount:?}"))?;
    Ok(format!("{recount:?}"))
}

fn check_l_k(c: &Certificate) -> Outcome {
    let k = field(c)?;
    let q = BigInt::from(k.cardinality());
    let l = lpoly_from_counts(&c.point_counts, &q, genus(c)).map_err(|e| e.to_string())?;
    ensure(l.coeffs == c.split.l_k, "L_k does not match the point counts")?;
    let stored = stored_l_k(c)?;
    ensure(stored.weil_bounds_hold(2 * stored.g), "Weil bounds fail")?;
    Ok(String::new())
}

fn check_inert_shape(c: &Certificate) -> Outcome {
    let l = stored_l_k(c)?;
    ensure(inert_shape_check(&l, l.g) && c.split.inert_shape_ok, "L_k lacks the inert shape")?;
    Ok(String::new())
}

fn check_base_change(c: &Certificate) -> Outcome {
    let l = stored_l_k(c)?;
    ensure(c.split.k_degree as u64 == c.config.ell - 1, "K has the wrong degree")?;
    let q = field(c)?.cardinality();
    ensure(c.split.q_big_k == big_pow(q, c.split.k_degree), "q_K is not q^[K:k]")?;
    ensure(base_change(&l, c.split.k_degree).coeffs == c.split.l_big_k, "L_K is not the base change of L_k")?;
    Ok(String::new())
}

fn check_power(c: &Certificate) -> Outcome {
    let l_big = stored_l_big_k(c)?;
    let g = genus(c);
    let pe = power_of_elliptic(&l_big, g, c.config.p).ok_or("L_K is not a g-th power of an elliptic quadratic")?;
    ensure(pe.a == c.split.a && pe.q_k == c.split.q_big_k, "a differs from L_K")?;
    ensure(expand_power(&c.split.a, &c.split.q_big_k, g) == c.split.l_big_k, "expansion differs")?;
    Ok(format!("a = {}", pe.a))
}

fn check_ordinary(c: &Certificate) -> Outcome {
    let g = genus(c);
    ensure(c.split.ordinary, "not recorded as ordinary")?;
    ensure(!divisible(&c.split.a, c.config.p), "a is divisible by p")?;
    let l = stored_l_k(c)?;
    let pr = p_rank(&l, c.config.p);
    ensure(pr == c.split.p_rank && pr == g, format!("p-rank {pr}"))?;
    let (_, cm) = cartier_manin(&stored_h(c, &c.d)?);
    ensure(cm == c.split.cartier_manin_rank && cm == g, format!("Cartier-Manin stable rank {cm}"))?;
    Ok(String::new())
}

fn check_cross(c: &Certificate) -> Outcome {
    let d = stored_h(c, &c.d)?;
    let recomputed = cross_check_over_big_k(&d, &stored_l_big_k(c)?, c.split.k_degree);
    ensure(recomputed == c.cross_check_over_big_k, format!("recomputed {recomputed:?}"))?;
    ensure(recomputed != Some(false), "direct count over K disagrees with L_K")?;
    Ok(match recomputed {
        Some(_) => "direct count over K agrees".into(),
        None => "K beyond the counting guard".into(),
    })
}

fn check_twist(c: &Certificate) -> Outcome {
    let Some(t) = &c.twist else { return Ok("no twist recorded".into()) };
    let k = field(c)?;
    let g = genus(c) as u32;
    let big_k = parse_field(&t.big_k)?;
    let descent = parse_field(&t.descent_field)?;
    ensure(big_k.characteristic() == k.characteristic() && big_k.degree() == k.degree() * 2 * g, "K has the wrong degree")?;
    ensure(descent.characteristic() == k.characteristic() && descent.degree() == k.degree() * g, "descent field degree")?;
    let l = stored_l_k(c)?;
    ensure(t.descent_trace == -l.coeffs[g as usize].clone(), "descent trace does not match L_k")?;
    let q_g = big_pow(k.cardinality(), g);
    ensure(&t.descent_trace * &t.descent_trace - 2 * q_g == c.split.a, "descent trace does not give a over K")?;
    let f = parse_curve(&descent, &t.descent_curve)?;
    let n = f.count_points(1).map_err(|e| e.to_string())?;
    ensure(BigInt::from(descent.cardinality()) + 1 - BigInt::from(n) == t.descent_trace, "descent curve has the wrong trace")?;
    let curve = f.base_change(&Embedding::canonical(&descent, &big_k).map_err(|e| e.to_string())?);
    ensure(parse_curve(&big_k, &t.curve_over_k)? == curve, "curve over K is not the base change")?;
    let h = parse_poly(&k, &c.d.h)?;
    let h_big = Embedding::canonical(&k, &big_k).map_err(|e| e.to_string())?.embed_poly(&h);
    ensure(parse_poly(&big_k, &t.h_over_k)? == h_big, "h over K is not the image of h")?;
    let twist = make_twist(&curve, &h_big).map_err(|e| e.to_string())?;
    let stored: [Poly; 3] = [&t.a2, &t.a4, &t.a6].map(|a| parse_poly(&big_k, a).unwrap_or_default());
    ensure(stored == [twist.a2.clone(), twist.a4.clone(), twist.a6.clone()], "twist coefficients differ")?;
    ensure(twist_relation_holds(&curve, &h_big, &twist), "twist relation fails")?;
    let j = twist.constant_j().ok_or("j is not constant")?;
    ensure(j == curve.j_invariant() && element_json(&big_k, j) == t.j, "j differs")?;
    ensure(twist.discriminant().degree().unwrap_or(0) > 0, "discriminant is constant")?;
    ensure(t.rank_bound == g as usize && t.certificate_reference == "#/split", "rank bound")?;
    Ok(format!("rank >= {g}"))
}

fn check_hash(c: &Certificate) -> Outcome {
    let h = c.canonical_hash.as_deref().ok_or("no canonical hash")?;
    ensure(h == c.compute_hash(), "canonical hash mismatch")?;
    Ok(String::new())
}

pub const CHECKS: [(&str, fn(&Certificate) -> Outcome); 21] = [
    ("schema", check_schema),
    ("config", check_config),
    ("field", check_field),
    ("E' ordinary with rational 2-torsion", check_e_prime),
    ("E~ ordinary with rational 2-torsion", check_e_tilde),
    ("kernel", check_kernel),
    ("velu", check_velu),
    ("cover compatibility", check_cover),
    ("frame", check_frame),
    ("h reconstruction", check_h),
    ("h' reconstruction", check_h_prime),
    ("genus bookkeeping", check_genus),
    ("point counts", check_counts),
    ("L_k", check_l_k),
    ("inert shape", check_inert_shape),
    ("base change", check_base_change),
    ("power_of_elliptic", check_power),
    ("ordinariness", check_ordinary),
    ("cross check over K", check_cross),
    ("twist", check_twist),
    ("canonical hash", check_hash),
];

pub fn verify(cert: &Certificate) -> VerificationReport {
    let checks = CHECKS
        .iter()
        .map(|&(name, f)| {
            let (passed, detail) = match catch_unwind(AssertUnwindSafe(|| f(cert))) {
                Ok(Ok(d)) => (true, d),
                Ok(Err(d)) => (false, d),
                Err(_) => (false, "internal panic while checking".to_string()),
            };
            Check { name, passed, detail }
        })
        .collect();
    VerificationReport { checks }
}

/// Parses and verifies; malformed input is a schema error with the path of
/// the offending field.
pub fn verify_json(text: &str) -> Result<VerificationReport, SchemaError> {
    Ok(verify(&Certificate::from_json(text)?))
}
