//! The search loop over `F_q`-points of the moduli curve, certificate
//! assembly, offline verification and persistence.

pub mod certificate;
pub mod verify;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::construct::{build_d, build_d_prime, compute_frame, ConstructError, PAIRINGS};
use crate::elliptic::{EllipticCurveModel, COUNT_GUARD};
use crate::finite_field::{is_prime, make_field, Embedding, FieldElement, FiniteField, Poly, MAX_CARDINALITY};
use crate::isogeny::{apply, check_cover_compatibility, enumerate_rational_kernels_with, velu, IsogenyData, KernelData};
use crate::twist::{find_curve_with_trace, make_twist};
use crate::zeta::{big_pow, certify_split, cross_check_over_big_k, SplitCertificate, SplitOutcome};

pub use certificate::{Certificate, SchemaError};
pub use verify::{verify, verify_json, Check, VerificationReport};

use certificate::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub p: u64,
    pub ell: u64,
    pub max_base_degree: u32,
    pub paper_faithful: bool,
    /// Stop after this many candidates have been examined.
    pub max_candidates: Option<u64>,
    /// Drives the random homomorphism spot checks of each isogeny.
    pub seed: u64,
    /// Stop after this many certificates.
    pub max_certificates: Option<usize>,
    /// Admit `ell = p`, using the étale kernel of an ordinary curve.
    pub allow_ell_eq_p: bool,
    /// Worker threads; 0 picks the number of cores.
    pub jobs: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("p = {0} is not an odd prime")]
    BadP(u64),
    #[error("ell = {0} is not an odd prime")]
    BadEll(u64),
    #[error("ell must differ from p (pass allow_ell_eq_p to use the étale kernel)")]
    EllEqualsP,
    #[error("max_base_degree must be at least 1")]
    ZeroDegree,
}

impl SearchConfig {
    pub fn new(p: u64, ell: u64) -> SearchConfig {
        SearchConfig {
            p,
            ell,
            max_base_degree: 4,
            paper_faithful: false,
            max_candidates: None,
            seed: 0,
            max_certificates: None,
            allow_ell_eq_p: false,
            jobs: 0,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.p == 2 || !is_prime(self.p) {
            return Err(ConfigError::BadP(self.p));
        }
        if self.ell == 2 || !is_prime(self.ell) {
            return Err(ConfigError::BadEll(self.ell));
        }
        if self.ell == self.p && !self.allow_ell_eq_p {
            return Err(ConfigError::EllEqualsP);
        }
        if self.max_base_degree == 0 {
            return Err(ConfigError::ZeroDegree);
        }
        Ok(())
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            p: self.p,
            ell: self.ell,
            max_base_degree: self.max_base_degree,
            paper_faithful: self.paper_faithful,
            max_candidates: self.max_candidates,
            seed: self.seed,
            allow_ell_eq_p: self.allow_ell_eq_p,
        }
    }

    pub fn genus(&self) -> usize {
        ((self.ell - 1) / 2) as usize
    }
}

/// Why a candidate was discarded, in the order the filters are applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rejection {
    CurveNotOrdinary,
    NoFourTorsion,
    NoRationalKernel,
    NotInert,
    Degenerate,
    PPrimeInTwoTorsion,
    NotSquarefree,
    CountGuard,
    NotInertShape,
    NotAPower,
    NotOrdinary,
}

impl Rejection {
    pub const ALL: [Rejection; 11] = [
        Rejection::CurveNotOrdinary,
        Rejection::NoFourTorsion,
        Rejection::NoRationalKernel,
        Rejection::NotInert,
        Rejection::Degenerate,
        Rejection::PPrimeInTwoTorsion,
        Rejection::NotSquarefree,
        Rejection::CountGuard,
        Rejection::NotInertShape,
        Rejection::NotAPower,
        Rejection::NotOrdinary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rejection::CurveNotOrdinary => "curve_not_ordinary",
            Rejection::NoFourTorsion => "no_rational_4_torsion",
            Rejection::NoRationalKernel => "no_rational_kernel",
            Rejection::NotInert => "kernel_not_inert",
            Rejection::Degenerate => "degenerate_frame",
            Rejection::PPrimeInTwoTorsion => "p_prime_in_2_torsion",
            Rejection::NotSquarefree => "branch_not_squarefree",
            Rejection::CountGuard => "count_guard",
            Rejection::NotInertShape => "not_inert_shape",
            Rejection::NotAPower => "not_a_power",
            Rejection::NotOrdinary => "not_ordinary",
        }
    }

    /// Whether the candidate got past the frame filters.
    pub fn non_degenerate(self) -> bool {
        self >= Rejection::NotSquarefree
    }
}

/// Bookkeeping for one base field.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldReport {
    pub q: u64,
    pub degree: u32,
    pub skipped: Option<String>,
    pub e_prime: Option<[u32; 3]>,
    pub examined: u64,
    pub accepted: u64,
    pub rejections: BTreeMap<Rejection, u64>,
    /// Candidates that passed the frame filters.
    pub non_degenerate: u64,
    /// Of those, how many had an ordinary `D`.
    pub ordinary_d: u64,
}

impl FieldReport {
    pub fn rejected(&self) -> u64 {
        self.rejections.values().sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchReport {
    pub fields: Vec<FieldReport>,
    /// A limit stopped the search early.
    pub truncated: bool,
}

impl SearchReport {
    pub fn examined(&self) -> u64 {
        self.fields.iter().map(|f| f.examined).sum()
    }

    pub fn accepted(&self) -> u64 {
        self.fields.iter().map(|f| f.accepted).sum()
    }

    pub fn rejections(&self) -> BTreeMap<Rejection, u64> {
        let mut out = BTreeMap::new();
        for f in &self.fields {
            for (&r, &n) in &f.rejections {
                *out.entry(r).or_insert(0) += n;
            }
        }
        out
    }

    pub fn table(&self) -> String {
        let mut s = format!("{:>10} {:>9} {:>9}  rejections\n", "q", "examined", "accepted");
        for f in &self.fields {
            let detail = match &f.skipped {
                Some(why) => format!("skipped: {why}"),
                None => f
                    .rejections
                    .iter()
                    .filter(|(_, &n)| n > 0)
                    .map(|(r, n)| format!("{}={n}", r.name()))
                    .collect::<Vec<_>>()
                    .join(" "),
            };
            s += &format!("{:>10} {:>9} {:>9}  {}\n", f.q, f.examined, f.accepted, detail);
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub certificates: Vec<Certificate>,
    pub report: SearchReport,
}

impl SearchOutcome {
    /// Diagnostic text when nothing was found.
    pub fn not_found_report(&self) -> Option<String> {
        if !self.certificates.is_empty() {
            return None;
        }
        let counts = self
            .report
            .rejections()
            .iter()
            .map(|(r, n)| format!("  {}: {n}\n", r.name()))
            .collect::<String>();
        Some(format!(
            "no certificate found after examining {} candidates\n{counts}inert kernels occur with positive density; enlarge the base field (raise max_base_degree)\n",
            self.report.examined()
        ))
    }
}

/// `y^2 = x (x - d)(x - d lambda)` for `lambda != 0, 1` and `d` either 1 or
/// the smallest nonsquare, in lexicographic order of `(a2, a4, a6)`. Every
/// curve with full rational 2-torsion is isomorphic to one of these.
pub fn candidate_curves(k: &FiniteField) -> Vec<EllipticCurveModel> {
    let mut out: Vec<EllipticCurveModel> = Vec::new();
    for d in [FieldElement::ONE, k.smallest_nonsquare()] {
        for lambda in k.elements().skip(2) {
            let a2 = k.neg(k.mul(d, k.add(FieldElement::ONE, lambda)));
            let a4 = k.mul(k.square(d), lambda);
            if let Ok(e) = EllipticCurveModel::new(k, a2, a4, FieldElement::ZERO) {
                out.push(e);
            }
        }
    }
    out.sort_by_key(|e| e.coefficients());
    out.dedup();
    out
}

/// The lexicographically first ordinary curve with full rational 2-torsion.
pub fn select_e_prime(k: &FiniteField) -> Option<EllipticCurveModel> {
    for a2 in k.elements() {
        for a4 in k.elements() {
            for a6 in k.elements() {
                let Ok(e) = EllipticCurveModel::new(k, a2, a4, a6) else { continue };
                if e.full_two_torsion().is_some() && e.trace_and_ordinary().1 {
                    return Some(e);
                }
            }
        }
    }
    None
}

fn pairing_failure(e: ConstructError) -> Rejection {
    match e {
        ConstructError::Degenerate => Rejection::Degenerate,
        ConstructError::PPrimeInTwoTorsion => Rejection::PPrimeInTwoTorsion,
        _ => Rejection::NotSquarefree,
    }
}

/// Homomorphism spot check of the Vélu map on random rational points.
fn spot_check(iso: &IsogenyData, seed: u64) -> bool {
    let e = &iso.domain;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ iso.kernel_poly.coeffs().len() as u64);
    (0..4).all(|_| {
        let (p, q) = (e.random_point(&mut rng), e.random_point(&mut rng));
        let sum = e.law().add(&p, &q);
        match (apply(iso, &p), apply(iso, &q), apply(iso, &sum)) {
            (Some(a), Some(b), Some(c)) => iso.codomain.law().add(&a, &b) == c,
            _ => false,
        }
    })
}

/// The twist over `K`, when the fields involved are small enough to build
/// and count: `q^{2g}` within the field limit, `q^g` within the guard.
pub fn build_twist(k: &FiniteField, h: &Poly, split: &SplitCertificate) -> Option<TwistJson> {
    let g = split.l_over_k.g as u32;
    let q = k.cardinality();
    let qg = q.checked_pow(g)?;
    if qg > COUNT_GUARD || qg.checked_mul(qg)? > MAX_CARDINALITY {
        return None;
    }
    let p = k.characteristic() as u64;
    let descent_field = make_field(p, k.degree() * g).ok()?;
    let big_k = make_field(p, k.degree() * 2 * g).ok()?;
    let trace = -split.l_over_k.coeffs[g as usize].clone();
    let descent_curve = find_curve_with_trace(&descent_field, &trace)?;
    let curve = descent_curve.base_change(&Embedding::canonical(&descent_field, &big_k).ok()?);
    let h_big = Embedding::canonical(k, &big_k).ok()?.embed_poly(h);
    let twist = make_twist(&curve, &h_big).ok()?;
    let j = twist.constant_j()?;
    Some(TwistJson {
        big_k: field_json(&big_k),
        descent_field: field_json(&descent_field),
        descent_curve: curve_json(&descent_curve),
        descent_trace: trace,
        curve_over_k: curve_json(&curve),
        h_over_k: poly_json(&big_k, &h_big),
        a2: poly_json(&big_k, &twist.a2),
        a4: poly_json(&big_k, &twist.a4),
        a6: poly_json(&big_k, &twist.a6),
        j: element_json(&big_k, j),
        rank_bound: g as usize,
        certificate_reference: "#/split".into(),
    })
}

fn split_json(s: &SplitCertificate) -> SplitJson {
    SplitJson {
        l_k: s.l_over_k.coeffs.clone(),
        ell: s.ell,
        k_degree: s.k_degree,
        l_big_k: s.l_over_big_k.coeffs.clone(),
        a: s.a.clone(),
        q_big_k: s.q_k.clone(),
        ordinary: s.ordinary,
        inert_shape_ok: s.inert_shape_ok,
        p_rank: s.p_rank,
        cartier_manin_rank: s.cartier_manin_rank,
    }
}

fn try_pairing(
    cfg: &SearchConfig,
    kernel: &KernelData,
    iso: &IsogenyData,
    e_prime: &EllipticCurveModel,
    pairing: [usize; 3],
) -> Result<Certificate, Rejection> {
    let k = iso.domain.base();
    let (frame, report) = compute_frame(iso, e_prime, pairing).map_err(pairing_failure)?;
    if report.degenerate {
        return Err(Rejection::Degenerate);
    }
    if report.p_prime_in_two_torsion {
        return Err(Rejection::PPrimeInTwoTorsion);
    }
    let d = build_d(iso, &frame).map_err(pairing_failure)?;
    let d_prime = build_d_prime(iso, &frame).map_err(pairing_failure)?;
    let split = match certify_split(&d, cfg.ell) {
        Err(_) => return Err(Rejection::CountGuard),
        Ok(SplitOutcome::NotInertShape(_)) => return Err(Rejection::NotInertShape),
        Ok(SplitOutcome::NotAPower(_)) => return Err(Rejection::NotAPower),
        Ok(SplitOutcome::NotOrdinary(_)) => return Err(Rejection::NotOrdinary),
        Ok(SplitOutcome::Certified(s)) => s,
    };
    let c = frame.c().expect("non-degenerate");
    let mu = frame.mu.matrix.map(|row| row.map(|a| element_json(k, a)));
    Ok(Certificate {
        schema: SCHEMA_VERSION,
        artifact_version: ARTIFACT_VERSION.into(),
        config: cfg.echo(),
        field: field_json(k),
        e_prime: curve_json(e_prime),
        e_tilde: curve_json(&iso.domain),
        e: curve_json(&iso.codomain),
        pairing,
        kernel: KernelJson {
            ell: kernel.ell,
            poly: poly_json(k, &kernel.kernel_poly),
            chi: kernel.chi,
            chi_order: kernel.frobenius_character_order(),
        },
        isogeny: IsogenyJson {
            n: poly_json(k, iso.n()),
            m: poly_json(k, iso.m()),
            v_numerator: poly_json(k, iso.y_map_factor.numerator()),
            v_denominator: poly_json(k, iso.y_map_factor.denominator()),
        },
        frame: FrameJson {
            mu,
            p: "infinity".into(),
            p_prime: element_json(k, c),
            degenerate: false,
            p_prime_in_two_torsion: false,
        },
        d: HyperellipticJson { field: field_json(k), h: poly_json(k, d.h()), genus: d.genus() },
        d_prime: HyperellipticJson { field: field_json(k), h: poly_json(k, d_prime.h()), genus: d_prime.genus() },
        point_counts: split.counts.clone(),
        cross_check_over_big_k: cross_check_over_big_k(&d, &split.l_over_big_k, split.k_degree),
        twist: build_twist(k, d.h(), &split),
        split: split_json(&split),
        note: BASE_CHANGE_NOTE.into(),
        timestamp: None,
        canonical_hash: None,
    })
}

/// Runs every filter on one rational kernel, trying all six pairings of the
/// 2-torsion. On failure reports the furthest filter any pairing reached.
pub fn certify_kernel(
    cfg: &SearchConfig,
    kernel: &KernelData,
    e_prime: &EllipticCurveModel,
) -> Result<Certificate, Rejection> {
    certify_kernel_with(cfg, kernel, e_prime, &PAIRINGS)
}

/// As [`certify_kernel`], restricted to the given pairings.
pub fn certify_kernel_with(
    cfg: &SearchConfig,
    kernel: &KernelData,
    e_prime: &EllipticCurveModel,
    pairings: &[[usize; 3]],
) -> Result<Certificate, Rejection> {
    if !kernel.is_inert() {
        return Err(Rejection::NotInert);
    }
    let iso = velu(kernel).map_err(|_| Rejection::NotSquarefree)?;
    assert!(check_cover_compatibility(&iso), "Vélu output fails the cover identity");
    assert!(spot_check(&iso, cfg.seed), "Vélu output is not a homomorphism");
    let mut furthest = Rejection::Degenerate;
    for &pairing in pairings {
        match try_pairing(cfg, kernel, &iso, e_prime, pairing) {
            Ok(cert) => return Ok(cert),
            Err(r) => furthest = furthest.max(r),
        }
    }
    Err(furthest)
}

type Unit = Result<Certificate, Rejection>;

fn evaluate_curve(cfg: &SearchConfig, e: &EllipticCurveModel, e_prime: &EllipticCurveModel) -> Vec<Unit> {
    if !e.trace_and_ordinary().1 {
        return vec![Err(Rejection::CurveNotOrdinary)];
    }
    if cfg.paper_faithful && !e.has_rational_four_torsion() {
        return vec![Err(Rejection::NoFourTorsion)];
    }
    let kernels = enumerate_rational_kernels_with(e, cfg.ell, cfg.allow_ell_eq_p).unwrap_or_default();
    if kernels.is_empty() {
        return vec![Err(Rejection::NoRationalKernel)];
    }
    kernels.iter().map(|kern| certify_kernel(cfg, kern, e_prime)).collect()
}

fn now() -> Option<u64> {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).ok().map(|d| d.as_secs())
}

/// Searches `q = p, p^2, ..., p^max_base_degree` in order. Candidates are
/// evaluated in parallel and consumed in enumeration order, so the output
/// does not depend on the number of workers.
pub fn search(cfg: &SearchConfig) -> Result<SearchOutcome, ConfigError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().expect("thread pool");
    let g = cfg.genus() as u32;
    let mut certificates = Vec::new();
    let mut report = SearchReport::default();
    let stamp = now();
    let done = |certs: &Vec<Certificate>, examined: u64| {
        cfg.max_certificates.is_some_and(|m| certs.len() >= m) || cfg.max_candidates.is_some_and(|m| examined >= m)
    };
    'fields: for degree in 1..=cfg.max_base_degree {
        let q_big = big_pow(cfg.p, degree);
        let mut fr = FieldReport { q: q_big.to_u64().unwrap_or(u64::MAX), degree, ..FieldReport::default() };
        let Some(qg) = q_big.to_u64().and_then(|q| q.checked_pow(g)) else {
            fr.skipped = Some("q^g exceeds the counting guard".into());
            report.fields.push(fr);
            continue;
        };
        if qg > COUNT_GUARD || fr.q > MAX_CARDINALITY {
            fr.skipped = Some("q^g exceeds the counting guard".into());
            report.fields.push(fr);
            continue;
        }
        if cfg.paper_faithful && fr.q % 4 != 1 {
            fr.skipped = Some("q is not 1 mod 4".into());
            report.fields.push(fr);
            continue;
        }
        let k = make_field(cfg.p, degree).expect("within the field limit");
        let Some(e_prime) = select_e_prime(&k) else {
            fr.skipped = Some("no ordinary curve with full rational 2-torsion".into());
            report.fields.push(fr);
            continue;
        };
        fr.e_prime = Some(e_prime.coefficients().map(|c| c.packed()));
        let curves = candidate_curves(&k);
        let chunk = 4 * pool.current_num_threads().max(1);
        for batch in curves.chunks(chunk) {
            let results: Vec<Vec<Unit>> =
                pool.install(|| batch.par_iter().map(|e| evaluate_curve(cfg, e, &e_prime)).collect());
            for unit in results.into_iter().flatten() {
                if done(&certificates, report.examined() + fr.examined) {
                    report.truncated = true;
                    report.fields.push(fr);
                    break 'fields;
                }
                fr.examined += 1;
                match unit {
                    Ok(mut cert) => {
                        fr.accepted += 1;
                        fr.non_degenerate += 1;
                        fr.ordinary_d += 1;
                        cert.seal(stamp);
                        certificates.push(cert);
                    }
                    Err(r) => {
                        *fr.rejections.entry(r).or_insert(0) += 1;
                        if r.non_degenerate() {
                            fr.non_degenerate += 1;
                        }
                    }
                }
            }
        }
        report.fields.push(fr);
        if done(&certificates, report.examined()) {
            report.truncated = true;
            break;
        }
    }
    Ok(SearchOutcome { certificates, report })
}

/// Writes `c1.json`, `c2.json`, ... into `dir`.
pub fn write_certificates(dir: &Path, certs: &[Certificate]) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    certs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let path = dir.join(format!("c{}.json", i + 1));
            std::fs::write(&path, c.to_pretty_json() + "\n")?;
            Ok(path)
        })
        .collect()
}

/// `true` when `a` is divisible by `p`.
pub(crate) fn divisible(a: &BigInt, p: u64) -> bool {
    (a % BigInt::from(p)).is_zero()
}
