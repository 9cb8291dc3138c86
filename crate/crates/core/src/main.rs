use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use jacsplit::construct::{HyperellipticModel, PAIRINGS};
use jacsplit::elliptic::EllipticCurveModel;
use jacsplit::finite_field::{make_field, FieldElement, FiniteField, Poly};
use jacsplit::isogeny::{enumerate_rational_kernels_with, kernel_from_poly};
use jacsplit::pipeline::{
    certify_kernel_with, search, select_e_prime, verify_json, write_certificates, Certificate,
    SearchConfig,
};
use jacsplit::zeta::{base_change, big_pow, cartier_manin, counts, lpoly_from_counts, p_rank};

#[derive(Parser)]
#[command(name = "jacsplit", version, about = "Hyperelliptic curves whose Jacobians split into a power of one ordinary elliptic curve")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for certificates over q = p, p^2, ..., p^max_base_degree.
    Search(SearchArgs),
    /// Re-derive every claim in one or more certificate files.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Build a certificate from an explicit curve and kernel.
    Construct(ConstructArgs),
    /// Point counts and L-polynomial of y^2 = h(x).
    Zeta(ZetaArgs),
    /// Print the constant-j twist recorded in a certificate.
    Twist { file: PathBuf },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    ell: u64,
    #[arg(long, default_value_t = 4)]
    max_base_degree: u32,
    #[arg(long)]
    paper_faithful: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "certs")]
    out: PathBuf,
    #[arg(long)]
    max_candidates: Option<u64>,
    #[arg(long)]
    max_certificates: Option<usize>,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    allow_ell_eq_p: bool,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    p: u64,
    /// Degree of F_q over F_p.
    #[arg(long, default_value_t = 1)]
    degree: u32,
    #[arg(long)]
    ell: u64,
    /// a2,a4,a6 of the domain curve.
    #[arg(long)]
    curve: String,
    /// Kernel polynomial coefficients, constant term first. Defaults to the
    /// first inert rational kernel.
    #[arg(long)]
    kernel: Option<String>,
    /// a2,a4,a6 of E'. Defaults to the search's choice.
    #[arg(long)]
    e_prime: Option<String>,
    /// Three indices, e.g. 0,2,1. Defaults to trying all six.
    #[arg(long)]
    pairing: Option<String>,
    #[arg(long)]
    allow_ell_eq_p: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ZetaArgs {
    /// Coefficients of h, constant term first. Each is an integer or
    /// coordinates joined with colons.
    #[arg(long)]
    h: String,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    degree: u32,
    /// Also print L over the extension of this degree.
    #[arg(long)]
    base_change: Option<u32>,
}

type CliResult = Result<ExitCode, (u8, String)>;

fn usage(msg: impl ToString) -> (u8, String) {
    (2, msg.to_string())
}

fn parse_element(k: &FiniteField, token: &str) -> Result<FieldElement, (u8, String)> {
    let token = token.trim();
    if token.contains(':') {
        let coords = token
            .split(':')
            .map(|c| c.trim().parse::<u32>().map_err(usage))
            .collect::<Result<Vec<_>, _>>()?;
        return k.from_coords(&coords).map_err(usage);
    }
    token.parse::<i64>().map(|n| k.from_int(n)).map_err(|_| usage(format!("bad field element '{token}'")))
}

fn parse_list(k: &FiniteField, s: &str) -> Result<Vec<FieldElement>, (u8, String)> {
    s.split(',').map(|t| parse_element(k, t)).collect()
}

fn parse_curve(k: &FiniteField, s: &str) -> Result<EllipticCurveModel, (u8, String)> {
    let c = parse_list(k, s)?;
    let [a2, a4, a6] = c[..] else { return Err(usage("a curve needs three coefficients a2,a4,a6")) };
    EllipticCurveModel::new(k, a2, a4, a6).map_err(usage)
}

fn run_search(a: SearchArgs) -> CliResult {
    let cfg = SearchConfig {
        p: a.p,
        ell: a.ell,
        max_base_degree: a.max_base_degree,
        paper_faithful: a.paper_faithful,
        max_candidates: a.max_candidates,
        seed: a.seed,
        max_certificates: a.max_certificates,
        allow_ell_eq_p: a.allow_ell_eq_p,
        jobs: a.jobs,
    };
    let outcome = search(&cfg).map_err(usage)?;
    print!("{}", outcome.report.table());
    let paths = write_certificates(&a.out, &outcome.certificates).map_err(|e| (1, e.to_string()))?;
    for (path, cert) in paths.iter().zip(&outcome.certificates) {
        let q = big_pow(cert.field.p, cert.field.degree);
        println!("{}  q = {q}  genus {}  L_k = {:?}  a = {}", path.display(), cert.d.genus, cert.split.l_k, cert.split.a);
    }
    if let Some(text) = outcome.not_found_report() {
        print!("{text}");
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(files: Vec<PathBuf>) -> CliResult {
    let mut all_ok = true;
    for file in files {
        let text = std::fs::read_to_string(&file).map_err(|e| (1, format!("{}: {e}", file.display())))?;
        match verify_json(&text) {
            Ok(report) => {
                println!("{}: {}", file.display(), if report.passed() { "verified" } else { "FAILED" });
                print!("{}", report.render());
                all_ok &= report.passed();
            }
            Err(e) => {
                println!("{}: schema error at {e}", file.display());
                all_ok = false;
            }
        }
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_construct(a: ConstructArgs) -> CliResult {
    let mut cfg = SearchConfig::new(a.p, a.ell);
    cfg.max_base_degree = a.degree;
    cfg.allow_ell_eq_p = a.allow_ell_eq_p;
    cfg.validate().map_err(usage)?;
    let k = make_field(a.p, a.degree).map_err(usage)?;
    let e = parse_curve(&k, &a.curve)?;
    let e_prime = match &a.e_prime {
        Some(s) => parse_curve(&k, s)?,
        None => select_e_prime(&k).ok_or((1, "no ordinary curve with full rational 2-torsion".to_string()))?,
    };
    let pairings: Vec<[usize; 3]> = match &a.pairing {
        Some(s) => {
            let idx = s.split(',').map(|t| t.trim().parse::<usize>().map_err(usage)).collect::<Result<Vec<_>, _>>()?;
            let [x, y, z] = idx[..] else { return Err(usage("a pairing has three indices")) };
            vec![[x, y, z]]
        }
        None => PAIRINGS.to_vec(),
    };
    let kernel = match &a.kernel {
        Some(s) => {
            let poly = Poly::from_coeffs(parse_list(&k, s)?);
            kernel_from_poly(&e, a.ell, &poly, a.allow_ell_eq_p).map_err(|e| (1, e.to_string()))?
        }
        None => enumerate_rational_kernels_with(&e, a.ell, a.allow_ell_eq_p)
            .map_err(|e| (1, e.to_string()))?
            .into_iter()
            .find(|kern| kern.is_inert())
            .ok_or((1, "no inert rational kernel".to_string()))?,
    };
    let mut cert = certify_kernel_with(&cfg, &kernel, &e_prime, &pairings)
        .map_err(|r| (1, format!("candidate rejected: {}", r.name())))?;
    cert.seal(None);
    let text = cert.to_pretty_json();
    match a.out {
        Some(path) => std::fs::write(&path, text + "\n").map_err(|e| (1, e.to_string()))?,
        None => println!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_zeta(a: ZetaArgs) -> CliResult {
    let k = make_field(a.p, a.degree).map_err(usage)?;
    let h = Poly::from_coeffs(parse_list(&k, &a.h)?);
    let model = HyperellipticModel::new(&k, &h).ok_or(usage("h must be squarefree of degree at least 3"))?;
    let g = model.genus();
    let n = counts(&model).map_err(|e| (1, e.to_string()))?;
    let l = lpoly_from_counts(&n, &BigInt::from(k.cardinality()), g).map_err(|e| (1, e.to_string()))?;
    println!("q = {}, genus {g}", k.cardinality());
    println!("counts: {n:?}");
    println!("L: {:?}", l.coeffs);
    println!("p-rank: {}", p_rank(&l, a.p));
    println!("Cartier-Manin stable rank: {}", cartier_manin(&model).1);
    if let Some(m) = a.base_change {
        println!("L over F_q^{m}: {:?}", base_change(&l, m).coeffs);
    }
    Ok(ExitCode::SUCCESS)
}

fn run_twist(file: PathBuf) -> CliResult {
    let text = std::fs::read_to_string(&file).map_err(|e| (1, format!("{}: {e}", file.display())))?;
    let report = verify_json(&text).map_err(|e| (1, format!("schema error at {e}")))?;
    if !report.passed() {
        return Err((1, format!("certificate does not verify:\n{}", report.render())));
    }
    let cert = Certificate::from_json(&text).map_err(|e| (1, e.to_string()))?;
    let twist = cert.twist.ok_or_else(|| {
        let n = cert.field.degree * cert.split.k_degree;
        (1, format!("no twist recorded: K = F_{}^{n} is beyond the supported field size", cert.field.p))
    })?;
    println!("{}", serde_json::to_string_pretty(&twist).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Search(a) => run_search(a),
        Command::Verify { files } => run_verify(files),
        Command::Construct(a) => run_construct(a),
        Command::Zeta(a) => run_zeta(a),
        Command::Twist { file } => run_twist(file),
    };
    match result {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
