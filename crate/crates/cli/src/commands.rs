use std::f64::consts::E;

use rkt_core::disk::{
    green_residual, littlewood_paley_residual, proof_identity, DiskQuadrature, IdentityCheck,
    UchiyamaWeight,
};
use rkt_core::embedding::{
    carleson_box_constant, rkt_embedding_test, DiscreteMeasure, EmbeddingReport,
};
use rkt_core::rkt::{
    garsia_heatmap, random_analytic, random_disk_poly, random_harmonic_poly, random_symbol,
    seeded_rng, sup_garsia, verify_rkt, LambdaGrid,
};
use rkt_core::search::{search, SearchConfig};
use rkt_core::{HankelSymbol, TrigPolynomial};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::output::{csv_float, emit_heatmap, read_json, write_text, InputError};

pub enum Output {
    /// Wrapped in the meta envelope; `pass = false` exits with 1.
    Report { report: Value, pass: bool },
    /// Printed as is (data files meant to be fed back in).
    Raw(String),
}

type Run = Result<Output, InputError>;

fn report<T: Serialize>(r: &T, pass: bool) -> Run {
    Ok(Output::Report {
        report: serde_json::to_value(r).expect("reports serialize"),
        pass,
    })
}

fn load_symbol(src: &SymbolSource) -> Result<HankelSymbol, InputError> {
    match &src.symbol_file {
        Some(p) => read_json(p),
        None => {
            let r = &src.random_args;
            Ok(random_symbol(r.seed, r.m, r.d, r.decay)?)
        }
    }
}

fn load_grid(path: Option<&std::path::PathBuf>) -> Result<LambdaGrid, InputError> {
    let grid = match path {
        Some(p) => read_json(p)?,
        None => LambdaGrid::default(),
    };
    grid.validate()?;
    Ok(grid)
}

fn load_poly(path: &std::path::Path) -> Result<TrigPolynomial, InputError> {
    let f: TrigPolynomial = read_json(path)?;
    f.require_analytic()?;
    Ok(f)
}

fn quadrature(q: &Quadrature) -> DiskQuadrature {
    let base = DiskQuadrature::new(q.nr);
    match q.nt {
        Some(nt) => base.with_angular_nodes(nt),
        None => base,
    }
}

#[derive(Serialize)]
struct Checked<T: Serialize> {
    #[serde(flatten)]
    check: IdentityCheck,
    #[serde(flatten)]
    details: T,
}

pub fn gen_symbol(a: &GenSymbol) -> Run {
    let r = &a.random;
    let s = random_symbol(r.seed, r.m, r.d, r.decay)?;
    Ok(Output::Raw(crate::output::to_json(&s)))
}

pub fn verify(a: &VerifyRkt) -> Run {
    if a.symbol.symbol_file.is_none() && !a.symbol.random {
        return Err(InputError::Invalid(
            "verify-rkt needs a symbol file or --random".into(),
        ));
    }
    let s = load_symbol(&a.symbol)?;
    let grid = load_grid(a.grid.as_ref())?;
    let rep = verify_rkt(&s, &grid)?;
    if let Some(path) = &a.heatmap {
        emit_heatmap(path, &garsia_heatmap(&s, &grid))?;
    }
    report(&rep, rep.pass)
}

pub fn lp(a: &LpCheck) -> Run {
    let f = match &a.input {
        Some(p) => load_poly(p)?,
        None => random_analytic(&mut seeded_rng(a.seed), a.degree, a.dim),
    };
    let q = quadrature(&a.quad);
    let residual = littlewood_paley_residual(&f, &q)?;
    let check = IdentityCheck::new("littlewood-paley", residual, a.tol);
    let pass = check.pass;
    let details = json!({
        "degree": f.n_max().unwrap_or(0),
        "dim": f.dim(),
        "norm_sqr": f.norm_sqr(),
        "n_r": q.radial_nodes(),
    });
    report(&Checked { check, details }, pass)
}

pub fn green(a: &GreenCheck) -> Run {
    let q = quadrature(&a.quad);
    let mut rng = seeded_rng(a.seed);
    let residuals: Vec<f64> = (0..a.samples)
        .map(|_| {
            let u = if a.harmonic {
                random_harmonic_poly(&mut rng, a.degree)
            } else {
                random_disk_poly(&mut rng, a.degree, a.terms)
            };
            green_residual(&u, &q)
        })
        .collect();
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    let check = IdentityCheck::new("green", worst, a.tol);
    let pass = check.pass;
    let details =
        json!({ "samples": a.samples, "radial_degree": a.degree, "residuals": residuals });
    report(&Checked { check, details }, pass)
}

pub fn uchiyama(a: &UchiyamaCheck) -> Run {
    let s = load_symbol(&a.symbol)?;
    let grid = load_grid(a.grid.as_ref())?;
    let sup = sup_garsia(&s, &grid).value;
    if sup.is_nan() || sup <= 0.0 {
        return Err(InputError::Invalid(
            "symbol has A = 0 and cannot be normalized".into(),
        ));
    }
    let normalized = s.scaled((1.0 / sup).into());
    let weight = UchiyamaWeight::new(&normalized, &grid)?;
    let q = quadrature(&a.quad);
    let fs: Vec<TrigPolynomial> = match &a.f {
        Some(p) => vec![load_poly(p)?],
        None => {
            let mut rng = seeded_rng(a.symbol.random_args.seed ^ 0x5eed);
            (0..a.samples)
                .map(|_| random_analytic(&mut rng, a.degree, 1))
                .collect()
        }
    };
    let ratios = fs
        .iter()
        .map(|f| weight.ratio(f, &q))
        .collect::<Result<Vec<_>, _>>()?;
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let mut check = IdentityCheck::new("uchiyama", (max - E).max(0.0), a.tol);
    check.pass &= min >= 0.0;
    let pass = check.pass;
    let details = json!({
        "bound": E,
        "max_ratio": max,
        "min_ratio": min,
        "ratios": ratios,
        "normalization": 1.0 / sup,
        "measured_sup": weight.measured_sup(),
    });
    report(&Checked { check, details }, pass)
}

pub fn proof(a: &ProofCheck) -> Run {
    let s = load_symbol(&a.symbol)?;
    let q = quadrature(&a.quad);
    let mut rng = seeded_rng(a.symbol.random_args.seed ^ 0x9f00f);
    let fixed_f = a.f.as_deref().map(load_poly).transpose()?;
    let fixed_g = a.g.as_deref().map(load_poly).transpose()?;
    let rounds = if fixed_f.is_some() && fixed_g.is_some() {
        1
    } else {
        a.samples
    };
    let mut worst = 0.0f64;
    let mut pairs = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let f = fixed_f
            .clone()
            .unwrap_or_else(|| random_analytic(&mut rng, a.degree, 1));
        let g = fixed_g.clone().unwrap_or_else(|| {
            random_analytic(&mut rng, a.degree.max(1), s.dim()).truncate(1, a.degree.max(1) as i64)
        });
        let p = proof_identity(&s, &f, &g, &q)?;
        worst = worst.max(p.residual());
        pairs.push(p);
    }
    let check = IdentityCheck::new("boundary-area", worst, a.tol);
    let pass = check.pass;
    let details = json!({ "samples": rounds, "evaluations": pairs });
    report(&Checked { check, details }, pass)
}

pub fn search_extremal(a: &SearchExtremal) -> Run {
    let cfg: SearchConfig = read_json(&a.config)?;
    cfg.validate()?;
    let trace = search(&cfg)?;
    if let Some(path) = &a.trace_csv {
        let mut s = String::from("restart,step,ratio,accepted,best\n");
        for r in &trace.restarts {
            for t in &r.steps {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    t.restart,
                    t.step,
                    csv_float(t.ratio),
                    t.accepted,
                    csv_float(t.best)
                ));
            }
        }
        write_text(Some(path), &s)?;
    }
    if trace.bound_exceeded {
        eprintln!(
            "rkt: BOUND EXCEEDED: ratio {} is above 2√e + slack",
            trace.max_recorded_ratio
        );
    }
    report(&trace, !trace.bound_exceeded)
}

fn load_measure(path: &std::path::Path) -> Result<DiscreteMeasure, InputError> {
    let mu: DiscreteMeasure = read_json(path)?;
    mu.validate()?;
    Ok(mu)
}

pub fn embed(a: &EmbedTest) -> Run {
    let mu = load_measure(&a.measure)?;
    let grid = load_grid(a.grid.as_ref())?;
    let rep = rkt_embedding_test(&mu, &mu.family(), &grid, a.n)?;
    report(&rep, rep.pass)
}

#[derive(Serialize)]
struct CarlesonReport {
    /// Sup over dyadic boxes of ν(Q)/|I|, ν = Σ w_i (1-|λ_i|²) δ_{λ_i}.
    dyadic_carleson_constant: f64,
    embedding: EmbeddingReport,
    embedding_over_carleson: Option<f64>,
    pass: bool,
}

pub fn carleson(a: &CarlesonCheck) -> Run {
    let mu = load_measure(&a.measure)?;
    if mu.atoms.iter().any(|at| at.theta_zeros.is_some()) {
        return Err(InputError::Invalid(
            "carleson-check uses the elementary factor at each atom; drop theta_zeros".into(),
        ));
    }
    let grid = load_grid(a.grid.as_ref())?;
    let constant = carleson_box_constant(&mu);
    let embedding = rkt_embedding_test(&mu, &mu.family(), &grid, a.n)?;
    let pass = embedding.pass && constant.is_finite();
    let rep = CarlesonReport {
        dyadic_carleson_constant: constant,
        embedding_over_carleson: (constant > 0.0).then(|| embedding.c_est / constant),
        embedding,
        pass,
    };
    report(&rep, pass)
}
