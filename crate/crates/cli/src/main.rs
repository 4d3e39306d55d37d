mod config;
mod report;

use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use envelope_core::certify::{self as cert, Bound, Case, Certificate, CategoryInfo, Verdict};
use envelope_core::homspace::HomBasis;
use envelope_core::ideals::slice_dims;
use envelope_core::sl2;
use envelope_core::{DynCategory, Word};

use config::{Format, Overrides, RunConfig};

/// Exact certificates for pseudo-tensor categories.
///
/// Exit status: 0 certified, 1 refuted, 2 inconclusive at the bound,
/// 3 invalid input or resource cap.
#[derive(Parser)]
#[command(name = "envelope", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a faithfulness or splitting check on the configured category
    Certify {
        /// faithful | strongly-faithful | strongly-faithful-mn | gamma-splitexact | witnesses | summand
        check: Option<String>,
        #[command(flatten)]
        o: Overrides,
    },
    /// Hom-space dimensions between all words up to the degree bound
    Homdim {
        #[command(flatten)]
        o: Overrides,
    },
    /// Ideal and quotient dimensions between all words up to the degree bound
    Ideal {
        #[command(flatten)]
        o: Overrides,
    },
    /// Tilting-module computations for SL_2 in characteristic p
    Sl2 {
        /// decompose | linkage | tilting-char | st-faithful | envelope
        subcheck: Option<String>,
        #[command(flatten)]
        o: Overrides,
    },
    /// Render a certificate file as text
    Report { file: String },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let (cfg, mut c) = match cli.cmd {
        Cmd::Report { file } => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {file}"))?;
            let c = report::parse(&text).with_context(|| format!("certificate {file}"))?;
            print!("{}", report::render(&c));
            return Ok(0);
        }
        Cmd::Certify { check, o } => {
            let cfg = RunConfig::load(&o)?;
            let c = certify(&cfg, &cfg.check(check)?)?;
            (cfg, c)
        }
        Cmd::Homdim { o } => {
            let cfg = RunConfig::load(&o)?;
            let c = homdim(&cfg)?;
            (cfg, c)
        }
        Cmd::Ideal { o } => {
            let cfg = RunConfig::load(&o)?;
            let c = ideal(&cfg)?;
            (cfg, c)
        }
        Cmd::Sl2 { subcheck, o } => {
            let cfg = RunConfig::load(&o)?;
            let c = sl2_check(&cfg, &cfg.check(subcheck)?)?;
            (cfg, c)
        }
    };
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    c.timestamp = Some(format!("unix:{secs}"));
    match &cfg.output.path {
        Some(path) => {
            std::fs::write(path, c.to_json() + "\n").with_context(|| format!("output.path: writing {path}"))?;
            print!("{}", report::render(&c));
        }
        None => match cfg.output.format {
            Format::Json => println!("{}", c.to_json()),
            Format::Text => print!("{}", report::render(&c)),
        },
    }
    Ok(match c.verdict {
        Verdict::Certified => 0,
        Verdict::Refuted => 1,
        Verdict::Inconclusive => 2,
    })
}

fn certify(cfg: &RunConfig, check: &str) -> Result<Certificate> {
    let cat = cfg.category()?;
    let x = cat.word(cfg.object_word()).context("job.object")?;
    let degree = cfg.degree(4);
    let c = match check {
        "faithful" => cert::check_faithful(&cat, &x, &cert::words_up_to(&cat, degree))?,
        "strongly-faithful" => cert::check_strongly_faithful_homform(&cat, &x, &cert::words_up_to(&cat, degree))?,
        "strongly-faithful-mn" => cert::check_strongly_faithful_mnform(&cat, &x, &cert::mn_pairs_up_to(&cat, degree))?,
        "gamma-splitexact" => cert::check_gamma_xx_splitexact(&cat, &x)?,
        "witnesses" => cert::witness_certificate(&cat, &x)?,
        "summand" => {
            let (z, incl, proj) = cert::canonical_summand(&cat, &x);
            cert::check_lem_eo(&cat, &x, &x, &z, &incl, &proj)?
        }
        other => bail!("job.check: unknown check {other:?}"),
    };
    Ok(c)
}

fn word_pairs(cat: &DynCategory, degree: usize) -> Result<Vec<(Word, Word)>> {
    let words = Word::all_up_to(cat.kind(), degree);
    let mut out = Vec::new();
    for a in &words {
        for b in &words {
            if !cat.hom_diagrams(a, b)?.is_empty() {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

fn table_certificate(cat: &DynCategory, check: &str, degree: usize, name: &str, rows: Vec<serde_json::Value>) -> Certificate {
    let mut c = Certificate::new(json!({ "check": check, "degree": degree }), Some(CategoryInfo::of(cat)));
    c.bound = Some(Bound { degree: Some(degree), family: Word::all_up_to(cat.kind(), degree).iter().map(|w| w.to_string()).collect() });
    c.tables = Some(json!({ name: rows }));
    c
}

fn homdim(cfg: &RunConfig) -> Result<Certificate> {
    let cat = cfg.category()?;
    let degree = cfg.degree(4);
    let mut rows = Vec::new();
    for (a, b) in word_pairs(&cat, degree)? {
        let hb = HomBasis::new(&cat, &cat.object(&a)?, &cat.object(&b)?)?;
        rows.push(json!({
            "source": a.to_string(),
            "target": b.to_string(),
            "diagrams": hb.ambient_dim(),
            "dim": hb.dim(),
        }));
    }
    Ok(table_certificate(&cat, "homdim", degree, "hom_dims", rows))
}

fn ideal(cfg: &RunConfig) -> Result<Certificate> {
    let cat = cfg.category()?;
    let degree = cfg.degree(4);
    let mut rows = Vec::new();
    for (a, b) in word_pairs(&cat, degree)? {
        let d = slice_dims(&cat, &cat.object(&a)?, &cat.object(&b)?)?;
        rows.push(serde_json::to_value(d)?);
    }
    Ok(table_certificate(&cat, "ideal", degree, "ideal_dims", rows))
}

fn sl2_check(cfg: &RunConfig, sub: &str) -> Result<Certificate> {
    let p = cfg.job.p.unwrap_or(3);
    let r = cfg.job.r.unwrap_or(2);
    let caps = cfg.caps();
    let c = match sub {
        "decompose" => {
            let n = cfg.degree(8);
            let rows = sl2::decomposition_table(n, p, &caps)?;
            let mut c = Certificate::new(json!({ "check": "tilting-decomposition", "p": p, "max_n": n }), None);
            c.cases = rows
                .iter()
                .map(|row| {
                    let parts: Vec<String> = row.idempotent_route.iter().map(|(k, m)| format!("{m}·T_{k}")).collect();
                    Case::note(format!("V^{}", row.n), row.agree, parts.join(" + "))
                })
                .collect();
            c.tables = Some(json!({ "decompositions": rows }));
            c.settle_by_cases();
            c
        }
        "linkage" => {
            let j = r;
            let a = p.pow(j) - 1;
            let gap = 2 * p.pow(j + 1) - p.pow(j) - 1;
            let bound = 4 * p.pow(j + 1);
            let orbit = sl2::linkage_orbit(a, p, bound);
            let mut c = Certificate::new(json!({ "check": "linkage-gap", "p": p, "j": j, "bound": bound }), None);
            let inside: Vec<u64> = orbit.iter().copied().filter(|&x| x != a && x < gap).collect();
            c.cases.push(Case::note(
                format!("a = {a}"),
                inside.is_empty(),
                format!("no linked weight in ({a}, {gap})"),
            ));
            c.tables = Some(json!({ "orbit": orbit }));
            c.settle_by_cases();
            c
        }
        "tilting-char" => {
            let i = cfg.job.i.context("job.i: required for tilting-char")?;
            sl2::check_tilting_char_necessary(i, r, p)?
        }
        "st-faithful" => sl2::verify_st_strongly_faithful(p, r, caps)?,
        "envelope" => {
            let m = cfg.job.max_label.unwrap_or(cfg.degree(4));
            sl2::certify_envelope_hypothesis_sl2(p, r, None, m, caps)?
        }
        other => bail!("job.check: unknown sl2 check {other:?}"),
    };
    Ok(c)
}
