//! `eqlab`: batch front-end for the eqlab-core workbench.
//!
//! Exit status 0 means the job finished with the expected verdict, 2 a
//! negative verdict (refuted certificate, relation where freeness was
//! expected, failed family check), 1 an error.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use eqlab_core::config;
use eqlab_core::freeness::{ping_pong_certify, relation_search, CertifyOutcome};
use eqlab_core::heights::{
    canonical_height_estimate, height_from_poly, is_preperiodic, small_height_experiment, weil_height, IntPolynomial, OrbitVerdict,
};
use eqlab_core::parse::parse_poly;
use eqlab_core::puiseux::expand_equalizer_branches;
use eqlab_core::solver::{classify_pair, conjunction_solve, enumerate_solutions, family_verify, FamilyId};
use serde_json::{json, Value};

use output::Sink;

#[derive(Parser)]
#[command(name = "eqlab", version, about = "Equalizers, freeness certificates and heights for Möbius and rational maps")]
struct Cli {
    /// Starting precision in bits for certified numerics.
    #[arg(long, global = true, env = "EQLAB_PRECISION")]
    precision: Option<u64>,
    /// Write results here (atomically) instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Triple {
    /// First Möbius map, e.g. "X + 2".
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// Second Möbius map.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Target rational function.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// JSON job file {"f", "g", "c", "N"}; flags override its fields.
    #[arg(long)]
    job: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solutions of fⁿ(λ) = gⁿ(λ) = c(λ) for one n.
    Solve {
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        n: u64,
    },
    /// Solutions for every n from 1 to N, one JSON line per record.
    Enumerate {
        #[command(flatten)]
        triple: Triple,
        /// Largest exponent
        #[arg(long = "N")]
        big_n: Option<u64>,
    },
    /// Which exceptional family, if any, the pair belongs to.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value_t = config::DEFAULT_RU_BOUND)]
        ru_bound: u64,
    },
    /// Exact check of a counter-example family.
    FamilyVerify {
        #[arg(long)]
        family: String,
        /// Parameters in the family's order, space or comma separated;
        /// missing ones take defaults.
        #[arg(long, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true)]
        params: Vec<String>,
        /// Largest exponent checked
        #[arg(long = "N", default_value_t = 50)]
        big_n: u64,
    },
    /// Ping-pong certificate for the maps and a sets file.
    CertifyFree {
        /// Maps in order; quote a leading minus as "(-2*X)" or use --maps=-2*X.
        #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
        maps: Vec<String>,
        #[arg(long)]
        sets: PathBuf,
        /// Also report whether the images fill each set.
        #[arg(long)]
        equality: bool,
    },
    /// Shortest pair of distinct words giving the same map.
    Relations {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// Treat a relation as a negative verdict.
        #[arg(long)]
        expect_free: bool,
    },
    /// Weil height of a number, or average height over the roots of a polynomial.
    Heights {
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        minpoly: Option<String>,
        /// With a rational x, also estimate the canonical height for this map.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Iterations for the canonical height estimate
        #[arg(long = "N", default_value_t = 10)]
        big_n: u32,
    },
    /// Average heights of the roots of fⁿ − c, as CSV.
    Smallheight {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 1)]
        n_from: u32,
        #[arg(long)]
        n_to: u32,
        /// JSON lines instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Puiseux expansion of both equalizer branches and their valuations.
    PuiseuxVerify {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        i: i64,
        #[arg(long, default_value_t = config::DEFAULT_SERIES_ORDER.to_string())]
        order: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Verdict {
    Expected,
    Negative,
}

fn triple(t: &Triple) -> Result<(input::Job, Option<u64>)> {
    let from_file = t.job.as_deref().map(input::job).transpose()?;
    let pick = |flag: &Option<String>, name: &str| -> Result<String> { flag.clone().ok_or_else(|| anyhow!("missing --{} (or a --job file)", name)) };
    let job = match from_file {
        Some(mut j) => {
            if let Some(f) = &t.f {
                j.f = input::mobius(f)?;
            }
            if let Some(g) = &t.g {
                j.g = input::mobius(g)?;
            }
            if let Some(c) = &t.c {
                j.c = input::ratfun(c)?;
            }
            j
        }
        None => input::Job {
            f: input::mobius(&pick(&t.f, "f")?)?,
            g: input::mobius(&pick(&t.g, "g")?)?,
            c: input::ratfun(&pick(&t.c, "c")?)?,
            big_n: None,
        },
    };
    let n = job.big_n;
    Ok((job, n))
}

fn run(cmd: Command, out: &mut Sink) -> Result<Verdict> {
    match cmd {
        Command::Solve { triple: t, n } => {
            let (job, _) = triple(&t)?;
            let res = conjunction_solve(&job.f, &job.g, &job.c, n).context("solver")?;
            for r in res.records.iter().chain(&res.at_infinity) {
                out.json(&output::record(r));
            }
            if res.degenerate {
                out.json(&json!({ "n": n, "degenerate": true }));
            }
            Ok(Verdict::Expected)
        }
        Command::Enumerate { triple: t, big_n } => {
            let (job, file_n) = triple(&t)?;
            let big_n = big_n.or(file_n).ok_or_else(|| anyhow!("missing --N (or \"N\" in the job file)"))?;
            let en = enumerate_solutions(&job.f, &job.g, &job.c, big_n).context("solver")?;
            for r in en.records.iter().chain(&en.at_infinity) {
                out.json(&output::record(r));
            }
            for n in &en.degenerate_n {
                out.json(&json!({ "n": n, "degenerate": true }));
            }
            Ok(Verdict::Expected)
        }
        Command::Classify { f, g, ru_bound } => {
            let c = classify_pair(&input::mobius(&f)?, &input::mobius(&g)?, ru_bound).context("solver")?;
            let witness = c.witness.as_ref().map(|(q, o)| json!({ "quantity": q, "order": o }));
            let tested: Vec<Value> =
                c.tested.iter().map(|t| json!({ "quantity": t.quantity, "value": t.value.to_string(), "order": t.order })).collect();
            out.json(&json!({
                "family": c.family.to_string(),
                "witness": witness,
                "case": c.case.map(|k| k.to_string()),
                "reason": c.reason,
                "tested": tested,
            }));
            Ok(Verdict::Expected)
        }
        Command::FamilyVerify { family, params, big_n } => {
            let id: FamilyId = family.parse().context("solver")?;
            let params = params.iter().map(|p| input::scalar(p)).collect::<Result<Vec<_>>>()?;
            let rep = family_verify(id, &params, big_n).context("solver")?;
            for p in &rep.pieces {
                for (n, pass) in &p.results {
                    out.json(&json!({ "family": id.to_string(), "piece": p.label, "n": n, "pass": pass }));
                }
            }
            let printed = rep
                .printed
                .as_ref()
                .map(|pr| json!({ "c_matches": pr.c_matches, "passes": pr.results.iter().filter(|r| r.1).count(), "checked": pr.results.len() }));
            out.json(&json!({ "family": id.to_string(), "checked": rep.checked(), "all_pass": rep.all_pass(), "warnings": rep.warnings, "printed": printed }));
            Ok(if rep.all_pass() { Verdict::Expected } else { Verdict::Negative })
        }
        Command::CertifyFree { maps, sets, equality } => {
            let maps = maps.iter().map(|m| input::mobius(m)).collect::<Result<Vec<_>>>()?;
            let sets = input::sets(&sets)?;
            match ping_pong_certify(&maps, &sets, equality).context("freeness")? {
                CertifyOutcome::Certified(c) => {
                    out.json(&output::certificate(&c));
                    Ok(Verdict::Expected)
                }
                CertifyOutcome::Refuted(v) => {
                    out.json(&output::violation(&v));
                    Ok(Verdict::Negative)
                }
            }
        }
        Command::Relations { f, g, max_len, expect_free } => {
            match relation_search(&input::mobius(&f)?, &input::mobius(&g)?, max_len).context("freeness")? {
                Some(w) => {
                    out.json(&output::relation(&w));
                    Ok(if expect_free { Verdict::Negative } else { Verdict::Expected })
                }
                None => {
                    out.json(&json!({ "relation": null, "max_len": max_len }));
                    Ok(Verdict::Expected)
                }
            }
        }
        Command::Heights { x, minpoly, f, big_n } => heights(x, minpoly, f, big_n, out),
        Command::Smallheight { f, c, n_from, n_to, json } => {
            let rows =
                small_height_experiment(&input::ratfun(&f)?, &input::ratfun(&c)?, n_from, n_to, config::start_precision()).context("heights")?;
            if !json {
                out.line("n,degree,mahler,avg_height,error,bound_ratio");
            }
            for r in rows {
                if json {
                    out.json(&json!({ "n": r.n, "degree": r.degree, "mahler": r.mahler, "avg_height": r.avg_height, "error": r.error, "bound_ratio": r.bound_ratio }));
                } else {
                    out.line(format!("{},{},{},{},{},{}", r.n, r.degree, r.mahler, r.avg_height, r.error, r.bound_ratio));
                }
            }
            Ok(Verdict::Expected)
        }
        Command::PuiseuxVerify { alpha, beta, gamma, delta, k, i, order } => {
            let (a, b, g, d) = (input::scalar(&alpha)?, input::scalar(&beta)?, input::scalar(&gamma)?, input::scalar(&delta)?);
            let (k, order) = (input::rational(&k)?, input::rational(&order)?);
            let ex = expand_equalizer_branches(&a, &b, &g, &d, i, &k, &order).context("puiseux")?;
            let rep = ex.verify(&a, &b, &g, &d).context("puiseux")?;
            out.json(&json!({
                "val_plus": rep.val_plus.to_string(),
                "val_minus": rep.val_minus.to_string(),
                "residual_ok": rep.residual_ok,
                "product_ok": rep.product_ok,
                "sum_ok": rep.sum_ok,
                "relative_order_plus": rep.relative_order_plus.to_string(),
                "relative_order_minus": rep.relative_order_minus.to_string(),
                "plus": ex.plus.to_string(),
                "minus": ex.minus.to_string(),
            }));
            Ok(if rep.all_ok() { Verdict::Expected } else { Verdict::Negative })
        }
    }
}

fn heights(x: Option<String>, minpoly: Option<String>, f: Option<String>, big_n: u32, out: &mut Sink) -> Result<Verdict> {
    let prec = config::start_precision();
    let (label, h) = match (&x, &minpoly) {
        (Some(x), None) => (json!({ "x": input::scalar(x)?.to_string() }), weil_height(&input::scalar(x)?, prec).context("heights")?),
        (None, Some(p)) => {
            let poly = parse_poly(p).with_context(|| format!("parse: polynomial {:?}", p))?;
            let q = poly.to_qpoly().ok_or_else(|| anyhow!("heights: polynomial coefficients must be rational"))?;
            let ip = IntPolynomial::from_qpoly(&q).context("heights")?;
            (json!({ "minpoly": ip.to_string() }), height_from_poly(&ip, prec).context("heights")?)
        }
        _ => bail!("give exactly one of --x and --minpoly"),
    };
    let mut v = label;
    v["height"] = json!(h.value.value);
    v["error"] = json!(h.value.error);
    v["poly"] = json!(h.poly.to_string());
    v["minimal"] = json!(h.minimal);
    if let Some(f) = f {
        let map = input::ratfun(&f)?;
        let x = x.ok_or_else(|| anyhow!("--f needs a rational --x"))?;
        let point = if x.trim() == "inf" { None } else { Some(input::rational(&x)?) };
        let orbit = is_preperiodic(&map, &point, 1000, None).context("heights")?;
        let verdict = match orbit.verdict {
            OrbitVerdict::Preperiodic { tail, cycle } => json!({ "verdict": "preperiodic", "tail": tail, "cycle": cycle }),
            OrbitVerdict::EscapedHeightBound => json!({ "verdict": "escaped", "height_bound": orbit.height_bound }),
            OrbitVerdict::Undecided => json!({ "verdict": "undecided" }),
        };
        v["orbit"] = verdict;
        if let Some(p) = &point {
            match canonical_height_estimate(&map, p, big_n) {
                Ok(e) => v["canonical"] = json!({ "N": big_n, "value": e.value, "error": e.error }),
                Err(e) => v["canonical"] = json!({ "N": big_n, "error_message": e.to_string() }),
            }
        }
    }
    out.json(&v);
    Ok(Verdict::Expected)
}

fn main() -> ExitCode {
    // usage errors share status 1 with every other error; 2 is a verdict
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(p) = cli.precision {
        config::set_start_precision(p);
    }
    let mut sink = Sink::new(cli.output);
    match run(cli.command, &mut sink).and_then(|v| sink.finish().map(|_| v)) {
        Ok(Verdict::Expected) => ExitCode::SUCCESS,
        Ok(Verdict::Negative) => ExitCode::from(2),
        Err(e) => {
            eprintln!("eqlab: {:#}", e);
            ExitCode::from(1)
        }
    }
}
