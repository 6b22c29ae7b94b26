//! Literal and JSON inputs.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use eqlab_core::algebra::{Mobius, Polynomial, RationalFunction};
use eqlab_core::freeness::{Arc, CirclePoint, Piece, PingPongSet, Progression};
use eqlab_core::numeric::Scalar;
use eqlab_core::parse::{mobius_from_ratfun, parse_mobius, parse_ratfun, parse_scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

pub fn scalar(src: &str) -> Result<Scalar> {
    parse_scalar(src).with_context(|| format!("parse: scalar {:?}", src))
}

pub fn rational(src: &str) -> Result<BigRational> {
    scalar(src)?.as_rational().ok_or_else(|| anyhow!("parse: {:?} is not rational", src))
}

fn literal(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => bail!("parse: expected a scalar literal, got {}", v),
    }
}

fn coefficient_list(v: &Value) -> Result<Polynomial> {
    let items = v.as_array().ok_or_else(|| anyhow!("parse: expected a coefficient list, got {}", v))?;
    let coeffs = items.iter().map(|c| scalar(&literal(c)?)).collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(coeffs))
}

/// A rational function from text, or from `{"num": [...], "den": [...]}`
/// with coefficients lowest degree first.
pub fn ratfun_value(v: &Value) -> Result<RationalFunction> {
    match v {
        Value::Object(o) => {
            let num = coefficient_list(o.get("num").ok_or_else(|| anyhow!("parse: missing \"num\""))?)?;
            let den = match o.get("den") {
                Some(d) => coefficient_list(d)?,
                None => Polynomial::one(),
            };
            RationalFunction::new(num, den).context("algebra: invalid rational function")
        }
        other => ratfun(&literal(other)?),
    }
}

pub fn ratfun(src: &str) -> Result<RationalFunction> {
    if src.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(src).context("parse: rational function JSON")?;
        return ratfun_value(&v);
    }
    parse_ratfun(src).with_context(|| format!("parse: rational function {:?}", src))
}

pub fn mobius_value(v: &Value) -> Result<Mobius> {
    match v {
        Value::Object(_) => {
            let r = ratfun_value(v)?;
            mobius_from_ratfun(&r).ok_or_else(|| anyhow!("parse: {} is not a Möbius map", r))
        }
        other => mobius(&literal(other)?),
    }
}

pub fn mobius(src: &str) -> Result<Mobius> {
    if src.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(src).context("parse: map JSON")?;
        return mobius_value(&v);
    }
    parse_mobius(src).with_context(|| format!("parse: map {:?}", src))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("io: reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parse: JSON in {}", path.display()))
}

/// `{"f", "g", "c", "N"}`
pub struct Job {
    pub f: Mobius,
    pub g: Mobius,
    pub c: RationalFunction,
    pub big_n: Option<u64>,
}

pub fn job(path: &Path) -> Result<Job> {
    let v = read_json(path)?;
    let field = |k: &str| v.get(k).ok_or_else(|| anyhow!("parse: job file lacks {:?}", k));
    Ok(Job {
        f: mobius_value(field("f")?)?,
        g: mobius_value(field("g")?)?,
        c: ratfun_value(field("c")?)?,
        big_n: v.get("N").map(|n| n.as_u64().ok_or_else(|| anyhow!("parse: \"N\" must be a positive integer"))).transpose()?,
    })
}

fn endpoint(v: &Value) -> Result<CirclePoint> {
    let s = literal(v)?;
    if matches!(s.trim(), "inf" | "infinity" | "oo") {
        return Ok(None);
    }
    Ok(Some(rational(&s)?))
}

fn integer(v: &Value) -> Result<BigInt> {
    let r = rational(&literal(v)?)?;
    if !r.is_integer() {
        bail!("parse: progression entries must be integers, got {}", r);
    }
    Ok(r.to_integer())
}

fn pairs(v: Option<&Value>) -> Result<Vec<(&Value, &Value)>> {
    let Some(v) = v else { return Ok(vec![]) };
    let items = v.as_array().ok_or_else(|| anyhow!("parse: expected a list of pairs"))?;
    items
        .iter()
        .map(|p| match p.as_array().map(|a| a.as_slice()) {
            Some([a, b]) => Ok((a, b)),
            _ => bail!("parse: expected a pair, got {}", p),
        })
        .collect()
}

fn set(v: &Value) -> Result<PingPongSet> {
    let mut pieces = vec![];
    for (lo, hi) in pairs(v.get("intervals"))? {
        pieces.push(Piece::Arc(Arc::new(endpoint(lo)?, endpoint(hi)?)));
    }
    for (start, step) in pairs(v.get("progressions"))? {
        pieces.push(Piece::Progression(Progression::new(integer(start)?, integer(step)?).context("freeness: invalid progression")?));
    }
    Ok(PingPongSet::new(pieces))
}

/// A list of sets, either bare or under `"sets"`.
pub fn sets(path: &Path) -> Result<Vec<PingPongSet>> {
    let v = read_json(path)?;
    let list = match &v {
        Value::Array(a) => a,
        Value::Object(o) => o.get("sets").and_then(Value::as_array).ok_or_else(|| anyhow!("parse: sets file needs a \"sets\" list"))?,
        _ => bail!("parse: sets file must hold a list"),
    };
    list.iter().map(set).collect()
}
