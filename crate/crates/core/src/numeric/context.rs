//! Field contexts `ℚ[x]/(m)` with a tracked complex root of `m`.
//!
//! A context is created for each adjoined generator (square roots, roots of
//! unity, composita). The modulus is squarefree but need not be irreducible;
//! when a zero divisor shows up the context is split and forwarded to the
//! factor that carries the tracked root.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::{exact_isqrt, CBall, Dyadic};
use super::error::NumericError;
use super::linalg::Echelon;
use super::qpoly::{self, q, QPoly};
use super::roots;
use crate::config;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub type Ctx = Arc<FieldContext>;

/// Forwarding target after a split: the new context and the image of this
/// context's generator there.
type Forward = (Ctx, QPoly);

pub struct FieldContext {
    id: u64,
    modulus: QPoly,
    literal: String,
    compound: bool,
    iso: CBall,
    best: Mutex<CBall>,
    real: bool,
    irreducible: bool,
    parents: Vec<(Ctx, QPoly)>,
    split_to: Mutex<Option<Forward>>,
}

impl std::fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ctx#{}[{} ; {}]", self.id, self.literal, qpoly::to_string_var(&self.modulus, "x"))
    }
}

struct Registry {
    base: HashMap<String, Ctx>,
    merges: HashMap<(u64, u64), Ctx>,
    /// Radicands of the interned square-root contexts.
    radicands: Vec<BigInt>,
}

fn registry() -> &'static Mutex<Registry> {
    static REG: OnceLock<Mutex<Registry>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(Registry { base: HashMap::new(), merges: HashMap::new(), radicands: vec![] }))
}

/// The context ℚ itself (modulus `x`, generator `0`).
pub fn rational_context() -> Ctx {
    static Q: OnceLock<Ctx> = OnceLock::new();
    Q.get_or_init(|| {
        Arc::new(FieldContext {
            id: 0,
            modulus: qpoly::from_i64s(&[0, 1]),
            literal: "0".into(),
            compound: false,
            iso: CBall::zero(),
            best: Mutex::new(CBall::zero()),
            real: true,
            irreducible: true,
            parents: vec![],
            split_to: Mutex::new(None),
        })
    })
    .clone()
}

/// Result of building a context from a modulus: either a genuine context or a
/// rational value when the tracked root is rational.
pub enum Built {
    Field(Ctx),
    Rational(BigRational),
}

impl FieldContext {
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn is_rational(&self) -> bool {
        self.id == 0
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    pub fn literal(&self) -> &str {
        &self.literal
    }

    /// Generator literal, parenthesized when it is a compound expression.
    pub fn atom(&self) -> String {
        if self.compound {
            format!("({})", self.literal)
        } else {
            self.literal.clone()
        }
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Whether the modulus is known to be irreducible.
    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn parents(&self) -> &[(Ctx, QPoly)] {
        &self.parents
    }

    pub fn forward(&self) -> Option<Forward> {
        self.split_to.lock().unwrap().clone()
    }

    /// Isolating disk of the tracked root refined to about `prec` bits.
    pub fn generator_ball(&self, prec: u64) -> CBall {
        if self.is_rational() {
            return CBall::zero();
        }
        {
            let b = self.best.lock().unwrap();
            if ball_precise(&b, prec) {
                return b.clone();
            }
        }
        let cur = self.best.lock().unwrap().clone();
        let refined = roots::refine(&self.modulus, &cur, prec)
            .or_else(|_| roots::refine(&self.modulus, &self.iso, prec))
            .expect("tracked root refinement failed");
        let mut b = self.best.lock().unwrap();
        if refined.rad < b.rad {
            *b = refined.clone();
        }
        b.clone()
    }

    /// Is the tracked root a root of `p`? `p` must divide the modulus
    /// (or at least have exactly one of `p`, `modulus/p` vanish at the root).
    fn tracks(&self, p: &[BigRational], other: &[BigRational]) -> bool {
        let mut prec = config::start_precision();
        loop {
            let z = self.generator_ball(prec);
            let a = qpoly::eval_ball(p, &z, prec + 32);
            let b = qpoly::eval_ball(other, &z, prec + 32);
            match (a.contains_zero(), b.contains_zero()) {
                (true, false) => return true,
                (false, true) => return false,
                _ => {}
            }
            assert!(prec <= roots::MAX_PREC * 4, "cannot decide tracked factor");
            prec *= 2;
        }
    }
}

fn ball_precise(b: &CBall, prec: u64) -> bool {
    if b.rad.is_zero() {
        return true;
    }
    let mag = b.re.log2_abs().max(b.im.log2_abs()).max(0.0);
    b.rad.log2_abs() <= mag - prec as f64
}

/// Follow split forwarding to the live context, mapping a representation along.
pub fn resolve(ctx: &Ctx, rep: &[BigRational]) -> (Ctx, QPoly) {
    let mut c = ctx.clone();
    let mut r: QPoly = qpoly::trim(rep.to_vec());
    while let Some((next, img)) = c.forward() {
        r = if next.is_rational() {
            qpoly::constant(qpoly::eval(&r, &img.first().cloned().unwrap_or_else(BigRational::zero)))
        } else {
            qpoly::rem(&qpoly::compose(&r, &img), &next.modulus)
        };
        c = next;
    }
    (c, r)
}

pub fn resolve_ctx(ctx: &Ctx) -> Ctx {
    let mut c = ctx.clone();
    while let Some((next, _)) = c.forward() {
        c = next;
    }
    c
}

/// Split `ctx` along `modulus = g*h` (coprime, both nonconstant). Returns the
/// live context afterwards and whether the tracked root lies on `g`.
pub fn split(ctx: &Ctx, g: &[BigRational]) -> (Ctx, bool) {
    let h = qpoly::divrem(&ctx.modulus, g).0;
    let on_g = ctx.tracks(g, &h);
    let factor = qpoly::monic(if on_g { g } else { &h });
    let mut guard = ctx.split_to.lock().unwrap();
    if let Some((next, _)) = guard.as_ref() {
        // another thread split first
        let n = next.clone();
        drop(guard);
        return (resolve_ctx(&n), on_g);
    }
    let target: Forward = if factor.len() == 2 {
        let r = -&factor[0];
        (rational_context(), vec![r])
    } else {
        let parents = vec![(ctx.clone(), qpoly::from_i64s(&[0, 1]))];
        let disk = ctx.best.lock().unwrap().clone();
        let irreducible = quick_irreducible(&factor);
        let new = Arc::new(FieldContext {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            modulus: factor,
            literal: ctx.literal.clone(),
            compound: ctx.compound,
            iso: disk.clone(),
            best: Mutex::new(disk),
            real: ctx.real,
            irreducible,
            parents,
            split_to: Mutex::new(None),
        });
        (new, qpoly::from_i64s(&[0, 1]))
    };
    *guard = Some(target.clone());
    drop(guard);
    (resolve_ctx(&target.0), on_g)
}

/// Irreducibility that is cheap to certify: degree ≤ 3 without rational roots.
pub fn quick_irreducible(m: &[BigRational]) -> bool {
    match qpoly::degree(m) {
        Some(1) => true,
        Some(2) | Some(3) => rational_roots(m).is_empty(),
        _ => false,
    }
}

/// All rational roots of a nonzero polynomial.
pub fn rational_roots(p: &[BigRational]) -> Vec<BigRational> {
    let p = qpoly::trim(p.to_vec());
    let d = match qpoly::degree(&p) {
        None | Some(0) => return vec![],
        Some(d) => d,
    };
    if d == 1 {
        return vec![-&p[0] / &p[1]];
    }
    let mut out = vec![];
    let mut p = p;
    // strip x factors
    while p[0].is_zero() {
        out.push(BigRational::zero());
        p.remove(0);
    }
    if p.len() <= 1 {
        return out;
    }
    if p.len() == 2 {
        out.push(-&p[0] / &p[1]);
        return out;
    }
    let sf = qpoly::squarefree_part(&p);
    let ints = qpoly::to_primitive_int(&sf);
    let lc = ints.last().unwrap().clone();
    let prec = lc.bits() + qpoly::coeff_bits(&sf) + 16;
    let disks = match roots::isolate(&sf, prec.max(64)) {
        Ok(d) => d,
        Err(_) => return out,
    };
    for disk in disks {
        // a rational root r = a/b has b | lc, so lc*r is an integer
        let scaled = disk.re.mul(&Dyadic::from_bigint(&lc));
        let k = scaled.add(&Dyadic::pow2(-1)).to_rational().floor().to_integer();
        let cand = BigRational::new(k, lc.clone());
        if qpoly::eval(&sf, &cand).is_zero() && !out.contains(&cand) {
            out.push(cand);
        }
    }
    out.sort();
    out
}

/// Build a context from a squarefree modulus, selecting the tracked root with
/// `pick`, which receives certified isolating disks.
pub fn build(
    modulus: QPoly,
    literal: String,
    compound: bool,
    parents: Vec<(Ctx, QPoly)>,
    irreducible: bool,
    pick: &dyn Fn(&[CBall], u64) -> Option<usize>,
) -> Result<Built, NumericError> {
    let modulus = qpoly::monic(&modulus);
    if modulus.len() == 2 {
        return Ok(Built::Rational(-&modulus[0]));
    }
    let mut prec = config::start_precision();
    loop {
        let disks = roots::isolate(&modulus, prec)?;
        if let Some(ix) = pick(&disks, prec) {
            let iso = disks[ix].clone();
            let real = match realness(&disks, ix) {
                Some(r) => r,
                None => {
                    prec *= 2;
                    if prec > roots::MAX_PREC {
                        return Err(NumericError::PrecisionExhausted(roots::MAX_PREC));
                    }
                    continue;
                }
            };
            let irreducible = irreducible || quick_irreducible(&modulus);
            return Ok(Built::Field(Arc::new(FieldContext {
                id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
                modulus,
                literal,
                compound,
                iso: iso.clone(),
                best: Mutex::new(iso),
                real,
                irreducible,
                parents,
                split_to: Mutex::new(None),
            })));
        }
        prec *= 2;
        if prec > roots::MAX_PREC {
            return Err(NumericError::PrecisionExhausted(roots::MAX_PREC));
        }
    }
}

/// Certified realness of the root in `disks[ix]`, or `None` if undecided.
fn realness(disks: &[CBall], ix: usize) -> Option<bool> {
    let d = &disks[ix];
    let c = d.conj();
    if c.disjoint(d) {
        return Some(false);
    }
    let others = disks.iter().enumerate().any(|(j, e)| j != ix && !c.disjoint(e));
    if others {
        None
    } else {
        Some(true)
    }
}

/// Context of `sqrt(r)` for a squarefree integer `r ∉ {0, 1}`; `r = -1` is `i`.
pub fn sqrt_context(r: &BigInt) -> Ctx {
    let key = format!("sqrt:{}", r);
    if let Some(c) = registry().lock().unwrap().base.get(&key) {
        return c.clone();
    }
    let lit = if r == &BigInt::from(-1) { "i".to_string() } else { format!("sqrt({})", r) };
    let m = vec![BigRational::from_integer(-r), BigRational::zero(), q(1)];
    let positive = r.is_positive();
    let built =
        build(m, lit, false, vec![], true, &|disks, _| disks.iter().position(|d| if positive { d.re.is_positive() } else { d.im.is_positive() }))
            .expect("sqrt context");
    let ctx = match built {
        Built::Field(c) => c,
        Built::Rational(_) => unreachable!("squarefree radicand"),
    };
    let mut reg = registry().lock().unwrap();
    if !reg.base.contains_key(&key) {
        reg.radicands.push(r.clone());
    }
    reg.base.entry(key).or_insert(ctx).clone()
}

/// `(ctx, s)` with `sqrt(r) = s · θ` for the generator `θ` of `ctx`. Reuses
/// an interned context whose radicand differs from `r` by a square factor
/// that trial division could not split off.
pub fn sqrt_context_scaled(r: &BigInt) -> (Ctx, BigRational) {
    let found = {
        let reg = registry().lock().unwrap();
        reg.radicands.iter().find_map(|other| {
            if other.is_positive() != r.is_positive() || other == r {
                return None;
            }
            let root = exact_isqrt(&(r * other))?;
            Some((other.clone(), BigRational::new(root, other.abs())))
        })
    };
    match found {
        Some((other, s)) => (sqrt_context(&other), s),
        None => (sqrt_context(r), q(1)),
    }
}

/// Cyclotomic polynomial `Φ_m`.
pub fn cyclotomic_poly(m: u64) -> QPoly {
    let mut p = qpoly::sub(&qpoly::monomial(q(1), m as usize), &[q(1)]);
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = qpoly::divrem(&p, &cyclotomic_poly(d)).0;
        }
    }
    p
}

/// Context generated by `exp(2πi/m)` for `m ≥ 3`.
pub fn cyclotomic_context(m: u64) -> Ctx {
    assert!(m >= 3);
    if m == 4 {
        return sqrt_context(&BigInt::from(-1));
    }
    let key = format!("zeta:{}", m);
    if let Some(c) = registry().lock().unwrap().base.get(&key) {
        return c.clone();
    }
    let poly = cyclotomic_poly(m);
    let ang = 2.0 * std::f64::consts::PI / m as f64;
    let target = CBall::exact(Dyadic::from_f64(ang.cos()), Dyadic::from_f64(ang.sin()));
    let built = build(poly, format!("zeta({})", m), false, vec![], true, &|disks, _| {
        let mut best = 0;
        let mut bd = f64::INFINITY;
        for (i, d) in disks.iter().enumerate() {
            let dist = d.center_dist_up(&target).to_f64();
            if dist < bd {
                bd = dist;
                best = i;
            }
        }
        Some(best)
    })
    .expect("cyclotomic context");
    let ctx = match built {
        Built::Field(c) => c,
        Built::Rational(_) => unreachable!(),
    };
    let mut reg = registry().lock().unwrap();
    reg.base.entry(key).or_insert(ctx).clone()
}

/// Image of `source`'s generator in `target`, when `source` is an ancestor.
pub fn embedding(target: &Ctx, source: &Ctx) -> Option<QPoly> {
    if target.id == source.id {
        return Some(qpoly::from_i64s(&[0, 1]));
    }
    if source.is_rational() {
        return Some(vec![]);
    }
    for (parent, img) in &target.parents {
        if let Some(p) = embedding(parent, source) {
            return Some(qpoly::rem(&qpoly::compose(&p, img), &target.modulus));
        }
    }
    None
}

/// Map a representation from `source` into `target` (source must be an ancestor).
pub fn transport(rep: &[BigRational], source: &Ctx, target: &Ctx) -> Option<QPoly> {
    if source.is_rational() {
        return Some(qpoly::trim(rep.to_vec()));
    }
    let img = embedding(target, source)?;
    Some(qpoly::rem(&qpoly::compose(rep, &img), &target.modulus))
}

/// Multiply a tensor element (`rows[j]` = coefficient poly of `t^j`) by a
/// generator; used by the Krylov constructions below.
fn flatten(parts: &[QPoly], da: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(da * parts.len());
    for p in parts {
        for i in 0..da {
            out.push(p.get(i).cloned().unwrap_or_else(BigRational::zero));
        }
    }
    out
}

/// Build the algebra `A[t]/(t^k - ... )` described by `mul_t` and find a
/// primitive element `x + s t`. Returns `(minpoly, image of x, image of t, s)`.
fn primitive_element(ma: &[BigRational], k: usize, mul_t: &dyn Fn(&[QPoly]) -> Vec<QPoly>) -> Result<(QPoly, QPoly, QPoly, i64), NumericError> {
    let da = ma.len() - 1;
    let dim = da * k;
    if dim > config::degree_bound() {
        return Err(NumericError::ContextMergeOverflow { degree: dim, bound: config::degree_bound() });
    }
    let mul_x = |v: &[QPoly]| -> Vec<QPoly> { v.iter().map(|p| qpoly::rem(&qpoly::mul(p, &[q(0), q(1)]), ma)).collect() };
    for s in [1i64, -1, 2, -2, 3, -3, 5, 7, 11, 13] {
        let step = |v: &[QPoly]| -> Vec<QPoly> {
            let a = mul_x(v);
            let b = mul_t(v);
            a.iter().zip(b.iter()).map(|(x, y)| qpoly::add(x, &qpoly::scale(y, &q(s)))).collect()
        };
        let mut ech = Echelon::new(dim);
        let mut v: Vec<QPoly> = vec![vec![]; k];
        v[0] = vec![q(1)];
        let mut minpoly = None;
        for i in 0..=dim {
            if let Some(dep) = ech.insert(flatten(&v, da)) {
                if i == dim {
                    let mut m: QPoly = dep.iter().map(|c| -c).collect();
                    m.push(q(1));
                    minpoly = Some(m);
                }
                break;
            }
            v = step(&v);
        }
        let minpoly = match minpoly {
            Some(m) => m,
            None => continue,
        };
        let mut ex = vec![vec![]; k];
        ex[0] = vec![q(0), q(1)];
        let mut et = vec![vec![]; k];
        if k > 1 {
            et[1] = vec![q(1)];
        }
        let x_img = qpoly::trim(ech.express(flatten(&ex, da)).expect("x in span"));
        let t_img = qpoly::trim(ech.express(flatten(&et, da)).expect("t in span"));
        return Ok((minpoly, x_img, t_img, s));
    }
    Err(NumericError::Undecided("no primitive element found".into()))
}

/// Context generated by both generators; the compositum when both are fields.
pub fn merge(a: &Ctx, b: &Ctx) -> Result<Ctx, NumericError> {
    let a = resolve_ctx(a);
    let b = resolve_ctx(b);
    if a.id == b.id || b.is_rational() {
        return Ok(a);
    }
    if a.is_rational() {
        return Ok(b);
    }
    if embedding(&a, &b).is_some() {
        return Ok(a);
    }
    if embedding(&b, &a).is_some() {
        return Ok(b);
    }
    // canonical order so that merge(a, b) and merge(b, a) agree
    let (a, b) = if (a.literal.as_str(), a.id) <= (b.literal.as_str(), b.id) { (a, b) } else { (b, a) };
    let key = (a.id, b.id);
    if let Some(c) = registry().lock().unwrap().merges.get(&key) {
        return Ok(resolve_ctx(c));
    }
    let ma = a.modulus.clone();
    let mb = b.modulus.clone();
    let db = mb.len() - 1;
    // t^db = -sum mb_j t^j
    let mul_t = |v: &[QPoly]| -> Vec<QPoly> {
        let mut out: Vec<QPoly> = vec![vec![]; db];
        for j in 0..db {
            if j + 1 < db {
                out[j + 1] = qpoly::add(&out[j + 1], &v[j]);
            } else {
                for (jj, c) in mb.iter().enumerate().take(db) {
                    out[jj] = qpoly::sub(&out[jj], &qpoly::scale(&v[j], c));
                }
            }
        }
        out
    };
    let (minpoly, a_img, b_img, s) = primitive_element(&ma, db, &mul_t)?;
    let literal = if s == 1 {
        format!("{} + {}", a.atom(), b.atom())
    } else if s == -1 {
        format!("{} - {}", a.atom(), b.atom())
    } else if s < 0 {
        format!("{} - {}*{}", a.atom(), -s, b.atom())
    } else {
        format!("{} + {}*{}", a.atom(), s, b.atom())
    };
    let parents = vec![(a.clone(), a_img), (b.clone(), b_img)];
    let ctx = build_tracking(minpoly, literal, parents, &|prec| {
        let za = a.generator_ball(prec);
        let zb = b.generator_ball(prec);
        za.add(&zb.mul(&CBall::from_int(s), prec), prec)
    })?;
    let mut reg = registry().lock().unwrap();
    let c = reg.merges.entry(key).or_insert(ctx).clone();
    Ok(c)
}

/// Build a context whose tracked root is the one matching `approx(prec)`.
fn build_tracking(modulus: QPoly, literal: String, parents: Vec<(Ctx, QPoly)>, approx: &dyn Fn(u64) -> CBall) -> Result<Ctx, NumericError> {
    let built = build(modulus, literal, true, parents, false, &|disks, prec| {
        // the true value lies in `z` and in exactly one disk
        let mut p = prec;
        loop {
            let z = approx(p);
            let hits: Vec<usize> = disks.iter().enumerate().filter(|(_, d)| d.overlaps(&z)).map(|(i, _)| i).collect();
            match hits.len() {
                0 => return None,
                1 => return Some(hits[0]),
                _ => {}
            }
            if p > 16 * prec {
                return None;
            }
            p *= 2;
        }
    })?;
    match built {
        Built::Field(c) => Ok(c),
        Built::Rational(_) => unreachable!("degree ≥ 2 modulus"),
    }
}

/// Extend `ctx` by a square root of `x` (a representation in `ctx`).
/// Returns the new context, the image of the old generator, and the root.
/// `root_ball(prec)` gives a ball for the chosen square root.
pub fn adjoin_sqrt(ctx: &Ctx, x: &[BigRational], root_ball: &dyn Fn(u64) -> CBall, sqrt_literal: String) -> Result<(Ctx, QPoly), NumericError> {
    let m = ctx.modulus.clone();
    let xr = qpoly::rem(x, &m);
    // t^2 = x
    let mul_t = |v: &[QPoly]| -> Vec<QPoly> { vec![qpoly::rem(&qpoly::mul(&v[1], &xr), &m), v[0].clone()] };
    let (minpoly, g_img, t_img, s) = primitive_element(&m, 2, &mul_t)?;
    let literal = if ctx.is_rational() {
        sqrt_literal.clone()
    } else if s == 1 {
        format!("{} + {}", ctx.atom(), sqrt_literal)
    } else if s < 0 {
        format!("{} - {}*{}", ctx.atom(), -s, sqrt_literal)
    } else {
        format!("{} + {}*{}", ctx.atom(), s, sqrt_literal)
    };
    let parents = if ctx.is_rational() { vec![] } else { vec![(ctx.clone(), g_img)] };
    let new = build_tracking(minpoly, literal, parents, &|prec| {
        let z = ctx.generator_ball(prec);
        z.add(&root_ball(prec).mul(&CBall::from_int(s), prec), prec)
    })?;
    Ok((new, t_img))
}

/// `true` if the rational `r` is the square of a rational; returns the root.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = super::dyadic::exact_isqrt(r.numer())?;
    let d = super::dyadic::exact_isqrt(r.denom())?;
    Some(BigRational::new(n, d))
}

pub fn one() -> BigRational {
    BigRational::one()
}
