//! Five explicit families with infinitely many common solutions, and an
//! exact checker for them.
//!
//! Exponents are counted directly: a piece with modulus `m` and residue `r`
//! covers the exponents `e ≥ 1` with `e ≡ r (mod m)`, and `closed(e)` is the
//! point claimed to solve `fᵉ = gᵉ = c`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{Mobius, Polynomial, ProjPoint, RationalFunction};
use crate::numeric::qpoly::q;
use crate::numeric::Scalar;

use super::SolverError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyId {
    R1,
    R2,
    R3,
    R4,
    R5,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] = [FamilyId::R1, FamilyId::R2, FamilyId::R3, FamilyId::R4, FamilyId::R5];

    /// Parameter names in order, with the default instance.
    pub fn parameters(&self) -> &'static [(&'static str, &'static str)] {
        match self {
            FamilyId::R1 => &[("beta", "2"), ("gamma", "2")],
            FamilyId::R2 => &[("alpha", "2"), ("beta", "1"), ("gamma", "1")],
            FamilyId::R3 => &[("alpha", "2"), ("delta", "-2"), ("beta", "1"), ("gamma", "0")],
            FamilyId::R4 => &[("alpha", "2"), ("beta", "1"), ("gamma", "1"), ("xi", "1")],
            FamilyId::R5 => &[("alpha", "2"), ("mu", "1")],
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl FromStr for FamilyId {
    type Err = SolverError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "R1" => Ok(FamilyId::R1),
            "R2" => Ok(FamilyId::R2),
            "R3" => Ok(FamilyId::R3),
            "R4" => Ok(FamilyId::R4),
            "R5" => Ok(FamilyId::R5),
            _ => Err(SolverError::HypothesisViolated(format!("unknown family {}", s))),
        }
    }
}

type ClosedFn = Arc<dyn Fn(u64) -> Result<ProjPoint, SolverError> + Send + Sync>;

/// One target function with its progression of exponents.
#[derive(Clone)]
pub struct FamilyPiece {
    pub label: String,
    pub c: RationalFunction,
    pub modulus: u64,
    pub residue: u64,
    closed: ClosedFn,
}

impl FamilyPiece {
    pub fn covers(&self, e: u64) -> bool {
        e >= 1 && e % self.modulus == self.residue % self.modulus
    }

    pub fn closed(&self, e: u64) -> Result<ProjPoint, SolverError> {
        (self.closed)(e)
    }
}

impl fmt::Debug for FamilyPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FamilyPiece")
            .field("label", &self.label)
            .field("c", &self.c.to_string())
            .field("modulus", &self.modulus)
            .field("residue", &self.residue)
            .finish()
    }
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub id: FamilyId,
    pub params: Vec<Scalar>,
    pub f: Mobius,
    pub g: Mobius,
    pub pieces: Vec<FamilyPiece>,
    /// Hypotheses of the family that fail but do not prevent the check.
    pub warnings: Vec<String>,
    /// The target and solution formulas exactly as printed in the source of
    /// the family, where they differ from the verified ones.
    pub printed: Option<FamilyPiece>,
}

#[derive(Clone, Debug)]
pub struct PieceReport {
    pub label: String,
    /// `(exponent, pass)`
    pub results: Vec<(u64, bool)>,
}

#[derive(Clone, Debug)]
pub struct PrintedReport {
    /// The printed target equals the verified one as a rational function.
    pub c_matches: bool,
    pub results: Vec<(u64, bool)>,
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub id: FamilyId,
    pub pieces: Vec<PieceReport>,
    pub warnings: Vec<String>,
    pub printed: Option<PrintedReport>,
}

impl FamilyReport {
    pub fn all_pass(&self) -> bool {
        self.pieces.iter().all(|p| p.results.iter().all(|r| r.1))
    }

    pub fn checked(&self) -> usize {
        self.pieces.iter().map(|p| p.results.len()).sum()
    }
}

fn violated(s: &str) -> SolverError {
    SolverError::HypothesisViolated(s.to_string())
}

fn poly(c: &[&Scalar]) -> Polynomial {
    Polynomial::new(c.iter().map(|s| (*s).clone()).collect())
}

fn ratfun(num: Polynomial, den: Polynomial) -> Result<RationalFunction, SolverError> {
    Ok(RationalFunction::new(num, den)?)
}

fn constant(s: &Scalar) -> RationalFunction {
    RationalFunction::constant(s.clone())
}

fn affine(x: Scalar) -> Result<ProjPoint, SolverError> {
    Ok(ProjPoint::Affine(x))
}

fn non_root_of_unity(name: &str, x: &Scalar) -> Result<(), SolverError> {
    if x.is_zero() || x.is_root_of_unity().is_some() {
        return Err(violated(&format!("{} must be nonzero and not a root of unity", name)));
    }
    Ok(())
}

fn nonzero(name: &str, x: &Scalar) -> Result<(), SolverError> {
    if x.is_zero() {
        return Err(violated(&format!("{} must be nonzero", name)));
    }
    Ok(())
}

fn root_order(name: &str, x: &Scalar) -> Result<u64, SolverError> {
    x.is_root_of_unity().ok_or_else(|| violated(&format!("{} must be a root of unity", name)))
}

/// Build the family with the given parameters (defaults fill a short list).
pub fn family_generate(id: FamilyId, params: &[Scalar]) -> Result<FamilyInstance, SolverError> {
    let names = id.parameters();
    if params.len() > names.len() {
        return Err(violated(&format!("{} takes at most {} parameters", id, names.len())));
    }
    let mut p: Vec<Scalar> = params.to_vec();
    for (_, d) in &names[p.len()..] {
        p.push(crate::parse::parse_scalar(d).expect("default literal"));
    }
    let one = Scalar::one();
    let zero = Scalar::zero();
    let mut warnings = vec![];
    let mut printed = None;
    let (f, g, pieces) = match id {
        FamilyId::R1 => {
            let (be, ga) = (p[0].clone(), p[1].clone());
            nonzero("beta", &be)?;
            nonzero("gamma", &ga)?;
            let f = Mobius::affine(one.clone(), be.clone())?;
            let g = Mobius::new(one.clone(), zero.clone(), ga.clone(), one.clone())?;
            let c = ratfun(poly(&[&-&be]), poly(&[&zero, &ga]))?;
            let bg = be.try_mul(&ga)?;
            let closed: ClosedFn = Arc::new(move |n| {
                // (−nβγ + √(n²β²γ² − 4βγ))/(2γ)
                let nbg = bg.scale(&q(n as i64));
                let disc = nbg.try_mul(&nbg)?.try_sub(&bg.scale(&q(4)))?;
                let r = if disc.is_zero() { Scalar::zero() } else { disc.sqrt()? };
                affine(r.try_sub(&nbg)?.try_div(&ga.scale(&q(2)))?)
            });
            (f, g, vec![FamilyPiece { label: "x_n".into(), c, modulus: 1, residue: 0, closed }])
        }
        FamilyId::R2 => {
            let (al, be, ga) = (p[0].clone(), p[1].clone(), p[2].clone());
            nonzero("beta", &be)?;
            nonzero("gamma", &ga)?;
            if al.is_one() || al.is_zero() {
                return Err(violated("alpha must differ from 0 and 1"));
            }
            let oma = one.try_sub(&al)?;
            let b = be.try_div(&oma)?;
            let s = oma.try_div(&ga)?;
            let k1 = b.try_add(&s)?;
            let k2 = b.try_sub(&s)?;
            let k3 = be.try_div(&ga)?;
            if k2.is_zero() {
                warnings.push("beta/(1 - alpha) = (1 - alpha)/gamma: the two maps share a fixed point and c is constant".into());
            }
            let f = Mobius::affine(al.clone(), be.clone())?;
            let g = Mobius::new(one.clone(), zero.clone(), ga.clone(), al.clone())?;
            // K₂X(X − B)/(−X² + K₁X − β/γ) + B
            let den = poly(&[&-&k3, &k1, &Scalar::from_int(-1)]);
            let frac = ratfun(poly(&[&zero, &-&k2.try_mul(&b)?, &k2]), den)?;
            let c = frac.try_add(&constant(&b))?;
            let (al2, k1c, k2c, k3c) = (al.clone(), k1.clone(), k2.clone(), k3.clone());
            let closed: ClosedFn = Arc::new(move |n| {
                // (u − √(u² − 4β/γ))/2 with u = K₁ − K₂α⁻ⁿ
                let u = k1c.try_sub(&k2c.try_mul(&al2.pow(-(n as i64))?)?)?;
                let disc = u.try_mul(&u)?.try_sub(&k3c.scale(&q(4)))?;
                let r = if disc.is_zero() { Scalar::zero() } else { disc.sqrt()? };
                affine(u.try_sub(&r)?.scale(&num_rational::BigRational::new(1.into(), 2.into())))
            });
            // as printed: K₂X²/(−2K₃ − 2X² + K₁X) + B − B K₂X/(−2K₃ − 2X² + K₁X)
            let pden = poly(&[&k3.scale(&q(-2)), &k1, &Scalar::from_int(-2)]);
            let pc = ratfun(poly(&[&zero, &-&b.try_mul(&k2)?, &k2]), pden)?.try_add(&constant(&b))?;
            let (al3, k1p, k2p) = (al.clone(), k1.clone(), k2.clone());
            let pclosed: ClosedFn = Arc::new(move |n| {
                // (−K₁ + K₂α⁻ⁿ − √((−K₁ + K₂α⁻ⁿ)² − 4))/2
                let v = k2p.try_mul(&al3.pow(-(n as i64))?)?.try_sub(&k1p)?;
                let disc = v.try_mul(&v)?.try_sub(&Scalar::from_int(4))?;
                let r = if disc.is_zero() { Scalar::zero() } else { disc.sqrt()? };
                affine(v.try_sub(&r)?.scale(&num_rational::BigRational::new(1.into(), 2.into())))
            });
            printed = Some(FamilyPiece { label: "printed".into(), c: pc, modulus: 1, residue: 0, closed: pclosed });
            (f, g, vec![FamilyPiece { label: "X_n".into(), c, modulus: 1, residue: 0, closed }])
        }
        FamilyId::R3 => {
            let (al, de, be, ga) = (p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone());
            non_root_of_unity("alpha", &al)?;
            non_root_of_unity("delta", &de)?;
            let xi = de.try_div(&al)?;
            let l = root_order("delta/alpha", &xi)?;
            if l < 2 {
                return Err(violated("delta/alpha must be a root of unity of order > 1"));
            }
            let f = Mobius::affine(al.clone(), be.clone())?;
            let g = Mobius::affine(de.clone(), ga.clone())?;
            let b = be.try_div(&one.try_sub(&al)?)?;
            let gd = ga.try_div(&one.try_sub(&de)?)?;
            let mut pieces = vec![];
            for i in 1..l {
                let xii = xi.pow(i as i64)?;
                let w = one.try_sub(&xii)?;
                let k1 = gd.try_sub(&b)?.try_div(&w)?;
                let k2 = xii.try_mul(&gd)?.try_sub(&b)?.try_div(&w)?;
                // ((K₁ + B)(X + K₂) − K₁(K₂ + B))/(X + K₂)
                let s = k1.try_add(&b)?;
                let num0 = s.try_mul(&k2)?.try_sub(&k1.try_mul(&k2.try_add(&b)?)?)?;
                let c = ratfun(poly(&[&num0, &s]), poly(&[&k2, &one]))?;
                let al2 = al.clone();
                let closed: ClosedFn = Arc::new(move |e| affine(k1.try_mul(&al2.pow(-(e as i64))?)?.try_sub(&k2)?));
                pieces.push(FamilyPiece { label: format!("i={}", i), c, modulus: l, residue: i, closed });
            }
            (f, g, pieces)
        }
        FamilyId::R4 => {
            let (al, be, ga, xi) = (p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone());
            non_root_of_unity("alpha", &al)?;
            nonzero("beta", &be)?;
            nonzero("gamma", &ga)?;
            let m = root_order("xi", &xi)?;
            let de = xi.try_div(&al)?;
            let k1 = be.try_div(&one.try_sub(&al)?)?;
            let k2 = ga.try_div(&one.try_sub(&de)?)?;
            let f = Mobius::affine(al.clone(), be.clone())?;
            let g = Mobius::new(one.clone(), zero.clone(), ga.clone(), de.clone())?;
            // (K₁K₂X − K₁)/(K₁K₂ − K₂X) + K₁(1 − (−K₁ + K₁K₂X)/(K₂X(K₁ − X)))
            let k12 = k1.try_mul(&k2)?;
            let first = ratfun(poly(&[&-&k1, &k12]), poly(&[&k12, &-&k2]))?;
            let inner = ratfun(poly(&[&-&k1, &k12]), poly(&[&zero, &k12, &-&k2]))?;
            let second = constant(&one).try_sub(&inner)?.try_mul(&constant(&k1))?;
            let c = first.try_add(&second)?;
            let (al2, k1c, k2c) = (al.clone(), k1.clone(), k2.clone());
            let closed: ClosedFn = Arc::new(move |n| {
                let an = al2.pow(n as i64)?;
                let ain = an.inv()?;
                let u = one_minus(&an)?.try_mul(&one_minus(&ain)?)?;
                let qa = an.try_mul(&one_minus(&ain)?)?.try_mul(&k2c)?;
                let qt = k1c.try_mul(&k2c)?.try_mul(&u)?;
                let qc = k1c.try_mul(&one_minus(&an)?)?.try_mul(&ain)?;
                let disc = qt.try_mul(&qt)?.try_sub(&qa.try_mul(&qc)?.scale(&q(4)))?;
                let r = if disc.is_zero() { Scalar::zero() } else { disc.sqrt()? };
                affine((-&qt).try_sub(&r)?.try_div(&qa.scale(&q(2)))?)
            });
            (f, g, vec![FamilyPiece { label: "X_n".into(), c, modulus: m, residue: 0, closed }])
        }
        FamilyId::R5 => {
            let (al, mu) = (p[0].clone(), p[1].clone());
            non_root_of_unity("alpha", &al)?;
            let m = root_order("mu", &mu)?;
            let f = Mobius::affine(al.clone(), al.try_sub(&one)?)?;
            let g = Mobius::affine(mu.try_mul(&al)?.try_mul(&al)?, zero.clone())?;
            let c = ratfun(poly(&[&one]), poly(&[&zero, &one]))?;
            let al2 = al.clone();
            let closed: ClosedFn = Arc::new(move |e| affine(al2.pow(-(e as i64))?));
            (f, g, vec![FamilyPiece { label: "X_mn".into(), c, modulus: m, residue: 0, closed }])
        }
    };
    Ok(FamilyInstance { id, params: p, f, g, pieces, warnings, printed })
}

fn one_minus(x: &Scalar) -> Result<Scalar, SolverError> {
    Ok(Scalar::one().try_sub(x)?)
}

fn check_point(fe: &Mobius, ge: &Mobius, c: &RationalFunction, p: &ProjPoint) -> Result<bool, SolverError> {
    let a = fe.apply(p)?;
    Ok(a.eq_exact(&ge.apply(p)?) && a.eq_exact(&c.eval(p)?))
}

fn run_piece(inst: &FamilyInstance, piece: &FamilyPiece, big_n: u64) -> Result<Vec<(u64, bool)>, SolverError> {
    let mut out = vec![];
    for e in (1..=big_n).filter(|&e| piece.covers(e)) {
        let fe = inst.f.iterate(e)?;
        let ge = inst.g.iterate(e)?;
        let ok = match piece.closed(e) {
            Ok(p) => check_point(&fe, &ge, &piece.c, &p)?,
            Err(SolverError::Numeric(_)) => false,
            Err(err) => return Err(err),
        };
        out.push((e, ok));
    }
    Ok(out)
}

/// Check every covered exponent up to `big_n` exactly.
pub fn family_verify(id: FamilyId, params: &[Scalar], big_n: u64) -> Result<FamilyReport, SolverError> {
    let inst = family_generate(id, params)?;
    let mut pieces = vec![];
    for piece in &inst.pieces {
        pieces.push(PieceReport { label: piece.label.clone(), results: run_piece(&inst, piece, big_n)? });
    }
    let printed = match &inst.printed {
        Some(pp) => Some(PrintedReport { c_matches: pp.c.eq_exact(&inst.pieces[0].c), results: run_piece(&inst, pp, big_n)? }),
        None => None,
    };
    Ok(FamilyReport { id, pieces, warnings: inst.warnings.clone(), printed })
}
