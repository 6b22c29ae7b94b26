//! Series expansions of the two equalizer branches around `Z = 0`.
//!
//! With `Z = αⁿ` and `W = δⁿ`, the equation `fⁿ(X) = gⁿ(X)` for
//! `f = αX + β`, `g = X/(γX + δ)` reads `a X² + t X + c₀ = 0` where
//!
//! ```text
//! a  = Z (1 − W) γ/(1 − δ)
//! c₀ = W (1 − Z) β/(1 − α)
//! t  = (1 − Z)(1 − W) βγ/((1 − α)(1 − δ)) + ZW − 1
//! ```
//!
//! and `W` is specialised to `ξ^i Z^k`. The square root of the discriminant
//! is taken with leading coefficient equal to that of `t`, so the minus
//! branch `(−t − r)/(2a)` is the one free of leading cancellation.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numeric::context::cyclotomic_context;
use crate::numeric::Scalar;

use super::series::Series;
use super::PuiseuxError;

#[derive(Clone, Debug)]
pub struct BranchExpansion {
    pub plus: Series,
    pub minus: Series,
    /// `ξ^i`
    pub root_of_unity: Scalar,
    pub k: BigRational,
    pub a: Series,
    pub t: Series,
    pub c0: Series,
}

/// Checks of a [`BranchExpansion`] against its defining identities.
#[derive(Clone, Debug)]
pub struct BranchReport {
    pub val_plus: BigRational,
    pub val_minus: BigRational,
    /// Both branches solve the quadratic to their stored order.
    pub residual_ok: bool,
    /// `X⁺ X⁻ = ξ^i Z^k (1 − Z)(1 − δ) β / (Z (1 − ξ^i Z^k)(1 − α) γ)`.
    pub product_ok: bool,
    /// `X⁺ + X⁻ = −t/a`.
    pub sum_ok: bool,
    /// Exponent units known past the leading term, per branch.
    pub relative_order_plus: BigRational,
    pub relative_order_minus: BigRational,
}

impl BranchReport {
    pub fn all_ok(&self) -> bool {
        self.residual_ok && self.product_ok && self.sum_ok
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Primitive `q`-th root of unity.
fn primitive_root(q: u64) -> Scalar {
    match q {
        1 => Scalar::one(),
        2 => Scalar::from_int(-1),
        q => Scalar::generator(&cyclotomic_context(q)),
    }
}

/// `ξ^i` with `ξ` a primitive root of unity whose order is the denominator of `k`.
pub fn root_of_unity_for(k: &BigRational, i: i64) -> Result<Scalar, PuiseuxError> {
    let q: u64 = k.denom().try_into().map_err(|_| PuiseuxError::InvalidParameter("denominator of k too large".into()))?;
    Ok(primitive_root(q).pow(i)?)
}

/// Expand both branches with `W = ξ^i Z^k`, keeping at least `order`
/// exponent units past each leading term.
pub fn expand_equalizer_branches(
    alpha: &Scalar,
    beta: &Scalar,
    gamma: &Scalar,
    delta: &Scalar,
    i: i64,
    k: &BigRational,
    order: &BigRational,
) -> Result<BranchExpansion, PuiseuxError> {
    for (name, v) in [("alpha", alpha), ("delta", delta)] {
        if v.is_zero() || v.is_root_of_unity().is_some() {
            return Err(PuiseuxError::InvalidParameter(format!("{} must be nonzero and not a root of unity", name)));
        }
    }
    for (name, v) in [("beta", beta), ("gamma", gamma)] {
        if v.is_zero() {
            return Err(PuiseuxError::InvalidParameter(format!("{} must be nonzero", name)));
        }
    }
    if k.is_zero() {
        return Err(PuiseuxError::InvalidParameter("k must be nonzero".into()));
    }
    let one = Scalar::one();
    let oma = one.try_sub(alpha)?;
    let omd = one.try_sub(delta)?;
    // a shared fixed point means β/(1 − α) = (1 − δ)/γ
    let kk = beta.try_mul(gamma)?.try_div(&oma.try_mul(&omd)?)?;
    if kk.is_one() {
        return Err(PuiseuxError::SharedFixedPoint);
    }
    let xi = root_of_unity_for(k, i)?;
    let z = Series::z();
    let w = Series::monomial(xi.clone(), k.clone());
    let one_s = Series::one();
    let omz = one_s.sub(&z)?;
    let omw = one_s.sub(&w)?;
    let a = z.mul(&omw)?.scale(&gamma.try_div(&omd)?)?;
    let c0 = w.mul(&omz)?.scale(&beta.try_div(&oma)?)?;
    let t = omz.mul(&omw)?.scale(&kk)?.add(&z.mul(&w)?)?.sub(&one_s)?;
    let disc = t.mul(&t)?.sub(&a.mul(&c0)?.scale(&Scalar::from_int(4))?)?;
    let (_, t_lead) = t.lead()?;
    let two_a = a.scale(&Scalar::from_int(2))?;

    let mut work = order + k.abs() + rat(4);
    for _ in 0..8 {
        let mut r = disc.sqrt_rel(&work)?;
        let (_, r_lead) = r.lead()?;
        if (&r_lead + &t_lead).is_zero() {
            r = r.neg();
        }
        let inv_2a = two_a.inv_rel(&work)?;
        let minus = t.neg().sub(&r)?.mul(&inv_2a)?;
        let plus = t.neg().add(&r)?.mul(&inv_2a)?;
        let enough = |s: &Series| s.relative_order().is_some_and(|ro| ro >= *order);
        if enough(&plus) && enough(&minus) {
            return Ok(BranchExpansion { plus, minus, root_of_unity: xi, k: k.clone(), a, t, c0 });
        }
        work *= rat(2);
    }
    Err(PuiseuxError::InvalidParameter("could not reach the requested order".into()))
}

impl BranchExpansion {
    /// Re-derive the quadratic, the product and the sum identities.
    pub fn verify(&self, alpha: &Scalar, beta: &Scalar, gamma: &Scalar, delta: &Scalar) -> Result<BranchReport, PuiseuxError> {
        let residual = |x: &Series| -> Result<bool, PuiseuxError> {
            let v = self.a.mul(&x.mul(x)?)?.add(&self.t.mul(x)?)?.add(&self.c0)?;
            Ok(v.is_zero_to_order())
        };
        let residual_ok = residual(&self.plus)? && residual(&self.minus)?;

        let one = Scalar::one();
        let z = Series::z();
        let w = Series::monomial(self.root_of_unity.clone(), self.k.clone());
        let omz = Series::one().sub(&z)?;
        let omw = Series::one().sub(&w)?;
        let cst = one.try_sub(delta)?.try_mul(beta)?.try_div(&one.try_sub(alpha)?.try_mul(gamma)?)?;
        let rel = self.plus.relative_order().unwrap_or_else(BigRational::one).min(self.minus.relative_order().unwrap_or_else(BigRational::one));
        let rhs = w.mul(&omz)?.scale(&cst)?.mul(&z.mul(&omw)?.inv_rel(&(&rel + self.k.abs() + rat(2)))?)?;
        let product_ok = self.plus.mul(&self.minus)?.sub(&rhs)?.is_zero_to_order();

        let sum = self.t.neg().mul(&self.a.inv_rel(&(&rel + self.k.abs() + rat(2)))?)?;
        let sum_ok = self.plus.add(&self.minus)?.sub(&sum)?.is_zero_to_order();

        Ok(BranchReport {
            val_plus: self.plus.val()?,
            val_minus: self.minus.val()?,
            residual_ok,
            product_ok,
            sum_ok,
            relative_order_plus: self.plus.relative_order().unwrap_or_else(BigRational::zero),
            relative_order_minus: self.minus.relative_order().unwrap_or_else(BigRational::zero),
        })
    }
}
