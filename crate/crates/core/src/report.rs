//! The `g_p` time-change of the full 2-shift, compared coefficient by
//! coefficient with several closed forms.
//!
//! Directly, `fix_n = 2^{g_p(n)}` with `g_p(n) = pn` when `p | n`, so
//!
//! ```text
//! sum 2^{g_p(n)} z^n / n = sum 2^n z^n / n - sum 2^{pk} z^{pk} / (pk) + sum 2^{p^2 k} z^{pk} / (pk)
//! ```
//!
//! and the zeta function is `(1 - 2z)^{-1} (1 - 2^p z^p)^{1/p} (1 - 2^{p^2} z^p)^{-1/p}`.
//! The report also carries two other forms for comparison: the exponent
//! `sum 2^k z^{pk} / (pk) + sum 2^n z^n / n - sum 2^{pk} z^{pk} / (pk)` and the
//! product `(1 - 2z^p)^{-1/p} (1 - 2z)^{-1} (1 - 2^p z^p)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::Natural;
use crate::error::{Error, Result};
use crate::maps::BuiltinMap;
use crate::realizable::{check_realizable, RealizabilityVerdict};
use crate::series::{
    is_zeta, series_mul, series_pow, time_change_fix, zeta_from_sequence, FixSource,
    RationalSeries, ZetaVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormComparison {
    pub name: &'static str,
    pub formula: &'static str,
    pub series: RationalSeries,
    /// Smallest `n` with a coefficient different from the direct side.
    pub first_mismatch: Option<usize>,
    pub zeta: ZetaVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GpShiftReport {
    pub p: u64,
    pub order: usize,
    /// `2^{g_p(n)}` for `n = 1..order`.
    pub fix: Vec<Natural>,
    pub realizability: RealizabilityVerdict,
    pub direct: RationalSeries,
    pub forms: Vec<FormComparison>,
}

impl GpShiftReport {
    pub fn form(&self, name: &str) -> Option<&FormComparison> {
        self.forms.iter().find(|f| f.name == name)
    }
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// `1 - c z^k`
fn binomial(order: usize, k: usize, c: BigInt) -> RationalSeries {
    RationalSeries::from_terms(order, &[(0, BigRational::one()), (k, -int(c))])
}

fn exp_of(order: usize, terms: impl Fn(usize) -> BigRational) -> Result<RationalSeries> {
    let mut log = vec![BigRational::zero()];
    log.extend((1..=order).map(terms));
    RationalSeries::new(log)?.exp()
}

fn first_mismatch(a: &RationalSeries, b: &RationalSeries) -> Option<usize> {
    (0..=a.order()).find(|&n| a.coeff(n) != b.coeff(n))
}

pub fn gp_shift_report(p: u64, order: usize) -> Result<GpShiftReport> {
    let map = BuiltinMap::parse(&format!("gp:{p}"))?;
    if order == 0 {
        return Err(Error::Precondition("report needs order >= 1".into()));
    }
    let pu = p as usize;
    let shift = FixSource::Geometric(Natural::from(2u32));
    let fix = time_change_fix(&map, &shift, order)?;
    let realizability = check_realizable(&fix);
    let direct = zeta_from_sequence(&fix);
    let inv_p = BigRational::new(BigInt::one(), BigInt::from(p));

    let derived = series_mul(
        &series_mul(
            &series_pow(&binomial(order, 1, BigInt::from(2)), &-BigRational::one())?,
            &series_pow(&binomial(order, pu, pow2(p)), &inv_p)?,
        )?,
        &series_pow(&binomial(order, pu, pow2(p * p)), &-inv_p.clone())?,
    )?;

    let exponent_form = exp_of(order, |n| {
        let mut c = int(pow2(n as u64)) / int(n as u64);
        if n % pu == 0 {
            let k = (n / pu) as u64;
            c += (int(pow2(k)) - int(pow2(p * k))) / int(n as u64);
        }
        c
    })?;

    let product_form = series_mul(
        &series_mul(
            &series_pow(&binomial(order, pu, BigInt::from(2)), &-inv_p.clone())?,
            &series_pow(&binomial(order, 1, BigInt::from(2)), &-BigRational::one())?,
        )?,
        &binomial(order, pu, pow2(p)),
    )?;

    let forms = [
        (
            "derived",
            "(1-2z)^{-1} (1-2^p z^p)^{1/p} (1-2^{p^2} z^p)^{-1/p}",
            derived,
        ),
        (
            "exponent-form",
            "exp(sum 2^k z^{pk}/(pk) + sum 2^n z^n/n - sum 2^{pk} z^{pk}/(pk))",
            exponent_form,
        ),
        (
            "product-form",
            "(1-2z^p)^{-1/p} (1-2z)^{-1} (1-2^p z^p)",
            product_form,
        ),
    ]
    .into_iter()
    .map(|(name, formula, series)| FormComparison {
        name,
        formula,
        first_mismatch: first_mismatch(&direct, &series),
        zeta: is_zeta(&series),
        series,
    })
    .collect();

    Ok(GpShiftReport {
        p,
        order,
        fix: fix.into_entries(),
        realizability,
        direct,
        forms,
    })
}
