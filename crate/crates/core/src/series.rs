//! Truncated formal power series with exact rational coefficients, and the
//! passage between fixed-point sequences and zeta series
//! `exp(sum a_n z^n / n)`.
//!
//! `log` and `exp` use the derivative recurrences `F' = F * L'`, so no series
//! composition is ever formed and no coefficient is ever rounded.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Natural;
use crate::error::{Error, Result};
use crate::maps::TimeChange;
use crate::realizable::{check_realizable, FixSequence, OrbitCounts, RealizabilityVerdict};

/// `c_0 + c_1 z + ... + c_N z^N`, truncated at order `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl RationalSeries {
    /// Builds a series from `c_0..c_N`; at least the constant term is required.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Malformed(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(RationalSeries { coeffs })
    }

    pub fn from_integers<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>) -> Result<Self> {
        Self::new(coeffs.into_iter().map(rat).collect())
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = BigRational::one();
        RationalSeries { coeffs }
    }

    /// Sparse constructor: `terms` are `(exponent, coefficient)`; exponents
    /// above `order` are dropped.
    pub fn from_terms(order: usize, terms: &[(usize, BigRational)]) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (e, c) in terms {
            if *e <= order {
                coeffs[*e] += c;
            }
        }
        RationalSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    /// Coefficients as integers, if every one is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        RationalSeries {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        series_mul(self, other)
    }

    /// `log F` for `F_0 = 1`, via `n L_n = n F_n - sum_{k<n} k L_k F_{n-k}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let n_max = self.order();
        // Track k * L_k directly; it is what both recurrences consume.
        let mut weighted = vec![BigRational::zero(); n_max + 1];
        for n in 1..=n_max {
            let mut acc = &self.coeffs[n] * rat(n as u64);
            for (k, w) in weighted.iter().enumerate().take(n).skip(1) {
                if !w.is_zero() && !self.coeffs[n - k].is_zero() {
                    acc -= w * &self.coeffs[n - k];
                }
            }
            weighted[n] = acc;
        }
        let coeffs = weighted
            .into_iter()
            .enumerate()
            .map(|(n, w)| if n == 0 { w } else { w / rat(n as u64) })
            .collect();
        Ok(RationalSeries { coeffs })
    }

    /// `exp L` for `L_0 = 0`, via `n E_n = sum_{k=1..n} k L_k E_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition(
                "exp needs a series with zero constant term".into(),
            ));
        }
        let weighted: Vec<BigRational> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * rat(k as u64))
            .collect();
        Ok(RationalSeries {
            coeffs: exp_weighted(&weighted),
        })
    }

    pub fn pow(&self, r: &BigRational) -> Result<Self> {
        series_pow(self, r)
    }
}

// `weighted[k] = k * L_k`; returns the coefficients of `exp L`.
fn exp_weighted(weighted: &[BigRational]) -> Vec<BigRational> {
    let n_max = weighted.len() - 1;
    let mut out = vec![BigRational::zero(); n_max + 1];
    out[0] = BigRational::one();
    for n in 1..=n_max {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            if !weighted[k].is_zero() && !out[n - k].is_zero() {
                acc += &weighted[k] * &out[n - k];
            }
        }
        out[n] = acc / rat(n as u64);
    }
    out
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// A rule `n -> a_n` evaluable at any `n >= 1` (or failing loudly).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixSource {
    /// `a_n = c` for every `n` (`c` isolated fixed points).
    Constant(Natural),
    /// A single orbit of length `k`.
    Reg(u64),
    /// `a_n = b^n`, the full shift on `b` symbols.
    Geometric(Natural),
    /// Finitely many orbits: `O_d` orbits of each length `d <= N`.
    Orbits(OrbitCounts),
    /// Explicit prefix; undefined past its end.
    Table(FixSequence),
}

impl FixSource {
    pub fn eval(&self, n: &Natural) -> Result<Natural> {
        if n.is_zero() {
            return Err(Error::ZeroArgument { op: "fix source" });
        }
        match self {
            FixSource::Constant(c) => Ok(c.clone()),
            FixSource::Reg(k) => {
                if *k == 0 {
                    return Err(Error::ZeroArgument { op: "reg" });
                }
                Ok(if (n % *k).is_zero() {
                    Natural::from(*k)
                } else {
                    Natural::zero()
                })
            }
            FixSource::Geometric(b) => {
                let e = n
                    .to_u32()
                    .ok_or_else(|| Error::ExponentTooLarge(n.clone()))?;
                Ok(b.pow(e))
            }
            FixSource::Orbits(o) => Ok(o.fix_at(n)),
            FixSource::Table(t) => match n.to_usize() {
                Some(i) if i <= t.len() => Ok(t.get(i).clone()),
                _ => Err(Error::SourceOutOfRange {
                    n: n.clone(),
                    available: t.len(),
                }),
            },
        }
    }

    /// `a_1..a_len`.
    pub fn prefix(&self, len: usize) -> Result<FixSequence> {
        let entries = (1..=len as u64)
            .map(|n| self.eval(&Natural::from(n)))
            .collect::<Result<Vec<_>>>()?;
        FixSequence::new(entries)
    }
}

/// Coefficients of `exp(sum_{n<=N} a_n z^n / n)` via `n F_n = sum_k a_k F_{n-k}`.
pub fn zeta_from_fix(src: &FixSource, order: usize) -> Result<RationalSeries> {
    let mut weighted = vec![BigRational::zero(); order + 1];
    for (n, w) in weighted.iter_mut().enumerate().skip(1) {
        *w = rat(src.eval(&Natural::from(n as u64))?);
    }
    Ok(RationalSeries {
        coeffs: exp_weighted(&weighted),
    })
}

/// [`zeta_from_fix`] on an explicit prefix, to order `a.len()`.
pub fn zeta_from_sequence(a: &FixSequence) -> RationalSeries {
    let weighted: Vec<BigRational> = std::iter::once(BigRational::zero())
        .chain(a.entries().iter().map(|x| rat(x.clone())))
        .collect();
    RationalSeries {
        coeffs: exp_weighted(&weighted),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ZetaFailure {
    ConstantTermNotOne,
    /// `n [z^n] log F` is not an integer.
    NonIntegerLogCoefficient {
        n: usize,
    },
    /// `n [z^n] log F` is a negative integer.
    NegativeCount {
        n: usize,
    },
}

impl fmt::Display for ZetaFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaFailure::ConstantTermNotOne => write!(f, "constant term is not 1"),
            ZetaFailure::NonIntegerLogCoefficient { n } => {
                write!(f, "n [z^n] log F is not an integer at n = {n}")
            }
            ZetaFailure::NegativeCount { n } => {
                write!(f, "n [z^n] log F is negative at n = {n}")
            }
        }
    }
}

/// Recovers `a_n = n [z^n] log F` for `n = 1..N`.
pub fn fix_from_zeta(series: &RationalSeries) -> Result<FixSequence> {
    if !series.coeff(0).is_one() {
        return Err(Error::NotZeta(ZetaFailure::ConstantTermNotOne));
    }
    let log = series.log()?;
    let mut entries = Vec::with_capacity(series.order());
    for n in 1..=series.order() {
        let a = log.coeff(n) * rat(n as u64);
        if !a.is_integer() {
            return Err(Error::NotZeta(ZetaFailure::NonIntegerLogCoefficient { n }));
        }
        let a = a.to_integer();
        if a.is_negative() {
            return Err(Error::NotZeta(ZetaFailure::NegativeCount { n }));
        }
        entries.push(a.magnitude().clone());
    }
    FixSequence::new(entries)
}

pub fn series_mul(f: &RationalSeries, g: &RationalSeries) -> Result<RationalSeries> {
    if f.order() != g.order() {
        return Err(Error::OrderMismatch {
            left: f.order(),
            right: g.order(),
        });
    }
    let n_max = f.order();
    let mut coeffs = vec![BigRational::zero(); n_max + 1];
    for (i, a) in f.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.coeffs[..=n_max - i].iter().enumerate() {
            if !b.is_zero() {
                coeffs[i + j] += a * b;
            }
        }
    }
    Ok(RationalSeries { coeffs })
}

/// `F^r = exp(r log F)` for `F_0 = 1`.
pub fn series_pow(f: &RationalSeries, r: &BigRational) -> Result<RationalSeries> {
    f.log()?.scale(r).exp()
}

/// The time-changed prefix `n -> a_{h(n)}` for `n = 1..len`.
pub fn time_change_fix<H: TimeChange + ?Sized>(
    h: &H,
    src: &FixSource,
    len: usize,
) -> Result<FixSequence> {
    let mut entries = Vec::with_capacity(len);
    for n in 1..=len {
        let image = h.apply(&Natural::from(n as u64))?;
        if image.is_zero() {
            return Err(Error::ZeroImage { n });
        }
        entries.push(src.eval(&image)?);
    }
    FixSequence::new(entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ZetaVerdict {
    /// A zeta prefix up to the series order.
    Pass,
    NotZeta(ZetaFailure),
    NotRealizable(RealizabilityVerdict),
}

impl ZetaVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, ZetaVerdict::Pass)
    }
}

pub fn is_zeta(series: &RationalSeries) -> ZetaVerdict {
    match fix_from_zeta(series) {
        Ok(a) => match check_realizable(&a) {
            RealizabilityVerdict::Pass => ZetaVerdict::Pass,
            v => ZetaVerdict::NotRealizable(v),
        },
        Err(Error::NotZeta(f)) => ZetaVerdict::NotZeta(f),
        // Order 0: nothing to contradict.
        Err(_) => ZetaVerdict::Pass,
    }
}

/// `prod_d (1 - z^d)^{-O_d}` truncated at `order`, in integer arithmetic.
pub fn euler_product(orbits: &OrbitCounts, order: usize) -> RationalSeries {
    let mut acc: Vec<Natural> = vec![Natural::zero(); order + 1];
    acc[0] = Natural::one();
    for d in 1..=orbits.len().min(order) {
        let m = orbits.get(d);
        if m.is_zero() {
            continue;
        }
        // (1 - z^d)^{-m} = sum_j C(m + j - 1, j) z^{dj}
        let mut factor = vec![Natural::one()];
        for j in 1..=order / d {
            let prev = factor[j - 1].clone();
            factor.push(prev * (m + Natural::from(j as u64 - 1)) / Natural::from(j as u64));
        }
        let mut next = vec![Natural::zero(); order + 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in factor.iter().enumerate() {
                let e = i + d * j;
                if e > order {
                    break;
                }
                next[e] += a * c;
            }
        }
        acc = next;
    }
    RationalSeries {
        coeffs: acc
            .into_iter()
            .map(|c| rat(BigInt::from_biguint(Sign::Plus, c)))
            .collect(),
    }
}
