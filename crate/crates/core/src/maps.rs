//! Maps `N -> N` that can be used as time-changes.

use num_traits::{One, ToPrimitive, Zero};

use crate::arith::Natural;
use crate::characterization::DpSpec;
use crate::error::{Error, Result};
use crate::monoid::{Generator, Word};

/// Something evaluable at every `n >= 1`.
pub trait TimeChange {
    fn apply(&self, n: &Natural) -> Result<Natural>;
}

impl<F> TimeChange for F
where
    F: Fn(&Natural) -> Natural,
{
    fn apply(&self, n: &Natural) -> Result<Natural> {
        Ok(self(n))
    }
}

/// Named maps, so that callers never have to supply code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuiltinMap {
    Identity,
    /// `n -> c n`
    Mul(Natural),
    /// `n -> n^b`
    Pow(u32),
    /// `n -> n^n`
    SelfPower,
    /// `n -> n + 1`
    Succ,
    /// `n -> c`
    Const(Natural),
    /// `n -> p n` when `p | n`, else `n`.
    Gp(u64),
    Generator(Generator),
    Word(Word),
    Spec(DpSpec),
}

impl BuiltinMap {
    /// Parses the parameter-only forms: `identity`, `mul:C`, `pow:B`, `nn`,
    /// `succ`, `const:C`, `gp:P`, `g:P:T`, `h:P:T`. File-backed maps (words
    /// and specs) are constructed by the caller.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Malformed(format!("unknown map `{s}`"));
        let num = |x: &str| -> Result<Natural> {
            x.parse::<Natural>()
                .map_err(|_| Error::Malformed(format!("bad number `{x}` in map `{s}`")))
        };
        let small = |x: &str| -> Result<u64> {
            x.parse::<u64>()
                .map_err(|_| Error::Malformed(format!("bad number `{x}` in map `{s}`")))
        };
        match parts.as_slice() {
            ["identity"] | ["id"] => Ok(BuiltinMap::Identity),
            ["nn"] => Ok(BuiltinMap::SelfPower),
            ["succ"] => Ok(BuiltinMap::Succ),
            ["mul", c] => {
                let c = num(c)?;
                if c.is_zero() {
                    return Err(Error::Malformed("mul:0 is not a map into N".into()));
                }
                Ok(BuiltinMap::Mul(c))
            }
            ["pow", b] => Ok(BuiltinMap::Pow(small(b)?.try_into().map_err(|_| bad())?)),
            ["const", c] => {
                let c = num(c)?;
                if c.is_zero() {
                    return Err(Error::Malformed("const:0 is not a map into N".into()));
                }
                Ok(BuiltinMap::Const(c))
            }
            ["gp", p] => {
                let p = small(p)?;
                Generator::g(p, 0)?;
                Ok(BuiltinMap::Gp(p))
            }
            ["g", p, t] => Ok(BuiltinMap::Generator(Generator::g(
                small(p)?,
                small(t)?.try_into().map_err(|_| bad())?,
            )?)),
            ["h", p, t] => Ok(BuiltinMap::Generator(Generator::h(
                small(p)?,
                small(t)?.try_into().map_err(|_| bad())?,
            )?)),
            _ => Err(bad()),
        }
    }
}

impl TimeChange for BuiltinMap {
    fn apply(&self, n: &Natural) -> Result<Natural> {
        if n.is_zero() {
            return Err(Error::ZeroArgument { op: "map" });
        }
        match self {
            BuiltinMap::Identity => Ok(n.clone()),
            BuiltinMap::Mul(c) => Ok(n * c),
            BuiltinMap::Pow(b) => Ok(n.pow(*b)),
            BuiltinMap::SelfPower => {
                let e = n
                    .to_u32()
                    .ok_or_else(|| Error::ExponentTooLarge(n.clone()))?;
                Ok(n.pow(e))
            }
            BuiltinMap::Succ => Ok(n + Natural::one()),
            BuiltinMap::Const(c) => Ok(c.clone()),
            BuiltinMap::Gp(p) => Ok(if (n % *p).is_zero() {
                n * *p
            } else {
                n.clone()
            }),
            BuiltinMap::Generator(g) => g.apply(n),
            BuiltinMap::Word(w) => w.apply(n),
            BuiltinMap::Spec(s) => s.apply(n),
        }
    }
}
