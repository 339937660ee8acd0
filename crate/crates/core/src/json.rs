//! JSON forms of the library types. Integers are decimal strings, rationals
//! are `"p/q"` (or `"p"`), and maps keyed by prime use decimal string keys.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::Natural;
use crate::characterization::{
    ClaimOutcome, DivisibilityReport, DpFunction, DpSpec, MembershipOutcome, MembershipReport,
    PreimageReport, PreimageStructure, Violation,
};
use crate::compiler::{CompileResult, VerifyOutcome};
use crate::error::{Error, Result};
use crate::monoid::{Equality, Generator, Kind, Word};
use crate::realizable::{FixSequence, RealizabilityVerdict};
use crate::report::GpShiftReport;
use crate::series::{RationalSeries, ZetaVerdict};

fn malformed(e: impl std::fmt::Display) -> Error {
    Error::Malformed(e.to_string())
}

fn from_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(malformed)
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceJson {
    pub n: usize,
    pub entries: Vec<String>,
}

impl From<&FixSequence> for SequenceJson {
    fn from(a: &FixSequence) -> Self {
        SequenceJson {
            n: a.len(),
            entries: a.entries().iter().map(|x| x.to_string()).collect(),
        }
    }
}

impl TryFrom<SequenceJson> for FixSequence {
    type Error = Error;

    fn try_from(j: SequenceJson) -> Result<Self> {
        if j.n != j.entries.len() {
            return Err(Error::LengthMismatch {
                left: j.n,
                right: j.entries.len(),
            });
        }
        let entries = j
            .entries
            .iter()
            .map(|s| {
                s.parse::<Natural>()
                    .map_err(|_| Error::Malformed(format!("`{s}` is not a natural number")))
            })
            .collect::<Result<Vec<_>>>()?;
        FixSequence::new(entries)
    }
}

pub fn parse_sequence(s: &str) -> Result<FixSequence> {
    from_str::<SequenceJson>(s)?.try_into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl From<&RationalSeries> for SeriesJson {
    fn from(f: &RationalSeries) -> Self {
        SeriesJson {
            order: f.order(),
            coeffs: f.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TryFrom<SeriesJson> for RationalSeries {
    type Error = Error;

    fn try_from(j: SeriesJson) -> Result<Self> {
        if j.order + 1 != j.coeffs.len() {
            return Err(Error::LengthMismatch {
                left: j.order + 1,
                right: j.coeffs.len(),
            });
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<BigRational>()
                    .map_err(|_| Error::Malformed(format!("`{s}` is not a rational number")))
            })
            .collect::<Result<Vec<_>>>()?;
        RationalSeries::new(coeffs)
    }
}

pub fn parse_series(s: &str) -> Result<RationalSeries> {
    from_str::<SeriesJson>(s)?.try_into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    pub kind: String,
    pub p: u64,
    pub t: u32,
}

/// Generators in application order: `gens[0]` acts first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordJson {
    pub gens: Vec<GeneratorJson>,
}

impl From<&Word> for WordJson {
    fn from(w: &Word) -> Self {
        WordJson {
            gens: w
                .gens()
                .iter()
                .map(|g| GeneratorJson {
                    kind: match g.kind() {
                        Kind::G => "g",
                        Kind::H => "h",
                    }
                    .to_string(),
                    p: g.prime(),
                    t: g.level(),
                })
                .collect(),
        }
    }
}

impl TryFrom<WordJson> for Word {
    type Error = Error;

    fn try_from(j: WordJson) -> Result<Self> {
        j.gens
            .iter()
            .map(|g| {
                let kind = match g.kind.as_str() {
                    "g" => Kind::G,
                    "h" => Kind::H,
                    k => return Err(Error::Malformed(format!("unknown generator kind `{k}`"))),
                };
                Generator::new(kind, g.p, g.t)
            })
            .collect()
    }
}

pub fn parse_word(s: &str) -> Result<Word> {
    from_str::<WordJson>(s)?.try_into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DpJson {
    pub shape: String,
    pub values: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecJson {
    pub primes: BTreeMap<String, DpJson>,
    #[serde(default = "identity_default")]
    pub default: String,
}

fn identity_default() -> String {
    "identity".into()
}

impl From<&DpSpec> for SpecJson {
    fn from(s: &DpSpec) -> Self {
        SpecJson {
            primes: s
                .iter()
                .map(|(p, d)| {
                    let shape = if d.is_bounded() {
                        "bounded"
                    } else {
                        "unbounded"
                    };
                    (
                        p.to_string(),
                        DpJson {
                            shape: shape.into(),
                            values: d.values().to_vec(),
                        },
                    )
                })
                .collect(),
            default: identity_default(),
        }
    }
}

impl TryFrom<SpecJson> for DpSpec {
    type Error = Error;

    fn try_from(j: SpecJson) -> Result<Self> {
        if j.default != "identity" {
            return Err(Error::Malformed(format!(
                "unsupported default `{}`; only `identity` is defined",
                j.default
            )));
        }
        let mut spec = DpSpec::identity();
        for (key, d) in j.primes {
            let p: u64 = key
                .parse()
                .map_err(|_| Error::Malformed(format!("prime key `{key}` is not an integer")))?;
            let f = match d.shape.as_str() {
                "bounded" => DpFunction::Bounded(d.values),
                "unbounded" => DpFunction::Unbounded(d.values),
                s => return Err(Error::Malformed(format!("unknown shape `{s}`"))),
            };
            spec.insert(p, f)?;
        }
        Ok(spec)
    }
}

pub fn parse_spec(s: &str) -> Result<DpSpec> {
    from_str::<SpecJson>(s)?.try_into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompileJson {
    pub word: WordJson,
    pub agreement: BTreeMap<String, u32>,
}

impl From<&CompileResult> for CompileJson {
    fn from(r: &CompileResult) -> Self {
        CompileJson {
            word: (&r.word).into(),
            agreement: r
                .agreement
                .iter()
                .map(|(p, b)| (p.to_string(), *b))
                .collect(),
        }
    }
}

impl TryFrom<CompileJson> for CompileResult {
    type Error = Error;

    fn try_from(j: CompileJson) -> Result<Self> {
        let agreement = j
            .agreement
            .into_iter()
            .map(|(k, b)| {
                k.parse::<u64>()
                    .map(|p| (p, b))
                    .map_err(|_| Error::Malformed(format!("prime key `{k}` is not an integer")))
            })
            .collect::<Result<_>>()?;
        Ok(CompileResult {
            word: j.word.try_into()?,
            agreement,
        })
    }
}

pub fn realizability_json(v: &RealizabilityVerdict) -> Value {
    match v {
        RealizabilityVerdict::Pass => json!({"verdict": "pass"}),
        RealizabilityVerdict::SignFailure { n, value } => {
            json!({"verdict": "sign-failure", "n": n, "b_n": value.to_string()})
        }
        RealizabilityVerdict::DoldFailure { n, value } => {
            json!({"verdict": "dold-failure", "n": n, "b_n": value.to_string()})
        }
    }
}

pub fn zeta_json(v: &ZetaVerdict) -> Value {
    match v {
        ZetaVerdict::Pass => json!({"verdict": "pass"}),
        ZetaVerdict::NotZeta(f) => json!({"verdict": "not-zeta", "reason": f.to_string()}),
        ZetaVerdict::NotRealizable(r) => {
            json!({"verdict": "not-realizable", "realizability": realizability_json(r)})
        }
    }
}

pub fn violation_json(v: &Violation) -> Value {
    json!({"prime": v.prime, "condition": v.condition.to_string(), "index": v.index})
}

pub fn membership_json(r: &MembershipReport) -> Value {
    let mut out = json!({"max_k": r.max_k, "precision": r.precision});
    match &r.outcome {
        MembershipOutcome::NoViolation => {
            out["outcome"] = json!("no-violation");
            out["conclusive"] = json!(false);
        }
        MembershipOutcome::Witness { k, verdict } => {
            out["outcome"] = json!("witness");
            out["conclusive"] = json!(true);
            out["k"] = json!(k);
            out["realizability"] = realizability_json(verdict);
        }
    }
    out
}

pub fn preimage_json(r: &PreimageReport) -> Value {
    let outcome = match r.outcome {
        PreimageStructure::Empty => json!({"shape": "empty"}),
        PreimageStructure::Progression(d) => json!({"shape": "progression", "d": d}),
        PreimageStructure::Violation(n) => json!({"shape": "violation", "n": n}),
    };
    json!({"k": r.k, "precision": r.precision, "outcome": outcome})
}

fn claim_json(c: &ClaimOutcome) -> Value {
    match c {
        ClaimOutcome::Holds => json!({"holds": true}),
        ClaimOutcome::Counterexample { m, n, lhs, rhs } => json!({
            "holds": false,
            "m": m,
            "n": n,
            "lhs": lhs.to_string(),
            "rhs": rhs.to_string(),
        }),
    }
}

pub fn divisibility_json(r: &DivisibilityReport) -> Value {
    json!({
        "precision": r.precision,
        "divisibility": claim_json(&r.divisibility),
        "coprime_lcm": claim_json(&r.coprime_lcm),
        "prime_support": claim_json(&r.prime_support),
    })
}

pub fn verify_json(v: &VerifyOutcome) -> Value {
    match v {
        VerifyOutcome::Ok => json!({"verdict": "ok"}),
        VerifyOutcome::Witness { n, got, expected } => json!({
            "verdict": "witness",
            "n": n,
            "got": got.to_string(),
            "expected": expected.to_string(),
        }),
    }
}

pub fn equality_json(e: &Equality) -> Value {
    match e {
        Equality::Equal => json!({"verdict": "equal"}),
        Equality::Witness { n, left, right } => json!({
            "verdict": "witness",
            "n": n,
            "left": left.to_string(),
            "right": right.to_string(),
        }),
    }
}

pub fn gp_report_json(r: &GpShiftReport) -> Value {
    let direct = SeriesJson::from(&r.direct);
    let forms: Vec<Value> = r
        .forms
        .iter()
        .map(|f| {
            json!({
                "name": f.name,
                "formula": f.formula,
                "series": SeriesJson::from(&f.series),
                "first_mismatch": f.first_mismatch,
                "zeta": zeta_json(&f.zeta),
            })
        })
        .collect();
    json!({
        "p": r.p,
        "order": r.order,
        "fix": r.fix.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "realizability": realizability_json(&r.realizability),
        "direct": direct,
        "forms": forms,
    })
}
