use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::catalog::{chi_over_x, lookup};
use super::prime_power::{from_prime_power_values, ExtensionKind};
use super::{ArithmeticFunction, Builtin, Transform};
use crate::arith::{fmt_rat, parse_rat};
use crate::error::{Error, Result};

/// JSON form of a prime-power-defined function:
/// `{"class": "multiplicative", "values": {"2": "1/2", ...}, "n": 12}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerSpec {
    pub class: ExtensionKind,
    pub values: BTreeMap<String, String>,
    pub n: u64,
}

impl PrimePowerSpec {
    pub fn build(&self) -> Result<ArithmeticFunction> {
        let mut values = BTreeMap::new();
        for (k, v) in &self.values {
            let key: u64 = k
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad prime-power key `{k}`")))?;
            values.insert(key, parse_rat(v)?);
        }
        from_prime_power_values(values, self.class, self.n)
    }

    /// The spec describing an existing prime-power function.
    pub fn of(f: &ArithmeticFunction) -> Option<Self> {
        let def = f.prime_power_def()?;
        Some(PrimePowerSpec {
            class: def.kind,
            values: def
                .values
                .iter()
                .map(|(k, v)| (k.to_string(), fmt_rat(v)))
                .collect(),
            n: def.n,
        })
    }
}

/// A function reference as it appears in files and on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionSpec {
    Named(String),
    PrimePower(PrimePowerSpec),
}

impl FunctionSpec {
    pub fn build(&self) -> Result<ArithmeticFunction> {
        match self {
            FunctionSpec::Named(s) => parse_function(s),
            FunctionSpec::PrimePower(p) => p.build(),
        }
    }
}

fn parse_param(s: &str) -> Result<u64> {
    s.parse()
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::Invalid(format!("bad modulus `{s}`")))
}

/// Parse `name`, `name:param`, `transform:inner`, `f+g`, `f*g`, or a JSON
/// prime-power object.
pub fn parse_function(spec: &str) -> Result<ArithmeticFunction> {
    let s = spec.trim();
    if s.starts_with('{') {
        let p: PrimePowerSpec = serde_json::from_str(s)?;
        return p.build();
    }
    if let Some((a, b)) = s.split_once('+') {
        return ArithmeticFunction::pointwise_sum(&parse_function(a)?, &parse_function(b)?);
    }
    if let Some((a, b)) = s.split_once('*') {
        return ArithmeticFunction::pointwise_product(&parse_function(a)?, &parse_function(b)?);
    }
    if let Some((head, rest)) = s.split_once(':') {
        let t = match head {
            "chi" => {
                return Ok(ArithmeticFunction::builtin(Builtin::Chi(parse_param(
                    rest,
                )?)))
            }
            "chi_over_x" => return Ok(chi_over_x(parse_param(rest)?)),
            "exp" => Transform::Exp,
            "expneg" => Transform::ExpNeg,
            "log" => Transform::Log,
            "neglog" => Transform::NegLog,
            "inv" => Transform::Inv,
            "pow2neg" => Transform::Pow2Neg,
            _ => return Err(Error::UnknownFunction(s.to_string())),
        };
        return ArithmeticFunction::transform(t, &parse_function(rest)?);
    }
    lookup(s).ok_or_else(|| Error::UnknownFunction(s.to_string()))
}
