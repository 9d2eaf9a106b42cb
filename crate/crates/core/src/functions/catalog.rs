use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ArithmeticFunction, DeclaredClass, Transform, ValueRange};
use crate::arith::{Factorization, Rat};

use DeclaredClass::*;

/// Base functions evaluated directly from a factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Ω
    BigOmega,
    /// ω
    Omega,
    /// Υ, sum of prime factors with multiplicity
    BigUpsilon,
    /// υ, sum of distinct prime factors
    Upsilon,
    /// Logarithmic derivative Σ α/p.
    Ld,
    Zero,
    /// Arithmetic derivative.
    Deriv,
    XMinus1,
    /// 0 at 1, 1 elsewhere.
    S0Unit,
    /// τ
    Nd,
    Sigma,
    Phi,
    /// Σ_{k≤x} gcd(k, x)
    Pillai,
    Id,
    One,
    /// ε: 1 at 1, 0 elsewhere.
    Unit,
    Mu2,
    /// Principal character modulo k.
    Chi(u64),
}

impl Builtin {
    pub fn name(self) -> String {
        match self {
            Builtin::BigOmega => "bigomega".into(),
            Builtin::Omega => "omega".into(),
            Builtin::BigUpsilon => "bigupsilon".into(),
            Builtin::Upsilon => "upsilon".into(),
            Builtin::Ld => "ld".into(),
            Builtin::Zero => "zero".into(),
            Builtin::Deriv => "deriv".into(),
            Builtin::XMinus1 => "x_minus_1".into(),
            Builtin::S0Unit => "s0_unit".into(),
            Builtin::Nd => "nd".into(),
            Builtin::Sigma => "sigma".into(),
            Builtin::Phi => "phi".into(),
            Builtin::Pillai => "pillai".into(),
            Builtin::Id => "id".into(),
            Builtin::One => "one".into(),
            Builtin::Unit => "unit".into(),
            Builtin::Mu2 => "mu2".into(),
            Builtin::Chi(k) => format!("chi:{k}"),
        }
    }

    pub(super) fn meta(self) -> (DeclaredClass, ValueRange) {
        match self {
            Builtin::BigOmega => (TotallyAdditive, ValueRange::GE_ONE),
            Builtin::Omega => (Additive, ValueRange::GE_ONE),
            Builtin::BigUpsilon => (TotallyAdditive, ValueRange::GT_ONE),
            Builtin::Upsilon => (Additive, ValueRange::GT_ONE),
            Builtin::Ld => (TotallyAdditive, ValueRange::POS),
            Builtin::Zero => (TotallyAdditive, ValueRange::UNIT_LT),
            Builtin::Deriv => (Neither, ValueRange::GE_ONE),
            Builtin::XMinus1 => (Neither, ValueRange::GE_ONE),
            Builtin::S0Unit => (Neither, ValueRange::ONE),
            Builtin::Nd | Builtin::Sigma | Builtin::Pillai => (Multiplicative, ValueRange::GT_ONE),
            Builtin::Phi => (Multiplicative, ValueRange::GE_ONE),
            Builtin::Id => (TotallyMultiplicative, ValueRange::GT_ONE),
            Builtin::One => (TotallyMultiplicative, ValueRange::ONE),
            Builtin::Unit => (TotallyMultiplicative, ValueRange::UNIT_LT),
            Builtin::Mu2 => (Multiplicative, ValueRange::UNIT),
            Builtin::Chi(1) => (TotallyMultiplicative, ValueRange::ONE),
            Builtin::Chi(_) => (TotallyMultiplicative, ValueRange::UNIT),
        }
    }

    fn additive_term(self, p: u64, a: u32) -> Option<Rat> {
        let int = |v: u64| Some(Rat::from_integer(BigInt::from(v)));
        match self {
            Builtin::BigOmega => int(a as u64),
            Builtin::Omega => int(1),
            Builtin::BigUpsilon => int(a as u64 * p),
            Builtin::Upsilon => int(p),
            Builtin::Ld => Some(Rat::new(BigInt::from(a), BigInt::from(p))),
            Builtin::Zero => int(0),
            _ => None,
        }
    }

    /// `g(p^a)` for multiplicative builtins.
    fn local_factor(self, p: u64, a: u32) -> Option<BigInt> {
        let bp = BigInt::from(p);
        Some(match self {
            Builtin::Nd => BigInt::from(a + 1),
            Builtin::Sigma => (bp.pow(a + 1) - 1u32) / (bp - 1u32),
            Builtin::Phi => bp.pow(a - 1) * (p - 1),
            Builtin::Pillai => bp.pow(a - 1) * (BigInt::from(a + 1) * p - a),
            Builtin::Id => bp.pow(a),
            Builtin::One => BigInt::one(),
            Builtin::Unit => BigInt::zero(),
            Builtin::Mu2 => BigInt::from((a == 1) as u32),
            Builtin::Chi(k) => BigInt::from((k % p != 0) as u32),
            _ => return None,
        })
    }

    pub(super) fn eval(self, x: u64, fac: &Factorization) -> Rat {
        match self {
            Builtin::Deriv => Builtin::Ld.eval(x, fac) * BigInt::from(x),
            Builtin::XMinus1 => Rat::from_integer(BigInt::from(x) - 1),
            Builtin::S0Unit => Rat::from_integer(BigInt::from((x != 1) as u32)),
            _ if self.meta().0.is_additive() => fac.iter().fold(Rat::zero(), |acc, (p, a)| {
                acc + self.additive_term(p, a).expect("additive")
            }),
            _ => Rat::from_integer(fac.iter().fold(BigInt::one(), |acc, (p, a)| {
                acc * self.local_factor(p, a).expect("multiplicative")
            })),
        }
    }

    pub(super) fn eval_small(self, x: u64, fac: &Factorization) -> Option<(u128, u128)> {
        let x = x as u128;
        match self {
            Builtin::BigOmega => Some((fac.big_omega() as u128, 1)),
            Builtin::Omega => Some((fac.omega() as u128, 1)),
            Builtin::BigUpsilon => Some((fac.iter().map(|(p, a)| p as u128 * a as u128).sum(), 1)),
            Builtin::Upsilon => Some((fac.iter().map(|(p, _)| p as u128).sum(), 1)),
            Builtin::Zero => Some((0, 1)),
            Builtin::XMinus1 => Some((x - 1, 1)),
            Builtin::S0Unit => Some(((x != 1) as u128, 1)),
            Builtin::Ld | Builtin::Deriv => {
                // Σ a/p = (Σ a·rad/p) / rad with rad squarefree.
                let rad: u128 = fac.iter().map(|(p, _)| p as u128).product();
                let num: u128 = fac.iter().map(|(p, a)| a as u128 * (rad / p as u128)).sum();
                let (num, den) = super::reduce(num, rad.max(1));
                if self == Builtin::Deriv {
                    Some((num.checked_mul(x / den)?, 1))
                } else {
                    Some((num, den))
                }
            }
            _ => {
                let mut acc: u128 = 1;
                for (p, a) in fac.iter() {
                    let p = p as u128;
                    let term = match self {
                        Builtin::Nd => a as u128 + 1,
                        Builtin::Sigma => (p.checked_pow(a + 1)? - 1) / (p - 1),
                        Builtin::Phi => p.checked_pow(a - 1)? * (p - 1),
                        Builtin::Pillai => p
                            .checked_pow(a - 1)?
                            .checked_mul((a as u128 + 1) * p - a as u128)?,
                        Builtin::Id => p.checked_pow(a)?,
                        Builtin::One => 1,
                        Builtin::Unit => 0,
                        Builtin::Mu2 => (a == 1) as u128,
                        Builtin::Chi(k) => (k as u128 % p != 0) as u128,
                        _ => unreachable!("additive builtins handled above"),
                    };
                    acc = acc.checked_mul(term)?;
                }
                Some((acc, 1))
            }
        }
    }
}

fn b(b: Builtin) -> ArithmeticFunction {
    ArithmeticFunction::builtin(b)
}

fn inv(f: ArithmeticFunction) -> ArithmeticFunction {
    ArithmeticFunction::transform(Transform::Inv, &f).expect("exact")
}

fn mul(parts: &[ArithmeticFunction]) -> ArithmeticFunction {
    parts[1..].iter().fold(parts[0].clone(), |acc, f| {
        ArithmeticFunction::pointwise_product(&acc, f).expect("compatible")
    })
}

fn ratio(
    name: &str,
    num: &[Builtin],
    den: &[Builtin],
    class: DeclaredClass,
    range: ValueRange,
) -> ArithmeticFunction {
    let mut parts: Vec<_> = num.iter().map(|&x| b(x)).collect();
    if !den.is_empty() {
        parts.push(inv(mul(&den.iter().map(|&x| b(x)).collect::<Vec<_>>())));
    }
    mul(&parts).with_meta(name, class, range)
}

/// Resolve a parameterless catalog name or alias.
pub(super) fn lookup(name: &str) -> Option<ArithmeticFunction> {
    use Builtin::*;
    let (m, tm) = (Multiplicative, TotallyMultiplicative);
    let r = match name {
        "bigomega" => b(BigOmega),
        "omega" => b(Omega),
        "bigupsilon" | "sopfr" => b(BigUpsilon),
        "upsilon" | "sopf" => b(Upsilon),
        "ld" => b(Ld),
        "zero" => b(Zero),
        "deriv" => b(Deriv),
        "x_minus_1" => b(XMinus1),
        "s0_unit" => b(S0Unit),
        "nd" | "tau" => b(Nd),
        "sigma" => b(Sigma),
        "phi" => b(Phi),
        "pillai" => b(Pillai),
        "id" | "x" => b(Id),
        "one" => b(One),
        "unit" | "epsilon" => b(Unit),
        "mu2" => b(Mu2),
        "log" => ArithmeticFunction::transform(Transform::Log, &b(Id))
            .expect("exact")
            .with_meta("log", DeclaredClass::TotallyAdditive, ValueRange::POS),
        "x_over_nd" => ratio(name, &[Id], &[Nd], m, ValueRange::GE_ONE),
        "x2_over_nd" => ratio(name, &[Id, Id], &[Nd], m, ValueRange::GT_ONE),
        "x_over_sigma" => ratio(name, &[Id], &[Sigma], m, ValueRange::OPEN_UNIT),
        "x2_over_sigma" => ratio(name, &[Id, Id], &[Sigma], m, ValueRange::GT_ONE),
        "x_over_phi" => ratio(name, &[Id], &[Phi], m, ValueRange::GT_ONE),
        "x2_over_phi" => ratio(name, &[Id, Id], &[Phi], m, ValueRange::GT_ONE),
        "xnd_over_pillai" => ratio(name, &[Id, Nd], &[Pillai], m, ValueRange::GT_ONE),
        "sigma_over_x" => ratio(name, &[Sigma], &[Id], m, ValueRange::GT_ONE),
        "recip" => ratio(name, &[One], &[Id], tm, ValueRange::OPEN_UNIT),
        "recip_nd" => ratio(name, &[One], &[Nd], m, ValueRange::OPEN_UNIT),
        "nd_over_x" => ratio(name, &[Nd], &[Id], m, ValueRange::UNIT_POS),
        "nd_over_x2" => ratio(name, &[Nd], &[Id, Id], m, ValueRange::OPEN_UNIT),
        "recip_sigma" => ratio(name, &[One], &[Sigma], m, ValueRange::OPEN_UNIT),
        "sigma_over_x2" => ratio(name, &[Sigma], &[Id, Id], m, ValueRange::OPEN_UNIT),
        "recip_phi" => ratio(name, &[One], &[Phi], m, ValueRange::UNIT_POS),
        "phi_over_x" => ratio(name, &[Phi], &[Id], m, ValueRange::OPEN_UNIT),
        "phi_over_x2" => ratio(name, &[Phi], &[Id, Id], m, ValueRange::OPEN_UNIT),
        "recip_pillai" => ratio(name, &[One], &[Pillai], m, ValueRange::OPEN_UNIT),
        "pillai_normalized" => ratio(name, &[Pillai], &[Id, Nd], m, ValueRange::OPEN_UNIT),
        "mu2_over_x" => ratio(name, &[Mu2], &[Id], m, ValueRange::UNIT_LT),
        _ => return None,
    };
    Some(r)
}

/// `χ_k / x`.
pub(super) fn chi_over_x(k: u64) -> ArithmeticFunction {
    let range = if k == 1 {
        ValueRange::OPEN_UNIT
    } else {
        ValueRange::UNIT_LT
    };
    ratio(
        &format!("chi_over_x:{k}"),
        &[Builtin::Chi(k)],
        &[Builtin::Id],
        TotallyMultiplicative,
        range,
    )
}

/// Every parameterless catalog entry, canonical names only.
pub const CATALOG_NAMES: &[&str] = &[
    "bigomega",
    "omega",
    "bigupsilon",
    "upsilon",
    "ld",
    "zero",
    "deriv",
    "x_minus_1",
    "s0_unit",
    "nd",
    "sigma",
    "phi",
    "pillai",
    "id",
    "one",
    "unit",
    "mu2",
    "log",
    "x_over_nd",
    "x2_over_nd",
    "x_over_sigma",
    "x2_over_sigma",
    "x_over_phi",
    "x2_over_phi",
    "xnd_over_pillai",
    "sigma_over_x",
    "recip",
    "recip_nd",
    "nd_over_x",
    "nd_over_x2",
    "recip_sigma",
    "sigma_over_x2",
    "recip_phi",
    "phi_over_x",
    "phi_over_x2",
    "recip_pillai",
    "pillai_normalized",
    "mu2_over_x",
];

/// The built-in catalog, with `χ_k` and `χ_k/x` instantiated for each `k`
/// in `chi_moduli`.
pub fn catalog(chi_moduli: &[u64]) -> Vec<ArithmeticFunction> {
    let mut out: Vec<_> = CATALOG_NAMES
        .iter()
        .map(|n| lookup(n).expect("catalog name"))
        .collect();
    for &k in chi_moduli {
        out.push(b(Builtin::Chi(k)));
        out.push(chi_over_x(k));
    }
    out
}
