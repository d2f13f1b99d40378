use std::fmt;
use std::str::FromStr;

use num::{One, Zero};

use super::CumulantSequence;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, parse_rational_list};
use crate::Rational;

/// Named cumulant presets.
///
/// Text form: `gaussian:c=<rat>,v=<rat>`, `poisson:lambda=<rat>,alpha=<rat>`,
/// `evenpoisson:odd=<rat-list>` and `custom:<rat-list>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distribution {
    /// Boolean Gaussian: `K_1 = mean`, `K_2 = variance`, higher cumulants zero.
    Gaussian { mean: Rational, variance: Rational },
    /// Boolean Poisson `ν(λ, α)`: `K_n = α^n λ`.
    Poisson { rate: Rational, jump: Rational },
    /// Even cumulants all equal to one; odd cumulants `K_1, K_3, …` taken from the list.
    EvenPoisson { odd: Vec<Rational> },
    /// Explicit `[K_1, …, K_R]`.
    Custom(Vec<Rational>),
}

impl Distribution {
    pub fn standard_normal() -> Self {
        Distribution::Gaussian { mean: Rational::one(), variance: Rational::one() }
    }

    /// Cumulants through `order`.
    pub fn cumulants(&self, order: usize) -> Result<CumulantSequence> {
        if order == 0 {
            return Err(Error::InvalidArgument("order must be >= 1".into()));
        }
        let values = match self {
            Distribution::Gaussian { mean, variance } => (1..=order)
                .map(|k| match k {
                    1 => mean.clone(),
                    2 => variance.clone(),
                    _ => Rational::zero(),
                })
                .collect(),
            Distribution::Poisson { rate, jump } => {
                let mut out = Vec::with_capacity(order);
                let mut power = jump.clone();
                for _ in 0..order {
                    out.push(&power * rate);
                    power *= jump;
                }
                out
            }
            Distribution::EvenPoisson { odd } => {
                let needed = order.div_ceil(2);
                if odd.len() < needed {
                    return Err(Error::InvalidArgument(format!(
                        "even Poisson preset needs {needed} odd cumulants for order {order}, got {}",
                        odd.len()
                    )));
                }
                (1..=order).map(|k| if k % 2 == 0 { Rational::one() } else { odd[k / 2].clone() }).collect()
            }
            Distribution::Custom(values) => {
                if values.len() < order {
                    return Err(Error::InsufficientOrder { needed: order, available: values.len() });
                }
                values[..order].to_vec()
            }
        };
        CumulantSequence::new(values)
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (kind, params) =
            text.split_once(':').ok_or_else(|| Error::Parse(format!("`{text}`: expected <kind>:<parameters>")))?;
        match kind.trim() {
            "gaussian" => {
                let map = key_values(params, &["c", "v"])?;
                Ok(Distribution::Gaussian { mean: map[0].clone(), variance: map[1].clone() })
            }
            "poisson" => {
                let map = key_values(params, &["lambda", "alpha"])?;
                Ok(Distribution::Poisson { rate: map[0].clone(), jump: map[1].clone() })
            }
            "evenpoisson" => {
                let list = params
                    .trim()
                    .strip_prefix("odd=")
                    .ok_or_else(|| Error::Parse(format!("`{text}`: expected odd=<rat-list>")))?;
                Ok(Distribution::EvenPoisson { odd: parse_rational_list(list)? })
            }
            "custom" => {
                let values = parse_rational_list(params)?;
                if values.is_empty() {
                    return Err(Error::Parse("custom preset needs at least one cumulant".into()));
                }
                Ok(Distribution::Custom(values))
            }
            other => Err(Error::Parse(format!("unknown distribution kind `{other}`"))),
        }
    }
}

fn key_values(params: &str, keys: &[&str]) -> Result<Vec<Rational>> {
    let mut found: Vec<Option<Rational>> = vec![None; keys.len()];
    for pair in params.split(',') {
        let (key, value) = pair.split_once('=').ok_or_else(|| Error::Parse(format!("`{pair}`: expected key=value")))?;
        let slot = keys
            .iter()
            .position(|k| *k == key.trim())
            .ok_or_else(|| Error::Parse(format!("unexpected parameter `{}`", key.trim())))?;
        found[slot] = Some(parse_rational(value)?);
    }
    found
        .into_iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or_else(|| Error::Parse(format!("missing parameter `{k}`"))))
        .collect()
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |values: &[Rational]| values.iter().map(format_rational).collect::<Vec<_>>().join(",");
        match self {
            Distribution::Gaussian { mean, variance } => {
                write!(f, "gaussian:c={},v={}", format_rational(mean), format_rational(variance))
            }
            Distribution::Poisson { rate, jump } => {
                write!(f, "poisson:lambda={},alpha={}", format_rational(rate), format_rational(jump))
            }
            Distribution::EvenPoisson { odd } => write!(f, "evenpoisson:odd={}", list(odd)),
            Distribution::Custom(values) => write!(f, "custom:{}", list(values)),
        }
    }
}
