//! Parsing and evaluation of `mzv eval` expressions.

use std::collections::HashMap;

use mzv_core::{
    s_derivative, s_hat_polylog, s_weighted, t_double, z_coeff, MultiIndex, MzvError, Real, RealEvaluator, RealField,
    Result,
};
use num_rational::Rational64;

/// One evaluable quantity.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Zeta(MultiIndex),
    Li(MultiIndex, String),
    S { l: u32, n: u32, x: String, y: String },
    Sdq { l: u32, n: u32, p: u32, q: u32, x: String, y: String },
    Shat { l: u32, n: u32, x: String, y: String, z: String },
    T { l: u32, x: String, y: String },
    Z { l: u32, n: u32, r: u32 },
}

fn parse_err(msg: impl Into<String>) -> MzvError {
    MzvError::Parse(msg.into())
}

fn int(tok: Option<&&str>, what: &str) -> Result<u32> {
    let tok = tok.ok_or_else(|| parse_err(format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(format!("{what} must be a non-negative integer, got `{tok}`")))
}

/// `key=value` pairs after the positional arguments.
fn keywords<'a>(toks: &[&'a str], allowed: &[&str]) -> Result<HashMap<&'a str, &'a str>> {
    let mut out = HashMap::new();
    for tok in toks {
        let (k, v) = tok.split_once('=').ok_or_else(|| parse_err(format!("expected key=value, got `{tok}`")))?;
        if !allowed.contains(&k) {
            return Err(parse_err(format!("unknown key `{k}`")));
        }
        out.insert(k, v);
    }
    Ok(out)
}

fn take(kw: &HashMap<&str, &str>, key: &str) -> Result<String> {
    kw.get(key)
        .map(|v| v.to_string())
        .ok_or_else(|| parse_err(format!("missing {key}=…")))
}

impl std::str::FromStr for Expr {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let Some((head, rest)) = toks.split_first() else {
            return Err(parse_err("empty expression"));
        };
        match head.to_ascii_lowercase().as_str() {
            "zeta" => {
                let [idx] = rest else {
                    return Err(parse_err("usage: zeta l1,l2,…"));
                };
                Ok(Expr::Zeta(idx.parse()?))
            }
            "li" => {
                let joined = rest.join(" ");
                let (idx, z) = joined
                    .split_once('@')
                    .ok_or_else(|| parse_err("usage: li l1,l2,… @ z"))?;
                Ok(Expr::Li(idx.trim().parse()?, z.trim().to_string()))
            }
            "s" => {
                let kw = keywords(rest.get(2..).unwrap_or(&[]), &["x", "y"])?;
                Ok(Expr::S {
                    l: int(rest.first(), "l")?,
                    n: int(rest.get(1), "n")?,
                    x: take(&kw, "x")?,
                    y: take(&kw, "y")?,
                })
            }
            "sdq" => {
                let kw = keywords(rest.get(2..).unwrap_or(&[]), &["p", "q", "x", "y"])?;
                let p = take(&kw, "p")?;
                let q = take(&kw, "q")?;
                Ok(Expr::Sdq {
                    l: int(rest.first(), "l")?,
                    n: int(rest.get(1), "n")?,
                    p: int(Some(&p.as_str()), "p")?,
                    q: int(Some(&q.as_str()), "q")?,
                    x: take(&kw, "x")?,
                    y: take(&kw, "y")?,
                })
            }
            "shat" => {
                let kw = keywords(rest.get(2..).unwrap_or(&[]), &["x", "y", "z"])?;
                Ok(Expr::Shat {
                    l: int(rest.first(), "l")?,
                    n: int(rest.get(1), "n")?,
                    x: take(&kw, "x")?,
                    y: take(&kw, "y")?,
                    z: take(&kw, "z")?,
                })
            }
            "t" => {
                let kw = keywords(rest.get(1..).unwrap_or(&[]), &["x", "y"])?;
                Ok(Expr::T {
                    l: int(rest.first(), "l")?,
                    x: take(&kw, "x")?,
                    y: take(&kw, "y")?,
                })
            }
            "z" => {
                if rest.len() != 3 {
                    return Err(parse_err("usage: Z l n r"));
                }
                Ok(Expr::Z {
                    l: int(rest.first(), "l")?,
                    n: int(rest.get(1), "n")?,
                    r: int(rest.get(2), "r")?,
                })
            }
            other => Err(parse_err(format!("unknown function `{other}`"))),
        }
    }
}

/// A number written as a fraction `p/q` or a decimal.
pub fn parse_number(ev: &RealEvaluator, s: &str) -> Result<Real> {
    if s.contains('/') {
        let q: Rational64 = s.parse().map_err(|_| parse_err(format!("bad fraction `{s}`")))?;
        Ok(ev.rational(&q))
    } else {
        Real::parse_decimal(s, ev.context())
    }
}

impl Expr {
    pub fn eval(&self, ev: &RealEvaluator) -> Result<Real> {
        let num = |s: &String| parse_number(ev, s);
        match self {
            Expr::Zeta(idx) => ev.zeta(idx),
            Expr::Li(idx, z) => ev.li(idx, &num(z)?),
            Expr::S { l, n, x, y } => s_weighted(ev, *l, *n, &num(x)?, &num(y)?),
            Expr::Sdq { l, n, p, q, x, y } => s_derivative(ev, *l, *n, *p, *q, &num(x)?, &num(y)?),
            Expr::Shat { l, n, x, y, z } => s_hat_polylog(ev, *l, *n, &num(x)?, &num(y)?, &num(z)?),
            Expr::T { l, x, y } => t_double(ev, *l, &num(x)?, &num(y)?),
            Expr::Z { l, n, r } => z_coeff(ev, *l, *n, *r),
        }
    }
}
