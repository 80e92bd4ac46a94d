//! Text forms of scalars, series, coefficient grids and partitions.
//!
//! Scalars are ` + `-joined monomials `RAT*pi^(FRAC)*eps^INT`. Series are
//! ` + `-joined terms `MONOMIAL*x^(FRAC)` followed by `@[lo,hi]`; a
//! coefficient with several monomials is printed as several terms at the
//! same exponent, and parsing sums repeated exponents. Printing is
//! canonical, so `print(parse(print(v))) == print(v)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::scalars::{fmt_monomial, Rat, Scalar};
use crate::series::{Ring, Series, Window};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Splits on `sep` outside parentheses and brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// `p/2`, an integer, or either in parentheses.
pub fn parse_half(s: &str) -> Result<HalfInt> {
    let t = s.trim();
    let t = t
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(t)
        .trim();
    let q: Rat = t.parse().map_err(|_| perr(format!("bad exponent `{s}`")))?;
    let d = &q * &Rat::int(2);
    d.to_i64()
        .filter(|_| d.is_integer())
        .and_then(|v| i32::try_from(v).ok())
        .map(HalfInt::from_doubled)
        .ok_or_else(|| perr(format!("exponent `{s}` is not in (1/2)Z")))
}

/// One parsed monomial: coefficient, π power, ε power, and variable powers.
struct Mono {
    coeff: Rat,
    pi: HalfInt,
    eps: u32,
    vars: BTreeMap<char, HalfInt>,
}

fn parse_mono(s: &str, vars: &[char]) -> Result<Mono> {
    let mut m = Mono {
        coeff: Rat::one(),
        pi: HalfInt::ZERO,
        eps: 0,
        vars: BTreeMap::new(),
    };
    let s = s.trim();
    if s.is_empty() {
        return Err(perr("empty term"));
    }
    for factor in split_top(s, '*') {
        let f = factor.trim();
        if let Ok(q) = f.parse::<Rat>() {
            m.coeff = &m.coeff * &q;
            continue;
        }
        let (neg, f) = match f.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, f),
        };
        if neg {
            m.coeff = -&m.coeff;
        }
        let (name, exp) = match f.split_once('^') {
            Some((n, e)) => (n.trim(), Some(e)),
            None => (f, None),
        };
        let exp = exp.map(parse_half).transpose()?.unwrap_or(HalfInt::ONE);
        match name {
            "pi" => m.pi = m.pi + exp,
            "eps" => {
                let k = exp
                    .as_integer()
                    .filter(|k| *k >= 0)
                    .ok_or_else(|| perr(format!("eps power `{f}` must be a non-negative integer")))?;
                m.eps += k as u32;
            }
            v if v.len() == 1 && vars.contains(&v.chars().next().unwrap()) => {
                let c = v.chars().next().unwrap();
                let e = m.vars.entry(c).or_insert(HalfInt::ZERO);
                *e = *e + exp;
            }
            _ => return Err(perr(format!("unrecognised factor `{factor}`"))),
        }
    }
    Ok(m)
}

fn mono_scalar(m: &Mono, order: u32) -> Result<Scalar> {
    if m.eps >= order {
        return Err(perr(format!(
            "eps^{} is not below the eps order {order}",
            m.eps
        )));
    }
    Ok(Scalar::monomial(m.coeff.clone(), m.pi, m.eps, order))
}

/// Parses a scalar literal into `B[ε]/(ε^order)`.
pub fn parse_scalar(s: &str, order: u32) -> Result<Scalar> {
    let mut acc = Scalar::zero(order);
    for part in split_top(s, '+') {
        let m = parse_mono(part, &[])?;
        acc = &acc + &mono_scalar(&m, order)?;
    }
    Ok(acc)
}

/// Parses `Σ terms @[lo,hi]`.
pub fn parse_series(s: &str, ring: Ring) -> Result<Series> {
    let (body, win) = s
        .rsplit_once('@')
        .ok_or_else(|| perr("series literal needs a window `@[lo,hi]`"))?;
    let window = parse_window(win)?;
    let mut terms = Vec::new();
    let body = body.trim();
    for part in split_top(body, '+') {
        let m = parse_mono(part, &['x'])?;
        if m.vars.is_empty() && m.coeff.is_zero() && part.trim() == "0" {
            continue;
        }
        let e = m.vars.get(&'x').copied().unwrap_or(HalfInt::ZERO);
        terms.push((e, mono_scalar(&m, ring.eps_order())?));
    }
    Series::new(ring, window, terms).map_err(|e| match e {
        Error::WindowError(m) => perr(m),
        other => other,
    })
}

/// `[lo,hi]` with half-integer ends.
pub fn parse_window(s: &str) -> Result<Window> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(t);
    let (lo, hi) = inner
        .split_once(',')
        .ok_or_else(|| perr(format!("bad window `{s}`")))?;
    Window::new(parse_half(lo)?, parse_half(hi)?).map_err(|e| perr(e.to_string()))
}

/// A coefficient grid `Σ c_ij x^i y^j` with its degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub coeffs: BTreeMap<(u32, u32), Scalar>,
    pub degree: u32,
}

/// Parses `x + y + 1*x^1*y^1 @deg 12`.
pub fn parse_grid(s: &str, order: u32) -> Result<Grid> {
    let (body, deg) = s
        .rsplit_once("@deg")
        .ok_or_else(|| perr("grid literal needs `@deg D`"))?;
    let degree: u32 = deg
        .trim()
        .parse()
        .map_err(|_| perr(format!("bad degree bound `{}`", deg.trim())))?;
    let mut coeffs: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
    for part in split_top(body.trim(), '+') {
        let m = parse_mono(part, &['x', 'y'])?;
        let pow = |c: char| -> Result<u32> {
            let e = m.vars.get(&c).copied().unwrap_or(HalfInt::ZERO);
            e.as_integer()
                .filter(|k| *k >= 0)
                .map(|k| k as u32)
                .ok_or_else(|| perr(format!("grid exponents must be non-negative integers in `{part}`")))
        };
        let key = (pow('x')?, pow('y')?);
        if key.0 + key.1 > degree {
            return Err(perr(format!("term `{}` exceeds the degree bound", part.trim())));
        }
        let c = mono_scalar(&m, order)?;
        let entry = coeffs.entry(key).or_insert_with(|| Scalar::zero(order));
        *entry = &*entry + &c;
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(Grid { coeffs, degree })
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&(u32, u32)> = self.coeffs.keys().collect();
        keys.sort_by_key(|&&(i, j)| (i + j, j));
        let mut first = true;
        for k in keys {
            for (q, pi, eps) in self.coeffs[k].monomials() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                fmt_monomial(f, q, pi, eps)?;
                if k.0 > 0 {
                    write!(f, "*x^{}", k.0)?;
                }
                if k.1 > 0 {
                    write!(f, "*y^{}", k.1)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " @deg {}", self.degree)
    }
}

/// Parses `3,2,1` (an empty string is the empty partition).
pub fn parse_partition(s: &str) -> Result<Vec<u32>> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| perr(format!("bad partition part `{}`", p.trim())))
        })
        .collect()
}

pub fn format_partition(parts: &[u32]) -> String {
    parts
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            for (q, pi, eps) in c.monomials() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                fmt_monomial(f, q, pi, eps)?;
                write!(f, "*x^({e})")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " @{}", self.window())
    }
}
