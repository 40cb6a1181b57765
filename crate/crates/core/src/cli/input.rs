//! Parsing of field, polynomial and element strings, and printing of
//! polynomials in the format they were given in.

use crate::field::{Elem, FieldCtx, DEFAULT_SIZE_CAP};
use crate::poly::ReducedPoly;

/// How a polynomial was written on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyFormat {
    /// `a0,a1,...`, low degree first.
    List,
    /// `1+1x+1x^2`.
    Monomial,
}

fn bad(msg: impl Into<String>) -> String {
    msg.into()
}

/// `p` or `p^n`.
pub fn parse_field_spec(s: &str) -> Result<(u64, u32), String> {
    let s = s.trim();
    let (p, n) = match s.split_once('^') {
        Some((p, n)) => (p.trim(), n.trim()),
        None => (s, "1"),
    };
    let p = p
        .parse::<u64>()
        .map_err(|_| bad(format!("invalid field characteristic '{p}'")))?;
    let n = n
        .parse::<u32>()
        .map_err(|_| bad(format!("invalid field degree '{n}'")))?;
    if n == 0 {
        return Err(bad("field degree must be at least 1"));
    }
    Ok((p, n))
}

/// `c0,c1,...,cn`.
pub fn parse_modulus(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| bad(format!("invalid modulus coefficient '{t}'")))
        })
        .collect()
}

/// Size cap from the flag, else the environment value, else the default.
pub fn resolve_size_cap(flag: Option<u64>, env: Option<&str>) -> Result<u64, String> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match env {
        Some(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|_| bad(format!("invalid POWMAT_SIZE_CAP value '{v}'"))),
        None => Ok(DEFAULT_SIZE_CAP),
    }
}

pub fn parse_elem(ctx: &FieldCtx, s: &str) -> Result<Elem, String> {
    let v = s
        .trim()
        .parse::<u64>()
        .map_err(|_| bad(format!("invalid element '{s}'")))?;
    ctx.elem(v).map_err(|e| e.to_string())
}

/// Reads either syntax. Exponents at or above q fold by `x^q = x`, so the
/// result is always reduced.
pub fn parse_poly(ctx: &FieldCtx, s: &str) -> Result<(ReducedPoly, PolyFormat), String> {
    let s = s.trim();
    if s.is_empty() {
        return Err(bad("empty polynomial"));
    }
    if s.contains('x') || s.contains('+') {
        Ok((parse_monomials(ctx, s)?, PolyFormat::Monomial))
    } else {
        let coeffs = s
            .split(',')
            .map(|t| parse_elem(ctx, t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((ReducedPoly::reduce(ctx, &coeffs), PolyFormat::List))
    }
}

fn fold_exponent(k: u64, q: u64) -> usize {
    if k < q {
        k as usize
    } else {
        (1 + (k - 1) % (q - 1)) as usize
    }
}

fn parse_monomials(ctx: &FieldCtx, s: &str) -> Result<ReducedPoly, String> {
    let q = ctx.q_usize();
    let mut coeffs = vec![Elem::ZERO; q];
    for term in s.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(bad(format!("empty term in '{s}'")));
        }
        let (c, k) = match term.split_once('x') {
            None => (parse_elem(ctx, term)?, 0),
            Some((c, rest)) => {
                let c = if c.trim().is_empty() {
                    Elem::ONE
                } else {
                    parse_elem(ctx, c)?
                };
                let rest = rest.trim();
                let k = if rest.is_empty() {
                    1
                } else {
                    let e = rest
                        .strip_prefix('^')
                        .ok_or_else(|| bad(format!("invalid term '{term}'")))?;
                    e.trim()
                        .parse::<u64>()
                        .map_err(|_| bad(format!("invalid exponent in '{term}'")))?
                };
                (c, fold_exponent(k, q as u64))
            }
        };
        coeffs[k] = ctx.add(coeffs[k], c);
    }
    Ok(ReducedPoly::reduce(ctx, &coeffs))
}

/// Prints `f` so that [`parse_poly`] gives it back. Coefficients are always
/// canonical integers.
pub fn format_poly(f: &ReducedPoly, format: PolyFormat) -> String {
    let c = f.coeffs();
    match format {
        PolyFormat::List => {
            let len = c.iter().rposition(|e| !e.is_zero()).map_or(1, |i| i + 1);
            c[..len]
                .iter()
                .map(|e| e.value().to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
        PolyFormat::Monomial => {
            let terms: Vec<String> = c
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(k, e)| match k {
                    0 => e.to_string(),
                    1 => format!("{e}x"),
                    k => format!("{e}x^{k}"),
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join("+")
            }
        }
    }
}

pub fn field_label(ctx: &FieldCtx) -> String {
    match ctx.n() {
        1 => ctx.p().to_string(),
        n => format!("{}^{}", ctx.p(), n),
    }
}
