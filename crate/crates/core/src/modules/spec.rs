//! The module-spec mini-language used on the command line:
//!
//! ```text
//! A:a=<scalar>,b=<scalar>
//! Aexc:a=<scalar>
//! Bexc:a=<scalar>
//! verma:lambda=<scalar>,h=<scalar>,depth=<n>
//! antiverma:lambda=<scalar>,h=<scalar>,depth=<n>
//! dual(<spec>)
//! sum(<spec>;<spec>;...)
//! ```
//!
//! `h` defaults to 0 and `depth` to the caller's default.

use std::collections::BTreeMap;
use std::fmt;

use super::{build_intermediate, build_verma, direct_sum, dual, IntermediateKind, ModuleRealization, VermaSign, WeightWindow};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Intermediate(IntermediateKind),
    Verma { lambda: Scalar, h: Scalar, depth: Option<u32>, sign: VermaSign },
    Dual(Box<ModuleSpec>),
    Sum(Vec<ModuleSpec>),
}

fn malformed(text: &str, reason: impl Into<String>) -> Error {
    Error::MalformedSpec { text: text.to_string(), reason: reason.into() }
}

/// Splits on `sep` at parenthesis depth zero.
fn split_top_level(text: &str, sep: char) -> Option<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (idx, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&text[start..idx]);
                start = idx + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&text[start..]);
    Some(parts)
}

impl ModuleSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
            return Ok(ModuleSpec::Dual(Box::new(ModuleSpec::parse(inner)?)));
        }
        if let Some(inner) = t.strip_prefix("sum(").and_then(|r| r.strip_suffix(')')) {
            let parts = split_top_level(inner, ';').ok_or_else(|| malformed(text, "unbalanced parentheses"))?;
            let parsed = parts.into_iter().map(ModuleSpec::parse).collect::<Result<Vec<_>>>()?;
            if parsed.is_empty() {
                return Err(malformed(text, "empty sum"));
            }
            return Ok(ModuleSpec::Sum(parsed));
        }
        let (name, args) = t.split_once(':').ok_or_else(|| malformed(text, "expected <kind>:<key>=<value>,..."))?;
        let mut params = BTreeMap::new();
        for pair in args.split(',') {
            let (k, v) = pair.split_once('=').ok_or_else(|| malformed(text, format!("bad parameter {pair:?}")))?;
            if params.insert(k.trim(), v.trim()).is_some() {
                return Err(malformed(text, format!("repeated parameter {k:?}")));
            }
        }
        let allowed: &[&str] = match name {
            "A" => &["a", "b"],
            "Aexc" | "Bexc" => &["a"],
            "verma" | "antiverma" => &["lambda", "h", "depth"],
            other => return Err(malformed(text, format!("unknown module kind {other:?}"))),
        };
        if let Some(k) = params.keys().find(|k| !allowed.contains(k)) {
            return Err(malformed(text, format!("unexpected parameter {k:?} for {name}")));
        }
        let scalar = |key: &str| -> Result<Scalar> {
            let v = params.get(key).ok_or_else(|| malformed(text, format!("missing parameter {key:?}")))?;
            v.parse().map_err(|_| malformed(text, format!("parameter {key} is not a scalar in Q(i): {v:?}")))
        };
        Ok(match name {
            "A" => ModuleSpec::Intermediate(IntermediateKind::Aab { a: scalar("a")?, b: scalar("b")? }),
            "Aexc" => ModuleSpec::Intermediate(IntermediateKind::Aa { a: scalar("a")? }),
            "Bexc" => ModuleSpec::Intermediate(IntermediateKind::Ba { a: scalar("a")? }),
            _ => {
                let h = if params.contains_key("h") { scalar("h")? } else { Scalar::zero() };
                let depth = match params.get("depth") {
                    Some(d) => Some(
                        d.parse::<u32>()
                            .ok()
                            .filter(|&d| d >= 1)
                            .ok_or_else(|| malformed(text, format!("depth must be a positive integer, got {d:?}")))?,
                    ),
                    None => None,
                };
                let sign = if name == "verma" { VermaSign::Highest } else { VermaSign::Lowest };
                ModuleSpec::Verma { lambda: scalar("lambda")?, h, depth, sign }
            }
        })
    }

    /// The lattice offset `a` (with `0 ≤ Re(a) < 1`) on which the module lives.
    pub fn offset(&self) -> Scalar {
        match self {
            ModuleSpec::Intermediate(IntermediateKind::Aab { a, .. }) => a.split_lattice().1,
            ModuleSpec::Intermediate(_) => Scalar::zero(),
            ModuleSpec::Verma { lambda, .. } => lambda.split_lattice().1,
            ModuleSpec::Dual(inner) => inner.offset(),
            ModuleSpec::Sum(parts) => parts[0].offset(),
        }
    }

    /// The window used when none is requested: a lone (dual) Verma module
    /// covers exactly its levels (plus a margin of `gen_bound`), everything
    /// else uses `fallback`.
    pub fn natural_window(&self, fallback: &WeightWindow, default_depth: u32) -> Result<WeightWindow> {
        match self {
            ModuleSpec::Verma { lambda, depth, sign, .. } => {
                let d = depth.unwrap_or(default_depth) as i64;
                let (top, offset) = lambda.split_lattice();
                let (lo, hi) = match sign {
                    VermaSign::Highest => (top - d, top),
                    VermaSign::Lowest => (top, top + d),
                };
                WeightWindow::new(offset, lo, hi, fallback.gen_bound)?.with_gen_bound(fallback.gen_bound)
            }
            ModuleSpec::Dual(inner) => inner.natural_window(fallback, default_depth),
            _ => fallback.with_offset(self.offset()),
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Intermediate(IntermediateKind::Aab { a, b }) => write!(f, "A:a={a},b={b}"),
            ModuleSpec::Intermediate(IntermediateKind::Aa { a }) => write!(f, "Aexc:a={a}"),
            ModuleSpec::Intermediate(IntermediateKind::Ba { a }) => write!(f, "Bexc:a={a}"),
            ModuleSpec::Verma { lambda, h, depth, sign } => {
                let name = if *sign == VermaSign::Highest { "verma" } else { "antiverma" };
                write!(f, "{name}:lambda={lambda},h={h}")?;
                if let Some(d) = depth {
                    write!(f, ",depth={d}")?;
                }
                Ok(())
            }
            ModuleSpec::Dual(inner) => write!(f, "dual({inner})"),
            ModuleSpec::Sum(parts) => {
                write!(f, "sum(")?;
                for (n, p) in parts.iter().enumerate() {
                    if n > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Builds the realization described by `spec` on `window` (whose offset must
/// match the spec's lattice).
pub fn build_from_spec(spec: &ModuleSpec, window: &WeightWindow, default_depth: u32) -> Result<ModuleRealization> {
    match spec {
        ModuleSpec::Intermediate(kind) => build_intermediate(kind, window),
        ModuleSpec::Verma { lambda, h, depth, sign } => {
            build_verma(lambda, h, depth.unwrap_or(default_depth), *sign, Some(window))
        }
        ModuleSpec::Dual(inner) => Ok(dual(&build_from_spec(inner, window, default_depth)?)),
        ModuleSpec::Sum(parts) => {
            let built = parts
                .iter()
                .map(|p| build_from_spec(p, window, default_depth))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&ModuleRealization> = built.iter().collect();
            direct_sum(&refs)
        }
    }
}
