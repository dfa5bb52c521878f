//! Parsing of ring and module descriptions: a small expression language for
//! builtin constructions ("Z4", "F9", "M2(F2)", "UT(F2,2)", "F2 x M2(F3)",
//! "F2[x]/(x^2)"; modules: "Z4/2", "Z4 (+) Z4/2") and JSON spec files giving
//! explicit structure constants. All parsers are total: any input yields
//! either a validated structure or a spec error, never a panic.

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::module::{
    build_module, direct_sum, quotient_module, regular_module, FiniteModule, MElt, Submodule,
};
use crate::ring::catalog::{
    cyclic_ring, f2_dual_numbers, field, matrix_ring, product_ring, upper_triangular_ring,
};
use crate::ring::{build_ring, Elt, FiniteRing};
use serde::Deserialize;
use std::sync::Arc;

fn spec_err(msg: impl Into<String>) -> Error {
    Error::Spec(msg.into())
}

/// Splits `s` at top-level occurrences of the separator word (outside any
/// parentheses or brackets).
fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let bytes = s.as_bytes();
    let sep_bytes = sep.as_bytes();
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut i = 0usize;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && bytes[i..].starts_with(sep_bytes) {
            parts.push(&s[start..i]);
            i += sep_bytes.len();
            start = i;
            continue;
        }
        i += 1;
    }
    parts.push(&s[start..]);
    parts
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| spec_err(format!("expected a number for {what}, got {s:?}")))
}

/// Parses a builtin ring expression. Grammar (whitespace-insensitive at the
/// operator level):
///   expr    := atom (" x " atom)*
///   atom    := "Z" n | "F" q | "M" n "(" expr ")" | "UT(" expr "," n ")"
///            | "F2[x]/(x^2)" | "(" expr ")"
pub fn parse_ring_expr(input: &str, guards: &Guards) -> Result<FiniteRing> {
    let s = input.trim();
    if s.is_empty() {
        return Err(spec_err("empty ring expression"));
    }
    if s.len() > 256 {
        return Err(spec_err("ring expression too long"));
    }
    let factors = split_top_level(s, " x ");
    if factors.len() > 1 {
        let mut acc: Option<FiniteRing> = None;
        for f in factors {
            let r = parse_ring_expr(f, guards)?;
            acc = Some(match acc {
                None => r,
                Some(a) => {
                    check_ring_size(a.order().saturating_mul(r.order()), guards)?;
                    product_ring(&a, &r)?
                }
            });
        }
        return Ok(acc.unwrap());
    }
    parse_ring_atom(s, guards)
}

fn check_ring_size(order: u64, guards: &Guards) -> Result<()> {
    if order as usize > guards.max_ring {
        return Err(Error::guard("ring from expression", order as usize, guards.max_ring));
    }
    Ok(())
}

fn parse_ring_atom(s: &str, guards: &Guards) -> Result<FiniteRing> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(') {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| spec_err(format!("unbalanced parentheses in {s:?}")))?;
        return parse_ring_expr(inner, guards);
    }
    if s == "F2[x]/(x^2)" {
        return f2_dual_numbers();
    }
    if let Some(rest) = s.strip_prefix("UT(") {
        let rest = rest
            .strip_suffix(')')
            .ok_or_else(|| spec_err(format!("unterminated UT(...) in {s:?}")))?;
        let parts = split_top_level(rest, ",");
        if parts.len() != 2 {
            return Err(spec_err(format!("UT takes (field, n), got {s:?}")));
        }
        let f = parse_ring_expr(parts[0], guards)?;
        let n = parse_u64(parts[1], "UT size")? as usize;
        if n == 0 || n > 4 {
            return Err(spec_err("UT size must be between 1 and 4"));
        }
        let order = f.order().checked_pow((n * (n + 1) / 2) as u32).unwrap_or(u64::MAX);
        check_ring_size(order, guards)?;
        return upper_triangular_ring(&f, n);
    }
    if let Some(rest) = s.strip_prefix('M') {
        if let Some(open) = rest.find('(') {
            let n = parse_u64(&rest[..open], "matrix size")? as usize;
            let inner = rest[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| spec_err(format!("unterminated M{n}(...) in {s:?}")))?;
            if n == 0 || n > 4 {
                return Err(spec_err("matrix size must be between 1 and 4"));
            }
            let f = parse_ring_expr(inner, guards)?;
            let order = f.order().checked_pow((n * n) as u32).unwrap_or(u64::MAX);
            check_ring_size(order, guards)?;
            return matrix_ring(&f, n);
        }
    }
    if let Some(num) = s.strip_prefix('Z') {
        let n = parse_u64(num, "cyclic ring modulus")?;
        if n < 2 {
            return Err(spec_err("cyclic ring modulus must be at least 2"));
        }
        check_ring_size(n, guards)?;
        return cyclic_ring(n);
    }
    if let Some(num) = s.strip_prefix('F') {
        let q = parse_u64(num, "field size")?;
        check_ring_size(q, guards)?;
        return field(q);
    }
    Err(spec_err(format!("unrecognized ring expression {s:?}")))
}

/// Parses a builtin module expression over `ring`. Grammar:
///   expr := term (" (+) " term)*
///   term := R | R "/" k | R "^" g
/// where R is the textual ring expression the module lives over (the regular
/// module), R/k its quotient by the cyclic submodule generated by the ring
/// element with index k, and R^g the free module of rank g.
pub fn parse_module_expr(
    ring: &Arc<FiniteRing>,
    ring_expr: &str,
    input: &str,
    guards: &Guards,
) -> Result<FiniteModule> {
    let s = input.trim();
    if s.is_empty() {
        return Err(spec_err("empty module expression"));
    }
    let mut acc: Option<FiniteModule> = None;
    for term in split_top_level(s, " (+) ") {
        let m = parse_module_term(ring, ring_expr.trim(), term, guards)?;
        acc = Some(match acc {
            None => m,
            Some(a) => {
                let order = a.order().saturating_mul(m.order());
                if order as usize > guards.max_module {
                    return Err(Error::guard(
                        "module from expression",
                        order as usize,
                        guards.max_module,
                    ));
                }
                direct_sum(&a, &m)?
            }
        });
    }
    Ok(acc.unwrap())
}

fn parse_module_term(
    ring: &Arc<FiniteRing>,
    ring_expr: &str,
    term: &str,
    guards: &Guards,
) -> Result<FiniteModule> {
    let term = term.trim();
    if term == ring_expr {
        return Ok(regular_module(ring.clone()));
    }
    if let Some(rest) = term.strip_prefix(ring_expr) {
        if let Some(k) = rest.strip_prefix('/') {
            let idx = parse_u64(k, "quotient generator index")?;
            if idx >= ring.order() {
                return Err(spec_err(format!(
                    "element index {idx} out of range for a ring of order {}",
                    ring.order()
                )));
            }
            let reg = regular_module(ring.clone());
            let sub = Submodule::generated(&reg, &[ring.element(idx)]);
            let (q, _) = quotient_module(&reg, &sub, format!("{ring_expr}/{idx}"))?;
            return Ok(q);
        }
        if let Some(g) = rest.strip_prefix('^') {
            let g = parse_u64(g, "free rank")? as usize;
            if g == 0 || g > 4 {
                return Err(spec_err("free rank must be between 1 and 4"));
            }
            let order = ring.order().checked_pow(g as u32).unwrap_or(u64::MAX);
            if order as usize > guards.max_module {
                return Err(Error::guard("free module", order as usize, guards.max_module));
            }
            let mut m = regular_module(ring.clone());
            for _ in 1..g {
                m = direct_sum(&m, &regular_module(ring.clone()))?;
            }
            return Ok(m);
        }
    }
    Err(spec_err(format!(
        "unrecognized module term {term:?} over ring {ring_expr:?}"
    )))
}

/// Serializes a ring as an explicit, self-contained spec value that
/// `parse_ring_spec` accepts back; used to embed rings in witness bundles so
/// an external checker can re-verify them without this library.
pub fn ring_spec_value(r: &FiniteRing) -> serde_json::Value {
    let k = r.rank();
    let mult: Vec<Vec<Elt>> = (0..k)
        .map(|i| (0..k).map(|j| r.basis_product(i, j).clone()).collect())
        .collect();
    serde_json::json!({
        "schema": "ring/1",
        "name": r.name,
        "additive_orders": r.orders,
        "mult_constants": mult,
        "one": r.one,
    })
}

/// JSON ring spec: either a builtin expression or explicit structure
/// constants (validated by `build_ring`).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub schema: Option<String>,
    pub name: Option<String>,
    pub builtin: Option<String>,
    pub additive_orders: Option<Vec<u64>>,
    /// mult_constants[i][j] = coefficient vector of e_i * e_j.
    pub mult_constants: Option<Vec<Vec<Elt>>>,
    pub one: Option<Elt>,
}

/// Parses and validates a JSON ring spec.
pub fn parse_ring_spec(json: &str, guards: &Guards) -> Result<FiniteRing> {
    let spec: RingSpec =
        serde_json::from_str(json).map_err(|e| spec_err(format!("invalid ring JSON: {e}")))?;
    ring_from_spec(&spec, guards)
}

pub fn ring_from_spec(spec: &RingSpec, guards: &Guards) -> Result<FiniteRing> {
    if let Some(schema) = &spec.schema {
        if schema != "ring/1" {
            return Err(spec_err(format!("unsupported ring schema {schema:?}")));
        }
    }
    if let Some(b) = &spec.builtin {
        return parse_ring_expr(b, guards);
    }
    let orders = spec
        .additive_orders
        .as_ref()
        .ok_or_else(|| spec_err("ring spec needs either builtin or additive_orders"))?;
    let structure = spec
        .mult_constants
        .as_ref()
        .ok_or_else(|| spec_err("explicit ring spec needs mult_constants"))?;
    let one = spec
        .one
        .as_ref()
        .ok_or_else(|| spec_err("explicit ring spec needs one"))?;
    if orders.is_empty() || orders.len() > 16 {
        return Err(spec_err("additive_orders must list between 1 and 16 factors"));
    }
    if orders.iter().any(|&d| d < 2 || d > 4096) {
        return Err(spec_err("additive orders must lie between 2 and 4096"));
    }
    let mut order = 1u64;
    for &d in orders {
        order = order.saturating_mul(d);
    }
    check_ring_size(order, guards)?;
    let k = orders.len();
    if structure.len() != k || structure.iter().any(|row| row.len() != k) {
        return Err(spec_err("mult_constants must be a k x k table of coefficient vectors"));
    }
    for row in structure {
        for c in row {
            if c.len() != k {
                return Err(spec_err("each structure constant must have k coefficients"));
            }
        }
    }
    if one.len() != k {
        return Err(spec_err("one must have k coefficients"));
    }
    let name = spec.name.clone().unwrap_or_else(|| "custom".to_string());
    let reduce = |v: &Elt| -> Elt { v.iter().zip(orders).map(|(&c, &d)| c % d).collect() };
    let structure: Vec<Vec<Elt>> = structure
        .iter()
        .map(|row| row.iter().map(&reduce).collect())
        .collect();
    build_ring(name, orders.clone(), structure, reduce(one))
}

/// JSON module spec: a ring (inline spec) plus either a builtin module
/// expression or explicit additive orders and action constants.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub schema: Option<String>,
    pub name: Option<String>,
    pub ring: RingSpec,
    pub builtin: Option<String>,
    pub additive_orders: Option<Vec<u64>>,
    /// action[g][b] = coefficient vector of x_g * e_b.
    pub action: Option<Vec<Vec<MElt>>>,
}

/// Parses and validates a JSON module spec (including its inline ring).
pub fn parse_module_spec(json: &str, guards: &Guards) -> Result<FiniteModule> {
    let spec: ModuleSpec =
        serde_json::from_str(json).map_err(|e| spec_err(format!("invalid module JSON: {e}")))?;
    if let Some(schema) = &spec.schema {
        if schema != "module/1" {
            return Err(spec_err(format!("unsupported module schema {schema:?}")));
        }
    }
    let ring = Arc::new(ring_from_spec(&spec.ring, guards)?);
    if let Some(b) = &spec.builtin {
        let ring_expr = spec
            .ring
            .builtin
            .clone()
            .or_else(|| spec.ring.name.clone())
            .ok_or_else(|| spec_err("builtin module expression needs a named ring"))?;
        return parse_module_expr(&ring, &ring_expr, b, guards);
    }
    let orders = spec
        .additive_orders
        .as_ref()
        .ok_or_else(|| spec_err("module spec needs either builtin or additive_orders"))?;
    let action = spec
        .action
        .as_ref()
        .ok_or_else(|| spec_err("explicit module spec needs action"))?;
    if orders.is_empty() || orders.len() > 16 {
        return Err(spec_err("additive_orders must list between 1 and 16 factors"));
    }
    if orders.iter().any(|&d| d < 1 || d > 4096) {
        return Err(spec_err("additive orders must lie between 1 and 4096"));
    }
    let mut order = 1u64;
    for &d in orders {
        order = order.saturating_mul(d);
    }
    if order as usize > guards.max_module {
        return Err(Error::guard("module from spec", order as usize, guards.max_module));
    }
    let gk = orders.len();
    let rk = ring.rank();
    if action.len() != gk || action.iter().any(|row| row.len() != rk) {
        return Err(spec_err("action must be a (generators x ring-basis) table"));
    }
    for row in action {
        for c in row {
            if c.len() != gk {
                return Err(spec_err("each action constant must have one coefficient per generator"));
            }
        }
    }
    let reduce = |v: &MElt| -> MElt { v.iter().zip(orders).map(|(&c, &d)| c % d).collect() };
    let action: Vec<Vec<MElt>> = action
        .iter()
        .map(|row| row.iter().map(&reduce).collect())
        .collect();
    let name = spec.name.clone().unwrap_or_else(|| "custom".to_string());
    build_module(ring, name, orders.clone(), action)
}
