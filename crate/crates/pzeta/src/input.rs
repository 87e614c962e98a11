//! Readers for group files, builtin group names and polynomial arguments.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use pzeta_core::psl2::make_psl2;
use pzeta_core::{builtin, GroupError, AlmostSimpleSpec, DirichletPolynomial, Index, PermGroup, Permutation, Psl2Variant};

use crate::error::CliError;
use crate::json::PolyJson;

/// A group together with a display name and, when known, its socle.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub label: String,
    pub group: PermGroup,
    pub almost_simple: Option<AlmostSimpleSpec>,
}

impl NamedGroup {
    fn plain(label: impl Into<String>, group: PermGroup) -> Self {
        NamedGroup {
            label: label.into(),
            group,
            almost_simple: None,
        }
    }
}

/// Parses one permutation in disjoint-cycle notation, e.g. `(0 1 2)(3 4)`.
/// Points may be separated by spaces or commas; `()` is the identity.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Permutation, CliError> {
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| CliError::Parse(format!("expected '(' in {s:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| CliError::Parse(format!("unclosed cycle in {s:?}")))?;
        let points = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| CliError::Parse(format!("bad point {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if points.len() > 1 {
            cycles.push(points);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(Permutation::from_cycles(degree, &cycles)?)
}

/// Parses the text group format: a `degree <d>` line, then one generator
/// per line. Blank lines and lines starting with `#` are ignored.
pub fn parse_group_file(text: &str, max_order: usize) -> Result<PermGroup, CliError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| CliError::Parse("empty group file".into()))?;
    let degree = header
        .strip_prefix("degree")
        .map(str::trim)
        .and_then(|d| d.parse::<usize>().ok())
        .ok_or_else(|| CliError::Parse(format!("expected `degree <d>`, found {header:?}")))?;
    let gens = lines.map(|l| parse_cycles(l, degree)).collect::<Result<Vec<_>, _>>()?;
    Ok(PermGroup::close(degree, gens, max_order)?)
}

pub fn read_group_file(path: &Path, max_order: usize) -> Result<NamedGroup, CliError> {
    let text = std::fs::read_to_string(path)?;
    let group = parse_group_file(&text, max_order)?;
    let label = path.file_stem().map_or_else(|| "group".into(), |s| s.to_string_lossy().into_owned());
    Ok(NamedGroup::plain(label, group))
}

fn number(s: &str, name: &str) -> Result<usize, CliError> {
    s.parse::<usize>()
        .map_err(|_| CliError::Parse(format!("unknown builtin group {name:?}")))
}

/// Resolves builtin names: `S<n>`, `A<n>`, `C<n>`, `D<2m>` (dihedral of
/// order `2m`), `Q8`, `V4`, `Cp`, `PSL2`, `PGL2`, `PSL(2,q)`, `PGL(2,q)`
/// and direct products written `GxH`. `Cp` takes its order from `p`,
/// `PSL2`/`PGL2` their field size from `q`.
/// Groups larger than `max_order` are refused before they are built.
pub fn builtin_group(
    name: &str,
    p: Option<u64>,
    q: Option<u64>,
    max_q: u64,
    max_order: usize,
) -> Result<NamedGroup, CliError> {
    let name = name.trim();
    let g = builtin_unchecked(name, p, q, max_q, max_order)?;
    if g.group.order() > max_order {
        return Err(GroupError::OrderBoundExceeded { bound: max_order }.into());
    }
    Ok(g)
}

fn builtin_unchecked(
    name: &str,
    p: Option<u64>,
    q: Option<u64>,
    max_q: u64,
    max_order: usize,
) -> Result<NamedGroup, CliError> {
    if name.contains(['x', 'X', '×']) {
        let parts: Vec<&str> = name.split(['x', 'X', '×']).collect();
        let mut acc: Option<NamedGroup> = None;
        for part in parts {
            let g = builtin_group(part, p, q, max_q, max_order)?;
            if acc.as_ref().is_some_and(|a| a.group.order().saturating_mul(g.group.order()) > max_order) {
                return Err(GroupError::OrderBoundExceeded { bound: max_order }.into());
            }
            acc = Some(match acc {
                None => g,
                Some(a) => NamedGroup::plain(
                    format!("{}x{}", a.label, g.label),
                    builtin::direct_product(&a.group, &g.group),
                ),
            });
        }
        return acc.ok_or_else(|| CliError::Parse("empty product".into()));
    }
    let upper = name.to_ascii_uppercase();
    let psl2 = |variant: Psl2Variant, q: u64| -> Result<NamedGroup, CliError> {
        let spec = make_psl2(q, variant, max_q)?;
        Ok(NamedGroup {
            label: spec.label.clone(),
            group: spec.group.clone(),
            almost_simple: Some(spec),
        })
    };
    let need = |v: Option<u64>, flag: &str| v.ok_or_else(|| CliError::Parse(format!("{name} needs --{flag}")));
    match upper.as_str() {
        "Q8" => return Ok(NamedGroup::plain("Q8", builtin::quaternion())),
        "V4" => return Ok(NamedGroup::plain("V4", builtin::klein_four())),
        "CP" => {
            let p = need(p, "p")?;
            if p as usize > max_order {
                return Err(GroupError::OrderBoundExceeded { bound: max_order }.into());
            }
            return Ok(NamedGroup::plain(format!("C{p}"), builtin::cyclic(p as usize)));
        }
        "PSL2" => return psl2(Psl2Variant::Psl, need(q, "q")?),
        "PGL2" => return psl2(Psl2Variant::Pgl, need(q, "q")?),
        _ => {}
    }
    for (prefix, variant) in [("PSL(2,", Psl2Variant::Psl), ("PGL(2,", Psl2Variant::Pgl)] {
        if let Some(rest) = upper.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')) {
            return psl2(variant, number(rest.trim(), name)? as u64);
        }
    }
    if upper.len() < 2 || !upper.is_char_boundary(1) {
        return Err(CliError::Parse(format!("unknown builtin group {name:?}")));
    }
    let (head, digits) = upper.split_at(1);
    let n = number(digits, name)?;
    let factorial = |n: usize| (1..=n).try_fold(1usize, |a, k| a.checked_mul(k));
    let order = match head {
        "S" if n >= 1 => factorial(n),
        "A" if n >= 1 => factorial(n).map(|f| f.div_ceil(2)),
        "C" if n >= 1 => Some(n),
        "D" if n >= 2 && n % 2 == 0 => Some(n),
        _ => return Err(CliError::Parse(format!("unknown builtin group {name:?}"))),
    };
    if order.is_none_or(|o| o > max_order) {
        return Err(GroupError::OrderBoundExceeded { bound: max_order }.into());
    }
    let group = match head {
        "S" => builtin::symmetric(n),
        "A" => builtin::alternating(n),
        "C" => builtin::cyclic(n),
        _ => builtin::dihedral(n / 2),
    };
    if head == "A" && n == 5 {
        let spec = AlmostSimpleSpec::new(group.clone(), group.clone(), "A5")?;
        return Ok(NamedGroup {
            label: "A5".into(),
            group,
            almost_simple: Some(spec),
        });
    }
    Ok(NamedGroup::plain(upper, group))
}

/// Parses `1 - 1/2^s - 3/3^s + 3/6^s`. A bare integer is a constant term;
/// `1/n^s` may be written `/n^s` or `n^-s`.
pub fn parse_poly_text(s: &str) -> Result<DirichletPolynomial, CliError> {
    let bad = || CliError::Parse(format!("cannot read Dirichlet polynomial {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut terms: Vec<(Index, BigInt)> = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    let mut pieces = Vec::new();
    for k in 1..=bytes.len() {
        // A sign starts a new term unless it follows `^` (as in `n^-s`).
        if k == bytes.len() || ((bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'^') {
            pieces.push(&compact[start..k]);
            start = k;
        }
    }
    for piece in pieces {
        let (neg, body) = match piece.as_bytes()[0] {
            b'-' => (true, &piece[1..]),
            b'+' => (false, &piece[1..]),
            _ => (false, piece),
        };
        let (coef, index) = if let Some(base) = body.strip_suffix("^-s") {
            let (c, n) = match base.split_once('*') {
                Some((c, n)) => (c, n),
                None => ("1", base),
            };
            (c, Some(n))
        } else if let Some(base) = body.strip_suffix("^s") {
            let (c, n) = base.split_once('/').ok_or_else(bad)?;
            (if c.is_empty() { "1" } else { c }, Some(n))
        } else {
            (body, None)
        };
        let mut c = BigInt::from_str(coef).map_err(|_| bad())?;
        if neg {
            c = -c;
        }
        let n = match index {
            Some(n) => n.parse::<Index>().map_err(|_| bad())?,
            None => 1,
        };
        terms.push((n, c));
    }
    Ok(DirichletPolynomial::from_terms(terms)?)
}

/// A polynomial argument: inline JSON, a path to a JSON file, or text notation.
pub fn read_poly_arg(arg: &str) -> Result<DirichletPolynomial, CliError> {
    let trimmed = arg.trim();
    if trimmed.starts_with('{') {
        return serde_json::from_str::<PolyJson>(trimmed)?.to_poly();
    }
    let path = Path::new(trimmed);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return serde_json::from_str::<PolyJson>(&text)?.to_poly();
    }
    parse_poly_text(trimmed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation() {
        let p = parse_cycles("(0 1 2 3 4)(5 6)", 7).unwrap();
        assert_eq!(p.images(), &[1, 2, 3, 4, 0, 6, 5]);
        assert!(parse_cycles("()", 3).unwrap().is_identity());
        assert!(parse_cycles("(0 1", 3).is_err());
        assert!(parse_cycles("(0 7)", 3).is_err());
    }

    #[test]
    fn group_file() {
        let g = parse_group_file("# A5\ndegree 5\n(0 1 2 3 4)\n\n(0 1 2)\n", 1000).unwrap();
        assert_eq!(g.order(), 60);
        assert!(parse_group_file("(0 1)", 10).is_err());
        assert!(parse_group_file("degree 4\n(0 1)\n(0 1 2 3)", 10).is_err());
    }

    #[test]
    fn builtin_names() {
        let order = |n: &str| builtin_group(n, Some(7), Some(7), 61, 1000).unwrap().group.order();
        assert_eq!(order("S4"), 24);
        assert_eq!(order("A5"), 60);
        assert_eq!(order("C12"), 12);
        assert_eq!(order("Cp"), 7);
        assert_eq!(order("D8"), 8);
        assert_eq!(order("Q8"), 8);
        assert_eq!(order("C2xC2"), 4);
        assert_eq!(order("A5xC2"), 120);
        assert_eq!(order("PSL2"), 168);
        assert_eq!(order("PGL(2,7)"), 336);
        assert!(builtin_group("A5", None, None, 61, 1000).unwrap().almost_simple.is_some());
        assert!(builtin_group("Cp", None, None, 61, 1000).is_err());
        assert!(builtin_group("Z9", None, None, 61, 1000).is_err());
        assert!(matches!(
            builtin_group("S8", None, None, 61, 1000),
            Err(CliError::Group(GroupError::OrderBoundExceeded { .. }))
        ));
    }

    #[test]
    fn polynomial_text() {
        let p = parse_poly_text("1 - 1/2^s - 3/3^s + 3/6^s").unwrap();
        assert_eq!(p.to_string(), "1 - 1/2^s - 3/3^s + 3/6^s");
        assert_eq!(parse_poly_text("1 - 7^-s").unwrap(), DirichletPolynomial::one_minus(7, 1));
        assert_eq!(parse_poly_text("0").unwrap(), DirichletPolynomial::zero());
        assert_eq!(parse_poly_text("-2/4^s").unwrap(), DirichletPolynomial::monomial(4, -2));
        assert!(parse_poly_text("1 - x").is_err());
        assert!(parse_poly_text("1/0^s").is_err());
    }
}
