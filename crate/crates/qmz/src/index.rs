//! The index literal grammar used by the command-line front end:
//! `"[s1,...,sd;a1,...,ad]"` with an optional `"@N"` level suffix, plus the
//! bar-notation pretty-printer for level 2.

use crate::qseries::MdfIndex;

/// Parse result: exponents, colors, and the optional level suffix. Combine
/// with a default level through [`resolve_level`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedIndex {
    pub s: Vec<u32>,
    pub alpha: Vec<u32>,
    pub level: Option<u32>,
}

/// Parses `"[s1,..,sd;a1,..,ad]"` with optional `"@N"`. Whitespace is
/// ignored everywhere; errors carry the byte position of the offense.
pub fn parse_index(text: &str) -> Result<ParsedIndex, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |pos: usize, msg: &str| Err(format!("parse error at position {pos}: {msg}"));
    if !compact.starts_with('[') {
        return err(0, "expected '['");
    }
    let close = match compact.find(']') {
        Some(i) => i,
        None => return err(compact.len(), "missing ']'"),
    };
    let inner = &compact[1..close];
    let semi = match inner.find(';') {
        Some(i) => i,
        None => return err(close, "missing ';' between exponents and colors"),
    };
    let parse_list = |chunk: &str, base: usize| -> Result<Vec<u32>, String> {
        if chunk.is_empty() {
            return Err(format!("parse error at position {base}: empty list"));
        }
        chunk
            .split(',')
            .map(|p| {
                p.parse::<u32>()
                    .map_err(|_| format!("parse error at position {base}: bad integer {p:?}"))
            })
            .collect()
    };
    let s = parse_list(&inner[..semi], 1)?;
    let alpha = parse_list(&inner[semi + 1..], semi + 2)?;
    if s.len() != alpha.len() {
        return err(
            semi + 2,
            &format!("arity mismatch: {} exponents vs {} colors", s.len(), alpha.len()),
        );
    }
    let rest = &compact[close + 1..];
    let level = if rest.is_empty() {
        None
    } else if let Some(ltext) = rest.strip_prefix('@') {
        match ltext.parse::<u32>() {
            Ok(l) if l >= 1 => Some(l),
            _ => return err(close + 2, &format!("bad level {ltext:?}")),
        }
    } else {
        return err(close + 1, "unexpected trailing text (expected '@N')");
    };
    Ok(ParsedIndex { s, alpha, level })
}

/// Combines the literal's optional level suffix with a `--level` flag. A
/// conflict between the two is a usage error; absence of both likewise.
pub fn resolve_level(parsed: &ParsedIndex, flag: Option<u32>) -> Result<u32, String> {
    match (parsed.level, flag) {
        (Some(a), Some(b)) if a != b => Err(format!(
            "conflicting levels: index says @{a} but --level {b} given"
        )),
        (Some(a), _) => Ok(a),
        (None, Some(b)) => Ok(b),
        (None, None) => Err("no level: use an '@N' suffix or --level".to_string()),
    }
}

/// Full parse into a validated index.
pub fn parse_full_index(text: &str, flag_level: Option<u32>) -> Result<MdfIndex, String> {
    let p = parse_index(text)?;
    let level = resolve_level(&p, flag_level)?;
    MdfIndex::new(level, p.s, p.alpha)
}

/// Canonical text form, `"[s;a]@N"`.
pub fn render_index(idx: &MdfIndex) -> String {
    format!("{idx}")
}

/// Level-2 bar notation: color 1 is shown as a bar suffix on the exponent
/// (`2,1bar` for `[2,1;0,1]`). Returns `None` above level 2.
pub fn bar_notation(idx: &MdfIndex) -> Option<String> {
    if idx.level != 2 {
        return None;
    }
    let parts: Vec<String> = idx
        .s
        .iter()
        .zip(&idx.alpha)
        .map(|(s, a)| {
            if *a == 1 {
                format!("{s}bar")
            } else {
                s.to_string()
            }
        })
        .collect();
    Some(format!("[{}]", parts.join(",")))
}
