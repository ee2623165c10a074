//! Line-oriented text formats for instances and matchings.
//!
//! A `#` that begins a token starts a comment, so reduced-instance names
//! such as `m1#0` survive a round trip.

use std::fmt::Write as _;

use super::{Edge, Instance, Matching, Vertex};
use crate::error::{Error, Result};

/// Which ids the parser accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdPolicy {
    /// User-facing ids: no `:`, `#` or `(`.
    Base,
    /// Also accepts the `m#i` / `d(m)#i` names produced by the reductions.
    Reduced,
}

pub(crate) fn check_id(id: &str, policy: IdPolicy) -> Result<()> {
    let bad = id.is_empty()
        || id.chars().any(char::is_whitespace)
        || id.contains(':')
        || id.starts_with('#')
        || (policy == IdPolicy::Base && (id.contains('#') || id.contains('(')));
    if bad {
        Err(Error::InvalidId(id.to_string()))
    } else {
        Ok(())
    }
}

fn strip_comment(line: &str) -> &str {
    let mut prev_ws = true;
    for (i, c) in line.char_indices() {
        if c == '#' && prev_ws {
            return &line[..i];
        }
        prev_ws = c.is_whitespace();
    }
    line
}

/// Parses the instance format with user-facing id rules.
pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_with(text, IdPolicy::Base)
}

pub fn parse_instance_with(text: &str, policy: IdPolicy) -> Result<Instance> {
    let mut men: Option<(usize, Vec<String>)> = None;
    let mut women: Option<(usize, Vec<String>)> = None;
    let mut critical: Vec<(usize, String)> = Vec::new();
    let mut prefs: Vec<(usize, String, Vec<String>)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        let syntax = |message: &str| Error::Syntax {
            line: line_no,
            message: message.to_string(),
        };
        match keyword {
            "men" | "women" => {
                let ids: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for id in &ids {
                    check_id(id, policy)?;
                }
                let slot = if keyword == "men" { &mut men } else { &mut women };
                if slot.is_some() {
                    return Err(syntax(&format!("second `{keyword}` line")));
                }
                *slot = Some((line_no, ids));
            }
            "critical" => {
                critical.extend(rest.split_whitespace().map(|id| (line_no, id.to_string())));
            }
            "pref" => {
                let (owner, list) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax("expected `pref <id>: <id> ...`"))?;
                let owner = owner.trim();
                if owner.is_empty() || owner.contains(char::is_whitespace) {
                    return Err(syntax("expected a single id before `:`"));
                }
                let list = list.split_whitespace().map(str::to_string).collect();
                prefs.push((line_no, owner.to_string(), list));
            }
            other => return Err(syntax(&format!("unknown keyword `{other}`"))),
        }
    }

    let men = men
        .ok_or(Error::Syntax {
            line: 0,
            message: "missing `men` line".into(),
        })?
        .1;
    let women = women
        .ok_or(Error::Syntax {
            line: 0,
            message: "missing `women` line".into(),
        })?
        .1;

    let lookup = |name: &str| -> Option<Vertex> {
        if let Some(i) = men.iter().position(|m| m == name) {
            Some(Vertex::Man(i))
        } else {
            women.iter().position(|w| w == name).map(Vertex::Woman)
        }
    };
    // Duplicate ids are reported before anything is resolved against them.
    {
        let mut seen = std::collections::HashSet::new();
        for id in men.iter().chain(women.iter()) {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
    }

    let mut man_prefs: Vec<Option<Vec<usize>>> = vec![None; men.len()];
    let mut woman_prefs: Vec<Option<Vec<usize>>> = vec![None; women.len()];
    for (line_no, owner, list) in &prefs {
        match lookup(owner) {
            Some(Vertex::Man(m)) => {
                if man_prefs[m].is_some() {
                    return Err(Error::Syntax {
                        line: *line_no,
                        message: format!("second preference line for `{owner}`"),
                    });
                }
                let mut out = Vec::with_capacity(list.len());
                for name in list {
                    match lookup(name) {
                        Some(Vertex::Woman(w)) => out.push(w),
                        _ => return Err(Error::UnknownVertex(name.clone())),
                    }
                }
                man_prefs[m] = Some(out);
            }
            Some(Vertex::Woman(w)) => {
                if woman_prefs[w].is_some() {
                    return Err(Error::Syntax {
                        line: *line_no,
                        message: format!("second preference line for `{owner}`"),
                    });
                }
                let mut out = Vec::with_capacity(list.len());
                for name in list {
                    match lookup(name) {
                        Some(Vertex::Man(m)) => out.push(m),
                        _ => return Err(Error::UnknownVertex(name.clone())),
                    }
                }
                woman_prefs[w] = Some(out);
            }
            None => return Err(Error::UnknownVertex(owner.clone())),
        }
    }

    let mut critical_men = vec![false; men.len()];
    let mut critical_women = vec![false; women.len()];
    for (_, id) in &critical {
        match lookup(id) {
            Some(Vertex::Man(m)) => critical_men[m] = true,
            Some(Vertex::Woman(w)) => critical_women[w] = true,
            None => return Err(Error::UnknownVertex(id.clone())),
        }
    }

    Instance::from_indexed(
        men,
        women,
        man_prefs.into_iter().map(Option::unwrap_or_default).collect(),
        woman_prefs.into_iter().map(Option::unwrap_or_default).collect(),
        critical_men,
        critical_women,
    )
}

/// Canonical text: men, women, critical (omitted when empty), then men's
/// and women's lists in declared order.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str("men");
    for m in inst.men() {
        let _ = write!(out, " {m}");
    }
    out.push_str("\nwomen");
    for w in inst.women() {
        let _ = write!(out, " {w}");
    }
    out.push('\n');
    if inst.critical_count() > 0 {
        out.push_str("critical");
        for m in inst.critical_men() {
            let _ = write!(out, " {}", inst.man_name(m));
        }
        for w in inst.critical_women() {
            let _ = write!(out, " {}", inst.woman_name(w));
        }
        out.push('\n');
    }
    for m in 0..inst.n_men() {
        let _ = write!(out, "pref {}:", inst.man_name(m));
        for &w in inst.man_prefs(m) {
            let _ = write!(out, " {}", inst.woman_name(w));
        }
        out.push('\n');
    }
    for w in 0..inst.n_women() {
        let _ = write!(out, "pref {}:", inst.woman_name(w));
        for &m in inst.woman_prefs(w) {
            let _ = write!(out, " {}", inst.man_name(m));
        }
        out.push('\n');
    }
    out
}

/// Parses `<man> <woman>` lines into a matching of `inst`.
pub fn parse_matching(inst: &Instance, text: &str) -> Result<Matching> {
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Syntax {
                line: lineno + 1,
                message: "expected `<man> <woman>`".into(),
            });
        }
        let m = inst.lookup_man(tokens[0])?;
        let w = inst.lookup_woman(tokens[1])?;
        edges.push(Edge::new(m, w));
    }
    Matching::from_edges(inst, &edges)
}

/// One `<man> <woman>` line per edge, by man order.
pub fn serialize_matching(inst: &Instance, matching: &Matching) -> String {
    let mut out = String::new();
    for e in matching.edges() {
        let _ = writeln!(out, "{} {}", inst.man_name(e.man), inst.woman_name(e.woman));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const I1: &str = "men m1\nwomen w1\ncritical m1\npref m1: w1\npref w1: m1\n";
    const I2: &str = "men a1 a2\nwomen b1 b2\npref a1: b1 b2\npref a2: b1\npref b1: a1 a2\npref b2: a1\n";

    #[test]
    fn parses_i1() {
        let inst = parse_instance(I1).unwrap();
        assert_eq!(inst.men(), &["m1".to_string()]);
        assert_eq!(inst.women(), &["w1".to_string()]);
        assert_eq!(inst.critical_count(), 1);
        assert_eq!(serialize_instance(&inst), I1);
    }

    #[test]
    fn i2_round_trips_with_three_edges() {
        let inst = parse_instance(I2).unwrap();
        assert_eq!(inst.n_edges(), 3);
        assert_eq!(serialize_instance(&inst), I2);
        assert!(!serialize_instance(&inst).contains("critical"));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# header\nmen m1 # trailing\n\nwomen w1\npref m1: w1\npref w1: m1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.n_edges(), 1);
    }

    #[test]
    fn validation_errors() {
        let non_mutual = "men m1\nwomen w1 w2\npref m1: w1 w2\npref w1: m1\n";
        assert!(matches!(
            parse_instance(non_mutual),
            Err(Error::NonMutualAdjacency { .. })
        ));
        let dup = "men m1 m1\nwomen w1\n";
        assert!(matches!(parse_instance(dup), Err(Error::DuplicateId(_))));
        let repeated = "men m1\nwomen w1\npref m1: w1 w1\npref w1: m1\n";
        assert!(matches!(
            parse_instance(repeated),
            Err(Error::RepeatedPreference { .. })
        ));
        let both = "men m1\nwomen w1\ncritical m1 w1\npref m1: w1\npref w1: m1\n";
        assert!(matches!(
            parse_instance(both),
            Err(Error::CriticalOnBothSides { .. })
        ));
        let unknown = "men m1\nwomen w1\ncritical x\n";
        assert!(matches!(parse_instance(unknown), Err(Error::UnknownVertex(_))));
        let garbage = "men m1\nwomen w1\nhello\n";
        assert!(matches!(
            parse_instance(garbage),
            Err(Error::Syntax { line: 3, .. })
        ));
        let reserved = "men m#1\nwomen w1\n";
        assert!(parse_instance(reserved).is_err());
    }

    #[test]
    fn reduced_names_need_the_reduced_policy() {
        let text = "men m1#0\nwomen d(m1)#1\npref m1#0: d(m1)#1\npref d(m1)#1: m1#0\n";
        assert!(parse_instance(text).is_err());
        let inst = parse_instance_with(text, IdPolicy::Reduced).unwrap();
        assert_eq!(serialize_instance(&inst), text);
    }

    #[test]
    fn matching_round_trip() {
        let inst = parse_instance(I2).unwrap();
        let m = parse_matching(&inst, "a1 b2\na2 b1\n").unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(serialize_matching(&inst, &m), "a1 b2\na2 b1\n");
        assert!(parse_matching(&inst, "a2 b2\n").is_err());
    }
}
