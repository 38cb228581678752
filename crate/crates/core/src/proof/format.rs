use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::calculus::{Rule, Sequent};
use crate::expr::{parse_with, Alphabet, Definitions};

use super::{ProofGraph, ProofNode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ProofParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ProofParseError> {
    Err(ProofParseError { line, msg: msg.into() })
}

struct RawNode {
    line: usize,
    id: String,
    sequent: Sequent,
    rule: Rule,
    principal: Option<crate::expr::Expr>,
    children: Vec<String>,
}

impl ProofGraph {
    /// Reads the text proof format:
    ///
    /// ```text
    /// alphabet: ab
    /// let g = nu X. a X
    /// node n0: g |- i_a ; rule nu-l principal g ; children n1
    /// root n0
    /// ```
    ///
    /// `#` starts a comment. Node records may appear in any order, but
    /// `alphabet` and any `let` they use must come first.
    pub fn parse(text: &str) -> Result<ProofGraph, ProofParseError> {
        let mut alphabet: Option<Alphabet> = None;
        let mut defs = Definitions::new();
        let mut raw: Vec<RawNode> = vec![];
        let mut root: Option<(usize, String)> = None;
        for (k, line) in text.lines().enumerate() {
            let ln = k + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("alphabet:") {
                if alphabet.is_some() {
                    return err(ln, "duplicate alphabet");
                }
                let a = Alphabet::new(rest.trim()).or_else(|e| err(ln, e.to_string()))?;
                defs = Definitions::standard(&a);
                alphabet = Some(a);
                continue;
            }
            let Some(a) = alphabet.as_ref() else {
                return err(ln, "`alphabet:` must come first");
            };
            if let Some(rest) = line.strip_prefix("let ") {
                let (name, body) = rest
                    .split_once('=')
                    .ok_or_else(|| ProofParseError { line: ln, msg: "expected `let name = expr`".into() })?;
                let name = name.trim();
                if !Definitions::is_valid_name(name) {
                    return err(
                        ln,
                        format!(
                            "`{name}` is not a valid name (lowercase letters, `_`, then letters, digits or primes)"
                        ),
                    );
                }
                let e = parse_with(body, a, &defs).or_else(|e| err(ln, e.to_string()))?;
                if !e.is_closed() {
                    return err(ln, format!("definition of `{name}` is open"));
                }
                defs.insert(name, e);
            } else if let Some(rest) = line.strip_prefix("root") {
                if root.is_some() {
                    return err(ln, "duplicate root");
                }
                root = Some((ln, rest.trim().to_string()));
            } else if let Some(rest) = line.strip_prefix("node ") {
                raw.push(parse_node(ln, rest, a, &defs)?);
            } else {
                return err(ln, format!("unrecognised line `{line}`"));
            }
        }
        let Some(alphabet) = alphabet else {
            return err(0, "missing `alphabet:` header");
        };
        let mut ids: HashMap<String, usize> = HashMap::new();
        for (i, n) in raw.iter().enumerate() {
            if ids.insert(n.id.clone(), i).is_some() {
                return err(n.line, format!("duplicate node `{}`", n.id));
            }
        }
        let Some((root_line, root_id)) = root else {
            return err(0, "missing `root` line");
        };
        let root = *ids
            .get(&root_id)
            .ok_or_else(|| ProofParseError { line: root_line, msg: format!("unknown root `{root_id}`") })?;
        let mut nodes = vec![];
        for n in raw {
            let mut children = vec![];
            for c in &n.children {
                match ids.get(c) {
                    Some(&i) => children.push(i),
                    None => return err(n.line, format!("unknown child `{c}`")),
                }
            }
            nodes.push(ProofNode { id: n.id, sequent: n.sequent, rule: n.rule, principal: n.principal, children });
        }
        Ok(ProofGraph { alphabet, nodes, root })
    }

    /// The text format, with nodes in index order.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn parse_node(ln: usize, rest: &str, a: &Alphabet, defs: &Definitions) -> Result<RawNode, ProofParseError> {
    let (id, rest) =
        rest.split_once(':').ok_or_else(|| ProofParseError { line: ln, msg: "expected `node <id>: ...`".into() })?;
    let id = id.trim().to_string();
    if id.is_empty() || id.contains(char::is_whitespace) || id.contains(',') {
        return err(ln, format!("bad node id `{id}`"));
    }
    let parts: Vec<&str> = rest.split(';').map(str::trim).collect();
    if parts.len() < 2 || parts.len() > 3 {
        return err(ln, "expected `<sequent> ; rule <name> [principal <formula>] ; children <ids>`");
    }
    let sequent = Sequent::parse_with(parts[0], a, defs).or_else(|e| err(ln, format!("sequent: {e}")))?;
    let rule_part = parts[1]
        .strip_prefix("rule")
        .map(str::trim)
        .ok_or_else(|| ProofParseError { line: ln, msg: "expected `rule <name>`".into() })?;
    let (name, principal_text) = match rule_part.split_once("principal") {
        Some((n, f)) => (n.trim(), Some(f.trim())),
        None => (rule_part, None),
    };
    let rule: Rule = name.parse().or_else(|e: crate::calculus::UnknownRule| err(ln, e.to_string()))?;
    let principal = match (rule, principal_text) {
        (_, None) => None,
        // `h_a principal a` names the letter redundantly
        (Rule::H(l), Some(f)) if f == l.to_string() => None,
        (_, Some(f)) => Some(parse_with(f, a, defs).or_else(|e| err(ln, format!("principal: {e}")))?),
    };
    let children = match parts.get(2) {
        None => vec![],
        Some(c) => {
            let c = c
                .strip_prefix("children")
                .ok_or_else(|| ProofParseError { line: ln, msg: "expected `children <ids>`".into() })?;
            c.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
        }
    };
    Ok(RawNode { line: ln, id, sequent, rule, principal, children })
}

impl fmt::Display for ProofGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet: {}", self.alphabet)?;
        writeln!(f, "root {}", self.nodes[self.root].id)?;
        for n in &self.nodes {
            write!(f, "node {}: {} ; rule {}", n.id, n.sequent, n.rule)?;
            if let Some(p) = &n.principal {
                write!(f, " principal {p}")?;
            }
            let children: Vec<&str> = n.children.iter().map(|&c| self.nodes[c].id.as_str()).collect();
            writeln!(f, " ; children {}", children.join(", "))?;
        }
        Ok(())
    }
}
