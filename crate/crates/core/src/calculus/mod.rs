//! Sequents, the rules of the cyclic system, and immediate ancestry.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::expr::{parse_with, Alphabet, Definitions, Expr, ExprError, Letter};

/// Which cedent of a sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "LHS",
            Side::Right => "RHS",
        })
    }
}

/// `Γ → Δ` with both cedents sets of closed expressions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub lhs: BTreeSet<Expr>,
    pub rhs: BTreeSet<Expr>,
}

impl Sequent {
    pub fn new<L, R>(lhs: L, rhs: R) -> Sequent
    where
        L: IntoIterator<Item = Expr>,
        R: IntoIterator<Item = Expr>,
    {
        Sequent { lhs: lhs.into_iter().collect(), rhs: rhs.into_iter().collect() }
    }

    pub fn side(&self, side: Side) -> &BTreeSet<Expr> {
        match side {
            Side::Left => &self.lhs,
            Side::Right => &self.rhs,
        }
    }

    fn side_mut(&mut self, side: Side) -> &mut BTreeSet<Expr> {
        match side {
            Side::Left => &mut self.lhs,
            Side::Right => &mut self.rhs,
        }
    }

    pub fn formulas(&self) -> impl Iterator<Item = (Side, &Expr)> {
        self.lhs.iter().map(|e| (Side::Left, e)).chain(self.rhs.iter().map(|e| (Side::Right, e)))
    }

    pub fn is_empty(&self) -> bool {
        self.lhs.is_empty() && self.rhs.is_empty()
    }

    /// Parses `e1, e2 |- f1, f2`; `⊢` may replace `|-` and `∅` marks an
    /// empty cedent.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Sequent, ExprError> {
        Sequent::parse_with(text, alphabet, &Definitions::standard(alphabet))
    }

    pub fn parse_with(text: &str, alphabet: &Alphabet, defs: &Definitions) -> Result<Sequent, ExprError> {
        let (l, r, offset) = if let Some(i) = text.find("|-") {
            (&text[..i], &text[i + 2..], i + 2)
        } else if let Some(i) = text.find('⊢') {
            (&text[..i], &text[i + '⊢'.len_utf8()..], i + '⊢'.len_utf8())
        } else {
            return Err(ExprError::Syntax { pos: text.len(), msg: "expected `|-`".into() });
        };
        let side = |s: &str, base: usize| -> Result<BTreeSet<Expr>, ExprError> {
            if s.trim().is_empty() || s.trim() == "∅" {
                return Ok(BTreeSet::new());
            }
            let mut out = BTreeSet::new();
            let mut start = 0;
            for part in s.split(',') {
                let e = parse_with(part, alphabet, defs).map_err(|err| shift(err, base + start))?;
                out.insert(e);
                start += part.len() + 1;
            }
            Ok(out)
        };
        Ok(Sequent { lhs: side(l, 0)?, rhs: side(r, offset)? })
    }

    pub fn is_closed(&self) -> bool {
        self.formulas().all(|(_, e)| e.is_closed())
    }
}

fn shift(err: ExprError, by: usize) -> ExprError {
    match err {
        ExprError::Syntax { pos, msg } => ExprError::Syntax { pos: pos + by, msg },
        ExprError::UndeclaredLetter { letter, pos } => ExprError::UndeclaredLetter { letter, pos: pos + by },
        ExprError::UnknownName { name, pos } => ExprError::UnknownName { name, pos: pos + by },
        other => other,
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<Expr>| s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ");
        let (l, r) = (join(&self.lhs), join(&self.rhs));
        match (l.is_empty(), r.is_empty()) {
            (true, true) => f.write_str("|-"),
            (true, false) => write!(f, "|- {r}"),
            (false, true) => write!(f, "{l} |-"),
            (false, false) => write!(f, "{l} |- {r}"),
        }
    }
}

/// The rules of the system. `H(a)` is the letter step `h_a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    LetterPartition,
    H(Letter),
    RightPartition,
    WeakenL,
    WeakenR,
    ZeroL,
    PlusL,
    MuL,
    TopL,
    CapL,
    NuL,
    ZeroR,
    PlusR,
    MuR,
    TopR,
    CapR,
    NuR,
}

impl Rule {
    /// The side of the principal formula, for rules that have one.
    pub fn principal_side(self) -> Option<Side> {
        use Rule::*;
        match self {
            WeakenL | ZeroL | PlusL | MuL | TopL | CapL | NuL => Some(Side::Left),
            WeakenR | ZeroR | PlusR | MuR | TopR | CapR | NuR => Some(Side::Right),
            LetterPartition | H(_) | RightPartition => None,
        }
    }

    pub fn is_logical(self) -> bool {
        self.principal_side().is_some() && !self.is_weakening()
    }

    pub fn is_weakening(self) -> bool {
        matches!(self, Rule::WeakenL | Rule::WeakenR)
    }

    /// Rules consuming a letter: `h_a` and `r-p`.
    pub fn is_letter_step(self) -> bool {
        matches!(self, Rule::H(_) | Rule::RightPartition)
    }

    pub fn is_axiom(self) -> bool {
        matches!(self, Rule::LetterPartition | Rule::ZeroL | Rule::TopR)
    }

    /// The logical rule whose principal formula is `e` on `side`.
    pub fn logical_for(side: Side, e: &Expr) -> Option<Rule> {
        use Rule::*;
        Some(match (side, e) {
            (Side::Left, Expr::Zero) => ZeroL,
            (Side::Left, Expr::Top) => TopL,
            (Side::Left, Expr::Plus(..)) => PlusL,
            (Side::Left, Expr::Cap(..)) => CapL,
            (Side::Left, Expr::Mu(_)) => MuL,
            (Side::Left, Expr::Nu(_)) => NuL,
            (Side::Right, Expr::Zero) => ZeroR,
            (Side::Right, Expr::Top) => TopR,
            (Side::Right, Expr::Plus(..)) => PlusR,
            (Side::Right, Expr::Cap(..)) => CapR,
            (Side::Right, Expr::Mu(_)) => MuR,
            (Side::Right, Expr::Nu(_)) => NuR,
            _ => return None,
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Rule::*;
        let s = match self {
            LetterPartition => "l-p",
            H(a) => return write!(f, "h_{a}"),
            RightPartition => "r-p",
            WeakenL => "l-w",
            WeakenR => "r-w",
            ZeroL => "0-l",
            PlusL => "+-l",
            MuL => "mu-l",
            TopL => "T-l",
            CapL => "&-l",
            NuL => "nu-l",
            ZeroR => "0-r",
            PlusR => "+-r",
            MuR => "mu-r",
            TopR => "T-r",
            CapR => "&-r",
            NuR => "nu-r",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown rule `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for Rule {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use Rule::*;
        if let Some(rest) = s.strip_prefix("h_") {
            let mut cs = rest.chars();
            if let (Some(a), None) = (cs.next(), cs.next()) {
                if a.is_ascii_lowercase() {
                    return Ok(H(Letter(a)));
                }
            }
            return Err(UnknownRule(s.into()));
        }
        match s {
            "l-p" => return Ok(LetterPartition),
            "r-p" => return Ok(RightPartition),
            "l-w" => return Ok(WeakenL),
            "r-w" => return Ok(WeakenR),
            _ => {}
        }
        let (head, side) = s.rsplit_once('-').ok_or_else(|| UnknownRule(s.into()))?;
        let left = match side {
            "l" => true,
            "r" => false,
            _ => return Err(UnknownRule(s.into())),
        };
        Ok(match (head, left) {
            ("0", true) => ZeroL,
            ("0", false) => ZeroR,
            ("+", true) => PlusL,
            ("+", false) => PlusR,
            ("mu" | "μ", true) => MuL,
            ("mu" | "μ", false) => MuR,
            ("nu" | "ν", true) => NuL,
            ("nu" | "ν", false) => NuR,
            ("T" | "⊤", true) => TopL,
            ("T" | "⊤", false) => TopR,
            ("&" | "∩", true) => CapL,
            ("&" | "∩", false) => CapR,
            _ => return Err(UnknownRule(s.into())),
        })
    }
}

/// A rule applied to a conclusion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleInstance {
    pub rule: Rule,
    pub conclusion: Sequent,
    /// The principal formula of logical and weakening rules.
    pub principal: Option<Expr>,
    pub premisses: Vec<Sequent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleViolation {
    #[error("{rule}: needs a principal formula")]
    MissingPrincipal { rule: Rule },
    #[error("{rule}: takes no principal formula")]
    UnexpectedPrincipal { rule: Rule },
    #[error("{rule}: principal formula {formula} is not in the {side}")]
    PrincipalAbsent { rule: Rule, formula: String, side: Side },
    #[error("{rule}: principal formula {formula} has the wrong shape")]
    WrongShape { rule: Rule, formula: String },
    #[error("h_{letter}: side condition Γ ≠ ∅ fails")]
    EmptyContext { letter: Letter },
    #[error("h_{letter}: formula {formula} is not {letter}-headed")]
    NotHeaded { letter: Letter, formula: String },
    #[error("l-p: side condition a ≠ b fails")]
    SameLetters,
    #[error("l-p: conclusion must be exactly ae, bf |- with a ≠ b, found {0}")]
    PartitionShape(String),
    #[error("r-p: conclusion must have empty LHS and letter-headed RHS, found {0}")]
    RightPartitionShape(String),
    #[error("{rule}: expected {expected} premisses, found {found}")]
    PremissCount { rule: Rule, expected: usize, found: usize },
    #[error("{rule}: premiss {index} should be `{expected}`, found `{found}`")]
    PremissMismatch { rule: Rule, index: usize, expected: String, found: String },
}

impl RuleInstance {
    /// Applies `rule` to `conclusion`, computing the premisses.
    pub fn apply(
        rule: Rule,
        conclusion: &Sequent,
        principal: Option<&Expr>,
        alphabet: &Alphabet,
    ) -> Result<RuleInstance, RuleViolation> {
        let premisses = expected_premisses(rule, conclusion, principal, alphabet)?;
        Ok(RuleInstance { rule, conclusion: conclusion.clone(), principal: principal.cloned(), premisses })
    }

    /// Is `e` on `side` the principal formula of this step?
    pub fn is_principal(&self, side: Side, e: &Expr) -> bool {
        self.rule.principal_side() == Some(side) && self.principal.as_ref() == Some(e)
    }
}

fn without(s: &Sequent, side: Side, e: &Expr) -> Sequent {
    let mut out = s.clone();
    out.side_mut(side).remove(e);
    out
}

fn with(mut s: Sequent, side: Side, es: &[&Expr]) -> Sequent {
    for e in es {
        s.side_mut(side).insert((*e).clone());
    }
    s
}

fn expected_premisses(
    rule: Rule,
    conc: &Sequent,
    principal: Option<&Expr>,
    alphabet: &Alphabet,
) -> Result<Vec<Sequent>, RuleViolation> {
    use Rule::*;
    let Some(side) = rule.principal_side() else {
        if principal.is_some() {
            return Err(RuleViolation::UnexpectedPrincipal { rule });
        }
        return letter_rule_premisses(rule, conc, alphabet);
    };
    let p = principal.ok_or(RuleViolation::MissingPrincipal { rule })?;
    if !conc.side(side).contains(p) {
        return Err(RuleViolation::PrincipalAbsent { rule, formula: p.to_string(), side });
    }
    let gamma = without(conc, side, p);
    let shape = || RuleViolation::WrongShape { rule, formula: p.to_string() };
    Ok(match (rule, p) {
        (WeakenL | WeakenR, _) => vec![gamma],
        (ZeroL, Expr::Zero) | (TopR, Expr::Top) => vec![],
        (TopL, Expr::Top) | (ZeroR, Expr::Zero) => vec![gamma],
        (PlusL, Expr::Plus(e, f)) | (CapR, Expr::Cap(e, f)) => {
            vec![with(gamma.clone(), side, &[e]), with(gamma, side, &[f])]
        }
        (CapL, Expr::Cap(e, f)) | (PlusR, Expr::Plus(e, f)) => vec![with(gamma, side, &[e, f])],
        (MuL, Expr::Mu(_)) | (NuL, Expr::Nu(_)) | (MuR, Expr::Mu(_)) | (NuR, Expr::Nu(_)) => {
            let u = p.unfold().expect("fixpoint");
            vec![with(gamma, side, &[&u])]
        }
        _ => return Err(shape()),
    })
}

fn letter_rule_premisses(rule: Rule, conc: &Sequent, alphabet: &Alphabet) -> Result<Vec<Sequent>, RuleViolation> {
    match rule {
        Rule::LetterPartition => {
            let heads: Vec<Letter> = conc.lhs.iter().filter_map(|e| e.head_letter().map(|(a, _)| a)).collect();
            if conc.lhs.len() != 2 || heads.len() != 2 || !conc.rhs.is_empty() {
                return Err(RuleViolation::PartitionShape(conc.to_string()));
            }
            if heads[0] == heads[1] {
                return Err(RuleViolation::SameLetters);
            }
            Ok(vec![])
        }
        Rule::H(a) => {
            let mut premiss = Sequent::default();
            for (side, e) in conc.formulas() {
                match e.head_letter() {
                    Some((b, body)) if b == a => {
                        premiss.side_mut(side).insert(body.clone());
                    }
                    _ => return Err(RuleViolation::NotHeaded { letter: a, formula: e.to_string() }),
                }
            }
            if premiss.lhs.is_empty() {
                return Err(RuleViolation::EmptyContext { letter: a });
            }
            Ok(vec![premiss])
        }
        Rule::RightPartition => {
            if !conc.lhs.is_empty() || conc.rhs.iter().any(|e| e.head_letter().is_none()) {
                return Err(RuleViolation::RightPartitionShape(conc.to_string()));
            }
            Ok(alphabet
                .letters()
                .iter()
                .map(|&a| Sequent {
                    lhs: BTreeSet::new(),
                    rhs: conc
                        .rhs
                        .iter()
                        .filter_map(|e| e.head_letter().filter(|(b, _)| *b == a).map(|(_, body)| body.clone()))
                        .collect(),
                })
                .collect())
        }
        _ => unreachable!("rule without principal side"),
    }
}

/// Checks an instance against the rule schema, including side
/// conditions. The `+-l` variant whose second premiss drops the context
/// (`Γ, e → Δ` and `f → Δ`) is accepted as well.
pub fn validate_instance(r: &RuleInstance, alphabet: &Alphabet) -> Result<(), RuleViolation> {
    let expected = expected_premisses(r.rule, &r.conclusion, r.principal.as_ref(), alphabet)?;
    if expected.len() != r.premisses.len() {
        return Err(RuleViolation::PremissCount { rule: r.rule, expected: expected.len(), found: r.premisses.len() });
    }
    for (i, (want, got)) in expected.iter().zip(&r.premisses).enumerate() {
        if want == got {
            continue;
        }
        if r.rule == Rule::PlusL && i == 1 {
            if let Some(Expr::Plus(_, f)) = &r.principal {
                if *got == Sequent::new([(**f).clone()], r.conclusion.rhs.iter().cloned()) {
                    continue;
                }
            }
        }
        return Err(RuleViolation::PremissMismatch {
            rule: r.rule,
            index: i,
            expected: want.to_string(),
            found: got.to_string(),
        });
    }
    Ok(())
}

/// All rule instances with conclusion `s`, in canonical order (rule, then
/// principal formula).
pub fn applicable_steps(s: &Sequent, alphabet: &Alphabet) -> Vec<RuleInstance> {
    let mut out = vec![];
    for (side, e) in s.formulas() {
        if let Some(rule) = Rule::logical_for(side, e) {
            out.extend(RuleInstance::apply(rule, s, Some(e), alphabet));
        }
        let w = if side == Side::Left { Rule::WeakenL } else { Rule::WeakenR };
        out.extend(RuleInstance::apply(w, s, Some(e), alphabet));
    }
    for &a in alphabet.letters() {
        out.extend(RuleInstance::apply(Rule::H(a), s, None, alphabet));
    }
    out.extend(RuleInstance::apply(Rule::LetterPartition, s, None, alphabet));
    out.extend(RuleInstance::apply(Rule::RightPartition, s, None, alphabet));
    out.sort();
    out.dedup();
    out
}

/// `premiss_formula` on `side` of premiss `premiss` is an immediate
/// ancestor of `conclusion_formula` on the same side of the conclusion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AncestryEdge {
    pub premiss: usize,
    pub side: Side,
    pub premiss_formula: Expr,
    pub conclusion_formula: Expr,
}

/// The immediate ancestry edges of a valid instance (`r-p` premisses
/// are matched to letters in alphabet order): principal to
/// auxiliary formulas, letter stripping for `h_a` and `r-p`, and the
/// identity on formulas kept from the conclusion. A principal formula
/// that reappears in a premiss gets both kinds of edge.
pub fn immediate_ancestry(r: &RuleInstance, alphabet: &Alphabet) -> Vec<AncestryEdge> {
    let mut out = vec![];
    for (i, prem) in r.premisses.iter().enumerate() {
        for (side, g) in prem.formulas() {
            let edge =
                |c: &Expr| AncestryEdge { premiss: i, side, premiss_formula: g.clone(), conclusion_formula: c.clone() };
            match r.rule {
                Rule::H(a) => out.push(edge(&Expr::Letter(a, g.clone().into()))),
                Rule::RightPartition => {
                    let a = alphabet.letters()[i];
                    out.push(edge(&Expr::Letter(a, g.clone().into())));
                }
                _ => {
                    if let Some(p) = &r.principal {
                        if r.rule.principal_side() == Some(side) && !r.rule.is_weakening() && is_auxiliary(p, r.rule, g)
                        {
                            out.push(edge(p));
                        }
                    }
                    if r.conclusion.side(side).contains(g) {
                        out.push(edge(g));
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn is_auxiliary(p: &Expr, rule: Rule, g: &Expr) -> bool {
    match (rule, p) {
        (Rule::PlusL | Rule::PlusR, Expr::Plus(e, f)) | (Rule::CapL | Rule::CapR, Expr::Cap(e, f)) => {
            **e == *g || **f == *g
        }
        (Rule::MuL | Rule::NuL | Rule::MuR | Rule::NuR, _) => p.unfold().is_ok_and(|u| u == *g),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn p(s: &str) -> Expr {
        parse(s, &ab()).unwrap()
    }

    fn seq(s: &str) -> Sequent {
        Sequent::parse(s, &ab()).unwrap()
    }

    #[test]
    fn sequent_syntax() {
        let s = seq("i_a, f_b |- T");
        assert_eq!(s.lhs.len(), 2);
        assert_eq!(seq(&s.to_string()), s);
        assert_eq!(seq("|-"), Sequent::default());
        assert_eq!(seq("∅ ⊢ ∅"), Sequent::default());
        assert!(Sequent::parse("a 0", &ab()).is_err());
        assert!(matches!(Sequent::parse("0, c 0 |-", &ab()), Err(ExprError::UndeclaredLetter { pos: 3, .. })));
    }

    #[test]
    fn rule_names_round_trip() {
        let all = [
            Rule::LetterPartition,
            Rule::H(Letter('a')),
            Rule::RightPartition,
            Rule::WeakenL,
            Rule::WeakenR,
            Rule::ZeroL,
            Rule::PlusL,
            Rule::MuL,
            Rule::TopL,
            Rule::CapL,
            Rule::NuL,
            Rule::ZeroR,
            Rule::PlusR,
            Rule::MuR,
            Rule::TopR,
            Rule::CapR,
            Rule::NuR,
        ];
        for r in all {
            assert_eq!(r.to_string().parse::<Rule>().unwrap(), r);
        }
        assert_eq!("μ-l".parse::<Rule>().unwrap(), Rule::MuL);
        assert_eq!("∩-r".parse::<Rule>().unwrap(), Rule::CapR);
        assert!("x-l".parse::<Rule>().is_err());
        assert!("h_ab".parse::<Rule>().is_err());
    }

    #[test]
    fn steps_for_mu_xx_to_nu_xx() {
        let steps = applicable_steps(&seq("mu X. X |- nu X. X"), &ab());
        let rules: Vec<Rule> = steps.iter().map(|r| r.rule).collect();
        assert_eq!(rules, vec![Rule::WeakenL, Rule::WeakenR, Rule::MuL, Rule::NuR]);
        let mu_l = &steps[2];
        assert_eq!(mu_l.premisses, vec![mu_l.conclusion.clone()]);
    }

    #[test]
    fn steps_for_axioms() {
        let steps = applicable_steps(&seq("a 0, b T |-"), &ab());
        let lp = steps.iter().find(|r| r.rule == Rule::LetterPartition).unwrap();
        assert!(lp.premisses.is_empty());

        let steps = applicable_steps(&Sequent::default(), &ab());
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].rule, Rule::RightPartition);
        assert_eq!(steps[0].premisses, vec![Sequent::default(), Sequent::default()]);
    }

    #[test]
    fn applicable_steps_nonempty_and_valid() {
        for s in ["i_a |- f_a", "a i_a |- a f_a, b 0", "|- a 0, b T", "0 |-", "a 0, a T |- b T"] {
            let steps = applicable_steps(&seq(s), &ab());
            assert!(!steps.is_empty());
            for r in &steps {
                validate_instance(r, &ab()).unwrap();
            }
        }
    }

    #[test]
    fn h_a_side_condition() {
        let r = RuleInstance {
            rule: Rule::H(Letter('a')),
            conclusion: seq("|- a 0"),
            principal: None,
            premisses: vec![seq("|- 0")],
        };
        assert_eq!(validate_instance(&r, &ab()), Err(RuleViolation::EmptyContext { letter: Letter('a') }));
        assert_eq!(validate_instance(&r, &ab()).unwrap_err().to_string(), "h_a: side condition Γ ≠ ∅ fails");
    }

    #[test]
    fn l_p_side_condition() {
        let r = RuleInstance {
            rule: Rule::LetterPartition,
            conclusion: seq("a 0, a T |-"),
            principal: None,
            premisses: vec![],
        };
        assert_eq!(validate_instance(&r, &ab()), Err(RuleViolation::SameLetters));
    }

    #[test]
    fn cap_l_ok_and_mismatch() {
        let conc = seq("i_a & f_a |- 0");
        let r = RuleInstance::apply(Rule::CapL, &conc, Some(&p("i_a & f_a")), &ab()).unwrap();
        assert_eq!(r.premisses, vec![seq("i_a, f_a |- 0")]);
        validate_instance(&r, &ab()).unwrap();
        let mut bad = r.clone();
        bad.premisses[0] = seq("i_a |- 0");
        assert!(matches!(validate_instance(&bad, &ab()), Err(RuleViolation::PremissMismatch { .. })));
    }

    #[test]
    fn plus_l_variants() {
        let conc = seq("a T + b T, i_a |- f_a");
        let r = RuleInstance::apply(Rule::PlusL, &conc, Some(&p("a T + b T")), &ab()).unwrap();
        assert_eq!(r.premisses, vec![seq("a T, i_a |- f_a"), seq("b T, i_a |- f_a")]);
        let mut typeset = r.clone();
        typeset.premisses[1] = seq("b T |- f_a");
        validate_instance(&typeset, &ab()).unwrap();
    }

    #[test]
    fn ancestry_examples() {
        let mu = p("mu X. a X");
        let conc = Sequent::new([mu.clone(), p("i_a")], [p("f_a")]);
        let r = RuleInstance::apply(Rule::MuL, &conc, Some(&mu), &ab()).unwrap();
        let edges = immediate_ancestry(&r, &ab());
        assert!(edges.contains(&AncestryEdge {
            premiss: 0,
            side: Side::Left,
            premiss_formula: Expr::letter('a', mu.clone()),
            conclusion_formula: mu.clone()
        }));
        assert!(edges.iter().any(|e| e.premiss_formula == p("i_a") && e.conclusion_formula == p("i_a")));
        assert!(edges.iter().any(|e| e.side == Side::Right && e.conclusion_formula == p("f_a")));
        assert_eq!(edges.len(), 3);

        let r = RuleInstance::apply(Rule::H(Letter('a')), &seq("a i_a |- a 0"), None, &ab()).unwrap();
        let edges = immediate_ancestry(&r, &ab());
        assert_eq!(edges.len(), 2);
        assert!(edges.iter().all(|e| e.conclusion_formula == Expr::letter('a', e.premiss_formula.clone())));

        let r = RuleInstance::apply(Rule::RightPartition, &seq("|- a 0, b T"), None, &ab()).unwrap();
        let edges = immediate_ancestry(&r, &ab());
        assert_eq!(
            edges,
            vec![
                AncestryEdge {
                    premiss: 0,
                    side: Side::Right,
                    premiss_formula: Expr::Zero,
                    conclusion_formula: p("a 0")
                },
                AncestryEdge {
                    premiss: 1,
                    side: Side::Right,
                    premiss_formula: Expr::Top,
                    conclusion_formula: p("b T")
                },
            ]
        );
    }

    #[test]
    fn self_unfolding_records_both_edges() {
        let mu = p("mu X. X");
        let r = RuleInstance::apply(Rule::MuL, &Sequent::new([mu.clone()], []), Some(&mu), &ab()).unwrap();
        let edges = immediate_ancestry(&r, &ab());
        // principal-auxiliary and identity coincide as edges between the same occurrences
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].conclusion_formula, mu);
    }
}
