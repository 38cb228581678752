//! Right-linear lattice expressions.
//!
//! Bound variables are stored as de Bruijn indices and free variables by
//! name (a locally nameless representation). Two α-equivalent expressions
//! are therefore structurally equal, which lets closures, sequents and
//! memo tables use plain `Eq`/`Hash`/`Ord`.

mod closure;
mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use closure::{compare_dependency, fl_closure, fl_leq, fl_lt, DependencyOrdering, FlClause, FlClosure};
pub use parse::{parse, parse_with, Definitions};

/// A single letter of an alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub char);

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite, nonempty, ordered set of lowercase letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<Letter>,
}

impl Alphabet {
    /// Builds an alphabet from a string such as `"ab"`. Letter order is
    /// the order of first appearance.
    pub fn new(spec: &str) -> Result<Self, ExprError> {
        let mut letters: Vec<Letter> = Vec::new();
        for c in spec.chars().filter(|c| !c.is_whitespace() && *c != ',') {
            if !c.is_ascii_lowercase() {
                return Err(ExprError::BadAlphabet(format!("`{c}` is not a lowercase letter")));
            }
            if letters.contains(&Letter(c)) {
                return Err(ExprError::BadAlphabet(format!("duplicate letter `{c}`")));
            }
            letters.push(Letter(c));
        }
        if letters.is_empty() {
            return Err(ExprError::BadAlphabet("alphabet is empty".into()));
        }
        Ok(Alphabet { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, a: Letter) -> bool {
        self.letters.contains(&a)
    }

    pub fn index_of(&self, a: Letter) -> Option<usize> {
        self.letters.iter().position(|&b| b == a)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.letters {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("letter `{letter}` at {pos} is not in the alphabet")]
    UndeclaredLetter { letter: char, pos: usize },
    #[error("unknown name `{name}` at {pos}")]
    UnknownName { name: String, pos: usize },
    #[error("bad alphabet: {0}")]
    BadAlphabet(String),
    #[error("expression is open (free variables: {0})")]
    Open(String),
    #[error("expression `{0}` is not a fixed point")]
    NotFixpoint(String),
}

/// A variable occurrence: either bound (de Bruijn index, 0 = innermost
/// binder) or free (by name).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Bound(u32),
    Free(Arc<str>),
}

/// An RLL expression.
///
/// The variant order fixes the canonical total order used throughout the
/// crate (derived `Ord`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Zero,
    Top,
    Var(Var),
    Letter(Letter, Arc<Expr>),
    Plus(Arc<Expr>, Arc<Expr>),
    Cap(Arc<Expr>, Arc<Expr>),
    Mu(Arc<Expr>),
    Nu(Arc<Expr>),
}

/// Least or greatest fixed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fixpoint {
    Mu,
    Nu,
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Zero
    }

    pub fn top() -> Expr {
        Expr::Top
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(Var::Free(name.into()))
    }

    pub fn letter(a: char, body: Expr) -> Expr {
        Expr::Letter(Letter(a), Arc::new(body))
    }

    pub fn plus(l: Expr, r: Expr) -> Expr {
        Expr::Plus(Arc::new(l), Arc::new(r))
    }

    pub fn cap(l: Expr, r: Expr) -> Expr {
        Expr::Cap(Arc::new(l), Arc::new(r))
    }

    /// `μX body`, binding the free occurrences of `X` in `body`.
    pub fn mu(x: &str, body: Expr) -> Expr {
        Expr::Mu(Arc::new(body.close_over(x, 0)))
    }

    /// `νX body`, binding the free occurrences of `X` in `body`.
    pub fn nu(x: &str, body: Expr) -> Expr {
        Expr::Nu(Arc::new(body.close_over(x, 0)))
    }

    /// Left-nested sum of the given summands; `0` when empty.
    pub fn sum<I: IntoIterator<Item = Expr>>(items: I) -> Expr {
        items.into_iter().reduce(Expr::plus).unwrap_or(Expr::Zero)
    }

    pub fn fixpoint_kind(&self) -> Option<Fixpoint> {
        match self {
            Expr::Mu(_) => Some(Fixpoint::Mu),
            Expr::Nu(_) => Some(Fixpoint::Nu),
            _ => None,
        }
    }

    pub fn is_fixpoint(&self) -> bool {
        self.fixpoint_kind().is_some()
    }

    /// The head letter of `a e`.
    pub fn head_letter(&self) -> Option<(Letter, &Expr)> {
        match self {
            Expr::Letter(a, body) => Some((*a, body)),
            _ => None,
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Zero | Expr::Top | Expr::Var(_) => 1,
            Expr::Letter(_, e) | Expr::Mu(e) | Expr::Nu(e) => 1 + e.size(),
            Expr::Plus(l, r) | Expr::Cap(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Zero | Expr::Top => {}
            Expr::Var(Var::Free(x)) => {
                out.insert(x.to_string());
            }
            Expr::Var(Var::Bound(_)) => {}
            Expr::Letter(_, e) | Expr::Mu(e) | Expr::Nu(e) => e.collect_free(out),
            Expr::Plus(l, r) | Expr::Cap(l, r) => {
                l.collect_free(out);
                r.collect_free(out);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn require_closed(&self) -> Result<(), ExprError> {
        let fv = self.free_vars();
        if fv.is_empty() {
            Ok(())
        } else {
            Err(ExprError::Open(fv.into_iter().collect::<Vec<_>>().join(", ")))
        }
    }

    /// True iff every variable occurrence sits below a letter that is
    /// itself inside the scope of the variable's binder.
    pub fn is_guarded(&self) -> Result<bool, ExprError> {
        self.require_closed()?;
        Ok(self.guarded_from(0, None))
    }

    /// `depth` binders are open; `letter_depth` is the binder count at the
    /// innermost letter crossed so far.
    fn guarded_from(&self, depth: u32, letter_depth: Option<u32>) -> bool {
        match self {
            Expr::Zero | Expr::Top | Expr::Var(Var::Free(_)) => true,
            Expr::Var(Var::Bound(k)) => {
                // binder of this occurrence was opened when `depth - k - 1` binders were open
                let binder_level = depth - k - 1;
                letter_depth.is_some_and(|l| l > binder_level)
            }
            Expr::Letter(_, e) => e.guarded_from(depth, Some(depth)),
            Expr::Mu(e) | Expr::Nu(e) => e.guarded_from(depth + 1, letter_depth),
            Expr::Plus(l, r) | Expr::Cap(l, r) => {
                l.guarded_from(depth, letter_depth) && r.guarded_from(depth, letter_depth)
            }
        }
    }

    /// Capture-avoiding substitution of `f` for the free occurrences of `x`.
    pub fn substitute(&self, x: &str, f: &Expr) -> Expr {
        match self {
            Expr::Var(Var::Free(y)) if &**y == x => f.clone(),
            Expr::Zero | Expr::Top | Expr::Var(_) => self.clone(),
            Expr::Letter(a, e) => Expr::Letter(*a, Arc::new(e.substitute(x, f))),
            Expr::Plus(l, r) => Expr::Plus(Arc::new(l.substitute(x, f)), Arc::new(r.substitute(x, f))),
            Expr::Cap(l, r) => Expr::Cap(Arc::new(l.substitute(x, f)), Arc::new(r.substitute(x, f))),
            Expr::Mu(e) => Expr::Mu(Arc::new(e.substitute(x, f))),
            Expr::Nu(e) => Expr::Nu(Arc::new(e.substitute(x, f))),
        }
    }

    /// One-step unfolding `σX e(X) ↦ e(σX e(X))`.
    pub fn unfold(&self) -> Result<Expr, ExprError> {
        match self {
            Expr::Mu(body) | Expr::Nu(body) => Ok(body.instantiate(self, 0)),
            _ => Err(ExprError::NotFixpoint(self.to_string())),
        }
    }

    /// Replaces the bound variable pointing at binder level `depth` with
    /// `with`, which must be locally closed.
    fn instantiate(&self, with: &Expr, depth: u32) -> Expr {
        match self {
            Expr::Var(Var::Bound(k)) if *k == depth => with.clone(),
            Expr::Zero | Expr::Top | Expr::Var(_) => self.clone(),
            Expr::Letter(a, e) => Expr::Letter(*a, Arc::new(e.instantiate(with, depth))),
            Expr::Plus(l, r) => Expr::Plus(Arc::new(l.instantiate(with, depth)), Arc::new(r.instantiate(with, depth))),
            Expr::Cap(l, r) => Expr::Cap(Arc::new(l.instantiate(with, depth)), Arc::new(r.instantiate(with, depth))),
            Expr::Mu(e) => Expr::Mu(Arc::new(e.instantiate(with, depth + 1))),
            Expr::Nu(e) => Expr::Nu(Arc::new(e.instantiate(with, depth + 1))),
        }
    }

    /// Turns free occurrences of `x` into bound references to the binder
    /// sitting `depth` levels above.
    fn close_over(&self, x: &str, depth: u32) -> Expr {
        match self {
            Expr::Var(Var::Free(y)) if &**y == x => Expr::Var(Var::Bound(depth)),
            Expr::Zero | Expr::Top | Expr::Var(_) => self.clone(),
            Expr::Letter(a, e) => Expr::Letter(*a, Arc::new(e.close_over(x, depth))),
            Expr::Plus(l, r) => Expr::Plus(Arc::new(l.close_over(x, depth)), Arc::new(r.close_over(x, depth))),
            Expr::Cap(l, r) => Expr::Cap(Arc::new(l.close_over(x, depth)), Arc::new(r.close_over(x, depth))),
            Expr::Mu(e) => Expr::Mu(Arc::new(e.close_over(x, depth + 1))),
            Expr::Nu(e) => Expr::Nu(Arc::new(e.close_over(x, depth + 1))),
        }
    }

    /// Is `self` a subformula of `of` (reflexive)?
    ///
    /// Only meaningful for locally closed `self`, which is the only kind
    /// of expression the public API hands out.
    pub fn is_subformula_of(&self, of: &Expr) -> bool {
        if self == of {
            return true;
        }
        match of {
            Expr::Zero | Expr::Top | Expr::Var(_) => false,
            Expr::Letter(_, e) | Expr::Mu(e) | Expr::Nu(e) => self.is_subformula_of(e),
            Expr::Plus(l, r) | Expr::Cap(l, r) => self.is_subformula_of(l) || self.is_subformula_of(r),
        }
    }

    /// Structural complement over `alphabet`: lattice operations and
    /// fixed points are dualised, variables are self-dual, and
    /// `(a e)^c = a e^c + Σ_{b≠a} b T` with the sum in alphabet order.
    pub fn complement(&self, alphabet: &Alphabet) -> Expr {
        match self {
            Expr::Zero => Expr::Top,
            Expr::Top => Expr::Zero,
            Expr::Var(_) => self.clone(),
            Expr::Letter(a, e) => {
                let head = Expr::Letter(*a, Arc::new(e.complement(alphabet)));
                alphabet
                    .letters()
                    .iter()
                    .filter(|&&b| b != *a)
                    .fold(head, |acc, &b| Expr::plus(acc, Expr::Letter(b, Arc::new(Expr::Top))))
            }
            Expr::Plus(l, r) => Expr::Cap(Arc::new(l.complement(alphabet)), Arc::new(r.complement(alphabet))),
            Expr::Cap(l, r) => Expr::Plus(Arc::new(l.complement(alphabet)), Arc::new(r.complement(alphabet))),
            Expr::Mu(e) => Expr::Nu(Arc::new(e.complement(alphabet))),
            Expr::Nu(e) => Expr::Mu(Arc::new(e.complement(alphabet))),
        }
    }

    /// Letters occurring in the expression.
    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<Letter>) {
        match self {
            Expr::Zero | Expr::Top | Expr::Var(_) => {}
            Expr::Letter(a, e) => {
                out.insert(*a);
                e.collect_letters(out);
            }
            Expr::Mu(e) | Expr::Nu(e) => e.collect_letters(out),
            Expr::Plus(l, r) | Expr::Cap(l, r) => {
                l.collect_letters(out);
                r.collect_letters(out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn i_a() -> Expr {
        parse("nu X. mu Y. a X + b Y", &ab()).unwrap()
    }

    #[test]
    fn alphabet_rejects_bad_input() {
        assert!(Alphabet::new("").is_err());
        assert!(Alphabet::new("aa").is_err());
        assert!(Alphabet::new("aB").is_err());
        assert_eq!(Alphabet::new("ba").unwrap().letters(), &[Letter('b'), Letter('a')]);
    }

    #[test]
    fn free_vars_examples() {
        assert_eq!(Expr::var("X").free_vars(), BTreeSet::from(["X".to_string()]));
        assert!(Expr::mu("X", Expr::letter('a', Expr::var("X"))).free_vars().is_empty());
        let e = Expr::mu("X", Expr::plus(Expr::var("X"), Expr::var("Y")));
        assert_eq!(e.free_vars(), BTreeSet::from(["Y".to_string()]));
    }

    #[test]
    fn alpha_equivalent_binders_are_equal() {
        let a = Expr::mu("X", Expr::letter('a', Expr::var("X")));
        let b = Expr::mu("Z", Expr::letter('a', Expr::var("Z")));
        assert_eq!(a, b);
    }

    #[test]
    fn guardedness_examples() {
        let mu_ax = Expr::mu("X", Expr::letter('a', Expr::var("X")));
        assert!(mu_ax.is_guarded().unwrap());
        assert!(!Expr::mu("X", Expr::var("X")).is_guarded().unwrap());
        assert!(i_a().is_guarded().unwrap());
        assert!(Expr::var("X").is_guarded().is_err());
        // X sits under the letter, but the letter is outside the binder of Y
        let e = Expr::mu("X", Expr::letter('a', Expr::mu("Y", Expr::plus(Expr::var("X"), Expr::var("Y")))));
        assert!(!e.is_guarded().unwrap());
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(Expr::var("X").substitute("X", &Expr::Zero), Expr::Zero);
        let mu_xx = Expr::mu("X", Expr::var("X"));
        assert_eq!(mu_xx.substitute("X", &Expr::Top), mu_xx);
        let nu_by = Expr::nu("Y", Expr::letter('b', Expr::var("Y")));
        assert_eq!(Expr::letter('a', Expr::var("X")).substitute("X", &nu_by), Expr::letter('a', nu_by.clone()));
    }

    #[test]
    fn substitution_does_not_capture() {
        // (μY. X + Y)[Y/X] must keep the substituted Y free
        let e = Expr::mu("Y", Expr::plus(Expr::var("X"), Expr::var("Y")));
        let s = e.substitute("X", &Expr::var("Y"));
        assert_eq!(s.free_vars(), BTreeSet::from(["Y".to_string()]));
        assert_ne!(s, Expr::mu("Y", Expr::plus(Expr::var("Y"), Expr::var("Y"))));
    }

    #[test]
    fn unfold_examples() {
        let mu_ax = Expr::mu("X", Expr::letter('a', Expr::var("X")));
        assert_eq!(mu_ax.unfold().unwrap(), Expr::letter('a', mu_ax.clone()));
        let nu_xx = Expr::nu("X", Expr::var("X"));
        assert_eq!(nu_xx.unfold().unwrap(), nu_xx);
        let i_a_prime = Expr::mu("Y", Expr::plus(Expr::letter('a', i_a()), Expr::letter('b', Expr::var("Y"))));
        assert_eq!(i_a().unfold().unwrap(), i_a_prime);
        assert!(Expr::Zero.unfold().is_err());
    }

    #[test]
    fn subformula_examples() {
        let i_a_prime = i_a().unfold().unwrap();
        assert!(i_a().is_subformula_of(&i_a_prime));
        assert!(i_a().is_subformula_of(&i_a()));
        assert!(!Expr::Top.is_subformula_of(&Expr::Zero));
    }

    #[test]
    fn complement_examples() {
        let ab = ab();
        assert_eq!(Expr::mu("X", Expr::var("X")).complement(&ab), Expr::nu("X", Expr::var("X")));
        assert_eq!(Expr::Zero.complement(&ab), Expr::Top);
        assert_eq!(
            Expr::letter('a', Expr::Top).complement(&ab),
            Expr::plus(Expr::letter('a', Expr::Zero), Expr::letter('b', Expr::Top))
        );
        let unary = Alphabet::new("a").unwrap();
        assert_eq!(Expr::letter('a', Expr::Top).complement(&unary), Expr::letter('a', Expr::Zero));
    }

    #[test]
    fn complement_preserves_guardedness() {
        let e = i_a();
        assert!(e.complement(&ab()).is_guarded().unwrap());
    }

    #[test]
    fn size_counts_nodes() {
        assert_eq!(Expr::mu("X", Expr::letter('a', Expr::var("X"))).size(), 3);
        assert_eq!(i_a().size(), 7);
    }
}
