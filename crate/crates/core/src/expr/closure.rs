use std::collections::{HashMap, VecDeque};

use super::{Expr, ExprError};

/// Which clause of the closure relation produced an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlClause {
    LetterStep,
    PlusLeft,
    PlusRight,
    CapLeft,
    CapRight,
    Unfold,
}

/// The Fischer–Ladner closure of a closed expression together with its
/// one-step edges. Members are numbered in breadth-first discovery order
/// from the root, so the root is member 0.
#[derive(Clone, Debug)]
pub struct FlClosure {
    members: Vec<Expr>,
    index: HashMap<Expr, usize>,
    successors: Vec<Vec<(FlClause, usize)>>,
}

/// One-step successors of `e` under the closure relation.
pub(crate) fn fl_steps(e: &Expr) -> Vec<(FlClause, Expr)> {
    match e {
        Expr::Zero | Expr::Top | Expr::Var(_) => vec![],
        Expr::Letter(_, body) => vec![(FlClause::LetterStep, (**body).clone())],
        Expr::Plus(l, r) => vec![(FlClause::PlusLeft, (**l).clone()), (FlClause::PlusRight, (**r).clone())],
        Expr::Cap(l, r) => vec![(FlClause::CapLeft, (**l).clone()), (FlClause::CapRight, (**r).clone())],
        Expr::Mu(_) | Expr::Nu(_) => vec![(FlClause::Unfold, e.unfold().expect("fixpoint"))],
    }
}

impl FlClosure {
    /// The first root. Panics on the closure of no expressions.
    pub fn root(&self) -> &Expr {
        &self.members[0]
    }

    pub fn members(&self) -> &[Expr] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: &Expr) -> bool {
        self.index.contains_key(e)
    }

    pub fn index_of(&self, e: &Expr) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn member(&self, i: usize) -> &Expr {
        &self.members[i]
    }

    pub fn successors(&self, i: usize) -> &[(FlClause, usize)] {
        &self.successors[i]
    }

    /// All members reachable from member `i` (including `i`).
    pub fn reachable_from(&self, i: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![i];
        seen[i] = true;
        while let Some(x) = stack.pop() {
            for &(_, y) in &self.successors[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// Computes FL(e). Fails on open input.
pub fn fl_closure(e: &Expr) -> Result<FlClosure, ExprError> {
    FlClosure::of_many([e])
}

impl FlClosure {
    /// The union of the closures of several expressions. Members keep
    /// breadth-first order from the roots taken in the order given; the
    /// first root is [`FlClosure::root`].
    pub fn of_many<'a, I: IntoIterator<Item = &'a Expr>>(roots: I) -> Result<FlClosure, ExprError> {
        let roots: Vec<&Expr> = roots.into_iter().collect();
        for r in &roots {
            r.require_closed()?;
        }
        Ok(closure_unchecked(&roots))
    }
}

fn closure_unchecked(roots: &[&Expr]) -> FlClosure {
    let mut members: Vec<Expr> = vec![];
    let mut index: HashMap<Expr, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for r in roots {
        if !index.contains_key(*r) {
            index.insert((*r).clone(), members.len());
            queue.push_back(members.len());
            members.push((*r).clone());
        }
    }
    let mut successors: Vec<Vec<(FlClause, usize)>> = vec![];
    while let Some(i) = queue.pop_front() {
        let mut out = vec![];
        for (clause, s) in fl_steps(&members[i]) {
            let j = match index.get(&s) {
                Some(&j) => j,
                None => {
                    let j = members.len();
                    index.insert(s.clone(), j);
                    members.push(s);
                    queue.push_back(j);
                    j
                }
            };
            out.push((clause, j));
        }
        if successors.len() <= i {
            successors.resize(i + 1, vec![]);
        }
        successors[i] = out;
    }
    successors.resize(members.len(), vec![]);
    FlClosure { members, index, successors }
}

/// `e ≤_FL f`: `e` is reachable from `f` by zero or more closure steps.
pub fn fl_leq(e: &Expr, f: &Expr) -> Result<bool, ExprError> {
    e.require_closed()?;
    Ok(fl_closure(f)?.contains(e))
}

/// `e <_FL f`: `e ≤_FL f` but not `f ≤_FL e`.
pub fn fl_lt(e: &Expr, f: &Expr) -> Result<bool, ExprError> {
    Ok(fl_leq(e, f)? && !fl_leq(f, e)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DependencyOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Lexicographic product of `≤_FL` with reverse subformula order.
pub fn compare_dependency(e: &Expr, f: &Expr) -> Result<DependencyOrdering, ExprError> {
    if e == f {
        e.require_closed()?;
        return Ok(DependencyOrdering::Equal);
    }
    let ef = fl_leq(e, f)?;
    let fe = fl_leq(f, e)?;
    Ok(match (ef, fe) {
        (true, false) => DependencyOrdering::Less,
        (false, true) => DependencyOrdering::Greater,
        (false, false) => DependencyOrdering::Incomparable,
        (true, true) => {
            if f.is_subformula_of(e) {
                DependencyOrdering::Less
            } else if e.is_subformula_of(f) {
                DependencyOrdering::Greater
            } else {
                DependencyOrdering::Incomparable
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, Alphabet};

    fn p(s: &str) -> Expr {
        parse(s, &Alphabet::new("ab").unwrap()).unwrap()
    }

    #[test]
    fn closure_of_mu_ax() {
        let e = p("mu X. a X");
        let fl = fl_closure(&e).unwrap();
        assert_eq!(fl.members(), &[e.clone(), Expr::letter('a', e.clone())]);
        assert_eq!(fl.successors(0), &[(FlClause::Unfold, 1)]);
        assert_eq!(fl.successors(1), &[(FlClause::LetterStep, 0)]);
    }

    #[test]
    fn closure_of_zero() {
        let fl = fl_closure(&Expr::Zero).unwrap();
        assert_eq!(fl.members(), &[Expr::Zero]);
    }

    #[test]
    fn closure_of_i_a() {
        let i_a = p("i_a");
        let i_a1 = p("i_a'");
        let fl = fl_closure(&i_a).unwrap();
        for m in [&i_a, &i_a1, &Expr::letter('a', i_a.clone()), &Expr::letter('b', i_a1.clone())] {
            assert!(fl.contains(m), "missing {m}");
        }
        assert!(fl.len() <= i_a.size());
    }

    #[test]
    fn closure_rejects_open() {
        assert!(fl_closure(&Expr::var("X")).is_err());
    }

    #[test]
    fn fl_order_examples() {
        let e = p("mu X. a X");
        let ae = Expr::letter('a', e.clone());
        assert!(fl_leq(&ae, &e).unwrap());
        assert!(fl_leq(&e, &e).unwrap());
        assert!(!fl_lt(&ae, &e).unwrap());
        let g = p("mu X. a X + 0");
        assert!(fl_lt(&Expr::Zero, &g).unwrap());
    }

    #[test]
    fn dependency_examples() {
        let e = p("mu X. a X");
        let ae = Expr::letter('a', e.clone());
        assert_eq!(compare_dependency(&e, &e).unwrap(), DependencyOrdering::Equal);
        assert_eq!(compare_dependency(&ae, &e).unwrap(), DependencyOrdering::Less);
        assert_eq!(compare_dependency(&e, &ae).unwrap(), DependencyOrdering::Greater);
        assert_eq!(compare_dependency(&Expr::Zero, &Expr::Top).unwrap(), DependencyOrdering::Incomparable);
    }
}
