use std::collections::BTreeSet;
use std::fmt::{self, Write};

use super::{Expr, Var};

const BASE_NAMES: [&str; 6] = ["X", "Y", "Z", "U", "V", "W"];

struct Printer {
    free: BTreeSet<String>,
    binders: Vec<String>,
}

impl Printer {
    fn fresh(&self) -> String {
        let depth = self.binders.len();
        let mut k = depth;
        loop {
            let name = if k < BASE_NAMES.len() { BASE_NAMES[k].to_string() } else { format!("X{k}") };
            if !self.free.contains(&name) && !self.binders.contains(&name) {
                return name;
            }
            k += 1;
        }
    }

    /// `prec`: 0 inside a sum, 1 inside a cap, 2 under a letter.
    /// `tail`: nothing is printed after this subterm before the enclosing
    /// parenthesis or the end, so a binder may extend freely.
    fn go(&mut self, out: &mut String, e: &Expr, prec: u8, tail: bool) -> fmt::Result {
        match e {
            Expr::Zero => out.write_str("0"),
            Expr::Top => out.write_str("T"),
            Expr::Var(Var::Free(x)) => out.write_str(x),
            Expr::Var(Var::Bound(k)) => {
                let i = self.binders.len() - 1 - *k as usize;
                let name = self.binders[i].clone();
                out.write_str(&name)
            }
            Expr::Letter(a, body) => {
                write!(out, "{a} ")?;
                self.go(out, body, 2, tail)
            }
            Expr::Plus(l, r) => self.binary(out, l, r, " + ", 0, prec, tail),
            Expr::Cap(l, r) => self.binary(out, l, r, " & ", 1, prec, tail),
            Expr::Mu(body) | Expr::Nu(body) => {
                let kw = if matches!(e, Expr::Mu(_)) { "mu" } else { "nu" };
                if !tail {
                    out.write_char('(')?;
                }
                let x = self.fresh();
                write!(out, "{kw} {x}. ")?;
                self.binders.push(x);
                self.go(out, body, 0, true)?;
                self.binders.pop();
                if !tail {
                    out.write_char(')')?;
                }
                Ok(())
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn binary(
        &mut self,
        out: &mut String,
        l: &Expr,
        r: &Expr,
        op: &str,
        level: u8,
        prec: u8,
        tail: bool,
    ) -> fmt::Result {
        let paren = prec > level;
        let tail = paren || tail;
        if paren {
            out.write_char('(')?;
        }
        self.go(out, l, level, false)?;
        out.write_str(op)?;
        self.go(out, r, level + 1, tail)?;
        if paren {
            out.write_char(')')?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = Printer { free: self.free_vars(), binders: vec![] };
        let mut out = String::new();
        p.go(&mut out, self, 0, true)?;
        f.write_str(&out)
    }
}
