//! S-expression syntax for functor expressions.
//!
//! ```text
//! F ::= id | idsucc
//!     | (const unit) | (const bool and|or|xor) | (const zN add|mul)
//!     | (prod F F) | (sum F (const ...)) | (comp F F)
//!     | (exp a b ...) | (exp (a b ...))
//! ```
//!
//! `idsucc` abbreviates `(sum id (const unit))`.

use std::str::FromStr;

use super::elem::FinSet;
use super::expr::FunctorExpr;
use super::monoid::ConstMonoid;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn tokenize(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(c.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn read(tokens: &[String], pos: &mut usize) -> Result<Sexp> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::Invalid("unexpected end of functor expression".into()))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(read(tokens, pos)?),
                    None => return Err(Error::Invalid("unbalanced parenthesis".into())),
                }
            }
        }
        ")" => Err(Error::Invalid("unexpected ')'".into())),
        atom => Ok(Sexp::Atom(atom.to_string())),
    }
}

fn atom(s: &Sexp) -> Option<&str> {
    match s {
        Sexp::Atom(a) => Some(a),
        Sexp::List(_) => None,
    }
}

fn monoid(args: &[Sexp]) -> Result<ConstMonoid> {
    let words: Vec<&str> = args
        .iter()
        .map(|a| atom(a).ok_or_else(|| Error::Invalid("monoid names are atoms".into())))
        .collect::<Result<_>>()?;
    match words.as_slice() {
        ["unit"] | ["one"] => Ok(ConstMonoid::unit()),
        ["bool", "and"] => Ok(ConstMonoid::bool_and()),
        ["bool", "or"] => Ok(ConstMonoid::bool_or()),
        ["bool", "xor"] => Ok(ConstMonoid::bool_xor()),
        [z, op] if z.starts_with('z') => {
            let n: usize = z[1..]
                .parse()
                .map_err(|_| Error::Invalid(format!("bad modulus in {z}")))?;
            match *op {
                "add" => ConstMonoid::zmod_add(n),
                "mul" => ConstMonoid::zmod_mul(n),
                other => Err(Error::Invalid(format!("unknown operation {other}"))),
            }
        }
        _ => Err(Error::Invalid(format!("unknown monoid `{}`", words.join(" ")))),
    }
}

fn convert(s: &Sexp) -> Result<FunctorExpr> {
    match s {
        Sexp::Atom(a) => match a.as_str() {
            "id" => Ok(FunctorExpr::Id),
            "idsucc" => Ok(FunctorExpr::id_plus_one()),
            other => Err(Error::Invalid(format!("unknown functor `{other}`"))),
        },
        Sexp::List(items) => {
            let (head, args) = items
                .split_first()
                .ok_or_else(|| Error::Invalid("empty functor expression".into()))?;
            let head = atom(head).ok_or_else(|| Error::Invalid("functor head must be an atom".into()))?;
            let arity = |n: usize| -> Result<()> {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(Error::Invalid(format!(
                        "`{head}` takes {n} arguments, got {}",
                        args.len()
                    )))
                }
            };
            match head {
                "const" => Ok(FunctorExpr::Const(monoid(args)?)),
                "prod" => {
                    arity(2)?;
                    Ok(FunctorExpr::prod(convert(&args[0])?, convert(&args[1])?))
                }
                "comp" => {
                    arity(2)?;
                    Ok(FunctorExpr::comp(convert(&args[0])?, convert(&args[1])?))
                }
                "sum" => {
                    arity(2)?;
                    match convert(&args[1])? {
                        FunctorExpr::Const(m) => Ok(FunctorExpr::sum(convert(&args[0])?, m)),
                        other => Err(Error::Invalid(format!(
                            "the right summand must be a constant monoid, got {other}"
                        ))),
                    }
                }
                "exp" => {
                    let letters: Vec<&Sexp> = match args {
                        [Sexp::List(inner)] => inner.iter().collect(),
                        _ => args.iter().collect(),
                    };
                    let names = letters
                        .into_iter()
                        .map(|l| atom(l).map(str::to_string))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| Error::Invalid("exponent base lists atoms".into()))?;
                    Ok(FunctorExpr::Exp(FinSet::atoms(names)?))
                }
                other => Err(Error::Invalid(format!("unknown functor constructor `{other}`"))),
            }
        }
    }
}

impl FromStr for FunctorExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s);
        let mut pos = 0;
        let sexp = read(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Invalid("trailing input after functor expression".into()));
        }
        convert(&sexp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_forms() {
        let f: FunctorExpr = "(sum id (const unit))".parse().unwrap();
        assert!(f.is_id_plus_one());
        assert_eq!("idsucc".parse::<FunctorExpr>().unwrap(), f);

        let g: FunctorExpr = "(sum id (const bool and))".parse().unwrap();
        assert_eq!(g.to_string(), "(sum id (const bool and))");

        let aut: FunctorExpr = "(prod (const bool and) (exp sigma))".parse().unwrap();
        assert_eq!(aut, FunctorExpr::automaton(FinSet::atoms(["sigma"]).unwrap()));
        let aut2: FunctorExpr = "(prod (const bool and) (exp (a b)))".parse().unwrap();
        assert_eq!(aut2.to_string(), "(prod (const bool and) (exp a b))");
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "id",
            "(const z3 add)",
            "(comp (sum id (const unit)) (sum id (const unit)))",
            "(prod id (exp a b c))",
            "(sum (prod id id) (const bool or))",
        ] {
            let f: FunctorExpr = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
            assert_eq!(f.to_string().parse::<FunctorExpr>().unwrap(), f);
        }
    }

    #[test]
    fn rejects_malformed_expressions() {
        for s in [
            "",
            "(prod id)",
            "(sum id id)",
            "(const bool nand)",
            "(id",
            "id)",
            "(exp (a a))",
        ] {
            assert!(s.parse::<FunctorExpr>().is_err(), "{s} should not parse");
        }
    }
}
