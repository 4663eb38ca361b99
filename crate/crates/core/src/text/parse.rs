use std::collections::BTreeMap;

use super::diag::{Code, Diagnostic};
use super::lexer::{lex, Tok, Token};
use crate::functor::{Elem, FinMap, FinSet, FunctorExpr};
use crate::mixed_gf::{gf_functor, MooreCoalgebra};
use crate::structures::{FinAlgebra, PointedSuccAlgebra, StepCoalgebra};

/// Anything a structure file can define.
#[derive(Clone, Debug, PartialEq)]
pub enum Structure {
    Functor(FunctorExpr),
    Algebra(PointedSuccAlgebra),
    Coalgebra(StepCoalgebra),
    Automaton(MooreCoalgebra),
    GfAlgebra(FinAlgebra),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Functor,
    Algebra,
    Coalgebra,
    Automaton,
    GfAlgebra,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Functor => "functor",
            Kind::Algebra => "algebra",
            Kind::Coalgebra => "coalgebra",
            Kind::Automaton => "automaton",
            Kind::GfAlgebra => "gfalgebra",
        }
    }
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Functor(_) => Kind::Functor,
            Structure::Algebra(_) => Kind::Algebra,
            Structure::Coalgebra(_) => Kind::Coalgebra,
            Structure::Automaton(_) => Kind::Automaton,
            Structure::GfAlgebra(_) => Kind::GfAlgebra,
        }
    }
}

/// Parses exactly one structure.
///
/// ```text
/// functor (prod (const bool and) (exp a b))
/// algebra idsucc { elements a b c; zero a; succ a->b b->c c->c }
/// coalgebra idsucc { elements x y; step x->stop y->x }
/// automaton { alphabet a b; states q0 q1; accept q0; delta q0,a->q1 q0,b->q0 q1,a->q1 q1,b->q0 }
/// gfalgebra { alphabet a; elements x y; stop -> x; act 0 x -> x, 0 y -> y, 1 x -> y, 1 y -> y }
/// ```
pub fn parse_structure(text: &str) -> Result<Structure, Diagnostic> {
    let tokens = lex(text)?;
    let mut p = Parser::new(tokens, text);
    let s = p.structure()?;
    if let Some(t) = p.peek() {
        return Err(p.err_at(
            t,
            Code::Syntax,
            format!("expected end of input, found {}", t.describe()),
        ));
    }
    Ok(s)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

/// A clause `keyword item item ... ;` with its keyword token.
struct Clause {
    head: Token,
    body: Vec<Token>,
}

impl Parser {
    fn new(tokens: Vec<Token>, text: &str) -> Self {
        let line = text.lines().count().max(1);
        let col = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
        Parser {
            tokens,
            pos: 0,
            end: (line, col),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err_at(&self, t: &Token, code: Code, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::new(code, msg, t.line, t.col)
    }

    fn next(&mut self, what: &str) -> Result<Token, Diagnostic> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(Diagnostic::new(
                Code::Syntax,
                format!("unexpected end of input, expected {what}"),
                self.end.0,
                self.end.1,
            )),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, Diagnostic> {
        let t = self.next(what)?;
        if t.tok == tok {
            Ok(t)
        } else {
            Err(self.err_at(&t, Code::Syntax, format!("expected {what}, found {}", t.describe())))
        }
    }

    fn structure(&mut self) -> Result<Structure, Diagnostic> {
        let head = self.next("a structure keyword")?;
        let kw = match &head.tok {
            Tok::Word(w) => w.clone(),
            _ => {
                return Err(self.err_at(
                    &head,
                    Code::Syntax,
                    format!("expected a structure keyword, found {}", head.describe()),
                ))
            }
        };
        match kw.as_str() {
            "functor" => {
                let f = self.functor_expr()?;
                Ok(Structure::Functor(f.1))
            }
            "algebra" | "coalgebra" => {
                let (ft, f) = self.functor_expr()?;
                if !f.is_id_plus_one() {
                    return Err(self.err_at(
                        &ft,
                        Code::UnsupportedFunctor,
                        format!("only idsucc {kw}s have a text format, found {f}"),
                    ));
                }
                let (clauses, close) = self.block()?;
                if kw == "algebra" {
                    build_algebra(clauses, &close).map(Structure::Algebra)
                } else {
                    build_coalgebra(clauses, &close).map(Structure::Coalgebra)
                }
            }
            "automaton" => {
                let (clauses, close) = self.block()?;
                build_automaton(clauses, &close).map(Structure::Automaton)
            }
            "gfalgebra" => {
                let (clauses, close) = self.block()?;
                build_gf(clauses, &close).map(Structure::GfAlgebra)
            }
            _ => Err(self.err_at(&head, Code::Syntax, format!("unknown structure keyword `{kw}`"))),
        }
    }

    fn functor_expr(&mut self) -> Result<(Token, FunctorExpr), Diagnostic> {
        let t = self.next("a functor")?;
        let src = match &t.tok {
            Tok::Word(w) => w.clone(),
            Tok::Sexpr(s) => s.clone(),
            _ => return Err(self.err_at(&t, Code::Syntax, format!("expected a functor, found {}", t.describe()))),
        };
        match src.parse::<FunctorExpr>() {
            Ok(f) => Ok((t, f)),
            Err(e) => Err(self.err_at(&t, Code::UnsupportedFunctor, e.to_string())),
        }
    }

    fn block(&mut self) -> Result<(Vec<Clause>, Token), Diagnostic> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut clauses = Vec::new();
        loop {
            let t = self.next("a clause or `}`")?;
            match &t.tok {
                Tok::RBrace => return Ok((clauses, t)),
                Tok::Semi => continue,
                Tok::Word(_) => {
                    let mut body = Vec::new();
                    while let Some(n) = self.peek() {
                        if matches!(n.tok, Tok::Semi | Tok::RBrace) {
                            break;
                        }
                        if matches!(n.tok, Tok::LBrace) {
                            return Err(self.err_at(n, Code::Syntax, "unexpected `{` inside a clause"));
                        }
                        body.push(n.clone());
                        self.pos += 1;
                    }
                    clauses.push(Clause { head: t, body });
                }
                _ => {
                    return Err(self.err_at(
                        &t,
                        Code::Syntax,
                        format!("expected a clause keyword, found {}", t.describe()),
                    ))
                }
            }
        }
    }
}

fn err(t: &Token, code: Code, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(code, msg, t.line, t.col)
}

/// Splits clauses by keyword, rejecting unknown or repeated ones.
fn by_keyword<'a>(clauses: &'a [Clause], allowed: &[&str]) -> Result<BTreeMap<&'a str, &'a Clause>, Diagnostic> {
    let mut out: BTreeMap<&str, &Clause> = BTreeMap::new();
    for c in clauses {
        let Tok::Word(k) = &c.head.tok else {
            unreachable!("clause heads are words")
        };
        if !allowed.contains(&k.as_str()) {
            return Err(err(
                &c.head,
                Code::Syntax,
                format!("unknown clause `{k}`, expected one of: {}", allowed.join(", ")),
            ));
        }
        if out.insert(k.as_str(), c).is_some() {
            return Err(err(&c.head, Code::DuplicateName, format!("clause `{k}` given twice")));
        }
    }
    Ok(out)
}

fn required<'a>(m: &BTreeMap<&str, &'a Clause>, key: &str, close: &Token) -> Result<&'a Clause, Diagnostic> {
    m.get(key)
        .copied()
        .ok_or_else(|| err(close, Code::NonTotal, format!("missing `{key}` clause")))
}

/// A list of distinct names.
fn name_list(c: &Clause, what: &str) -> Result<(FinSet, Vec<String>), Diagnostic> {
    let mut names: Vec<String> = Vec::new();
    for t in &c.body {
        let Some(n) = t.name() else {
            return Err(err(
                t,
                Code::Syntax,
                format!("expected {what} name, found {}", t.describe()),
            ));
        };
        if names.iter().any(|m| m == n) {
            return Err(err(t, Code::DuplicateName, format!("{what} `{n}` declared twice")));
        }
        names.push(n.to_string());
    }
    let set = FinSet::atoms(names.clone()).expect("names are distinct");
    Ok((set, names))
}

fn lookup(set: &FinSet, t: &Token, what: &str) -> Result<usize, Diagnostic> {
    let Some(n) = t.name() else {
        return Err(err(
            t,
            Code::Syntax,
            format!("expected {what} name, found {}", t.describe()),
        ));
    };
    set.position_of_name(n)
        .ok_or_else(|| err(t, Code::UnknownElement, format!("unknown {what} `{n}`")))
}

/// `lhs -> rhs` pairs, where `lhs` may be several tokens and entries are
/// separated by whitespace or commas.
fn arrows(c: &Clause, lhs_len: usize) -> Result<Vec<(Vec<Token>, Token)>, Diagnostic> {
    let mut out = Vec::new();
    let mut i = 0;
    let body = &c.body;
    while i < body.len() {
        if body[i].tok == Tok::Comma {
            i += 1;
            continue;
        }
        let mut lhs = Vec::new();
        while lhs.len() < lhs_len {
            let Some(t) = body.get(i) else {
                return Err(err(&c.head, Code::Syntax, "incomplete entry at end of clause"));
            };
            if matches!(t.tok, Tok::Arrow) {
                return Err(err(t, Code::Syntax, "entry is missing arguments before `->`"));
            }
            lhs.push(t.clone());
            i += 1;
        }
        match body.get(i) {
            Some(t) if t.tok == Tok::Arrow => i += 1,
            Some(t) => return Err(err(t, Code::Syntax, format!("expected `->`, found {}", t.describe()))),
            None => return Err(err(&body[i - 1], Code::Syntax, "expected `->` at end of clause")),
        }
        let Some(rhs) = body.get(i) else {
            return Err(err(&body[i - 1], Code::Syntax, "expected a target after `->`"));
        };
        out.push((lhs, rhs.clone()));
        i += 1;
    }
    Ok(out)
}

/// Fills a table from arrow entries keyed by one element, rejecting
/// conflicting repeats and reporting the first missing key.
fn unary_table(
    c: &Clause,
    dom: &FinSet,
    close: &Token,
    rhs: impl Fn(&Token) -> Result<usize, Diagnostic>,
) -> Result<Vec<usize>, Diagnostic> {
    let mut table: Vec<Option<usize>> = vec![None; dom.len()];
    for (lhs, r) in arrows(c, 1)? {
        let i = lookup(dom, &lhs[0], "element")?;
        let v = rhs(&r)?;
        if table[i].is_some_and(|old| old != v) {
            return Err(err(
                &lhs[0],
                Code::DuplicateName,
                format!("`{}` is given two images", dom.get(i)),
            ));
        }
        table[i] = Some(v);
    }
    table
        .iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| err(close, Code::NonTotal, format!("no image given for `{}`", dom.get(i)))))
        .collect()
}

fn build_algebra(clauses: Vec<Clause>, close: &Token) -> Result<PointedSuccAlgebra, Diagnostic> {
    let m = by_keyword(&clauses, &["elements", "zero", "succ"])?;
    let (carrier, _) = name_list(required(&m, "elements", close)?, "element")?;
    let zc = required(&m, "zero", close)?;
    let zero = match zc.body.as_slice() {
        [t] => lookup(&carrier, t, "element")?,
        _ => return Err(err(&zc.head, Code::Syntax, "`zero` takes exactly one element")),
    };
    let succ = unary_table(required(&m, "succ", close)?, &carrier, close, |t| {
        lookup(&carrier, t, "element")
    })?;
    Ok(PointedSuccAlgebra::new(carrier, zero, succ).expect("validated"))
}

fn build_coalgebra(clauses: Vec<Clause>, close: &Token) -> Result<StepCoalgebra, Diagnostic> {
    let m = by_keyword(&clauses, &["elements", "step"])?;
    let (carrier, _) = name_list(required(&m, "elements", close)?, "element")?;
    let stop = carrier.len();
    let step = unary_table(required(&m, "step", close)?, &carrier, close, |t| {
        if t.is_word("stop") {
            Ok(stop)
        } else {
            lookup(&carrier, t, "element")
        }
    })?;
    let step = step.into_iter().map(|s| (s != stop).then_some(s)).collect();
    Ok(StepCoalgebra::new(carrier, step).expect("validated"))
}

fn build_automaton(clauses: Vec<Clause>, close: &Token) -> Result<MooreCoalgebra, Diagnostic> {
    let m = by_keyword(&clauses, &["alphabet", "states", "accept", "delta"])?;
    let (alphabet, _) = name_list(required(&m, "alphabet", close)?, "letter")?;
    let (states, _) = name_list(required(&m, "states", close)?, "state")?;
    let mut accept = vec![false; states.len()];
    if let Some(c) = m.get("accept") {
        for t in &c.body {
            accept[lookup(&states, t, "state")?] = true;
        }
    }
    let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet.len()]; states.len()];
    if let Some(c) = m.get("delta") {
        for (lhs, r) in arrows(c, 3)? {
            if lhs[1].tok != Tok::Comma {
                return Err(err(
                    &lhs[1],
                    Code::Syntax,
                    format!("expected `,`, found {}", lhs[1].describe()),
                ));
            }
            let q = lookup(&states, &lhs[0], "state")?;
            let s = lookup(&alphabet, &lhs[2], "letter")?;
            let t = lookup(&states, &r, "state")?;
            if delta[q][s].is_some_and(|old| old != t) {
                return Err(err(&lhs[0], Code::DuplicateName, "transition given twice"));
            }
            delta[q][s] = Some(t);
        }
    }
    let mut table = Vec::with_capacity(states.len());
    for (q, row) in delta.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (s, t) in row.iter().enumerate() {
            out.push(t.ok_or_else(|| {
                err(
                    close,
                    Code::NonTotal,
                    format!("no transition from `{}` on `{}`", states.get(q), alphabet.get(s)),
                )
            })?);
        }
        table.push(out);
    }
    Ok(MooreCoalgebra::new(states, alphabet, accept, table).expect("validated"))
}

fn build_gf(clauses: Vec<Clause>, close: &Token) -> Result<FinAlgebra, Diagnostic> {
    let m = by_keyword(&clauses, &["alphabet", "elements", "stop", "act"])?;
    let (alphabet, _) = name_list(required(&m, "alphabet", close)?, "letter")?;
    let (carrier, _) = name_list(required(&m, "elements", close)?, "element")?;
    let f = gf_functor(&alphabet);
    let dom = f.eval_on_set(&carrier);
    let mut images: Vec<Option<usize>> = vec![None; dom.len()];

    let sc = required(&m, "stop", close)?;
    let stop_target = match sc.body.as_slice() {
        [a, t] if a.tok == Tok::Arrow => lookup(&carrier, t, "element")?,
        _ => return Err(err(&sc.head, Code::Syntax, "expected `stop -> element`")),
    };
    let stop_pos = dom.position(&Elem::inr(Elem::star())).expect("stop tag");
    images[stop_pos] = Some(stop_target);

    if let Some(c) = m.get("act") {
        for (lhs, r) in arrows(c, 1 + alphabet.len())? {
            let bit = match lhs[0].name() {
                Some(b @ ("0" | "1")) => b.to_string(),
                _ => {
                    return Err(err(
                        &lhs[0],
                        Code::Syntax,
                        format!("expected `0` or `1`, found {}", lhs[0].describe()),
                    ))
                }
            };
            let mut xs = Vec::with_capacity(alphabet.len());
            for t in &lhs[1..] {
                xs.push(carrier.get(lookup(&carrier, t, "element")?).clone());
            }
            let u = Elem::inl(Elem::pair(Elem::atom(bit), Elem::Fun(xs)));
            let i = dom.position(&u).expect("well-typed entry");
            let v = lookup(&carrier, &r, "element")?;
            if images[i].is_some_and(|old| old != v) {
                return Err(err(&lhs[0], Code::DuplicateName, "entry given twice"));
            }
            images[i] = Some(v);
        }
    }
    let mut out = Vec::with_capacity(images.len());
    for (i, v) in images.iter().enumerate() {
        match v {
            Some(v) => out.push(*v),
            None => {
                return Err(err(
                    close,
                    Code::NonTotal,
                    format!("no image given for `{}`", act_entry(dom.get(i))),
                ));
            }
        }
    }
    let alpha = FinMap::new(dom, carrier.clone(), out).expect("validated");
    Ok(FinAlgebra::new(f, carrier, alpha).expect("validated"))
}

/// `act` left-hand side for an element of `(2 × X^Σ) + 1`, or `stop`.
pub(crate) fn act_entry(u: &Elem) -> String {
    match u {
        Elem::Inl(v) => {
            let (b, g) = v.as_pair().expect("pair");
            let Elem::Fun(xs) = g else { panic!("function expected") };
            let mut s = b.to_string();
            for x in xs {
                s.push(' ');
                s.push_str(&super::print::quote(&x.to_string()));
            }
            s
        }
        _ => "stop".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::std_algebra;

    fn algebra(s: &str) -> PointedSuccAlgebra {
        match parse_structure(s).unwrap() {
            Structure::Algebra(a) => a,
            other => panic!("not an algebra: {other:?}"),
        }
    }

    fn diag(s: &str) -> Diagnostic {
        parse_structure(s).unwrap_err()
    }

    #[test]
    fn chain_algebra() {
        let a = algebra("algebra idsucc { elements 0 1 2; zero 0; succ 0->1 1->2 2->2 }");
        assert_eq!(a, std_algebra(2));
    }

    #[test]
    fn coalgebra_stepping() {
        let Structure::Coalgebra(c) = parse_structure("coalgebra idsucc { elements 0 1; step 0->stop 1->0 }").unwrap()
        else {
            panic!()
        };
        assert_eq!(c.step(0), None);
        assert_eq!(c.step(1), Some(0));
    }

    #[test]
    fn unknown_element_position() {
        let d = diag("algebra idsucc { elements a; zero a;\n succ a->b }");
        assert_eq!((d.code, d.line, d.col), (Code::UnknownElement, 2, 10));
    }

    #[test]
    fn codes() {
        assert_eq!(
            diag("algebra idsucc { elements a b; zero a; succ a->b }").code,
            Code::NonTotal
        );
        assert_eq!(
            diag("algebra idsucc { elements a a; zero a; succ a->a }").code,
            Code::DuplicateName
        );
        assert_eq!(
            diag("algebra idsucc { elements a; zero a; succ a->a a->a; zero a }").code,
            Code::DuplicateName
        );
        assert_eq!(
            diag("algebra (prod id id) { elements a }").code,
            Code::UnsupportedFunctor
        );
        assert_eq!(diag("algebra nope { elements a }").code, Code::UnsupportedFunctor);
        assert_eq!(
            diag("algebra idsucc { elements a; zero a; succ a b }").code,
            Code::Syntax
        );
        assert_eq!(
            diag("algebra idsucc { elements a; zero a; succ a->a").code,
            Code::Syntax
        );
        assert_eq!(
            diag("algebra idsucc { elements a; zero a; succ a->a } extra").code,
            Code::Syntax
        );
        assert_eq!(
            diag("algebra idsucc { elements a; zero a; succ a->a; frob a }").code,
            Code::Syntax
        );
    }

    #[test]
    fn sexpr_functor_tag() {
        let a = algebra("algebra (sum id (const unit)) { elements a; zero a; succ a->a }");
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn automaton_format() {
        let Structure::Automaton(m) = parse_structure(
            "automaton { alphabet a b; states q0 q1; accept q0; delta q0,a->q1 q0,b->q0 q1,a->q1 q1,b->q0 }",
        )
        .unwrap() else {
            panic!()
        };
        assert!(m.accepts(0) && !m.accepts(1));
        assert_eq!(m.delta(0, 0), 1);
        assert_eq!(m.delta(1, 1), 0);
        let d = diag("automaton { alphabet a; states q; delta }");
        assert_eq!(d.code, Code::NonTotal);
    }

    #[test]
    fn gf_format() {
        let Structure::GfAlgebra(a) = parse_structure(
            "gfalgebra { alphabet s; elements x y; stop -> x; act 0 x -> x, 0 y -> y, 1 x -> y, 1 y -> y }",
        )
        .unwrap() else {
            panic!()
        };
        assert_eq!(a.len(), 2);
        let u = Elem::inl(Elem::pair(Elem::atom("1"), Elem::Fun(vec![Elem::atom("x")])));
        assert_eq!(a.act(&u), 1);
        let d = diag("gfalgebra { alphabet s; elements x; stop -> x; act 0 x -> x }");
        assert_eq!(d.code, Code::NonTotal);
        assert!(d.message.contains("1 x"), "{}", d.message);
    }

    #[test]
    fn functor_definition() {
        let s = parse_structure("functor (prod (const bool and) (exp a))").unwrap();
        assert_eq!(
            s,
            Structure::Functor(FunctorExpr::automaton(FinSet::atoms(["a"]).unwrap()))
        );
    }
}
