use std::fmt::Write;

use super::parse::{act_entry, Structure};
use crate::functor::{FinSet, FunctorExpr};
use crate::mixed_gf::MooreCoalgebra;
use crate::structures::{FinAlgebra, PointedSuccAlgebra, StepCoalgebra};

const KEYWORDS: [&str; 1] = ["stop"];

/// A name as it must appear in the text format.
pub fn quote(name: &str) -> String {
    let plain = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '.' | '*' | '^' | '+'))
        && !KEYWORDS.contains(&name);
    if plain {
        name.to_string()
    } else {
        format!("\"{name}\"")
    }
}

fn names(set: &FinSet) -> Vec<String> {
    set.names().iter().map(|n| quote(n)).collect()
}

pub fn print_algebra(a: &PointedSuccAlgebra) -> String {
    let n = names(a.carrier());
    let succ: Vec<String> = (0..a.len()).map(|i| format!("{}->{}", n[i], n[a.succ(i)])).collect();
    format!(
        "algebra idsucc {{ elements {}; zero {}; succ {} }}\n",
        n.join(" "),
        n[a.zero()],
        succ.join(" ")
    )
}

pub fn print_coalgebra(c: &StepCoalgebra) -> String {
    let n = names(c.carrier());
    let step: Vec<String> = (0..c.len())
        .map(|i| format!("{}->{}", n[i], c.step(i).map_or("stop", |j| n[j].as_str())))
        .collect();
    format!(
        "coalgebra idsucc {{ elements {}; step {} }}\n",
        n.join(" "),
        step.join(" ")
    )
}

pub fn print_automaton(m: &MooreCoalgebra) -> String {
    let q = names(m.states());
    let s = names(m.alphabet());
    let accept: Vec<&str> = (0..m.len()).filter(|&i| m.accepts(i)).map(|i| q[i].as_str()).collect();
    let mut delta = Vec::new();
    for i in 0..m.len() {
        for (j, l) in s.iter().enumerate() {
            delta.push(format!("{},{}->{}", q[i], l, q[m.delta(i, j)]));
        }
    }
    let mut out = format!("automaton {{ alphabet {}; states {}; ", s.join(" "), q.join(" "));
    if !accept.is_empty() {
        write!(out, "accept {}; ", accept.join(" ")).unwrap();
    }
    writeln!(out, "delta {} }}", delta.join(" ")).unwrap();
    out
}

/// Prints an algebra of `(2 × X^Σ) + 1`; `None` for any other functor.
pub fn print_gf_algebra(a: &FinAlgebra) -> Option<String> {
    let FunctorExpr::Comp(outer, inner) = a.functor() else {
        return None;
    };
    let FunctorExpr::Prod(_, exp) = inner.as_ref() else {
        return None;
    };
    let FunctorExpr::Exp(alphabet) = exp.as_ref() else {
        return None;
    };
    if !outer.is_id_plus_one() || *a.functor() != crate::mixed_gf::gf_functor(alphabet) {
        return None;
    }
    let n = names(a.carrier());
    let dom = a.alpha().domain();
    let mut stop = String::new();
    let mut acts = Vec::new();
    for (i, u) in dom.iter().enumerate() {
        let target = &n[a.alpha().image_index(i)];
        match act_entry(u).as_str() {
            "stop" => stop = target.clone(),
            lhs => acts.push(format!("{lhs} -> {target}")),
        }
    }
    Some(format!(
        "gfalgebra {{ alphabet {}; elements {}; stop -> {}; act {} }}\n",
        names(alphabet).join(" "),
        n.join(" "),
        stop,
        acts.join(", ")
    ))
}

/// The state graph of an `X + 1` coalgebra in DOT; stopping states are boxes.
pub fn coalgebra_dot(c: &StepCoalgebra) -> String {
    let mut out = String::from("digraph coalgebra {\n  rankdir=LR;\n");
    for i in 0..c.len() {
        let shape = if c.step(i).is_none() { "box" } else { "circle" };
        writeln!(out, "  s{i} [shape={shape}, label=\"{}\"];", c.carrier().get(i)).unwrap();
    }
    for i in 0..c.len() {
        if let Some(j) = c.step(i) {
            writeln!(out, "  s{i} -> s{j};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn print_structure(s: &Structure) -> String {
    match s {
        Structure::Functor(f) => format!("functor {f}\n"),
        Structure::Algebra(a) => print_algebra(a),
        Structure::Coalgebra(c) => print_coalgebra(c),
        Structure::Automaton(m) => print_automaton(m),
        Structure::GfAlgebra(a) => print_gf_algebra(a).expect("gf algebra"),
    }
}
