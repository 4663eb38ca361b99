use std::fmt;

use serde::Serialize;

use crate::error::{check_bound, pow_estimate, Result};
use crate::functor::FinSet;
use crate::search::Csp;
use crate::structures::{LazyAlgebra, PointedSuccAlgebra, StepCoalgebra};

/// `C ▷ A` as a presented algebra.
///
/// Generators are the pairs `c⊗a`, subject to `c⊗0 = 0`, `c⊗(a+1) = 0` when
/// `c` stops and `c⊗(a+1) = (χc⊗a) + 1` otherwise. Congruence classes form a
/// finite graph with at most one successor pointer per class; a class without
/// a pointer starts a free tail. Elements are normal forms `(class, tail)`
/// with `tail > 0` only at classes without a pointer.
#[derive(Clone, Debug)]
pub struct MeasuringTensor {
    coalgebra: StepCoalgebra,
    source: PointedSuccAlgebra,
    names: Vec<String>,
    zero: usize,
    succ: Vec<Option<usize>>,
    generator: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct TensorElem {
    pub class: usize,
    pub tail: u64,
}

/// A pair of rewrites of the same generator whose results differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPair {
    pub generator: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorView {
    pub classes: Vec<TensorClass>,
    pub zero: String,
    pub finite: bool,
    /// `c⊗a` to its class name.
    pub generators: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorClass {
    pub name: String,
    pub succ: Option<String>,
}

struct Closure {
    parent: Vec<usize>,
    succ: Vec<Option<usize>>,
    names: Vec<String>,
}

impl Closure {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn succ_node(&mut self, x: usize) -> usize {
        let r = self.find(x);
        if let Some(s) = self.succ[r] {
            return s;
        }
        let s = self.parent.len();
        self.parent.push(s);
        self.succ.push(None);
        self.names.push(format!("S({})", self.names[r]));
        self.succ[r] = Some(s);
        s
    }

    fn union(&mut self, x: usize, y: usize) {
        let mut pending = vec![(x, y)];
        while let Some((x, y)) = pending.pop() {
            let (rx, ry) = (self.find(x), self.find(y));
            if rx == ry {
                continue;
            }
            // the older node stays the representative
            let (keep, drop) = (rx.min(ry), rx.max(ry));
            self.parent[drop] = keep;
            match (self.succ[keep], self.succ[drop]) {
                (Some(s), Some(t)) => pending.push((s, t)),
                (None, Some(t)) => self.succ[keep] = Some(t),
                _ => {}
            }
        }
    }
}

pub fn measuring_tensor(c: &StepCoalgebra, a: &PointedSuccAlgebra) -> MeasuringTensor {
    let n = a.len();
    let gen = |s: usize, x: usize| 1 + s * n + x;
    let base = 1 + c.len() * n;
    let mut names = vec!["0".to_string()];
    for s in 0..c.len() {
        for x in 0..n {
            names.push(format!("{}⊗{}", c.carrier().get(s), a.carrier().get(x)));
        }
    }
    let mut cl = Closure {
        parent: (0..base).collect(),
        succ: vec![None; base],
        names,
    };
    for s in 0..c.len() {
        cl.union(gen(s, a.zero()), 0);
        for x in 0..n {
            let lhs = gen(s, a.succ(x));
            match c.step(s) {
                None => cl.union(lhs, 0),
                Some(t) => {
                    let rhs = cl.succ_node(gen(t, x));
                    cl.union(lhs, rhs);
                }
            }
        }
    }
    let total = cl.parent.len();
    let roots: Vec<usize> = (0..total).filter(|&v| cl.find(v) == v).collect();
    let mut class_of = vec![usize::MAX; total];
    for (k, &r) in roots.iter().enumerate() {
        class_of[r] = k;
    }
    let class = |cl: &mut Closure, v: usize| class_of[cl.find(v)];
    let succ = roots.iter().map(|&r| cl.succ[r]).collect::<Vec<_>>();
    let succ = succ.into_iter().map(|s| s.map(|t| class(&mut cl, t))).collect();
    let generator = (0..c.len())
        .map(|s| (0..n).map(|x| class(&mut cl, gen(s, x))).collect())
        .collect();
    MeasuringTensor {
        coalgebra: c.clone(),
        source: a.clone(),
        names: roots.iter().map(|&r| cl.names[r].clone()).collect(),
        zero: class(&mut cl, 0),
        succ,
        generator,
    }
}

impl MeasuringTensor {
    pub fn coalgebra(&self) -> &StepCoalgebra {
        &self.coalgebra
    }

    pub fn source(&self) -> &PointedSuccAlgebra {
        &self.source
    }

    pub fn class_count(&self) -> usize {
        self.names.len()
    }

    pub fn class_name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn class_succ(&self, k: usize) -> Option<usize> {
        self.succ[k]
    }

    /// The normal form of `c⊗a`.
    pub fn generator(&self, c: usize, a: usize) -> TensorElem {
        TensorElem {
            class: self.generator[c][a],
            tail: 0,
        }
    }

    /// Finite iff every class has a successor pointer.
    pub fn is_finite(&self) -> bool {
        self.succ.iter().all(Option::is_some)
    }

    pub fn as_finite(&self) -> Option<PointedSuccAlgebra> {
        if !self.is_finite() {
            return None;
        }
        let carrier = FinSet::atoms(self.names.iter().cloned()).expect("class names are distinct");
        let pos: Vec<usize> = self
            .names
            .iter()
            .map(|name| carrier.position_of_name(name).expect("named"))
            .collect();
        let mut succ = vec![0; self.names.len()];
        for (k, s) in self.succ.iter().enumerate() {
            succ[pos[k]] = pos[s.expect("finite")];
        }
        Some(PointedSuccAlgebra::new(carrier, pos[self.zero], succ).expect("valid"))
    }

    /// Every homomorphism `C ▷ A -> B`, as images of the classes.
    pub fn homs_into(&self, b: &PointedSuccAlgebra, bound: u64) -> Result<Vec<Vec<usize>>> {
        check_bound("tensor homomorphisms", pow_estimate(b.len(), self.class_count()), bound)?;
        let mut csp = Csp::new(vec![b.len(); self.class_count()]);
        let z = self.zero;
        csp.add(&[z], move |h| h[z] == b.zero());
        for (k, s) in self.succ.iter().enumerate() {
            if let Some(t) = *s {
                csp.add(&[k, t], move |h| h[t] == b.succ(h[k]));
            }
        }
        Ok(csp.solutions())
    }

    /// The measuring `phi_c(a) = h(c⊗a)` of a homomorphism.
    pub fn hom_to_measuring(&self, h: &[usize]) -> Vec<Vec<usize>> {
        self.generator
            .iter()
            .map(|row| row.iter().map(|&k| h[k]).collect())
            .collect()
    }

    /// Applies a homomorphism to a normal form.
    pub fn apply_hom(&self, b: &PointedSuccAlgebra, h: &[usize], x: TensorElem) -> usize {
        (0..x.tail).fold(h[x.class], |y, _| b.succ(y))
    }

    /// Rewrites each generator by every applicable rule and reports the pairs
    /// that reach different normal forms.
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let a = &self.source;
        let mut out = Vec::new();
        for s in 0..self.coalgebra.len() {
            for x in 0..a.len() {
                let mut results: Vec<(String, TensorElem)> = Vec::new();
                if x == a.zero() {
                    results.push(("0".into(), self.zero()));
                }
                for p in (0..a.len()).filter(|&p| a.succ(p) == x) {
                    match self.coalgebra.step(s) {
                        None => results.push(("0".into(), self.zero())),
                        Some(t) => results.push((
                            format!("S({}⊗{})", self.coalgebra.carrier().get(t), a.carrier().get(p)),
                            self.succ(&self.generator(t, p)),
                        )),
                    }
                }
                for w in results.windows(2) {
                    if w[0].1 != w[1].1 {
                        out.push(CriticalPair {
                            generator: format!("{}⊗{}", self.coalgebra.carrier().get(s), a.carrier().get(x)),
                            left: w[0].0.clone(),
                            right: w[1].0.clone(),
                        });
                    }
                }
                if let Some((_, first)) = results.first() {
                    if *first != self.generator(s, x) {
                        out.push(CriticalPair {
                            generator: format!("{}⊗{}", self.coalgebra.carrier().get(s), a.carrier().get(x)),
                            left: results[0].0.clone(),
                            right: "itself".into(),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn render(&self, x: TensorElem) -> String {
        match x.tail {
            0 => self.names[x.class].clone(),
            1 => format!("S({})", self.names[x.class]),
            t => format!("S^{t}({})", self.names[x.class]),
        }
    }

    pub fn view(&self) -> TensorView {
        let c = &self.coalgebra;
        let a = &self.source;
        TensorView {
            classes: (0..self.class_count())
                .map(|k| TensorClass {
                    name: self.names[k].clone(),
                    succ: self.succ[k].map(|t| self.names[t].clone()),
                })
                .collect(),
            zero: self.names[self.zero].clone(),
            finite: self.is_finite(),
            generators: (0..c.len())
                .flat_map(|s| {
                    (0..a.len()).map(move |x| {
                        (
                            format!("{}⊗{}", c.carrier().get(s), a.carrier().get(x)),
                            self.names[self.generator[s][x]].clone(),
                        )
                    })
                })
                .collect(),
        }
    }
}

impl LazyAlgebra for MeasuringTensor {
    type Elem = TensorElem;

    fn zero(&self) -> TensorElem {
        TensorElem {
            class: self.zero,
            tail: 0,
        }
    }

    fn succ(&self, x: &TensorElem) -> TensorElem {
        match (x.tail, self.succ[x.class]) {
            (0, Some(t)) => TensorElem { class: t, tail: 0 },
            _ => TensorElem {
                class: x.class,
                tail: x.tail + 1,
            },
        }
    }
}

impl fmt::Display for MeasuringTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.class_count() {
            match self.succ[k] {
                Some(t) => writeln!(f, "{} -> {}", self.names[k], self.names[t])?,
                None => writeln!(f, "{} -> free", self.names[k])?,
            }
        }
        Ok(())
    }
}
