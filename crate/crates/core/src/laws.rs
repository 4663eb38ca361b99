//! A pass/fail matrix over the invariants of every module, at a chosen size.

use serde::Serialize;

use crate::error::DEFAULT_ENUM_BOUND;
use crate::functor::{check_lax_axioms_with, ConstMonoid, Elem, FinSet, FunctorExpr, LaxAxiom, NablaVariant};
use crate::initiality::{is_C_initial_bounded, unique_map_to_dual};
use crate::measuring::{
    compose_measurings, convolution_algebra, count_succ_measurings, enumerate_measurings, succ_measurings, Measuring,
};
use crate::mixed_gf::{all_gf_algebras, gf_convolution, precompose, MooreCoalgebra};
use crate::structures::{
    algebras_up_to_iso, all_algebras, all_step_coalgebras, canonical_from_initial, enumerate_alg_homs, is_algebra_hom,
    product_step, std_algebra, std_coalgebra, step_coalgebras_up_to_iso, unit_step_coalgebra, Index, LazyAlgebra,
    PointedSuccAlgebra, StepCoalgebra, SubterminalName,
};
use crate::universal::{classify_universal, dual_coalgebra_classified, measuring_graph, measuring_tensor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawRow {
    pub suite: &'static str,
    pub law: String,
    pub instances: u64,
    pub passed: bool,
    /// The first failing instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawsReport {
    pub max_size: usize,
    pub corrupted_nabla: bool,
    pub rows: Vec<LawRow>,
}

impl LawsReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn row(&self, law: &str) -> Option<&LawRow> {
        self.rows.iter().find(|r| r.law == law)
    }
}

/// Accumulates instances and the first failure of one law.
struct Tally {
    suite: &'static str,
    law: String,
    instances: u64,
    witness: Option<String>,
}

impl Tally {
    fn new(suite: &'static str, law: impl Into<String>) -> Self {
        Tally {
            suite,
            law: law.into(),
            instances: 0,
            witness: None,
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn row(self) -> LawRow {
        LawRow {
            suite: self.suite,
            passed: self.witness.is_none(),
            law: self.law,
            instances: self.instances,
            witness: self.witness,
        }
    }
}

/// Runs every suite with carriers up to `max_size` (some suites cap lower
/// where the search space grows too fast). `corrupt` swaps in a broken
/// `nabla` for the lax rows.
pub fn run_laws(max_size: usize, corrupt: bool) -> LawsReport {
    let mut rows = Vec::new();
    rows.extend(lax_rows(max_size, corrupt));
    rows.extend(structure_rows(max_size));
    rows.extend(measuring_rows(max_size));
    rows.extend(universal_rows(max_size));
    rows.extend(initiality_rows(max_size));
    rows.extend(mixed_rows(max_size));
    LawsReport {
        max_size,
        corrupted_nabla: corrupt,
        rows,
    }
}

/// The functors whose lax structure is checked.
pub fn lax_functors() -> Vec<FunctorExpr> {
    let sigma = |k: usize| FinSet::atoms(["a", "b"].into_iter().take(k)).expect("distinct");
    vec![
        FunctorExpr::id_plus_one(),
        FunctorExpr::Const(ConstMonoid::bool_and()),
        FunctorExpr::automaton(sigma(1)),
        FunctorExpr::automaton(sigma(2)),
        FunctorExpr::comp(FunctorExpr::id_plus_one(), FunctorExpr::id_plus_one()),
    ]
}

fn axiom_name(a: LaxAxiom) -> &'static str {
    match a {
        LaxAxiom::Associative => "associative",
        LaxAxiom::LeftUnital => "left unital",
        LaxAxiom::RightUnital => "right unital",
        LaxAxiom::Commutative => "commutative",
    }
}

fn lax_rows(max_size: usize, corrupt: bool) -> Vec<LawRow> {
    let variant = if corrupt {
        NablaVariant::Corrupted
    } else {
        NablaVariant::Standard
    };
    let mut rows = Vec::new();
    for f in lax_functors() {
        let report = check_lax_axioms_with(&f, max_size, variant);
        for r in report.rows {
            rows.push(LawRow {
                suite: "lax",
                law: format!("{f} {}", axiom_name(r.axiom)),
                instances: r.instances as u64,
                passed: r.failure.is_none(),
                witness: r
                    .failure
                    .map(|w| format!("at {:?}: {} vs {}", w.elements, w.left, w.right)),
            });
        }
    }
    rows
}

fn structure_rows(max_size: usize) -> Vec<LawRow> {
    let mut index = Tally::new("structures", "index counts steps to stop");
    let mut unit = Tally::new("structures", "C ⊗ I ≅ C");
    for n in 0..=max_size {
        for c in all_step_coalgebras(n) {
            for s in 0..c.len() {
                let mut cur = Some(s);
                let ok = match c.index(s) {
                    Index::Finite(k) => {
                        let mut defined = true;
                        for _ in 0..k {
                            defined &= cur.is_some();
                            cur = cur.and_then(|x| c.step(x));
                        }
                        defined && cur.is_some_and(|x| c.step(x).is_none())
                    }
                    Index::Infinite => {
                        for _ in 0..=c.len() {
                            cur = cur.and_then(|x| c.step(x));
                        }
                        cur.is_some()
                    }
                };
                index.check(ok, || format!("state {s} of {:?}", c.step_table()));
            }
            let ci = product_step(&c, &unit_step_coalgebra());
            unit.check(ci.step_table() == c.step_table(), || format!("{:?}", c.step_table()));
        }
    }
    let mut lasso = Tally::new("structures", "initial chain has length ≤ |A|+1");
    for n in 1..=max_size {
        for a in all_algebras(n) {
            let l = canonical_from_initial(&a);
            lasso.check(l.elements.len() <= a.len() + 1, || a.to_string());
        }
    }
    vec![index.row(), unit.row(), lasso.row()]
}

fn fun_values(e: &Elem) -> &[Elem] {
    match e {
        Elem::Fun(v) => v,
        other => panic!("expected a function, found {other}"),
    }
}

fn measuring_rows(max_size: usize) -> Vec<LawRow> {
    let algebras = algebras_up_to_iso(max_size);
    let coalgebras = step_coalgebras_up_to_iso(max_size);

    let mut chain = Tally::new("measuring", "succ^m(0) in [C,B] is min(index c, m)_B");
    let mut curry = Tally::new("measuring", "measurings ↔ homs into [C,B]");
    for c in &coalgebras {
        let cf = c.to_fin();
        for b in &algebras {
            let Ok(conv) = convolution_algebra(&cf, &b.to_fin(), DEFAULT_ENUM_BOUND) else {
                continue;
            };
            let conv_s = PointedSuccAlgebra::from_fin(&conv).expect("X + 1 algebra");
            for m in 0..=2 * max_size + 2 {
                let x = conv_s.nth(m);
                let values = fun_values(conv.carrier().get(x));
                let ok = (0..c.len()).all(|s| {
                    let k = c.index(s).finite().map_or(m, |k| k.min(m));
                    b.carrier().position(&values[s]) == Some(b.nth(k))
                });
                chain.check(ok, || format!("C {:?}, B {b}, m {m}", c.step_table()));
            }
            for a in &algebras {
                let af = a.to_fin();
                let ms = enumerate_measurings(&cf, &af, &b.to_fin(), DEFAULT_ENUM_BOUND).expect("small");
                let homs = enumerate_alg_homs(&af, &conv, DEFAULT_ENUM_BOUND).expect("small");
                let mut curried: Vec<Vec<usize>> = ms.iter().map(|m| m.curry(&conv)).collect();
                curried.sort();
                let mut sorted = homs.clone();
                sorted.sort();
                let back_ok = homs.iter().all(|h| {
                    Measuring::uncurry(&cf, &af, &b.to_fin(), &conv, h)
                        .map(|m| ms.iter().any(|x| x.components() == m.components()))
                        .unwrap_or(false)
                });
                curry.check(curried == sorted && back_ok, || {
                    format!("C {:?}, A {a}, B {b}", c.step_table())
                });
            }
        }
    }

    let mut unit = Tally::new("measuring", "I-measurings are homomorphisms");
    let i = unit_step_coalgebra();
    for a in &algebras {
        for b in &algebras {
            let ms = succ_measurings(&i, a, b, DEFAULT_ENUM_BOUND).expect("small");
            let mut homs = enumerate_alg_homs(&a.to_fin(), &b.to_fin(), DEFAULT_ENUM_BOUND).expect("small");
            homs.sort();
            let comps: Vec<Vec<usize>> = ms.into_iter().map(|mut m| m.remove(0)).collect();
            unit.check(comps == homs, || format!("A {a}, B {b}"));
        }
    }

    let small_alg = algebras_up_to_iso(max_size.min(2));
    let small_co = step_coalgebras_up_to_iso(max_size.min(2));
    let mut assoc = Tally::new("measuring", "composition is associative");
    let mut unital = Tally::new("measuring", "composition is unital");
    let measurings = |c: &StepCoalgebra, a: &PointedSuccAlgebra, b: &PointedSuccAlgebra| {
        enumerate_measurings(&c.to_fin(), &a.to_fin(), &b.to_fin(), DEFAULT_ENUM_BOUND).expect("small")
    };
    for a in &small_alg {
        for b in &small_alg {
            for c in &small_co {
                for f in measurings(c, a, b) {
                    let left = compose_measurings(&Measuring::identity(&b.to_fin()), &f).expect("composable");
                    let right = compose_measurings(&f, &Measuring::identity(&a.to_fin())).expect("composable");
                    // (*, c) and (c, *) sit at position c
                    unital.check(
                        left.components() == f.components() && right.components() == f.components(),
                        || format!("C {:?}, A {a}, B {b}", c.step_table()),
                    );
                }
            }
        }
    }
    for a in &small_alg {
        for b in &small_alg {
            for c2 in &small_alg {
                for d in &small_alg {
                    for ca in &small_co {
                        let fs = measurings(ca, a, b);
                        for cb in &small_co {
                            let gs = measurings(cb, b, c2);
                            for cc in &small_co {
                                for h in measurings(cc, c2, d) {
                                    for g in &gs {
                                        let hg = compose_measurings(&h, g).expect("composable");
                                        for f in &fs {
                                            let l = compose_measurings(&hg, f).expect("composable");
                                            let r =
                                                compose_measurings(&h, &compose_measurings(g, f).expect("composable"))
                                                    .expect("composable");
                                            let ok = l.coalgebra().carrier().iter().enumerate().all(|(i, p)| {
                                                let (xy, z) = p.as_pair().expect("pair");
                                                let (x, y) = xy.as_pair().expect("pair");
                                                let q = Elem::pair(x.clone(), Elem::pair(y.clone(), z.clone()));
                                                let j = r.coalgebra().carrier().position(&q).expect("state");
                                                l.components()[i] == r.components()[j]
                                            });
                                            assoc.check(ok, || format!("A {a}, B {b}, C {c2}, D {d}"));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    vec![chain.row(), curry.row(), unit.row(), assoc.row(), unital.row()]
}

fn candidates(bound: usize) -> Vec<SubterminalName> {
    let mut out = vec![SubterminalName::Empty, SubterminalName::IPoint];
    for k in 0..=bound {
        out.push(SubterminalName::Bracket(k));
        out.push(SubterminalName::BracketAndPoint(k));
    }
    out
}

fn universal_rows(max_size: usize) -> Vec<LawRow> {
    let algebras = algebras_up_to_iso(max_size);
    let mut classify = Tally::new("universal", "classification matches measuring counts");
    for n in 0..=max_size {
        let a = std_algebra(n);
        for b in &algebras {
            let name = classify_universal(&a, b).expect("chains are generated").name;
            let ok = candidates(a.len() + b.len()).iter().all(|k| {
                let c = k.to_coalgebra().expect("finite candidate");
                let count = count_succ_measurings(&c, &a, b, DEFAULT_ENUM_BOUND).expect("small");
                count == u64::from(k.embeds_in(&name))
            });
            classify.check(ok, || format!("<{n}> into {b}: {name}"));
        }
    }

    let small_alg = algebras_up_to_iso(max_size.min(2));
    let small_co = step_coalgebras_up_to_iso(max_size.min(2));
    let mut graph = Tally::new("universal", "graph labelings are measurings");
    let mut tensor = Tally::new("universal", "homs out of C▷A are measurings");
    for a in &small_alg {
        for b in &small_alg {
            let g = measuring_graph(a, b, DEFAULT_ENUM_BOUND).expect("small");
            for c in &small_co {
                let ms = succ_measurings(c, a, b, DEFAULT_ENUM_BOUND).expect("small");
                let mut ls: Vec<Vec<Vec<usize>>> = g.labelings(c).iter().map(|l| g.labeling_to_measuring(l)).collect();
                ls.sort();
                graph.check(ls == ms, || format!("C {:?}, A {a}, B {b}", c.step_table()));
                let t = measuring_tensor(c, a);
                let homs = t.homs_into(b, DEFAULT_ENUM_BOUND).expect("small");
                let mut via: Vec<Vec<Vec<usize>>> = homs.iter().map(|h| t.hom_to_measuring(h)).collect();
                via.sort();
                tensor.check(via == ms && t.critical_pairs().is_empty(), || {
                    format!("C {:?}, A {a}, B {b}", c.step_table())
                });
            }
        }
    }
    vec![classify.row(), graph.row(), tensor.row()]
}

fn initiality_rows(max_size: usize) -> Vec<LawRow> {
    let mut dual = Tally::new("initiality", "dual of <n> is <n>^");
    let mut map = Tally::new("initiality", "unique map <n> -> [<n>^, N]");
    for n in 0..=max_size + 1 {
        let name = dual_coalgebra_classified(&std_algebra(n)).expect("generated");
        dual.check(name == SubterminalName::Bracket(n), || format!("n = {n}: {name}"));
        let ok = match unique_map_to_dual(&std_algebra(n), &std_coalgebra(n), 64) {
            Ok(d) => {
                d.homs_into_reachable == 1
                    && d.images
                        .iter()
                        .enumerate()
                        .all(|(m, v)| *v == (0..=n as u64).map(|i| i.min(m as u64)).collect::<Vec<_>>())
            }
            Err(_) => false,
        };
        map.check(ok, || format!("n = {n}"));
    }
    let mut initial = Tally::new("initiality", "<n> is <n>^-initial on the family");
    let family = algebras_up_to_iso(max_size);
    for n in 0..=max_size.min(2) {
        let r = is_C_initial_bounded(&std_algebra(n), &std_coalgebra(n), &family, DEFAULT_ENUM_BOUND)
            .expect("nonempty family");
        initial.check(r.holds(), || format!("n = {n}: {:?}", r.verdict));
    }
    vec![dual.row(), map.row(), initial.row()]
}

fn mixed_rows(max_size: usize) -> Vec<LawRow> {
    let size = max_size.min(2);
    let mut unit = Tally::new("mixed_gf", "[unit automaton, A] ≅ A");
    let mut contra = Tally::new("mixed_gf", "automaton homs give algebra homs backwards");
    for k in 1..=2usize {
        let sigma = FinSet::atoms(["a", "b"].into_iter().take(k)).expect("distinct");
        let algebras: Vec<_> = (1..=size).flat_map(|n| all_gf_algebras(n, &sigma)).collect();
        for a in &algebras {
            let conv = gf_convolution(&MooreCoalgebra::unit(sigma.clone()), a, DEFAULT_ENUM_BOUND).expect("small");
            let h: Vec<usize> = conv
                .carrier()
                .iter()
                .map(|f| a.carrier().position(&fun_values(f)[0]).expect("element"))
                .collect();
            let mut sorted = h.clone();
            sorted.sort();
            let bijective = sorted == (0..a.len()).collect::<Vec<_>>();
            unit.check(bijective && is_algebra_hom(&conv, a, &h), || {
                format!("|Σ| = {k}, A of size {}", a.len())
            });
        }
        if k > 1 {
            continue;
        }
        let autos: Vec<_> = (1..=size).flat_map(|n| MooreCoalgebra::all(n, &sigma)).collect();
        for c in &autos {
            for d in &autos {
                let maps = d.len().pow(c.len() as u32);
                for code in 0..maps {
                    let h: Vec<usize> = (0..c.len()).map(|q| code / d.len().pow(q as u32) % d.len()).collect();
                    if !c.is_hom_to(d, &h) {
                        continue;
                    }
                    for a in &algebras {
                        let cd = gf_convolution(d, a, DEFAULT_ENUM_BOUND).expect("small");
                        let cc = gf_convolution(c, a, DEFAULT_ENUM_BOUND).expect("small");
                        let p = precompose(&h, &cd, &cc);
                        contra.check(is_algebra_hom(&cd, &cc, &p), || format!("h = {h:?}"));
                    }
                }
            }
        }
    }
    vec![unit.row(), contra.row()]
}
