//! Exhaustive checks of the lax symmetric monoidal axioms on small sets.

use serde::Serialize;

use super::elem::{Elem, FinSet};
use super::expr::FunctorExpr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LaxAxiom {
    Associative,
    LeftUnital,
    RightUnital,
    Commutative,
}

impl LaxAxiom {
    pub const ALL: [LaxAxiom; 4] = [
        LaxAxiom::Associative,
        LaxAxiom::LeftUnital,
        LaxAxiom::RightUnital,
        LaxAxiom::Commutative,
    ];
}

/// Which structure map to test. `Corrupted` exists as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NablaVariant {
    #[default]
    Standard,
    Corrupted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaxWitness {
    /// Sizes of the sets `X`, `Y`, `Z` (only as many as the axiom uses).
    pub sizes: Vec<usize>,
    /// The elements of `F(X)`, `F(Y)`, ... at which the diagram fails.
    pub elements: Vec<String>,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaxRow {
    pub axiom: LaxAxiom,
    pub instances: usize,
    pub failure: Option<LaxWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaxReport {
    pub functor: String,
    pub max_size: usize,
    pub rows: Vec<LaxRow>,
}

impl LaxReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.failure.is_none())
    }

    pub fn row(&self, axiom: LaxAxiom) -> &LaxRow {
        self.rows
            .iter()
            .find(|r| r.axiom == axiom)
            .expect("all axioms reported")
    }
}

pub fn check_lax_axioms(f: &FunctorExpr, max_size: usize) -> LaxReport {
    check_lax_axioms_with(f, max_size, NablaVariant::Standard)
}

pub fn check_lax_axioms_with(f: &FunctorExpr, max_size: usize, variant: NablaVariant) -> LaxReport {
    let nabla = |u: &Elem, v: &Elem| match variant {
        NablaVariant::Standard => f.nabla(u, v),
        NablaVariant::Corrupted => f.nabla_corrupted(u, v),
    };
    let sets: Vec<FinSet> = (0..=max_size).map(FinSet::numbered).collect();
    let evals: Vec<FinSet> = sets.iter().map(|s| f.eval_on_set(s)).collect();

    let mut rows = Vec::new();

    // associativity: F(assoc) ∘ ∇_{X×Y,Z} ∘ (∇_{X,Y} × id) = ∇_{X,Y×Z} ∘ (id × ∇_{Y,Z})
    let assoc = |p: &Elem| {
        let (xy, z) = p.as_pair().expect("pair");
        let (x, y) = xy.as_pair().expect("pair");
        Elem::pair(x.clone(), Elem::pair(y.clone(), z.clone()))
    };
    let mut row = LaxRow {
        axiom: LaxAxiom::Associative,
        instances: 0,
        failure: None,
    };
    'outer: for i in 0..=max_size {
        for j in 0..=max_size {
            for k in 0..=max_size {
                for a in &evals[i] {
                    for b in &evals[j] {
                        for c in &evals[k] {
                            row.instances += 1;
                            let left = f.fmap(&nabla(&nabla(a, b), c), &assoc);
                            let right = nabla(a, &nabla(b, c));
                            if left != right {
                                row.failure = Some(LaxWitness {
                                    sizes: vec![i, j, k],
                                    elements: vec![a.to_string(), b.to_string(), c.to_string()],
                                    left: left.to_string(),
                                    right: right.to_string(),
                                });
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    rows.push(row);

    let eta = f.eta();
    for axiom in [LaxAxiom::LeftUnital, LaxAxiom::RightUnital] {
        let mut row = LaxRow {
            axiom,
            instances: 0,
            failure: None,
        };
        'unit: for (i, fx) in evals.iter().enumerate() {
            for a in fx {
                row.instances += 1;
                let left = if axiom == LaxAxiom::LeftUnital {
                    f.fmap(&nabla(&eta, a), &|p| p.as_pair().expect("pair").1.clone())
                } else {
                    f.fmap(&nabla(a, &eta), &|p| p.as_pair().expect("pair").0.clone())
                };
                if &left != a {
                    row.failure = Some(LaxWitness {
                        sizes: vec![i],
                        elements: vec![a.to_string()],
                        left: left.to_string(),
                        right: a.to_string(),
                    });
                    break 'unit;
                }
            }
        }
        rows.push(row);
    }

    let swap = |p: &Elem| {
        let (x, y) = p.as_pair().expect("pair");
        Elem::pair(y.clone(), x.clone())
    };
    let mut row = LaxRow {
        axiom: LaxAxiom::Commutative,
        instances: 0,
        failure: None,
    };
    'comm: for i in 0..=max_size {
        for j in 0..=max_size {
            for a in &evals[i] {
                for b in &evals[j] {
                    row.instances += 1;
                    let left = f.fmap(&nabla(a, b), &swap);
                    let right = nabla(b, a);
                    if left != right {
                        row.failure = Some(LaxWitness {
                            sizes: vec![i, j],
                            elements: vec![a.to_string(), b.to_string()],
                            left: left.to_string(),
                            right: right.to_string(),
                        });
                        break 'comm;
                    }
                }
            }
        }
    }
    rows.push(row);

    LaxReport {
        functor: f.to_string(),
        max_size,
        rows,
    }
}
