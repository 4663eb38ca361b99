//! Automata `F(X) = 2 × X^Σ` measuring algebras of `GF`, `G = X + 1`.

use serde::Serialize;

use crate::error::{check_bound, pow_estimate, Error, Result};
use crate::functor::{Elem, FinMap, FinSet, FunctorExpr};
use crate::structures::{enumerate_alg_homs, FinAlgebra, FinCoalgebra};

/// A deterministic automaton with accepting states (a Moore machine over 2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MooreCoalgebra {
    #[serde(serialize_with = "names")]
    states: FinSet,
    #[serde(serialize_with = "names")]
    alphabet: FinSet,
    accept: Vec<bool>,
    /// `delta[q][s]` is the successor of state `q` on letter `s`.
    delta: Vec<Vec<usize>>,
}

fn names<S: serde::Serializer>(set: &FinSet, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&set.names(), s)
}

impl MooreCoalgebra {
    pub fn new(states: FinSet, alphabet: FinSet, accept: Vec<bool>, delta: Vec<Vec<usize>>) -> Result<Self> {
        let n = states.len();
        if accept.len() != n || delta.len() != n {
            return Err(Error::Invalid("accept and delta need one entry per state".into()));
        }
        if delta
            .iter()
            .any(|row| row.len() != alphabet.len() || row.iter().any(|&t| t >= n))
        {
            return Err(Error::Invalid(
                "delta must be total with targets among the states".into(),
            ));
        }
        Ok(MooreCoalgebra {
            states,
            alphabet,
            accept,
            delta,
        })
    }

    /// The one-state automaton that accepts and loops on every letter.
    pub fn unit(alphabet: FinSet) -> Self {
        let k = alphabet.len();
        MooreCoalgebra::new(FinSet::singleton(), alphabet, vec![true], vec![vec![0; k]]).expect("valid")
    }

    pub fn states(&self) -> &FinSet {
        &self.states
    }

    pub fn alphabet(&self) -> &FinSet {
        &self.alphabet
    }

    pub fn accepts(&self, q: usize) -> bool {
        self.accept[q]
    }

    pub fn delta(&self, q: usize, s: usize) -> usize {
        self.delta[q][s]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn functor(&self) -> FunctorExpr {
        FunctorExpr::automaton(self.alphabet.clone())
    }

    /// The same automaton as a coalgebra of `2 × X^Σ`.
    pub fn to_fin(&self) -> FinCoalgebra {
        let f = self.functor();
        let fc = f.eval_on_set(&self.states);
        let chi = FinMap::from_fn(self.states.clone(), fc, |q| {
            let i = self.states.position(q).expect("state");
            Elem::pair(
                Elem::atom(if self.accept[i] { "1" } else { "0" }),
                Elem::Fun(self.delta[i].iter().map(|&t| self.states.get(t).clone()).collect()),
            )
        })
        .expect("automaton structure is total");
        FinCoalgebra::new(f, self.states.clone(), chi).expect("valid")
    }

    /// Whether `h` maps states to states preserving acceptance and transitions.
    pub fn is_hom_to(&self, other: &MooreCoalgebra, h: &[usize]) -> bool {
        self.alphabet == other.alphabet
            && h.len() == self.len()
            && (0..self.len()).all(|q| {
                self.accept[q] == other.accept[h[q]]
                    && (0..self.alphabet.len()).all(|s| h[self.delta[q][s]] == other.delta[h[q]][s])
            })
    }

    /// Every automaton with `n` states over `alphabet`.
    pub fn all(n: usize, alphabet: &FinSet) -> Vec<MooreCoalgebra> {
        let k = alphabet.len();
        let per_state = 2 * n.pow(k as u32);
        let total = per_state.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut accept = Vec::with_capacity(n);
                let mut delta = Vec::with_capacity(n);
                for _ in 0..n {
                    let mut local = code % per_state;
                    code /= per_state;
                    accept.push(local % 2 == 1);
                    local /= 2;
                    let mut row = Vec::with_capacity(k);
                    for _ in 0..k {
                        row.push(local % n);
                        local /= n;
                    }
                    delta.push(row);
                }
                MooreCoalgebra::new(FinSet::numbered(n), alphabet.clone(), accept, delta).expect("valid")
            })
            .collect()
    }
}

/// `G ∘ F = (2 × X^Σ) + 1`.
pub fn gf_functor(alphabet: &FinSet) -> FunctorExpr {
    FunctorExpr::comp(FunctorExpr::id_plus_one(), FunctorExpr::automaton(alphabet.clone()))
}

/// A `GF`-algebra from a rule on `Some((accepting, letter images))` and `None` for the stop case.
pub fn gf_algebra(
    alphabet: &FinSet,
    carrier: FinSet,
    rule: impl Fn(Option<(bool, &[usize])>) -> usize,
) -> Result<FinAlgebra> {
    let f = gf_functor(alphabet);
    let car = carrier.clone();
    FinAlgebra::from_fn(f, carrier, move |u| {
        let out = match u {
            Elem::Inr(_) => rule(None),
            Elem::Inl(v) => {
                let (b, g) = v.as_pair().expect("pair");
                let Elem::Fun(xs) = g else { panic!("function expected") };
                let xs: Vec<usize> = xs.iter().map(|x| car.position(x).expect("element")).collect();
                rule(Some((b == &Elem::atom("1"), &xs)))
            }
            _ => panic!("ill-typed element {u}"),
        };
        car.get(out).clone()
    })
}

/// Every `GF`-algebra on `0..n`.
pub fn all_gf_algebras(n: usize, alphabet: &FinSet) -> Vec<FinAlgebra> {
    let f = gf_functor(alphabet);
    let carrier = FinSet::numbered(n);
    let dom = f.eval_on_set(&carrier);
    let total = n.checked_pow(dom.len() as u32).expect("small");
    (0..total)
        .map(|mut code| {
            let mut images = vec![0; dom.len()];
            for slot in images.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            let alpha = FinMap::new(dom.clone(), carrier.clone(), images).expect("valid");
            FinAlgebra::new(f.clone(), carrier.clone(), alpha).expect("valid")
        })
        .collect()
}

/// `[C, A]` with structure
/// `(alpha u)(c) = alpha_A(G(F(ev) ∘ nabla_F)(st(u, chi c)))`, where the
/// strength of `G` sends `(inl x, y)` to `inl (x, y)` and `(inr *, y)` to `inr *`.
pub fn gf_convolution(c: &MooreCoalgebra, a: &FinAlgebra, bound: u64) -> Result<FinAlgebra> {
    let f = c.functor();
    let gf = gf_functor(c.alphabet());
    gf.expect_same(a.functor())?;
    check_bound("convolution carrier", pow_estimate(a.len(), c.len()), bound)?;
    let chi = c.to_fin();
    let carrier = a.carrier().functions_from(c.len());
    let ev = |p: &Elem| {
        let (g, x) = p.as_pair().expect("pair");
        let Elem::Fun(values) = g else {
            panic!("convolution element {g} is not a function")
        };
        values[c.states().position(x).expect("state")].clone()
    };
    let dom = gf.eval_on_set(&carrier);
    let alpha = FinMap::from_fn(dom, carrier.clone(), |u| {
        Elem::Fun(
            (0..c.len())
                .map(|q| {
                    let inner = match u {
                        Elem::Inl(v) => Elem::inl(f.fmap(&f.nabla(v, chi.step(q)), &ev)),
                        other => other.clone(),
                    };
                    a.carrier().get(a.act(&inner)).clone()
                })
                .collect(),
        )
    })?;
    FinAlgebra::new(gf, carrier, alpha)
}

/// `|Alg_GF(A, [C, B])|`.
pub fn gf_measuring_count(c: &MooreCoalgebra, a: &FinAlgebra, b: &FinAlgebra, bound: u64) -> Result<u64> {
    let conv = gf_convolution(c, b, bound)?;
    Ok(enumerate_alg_homs(a, &conv, bound)?.len() as u64)
}

/// The map `[C', A] -> [C, A]`, `f ↦ f ∘ h`, as carrier positions.
pub fn precompose(h: &[usize], conv_target: &FinAlgebra, conv_source: &FinAlgebra) -> Vec<usize> {
    conv_target
        .carrier()
        .iter()
        .map(|f| {
            let Elem::Fun(values) = f else {
                panic!("function expected")
            };
            let g = Elem::Fun(h.iter().map(|&q| values[q].clone()).collect());
            conv_source.carrier().position(&g).expect("function of the right shape")
        })
        .collect()
}
