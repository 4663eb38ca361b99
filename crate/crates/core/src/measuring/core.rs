use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{check_bound, pow_estimate, Error, Result};
use crate::functor::{Elem, FunctorExpr};
use crate::search::Csp;
use crate::structures::{
    product_coalgebra, unit_coalgebra, FinAlgebra, FinCoalgebra, PointedSuccAlgebra, StepCoalgebra,
};

/// A map `phi: C -> (A -> B)` satisfying the measuring condition.
/// `components[c][a]` is the position of `phi_c(a)` in `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measuring {
    coalgebra: Arc<FinCoalgebra>,
    source: Arc<FinAlgebra>,
    target: Arc<FinAlgebra>,
    components: Vec<Vec<usize>>,
}

/// The first place where the measuring square fails to commute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub state: String,
    /// An element `u` of `F(A)`.
    pub element: String,
    /// `phi_c(alpha(u))`.
    pub found: String,
    /// `beta(F(phi)(nabla(chi(c), u)))`.
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasuringCheck {
    pub holds: bool,
    pub violation: Option<Violation>,
}

impl MeasuringCheck {
    fn from(violation: Option<Violation>) -> Self {
        MeasuringCheck {
            holds: violation.is_none(),
            violation,
        }
    }
}

fn check_shapes(c: &FinCoalgebra, a: &FinAlgebra, b: &FinAlgebra, phi: &[Vec<usize>]) -> Result<()> {
    c.functor().expect_same(a.functor())?;
    a.functor().expect_same(b.functor())?;
    if phi.len() != c.len()
        || phi
            .iter()
            .any(|row| row.len() != a.len() || row.iter().any(|&y| y >= b.len()))
    {
        return Err(Error::Invalid(
            "measuring components must be total maps A -> B for each state".into(),
        ));
    }
    Ok(())
}

/// Checks the measuring condition, taking the `X + 1` fast path when possible.
pub fn is_measuring(c: &FinCoalgebra, a: &FinAlgebra, b: &FinAlgebra, phi: &[Vec<usize>]) -> Result<MeasuringCheck> {
    check_shapes(c, a, b, phi)?;
    if c.functor().is_id_plus_one() {
        let sc = StepCoalgebra::from_fin(c)?;
        let sa = PointedSuccAlgebra::from_fin(a)?;
        let sb = PointedSuccAlgebra::from_fin(b)?;
        return Ok(MeasuringCheck::from(check_succ(&sc, &sa, &sb, phi)));
    }
    Ok(MeasuringCheck::from(check_generic(c, a, b, phi)))
}

/// The measuring square checked directly for any functor.
pub fn is_measuring_generic(
    c: &FinCoalgebra,
    a: &FinAlgebra,
    b: &FinAlgebra,
    phi: &[Vec<usize>],
) -> Result<MeasuringCheck> {
    check_shapes(c, a, b, phi)?;
    Ok(MeasuringCheck::from(check_generic(c, a, b, phi)))
}

fn pair_index(c: &FinCoalgebra, a: &FinAlgebra) -> HashMap<Elem, (usize, usize)> {
    let mut m = HashMap::new();
    for (i, x) in c.carrier().iter().enumerate() {
        for (j, y) in a.carrier().iter().enumerate() {
            m.insert(Elem::pair(x.clone(), y.clone()), (i, j));
        }
    }
    m
}

fn check_generic(c: &FinCoalgebra, a: &FinAlgebra, b: &FinAlgebra, phi: &[Vec<usize>]) -> Option<Violation> {
    let f = c.functor();
    let pairs = pair_index(c, a);
    for ci in 0..c.len() {
        for (ui, u) in a.alpha().domain().iter().enumerate() {
            let found = phi[ci][a.alpha().image_index(ui)];
            let w = f.nabla(c.step(ci), u);
            let image = f.fmap(&w, &|p| {
                let (x, y) = pairs[p];
                b.carrier().get(phi[x][y]).clone()
            });
            let expected = b.act(&image);
            if found != expected {
                return Some(Violation {
                    state: c.carrier().get(ci).to_string(),
                    element: u.to_string(),
                    found: b.carrier().get(found).to_string(),
                    expected: b.carrier().get(expected).to_string(),
                });
            }
        }
    }
    None
}

/// Rules (M1)-(M3), visited in the same order as the generic square.
fn check_succ(
    c: &StepCoalgebra,
    a: &PointedSuccAlgebra,
    b: &PointedSuccAlgebra,
    phi: &[Vec<usize>],
) -> Option<Violation> {
    for ci in 0..c.len() {
        // inl(x) for x in A, then inr(*)
        for x in 0..=a.len() {
            let (found, expected, u) = if x < a.len() {
                let expected = match c.step(ci) {
                    None => b.zero(),
                    Some(t) => b.succ(phi[t][x]),
                };
                (phi[ci][a.succ(x)], expected, Elem::inl(a.carrier().get(x).clone()))
            } else {
                (phi[ci][a.zero()], b.zero(), Elem::inr(Elem::star()))
            };
            if found != expected {
                return Some(Violation {
                    state: c.carrier().get(ci).to_string(),
                    element: u.to_string(),
                    found: b.carrier().get(found).to_string(),
                    expected: b.carrier().get(expected).to_string(),
                });
            }
        }
    }
    None
}

/// States ordered so that each state's successor comes first, except for one
/// state per cycle.
fn dependency_order(c: &StepCoalgebra) -> Vec<usize> {
    let mut order = Vec::with_capacity(c.len());
    let mut marked = vec![false; c.len()];
    for s in 0..c.len() {
        let mut path = Vec::new();
        let mut cur = Some(s);
        while let Some(x) = cur {
            if marked[x] {
                break;
            }
            marked[x] = true;
            path.push(x);
            cur = c.step(x);
        }
        order.extend(path.into_iter().rev());
    }
    order
}

fn succ_csp<'a>(c: &'a StepCoalgebra, a: &'a PointedSuccAlgebra, b: &'a PointedSuccAlgebra) -> (Csp<'a>, Vec<usize>) {
    let order = dependency_order(c);
    let mut slot = vec![0; c.len()];
    for (k, &s) in order.iter().enumerate() {
        slot[s] = k;
    }
    let n = a.len();
    let var = move |state: usize, x: usize| slot[state] * n + x;
    let mut csp = Csp::new(vec![b.len(); c.len() * n]);
    for s in 0..c.len() {
        let z = var(s, a.zero());
        csp.add(&[z], move |h| h[z] == b.zero());
        for x in 0..n {
            let lhs = var(s, a.succ(x));
            match c.step(s) {
                None => csp.add(&[lhs], move |h| h[lhs] == b.zero()),
                Some(t) => {
                    let rhs = var(t, x);
                    csp.add(&[lhs, rhs], move |h| h[lhs] == b.succ(h[rhs]));
                }
            }
        }
    }
    (csp, order)
}

fn check_state_bound(c_len: usize, a_len: usize, b_len: usize, bound: u64) -> Result<()> {
    if c_len > 0 {
        check_bound("measurings per state", pow_estimate(b_len, a_len), bound)?;
    }
    Ok(())
}

/// All `X + 1` measurings, as component tables in canonical order.
pub fn succ_measurings(
    c: &StepCoalgebra,
    a: &PointedSuccAlgebra,
    b: &PointedSuccAlgebra,
    bound: u64,
) -> Result<Vec<Vec<Vec<usize>>>> {
    check_state_bound(c.len(), a.len(), b.len(), bound)?;
    let (csp, order) = succ_csp(c, a, b);
    let n = a.len();
    let mut out = Vec::new();
    csp.for_each(|h| {
        let mut phi = vec![Vec::new(); c.len()];
        for (k, &s) in order.iter().enumerate() {
            phi[s] = h[k * n..(k + 1) * n].to_vec();
        }
        out.push(phi);
        true
    });
    out.sort();
    Ok(out)
}

pub fn count_succ_measurings(
    c: &StepCoalgebra,
    a: &PointedSuccAlgebra,
    b: &PointedSuccAlgebra,
    bound: u64,
) -> Result<u64> {
    check_state_bound(c.len(), a.len(), b.len(), bound)?;
    Ok(succ_csp(c, a, b).0.count())
}

fn generic_csp<'a>(
    c: &'a FinCoalgebra,
    a: &'a FinAlgebra,
    b: &'a FinAlgebra,
    pairs: &'a HashMap<Elem, (usize, usize)>,
) -> Csp<'a> {
    let f: &FunctorExpr = c.functor();
    let n = a.len();
    let mut csp = Csp::new(vec![b.len(); c.len() * n]);
    for ci in 0..c.len() {
        for (ui, u) in a.alpha().domain().iter().enumerate() {
            let lhs = ci * n + a.alpha().image_index(ui);
            let w = f.nabla(c.step(ci), u);
            let mut vars: Vec<usize> = f
                .support(&w)
                .iter()
                .map(|p| {
                    let (x, y) = pairs[p];
                    x * n + y
                })
                .collect();
            vars.push(lhs);
            csp.add(&vars, move |h| {
                let image = f.fmap(&w, &|p| {
                    let (x, y) = pairs[p];
                    b.carrier().get(h[x * n + y]).clone()
                });
                h[lhs] == b.act(&image)
            });
        }
    }
    csp
}

/// All measurings `C -> (A -> B)` in canonical order (state, then `A`, then `B`).
pub fn enumerate_measurings(c: &FinCoalgebra, a: &FinAlgebra, b: &FinAlgebra, bound: u64) -> Result<Vec<Measuring>> {
    c.functor().expect_same(a.functor())?;
    a.functor().expect_same(b.functor())?;
    let tables = if c.functor().is_id_plus_one() {
        succ_measurings(
            &StepCoalgebra::from_fin(c)?,
            &PointedSuccAlgebra::from_fin(a)?,
            &PointedSuccAlgebra::from_fin(b)?,
            bound,
        )?
    } else {
        generic_measuring_tables(c, a, b, bound)?
    };
    let (c, a, b) = (Arc::new(c.clone()), Arc::new(a.clone()), Arc::new(b.clone()));
    Ok(tables
        .into_iter()
        .map(|components| Measuring {
            coalgebra: c.clone(),
            source: a.clone(),
            target: b.clone(),
            components,
        })
        .collect())
}

/// Enumeration through the generic square only, for any functor.
pub fn generic_measuring_tables(
    c: &FinCoalgebra,
    a: &FinAlgebra,
    b: &FinAlgebra,
    bound: u64,
) -> Result<Vec<Vec<Vec<usize>>>> {
    c.functor().expect_same(a.functor())?;
    a.functor().expect_same(b.functor())?;
    check_state_bound(c.len(), a.len(), b.len(), bound)?;
    let pairs = pair_index(c, a);
    let n = a.len();
    let mut out: Vec<Vec<Vec<usize>>> = generic_csp(c, a, b, &pairs)
        .solutions()
        .into_iter()
        .map(|h| h.chunks(n.max(1)).map(<[usize]>::to_vec).take(c.len()).collect())
        .collect();
    if n == 0 {
        for phi in &mut out {
            *phi = vec![Vec::new(); c.len()];
        }
    }
    out.sort();
    Ok(out)
}

pub fn count_measurings(c: &FinCoalgebra, a: &FinAlgebra, b: &FinAlgebra, bound: u64) -> Result<u64> {
    c.functor().expect_same(a.functor())?;
    a.functor().expect_same(b.functor())?;
    if c.functor().is_id_plus_one() {
        return count_succ_measurings(
            &StepCoalgebra::from_fin(c)?,
            &PointedSuccAlgebra::from_fin(a)?,
            &PointedSuccAlgebra::from_fin(b)?,
            bound,
        );
    }
    check_state_bound(c.len(), a.len(), b.len(), bound)?;
    let pairs = pair_index(c, a);
    let count = generic_csp(c, a, b, &pairs).count();
    Ok(count)
}

impl Measuring {
    /// Validates the measuring condition.
    pub fn new(c: FinCoalgebra, a: FinAlgebra, b: FinAlgebra, components: Vec<Vec<usize>>) -> Result<Self> {
        let check = is_measuring(&c, &a, &b, &components)?;
        if let Some(v) = check.violation {
            return Err(Error::Invalid(format!(
                "not a measuring at state {} and {}: found {}, expected {}",
                v.state, v.element, v.found, v.expected
            )));
        }
        Ok(Measuring {
            coalgebra: Arc::new(c),
            source: Arc::new(a),
            target: Arc::new(b),
            components,
        })
    }

    /// The identity of `A`, measured by the unit coalgebra.
    pub fn identity(a: &FinAlgebra) -> Self {
        Measuring {
            coalgebra: Arc::new(unit_coalgebra(a.functor())),
            source: Arc::new(a.clone()),
            target: Arc::new(a.clone()),
            components: vec![(0..a.len()).collect()],
        }
    }

    pub fn coalgebra(&self) -> &FinCoalgebra {
        &self.coalgebra
    }

    pub fn source(&self) -> &FinAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FinAlgebra {
        &self.target
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// `phi_c(a)` by element.
    pub fn apply(&self, c: &Elem, a: &Elem) -> Option<&Elem> {
        let i = self.coalgebra.carrier().position(c)?;
        let j = self.source.carrier().position(a)?;
        Some(self.target.carrier().get(self.components[i][j]))
    }

    /// The adjunct `A -> [C, B]`, as positions in `conv`'s carrier.
    pub fn curry(&self, conv: &FinAlgebra) -> Vec<usize> {
        (0..self.source.len())
            .map(|x| {
                let f = Elem::Fun(
                    (0..self.coalgebra.len())
                        .map(|ci| self.target.carrier().get(self.components[ci][x]).clone())
                        .collect(),
                );
                conv.carrier()
                    .position(&f)
                    .expect("function in the convolution carrier")
            })
            .collect()
    }

    /// Inverse of [`Measuring::curry`]; checks the result.
    pub fn uncurry(c: &FinCoalgebra, a: &FinAlgebra, b: &FinAlgebra, conv: &FinAlgebra, h: &[usize]) -> Result<Self> {
        let mut components = vec![vec![0; a.len()]; c.len()];
        for (x, &hx) in h.iter().enumerate() {
            let Elem::Fun(values) = conv.carrier().get(hx) else {
                return Err(Error::Invalid("convolution elements are functions".into()));
            };
            for (ci, v) in values.iter().enumerate() {
                components[ci][x] = b.carrier().position(v).expect("value in B");
            }
        }
        Measuring::new(c.clone(), a.clone(), b.clone(), components)
    }

    /// `{"c": {"a": "b"}}` with elements by name.
    pub fn to_json(&self) -> serde_json::Value {
        let mut outer = serde_json::Map::new();
        for (ci, c) in self.coalgebra.carrier().iter().enumerate() {
            let mut inner = serde_json::Map::new();
            for (x, a) in self.source.carrier().iter().enumerate() {
                inner.insert(
                    a.to_string(),
                    serde_json::Value::String(self.target.carrier().get(self.components[ci][x]).to_string()),
                );
            }
            outer.insert(c.to_string(), serde_json::Value::Object(inner));
        }
        serde_json::Value::Object(outer)
    }
}

/// `(g ∘ f)_(d,c) = g_d ∘ f_c` on the product coalgebra `D ⊗ C`.
pub fn compose_measurings(g: &Measuring, f: &Measuring) -> Result<Measuring> {
    if g.source != f.target {
        return Err(Error::Invalid(
            "middle algebras of the composed measurings differ".into(),
        ));
    }
    let dc = product_coalgebra(&g.coalgebra, &f.coalgebra)?;
    let mut components = Vec::with_capacity(dc.len());
    for gd in &g.components {
        for fc in &f.components {
            components.push(fc.iter().map(|&y| gd[y]).collect());
        }
    }
    Ok(Measuring {
        coalgebra: Arc::new(dc),
        source: f.source.clone(),
        target: g.target.clone(),
        components,
    })
}
