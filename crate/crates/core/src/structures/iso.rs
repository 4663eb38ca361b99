use std::collections::BTreeSet;

use super::algebra::{PointedSuccAlgebra, StepCoalgebra};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Tables `0..n -> 0..m` in lexicographic order.
fn tables(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = m.checked_pow(n as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut code| {
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = code % m;
            code /= m;
        }
        t
    })
}

/// Every `X + 1` algebra on `{0..n-1}`.
pub fn all_algebras(n: usize) -> Vec<PointedSuccAlgebra> {
    (0..n)
        .flat_map(|z| tables(n, n).map(move |s| PointedSuccAlgebra::numbered(z, s).expect("valid")))
        .collect()
}

/// Every `X + 1` coalgebra on `{0..n-1}`.
pub fn all_step_coalgebras(n: usize) -> Vec<StepCoalgebra> {
    tables(n, n + 1)
        .map(|t| {
            let step = t.into_iter().map(|v| (v < n).then_some(v)).collect();
            StepCoalgebra::numbered(step).expect("valid")
        })
        .collect()
}

fn canonical_algebra(zero: usize, succ: &[usize], perms: &[Vec<usize>]) -> (usize, Vec<usize>) {
    perms
        .iter()
        .map(|p| {
            let mut t = vec![0; succ.len()];
            for (a, &s) in succ.iter().enumerate() {
                t[p[a]] = p[s];
            }
            (p[zero], t)
        })
        .min()
        .expect("at least one permutation")
}

fn canonical_coalgebra(step: &[Option<usize>], perms: &[Vec<usize>]) -> Vec<usize> {
    let n = step.len();
    perms
        .iter()
        .map(|p| {
            let mut t = vec![0; n];
            for (c, s) in step.iter().enumerate() {
                t[p[c]] = s.map_or(0, |x| p[x] + 1);
            }
            t
        })
        .min()
        .unwrap_or_default()
}

/// One representative per isomorphism class of algebras of size `1..=max`,
/// each with its zero at `0`. Ordered by size, then canonical encoding.
pub fn algebras_up_to_iso(max: usize) -> Vec<PointedSuccAlgebra> {
    let mut out = Vec::new();
    for n in 1..=max {
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for s in tables(n, n) {
            seen.insert(canonical_algebra(0, &s, &perms));
        }
        out.extend(
            seen.into_iter()
                .map(|(z, s)| PointedSuccAlgebra::numbered(z, s).expect("valid")),
        );
    }
    out
}

/// One representative per isomorphism class of coalgebras of size `0..=max`.
pub fn step_coalgebras_up_to_iso(max: usize) -> Vec<StepCoalgebra> {
    let mut out = Vec::new();
    for n in 0..=max {
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for c in all_step_coalgebras(n) {
            seen.insert(canonical_coalgebra(c.step_table(), &perms));
        }
        out.extend(seen.into_iter().map(|t| {
            let step = t.into_iter().map(|v| v.checked_sub(1)).collect();
            StepCoalgebra::numbered(step).expect("valid")
        }));
    }
    out
}

/// Whether two algebras are isomorphic.
pub fn algebras_isomorphic(a: &PointedSuccAlgebra, b: &PointedSuccAlgebra) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let perms = permutations(a.len());
    canonical_algebra(a.zero(), a.succ_table(), &perms) == canonical_algebra(b.zero(), b.succ_table(), &perms)
}
