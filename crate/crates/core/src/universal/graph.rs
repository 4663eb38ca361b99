use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{check_bound, pow_estimate, Result};
use crate::search::Csp;
use crate::structures::{Index, PointedSuccAlgebra, StepCoalgebra};

/// Finite presentation of the universal measuring coalgebra `Ā(A,B)`.
///
/// Nodes are the maps `f: A -> B` with `f(0) = 0`, in lexicographic order of
/// their tables. A node is terminal when `f(a + 1) = 0` for every `a`, and
/// `(f, g)` is an edge when `f(a + 1) = g(a) + 1` for every `a`.
#[derive(Clone, Debug)]
pub struct MeasuringGraph {
    source: PointedSuccAlgebra,
    target: PointedSuccAlgebra,
    nodes: Vec<Vec<usize>>,
    terminal: Vec<bool>,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphNode {
    pub id: usize,
    /// `a -> f(a)` by element name.
    pub map: Vec<(String, String)>,
    pub terminal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphView {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<(usize, usize)>,
}

/// Builds the measuring graph, refusing when `|B|^(|A|-1)` exceeds `bound`.
pub fn measuring_graph(a: &PointedSuccAlgebra, b: &PointedSuccAlgebra, bound: u64) -> Result<MeasuringGraph> {
    let n = a.len();
    let m = b.len();
    let free: Vec<usize> = (0..n).filter(|&x| x != a.zero()).collect();
    check_bound("measuring graph nodes", pow_estimate(m, free.len()), bound)?;

    let mut nodes = Vec::new();
    let mut table = vec![b.zero(); n];
    let mut digits = vec![0usize; free.len()];
    loop {
        for (k, &x) in free.iter().enumerate() {
            table[x] = digits[k];
        }
        nodes.push(table.clone());
        // mixed-radix increment, last digit fastest
        let mut k = free.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < m {
                break;
            }
            digits[k] = 0;
        }
        if digits.iter().all(|&d| d == 0) {
            break;
        }
    }

    let code = |f: &[usize]| free.iter().fold(0usize, |acc, &x| acc * m + f[x]);
    let terminal: Vec<bool> = nodes.iter().map(|f| (0..n).all(|x| f[a.succ(x)] == b.zero())).collect();

    let mut edges = Vec::new();
    let mut free_of_succ: Vec<usize> = Vec::new();
    for (j, g) in nodes.iter().enumerate() {
        // f is forced on zero and on the image of succ
        let mut forced: Vec<Option<usize>> = vec![None; n];
        forced[a.zero()] = Some(b.zero());
        let mut ok = true;
        for x in 0..n {
            let want = b.succ(g[x]);
            match forced[a.succ(x)] {
                Some(v) if v != want => {
                    ok = false;
                    break;
                }
                _ => forced[a.succ(x)] = Some(want),
            }
        }
        if !ok {
            continue;
        }
        free_of_succ.clear();
        free_of_succ.extend((0..n).filter(|&x| forced[x].is_none()));
        let count = m.pow(free_of_succ.len() as u32);
        let mut f: Vec<usize> = forced.iter().map(|v| v.unwrap_or(0)).collect();
        for mut c in 0..count {
            for &x in free_of_succ.iter().rev() {
                f[x] = c % m;
                c /= m;
            }
            edges.push((code(&f), j));
        }
    }
    edges.sort_unstable();
    Ok(MeasuringGraph {
        source: a.clone(),
        target: b.clone(),
        nodes,
        terminal,
        edges,
    })
}

impl MeasuringGraph {
    pub fn source(&self) -> &PointedSuccAlgebra {
        &self.source
    }

    pub fn target(&self) -> &PointedSuccAlgebra {
        &self.target
    }

    pub fn nodes(&self) -> &[Vec<usize>] {
        &self.nodes
    }

    pub fn is_terminal(&self, node: usize) -> bool {
        self.terminal[node]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.binary_search(&(from, to)).is_ok()
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for &(f, g) in &self.edges {
            out[f].push(g);
        }
        out
    }

    /// Whether `label` (a node per state) is a labeling of `c`: stopping
    /// states land on terminal nodes and steps follow edges.
    pub fn is_labeling(&self, c: &StepCoalgebra, label: &[usize]) -> bool {
        label.len() == c.len()
            && label.iter().all(|&v| v < self.nodes.len())
            && (0..c.len()).all(|s| match c.step(s) {
                None => self.terminal[label[s]],
                Some(t) => self.has_edge(label[s], label[t]),
            })
    }

    /// All labelings of `c`, lexicographically.
    pub fn labelings(&self, c: &StepCoalgebra) -> Vec<Vec<usize>> {
        let mut csp = Csp::new(vec![self.nodes.len(); c.len()]);
        for s in 0..c.len() {
            match c.step(s) {
                None => csp.add(&[s], move |h| self.terminal[h[s]]),
                Some(t) => csp.add(&[s, t], move |h| self.has_edge(h[s], h[t])),
            }
        }
        csp.solutions()
    }

    /// The measuring table `phi[c][a]` of a labeling.
    pub fn labeling_to_measuring(&self, label: &[usize]) -> Vec<Vec<usize>> {
        label.iter().map(|&v| self.nodes[v].clone()).collect()
    }

    /// The labeling of a measuring table, if every component is a node.
    pub fn measuring_to_labeling(&self, phi: &[Vec<usize>]) -> Option<Vec<usize>> {
        phi.iter().map(|f| self.nodes.binary_search(f).ok()).collect()
    }

    /// Nodes carrying self-loops; these are exactly the homomorphisms `A -> B`.
    pub fn loops(&self) -> Vec<usize> {
        self.edges.iter().filter(|(f, g)| f == g).map(|&(f, _)| f).collect()
    }

    /// The supremum of the lengths of paths ending at a terminal node, or
    /// `None` when there is no terminal node.
    pub fn longest_path_to_terminal(&self) -> Option<Index> {
        let n = self.nodes.len();
        let succ = self.successors();
        let mut preds = vec![Vec::new(); n];
        for &(f, g) in &self.edges {
            preds[g].push(f);
        }
        let mut live = self.terminal.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&v| live[v]).collect();
        if stack.is_empty() {
            return None;
        }
        while let Some(v) = stack.pop() {
            for &p in &preds[v] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        // longest path inside the live part, or a cycle there
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let mut mark = vec![Mark::New; n];
        let mut best = vec![0usize; n];
        for root in (0..n).filter(|&v| live[v]) {
            if mark[root] != Mark::New {
                continue;
            }
            let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
            mark[root] = Mark::Open;
            while let Some(&mut (v, ref mut i)) = frames.last_mut() {
                let next = succ[v].iter().copied().filter(|&w| live[w]).nth(*i);
                *i += 1;
                match next {
                    Some(w) => match mark[w] {
                        Mark::Open => return Some(Index::Infinite),
                        Mark::New => {
                            mark[w] = Mark::Open;
                            frames.push((w, 0));
                        }
                        Mark::Done => {}
                    },
                    None => {
                        best[v] = succ[v]
                            .iter()
                            .filter(|&&w| live[w])
                            .map(|&w| best[w] + 1)
                            .max()
                            .unwrap_or(0);
                        mark[v] = Mark::Done;
                        frames.pop();
                    }
                }
            }
        }
        (0..n).filter(|&v| live[v]).map(|v| best[v]).max().map(Index::Finite)
    }

    fn node_name(&self, v: usize) -> String {
        let (a, b) = (self.source.carrier(), self.target.carrier());
        let parts: Vec<String> = self.nodes[v]
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}↦{}", a.get(x), b.get(y)))
            .collect();
        parts.join(" ")
    }

    pub fn view(&self) -> GraphView {
        let (a, b) = (self.source.carrier(), self.target.carrier());
        GraphView {
            nodes: (0..self.nodes.len())
                .map(|v| GraphNode {
                    id: v,
                    map: self.nodes[v]
                        .iter()
                        .enumerate()
                        .map(|(x, &y)| (a.get(x).to_string(), b.get(y).to_string()))
                        .collect(),
                    terminal: self.terminal[v],
                })
                .collect(),
            edges: self.edges.clone(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph measuring {\n  rankdir=LR;\n");
        for v in 0..self.nodes.len() {
            let shape = if self.terminal[v] { "doublecircle" } else { "circle" };
            writeln!(out, "  n{v} [shape={shape}, label=\"{}\"];", self.node_name(v)).unwrap();
        }
        for &(f, g) in &self.edges {
            writeln!(out, "  n{f} -> n{g};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measuring::succ_measurings;
    use crate::structures::{all_algebras, all_step_coalgebras, std_algebra};

    #[test]
    fn single_point() {
        let g = measuring_graph(&std_algebra(0), &std_algebra(0), 10).unwrap();
        assert_eq!(g.nodes().len(), 1);
        assert!(g.is_terminal(0));
        assert_eq!(g.edges(), &[(0, 0)]);
        assert_eq!(g.longest_path_to_terminal(), Some(Index::Infinite));
    }

    #[test]
    fn chain_into_the_naturals_truncated() {
        // <n> into <n+1>: n_B != (n+1)_B
        for n in 0..4 {
            let g = measuring_graph(&std_algebra(n), &std_algebra(n + 1), 1 << 20).unwrap();
            assert_eq!(g.longest_path_to_terminal(), Some(Index::Finite(n)));
            assert!(g.loops().is_empty());
        }
    }

    #[test]
    fn edges_match_the_definition() {
        for a in all_algebras(3).iter().step_by(5) {
            for b in all_algebras(2) {
                let g = measuring_graph(a, &b, 1000).unwrap();
                let nodes = g.nodes();
                for (i, f) in nodes.iter().enumerate() {
                    for (j, h) in nodes.iter().enumerate() {
                        let edge = (0..a.len()).all(|x| f[a.succ(x)] == b.succ(h[x]));
                        assert_eq!(g.has_edge(i, j), edge);
                    }
                }
            }
        }
    }

    #[test]
    fn labelings_are_measurings() {
        let cs: Vec<_> = (0..=2).flat_map(all_step_coalgebras).collect();
        for a in all_algebras(2) {
            for b in all_algebras(2) {
                let g = measuring_graph(&a, &b, 1000).unwrap();
                for c in &cs {
                    let from_graph: Vec<_> = g.labelings(c).iter().map(|l| g.labeling_to_measuring(l)).collect();
                    assert_eq!(from_graph, succ_measurings(c, &a, &b, 1000).unwrap());
                }
            }
        }
    }

    #[test]
    fn dot_lists_every_edge() {
        let g = measuring_graph(&std_algebra(1), &std_algebra(2), 100).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches(" -> ").count(), g.edges().len());
        assert!(dot.contains("doublecircle"));
    }

    #[test]
    fn refuses_large_graphs() {
        let err = measuring_graph(&std_algebra(6), &std_algebra(9), 1000).unwrap_err();
        assert!(err.is_refusal());
    }
}
