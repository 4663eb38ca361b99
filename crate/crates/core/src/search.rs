//! A small backtracking solver over finite domains.
//!
//! Variables are assigned in index order with values in increasing order, so
//! solutions are produced lexicographically. Each constraint is checked as
//! soon as the largest variable it mentions is assigned.

type Check<'a> = Box<dyn Fn(&[usize]) -> bool + 'a>;

pub(crate) struct Csp<'a> {
    domains: Vec<usize>,
    by_last: Vec<Vec<Check<'a>>>,
    always_false: bool,
}

impl<'a> Csp<'a> {
    pub(crate) fn new(domains: Vec<usize>) -> Self {
        let n = domains.len();
        Csp {
            domains,
            by_last: (0..n).map(|_| Vec::new()).collect(),
            always_false: false,
        }
    }

    /// `check` sees the whole assignment vector; only the variables listed in
    /// `vars` are guaranteed to be assigned when it runs.
    pub(crate) fn add(&mut self, vars: &[usize], check: impl Fn(&[usize]) -> bool + 'a) {
        match vars.iter().max() {
            Some(&last) => self.by_last[last].push(Box::new(check)),
            None => {
                if !check(&[]) {
                    self.always_false = true;
                }
            }
        }
    }

    /// Calls `visit` on every solution; stop early by returning `false`.
    pub(crate) fn for_each(&self, mut visit: impl FnMut(&[usize]) -> bool) {
        if self.always_false {
            return;
        }
        let n = self.domains.len();
        if self.domains.contains(&0) {
            return;
        }
        let mut assign = vec![0usize; n];
        if n == 0 {
            visit(&assign);
            return;
        }
        // next value to try at each depth
        let mut next = vec![0usize; n];
        let mut depth = 0usize;
        loop {
            if next[depth] >= self.domains[depth] {
                next[depth] = 0;
                if depth == 0 {
                    return;
                }
                depth -= 1;
                continue;
            }
            assign[depth] = next[depth];
            next[depth] += 1;
            if !self.by_last[depth].iter().all(|c| c(&assign)) {
                continue;
            }
            if depth + 1 == n {
                if !visit(&assign) {
                    return;
                }
            } else {
                depth += 1;
            }
        }
    }

    pub(crate) fn solutions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each(|s| {
            out.push(s.to_vec());
            true
        });
        out
    }

    pub(crate) fn count(&self) -> u64 {
        let mut n = 0u64;
        self.for_each(|_| {
            n += 1;
            true
        });
        n
    }
}

/// Covering pairs `(lower, upper)` of a partial order given by `leq`.
pub(crate) fn hasse_covers(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !leq(i, j) || leq(j, i) {
                continue;
            }
            let between = (0..n).any(|k| k != i && k != j && leq(i, k) && leq(k, j) && !leq(k, i) && !leq(j, k));
            if !between {
                out.push((i, j));
            }
        }
    }
    out
}
