//! 2-SAT over an implication graph, solved with Tarjan's strongly connected components.

/// Literal `2 * var` is the variable, `2 * var + 1` its negation.
pub(crate) struct TwoSat {
    adj: Vec<Vec<usize>>,
}

pub(crate) enum Outcome {
    Sat(Vec<bool>),
    /// A variable whose two literals share a component.
    Unsat(usize),
}

const UNSET: usize = usize::MAX;

impl TwoSat {
    pub fn new(vars: usize) -> Self {
        TwoSat { adj: vec![Vec::new(); 2 * vars] }
    }

    /// Adds `a ∨ b`.
    pub fn clause(&mut self, a: usize, b: usize) {
        self.adj[a ^ 1].push(b);
        self.adj[b ^ 1].push(a);
    }

    /// Components in completion order, so a smaller id is later in topological order.
    fn components(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut index = vec![UNSET; n];
        let mut low = vec![0; n];
        let mut comp = vec![UNSET; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut calls: Vec<(usize, usize)> = Vec::new();
        let mut counter = 0;
        let mut ncomp = 0;
        for root in 0..n {
            if index[root] != UNSET {
                continue;
            }
            calls.push((root, 0));
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
                if *pos < self.adj[v].len() {
                    let w = self.adj[v][*pos];
                    *pos += 1;
                    if index[w] == UNSET {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        calls.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    calls.pop();
                    if let Some(&(p, _)) = calls.last() {
                        low[p] = low[p].min(low[v]);
                    }
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp[w] = ncomp;
                            if w == v {
                                break;
                            }
                        }
                        ncomp += 1;
                    }
                }
            }
        }
        comp
    }

    pub fn solve(&self) -> Outcome {
        let comp = self.components();
        let vars = self.adj.len() / 2;
        let mut value = Vec::with_capacity(vars);
        for i in 0..vars {
            let (t, f) = (comp[2 * i], comp[2 * i + 1]);
            if t == f {
                return Outcome::Unsat(i);
            }
            value.push(t < f);
        }
        Outcome::Sat(value)
    }

    pub fn satisfiable(&self) -> bool {
        matches!(self.solve(), Outcome::Sat(_))
    }

    /// Shortest implication chain from `a` to `b`, as literals.
    pub fn chain(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut prev = vec![UNSET; self.adj.len()];
        prev[a] = a;
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                let mut out = vec![b];
                let mut c = b;
                while c != a {
                    c = prev[c];
                    out.push(c);
                }
                out.reverse();
                return Some(out);
            }
            for &y in &self.adj[x] {
                if prev[y] == UNSET {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_instances() {
        let mut s = TwoSat::new(2);
        s.clause(0, 2);
        s.clause(1, 2);
        match s.solve() {
            Outcome::Sat(v) => assert!(v[1]),
            Outcome::Unsat(_) => panic!("satisfiable"),
        }
        let mut u = TwoSat::new(1);
        u.clause(0, 0);
        u.clause(1, 1);
        assert!(!u.satisfiable());
        assert_eq!(u.chain(0, 1), Some(vec![0, 1]));
    }

    #[test]
    fn brute_force_agreement() {
        let mut state = 7u64;
        for _ in 0..500 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let vars = 1 + (state >> 61) as usize;
            let nclauses = (state >> 50) as usize % 10;
            let mut s = TwoSat::new(vars);
            let mut clauses = Vec::new();
            for _ in 0..nclauses {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (state >> 33) as usize % (2 * vars);
                let b = (state >> 45) as usize % (2 * vars);
                s.clause(a, b);
                clauses.push((a, b));
            }
            let lit = |x: usize, asg: u32| ((asg >> (x / 2)) & 1 == 1) != (x % 2 == 1);
            let brute = (0..1u32 << vars).any(|asg| clauses.iter().all(|&(a, b)| lit(a, asg) || lit(b, asg)));
            match s.solve() {
                Outcome::Sat(v) => {
                    let asg = v.iter().enumerate().fold(0u32, |m, (i, &b)| m | (b as u32) << i);
                    assert!(clauses.iter().all(|&(a, b)| lit(a, asg) || lit(b, asg)));
                }
                Outcome::Unsat(_) => assert!(!brute),
            }
        }
    }
}
