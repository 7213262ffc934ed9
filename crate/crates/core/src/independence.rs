//! Exact maximum independent sets by bitset branch-and-bound.

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::graph::{Edge, Graph};
use crate::matching::matching_number;

pub(crate) trait VSet: Clone + PartialEq {
    fn none(words: usize) -> Self;
    fn from_row(row: &[u64]) -> Self;
    fn is_empty(&self) -> bool;
    fn count(&self) -> usize;
    fn first(&self) -> Option<usize>;
    fn has(&self, v: usize) -> bool;
    fn with(&self, v: usize) -> Self;
    fn without(&self, v: usize) -> Self;
    fn and(&self, o: &Self) -> Self;
    fn or(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn and_count(&self, o: &Self) -> usize;
    fn for_each(&self, f: impl FnMut(usize));

    fn to_vec(&self) -> Vec<usize> {
        let mut v = Vec::new();
        self.for_each(|x| v.push(x));
        v
    }
}

impl VSet for u64 {
    fn none(_: usize) -> Self {
        0
    }
    fn from_row(row: &[u64]) -> Self {
        row[0]
    }
    fn is_empty(&self) -> bool {
        *self == 0
    }
    fn count(&self) -> usize {
        self.count_ones() as usize
    }
    fn first(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }
    fn has(&self, v: usize) -> bool {
        self >> v & 1 == 1
    }
    fn with(&self, v: usize) -> Self {
        self | 1 << v
    }
    fn without(&self, v: usize) -> Self {
        self & !(1 << v)
    }
    fn and(&self, o: &Self) -> Self {
        self & o
    }
    fn or(&self, o: &Self) -> Self {
        self | o
    }
    fn minus(&self, o: &Self) -> Self {
        self & !o
    }
    fn and_count(&self, o: &Self) -> usize {
        (self & o).count_ones() as usize
    }
    fn for_each(&self, mut f: impl FnMut(usize)) {
        let mut w = *self;
        while w != 0 {
            f(w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub(crate) struct Wide(Vec<u64>);

impl VSet for Wide {
    fn none(words: usize) -> Self {
        Wide(vec![0; words])
    }
    fn from_row(row: &[u64]) -> Self {
        Wide(row.to_vec())
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
    fn has(&self, v: usize) -> bool {
        self.0[v >> 6] >> (v & 63) & 1 == 1
    }
    fn with(&self, v: usize) -> Self {
        let mut c = self.clone();
        c.0[v >> 6] |= 1 << (v & 63);
        c
    }
    fn without(&self, v: usize) -> Self {
        let mut c = self.clone();
        c.0[v >> 6] &= !(1 << (v & 63));
        c
    }
    fn and(&self, o: &Self) -> Self {
        Wide(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn or(&self, o: &Self) -> Self {
        Wide(self.0.iter().zip(&o.0).map(|(a, b)| a | b).collect())
    }
    fn minus(&self, o: &Self) -> Self {
        Wide(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }
    fn and_count(&self, o: &Self) -> usize {
        self.0.iter().zip(&o.0).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }
    fn for_each(&self, mut f: impl FnMut(usize)) {
        for (i, &w) in self.0.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                f(i * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
    }
}

struct Mis<'a, S: VSet> {
    adj: Vec<S>,
    words: usize,
    meter: &'a mut Meter,
}

impl<S: VSet> Mis<'_, S> {
    /// Maximum independent set of `cand` if its size exceeds `lower`, else `None`.
    fn solve(&mut self, cand: S, lower: i64) -> Result<Option<S>> {
        self.meter.tick()?;
        let (forced, cand) = self.reduce(cand);
        let f = forced.count() as i64;
        if cand.is_empty() {
            return Ok((f > lower).then_some(forced));
        }
        Ok(self.split(cand, lower - f)?.map(|s| s.or(&forced)))
    }

    /// Takes vertices of degree at most one, which some maximum set always contains.
    fn reduce(&self, mut cand: S) -> (S, S) {
        let mut forced = S::none(self.words);
        loop {
            let mut changed = false;
            let mut pick = None;
            cand.for_each(|v| {
                if pick.is_none() && self.adj[v].and_count(&cand) <= 1 {
                    pick = Some(v);
                }
            });
            if let Some(v) = pick {
                forced = forced.with(v);
                cand = cand.minus(&self.adj[v]).without(v);
                changed = true;
            }
            if !changed {
                return (forced, cand);
            }
        }
    }

    fn component(&self, cand: &S, start: usize) -> S {
        let mut comp = S::none(self.words).with(start);
        let mut frontier = comp.clone();
        while !frontier.is_empty() {
            let mut next = S::none(self.words);
            frontier.for_each(|x| next = next.or(&self.adj[x]));
            frontier = next.and(cand).minus(&comp);
            comp = comp.or(&frontier);
        }
        comp
    }

    fn split(&mut self, cand: S, lower: i64) -> Result<Option<S>> {
        let first = self.component(&cand, cand.first().unwrap());
        if first == cand {
            return self.connected(cand, lower);
        }
        let mut comps = vec![first.clone()];
        let mut rest = cand.minus(&first);
        while let Some(s) = rest.first() {
            let c = self.component(&rest, s);
            rest = rest.minus(&c);
            comps.push(c);
        }
        let ubs: Vec<i64> = comps.iter().map(|c| self.upper_bound(c) as i64).collect();
        let mut remaining: i64 = ubs.iter().sum();
        if remaining <= lower {
            return Ok(None);
        }
        let mut acc = S::none(self.words);
        let mut got = 0i64;
        for (c, ub) in comps.into_iter().zip(ubs) {
            remaining -= ub;
            match self.connected(c, lower - got - remaining)? {
                Some(s) => {
                    got += s.count() as i64;
                    acc = acc.or(&s);
                }
                None => return Ok(None),
            }
        }
        Ok((got > lower).then_some(acc))
    }

    fn connected(&mut self, cand: S, lower: i64) -> Result<Option<S>> {
        let mut best_v = usize::MAX;
        let mut best_d = 0;
        cand.for_each(|v| {
            let d = self.adj[v].and_count(&cand);
            if d > best_d {
                best_d = d;
                best_v = v;
            }
        });
        if best_d <= 2 {
            // after reduction every vertex has degree two: a cycle
            let s = self.cycle_set(&cand);
            return Ok((s.count() as i64 > lower).then_some(s));
        }
        if self.upper_bound(&cand) as i64 <= lower {
            return Ok(None);
        }
        let v = best_v;
        let mut lower = lower;
        let mut best = None;
        let inc = cand.minus(&self.adj[v]).without(v);
        if let Some(s) = self.solve(inc, lower - 1)? {
            let s = s.with(v);
            lower = s.count() as i64;
            best = Some(s);
        }
        if let Some(s) = self.solve(cand.without(v), lower)? {
            best = Some(s);
        }
        Ok(best)
    }

    fn cycle_set(&self, cand: &S) -> S {
        let start = cand.first().unwrap();
        let k = cand.count();
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < k {
            let mut next = usize::MAX;
            self.adj[cur].and(cand).for_each(|x| {
                if x != prev && next == usize::MAX {
                    next = x;
                }
            });
            prev = cur;
            cur = next;
            order.push(cur);
        }
        let mut s = S::none(self.words);
        for i in 0..k / 2 {
            s = s.with(order[2 * i]);
        }
        s
    }

    fn upper_bound(&self, cand: &S) -> usize {
        self.clique_cover(cand).min(self.odd_cycle_cover(cand))
    }

    fn clique_cover(&self, cand: &S) -> usize {
        let mut commons: Vec<S> = Vec::new();
        cand.for_each(|v| {
            match commons.iter_mut().find(|c| c.has(v)) {
                Some(c) => *c = c.and(&self.adj[v]),
                None => commons.push(self.adj[v].and(cand)),
            }
        });
        commons.len()
    }

    /// Greedily packs odd cycles found by BFS (each worth half its length rounded down),
    /// then covers the rest by cliques.
    fn odd_cycle_cover(&self, cand: &S) -> usize {
        let mut left = cand.clone();
        let mut bound = 0;
        let mut parent = vec![usize::MAX; self.adj.len()];
        let mut depth = vec![0usize; self.adj.len()];
        'outer: loop {
            let mut unseen = left.clone();
            while let Some(root) = unseen.first() {
                unseen = unseen.without(root);
                parent[root] = usize::MAX;
                depth[root] = 0;
                let mut level = S::none(self.words).with(root);
                let mut d = 0;
                while !level.is_empty() {
                    // edge inside a level closes an odd cycle
                    let mut found = None;
                    level.for_each(|x| {
                        if found.is_none() {
                            if let Some(y) = self.adj[x].and(&level).first() {
                                found = Some((x, y));
                            }
                        }
                    });
                    if let Some((x, y)) = found {
                        let (mut a, mut b) = (x, y);
                        let mut cyc = vec![a, b];
                        while parent[a] != parent[b] {
                            a = parent[a];
                            b = parent[b];
                            cyc.push(a);
                            cyc.push(b);
                        }
                        cyc.push(parent[a]);
                        bound += cyc.len() / 2;
                        for c in cyc {
                            left = left.without(c);
                        }
                        continue 'outer;
                    }
                    d += 1;
                    let mut next = S::none(self.words);
                    level.for_each(|x| {
                        let fresh = self.adj[x].and(&unseen).minus(&next);
                        fresh.for_each(|y| {
                            parent[y] = x;
                            depth[y] = d;
                        });
                        next = next.or(&fresh);
                    });
                    unseen = unseen.minus(&next);
                    level = next;
                }
            }
            break;
        }
        bound + self.clique_cover(&left)
    }
}

/// Maximum independent set with witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceResult {
    pub alpha: usize,
    pub witness: Vec<usize>,
    pub nodes: u64,
}

fn run<S: VSet>(g: &Graph, meter: &mut Meter) -> Result<Vec<usize>> {
    let words = g.words();
    let adj: Vec<S> = (0..g.n()).map(|v| S::from_row(g.row(v))).collect();
    let mut all = S::none(words);
    for v in 0..g.n() {
        all = all.with(v);
    }
    let mut m = Mis { adj, words, meter };
    Ok(m.solve(all, -1)?.map(|s| s.to_vec()).unwrap_or_default())
}

pub(crate) fn independence_with_meter(g: &Graph, meter: &mut Meter) -> Result<Vec<usize>> {
    if g.n() <= 64 {
        run::<u64>(g, meter)
    } else {
        run::<Wide>(g, meter)
    }
}

/// Exact independence number; fails with `BudgetExceeded` past `budget.oracle_nodes` search nodes.
pub fn independence_number(g: &Graph, budget: &Budget) -> Result<IndependenceResult> {
    let mut meter = budget.meter(budget.oracle_nodes);
    let witness = independence_with_meter(g, &mut meter)?;
    Ok(IndependenceResult { alpha: witness.len(), witness, nodes: meter.used })
}

pub fn alpha(g: &Graph, budget: &Budget) -> Result<usize> {
    independence_number(g, budget).map(|r| r.alpha)
}

/// α(G) + ν(G) = n via the oracle.
pub fn is_ke_oracle(g: &Graph, budget: &Budget) -> Result<bool> {
    Ok(alpha(g, budget)? + matching_number(g) == g.n())
}

/// Every edge deletion raises α. K1 and the null graph qualify vacuously.
pub fn is_alpha_critical(g: &Graph, budget: &Budget) -> Result<bool> {
    let a = alpha(g, budget)?;
    for e in g.edges() {
        if alpha(&g.delete_edge(e)?, budget)? == a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Edges whose deletion does not raise α.
pub fn non_critical_edges(g: &Graph, budget: &Budget) -> Result<Vec<Edge>> {
    let a = alpha(g, budget)?;
    let mut out = Vec::new();
    for e in g.edges() {
        if alpha(&g.delete_edge(e)?, budget)? == a {
            out.push(e);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInvariants {
    pub alpha: usize,
    pub nu: usize,
    pub n: usize,
    /// n − 2α, the Gallai class number.
    pub delta: i64,
    pub is_ke: bool,
}

pub fn invariants(g: &Graph, budget: &Budget) -> Result<GraphInvariants> {
    let a = alpha(g, budget)?;
    let nu = matching_number(g);
    Ok(GraphInvariants { alpha: a, nu, n: g.n(), delta: g.n() as i64 - 2 * a as i64, is_ke: a + nu == g.n() })
}
