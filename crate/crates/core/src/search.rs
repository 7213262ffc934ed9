//! Backtracking searches for spanning even subdivisions.

use crate::budget::Meter;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::subdivision::{EvenSubdivision, SubdivisionKind, K4_PAIRS};

fn require_small(g: &Graph) -> Result<()> {
    if g.n() > 64 {
        return Err(Error::invalid("spanning subdivision search supports at most 64 vertices"));
    }
    Ok(())
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Odd cycles through `t` avoiding `blocked`, each reported once.
fn odd_cycles_through(
    g: &Graph,
    t: usize,
    blocked: u64,
    meter: &mut Meter,
    f: &mut dyn FnMut(&[usize], u64, &mut Meter) -> Result<bool>,
) -> Result<bool> {
    fn rec(
        g: &Graph,
        t: usize,
        path: &mut Vec<usize>,
        used: u64,
        blocked: u64,
        meter: &mut Meter,
        f: &mut dyn FnMut(&[usize], u64, &mut Meter) -> Result<bool>,
    ) -> Result<bool> {
        meter.tick()?;
        let v = *path.last().unwrap();
        if path.len() >= 3 && path.len() % 2 == 1 && g.has_edge(v, t) && path[1] < v && f(path, used, meter)? {
            return Ok(true);
        }
        let mut c = g.mask(v) & !used & !blocked;
        while c != 0 {
            let w = c.trailing_zeros() as usize;
            c &= c - 1;
            path.push(w);
            if rec(g, t, path, used | 1 << w, blocked, meter, f)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
    let mut path = vec![t];
    rec(g, t, &mut path, 1 << t, blocked, meter, f)
}

/// Hamiltonian cycle of `G[set]` through `t`, starting at `t`.
fn hamiltonian_cycle(g: &Graph, t: usize, set: u64, meter: &mut Meter) -> Result<Option<Vec<usize>>> {
    for v in crate::bitset::ones(set) {
        if (g.mask(v) & set).count_ones() < 2 {
            return Ok(None);
        }
    }
    fn rec(g: &Graph, t: usize, set: u64, path: &mut Vec<usize>, used: u64, meter: &mut Meter) -> Result<bool> {
        meter.tick()?;
        let v = *path.last().unwrap();
        if used == set {
            return Ok(g.has_edge(v, t) && path.len() >= 3);
        }
        let mut c = g.mask(v) & set & !used;
        while c != 0 {
            let w = c.trailing_zeros() as usize;
            c &= c - 1;
            path.push(w);
            if rec(g, t, set, path, used | 1 << w, meter)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
    let mut path = vec![t];
    Ok(rec(g, t, set, &mut path, 1 << t, meter)?.then_some(path))
}

/// A spanning even T-subdivision of `g`.
pub(crate) fn spanning_t(g: &Graph, meter: &mut Meter) -> Result<Option<EvenSubdivision>> {
    require_small(g)?;
    let n = g.n();
    if n < 6 || n % 2 == 1 {
        return Ok(None);
    }
    let all = full(n);
    for t1 in 0..n {
        if g.degree(t1) < 3 {
            continue;
        }
        let mut found = None;
        odd_cycles_through(g, t1, 0, meter, &mut |c1, c1mask, meter| {
            // odd paths from t1 leaving the cycle, ending at a tip t2 > t1
            let mut path = vec![t1];
            let mut stack: Vec<u64> = vec![g.mask(t1) & !c1mask];
            let mut used = c1mask;
            while let Some(top) = stack.last_mut() {
                if *top == 0 {
                    stack.pop();
                    let v = path.pop().unwrap();
                    if v != t1 {
                        used &= !(1 << v);
                    }
                    continue;
                }
                meter.tick()?;
                let w = top.trailing_zeros() as usize;
                *top &= *top - 1;
                path.push(w);
                used |= 1 << w;
                if path.len() % 2 == 0 && w > t1 && g.degree(w) >= 3 {
                    let rest = (all & !used) | 1 << w;
                    if rest.count_ones() % 2 == 1 {
                        if let Some(c2) = hamiltonian_cycle(g, w, rest, meter)? {
                            found = Some(EvenSubdivision {
                                kind: SubdivisionKind::T,
                                corners: vec![t1, w],
                                paths: vec![path.clone()],
                                cycles: vec![c1.to_vec(), c2],
                            });
                            return Ok(true);
                        }
                    }
                }
                stack.push(g.mask(w) & !used);
            }
            Ok(false)
        })?;
        if let Some(s) = found {
            return Ok(Some(s.canonical()));
        }
    }
    Ok(None)
}

/// A spanning even K4-subdivision of `g`.
pub(crate) fn spanning_k4(g: &Graph, meter: &mut Meter) -> Result<Option<EvenSubdivision>> {
    require_small(g)?;
    let n = g.n();
    if n < 4 || n % 2 == 1 {
        return Ok(None);
    }
    let all = full(n);
    let branch: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    let k = branch.len();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for d in c + 1..k {
                    let corners = [branch[a], branch[b], branch[c], branch[d]];
                    let cmask = corners.iter().fold(0u64, |m, &v| m | 1 << v);
                    let mut paths = Vec::new();
                    if route(g, &corners, 0, cmask, all, &mut paths, meter)? {
                        let s = EvenSubdivision {
                            kind: SubdivisionKind::K4,
                            corners: corners.to_vec(),
                            paths,
                            cycles: Vec::new(),
                        };
                        return Ok(Some(s.canonical()));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn route(
    g: &Graph,
    corners: &[usize; 4],
    k: usize,
    used: u64,
    all: u64,
    paths: &mut Vec<Vec<usize>>,
    meter: &mut Meter,
) -> Result<bool> {
    if k == 6 {
        return Ok(used == all);
    }
    let (s, t) = (corners[K4_PAIRS[k].0], corners[K4_PAIRS[k].1]);
    let mut path = vec![s];
    let mut stack: Vec<u64> = vec![g.mask(s) & (!used | 1 << t)];
    let mut cur = used;
    while let Some(top) = stack.last_mut() {
        if *top == 0 {
            stack.pop();
            let v = path.pop().unwrap();
            if v != s {
                cur &= !(1 << v);
            }
            continue;
        }
        meter.tick()?;
        let w = top.trailing_zeros() as usize;
        *top &= *top - 1;
        path.push(w);
        if w == t {
            if path.len() % 2 == 0 {
                paths.push(path.clone());
                if route(g, corners, k + 1, cur, all, paths, meter)? {
                    return Ok(true);
                }
                paths.pop();
            }
            path.pop();
            continue;
        }
        cur |= 1 << w;
        stack.push(g.mask(w) & (!cur | 1 << t));
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::subdivision::subdivide_edges_even;

    #[test]
    fn finds_spanning_witnesses() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let g = subdivide_edges_even(&k4, &[(Edge(0, 1), 2)]).unwrap();
        let mut m = Meter::unlimited();
        let s = spanning_k4(&g, &mut m).unwrap().unwrap();
        assert!(s.check(&g).is_ok());
        assert_eq!(s.order(), 6);
        assert!(spanning_t(&g, &mut m).unwrap().is_none());
        let t = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        let s = spanning_t(&t, &mut m).unwrap().unwrap();
        assert!(s.check(&t).is_ok());
        assert!(spanning_k4(&t, &mut m).unwrap().is_none());
    }
}
