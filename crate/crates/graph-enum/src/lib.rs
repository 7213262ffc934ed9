//! Isomorph-free generation of simple graphs.
//!
//! Graphs grow one vertex at a time (McKay's canonical construction path). A child is kept
//! only when its new vertex lies in the automorphism orbit of the child's canonical deletion
//! vertex: the maximum-degree vertex that comes last in nauty's canonical order. Children
//! of one parent are taken once per orbit of the parent's automorphism group on
//! neighbourhood subsets.
//!
//! Graphs are passed around as adjacency rows: bit `j` of `rows[i]` is set when `i ~ j`.

use std::cell::RefCell;
use std::os::raw::c_int;

use nauty_Traces_sys::{densenauty, optionblk, statsblk, TRUE};

/// Largest supported order.
pub const MAX_N: usize = 32;

thread_local! {
    static GENERATORS: RefCell<Vec<Vec<usize>>> = const { RefCell::new(Vec::new()) };
}

unsafe extern "C" fn collect_automorphism(
    _count: c_int,
    perm: *mut c_int,
    _orbits: *mut c_int,
    _numorbits: c_int,
    _stabvertex: c_int,
    n: c_int,
) {
    let p = unsafe { std::slice::from_raw_parts(perm, n as usize) };
    GENERATORS.with(|g| g.borrow_mut().push(p.iter().map(|&x| x as usize).collect()));
}

struct Canon {
    lab: Vec<usize>,
    orbits: Vec<usize>,
    generators: Vec<Vec<usize>>,
}

fn canon(rows: &[u64]) -> Canon {
    let n = rows.len();
    // nauty numbers bits from the most significant end
    let mut g: Vec<u64> = rows.iter().map(|r| r.reverse_bits()).collect();
    let mut canong = vec![0u64; n.max(1)];
    let mut lab = vec![0 as c_int; n];
    let mut ptn = vec![0 as c_int; n];
    let mut orbits = vec![0 as c_int; n];
    let mut options = optionblk { getcanon: TRUE, userautomproc: Some(collect_automorphism), ..optionblk::default() };
    let mut stats = statsblk::default();
    GENERATORS.with(|gens| gens.borrow_mut().clear());
    if n > 0 {
        unsafe {
            densenauty(
                g.as_mut_ptr(),
                lab.as_mut_ptr(),
                ptn.as_mut_ptr(),
                orbits.as_mut_ptr(),
                &mut options,
                &mut stats,
                1,
                n as c_int,
                canong.as_mut_ptr(),
            );
        }
    }
    Canon {
        lab: lab.into_iter().map(|x| x as usize).collect(),
        orbits: orbits.into_iter().map(|x| x as usize).collect(),
        generators: GENERATORS.with(|gens| std::mem::take(&mut *gens.borrow_mut())),
    }
}

/// Relabels `rows` into nauty's canonical form (orders up to 64). Isomorphic inputs give
/// identical outputs.
pub fn canonical_form(rows: &[u64]) -> Vec<u64> {
    assert!(rows.len() <= 64);
    let lab = canon(rows).lab;
    let mut pos = vec![0; rows.len()];
    for (i, &v) in lab.iter().enumerate() {
        pos[v] = i;
    }
    let mut out = vec![0u64; rows.len()];
    for (v, &r) in rows.iter().enumerate() {
        let mut rest = r;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out[pos[v]] |= 1 << pos[w];
        }
    }
    out
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// One representative subset per orbit of the group generated by `generators`.
fn subset_orbit_representatives(k: usize, generators: &[Vec<usize>]) -> Vec<u64> {
    let size = 1usize << k;
    if generators.is_empty() {
        return (0..size as u64).collect();
    }
    let mut parent: Vec<u32> = (0..size as u32).collect();
    for p in generators {
        for s in 0..size {
            let mut img = 0usize;
            let mut rest = s;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                img |= 1 << p[v];
            }
            let (a, b) = (find(&mut parent, s as u32), find(&mut parent, img as u32));
            if a != b {
                // keep the smaller mask as root
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi as usize] = lo;
            }
        }
    }
    (0..size as u32).filter(|&s| find(&mut parent, s) == s).map(u64::from).collect()
}

struct Enumerator<'a> {
    max_n: usize,
    min_n: usize,
    emit: &'a mut dyn FnMut(&[u64]),
}

impl Enumerator<'_> {
    fn visit(&mut self, rows: &mut Vec<u64>, generators: &[Vec<usize>]) {
        let k = rows.len();
        if k >= self.min_n {
            (self.emit)(rows);
        }
        if k == self.max_n {
            return;
        }
        let degrees: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
        for s in subset_orbit_representatives(k, generators) {
            let d = s.count_ones();
            // the new vertex must have maximum degree to be the deletion vertex
            if (0..k).any(|v| degrees[v] + (s >> v & 1) as u32 > d) {
                continue;
            }
            for v in 0..k {
                if s >> v & 1 == 1 {
                    rows[v] |= 1 << k;
                }
            }
            rows.push(s);
            let c = canon(rows);
            let last = c.lab.iter().rev().copied().find(|&v| rows[v].count_ones() == d).unwrap();
            if c.orbits[last] == c.orbits[k] {
                self.visit(rows, &c.generators);
            }
            rows.pop();
            for v in 0..k {
                rows[v] &= !(1 << k);
            }
        }
    }
}

/// Calls `f` once per isomorphism class of graphs with `min_n..=max_n` vertices.
pub fn for_each_graph_in_range(min_n: usize, max_n: usize, mut f: impl FnMut(&[u64])) {
    assert!(max_n <= MAX_N, "orders above {MAX_N} are not supported");
    if min_n == 0 {
        f(&[]);
    }
    if max_n == 0 {
        return;
    }
    let mut e = Enumerator { max_n, min_n, emit: &mut f };
    e.visit(&mut vec![0], &[]);
}

/// Calls `f` once per isomorphism class of graphs on `n` vertices.
pub fn for_each_graph(n: usize, f: impl FnMut(&[u64])) {
    for_each_graph_in_range(n, n, f)
}

pub fn is_connected(rows: &[u64]) -> bool {
    if rows.is_empty() {
        return true;
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = rows[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen.count_ones() as usize == rows.len()
}

pub fn count_graphs(n: usize, connected_only: bool) -> u64 {
    let mut c = 0;
    for_each_graph(n, |r| {
        if !connected_only || is_connected(r) {
            c += 1;
        }
    });
    c
}

/// Edge list `(i, j)` with `i < j`, in row order.
pub fn edges(rows: &[u64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &r) in rows.iter().enumerate() {
        let mut above = r >> i >> 1;
        while above != 0 {
            let j = i + 1 + above.trailing_zeros() as usize;
            above &= above - 1;
            out.push((i, j));
        }
    }
    out
}

/// graph6 encoding (orders below 63).
pub fn to_graph6(rows: &[u64]) -> String {
    let n = rows.len();
    assert!(n < 63);
    let mut out = vec![(n as u8) + 63];
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for r in &rows[..j] {
            acc = acc << 1 | (r >> j & 1) as u8;
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(out).unwrap()
}
