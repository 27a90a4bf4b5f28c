//! Closed paths in the dual graph of a triangulation.
//!
//! A path is recorded as the sequence of sides through which it enters
//! successive triangles. In a cyclic word `e`, the passage through triangle
//! `tri_of(e[k])` leaves through `glue[e[k + 1]]`.

use crate::surface::{next, prev, tri_of, Side, Triangulation};

/// Turn taken inside a triangle. A left turn cuts the corner at the start
/// vertex of the entry side and a right turn the corner at its end vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Turn {
    Left = 0,
    Right = 1,
    Back = 2,
}

#[inline]
pub fn turn(t: &Triangulation, entry: Side, next_entry: Side) -> Turn {
    let exit = t.glue[next_entry as usize];
    if exit == prev(entry) {
        Turn::Left
    } else if exit == next(entry) {
        Turn::Right
    } else {
        Turn::Back
    }
}

pub fn turns(t: &Triangulation, w: &[Side]) -> Vec<Turn> {
    let n = w.len();
    (0..n).map(|k| turn(t, w[k], w[(k + 1) % n])).collect()
}

/// Checks that consecutive entries are adjacent in the dual graph.
pub fn is_closed_path(t: &Triangulation, w: &[Side]) -> bool {
    let n = w.len();
    (0..n).all(|k| tri_of(t.glue[w[(k + 1) % n] as usize]) == tri_of(w[k]))
}

pub fn is_path(t: &Triangulation, w: &[Side]) -> bool {
    w.windows(2).all(|p| tri_of(t.glue[p[1] as usize]) == tri_of(p[0]))
}

pub fn reverse(t: &Triangulation, w: &[Side]) -> Vec<Side> {
    let n = w.len();
    (0..n).map(|k| t.glue[w[(2 * n - k) % n] as usize]).collect()
}

/// Removes immediate returns from a path (not cyclically).
pub fn free_reduce_path(t: &Triangulation, w: &[Side]) -> Vec<Side> {
    let mut out: Vec<Side> = Vec::with_capacity(w.len());
    for &e in w {
        if let Some(&top) = out.last() {
            if e == t.glue[top as usize] {
                out.pop();
                continue;
            }
        }
        out.push(e);
    }
    out
}

pub fn free_reduce_cyclic(t: &Triangulation, w: &[Side]) -> Vec<Side> {
    let mut out = free_reduce_path(t, w);
    let mut lo = 0;
    while out.len() - lo >= 2 && out[lo] == t.glue[*out.last().unwrap() as usize] {
        out.pop();
        lo += 1;
    }
    out.drain(..lo);
    out
}

/// Entries of the path that goes the other way around the vertex cut by a
/// run of turns, starting in the triangle before the run's first crossing.
fn around(t: &Triangulation, first: Side, dir: Turn, count: usize) -> Vec<Side> {
    let step = |s: Side| if dir == Turn::Left { next(s) } else { prev(s) };
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let mut e = t.glue[step(t.glue[first as usize]) as usize];
    out.push(e);
    for _ in 1..count {
        e = t.glue[step(e) as usize];
        out.push(e);
    }
    out
}

/// One pass of vertex-crossing reduction on a path: replaces the first run of
/// crossings around a single vertex that is longer than half the vertex
/// degree. Only used for one-vertex triangulations.
fn dehn_step_path(t: &Triangulation, w: &[Side], degree: usize) -> Option<Vec<Side>> {
    let m = w.len();
    if m < 2 {
        return None;
    }
    let mut a = 0;
    while a < m {
        let mut b = a;
        let dir = if a + 1 < m { turn(t, w[a], w[a + 1]) } else { Turn::Back };
        if dir != Turn::Back {
            while b + 1 < m && turn(t, w[b], w[b + 1]) == dir {
                b += 1;
            }
        }
        let nc = b - a + 1;
        if dir != Turn::Back && 2 * nc > degree {
            let take = nc.min(degree);
            let repl = around(t, w[a], dir, degree - take);
            let mut out = Vec::with_capacity(m - take + repl.len());
            out.extend_from_slice(&w[..a]);
            out.extend(repl);
            out.extend_from_slice(&w[a + take..]);
            return Some(out);
        }
        a = if b > a { b } else { a + 1 };
    }
    None
}

/// Free and vertex-crossing reduction of a path starting in a fixed triangle.
pub fn dehn_reduce_path(t: &Triangulation, w: &[Side], degree: usize) -> Vec<Side> {
    let mut cur = free_reduce_path(t, w);
    while let Some(n) = dehn_step_path(t, &cur, degree) {
        cur = free_reduce_path(t, &n);
    }
    cur
}

/// Replaces one maximal run of a cyclic word that crosses more than half the
/// edge ends around the vertex.
fn dehn_step_cyclic(t: &Triangulation, w: &[Side], degree: usize) -> Option<Vec<Side>> {
    let n = w.len();
    let tr = turns(t, w);
    let s0 = (0..n).find(|&k| tr[(k + n - 1) % n] != tr[k])?;
    let mut k = 0;
    while k < n {
        let a = (s0 + k) % n;
        let dir = tr[a];
        let mut len = 1;
        while k + len < n && tr[(a + len) % n] == dir {
            len += 1;
        }
        let nc = len + 1;
        if dir != Turn::Back && 2 * nc > degree {
            let take = nc.min(degree);
            let mut out = around(t, w[a], dir, degree - take);
            out.extend((take..n).map(|j| w[(a + j) % n]));
            return Some(out);
        }
        k += len;
    }
    None
}

/// Free and vertex-crossing reduction of a cyclic word on a one-vertex
/// triangulation. Returns an empty word for curves that are trivial on the
/// closed surface.
pub fn dehn_reduce_cyclic(t: &Triangulation, w: &[Side], degree: usize) -> Vec<Side> {
    let mut cur = free_reduce_cyclic(t, w);
    loop {
        let n = cur.len();
        if n == 0 {
            return cur;
        }
        let tr = turns(t, &cur);
        if tr.iter().all(|&x| x == tr[0]) {
            // The whole word winds around the vertex.
            if n.is_multiple_of(degree) {
                return Vec::new();
            }
            return cur;
        }
        match dehn_step_cyclic(t, &cur, degree) {
            Some(nw) => cur = free_reduce_cyclic(t, &nw),
            None => return cur,
        }
    }
}

/// Number of times the word crosses each edge.
pub fn weights_of(t: &Triangulation, w: &[Side]) -> Vec<u32> {
    let mut out = vec![0u32; t.num_edges()];
    for &e in w {
        out[t.edge[e as usize]] += 1;
    }
    out
}

/// Smallest rotation, used to compare cyclic words.
pub fn least_rotation(w: &[Side]) -> Vec<Side> {
    let n = w.len();
    if n == 0 {
        return vec![];
    }
    let mut best = 0;
    for r in 1..n {
        for k in 0..n {
            let (x, y) = (w[(r + k) % n], w[(best + k) % n]);
            if x != y {
                if x < y {
                    best = r;
                }
                break;
            }
        }
    }
    w[best..].iter().chain(w[..best].iter()).copied().collect()
}

/// Length of the primitive root of a cyclic word.
pub fn primitive_period(w: &[Side]) -> usize {
    let n = w.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (0..n).all(|k| w[k] == w[(k + p) % n]) {
            return p;
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_standard_surface, Signature};

    #[test]
    fn vertex_link_reduces_to_nothing() {
        let t = build_standard_surface(Signature::new(2, 0)).unwrap();
        // Walk once around the vertex by always turning left.
        let mut w = vec![0 as Side];
        for _ in 1..18 {
            let e = *w.last().unwrap();
            w.push(t.glue[prev(e) as usize]);
        }
        assert!(is_closed_path(&t, &w));
        assert!(turns(&t, &w).iter().all(|&x| x == Turn::Left));
        assert!(dehn_reduce_cyclic(&t, &w, 18).is_empty());
    }

    #[test]
    fn free_reduction_removes_returns() {
        let t = build_standard_surface(Signature::new(2, 1)).unwrap();
        let w = vec![0, t.glue[0], 0, t.glue[0]];
        assert!(free_reduce_cyclic(&t, &w).is_empty());
    }
}
