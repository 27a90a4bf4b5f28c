//! Homology of the closed-up surface, read from dual-graph cycles.
//!
//! Edge weights mod 2 of a normal curve form a cycle in the dual graph. Its
//! class on the surface with punctures filled in is the cycle modulo the
//! links of the vertices.

use serde::Serialize;

use crate::curve::CurveClass;
use crate::intersection::signed_pairing;
use crate::surface::Triangulation;

/// Row reduction against the span of the vertex links mod 2.
#[derive(Debug, Clone)]
pub struct Mod2Reducer {
    /// Pivot column and reduced row.
    rows: Vec<(usize, Vec<bool>)>,
}

impl Mod2Reducer {
    pub fn of(t: &Triangulation) -> Mod2Reducer {
        let ne = t.num_edges();
        let mut links = vec![vec![false; ne]; t.num_vertices];
        for (e, sides) in t.edge_sides.iter().enumerate() {
            links[t.start_vertex(sides[0])][e] ^= true;
            links[t.end_vertex(sides[0])][e] ^= true;
        }
        let mut rows: Vec<(usize, Vec<bool>)> = Vec::new();
        for mut r in links {
            for (p, row) in &rows {
                if r[*p] {
                    r.iter_mut().zip(row).for_each(|(x, y)| *x ^= *y);
                }
            }
            if let Some(p) = r.iter().position(|&x| x) {
                for (_, row) in rows.iter_mut() {
                    if row[p] {
                        row.iter_mut().zip(&r).for_each(|(x, y)| *x ^= *y);
                    }
                }
                rows.push((p, r));
            }
        }
        Mod2Reducer { rows }
    }

    /// Normal form of the mod-2 class of a weight vector.
    pub fn reduce(&self, w: &[u32]) -> Vec<bool> {
        let mut r: Vec<bool> = w.iter().map(|&x| x % 2 == 1).collect();
        for (p, row) in &self.rows {
            if r[*p] {
                r.iter_mut().zip(row).for_each(|(x, y)| *x ^= *y);
            }
        }
        r
    }

    pub fn is_zero(&self, w: &[u32]) -> bool {
        self.reduce(w).iter().all(|&x| !x)
    }
}

/// Mod-2 homology class on the closed-up surface; zero iff the curve
/// separates.
pub fn mod2_class(t: &Triangulation, c: &CurveClass) -> Vec<bool> {
    Mod2Reducer::of(t).reduce(&c.coords)
}

/// Absolute value of the algebraic intersection number.
pub fn algebraic_pairing(t: &Triangulation, a: &CurveClass, b: &CurveClass) -> u32 {
    signed_pairing(t, &a.word, &b.word).unsigned_abs() as u32
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyData {
    /// Closed dual-graph paths generating the first homology of the
    /// punctured surface.
    pub basis: Vec<Vec<crate::surface::Side>>,
    pub mod2_rank: usize,
    pub pairing: Vec<Vec<i64>>,
}

/// Fundamental cycles of the dual graph with respect to a spanning tree, and
/// their intersection pairing.
pub fn homology(t: &Triangulation) -> HomologyData {
    use crate::surface::{side, tri_of};
    let nt = t.num_triangles();
    // BFS tree on triangles; parent[x] = side through which x was entered.
    let mut parent: Vec<Option<crate::surface::Side>> = vec![None; nt];
    let mut seen = vec![false; nt];
    let mut tree_edge = vec![false; t.num_edges()];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for i in 0..3 {
            let s = side(x, i);
            let g = t.glue[s as usize];
            let y = tri_of(g);
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(g);
                tree_edge[t.edge[s as usize]] = true;
                queue.push_back(y);
            }
        }
    }
    // Entry sides of the tree path from the root to x.
    let path_to = |mut x: usize| {
        let mut out = Vec::new();
        while let Some(g) = parent[x] {
            out.push(g);
            x = tri_of(t.glue[g as usize]);
        }
        out.reverse();
        out
    };
    let mut basis = Vec::new();
    for e in 0..t.num_edges() {
        if tree_edge[e] {
            continue;
        }
        let s = t.edge_sides[e][0];
        let from = tri_of(t.glue[s as usize]);
        let mut w = path_to(from);
        w.push(s);
        let back = path_to(tri_of(s));
        // Return along the tree: reverse of the root-to-x path.
        for &g in back.iter().rev() {
            w.push(t.glue[g as usize]);
        }
        let w = crate::word::free_reduce_cyclic(t, &w);
        basis.push(w);
    }
    let n = basis.len();
    let mut pairing = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let p = signed_pairing(t, &basis[i], &basis[j]);
            pairing[i][j] = p;
            pairing[j][i] = -p;
        }
    }
    let g = t.signature.genus as usize;
    let p = t.signature.punctures as usize;
    HomologyData { basis, mod2_rank: 2 * g + p.saturating_sub(1), pairing }
}
