//! Finite slices of the curve complexes and pants decompositions.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::curve::{enumerate_curves, CurveClass, Filter};
use crate::cut::{cut_classes, CutPiece, Flank, Slot};
use crate::error::{Error, Result};
use crate::intersection::intersection_table;
use crate::surface::{Signature, Triangulation};

pub const SLICE_VERSION: &str = "slice-v1";

/// C: all curves, disjointness edges. N: nonseparating curves, disjointness
/// edges. G: nonseparating curves, edges at intersection one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    C,
    N,
    G,
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "C" | "c" => Ok(Kind::C),
            "N" | "n" => Ok(Kind::N),
            "G" | "g" => Ok(Kind::G),
            _ => Err(format!("unknown complex kind {s:?} (expected C, N or G)")),
        }
    }
}

impl Kind {
    pub fn filter(self) -> Filter {
        match self {
            Kind::C => Filter::All,
            Kind::N | Kind::G => Filter::Nonseparating,
        }
    }

    fn related(self, i: u32) -> bool {
        match self {
            Kind::C | Kind::N => i == 0,
            Kind::G => i == 1,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexSlice {
    pub version: String,
    pub kind: Kind,
    pub signature: Signature,
    /// Weight bound the vertices were enumerated at, if any.
    pub weight: Option<u32>,
    pub vertices: Vec<CurveClass>,
    pub itable: Vec<Vec<u32>>,
    pub edges: Vec<(usize, usize)>,
    #[serde(skip)]
    index: HashMap<Vec<u32>, usize>,
}

impl ComplexSlice {
    pub fn build(t: &Triangulation, weight: u32, kind: Kind) -> Result<ComplexSlice> {
        let vs = enumerate_curves(t, weight, kind.filter())?;
        Self::from_classes(t, kind, vs, Some(weight))
    }

    /// Slice on the given classes, kept in the given order.
    pub fn from_classes(
        t: &Triangulation,
        kind: Kind,
        vertices: Vec<CurveClass>,
        weight: Option<u32>,
    ) -> Result<ComplexSlice> {
        if kind != Kind::C {
            if let Some(c) = vertices.iter().find(|c| !c.flags.nonseparating) {
                return Err(Error::Precondition(format!("separating class {:?} in a {kind:?} slice", c.coords)));
            }
        }
        let itable = intersection_table(t, &vertices);
        Ok(Self::assemble(t.signature, kind, vertices, itable, weight))
    }

    pub fn assemble(
        signature: Signature,
        kind: Kind,
        vertices: Vec<CurveClass>,
        itable: Vec<Vec<u32>>,
        weight: Option<u32>,
    ) -> ComplexSlice {
        let n = vertices.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if kind.related(itable[i][j]) {
                    edges.push((i, j));
                }
            }
        }
        let index = vertices.iter().enumerate().map(|(k, c)| (c.coords.clone(), k)).collect();
        ComplexSlice { version: SLICE_VERSION.into(), kind, signature, weight, vertices, itable, edges, index }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, c: &CurveClass) -> Option<usize> {
        self.index.get(&c.coords).copied()
    }

    /// Restores the lookup index and the class words after deserialization.
    pub fn rehydrate(&mut self, t: &Triangulation) -> Result<()> {
        for c in self.vertices.iter_mut() {
            c.rehydrate(t)?;
        }
        self.index = self.vertices.iter().enumerate().map(|(k, c)| (c.coords.clone(), k)).collect();
        Ok(())
    }

    /// Sub-slice of another kind on the vertices admitted by its filter,
    /// with indices into `self` alongside.
    pub fn restrict(&self, kind: Kind) -> (ComplexSlice, Vec<usize>) {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| kind.filter().admits(&self.vertices[i])).collect();
        let vs = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let it = keep.iter().map(|&i| keep.iter().map(|&j| self.itable[i][j]).collect()).collect();
        (Self::assemble(self.signature, kind, vs, it, self.weight), keep)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for row in &self.itable {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let rel = match self.kind {
            Kind::C | Kind::N => "disjoint",
            Kind::G => "meet once",
        };
        let _ = writeln!(s, "graph slice {{");
        let _ = writeln!(s, "  label=\"{:?} {} edges: {rel}\";", self.kind, self.signature);
        for (k, c) in self.vertices.iter().enumerate() {
            let coords: Vec<String> = c.coords.iter().map(|x| x.to_string()).collect();
            let shape = if c.flags.nonseparating { "ellipse" } else { "box" };
            let _ = writeln!(s, "  v{k} [label=\"{}\", shape={shape}];", coords.join(" "));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  v{a} -- v{b};");
        }
        s.push_str("}\n");
        s
    }

    /// Maximal cliques of the disjointness relation. Cliques of the size of a
    /// pants decomposition are flagged globally maximal; smaller ones are
    /// maximal only for lack of vertices in the slice.
    pub fn maximal_simplices(&self) -> Result<Vec<Simplex>> {
        if self.kind == Kind::G {
            return Err(Error::Precondition("simplices are defined for C and N slices".into()));
        }
        let full = self.signature.pants_curves();
        let n = self.len();
        let words = n.div_ceil(64);
        let mut adj = vec![vec![0u64; words]; n];
        for &(a, b) in &self.edges {
            adj[a][b / 64] |= 1 << (b % 64);
            adj[b][a / 64] |= 1 << (a % 64);
        }
        let mut out = Vec::new();
        let mut p = vec![0u64; words];
        for v in 0..n {
            p[v / 64] |= 1 << (v % 64);
        }
        let x = vec![0u64; words];
        bron_kerbosch(&adj, &mut Vec::new(), p, x, &mut out);
        let mut simplices: Vec<Simplex> = out
            .into_iter()
            .map(|mut vs| {
                vs.sort_unstable();
                Simplex { globally_maximal: vs.len() == full, vertices: vs }
            })
            .collect();
        simplices.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        Ok(simplices)
    }

    /// Chains of `len` vertices among those admitted by `allow`, in
    /// lexicographic order of vertex indices, at most `limit` of them.
    pub fn find_chains(&self, len: usize, allow: &dyn Fn(usize) -> bool, limit: usize) -> Vec<Vec<usize>> {
        let cand: Vec<usize> = (0..self.len()).filter(|&v| allow(v)).collect();
        let mut out = Vec::new();
        let mut path = Vec::new();
        chains_rec(&self.itable, &cand, len, limit, &mut path, &mut out);
        out
    }
}

fn chains_rec(
    it: &[Vec<u32>],
    cand: &[usize],
    len: usize,
    limit: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if out.len() >= limit {
        return;
    }
    if path.len() == len {
        out.push(path.clone());
        return;
    }
    let k = path.len();
    for &x in cand {
        if path.contains(&x) {
            continue;
        }
        if path.iter().enumerate().all(|(j, &y)| it[x][y] == if j + 1 == k { 1 } else { 0 }) {
            path.push(x);
            chains_rec(it, cand, len, limit, path, out);
            path.pop();
            if out.len() >= limit {
                return;
            }
        }
    }
}

pub fn is_chain(it: &[Vec<u32>], chain: &[usize]) -> bool {
    chain.iter().enumerate().all(|(a, &x)| {
        chain.iter().enumerate().all(|(b, &y)| {
            a == b || it[x][y] == if a.abs_diff(b) == 1 { 1 } else { 0 }
        })
    })
}

fn bron_kerbosch(adj: &[Vec<u64>], r: &mut Vec<usize>, p: Vec<u64>, mut x: Vec<u64>, out: &mut Vec<Vec<usize>>) {
    let empty = |s: &[u64]| s.iter().all(|&w| w == 0);
    if empty(&p) && empty(&x) {
        out.push(r.clone());
        return;
    }
    let members = |s: &[u64]| -> Vec<usize> {
        let mut v = Vec::new();
        for (i, &w) in s.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                v.push(i * 64 + b);
                w &= w - 1;
            }
        }
        v
    };
    // Pivot maximizing neighbours in P.
    let union: Vec<u64> = p.iter().zip(&x).map(|(a, b)| a | b).collect();
    let pivot = members(&union)
        .into_iter()
        .max_by_key(|&u| {
            let c: u32 = adj[u].iter().zip(&p).map(|(a, b)| (a & b).count_ones()).sum();
            (c, std::cmp::Reverse(u))
        })
        .unwrap();
    let cand: Vec<u64> = p.iter().zip(&adj[pivot]).map(|(a, b)| a & !b).collect();
    let mut p = p;
    for v in members(&cand) {
        r.push(v);
        let np = p.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
        let nx = x.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
        bron_kerbosch(adj, r, np, nx, out);
        r.pop();
        p[v / 64] &= !(1 << (v % 64));
        x[v / 64] |= 1 << (v % 64);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    pub globally_maximal: bool,
}

/// A pants decomposition with its cut pieces. Slots refer to positions in
/// `curves`.
#[derive(Debug, Clone, Serialize)]
pub struct PantsDecomposition {
    pub curves: Vec<CurveClass>,
    pub pants: Vec<CutPiece>,
}

/// Node of the dual multigraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PantsNode {
    pub punctures: usize,
    /// No curve appears twice on the boundary.
    pub embedded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub nodes: Vec<PantsNode>,
    /// Per curve: pants on its left and on its right.
    pub edges: Vec<(usize, usize)>,
}

impl PantsDecomposition {
    /// `None` unless the classes are pairwise disjoint, of the right number,
    /// and cut the surface into pants.
    pub fn new(t: &Triangulation, curves: &[CurveClass]) -> Result<Option<PantsDecomposition>> {
        if curves.len() != t.signature.pants_curves() {
            return Ok(None);
        }
        let it = intersection_table(t, curves);
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                if it[i][j] != 0 || curves[i] == curves[j] {
                    return Ok(None);
                }
            }
        }
        let refs: Vec<&CurveClass> = curves.iter().collect();
        let cut = cut_classes(t, &refs)?;
        if cut.pieces.len() != t.signature.pants_count() || !cut.pieces.iter().all(|p| p.is_pants()) {
            return Ok(None);
        }
        Ok(Some(PantsDecomposition { curves: curves.to_vec(), pants: cut.pieces }))
    }

    fn check(&self, a: usize) -> Result<()> {
        if a >= self.curves.len() {
            return Err(Error::NotInDecomposition(a));
        }
        Ok(())
    }

    pub fn position(&self, c: &CurveClass) -> Option<usize> {
        self.curves.iter().position(|x| x == c)
    }

    /// Whether curves `a` and `b` lie on the boundary of a common pants.
    pub fn adjacent(&self, a: usize, b: usize) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::Precondition("adjacency of a curve with itself".into()));
        }
        Ok(self.pants.iter().any(|p| {
            let cs = p.components();
            cs.contains(&a) && cs.contains(&b)
        }))
    }

    /// Distinct curves adjacent to `x`.
    pub fn neighbours(&self, x: usize) -> Result<Vec<usize>> {
        self.check(x)?;
        let mut out = Vec::new();
        for y in 0..self.curves.len() {
            if y != x && self.adjacent(x, y)? {
                out.push(y);
            }
        }
        assert!(out.len() <= 4, "a pants curve has at most four neighbours");
        Ok(out)
    }

    pub fn is_4_curve(&self, x: usize) -> Result<bool> {
        Ok(self.neighbours(x)?.len() == 4)
    }

    pub fn dual_graph(&self) -> DualGraph {
        let nodes = self
            .pants
            .iter()
            .map(|p| {
                let cs = p.components();
                let embedded = (0..cs.len()).all(|i| !cs[i + 1..].contains(&cs[i]));
                PantsNode { punctures: p.punctures_contained.len(), embedded }
            })
            .collect();
        let find = |slot: Slot| self.pants.iter().position(|p| p.provenance.contains(&slot)).unwrap();
        let edges = (0..self.curves.len())
            .map(|k| {
                (
                    find(Slot { component: k, flank: Flank::Left }),
                    find(Slot { component: k, flank: Flank::Right }),
                )
            })
            .collect();
        DualGraph { nodes, edges }
    }

    pub fn dual_dot(&self) -> String {
        let g = self.dual_graph();
        let mut s = String::from("graph pants {\n");
        for (k, n) in g.nodes.iter().enumerate() {
            let style = if n.embedded { "solid" } else { "dashed" };
            let _ = writeln!(s, "  p{k} [label=\"P{k} punctures={}\", style={style}];", n.punctures);
        }
        for (k, (a, b)) in g.edges.iter().enumerate() {
            let _ = writeln!(s, "  p{a} -- p{b} [label=\"c{k}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Pants bijection realizing `corr` (curve `k` of `p` goes to curve
/// `corr[k]` of `q`) as an isomorphism of dual multigraphs.
pub fn topological_equivalence(
    p: &PantsDecomposition,
    q: &PantsDecomposition,
    corr: &[usize],
) -> Result<Option<Vec<usize>>> {
    if p.curves.len() != q.curves.len() || corr.len() != p.curves.len() || p.pants.len() != q.pants.len() {
        return Err(Error::SizeMismatch(format!(
            "{} and {} curves with a correspondence of {}",
            p.curves.len(),
            q.curves.len(),
            corr.len()
        )));
    }
    let (gp, gq) = (p.dual_graph(), q.dual_graph());
    let n = gp.nodes.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        i: usize,
        gp: &DualGraph,
        gq: &DualGraph,
        corr: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == gp.nodes.len() {
            return gp.edges.iter().enumerate().all(|(k, &(a, b))| {
                let (c, d) = gq.edges[corr[k]];
                let (x, y) = (map[a], map[b]);
                (x == c && y == d) || (x == d && y == c)
            });
        }
        for j in 0..gq.nodes.len() {
            if used[j] || gp.nodes[i] != gq.nodes[j] {
                continue;
            }
            map[i] = j;
            used[j] = true;
            let consistent = gp.edges.iter().enumerate().all(|(k, &(a, b))| {
                if map[a] == usize::MAX || map[b] == usize::MAX {
                    return true;
                }
                let (c, d) = gq.edges[corr[k]];
                (map[a] == c && map[b] == d) || (map[a] == d && map[b] == c)
            });
            if consistent && rec(i + 1, gp, gq, corr, map, used) {
                return true;
            }
            map[i] = usize::MAX;
            used[j] = false;
        }
        false
    }
    Ok(rec(0, &gp, &gq, corr, &mut map, &mut used).then_some(map))
}
