//! Normal curves, canonical forms and enumeration.
//!
//! A multicurve in normal position is determined by its edge weights. Tracing
//! the weights recovers the components as cyclic words of entry sides (see
//! `word`). A class is identified by the weights of a canonical
//! representative: the normal representative on punctured surfaces and the
//! closed geodesic on closed surfaces.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::Mod2Reducer;
use crate::surface::{idx_of, next, prev, tri_of, Side, Triangulation};
use crate::word::{self, Turn};

/// Per-edge weights of a normal multicurve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalCurve {
    pub weights: Vec<u32>,
    pub component_count: usize,
}

/// Isotopy class of an essential simple closed curve.
///
/// `word` is the canonical representative's cutting sequence, oriented and
/// rotated to be lexicographically least. Equality and order use `coords`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveClass {
    pub coords: Vec<u32>,
    #[serde(skip)]
    pub word: Vec<Side>,
    pub flags: ClassFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassFlags {
    pub nonseparating: bool,
    pub peripheral: bool,
    pub essential: bool,
}

impl PartialEq for CurveClass {
    fn eq(&self, o: &Self) -> bool {
        self.coords == o.coords
    }
}
impl Eq for CurveClass {}
impl std::hash::Hash for CurveClass {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.coords.hash(h)
    }
}
impl PartialOrd for CurveClass {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for CurveClass {
    fn cmp(&self, o: &Self) -> Ordering {
        self.coords.cmp(&o.coords)
    }
}

impl CurveClass {
    pub fn max_weight(&self) -> u32 {
        self.coords.iter().copied().max().unwrap_or(0)
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_nonseparating(&self) -> bool {
        self.flags.nonseparating
    }

    /// Builds the class of a closed path; `None` for trivial and peripheral
    /// curves.
    pub fn from_word(t: &Triangulation, w: &[Side]) -> Result<Option<CurveClass>> {
        match canonical(t, w)? {
            Canon::Essential(cw) => Ok(Some(Self::from_canonical_word(t, cw))),
            _ => Ok(None),
        }
    }

    /// Class of a connected normal curve given by its weights.
    pub fn from_coords(t: &Triangulation, coords: &[u32]) -> Result<CurveClass> {
        let comps = trace(t, coords)?;
        if comps.len() != 1 {
            return Err(Error::InvalidCoordinates(format!(
                "expected one component, found {}",
                comps.len()
            )));
        }
        Self::from_word(t, &comps[0].word)?
            .ok_or_else(|| Error::InvalidCoordinates("curve is trivial or peripheral".into()))
    }

    pub(crate) fn from_canonical_word(t: &Triangulation, cw: Vec<Side>) -> CurveClass {
        let coords = word::weights_of(t, &cw);
        let nonseparating = !Mod2Reducer::of(t).is_zero(&coords);
        CurveClass {
            coords,
            word: cw,
            flags: ClassFlags { nonseparating, peripheral: false, essential: true },
        }
    }

    /// Restores `word` after deserialization.
    pub fn rehydrate(&mut self, t: &Triangulation) -> Result<()> {
        let c = CurveClass::from_coords(t, &self.coords)?;
        if c.coords != self.coords {
            return Err(Error::InvalidCoordinates("coordinates are not in canonical form".into()));
        }
        *self = c;
        Ok(())
    }
}

/// Result of reducing a closed path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Canon {
    Trivial,
    /// Loop around a puncture (the vertex id).
    Peripheral(usize),
    Essential(Vec<Side>),
}

/// Reduces a closed path to its canonical cutting sequence.
pub fn canonical(t: &Triangulation, w: &[Side]) -> Result<Canon> {
    if !word::is_closed_path(t, w) {
        return Err(Error::Diagram("word is not a closed path".into()));
    }
    if t.is_closed() {
        let degree = t.num_sides();
        let r = word::dehn_reduce_cyclic(t, w, degree);
        if r.is_empty() {
            return Ok(Canon::Trivial);
        }
        let geo = t.geometry()?.geodesic(t, &r)?;
        Ok(Canon::Essential(orient(t, &geo)))
    } else {
        let r = word::free_reduce_cyclic(t, w);
        if r.is_empty() {
            return Ok(Canon::Trivial);
        }
        let tr = word::turns(t, &r);
        if tr.iter().all(|&x| x == Turn::Left) {
            return Ok(Canon::Peripheral(t.start_vertex(r[0])));
        }
        if tr.iter().all(|&x| x == Turn::Right) {
            return Ok(Canon::Peripheral(t.end_vertex(r[0])));
        }
        Ok(Canon::Essential(orient(t, &r)))
    }
}

/// Picks the least rotation over both orientations.
pub fn orient(t: &Triangulation, w: &[Side]) -> Vec<Side> {
    let a = word::least_rotation(w);
    let b = word::least_rotation(&word::reverse(t, w));
    a.min(b)
}

/// Corner coordinates of triangle `tri`: entry `i` counts the arcs cutting
/// corner `i` (between sides `i - 1` and `i`).
#[inline]
pub fn corners(t: &Triangulation, w: &[u32], tri: usize) -> [u32; 3] {
    let x = [0, 1, 2].map(|i| w[t.edge[3 * tri + i]] as i64);
    [0, 1, 2].map(|i| ((x[i] + x[(i + 2) % 3] - x[(i + 1) % 3]) / 2) as u32)
}

pub fn check_normal(t: &Triangulation, w: &[u32]) -> Result<()> {
    if w.len() != t.num_edges() {
        return Err(Error::InvalidCoordinates(format!(
            "expected {} weights, got {}",
            t.num_edges(),
            w.len()
        )));
    }
    for tri in 0..t.num_triangles() {
        let x = [0, 1, 2].map(|i| w[t.edge[3 * tri + i]] as i64);
        let sum = x[0] + x[1] + x[2];
        if sum % 2 != 0 || (0..3).any(|i| 2 * x[i] > sum) {
            return Err(Error::InvalidCoordinates(format!("matching fails in triangle {tri}")));
        }
    }
    Ok(())
}

/// One traced component: entry sides and the position of each crossing on
/// its entry side, counted from the side's start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub word: Vec<Side>,
    pub pos: Vec<u32>,
}

/// Splits a normal multicurve into components.
pub fn trace(t: &Triangulation, w: &[u32]) -> Result<Vec<Component>> {
    check_normal(t, w)?;
    let corner: Vec<[u32; 3]> = (0..t.num_triangles()).map(|tri| corners(t, w, tri)).collect();
    let mut offset = vec![0usize; t.num_edges() + 1];
    for e in 0..t.num_edges() {
        offset[e + 1] = offset[e] + w[e] as usize;
    }
    let mut seen = vec![false; offset[t.num_edges()]];
    let mark = |s: Side, p: u32| {
        let e = t.edge[s as usize];
        let q = if t.edge_sides[e][0] == s { p } else { w[e] - 1 - p };
        offset[e] + q as usize
    };
    let mut out = Vec::new();
    for e in 0..t.num_edges() {
        let s0 = t.edge_sides[e][0];
        for q in 0..w[e] {
            if seen[offset[e] + q as usize] {
                continue;
            }
            let mut comp = Component { word: Vec::new(), pos: Vec::new() };
            let (mut s, mut p) = (s0, q);
            loop {
                seen[mark(s, p)] = true;
                comp.word.push(s);
                comp.pos.push(p);
                (s, p) = step(t, w, &corner, s, p);
                if s == s0 && p == q {
                    break;
                }
            }
            out.push(comp);
        }
    }
    Ok(out)
}

/// Follows the arc entering through `(s, p)` to the next entry.
#[inline]
fn step(t: &Triangulation, w: &[u32], corner: &[[u32; 3]], s: Side, p: u32) -> (Side, u32) {
    let c = corner[tri_of(s)];
    let i = idx_of(s);
    let (exit, q) = if p < c[i] {
        let ex = prev(s);
        (ex, w[t.edge[ex as usize]] - 1 - p)
    } else {
        (next(s), w[t.edge[s as usize]] - 1 - p)
    };
    let g = t.glue[exit as usize];
    (g, w[t.edge[g as usize]] - 1 - q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Filter {
    All,
    Nonseparating,
    Separating,
}

impl std::str::FromStr for Filter {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(Filter::All),
            "nonseparating" => Ok(Filter::Nonseparating),
            "separating" => Ok(Filter::Separating),
            _ => Err(format!("unknown filter {s}")),
        }
    }
}

impl Filter {
    pub fn admits(&self, c: &CurveClass) -> bool {
        match self {
            Filter::All => true,
            Filter::Nonseparating => c.flags.nonseparating,
            Filter::Separating => !c.flags.nonseparating,
        }
    }
}

/// Visits every nonzero normal weight vector with entries at most `bound`.
fn for_each_normal<F: FnMut(&[u32])>(t: &Triangulation, bound: u32, first: u32, mut f: F) {
    let ne = t.num_edges();
    // Edge order by first appearance in the triangles; a triangle is checked
    // as soon as its last edge is assigned.
    let mut order = Vec::with_capacity(ne);
    let mut placed = vec![usize::MAX; ne];
    for s in 0..t.num_sides() {
        let e = t.edge[s];
        if placed[e] == usize::MAX {
            placed[e] = order.len();
            order.push(e);
        }
    }
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); ne];
    for tri in 0..t.num_triangles() {
        let last = (0..3).map(|i| placed[t.edge[3 * tri + i]]).max().unwrap();
        ready[last].push(tri);
    }
    let mut w = vec![0u32; ne];
    fn rec<F: FnMut(&[u32])>(
        t: &Triangulation,
        d: usize,
        order: &[usize],
        ready: &[Vec<usize>],
        bound: u32,
        w: &mut Vec<u32>,
        f: &mut F,
    ) {
        if d == order.len() {
            if w.iter().any(|&x| x > 0) {
                f(w);
            }
            return;
        }
        for v in 0..=bound {
            w[order[d]] = v;
            let ok = ready[d].iter().all(|&tri| {
                let x = [0, 1, 2].map(|i| w[t.edge[3 * tri + i]]);
                let sum = x[0] + x[1] + x[2];
                sum % 2 == 0 && x.iter().all(|&xi| 2 * xi <= sum)
            });
            if ok {
                rec(t, d + 1, order, ready, bound, w, f);
            }
        }
        w[order[d]] = 0;
    }
    w[order[0]] = first;
    let ok = ready[0].iter().all(|&tri| {
        let x = [0, 1, 2].map(|i| w[t.edge[3 * tri + i]]);
        let sum = x[0] + x[1] + x[2];
        sum % 2 == 0 && x.iter().all(|&xi| 2 * xi <= sum)
    });
    if ok {
        rec(t, 1, &order, &ready, bound, &mut w, &mut f);
    }
}

/// Connected essential classes whose canonical weights are all at most
/// `bound`, sorted by coordinates.
pub fn enumerate_curves(t: &Triangulation, bound: u32, filter: Filter) -> Result<Vec<CurveClass>> {
    let parts: Vec<Result<Vec<CurveClass>>> = (0..=bound)
        .into_par_iter()
        .map(|first| {
            let mut cands: Vec<Vec<u32>> = Vec::new();
            for_each_normal(t, bound, first, |w| cands.push(w.to_vec()));
            let mut found = Vec::new();
            for w in cands {
                let comps = trace(t, &w)?;
                if comps.len() != 1 {
                    continue;
                }
                if let Canon::Essential(cw) = canonical(t, &comps[0].word)? {
                    let c = CurveClass::from_canonical_word(t, cw);
                    if c.coords == w && filter.admits(&c) {
                        found.push(c);
                    }
                }
            }
            Ok(found)
        })
        .collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Explicit embedded diagram of a multicurve: every component is a cyclic
/// list of crossings `(entry side, position on that side)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDiagram {
    pub components: Vec<Vec<(Side, u32)>>,
}

impl CurveDiagram {
    pub fn from_normal(t: &Triangulation, w: &[u32]) -> Result<CurveDiagram> {
        let comps = trace(t, w)?;
        Ok(CurveDiagram {
            components: comps
                .into_iter()
                .map(|c| c.word.into_iter().zip(c.pos).collect())
                .collect(),
        })
    }

    /// Crossing counts per edge.
    pub fn counts(&self, t: &Triangulation) -> Vec<u32> {
        let mut n = vec![0u32; t.num_edges()];
        for c in &self.components {
            for &(s, _) in c {
                n[t.edge[s as usize]] += 1;
            }
        }
        n
    }

    /// Checks that positions match across gluings and arcs do not cross.
    pub fn validate(&self, t: &Triangulation) -> Result<()> {
        let n = self.counts(t);
        let mut used: Vec<Vec<bool>> = n.iter().map(|&k| vec![false; k as usize]).collect();
        for c in &self.components {
            if c.is_empty() {
                return Err(Error::Diagram("empty component".into()));
            }
            let m = c.len();
            for k in 0..m {
                let (s, p) = c[k];
                let e = t.edge[s as usize];
                if p >= n[e] {
                    return Err(Error::Diagram(format!("position {p} out of range on side {s}")));
                }
                let q = if t.edge_sides[e][0] == s { p } else { n[e] - 1 - p };
                if std::mem::replace(&mut used[e][q as usize], true) {
                    return Err(Error::Diagram(format!("two crossings at position {q} of edge {e}")));
                }
                let (s2, _) = c[(k + 1) % m];
                if tri_of(t.glue[s2 as usize]) != tri_of(s) {
                    return Err(Error::Diagram(format!("consecutive crossings {s} and {s2} not in one triangle")));
                }
            }
        }
        // Arcs per triangle, as chords of the boundary circle.
        let mut chords: Vec<Vec<(u64, u64)>> = vec![Vec::new(); t.num_triangles()];
        let big = n.iter().copied().max().unwrap_or(0) as u64 + 1;
        let coord = |s: Side, p: u32| idx_of(s) as u64 * big + p as u64;
        for c in &self.components {
            let m = c.len();
            for k in 0..m {
                let (s, p) = c[k];
                let (s2, p2) = c[(k + 1) % m];
                let ex = t.glue[s2 as usize];
                let e2 = t.edge[s2 as usize];
                let q = n[e2] - 1 - p2;
                let (a, b) = (coord(s, p), coord(ex, q));
                if a == b {
                    return Err(Error::Diagram("arc with both ends at one point".into()));
                }
                chords[tri_of(s)].push((a.min(b), a.max(b)));
            }
        }
        for ch in &chords {
            for i in 0..ch.len() {
                for j in i + 1..ch.len() {
                    let (a, b) = ch[i];
                    let (c, d) = ch[j];
                    let inside = |x: u64| a < x && x < b;
                    if inside(c) != inside(d) {
                        return Err(Error::Diagram("arcs cross inside a triangle".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Pushes a finger of the curve across the side it enters at crossing
    /// `k` of component `comp`, adding a bigon with that side.
    pub fn finger_move(&mut self, t: &Triangulation, comp: usize, k: usize) {
        let (s, p) = self.components[comp][k];
        let e = t.edge[s as usize];
        let n = self.counts(t)[e];
        let gs = t.glue[s as usize];
        // Re-express every crossing of the edge in coordinates of `s`.
        for c in self.components.iter_mut() {
            for x in c.iter_mut() {
                if t.edge[x.0 as usize] != e {
                    continue;
                }
                let sc = if x.0 == s { x.1 } else { n - 1 - x.1 };
                let sc = if sc > p { sc + 2 } else { sc };
                x.1 = if x.0 == s { sc } else { n + 1 - sc };
            }
        }
        let ins = [(gs, n - p), (s, p + 2)];
        let c = &mut self.components[comp];
        c.splice(k + 1..k + 1, ins);
    }

    pub fn words(&self) -> Vec<Vec<Side>> {
        self.components.iter().map(|c| c.iter().map(|x| x.0).collect()).collect()
    }
}

/// Outcome of tightening a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tightened {
    pub curve: NormalCurve,
    pub classes: Vec<CurveClass>,
    pub trivial: usize,
    /// Puncture vertices linked by peripheral components.
    pub peripheral: Vec<usize>,
}

/// Moves a diagram into canonical position, dropping trivial components.
pub fn tighten(t: &Triangulation, d: &CurveDiagram) -> Result<Tightened> {
    d.validate(t)?;
    let mut weights = vec![0u32; t.num_edges()];
    let mut out = Tightened {
        curve: NormalCurve { weights: Vec::new(), component_count: 0 },
        classes: Vec::new(),
        trivial: 0,
        peripheral: Vec::new(),
    };
    for w in d.words() {
        match canonical(t, &w)? {
            Canon::Trivial => out.trivial += 1,
            Canon::Peripheral(v) => {
                let r = word::free_reduce_cyclic(t, &w);
                for (x, y) in weights.iter_mut().zip(word::weights_of(t, &r)) {
                    *x += y;
                }
                out.peripheral.push(v);
                out.curve.component_count += 1;
            }
            Canon::Essential(cw) => {
                let c = CurveClass::from_canonical_word(t, cw);
                for (x, y) in weights.iter_mut().zip(&c.coords) {
                    *x += y;
                }
                out.classes.push(c);
                out.curve.component_count += 1;
            }
        }
    }
    out.curve.weights = weights;
    Ok(out)
}

/// Weights of a multicurve made of pairwise disjoint classes.
pub fn multicurve(t: &Triangulation, cs: &[&CurveClass]) -> Vec<u32> {
    let mut w = vec![0u32; t.num_edges()];
    for c in cs {
        for (x, y) in w.iter_mut().zip(&c.coords) {
            *x += y;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_standard_surface, Signature};

    #[test]
    fn punctured_torus_unit_weights() {
        let t = build_standard_surface(Signature::new(1, 1)).unwrap();
        let cs = enumerate_curves(&t, 1, Filter::All).unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.flags.nonseparating));
    }

    #[test]
    fn trace_counts_components() {
        let t = build_standard_surface(Signature::new(1, 1)).unwrap();
        let comps = trace(&t, &[2, 2, 0]).unwrap();
        assert_eq!(comps.len(), 2);
    }
}
