//! Cutting a surface along a multicurve.
//!
//! In a triangle with corner counts `c`, the arcs around corner `i` split it
//! into zones `(i, 0)` (the tip) up to `(i, c_i - 1)`; everything past the last
//! arc of every corner is the central zone. Each zone is an open disk. Segments
//! of the sides between consecutive crossings glue zones together, and the
//! pieces are the resulting components. Euler characteristics are counted
//! cell by cell, with the base vertex of a closed surface as the only 0-cell.

use serde::Serialize;

use crate::curve::{corners, trace, CurveClass};
use crate::error::{Error, Result};
use crate::surface::{idx_of, side, Side, Triangulation};
use crate::word;

/// Side of an oriented curve component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flank {
    Left,
    Right,
}

/// A boundary circle of a piece: one side of one curve component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub component: usize,
    pub flank: Flank,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutPiece {
    pub genus: u32,
    /// Curve sides plus punctures.
    pub boundary_count: usize,
    pub euler_characteristic: i64,
    pub provenance: Vec<Slot>,
    pub punctures_contained: Vec<usize>,
}

impl CutPiece {
    pub fn is_pants(&self) -> bool {
        self.genus == 0 && self.boundary_count == 3
    }

    /// Curve components on the boundary, with multiplicity.
    pub fn components(&self) -> Vec<usize> {
        self.provenance.iter().map(|s| s.component).collect()
    }
}

/// Result of cutting along a multicurve; `components[k]` is the traced word of
/// component `k`, oriented as reported in the slots.
#[derive(Debug, Clone)]
pub struct Cut {
    pub pieces: Vec<CutPiece>,
    pub components: Vec<Vec<Side>>,
}

impl Cut {
    /// Index of the piece on the given side of a component.
    pub fn piece_of(&self, slot: Slot) -> usize {
        self.pieces
            .iter()
            .position(|p| p.provenance.contains(&slot))
            .expect("every slot lies on exactly one piece")
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Zone bookkeeping for one weight vector.
struct Zones<'a> {
    t: &'a Triangulation,
    w: &'a [u32],
    corner: Vec<[u32; 3]>,
    /// First zone id of each triangle; the central zone comes first.
    base: Vec<usize>,
}

impl<'a> Zones<'a> {
    fn new(t: &'a Triangulation, w: &'a [u32]) -> Self {
        let corner: Vec<[u32; 3]> = (0..t.num_triangles()).map(|x| corners(t, w, x)).collect();
        let mut base = Vec::with_capacity(t.num_triangles() + 1);
        let mut n = 0;
        for c in &corner {
            base.push(n);
            n += 1 + (c[0] + c[1] + c[2]) as usize;
        }
        base.push(n);
        Zones { t, w, corner, base }
    }

    fn count(&self) -> usize {
        *self.base.last().unwrap()
    }

    /// Zone `(i, z)` of triangle `tri`; `z == c_i` is the central zone.
    fn zone(&self, tri: usize, i: usize, z: u32) -> usize {
        let c = self.corner[tri];
        if z >= c[i] {
            return self.base[tri];
        }
        let before: u32 = c[..i].iter().sum();
        self.base[tri] + 1 + (before + z) as usize
    }

    /// Zone touching segment `j` (0 at the side's start) of side `s`.
    fn segment_zone(&self, s: Side, j: u32) -> usize {
        let (tri, i) = ((s / 3) as usize, idx_of(s));
        let c = self.corner[tri];
        let n = self.w[self.t.edge[s as usize]];
        if j < c[i] {
            self.zone(tri, i, j)
        } else if j == c[i] {
            self.base[tri]
        } else {
            self.zone(tri, (i + 1) % 3, n - j)
        }
    }

    /// Zones to the left and right of the arc entering through `(s, p)`.
    fn flanks(&self, s: Side, p: u32) -> (usize, usize) {
        let (tri, i) = ((s / 3) as usize, idx_of(s));
        let c = self.corner[tri];
        if p < c[i] {
            // Cuts corner i, which lies on the left.
            (self.zone(tri, i, p), self.zone(tri, i, p + 1))
        } else {
            let n = self.w[self.t.edge[s as usize]];
            let k = n - 1 - p;
            let j = (i + 1) % 3;
            (self.zone(tri, j, k + 1), self.zone(tri, j, k))
        }
    }
}

/// Cuts along the normal multicurve with weights `w`.
pub fn cut_along(t: &Triangulation, w: &[u32]) -> Result<Cut> {
    let comps = trace(t, w)?;
    let z = Zones::new(t, w);
    let nz = z.count();
    let mut dsu = Dsu((0..nz).collect());
    for e in 0..t.num_edges() {
        let [s, g] = t.edge_sides[e];
        let n = w[e];
        for j in 0..=n {
            dsu.union(z.segment_zone(s, j), z.segment_zone(g, n - j));
        }
    }
    // Piece ids in order of their least zone.
    let mut piece_of_root = vec![usize::MAX; nz];
    let mut npieces = 0;
    for x in 0..nz {
        let r = dsu.find(x);
        if piece_of_root[r] == usize::MAX {
            piece_of_root[r] = npieces;
            npieces += 1;
        }
    }
    let mut piece = |x: usize| piece_of_root[dsu.find(x)];
    let mut chi = vec![0i64; npieces];
    for x in 0..nz {
        chi[piece(x)] += 1;
    }
    for e in 0..t.num_edges() {
        let s = t.edge_sides[e][0];
        for j in 0..=w[e] {
            chi[piece(z.segment_zone(s, j))] -= 1;
        }
    }
    // Vertices: each is a point of the piece holding its corner tips.
    let mut vertex_piece = vec![usize::MAX; t.num_vertices];
    for tri in 0..t.num_triangles() {
        for i in 0..3 {
            let v = t.vertex[side(tri, i) as usize];
            if vertex_piece[v] == usize::MAX {
                vertex_piece[v] = piece(z.zone(tri, i, 0));
            }
        }
    }
    let mut punct: Vec<Vec<usize>> = vec![Vec::new(); npieces];
    for v in 0..t.num_vertices {
        if t.is_puncture(v) {
            punct[vertex_piece[v]].push(v);
        } else {
            chi[vertex_piece[v]] += 1;
        }
    }
    let mut prov: Vec<Vec<Slot>> = vec![Vec::new(); npieces];
    for (k, c) in comps.iter().enumerate() {
        let (l, r) = z.flanks(c.word[0], c.pos[0]);
        prov[piece(l)].push(Slot { component: k, flank: Flank::Left });
        prov[piece(r)].push(Slot { component: k, flank: Flank::Right });
    }
    let mut pieces = Vec::with_capacity(npieces);
    for p in 0..npieces {
        let b = prov[p].len() + punct[p].len();
        let g2 = 2 - chi[p] - b as i64;
        if g2 < 0 || g2 % 2 != 0 {
            return Err(Error::Diagram(format!("piece {p} has χ {} with {b} boundary circles", chi[p])));
        }
        pieces.push(CutPiece {
            genus: (g2 / 2) as u32,
            boundary_count: b,
            euler_characteristic: chi[p],
            provenance: std::mem::take(&mut prov[p]),
            punctures_contained: std::mem::take(&mut punct[p]),
        });
    }
    Ok(Cut { pieces, components: comps.into_iter().map(|c| c.word).collect() })
}

/// Cuts along pairwise disjoint classes (repeats give parallel copies).
/// Component `k` of the result is a copy of `cs[k]`, oriented like its
/// canonical word.
pub fn cut_classes(t: &Triangulation, cs: &[&CurveClass]) -> Result<Cut> {
    let w = crate::curve::multicurve(t, cs);
    let mut cut = cut_along(t, &w)?;
    if cut.components.len() != cs.len() {
        return Err(Error::Precondition(format!(
            "{} classes traced to {} components; the classes are not pairwise disjoint",
            cs.len(),
            cut.components.len()
        )));
    }
    // Match traced components to classes and record orientation flips.
    let mut target = vec![usize::MAX; cs.len()];
    let mut flip = vec![false; cs.len()];
    let mut taken = vec![false; cs.len()];
    for (k, comp) in cut.components.iter().enumerate() {
        let cw = word::weights_of(t, comp);
        let j = (0..cs.len())
            .find(|&j| !taken[j] && cs[j].coords == cw)
            .ok_or_else(|| Error::Diagram("traced component matches no input class".into()))?;
        taken[j] = true;
        target[k] = j;
        flip[k] = !is_rotation(comp, &cs[j].word);
    }
    let mut comps = vec![Vec::new(); cs.len()];
    for (k, comp) in cut.components.drain(..).enumerate() {
        comps[target[k]] = if flip[k] { word::reverse(t, &comp) } else { comp };
    }
    cut.components = comps;
    for p in cut.pieces.iter_mut() {
        for s in p.provenance.iter_mut() {
            let k = s.component;
            s.component = target[k];
            if flip[k] {
                s.flank = match s.flank {
                    Flank::Left => Flank::Right,
                    Flank::Right => Flank::Left,
                };
            }
        }
        p.provenance.sort();
    }
    Ok(cut)
}

fn is_rotation(a: &[Side], b: &[Side]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..b.len()).any(|r| (0..a.len()).all(|k| a[k] == b[(r + k) % b.len()])))
}

/// How a single class sits in the surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Classification {
    Nonseparating,
    Separating { pieces: Vec<PieceType> },
}

/// Topological type of a piece: genus, curve sides and punctures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PieceType {
    pub genus: u32,
    pub boundary: usize,
    pub punctures: usize,
}

impl PieceType {
    pub fn of(p: &CutPiece) -> PieceType {
        PieceType { genus: p.genus, boundary: p.provenance.len(), punctures: p.punctures_contained.len() }
    }
}

pub fn classify(t: &Triangulation, c: &CurveClass) -> Result<Classification> {
    let cut = cut_classes(t, &[c])?;
    if cut.pieces.len() == 1 {
        return Ok(Classification::Nonseparating);
    }
    let mut pieces: Vec<PieceType> = cut.pieces.iter().map(PieceType::of).collect();
    pieces.sort();
    Ok(Classification::Separating { pieces })
}

/// Side of the separating class `c` on which the disjoint class `x` lies.
pub fn side_of(t: &Triangulation, c: &CurveClass, x: &CurveClass) -> Result<Flank> {
    if c == x {
        return Err(Error::Precondition("a curve does not lie on a side of itself".into()));
    }
    let cut = cut_classes(t, &[c, x])?;
    for flank in [Flank::Left, Flank::Right] {
        let p = &cut.pieces[cut.piece_of(Slot { component: 1, flank })];
        for s in &p.provenance {
            if s.component == 0 {
                return Ok(s.flank);
            }
        }
    }
    Err(Error::Precondition("curve is not separating".into()))
}
