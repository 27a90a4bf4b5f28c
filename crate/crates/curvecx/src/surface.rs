//! Triangulated model surfaces.
//!
//! Sides are numbered `3 * t + i` for side `i` of triangle `t`. Side `i` runs
//! from corner `i` to corner `i + 1` (counterclockwise), so the triangle lies
//! to the left of each of its sides. Gluings reverse side orientation.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hyperbolic::ClosedGeometry;

pub type Side = u32;

#[inline]
pub fn side(t: usize, i: usize) -> Side {
    (3 * t + i) as Side
}

#[inline]
pub fn tri_of(s: Side) -> usize {
    (s / 3) as usize
}

#[inline]
pub fn idx_of(s: Side) -> usize {
    (s % 3) as usize
}

/// The next side counterclockwise in the same triangle.
#[inline]
pub fn next(s: Side) -> Side {
    s - s % 3 + (s % 3 + 1) % 3
}

#[inline]
pub fn prev(s: Side) -> Side {
    s - s % 3 + (s % 3 + 2) % 3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub genus: u32,
    pub punctures: u32,
}

impl Signature {
    pub fn new(genus: u32, punctures: u32) -> Self {
        Signature { genus, punctures }
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }

    /// Number of curves in a pants decomposition.
    pub fn pants_curves(&self) -> usize {
        (3 * self.genus as i64 - 3 + self.punctures as i64).max(0) as usize
    }

    pub fn pants_count(&self) -> usize {
        (2 * self.genus as i64 - 2 + self.punctures as i64).max(0) as usize
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.genus, self.punctures)
    }
}

impl std::str::FromStr for Signature {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut it = s.split(',');
        let g = it.next().ok_or("expected g,p")?.trim();
        let p = it.next().ok_or("expected g,p")?.trim();
        if it.next().is_some() {
            return Err("expected g,p".into());
        }
        Ok(Signature {
            genus: g.parse().map_err(|_| format!("bad genus {g:?}"))?,
            punctures: p.parse().map_err(|_| format!("bad puncture count {p:?}"))?,
        })
    }
}

/// Which boundary side of the fundamental polygon a triangle side lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideKind {
    Diagonal,
    Polygon(u32),
}

#[derive(Debug, Clone)]
pub struct Triangulation {
    pub signature: Signature,
    /// `glue[s]` is the side glued to `s`.
    pub glue: Vec<Side>,
    /// Edge id of every side.
    pub edge: Vec<usize>,
    /// For each edge, its two sides; the first is the reference side.
    pub edge_sides: Vec<[Side; 2]>,
    /// Vertex id at the start of each side.
    pub vertex: Vec<usize>,
    pub num_vertices: usize,
    /// Vertex ids standing for boundary components.
    pub punctures: Vec<usize>,
    /// The interior vertex of a closed surface.
    pub base_vertex: Option<usize>,
    /// Number of corners around each vertex.
    pub degree: Vec<usize>,
    pub(crate) side_kind: Vec<SideKind>,
    pub(crate) polygon_corner: Vec<u32>,
    geometry: OnceLock<std::result::Result<ClosedGeometry, Error>>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature && self.glue == other.glue && self.punctures == other.punctures
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub version: String,
    pub signature: Signature,
    pub triangles: Vec<[Side; 3]>,
    pub gluing: Vec<Side>,
    pub punctures: Vec<usize>,
}

impl Triangulation {
    pub fn num_triangles(&self) -> usize {
        self.glue.len() / 3
    }

    pub fn num_edges(&self) -> usize {
        self.edge_sides.len()
    }

    pub fn num_sides(&self) -> usize {
        self.glue.len()
    }

    pub fn is_closed(&self) -> bool {
        self.base_vertex.is_some()
    }

    /// V − E + F, counting only interior (non-puncture) vertices.
    pub fn euler_characteristic(&self) -> i64 {
        let interior = (self.num_vertices - self.punctures.len()) as i64;
        interior - self.num_edges() as i64 + self.num_triangles() as i64
    }

    pub fn is_puncture(&self, v: usize) -> bool {
        self.base_vertex != Some(v)
    }

    /// Vertex at the start of side `s` in its triangle (corner `i`).
    pub fn start_vertex(&self, s: Side) -> usize {
        self.vertex[s as usize]
    }

    pub fn end_vertex(&self, s: Side) -> usize {
        self.vertex[next(s) as usize]
    }

    pub fn geometry(&self) -> Result<&ClosedGeometry> {
        self.geometry
            .get_or_init(|| ClosedGeometry::build(self))
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn to_json(&self) -> TriangulationJson {
        TriangulationJson {
            version: "tri-v1".into(),
            signature: self.signature,
            triangles: (0..self.num_triangles())
                .map(|t| [side(t, 0), side(t, 1), side(t, 2)])
                .collect(),
            gluing: self.glue.clone(),
            punctures: self.punctures.clone(),
        }
    }

    /// Reads a triangulation dump. Only the shipped standard surfaces carry the
    /// polygon data used for closed-surface canonical forms, so the dump must
    /// match the standard construction for its signature.
    pub fn from_json(j: &TriangulationJson) -> Result<Triangulation> {
        if j.version != "tri-v1" {
            return Err(Error::InvalidTriangulation(format!("unknown version {}", j.version)));
        }
        let std = if j.signature.genus == 0 {
            build_punctured_sphere(j.signature.punctures as usize)?
        } else {
            build_standard_surface(j.signature)?
        };
        if std.glue != j.gluing || std.punctures != j.punctures {
            return Err(Error::InvalidTriangulation(
                "gluing differs from the standard construction for this signature".into(),
            ));
        }
        Ok(std)
    }

    /// Short stable digest of the serialized triangulation.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(&self.to_json()).expect("serializable");
        let digest = Sha256::digest(text.as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// All simplicial automorphisms other than the identity, in a fixed order.
    pub fn automorphisms(&self) -> Vec<Automorphism> {
        let mut out = Vec::new();
        let ns = self.num_sides() as Side;
        for preserving in [true, false] {
            for target in 0..ns {
                if let Some(map) = self.try_automorphism(target, preserving) {
                    let ident = preserving && (0..ns).all(|s| map[s as usize] == s);
                    if !ident {
                        out.push(Automorphism { map, orientation_preserving: preserving });
                    }
                }
            }
        }
        out
    }

    fn try_automorphism(&self, target: Side, preserving: bool) -> Option<Vec<Side>> {
        let ns = self.num_sides();
        let mut map = vec![u32::MAX; ns];
        let mut used = vec![false; ns];
        let mut stack = vec![(0 as Side, target)];
        while let Some((s, img)) = stack.pop() {
            if map[s as usize] != u32::MAX {
                if map[s as usize] != img {
                    return None;
                }
                continue;
            }
            if used[img as usize] {
                return None;
            }
            // Fill the whole triangle of s.
            let (mut a, mut b) = (s, img);
            for _ in 0..3 {
                if map[a as usize] != u32::MAX && map[a as usize] != b {
                    return None;
                }
                if map[a as usize] == u32::MAX {
                    if used[b as usize] {
                        return None;
                    }
                    map[a as usize] = b;
                    used[b as usize] = true;
                    stack.push((self.glue[a as usize], self.glue[b as usize]));
                }
                a = next(a);
                b = if preserving { next(b) } else { prev(b) };
            }
        }
        if map.contains(&u32::MAX) {
            return None;
        }
        for s in 0..ns {
            if self.glue[map[s] as usize] != map[self.glue[s] as usize] {
                return None;
            }
        }
        Some(map)
    }
}

/// A relabeling of sides that preserves the gluing.
///
/// Orientation-reversing automorphisms map a side onto a side traversed in the
/// opposite direction, so the image of an entry side is still an entry side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Automorphism {
    pub map: Vec<Side>,
    pub orientation_preserving: bool,
}

impl Automorphism {
    pub fn apply(&self, s: Side) -> Side {
        self.map[s as usize]
    }

    pub fn compose(&self, then: &Automorphism) -> Automorphism {
        Automorphism {
            map: self.map.iter().map(|&s| then.map[s as usize]).collect(),
            orientation_preserving: self.orientation_preserving == then.orientation_preserving,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.orientation_preserving && self.map.iter().enumerate().all(|(i, &s)| i as Side == s)
    }

    pub fn edge_map(&self, t: &Triangulation) -> Vec<usize> {
        (0..t.num_edges())
            .map(|e| t.edge[self.apply(t.edge_sides[e][0]) as usize])
            .collect()
    }
}

struct Builder {
    /// Triangles as triples of vertex labels, counterclockwise.
    tris: Vec<[u32; 3]>,
    glue: Vec<Side>,
    kind: Vec<SideKind>,
}

fn finish(b: Builder, signature: Signature, closed: bool) -> Result<Triangulation> {
    let ns = b.glue.len();
    for s in 0..ns {
        let g = b.glue[s] as usize;
        if g >= ns || b.glue[g] as usize != s || g == s {
            return Err(Error::InvalidTriangulation(format!("gluing is not an involution at side {s}")));
        }
    }
    // Corners: corner i of triangle t is identified with the start of side 3t+i.
    let mut parent: Vec<usize> = (0..ns).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for s in 0..ns as Side {
        let g = b.glue[s as usize];
        // start(s) ~ end(g) = start(next(g)); end(s) ~ start(g)
        for (x, y) in [(s, next(g)), (next(s), g)] {
            let (rx, ry) = (find(&mut parent, x as usize), find(&mut parent, y as usize));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    let mut label = vec![usize::MAX; ns];
    let mut vertex = vec![0; ns];
    let mut nv = 0;
    for s in 0..ns {
        let r = find(&mut parent, s);
        if label[r] == usize::MAX {
            label[r] = nv;
            nv += 1;
        }
        vertex[s] = label[r];
    }
    let mut degree = vec![0; nv];
    for &v in &vertex {
        degree[v] += 1;
    }
    let mut edge = vec![usize::MAX; ns];
    let mut edge_sides = Vec::new();
    for s in 0..ns {
        if edge[s] == usize::MAX {
            let g = b.glue[s] as usize;
            edge[s] = edge_sides.len();
            edge[g] = edge_sides.len();
            edge_sides.push([s as Side, g as Side]);
        }
    }
    let (punctures, base_vertex) = if closed {
        if nv != 1 {
            return Err(Error::InvalidTriangulation(format!("closed model has {nv} vertices")));
        }
        (vec![], Some(0))
    } else {
        ((0..nv).collect(), None)
    };
    let polygon_corner = b.tris.iter().flat_map(|t| t.iter().copied()).collect();
    let t = Triangulation {
        signature,
        glue: b.glue,
        edge,
        edge_sides,
        vertex,
        num_vertices: nv,
        punctures,
        base_vertex,
        degree,
        side_kind: b.kind,
        polygon_corner,
        geometry: OnceLock::new(),
    };
    if t.euler_characteristic() != signature.euler_characteristic() {
        return Err(Error::InvalidTriangulation(format!(
            "euler characteristic {} does not match {}",
            t.euler_characteristic(),
            signature
        )));
    }
    if !closed && t.num_vertices != signature.punctures as usize {
        return Err(Error::InvalidTriangulation("puncture count mismatch".into()));
    }
    Ok(t)
}

/// The 4g-gon with opposite sides identified, triangulated by the long
/// diagonal from corner 0 to corner 2g and fans from both of its ends.
fn polygon_builder(g: u32) -> Builder {
    let n = 4 * g;
    let mut tris = Vec::new();
    for k in 1..2 * g {
        tris.push([0, k, k + 1]);
    }
    for k in 2 * g + 1..n {
        tris.push([2 * g, k, (k + 1) % n]);
    }
    let ns = 3 * tris.len();
    let mut glue = vec![u32::MAX; ns];
    let mut kind = vec![SideKind::Diagonal; ns];
    let mut by_pair = std::collections::HashMap::new();
    for (t, tri) in tris.iter().enumerate() {
        for i in 0..3 {
            let (a, b) = (tri[i], tri[(i + 1) % 3]);
            let s = side(t, i);
            if (a + 1) % n == b {
                kind[s as usize] = SideKind::Polygon(a);
            } else {
                by_pair.insert((a, b), s);
            }
        }
    }
    for (t, tri) in tris.iter().enumerate() {
        for i in 0..3 {
            let (a, b) = (tri[i], tri[(i + 1) % 3]);
            let s = side(t, i);
            match kind[s as usize] {
                SideKind::Polygon(k) => {
                    let partner = (k + 2 * g) % n;
                    let ps = (0..ns)
                        .find(|&x| kind[x] == SideKind::Polygon(partner))
                        .expect("polygon side present");
                    glue[s as usize] = ps as Side;
                }
                SideKind::Diagonal => {
                    glue[s as usize] = by_pair[&(b, a)];
                }
            }
        }
    }
    Builder { tris, glue, kind }
}

/// Inserts a new vertex inside triangle `t` and cones it off.
fn stellar_subdivide(b: &mut Builder, t: usize, label: u32) {
    let [x, y, z] = b.tris[t];
    let base = b.tris.len();
    let (tb, tc) = (base, base + 1);
    b.tris[t] = [x, y, label];
    b.tris.push([y, z, label]);
    b.tris.push([z, x, label]);
    let old1 = b.glue[side(t, 1) as usize];
    let old2 = b.glue[side(t, 2) as usize];
    let k1 = b.kind[side(t, 1) as usize];
    let k2 = b.kind[side(t, 2) as usize];
    b.glue.extend(std::iter::repeat_n(u32::MAX, 6));
    b.kind.extend(std::iter::repeat_n(SideKind::Diagonal, 6));
    let mut set = |s: Side, g: Side| {
        b.glue[s as usize] = g;
        b.glue[g as usize] = s;
    };
    set(side(tb, 0), old1);
    set(side(tc, 0), old2);
    set(side(t, 1), side(tb, 2));
    set(side(tb, 1), side(tc, 2));
    set(side(tc, 1), side(t, 2));
    b.kind[side(tb, 0) as usize] = k1;
    b.kind[side(tc, 0) as usize] = k2;
    b.kind[side(t, 1) as usize] = SideKind::Diagonal;
    b.kind[side(t, 2) as usize] = SideKind::Diagonal;
}

/// Standard triangulation of S_{g,p}: a one-vertex triangulation of the
/// 4g-gon for closed surfaces, the same polygon with its vertex punctured for
/// p ≥ 1, and one stellar subdivision per further puncture.
pub fn build_standard_surface(sig: Signature) -> Result<Triangulation> {
    let reject = |reason| Err(Error::InvalidSignature { genus: sig.genus, punctures: sig.punctures, reason });
    if sig.genus < 1 {
        return reject("genus must be at least 1 (use build_punctured_sphere for spheres)");
    }
    if sig.genus + sig.punctures < 2 {
        return reject("the closed torus has no hyperbolic model");
    }
    if sig.punctures > 64 || sig.genus > 64 {
        return reject("signature too large");
    }
    let mut b = polygon_builder(sig.genus);
    let n = 4 * sig.genus;
    for k in 1..sig.punctures.max(1) {
        let t = (k as usize - 1) % b.tris.len();
        stellar_subdivide(&mut b, t, n + k);
    }
    finish(b, sig, sig.punctures == 0)
}

/// Sphere with k ≥ 3 punctures: two fan-triangulated k-gons glued along their
/// boundaries.
pub fn build_punctured_sphere(k: usize) -> Result<Triangulation> {
    if k < 3 {
        return Err(Error::InvalidSignature { genus: 0, punctures: k as u32, reason: "need at least 3 punctures" });
    }
    let k32 = k as u32;
    let mut tris = Vec::new();
    for j in 1..k32 - 1 {
        tris.push([0, j, j + 1]);
    }
    for j in 1..k32 - 1 {
        tris.push([0, j + 1, j]);
    }
    let ns = 3 * tris.len();
    let half = tris.len() / 2;
    // Diagonals from vertex 0 stay inside their fan; the disk boundary is
    // glued to the other fan.
    let key = |t: usize, a: u32, b: u32| {
        let interior = (a == 0 && (2..k32 - 1).contains(&b)) || (b == 0 && (2..k32 - 1).contains(&a));
        (if interior { t / half } else { 2 }, a, b)
    };
    let mut by_pair = std::collections::HashMap::new();
    for (t, tri) in tris.iter().enumerate() {
        for i in 0..3 {
            by_pair.insert(key(t, tri[i], tri[(i + 1) % 3]), side(t, i));
        }
    }
    let mut glue = vec![0; ns];
    for (t, tri) in tris.iter().enumerate() {
        for i in 0..3 {
            glue[side(t, i) as usize] = by_pair[&key(t, tri[(i + 1) % 3], tri[i])];
        }
    }
    let b = Builder { tris, glue, kind: vec![SideKind::Diagonal; ns] };
    finish(b, Signature::new(0, k32), false)
}

pub fn euler_characteristic(t: &Triangulation) -> i64 {
    t.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_for_small_signatures() {
        let t = build_standard_surface(Signature::new(2, 0)).unwrap();
        assert_eq!((t.num_vertices, t.num_edges(), t.num_triangles()), (1, 9, 6));
        assert_eq!(t.euler_characteristic(), -2);
        let t = build_standard_surface(Signature::new(2, 1)).unwrap();
        assert_eq!((t.num_edges(), t.num_triangles()), (9, 6));
        assert_eq!(t.euler_characteristic(), -3);
        let t = build_standard_surface(Signature::new(1, 1)).unwrap();
        assert_eq!((t.num_edges(), t.num_triangles()), (3, 2));
        let t = build_standard_surface(Signature::new(3, 2)).unwrap();
        assert_eq!(t.euler_characteristic(), -6);
        assert_eq!(t.punctures.len(), 2);
    }

    #[test]
    fn rejects_small_signatures() {
        assert!(build_standard_surface(Signature::new(0, 4)).is_err());
        assert!(build_standard_surface(Signature::new(1, 0)).is_err());
    }

    #[test]
    fn sphere_counts() {
        for k in 3..8 {
            let t = build_punctured_sphere(k).unwrap();
            assert_eq!(t.euler_characteristic(), 2 - k as i64);
            assert_eq!(t.num_vertices, k);
        }
    }

    #[test]
    fn genus_two_has_point_reflection() {
        let t = build_standard_surface(Signature::new(2, 0)).unwrap();
        let autos = t.automorphisms();
        let rot = autos
            .iter()
            .find(|a| a.orientation_preserving && a.apply(0) == side(3, 0))
            .expect("rotation by half a turn");
        assert!(rot.compose(rot).is_identity());
        assert!(autos.iter().any(|a| !a.orientation_preserving));
    }

    #[test]
    fn signature_parsing() {
        assert_eq!("2,1".parse::<Signature>().unwrap(), Signature::new(2, 1));
        assert!("2".parse::<Signature>().is_err());
    }
}
