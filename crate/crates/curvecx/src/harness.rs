//! Vertex maps between slices: superinjectivity checks, maps induced by
//! mapping classes, extension from N to C, and realization search.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::complexes::{ComplexSlice, Kind};
use crate::curve::CurveClass;
use crate::cut::{cut_classes, side_of, Flank, PieceType, Slot};
use crate::error::{Error, Result};
use crate::mcg::{MappingClassWord, MappingClasses};
use crate::surface::Triangulation;

/// Partial map from the vertices of a domain slice to those of an image
/// slice, by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexMap {
    pub map: Vec<Option<usize>>,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap { map: (0..n).map(Some).collect() }
    }

    pub fn constant(n: usize, v: usize) -> Self {
        VertexMap { map: vec![Some(v); n] }
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.map[i]
    }

    /// Restriction to the domain vertices admitted by `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> VertexMap {
        VertexMap { map: self.map.iter().enumerate().map(|(i, &v)| if keep(i) { v } else { None }).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// A vertex the map is not defined on.
    Undefined,
    /// A disjoint pair with intersecting images.
    Disjointness,
    /// An intersecting pair with disjoint images.
    Nondisjointness,
    /// Two vertices with the same image.
    Collision,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapViolation {
    pub kind: ViolationKind,
    pub pair: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapReport {
    /// All statements are relative to the two slices.
    pub scope: &'static str,
    pub domain_size: usize,
    pub simplicial: bool,
    pub injective: bool,
    pub superinjective: bool,
    pub violations: Vec<MapViolation>,
}

/// Checks a vertex map on every pair of domain vertices.
pub fn check_map(domain: &ComplexSlice, image: &ComplexSlice, m: &VertexMap) -> MapReport {
    let n = domain.len();
    let mut violations: Vec<MapViolation> = (0..n)
        .filter(|&i| m.map[i].is_none())
        .map(|i| MapViolation { kind: ViolationKind::Undefined, pair: (i, i) })
        .collect();
    let rows: Vec<Vec<MapViolation>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            let Some(x) = m.map[i] else { return out };
            for j in i + 1..n {
                let Some(y) = m.map[j] else { continue };
                if x == y {
                    out.push(MapViolation { kind: ViolationKind::Collision, pair: (i, j) });
                }
                let before = domain.itable[i][j] == 0;
                let after = x == y || image.itable[x][y] == 0;
                if before && !after {
                    out.push(MapViolation { kind: ViolationKind::Disjointness, pair: (i, j) });
                } else if !before && after {
                    out.push(MapViolation { kind: ViolationKind::Nondisjointness, pair: (i, j) });
                }
            }
            out
        })
        .collect();
    violations.extend(rows.into_iter().flatten());
    let has = |k: ViolationKind| violations.iter().any(|v| v.kind == k);
    let total = !has(ViolationKind::Undefined);
    let simplicial = total && !has(ViolationKind::Disjointness);
    let injective = total && !has(ViolationKind::Collision);
    let superinjective = simplicial && !has(ViolationKind::Nondisjointness);
    MapReport { scope: "slice-relative", domain_size: n, simplicial, injective, superinjective, violations }
}

pub fn check_simplicial(domain: &ComplexSlice, image: &ComplexSlice, m: &VertexMap) -> bool {
    check_map(domain, image, m).simplicial
}

pub fn check_injective(domain: &ComplexSlice, image: &ComplexSlice, m: &VertexMap) -> bool {
    check_map(domain, image, m).injective
}

pub fn check_superinjective(domain: &ComplexSlice, image: &ComplexSlice, m: &VertexMap) -> bool {
    check_map(domain, image, m).superinjective
}

/// A map induced by a mapping class, with the slice it lands in.
#[derive(Debug, Clone)]
pub struct Induced {
    pub image: ComplexSlice,
    pub map: VertexMap,
}

/// Images of the domain vertices under `w`, computed directly.
pub fn induced_images(mc: &MappingClasses, w: &MappingClassWord, domain: &ComplexSlice) -> Result<Vec<CurveClass>> {
    domain.vertices.par_iter().map(|c| mc.apply_word(w, c)).collect()
}

/// The map `α ↦ w·α`. With a target slice every image must lie in it;
/// without one the image slice is built on the images themselves.
pub fn induced_map(
    mc: &MappingClasses,
    w: &MappingClassWord,
    domain: &ComplexSlice,
    target: Option<&ComplexSlice>,
) -> Result<Induced> {
    let images = induced_images(mc, w, domain)?;
    match target {
        Some(s) => {
            let mut map = Vec::with_capacity(images.len());
            for (vertex, c) in images.iter().enumerate() {
                let k = s.index_of(c).ok_or(Error::OrbitEscape { vertex, needed: c.max_weight() })?;
                map.push(Some(k));
            }
            Ok(Induced { image: s.clone(), map: VertexMap { map } })
        }
        None => {
            let mut index: HashMap<&[u32], usize> = HashMap::new();
            let mut vs = Vec::new();
            let mut map = Vec::with_capacity(images.len());
            for c in &images {
                let k = *index.entry(&c.coords).or_insert_with(|| {
                    vs.push(c.clone());
                    vs.len() - 1
                });
                map.push(Some(k));
            }
            let image = ComplexSlice::from_classes(mc.t, domain.kind, vs, None)?;
            Ok(Induced { image, map: VertexMap { map } })
        }
    }
}

/// A chain filling one side of a separating class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideChain {
    pub flank: Flank,
    pub piece: PieceType,
    pub chain: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatingChains {
    pub vertex: usize,
    pub sides: Vec<SideChain>,
}

/// Chains for every separating vertex of a C-slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLibrary {
    pub entries: Vec<SeparatingChains>,
}

/// Piece types on the two flanks of a separating class.
fn flank_types(t: &Triangulation, c: &CurveClass) -> Result<[PieceType; 2]> {
    let cut = cut_classes(t, &[c])?;
    if cut.pieces.len() != 2 {
        return Err(Error::Precondition("class is not separating".into()));
    }
    let of = |flank| PieceType::of(&cut.pieces[cut.piece_of(Slot { component: 0, flank })]);
    Ok([of(Flank::Left), of(Flank::Right)])
}

fn flank_index(f: Flank) -> usize {
    match f {
        Flank::Left => 0,
        Flank::Right => 1,
    }
}

/// Length of a chain whose neighbourhood is a piece of the given type: the
/// piece has one curve side and at most one puncture.
fn chain_length(p: PieceType) -> Result<usize> {
    match (p.boundary, p.punctures) {
        (1, 0) => Ok(2 * p.genus as usize),
        (1, 1) => Ok(2 * p.genus as usize + 1),
        _ => Err(Error::Precondition(format!("no chain fills a piece of type {p:?}"))),
    }
}

/// Finds, for each separating vertex of `dom`, a chain of nonseparating slice
/// vertices on each side whose neighbourhood is that side.
pub fn chain_library(t: &Triangulation, dom: &ComplexSlice) -> Result<ChainLibrary> {
    if dom.kind != Kind::C {
        return Err(Error::Precondition("chains are taken in a C slice".into()));
    }
    if t.signature.punctures > 1 {
        return Err(Error::Precondition("extension needs at most one puncture".into()));
    }
    let seps: Vec<usize> = (0..dom.len()).filter(|&i| !dom.vertices[i].flags.nonseparating).collect();
    let entries = seps
        .par_iter()
        .map(|&c| -> Result<SeparatingChains> {
            let cv = &dom.vertices[c];
            let types = flank_types(t, cv)?;
            let mut flank_of = vec![None; dom.len()];
            for x in 0..dom.len() {
                if dom.vertices[x].flags.nonseparating && dom.itable[c][x] == 0 {
                    flank_of[x] = Some(side_of(t, cv, &dom.vertices[x])?);
                }
            }
            let mut sides = Vec::new();
            for flank in [Flank::Left, Flank::Right] {
                let piece = types[flank_index(flank)];
                let len = chain_length(piece)?;
                let chain = dom.find_chains(len, &|x| flank_of[x] == Some(flank), 1).pop().ok_or_else(|| {
                    Error::NoCandidate(c, format!("no chain of length {len} on the {flank:?} side in the slice"))
                })?;
                sides.push(SideChain { flank, piece, chain });
            }
            Ok(SeparatingChains { vertex: c, sides })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainLibrary { entries })
}

/// Result of extending a map from nonseparating to all vertices.
#[derive(Debug, Clone)]
pub struct Extension {
    /// Agrees with the input on nonseparating vertices.
    pub map: VertexMap,
    /// Separating vertices left undefined, with the reason.
    pub failures: Vec<(usize, Error)>,
}

/// Extends `lambda`, defined on the nonseparating vertices of the C-slice
/// `dom` and landing in the C-slice `img`, to the separating vertices: each
/// goes to the unique separating vertex of `img` disjoint from the images of
/// both its chains, with matching piece types on the matching sides.
pub fn extend_to_c(
    t: &Triangulation,
    dom: &ComplexSlice,
    img: &ComplexSlice,
    lambda: &VertexMap,
    library: &ChainLibrary,
) -> Result<Extension> {
    if img.kind != Kind::C {
        return Err(Error::Precondition("extension lands in a C slice".into()));
    }
    if lambda.map.len() != dom.len() {
        return Err(Error::SizeMismatch(format!("map on {} vertices for a slice of {}", lambda.map.len(), dom.len())));
    }
    let img_seps: Vec<usize> = (0..img.len()).filter(|&i| !img.vertices[i].flags.nonseparating).collect();
    let results: Vec<(usize, Result<usize>)> = library
        .entries
        .par_iter()
        .map(|e| (e.vertex, extend_one(t, img, &img_seps, lambda, e)))
        .collect();
    let mut map = lambda.clone();
    let mut failures = Vec::new();
    for (c, r) in results {
        match r {
            Ok(d) => map.map[c] = Some(d),
            Err(err) => failures.push((c, err)),
        }
    }
    Ok(Extension { map, failures })
}

fn extend_one(
    t: &Triangulation,
    img: &ComplexSlice,
    img_seps: &[usize],
    lambda: &VertexMap,
    e: &SeparatingChains,
) -> Result<usize> {
    let mut images: Vec<Vec<usize>> = Vec::new();
    for s in &e.sides {
        let ch = s
            .chain
            .iter()
            .map(|&x| lambda.get(x).ok_or_else(|| Error::NoCandidate(e.vertex, format!("chain vertex {x} is unmapped"))))
            .collect::<Result<Vec<_>>>()?;
        images.push(ch);
    }
    let mut found = Vec::new();
    for &d in img_seps {
        if !images.iter().flatten().all(|&y| img.itable[d][y] == 0) {
            continue;
        }
        let dv = &img.vertices[d];
        let types = flank_types(t, dv)?;
        let mut flanks = Vec::new();
        let mut ok = true;
        for (s, ch) in e.sides.iter().zip(&images) {
            let f = side_of(t, dv, &img.vertices[ch[0]])?;
            ok &= types[flank_index(f)] == s.piece;
            flanks.push(f);
        }
        if ok && flanks[0] != flanks[1] {
            found.push(d);
        }
    }
    match found.len() {
        0 => Err(Error::NoCandidate(e.vertex, "no separating class in the image slice fits".into())),
        1 => Ok(found[0]),
        _ => Err(Error::AmbiguousCandidate(e.vertex, found)),
    }
}

/// Meet-in-the-middle search for words realizing a vertex map. Words of
/// length up to `depth` are enumerated once from the identity; a target is
/// then searched from its side and the two halves are joined where they agree
/// on a set of probe vertices. Every join is checked on the whole domain.
pub struct Realizer<'a> {
    mc: &'a MappingClasses<'a>,
    domain: &'a ComplexSlice,
    probes: Vec<usize>,
    /// Forward levels: probe images and the first word reaching them.
    forward: Vec<Vec<(Vec<CurveClass>, MappingClassWord)>>,
    seen: HashMap<Vec<Vec<u32>>, (usize, usize)>,
}

impl<'a> Realizer<'a> {
    pub fn new(mc: &'a MappingClasses<'a>, domain: &'a ComplexSlice, depth: usize) -> Result<Self> {
        let mut probes: Vec<usize> = mc.family.iter().filter_map(|c| domain.index_of(c)).collect();
        let extra = (0..domain.len()).filter(|i| !probes.contains(i)).take(4).collect::<Vec<_>>();
        probes.extend(extra);
        let start: Vec<CurveClass> = probes.iter().map(|&i| domain.vertices[i].clone()).collect();
        let mut seen = HashMap::new();
        seen.insert(key(&start), (0, 0));
        let forward = vec![vec![(start, MappingClassWord::identity())]];
        let mut r = Realizer { mc, domain, probes, forward, seen };
        for _ in 0..depth {
            r.grow()?;
        }
        Ok(r)
    }

    fn grow(&mut self) -> Result<()> {
        let last = self.forward.last().expect("level zero exists");
        let next = expand(self.mc, last)?;
        let level = self.forward.len();
        let mut kept = Vec::new();
        for (imgs, w) in next {
            let k = key(&imgs);
            if self.seen.contains_key(&k) {
                continue;
            }
            self.seen.insert(k, (level, kept.len()));
            kept.push((imgs, w));
        }
        self.forward.push(kept);
        Ok(())
    }

    pub fn depth(&self) -> usize {
        self.forward.len() - 1
    }

    /// Shortest word of length at most `bound` whose action agrees with
    /// `targets` (the intended image of every domain vertex). `None` is
    /// relative to the bound.
    pub fn realize(&self, targets: &[CurveClass], bound: usize) -> Result<Option<MappingClassWord>> {
        if targets.len() != self.domain.len() {
            return Err(Error::SizeMismatch(format!("{} targets for {} vertices", targets.len(), self.domain.len())));
        }
        let a = self.depth();
        let start: Vec<CurveClass> = self.probes.iter().map(|&i| targets[i].clone()).collect();
        let mut backward = vec![vec![(start, MappingClassWord::identity())]];
        let mut back_seen: HashMap<Vec<Vec<u32>>, ()> = HashMap::new();
        back_seen.insert(key(&backward[0][0].0), ());
        for total in 0..=bound {
            let lo = total.saturating_sub(a);
            for j in lo..=total.min(bound.saturating_sub(a)) {
                while backward.len() <= j {
                    let next = expand(self.mc, backward.last().expect("nonempty"))?;
                    let level: Vec<_> = next.into_iter().filter(|(imgs, _)| back_seen.insert(key(imgs), ()).is_none()).collect();
                    backward.push(level);
                }
                let i = total - j;
                for (imgs, z) in &backward[j] {
                    let Some(&(lv, at)) = self.seen.get(&key(imgs)) else { continue };
                    if lv != i {
                        continue;
                    }
                    let u = &self.forward[lv][at].1;
                    let w = u.then(&self.mc.inverse(z));
                    if self.agrees(&w, targets)? {
                        return Ok(Some(w));
                    }
                }
            }
        }
        Ok(None)
    }

    fn agrees(&self, w: &MappingClassWord, targets: &[CurveClass]) -> Result<bool> {
        let bad = self
            .domain
            .vertices
            .par_iter()
            .zip(targets)
            .map(|(c, want)| Ok(self.mc.apply_word(w, c)? != *want))
            .collect::<Result<Vec<bool>>>()?;
        Ok(!bad.into_iter().any(|b| b))
    }
}

fn key(cs: &[CurveClass]) -> Vec<Vec<u32>> {
    cs.iter().map(|c| c.coords.clone()).collect()
}

/// All one-letter extensions of a level, in generator order.
fn expand(mc: &MappingClasses, level: &[(Vec<CurveClass>, MappingClassWord)]) -> Result<Vec<(Vec<CurveClass>, MappingClassWord)>> {
    let gens = mc.generators();
    let out: Vec<Vec<(Vec<CurveClass>, MappingClassWord)>> = level
        .par_iter()
        .map(|(imgs, w)| {
            gens.iter()
                .map(|&g| {
                    let next = imgs.iter().map(|c| mc.apply_generator(g, c)).collect::<Result<Vec<_>>>()?;
                    let mut nw = w.clone();
                    nw.0.push(g);
                    Ok((next, nw))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(out.into_iter().flatten().collect())
}

/// Searches words up to length `bound` realizing `m`.
pub fn realize_by_homeomorphism(
    mc: &MappingClasses,
    domain: &ComplexSlice,
    image: &ComplexSlice,
    m: &VertexMap,
    bound: usize,
) -> Result<Option<MappingClassWord>> {
    let targets = (0..domain.len())
        .map(|i| {
            m.get(i)
                .map(|k| image.vertices[k].clone())
                .ok_or_else(|| Error::Precondition(format!("map undefined on vertex {i}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let r = Realizer::new(mc, domain, bound.div_ceil(2))?;
    r.realize(&targets, bound)
}
