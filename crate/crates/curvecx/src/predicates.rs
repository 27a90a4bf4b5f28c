//! Characterizing predicates on small configurations of curves.

use rayon::prelude::*;
use serde::Serialize;

use crate::complexes::{ComplexSlice, Kind};
use crate::curve::CurveClass;
use crate::cut::{cut_classes, Cut, PieceType};
use crate::error::{Error, Result};
use crate::homology::algebraic_pairing;
use crate::intersection::geometric_intersection;
use crate::surface::Triangulation;

/// Whether two disjoint classes bound a pants together with a puncture.
pub fn is_peripheral_pair(t: &Triangulation, a: &CurveClass, b: &CurveClass) -> Result<bool> {
    if t.signature.punctures == 0 {
        return Ok(false);
    }
    disjoint_distinct(t, &[a, b])?;
    let cut = cut_classes(t, &[a, b])?;
    Ok(cut.pieces.iter().any(|p| {
        p.genus == 0
            && p.boundary_count == 3
            && p.punctures_contained.len() == 1
            && p.components().iter().filter(|&&k| k == 0).count() == 1
            && p.components().iter().filter(|&&k| k == 1).count() == 1
    }))
}

/// Whether three disjoint classes bound a pants, one side of each.
pub fn bounds_pants(t: &Triangulation, a: &CurveClass, b: &CurveClass, c: &CurveClass) -> Result<bool> {
    disjoint_distinct(t, &[a, b, c])?;
    let cut = cut_classes(t, &[a, b, c])?;
    Ok(pants_on(&cut, [0, 1, 2]))
}

/// A genus-zero piece of `cut` whose boundary is one side each of the three
/// given components.
fn pants_on(cut: &Cut, ks: [usize; 3]) -> bool {
    cut.pieces.iter().any(|p| {
        let mut cs = p.components();
        cs.sort_unstable();
        let mut want = ks.to_vec();
        want.sort_unstable();
        p.genus == 0 && p.punctures_contained.is_empty() && cs == want
    })
}

fn disjoint_distinct(t: &Triangulation, cs: &[&CurveClass]) -> Result<()> {
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if cs[i] == cs[j] {
                return Err(Error::Precondition("classes must be distinct".into()));
            }
            if geometric_intersection(t, cs[i], cs[j]) != 0 {
                return Err(Error::Precondition("classes must be pairwise disjoint".into()));
            }
        }
    }
    Ok(())
}

/// Geometric intersection two with algebraic intersection zero.
pub fn geo2_alg0(t: &Triangulation, a: &CurveClass, b: &CurveClass) -> bool {
    geometric_intersection(t, a, b) == 2 && algebraic_pairing(t, a, b) == 0
}

/// Disjointness pattern of the seven curves of the intersection-one
/// certificate: `true` where the curves must intersect. Every entry is forced
/// by the incidences of the arcs of α2, α4 and α7 with the two pants P and Q
/// that α1 ∪ α3 cuts from the torus with two holes bounded by α5 ∪ α6.
pub const PATTERN: [[bool; 7]; 7] = {
    const X: bool = true;
    const O: bool = false;
    [
        [O, X, O, O, O, O, X],
        [X, O, X, O, O, O, O],
        [O, X, O, X, O, O, O],
        [O, O, X, O, X, X, O],
        [O, O, O, X, O, O, X],
        [O, O, O, X, O, O, X],
        [X, O, O, O, X, X, O],
    ]
};

/// Seven curves witnessing `i(α1, α2) = 1`, as slice indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionOneCertificate {
    pub curves: [usize; 7],
    pub pattern: [[bool; 7]; 7],
    /// Pieces of the cut along α5 ∪ α6.
    pub torus_cut: Vec<PieceType>,
    /// Pieces of the cut along α1 ∪ α3 ∪ α5 ∪ α6.
    pub pants_cut: Vec<PieceType>,
}

impl IntersectionOneCertificate {
    pub fn to_json(&self, slice: &ComplexSlice) -> serde_json::Value {
        serde_json::json!({
            "curves": self.curves.iter().map(|&k| &slice.vertices[k].coords).collect::<Vec<_>>(),
            "pattern": self.pattern,
            "torus_cut": self.torus_cut,
            "pants_cut": self.pants_cut,
        })
    }
}

/// Condition (ii): α5 ∪ α6 cuts off a torus with two holes, and α1, α3 cut
/// that torus into a pants on α1, α3, α5 and a pants on α1, α3, α6. α1 then
/// lies in the torus, and so does α2, which is disjoint from α5 ∪ α6 and
/// meets α1.
pub fn condition_ii(
    t: &Triangulation,
    a1: &CurveClass,
    a3: &CurveClass,
    a5: &CurveClass,
    a6: &CurveClass,
) -> Result<Option<(Vec<PieceType>, Vec<PieceType>)>> {
    let outer = cut_classes(t, &[a5, a6])?;
    let torus = outer.pieces.iter().any(|p| {
        let mut cs = p.components();
        cs.sort_unstable();
        p.genus == 1 && p.punctures_contained.is_empty() && cs == [0, 1]
    });
    if outer.pieces.len() != 2 || !torus {
        return Ok(None);
    }
    // Components 0..4 are α1, α3, α5, α6.
    let inner = cut_classes(t, &[a1, a3, a5, a6])?;
    let p = inner.pieces.iter().position(|p| p.genus == 0 && p.punctures_contained.is_empty() && sorted(p.components()) == [0, 1, 2]);
    let q = inner.pieces.iter().position(|p| p.genus == 0 && p.punctures_contained.is_empty() && sorted(p.components()) == [0, 1, 3]);
    let (Some(p), Some(q)) = (p, q) else {
        return Ok(None);
    };
    // P and Q meet along both sides of α1 and of α3.
    let sides = |i: usize, k: usize| {
        inner.pieces[i].provenance.iter().filter(|s| s.component == k).map(|s| s.flank).collect::<Vec<_>>()
    };
    for k in [0, 1] {
        let (sp, sq) = (sides(p, k), sides(q, k));
        if sp.len() != 1 || sq.len() != 1 || sp[0] == sq[0] {
            return Ok(None);
        }
    }
    let types = |c: &Cut| {
        let mut v: Vec<PieceType> = c.pieces.iter().map(PieceType::of).collect();
        v.sort();
        v
    };
    Ok(Some((types(&outer), types(&inner))))
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Searches an N-slice for α3, ..., α7 completing the certificate for the
/// vertices `a1`, `a2`. Absence is relative to the slice.
pub fn find_intersection_one_certificate(
    t: &Triangulation,
    slice: &ComplexSlice,
    a1: usize,
    a2: usize,
) -> Result<Option<IntersectionOneCertificate>> {
    if slice.kind != Kind::N {
        return Err(Error::Precondition("certificates are searched in N slices".into()));
    }
    let it = &slice.itable;
    let n = slice.len();
    let fits = |x: usize, k: usize, fixed: &[usize]| {
        fixed.iter().enumerate().all(|(j, &y)| x != y && (it[x][y] != 0) == PATTERN[k][j])
    };
    if (it[a1][a2] != 0) != PATTERN[1][0] {
        return Ok(None);
    }
    let a3s: Vec<usize> = (0..n).filter(|&x| fits(x, 2, &[a1, a2])).collect();
    let found: Vec<Option<IntersectionOneCertificate>> = a3s
        .par_iter()
        .map(|&a3| -> Result<Option<IntersectionOneCertificate>> {
            let head = [a1, a2, a3];
            let c5: Vec<usize> = (0..n).filter(|&x| fits(x, 4, &head)).collect();
            let c4: Vec<usize> = (0..n).filter(|&x| fits(x, 3, &head)).collect();
            let c7: Vec<usize> = (0..n).filter(|&x| fits(x, 6, &head)).collect();
            // Rows 5 and 6 of the pattern agree, so α5 ≤ α6 loses nothing.
            for (i, &a5) in c5.iter().enumerate() {
                for &a6 in &c5[i..] {
                    if it[a5][a6] != 0 {
                        continue;
                    }
                    let a4 = c4.iter().copied().find(|&x| fits_tail(it, x, 3, a5, a6));
                    let Some(a4) = a4 else { continue };
                    let a7 = c7
                        .iter()
                        .copied()
                        .find(|&x| x != a4 && (it[x][a4] != 0) == PATTERN[6][3] && fits_tail(it, x, 6, a5, a6));
                    let Some(a7) = a7 else { continue };
                    let v = |k: usize| &slice.vertices[k];
                    if let Some((torus_cut, pants_cut)) = condition_ii(t, v(a1), v(a3), v(a5), v(a6))? {
                        return Ok(Some(IntersectionOneCertificate {
                            curves: [a1, a2, a3, a4, a5, a6, a7],
                            pattern: PATTERN,
                            torus_cut,
                            pants_cut,
                        }));
                    }
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().next())
}

/// Row `k` against α5 and α6.
fn fits_tail(it: &[Vec<u32>], x: usize, k: usize, a5: usize, a6: usize) -> bool {
    x != a5 && x != a6 && (it[x][a5] != 0) == PATTERN[k][4] && (it[x][a6] != 0) == PATTERN[k][5]
}

/// Checks the pattern and condition (ii) for seven given classes.
pub fn verify_certificate(t: &Triangulation, cs: &[CurveClass; 7]) -> Result<bool> {
    for i in 0..7 {
        for j in 0..7 {
            if i != j && (geometric_intersection(t, &cs[i], &cs[j]) != 0) != PATTERN[i][j] {
                return Ok(false);
            }
        }
    }
    Ok(condition_ii(t, &cs[0], &cs[2], &cs[4], &cs[5])?.is_some())
}

/// Pentagons (up to rotation) and hole counts of the vertices of a slice on a
/// punctured sphere.
#[derive(Debug, Clone, Serialize)]
pub struct PentagonReport {
    /// Each pentagon starts at its least vertex.
    pub pentagons: Vec<[usize; 5]>,
    /// Per vertex, the smaller number of punctures on either side.
    pub n_labels: Vec<usize>,
}

pub fn pentagon_and_nvertex(t: &Triangulation, slice: &ComplexSlice) -> Result<PentagonReport> {
    let k = t.signature.punctures as usize;
    if t.signature.genus != 0 || k < 5 {
        return Err(Error::Precondition(format!("need a sphere with at least five holes, got {}", t.signature)));
    }
    let mut n_labels = Vec::with_capacity(slice.len());
    for c in &slice.vertices {
        let cut = cut_classes(t, &[c])?;
        let m = cut.pieces.iter().map(|p| p.punctures_contained.len()).min().unwrap_or(0);
        n_labels.push(m);
    }
    let it = &slice.itable;
    let n = slice.len();
    let mut pentagons = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if it[a][b] != 0 {
                continue;
            }
            for c in a + 1..n {
                if c == b || it[b][c] != 0 || it[a][c] == 0 {
                    continue;
                }
                for d in a + 1..n {
                    if d == b || d == c || it[c][d] != 0 || it[a][d] == 0 || it[b][d] == 0 {
                        continue;
                    }
                    for e in a + 1..n {
                        if e == b || e == c || e == d || it[d][e] != 0 || it[e][a] != 0 {
                            continue;
                        }
                        if it[b][e] == 0 || it[c][e] == 0 {
                            continue;
                        }
                        pentagons.push([a, b, c, d, e]);
                    }
                }
            }
        }
    }
    Ok(PentagonReport { pentagons, n_labels })
}
