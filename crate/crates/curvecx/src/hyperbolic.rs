//! Hyperbolic realization of the closed one-vertex triangulation.
//!
//! On a closed surface the normal coordinates of a curve with respect to a
//! one-vertex triangulation depend on how the curve is pushed around the
//! vertex. A canonical representative is the closed geodesic for a fixed
//! hyperbolic metric, with the vertex moved off every symmetry axis. Its
//! cutting sequence is read off by tracking the geodesic tile by tile along
//! the universal cover, always working in a frame anchored near the current
//! tile so that errors stay local.

use std::collections::{HashMap, HashSet, VecDeque};
use std::f64::consts::PI;

use num_complex::Complex64 as C;

use crate::error::{Error, Result};
use crate::surface::{idx_of, side, tri_of, Side, SideKind, Triangulation};
use crate::word::dehn_reduce_path;

#[derive(Debug, Clone, Copy)]
pub struct Mobius {
    a: C,
    b: C,
    c: C,
    d: C,
}

impl Mobius {
    pub fn identity() -> Self {
        Mobius { a: C::new(1.0, 0.0), b: C::new(0.0, 0.0), c: C::new(0.0, 0.0), d: C::new(1.0, 0.0) }
    }

    /// Hyperbolic translation of the unit disk along the diameter in direction
    /// `dir`, with `tau = tanh(distance / 2)`.
    pub fn translation(dir: C, tau: f64) -> Self {
        let s = 1.0 / (1.0 - tau * tau).sqrt();
        Mobius {
            a: C::new(s, 0.0),
            b: dir * (tau * s),
            c: dir.conj() * (tau * s),
            d: C::new(s, 0.0),
        }
    }

    #[inline]
    pub fn apply(&self, z: C) -> C {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// `self ∘ o`.
    pub fn then_apply(&self, o: &Mobius) -> Mobius {
        Mobius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }
}

#[inline]
fn klein(z: C) -> (f64, f64) {
    let k = 2.0 / (1.0 + z.norm_sqr());
    (z.re * k, z.im * k)
}

#[derive(Debug, Clone)]
pub struct ClosedGeometry {
    /// Crossing side `s` leads into `cross[s]` applied to the standard tile of
    /// the neighbouring triangle.
    cross: Vec<Mobius>,
    klein: Vec<[(f64, f64); 3]>,
    center: Vec<C>,
    degree: usize,
}

/// Smallest distance (in the Klein model, relative to the unit disk) allowed
/// between a traced geodesic and a vertex of the triangulation.
const MARGIN: f64 = 1e-9;

/// Tiles examined around each anchor when looking for the axis.
const START_SEARCH: usize = 4000;

impl ClosedGeometry {
    pub fn build(t: &Triangulation) -> Result<ClosedGeometry> {
        if !t.is_closed() {
            return Err(Error::Geometry("hyperbolic model only used for closed surfaces".into()));
        }
        let g = t.signature.genus as usize;
        let n = 4 * g;
        let q = PI / n as f64;
        let cot = q.cos() / q.sin();
        let rv = ((cot * cot).acosh() / 2.0).tanh();
        let tau = cot.acosh().tanh();
        let pair: Vec<Mobius> = (0..n)
            .map(|k| Mobius::translation(C::from_polar(1.0, 2.0 * PI * (k as f64 + 0.5) / n as f64), tau))
            .collect();
        // Base vertex pulled off the polygon corner, away from every symmetry.
        let p0 = C::from_polar(rv * 0.83, 0.061);
        let mut pts = vec![C::new(0.0, 0.0); n];
        pts[0] = p0;
        let mut j = 0;
        for _ in 1..n {
            let nj = (j + 2 * g + 1) % n;
            pts[nj] = pair[(j + 2 * g) % n].apply(pts[j]);
            j = nj;
        }
        let back = pair[(j + 2 * g) % n].apply(pts[j]);
        if (back - p0).norm() > 1e-9 {
            return Err(Error::Geometry("vertex cycle does not close".into()));
        }
        let nt = t.num_triangles();
        let mut klein_v = Vec::with_capacity(nt);
        let mut center = Vec::with_capacity(nt);
        let mut verts = Vec::with_capacity(nt);
        for tr in 0..nt {
            let v: [C; 3] = std::array::from_fn(|i| pts[t.polygon_corner[3 * tr + i] as usize]);
            let kv = v.map(klein);
            let area = (kv[1].0 - kv[0].0) * (kv[2].1 - kv[0].1) - (kv[1].1 - kv[0].1) * (kv[2].0 - kv[0].0);
            if area <= 1e-6 {
                return Err(Error::Geometry(format!("triangle {tr} degenerates")));
            }
            klein_v.push(kv);
            center.push((v[0] + v[1] + v[2]) / 3.0);
            verts.push(v);
        }
        let cross: Vec<Mobius> = (0..t.num_sides())
            .map(|s| match t.side_kind[s] {
                SideKind::Diagonal => Mobius::identity(),
                SideKind::Polygon(k) => pair[k as usize],
            })
            .collect();
        for s in 0..t.num_sides() {
            let gs = t.glue[s] as usize;
            let (ts, is) = (s / 3, s % 3);
            let (tg, ig) = (gs / 3, gs % 3);
            let m = &cross[s];
            let a = m.apply(verts[tg][ig]);
            let b = m.apply(verts[tg][(ig + 1) % 3]);
            if (a - verts[ts][(is + 1) % 3]).norm() > 1e-9 || (b - verts[ts][is]).norm() > 1e-9 {
                return Err(Error::Geometry(format!("side pairing mismatch at side {s}")));
            }
        }
        Ok(ClosedGeometry { cross, klein: klein_v, center, degree: t.num_sides() })
    }

    fn path_matrix(&self, t: &Triangulation, r: &[Side]) -> Mobius {
        let mut m = Mobius::identity();
        for &e in r {
            m = m.then_apply(&self.cross[t.glue[e as usize] as usize]);
        }
        m
    }

    /// Attracting and repelling fixed points of the holonomy, expressed in the
    /// frame of every triangle of the word.
    fn endpoints(&self, t: &Triangulation, w: &[Side]) -> Result<(Vec<C>, Vec<C>)> {
        let n = w.len();
        // step[k] maps the frame of triangle k+1 into the frame of triangle k.
        let step: Vec<Mobius> = (0..n).map(|k| self.cross[t.glue[w[(k + 1) % n] as usize] as usize]).collect();
        let mut fwd = vec![C::new(0.0, 0.0); n];
        let mut z = self.center[tri_of(w[0])];
        let mut converged = false;
        for sweep in 0..400 {
            let before = z;
            for k in (0..n).rev() {
                z = step[k].apply(z);
                fwd[k] = z;
            }
            if sweep >= 2 && (z - before).norm() < 1e-13 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Geometry("forward endpoint did not converge".into()));
        }
        let inv: Vec<Mobius> = step.iter().map(|m| m.inverse()).collect();
        let mut bwd = vec![C::new(0.0, 0.0); n];
        let mut z = self.center[tri_of(w[0])];
        converged = false;
        for sweep in 0..400 {
            let before = z;
            for k in 0..n {
                bwd[k] = z;
                z = inv[k].apply(z);
            }
            if sweep >= 2 && (z - before).norm() < 1e-13 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Geometry("backward endpoint did not converge".into()));
        }
        let norm = |v: &mut Vec<C>| v.iter_mut().for_each(|z| *z /= z.norm());
        let (mut fwd, mut bwd) = (fwd, bwd);
        norm(&mut fwd);
        norm(&mut bwd);
        Ok((bwd, fwd))
    }

    /// Cutting sequence of the closed geodesic homotopic to a cyclic word that
    /// is already free- and vertex-reduced.
    pub fn geodesic(&self, t: &Triangulation, w: &[Side]) -> Result<Vec<Side>> {
        let n = w.len();
        if n == 0 {
            return Err(Error::Geometry("trivial curve has no geodesic".into()));
        }
        let (em, ep) = self.endpoints(t, w)?;
        if (0..n).any(|k| (em[k] - ep[k]).norm() < 1e-9) {
            return Err(Error::Geometry("degenerate axis".into()));
        }
        // Signed offsets of the three corners of a tile from the axis.
        let offsets = |m: &Mobius, tile: usize, j: usize| -> [f64; 3] {
            let inv = m.inverse();
            let mut u = inv.apply(em[j % n]);
            let mut v = inv.apply(ep[j % n]);
            u /= u.norm();
            v /= v.norm();
            let d = v - u;
            let len = d.norm();
            let kv = &self.klein[tile];
            [0, 1, 2].map(|i| (d.re * (kv[i].1 - u.im) - d.im * (kv[i].0 - u.re)) / len)
        };
        // Find a tile crossed by the axis, searching outward from the anchors.
        let mut start = None;
        'outer: for j in 0..n {
            let mut queue = VecDeque::from([(Vec::<Side>::new(), tri_of(w[j]))]);
            let mut visited = HashSet::new();
            while let Some((r, tile)) = queue.pop_front() {
                if visited.len() > START_SEARCH {
                    break;
                }
                let m = self.path_matrix(t, &r);
                let f = offsets(&m, tile, j);
                let crossed = f.iter().all(|x| x.abs() >= MARGIN)
                    && !(f.iter().all(|&x| x > 0.0) || f.iter().all(|&x| x < 0.0));
                if crossed {
                    // Of the two crossed sides, the entry is the one nearer the repelling end.
                    let inv = m.inverse();
                    let u = inv.apply(em[j]) / inv.apply(em[j]).norm();
                    let v = inv.apply(ep[j]) / inv.apply(ep[j]).norm();
                    let kv = &self.klein[tile];
                    let mut best: Option<(f64, usize)> = None;
                    for i in 0..3 {
                        let (fa, fb) = (f[i], f[(i + 1) % 3]);
                        if (fa > 0.0) == (fb > 0.0) {
                            continue;
                        }
                        let s = fa / (fa - fb);
                        let px = kv[i].0 + s * (kv[(i + 1) % 3].0 - kv[i].0);
                        let py = kv[i].1 + s * (kv[(i + 1) % 3].1 - kv[i].1);
                        let par = (px - u.re) * (v.re - u.re) + (py - u.im) * (v.im - u.im);
                        if best.is_none_or(|(b, _)| par < b) {
                            best = Some((par, i));
                        }
                    }
                    if let Some((_, i)) = best {
                        start = Some((j, r, side(tile, i)));
                        break 'outer;
                    }
                }
                for i in 0..3 {
                    let g = t.glue[side(tile, i) as usize];
                    let mut r2 = r.clone();
                    r2.push(g);
                    let c = m.then_apply(&self.cross[side(tile, i) as usize]).apply(self.center[tri_of(g)]);
                    let key = (tri_of(g), (c.re * 1e7).round() as i64, (c.im * 1e7).round() as i64);
                    if visited.insert(key) {
                        queue.push_back((r2, tri_of(g)));
                    }
                }
            }
        }
        let (mut j, r0, mut entry) =
            start.ok_or_else(|| Error::Geometry("no tile near the word meets the axis".into()))?;
        let mut r: Vec<Side> = dehn_reduce_path(t, &r0, self.degree);
        let mut m = self.path_matrix(t, &r);
        let mut out: Vec<Side> = Vec::new();
        let mut seen: HashMap<(usize, Vec<Side>, Side), usize> = HashMap::new();
        let limit = 64 * (n + self.degree) + 1024;
        let max_r = 3 * self.degree;
        for _ in 0..limit {
            let tile = tri_of(entry);
            let f = offsets(&m, tile, j);
            let ie = idx_of(entry);
            let (fa, fb, fo) = (f[ie], f[(ie + 1) % 3], f[(ie + 2) % 3]);
            if fa.abs() < MARGIN || fb.abs() < MARGIN || fo.abs() < MARGIN {
                return Err(Error::Geometry("geodesic passes too close to the base vertex".into()));
            }
            if (fa > 0.0) == (fb > 0.0) {
                return Err(Error::Geometry("lost track of the geodesic".into()));
            }
            let exit = if (fo > 0.0) == (fa > 0.0) { side(tile, (ie + 1) % 3) } else { side(tile, (ie + 2) % 3) };
            entry = t.glue[exit as usize];
            out.push(entry);
            r.push(entry);
            r = dehn_reduce_path(t, &r, self.degree);
            // Move the anchor to the nearest tile of the word ahead.
            let mut cand = r.clone();
            let mut best = (r.len(), 0usize, r.clone());
            for k in 1..=self.degree {
                let mut c = Vec::with_capacity(cand.len() + 1);
                c.push(t.glue[w[(j + k) % n] as usize]);
                c.extend_from_slice(&cand);
                cand = dehn_reduce_path(t, &c, self.degree);
                if cand.len() < best.0 {
                    best = (cand.len(), k, cand.clone());
                }
            }
            j += best.1;
            r = best.2;
            if r.len() > max_r {
                return Err(Error::Geometry("geodesic drifted away from the word".into()));
            }
            m = self.path_matrix(t, &r);
            let key = (j % n, r.clone(), entry);
            if let Some(&at) = seen.get(&key) {
                let period = out[at..].to_vec();
                let p = crate::word::primitive_period(&period);
                return Ok(period[..p].to_vec());
            }
            seen.insert(key, out.len());
        }
        Err(Error::Geometry("geodesic trace did not close up".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_standard_surface, Signature};

    #[test]
    fn builds_for_small_genus() {
        for g in 2..5 {
            let t = build_standard_surface(Signature::new(g, 0)).unwrap();
            assert!(t.geometry().is_ok(), "genus {g}");
        }
    }

    #[test]
    fn translation_inverse() {
        let m = Mobius::translation(C::from_polar(1.0, 0.3), 0.7);
        let z = C::new(0.1, -0.2);
        let back = m.inverse().apply(m.apply(z));
        assert!((back - z).norm() < 1e-12);
    }
}
