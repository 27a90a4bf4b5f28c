//! Geometric intersection numbers and Dehn twists.
//!
//! Canonical cutting sequences are reduced closed paths in the dual graph,
//! which is a spine of the surface with its vertices removed. Two lifts of
//! such paths to the universal cover cross iff they share a run of edges whose
//! two ends leave in linked directions. Along a shared edge, strands are
//! ordered by the first turn at which they separate (a left turn keeps a
//! strand nearer the start of the side), so each crossing is detected at the
//! first edge of its shared run by comparing the previous turns with the
//! order of the forward rays. Forward rays are ranked for a whole batch of
//! words at once by prefix doubling.

use rayon::prelude::*;

use crate::curve::{CurveClass, Canon};
use crate::error::Result;
use crate::surface::{Side, Triangulation};
use crate::word::{self, Turn};

/// Ranked strands of a batch of oriented cyclic words.
pub struct Batch {
    words: Vec<Vec<Side>>,
    offset: Vec<usize>,
    rank: Vec<u32>,
    /// Per word: `(key, rank, position)` sorted, with
    /// `key = 2 * side + (previous turn is right)`.
    profile: Vec<Vec<(u32, u32, u32)>>,
}

impl Batch {
    /// Ranks the words and their reverses; word `i` of the input is entry
    /// `2 * i` of the batch and its reverse is `2 * i + 1`.
    pub fn new(t: &Triangulation, input: &[&[Side]]) -> Batch {
        let mut words = Vec::with_capacity(2 * input.len());
        for w in input {
            words.push(w.to_vec());
            words.push(word::reverse(t, w));
        }
        let mut offset = vec![0usize; words.len() + 1];
        for (i, w) in words.iter().enumerate() {
            offset[i + 1] = offset[i] + w.len();
        }
        let total = offset[words.len()];
        let mut succ_base = Vec::with_capacity(total);
        let mut turns = Vec::with_capacity(total);
        let mut rank = Vec::with_capacity(total);
        for (i, w) in words.iter().enumerate() {
            let tr = word::turns(t, w);
            for k in 0..w.len() {
                succ_base.push((offset[i], w.len(), k));
                turns.push(tr[k]);
                rank.push(w[k] * 3 + tr[k] as u32);
            }
        }
        let max_len = words.iter().map(|w| w.len()).max().unwrap_or(0);
        let rank = refine(rank, &succ_base, 2 * max_len);
        let mut profile = Vec::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            let n = w.len();
            let mut p: Vec<(u32, u32, u32)> = (0..n)
                .map(|k| {
                    let prev = turns[offset[i] + (k + n - 1) % n];
                    let key = 2 * w[k] + (prev == Turn::Right) as u32;
                    (key, rank[offset[i] + k], k as u32)
                })
                .collect();
            p.sort_unstable();
            profile.push(p);
        }
        Batch { words, offset, rank, profile }
    }

    pub fn len(&self) -> usize {
        self.words.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Linked pairs between oriented words `x` and `y`, split by the
    /// direction in which `y` crosses `x`: (right to left, left to right).
    fn linked(&self, x: usize, y: usize) -> (u64, u64) {
        let (a, b) = (&self.profile[x], &self.profile[y]);
        let (mut rl, mut lr) = (0u64, 0u64);
        let mut i = 0;
        while i < a.len() {
            let key = a[i].0;
            let ie = i + a[i..].iter().take_while(|e| e.0 == key).count();
            // Strands of y on the same side with the opposite previous turn.
            let want = key ^ 1;
            let js = b.partition_point(|e| e.0 < want);
            let je = b.partition_point(|e| e.0 <= want);
            let ys = &b[js..je];
            let mut c = 0usize;
            if key % 2 == 0 {
                // x is left of y behind the run; linked iff y ends up left.
                for e in &a[i..ie] {
                    while c < ys.len() && ys[c].1 < e.1 {
                        c += 1;
                    }
                    rl += c as u64;
                }
            } else {
                for e in &a[i..ie] {
                    while c < ys.len() && ys[c].1 <= e.1 {
                        c += 1;
                    }
                    lr += (ys.len() - c) as u64;
                }
            }
            i = ie;
        }
        (rl, lr)
    }

    /// Geometric intersection number of entries `i` and `j`.
    pub fn intersection(&self, i: usize, j: usize) -> u64 {
        let (a, b) = self.linked(2 * i, 2 * j);
        let (c, d) = self.linked(2 * i, 2 * j + 1);
        a + b + c + d
    }

    /// Signed intersection number; positive when `j` crosses `i` from right
    /// to left.
    pub fn signed(&self, i: usize, j: usize) -> i64 {
        let (a, b) = self.linked(2 * i, 2 * j);
        let (c, d) = self.linked(2 * i, 2 * j + 1);
        (a as i64 - b as i64) - (c as i64 - d as i64)
    }

    /// Word of entry `a` twisted along entry `c`. `dir = 1` turns left onto
    /// `c` at every crossing.
    pub fn twist_word(&self, t: &Triangulation, a: usize, c: usize, dir: i32) -> Vec<Side> {
        let aw = &self.words[2 * a];
        let na = aw.len();
        let mut loops: Vec<Vec<(u32, Vec<Side>)>> = vec![Vec::new(); na];
        let pa = &self.profile[2 * a];
        for o in 0..2 {
            let y = 2 * c + o;
            let yw = &self.words[y];
            let ny = yw.len();
            let prof = &self.profile[y];
            for &(key, ra, k) in pa {
                let want = key ^ 1;
                let lo = prof.partition_point(|e| e.0 < want);
                let hi = prof.partition_point(|e| e.0 <= want);
                for &(_, ry, j) in &prof[lo..hi] {
                    let linked = if key % 2 == 0 { ry < ra } else { ry > ra };
                    if !linked {
                        continue;
                    }
                    // y crosses from right to left when x turned left before.
                    let forward = (key % 2 == 0) == (dir > 0);
                    let j = j as usize;
                    let lp: Vec<Side> = if forward {
                        (0..ny).map(|i| yw[(j + i) % ny]).collect()
                    } else {
                        (0..ny).map(|i| t.glue[yw[(j + 2 * ny - 1 - i) % ny] as usize]).collect()
                    };
                    loops[k as usize].push((ry, lp));
                }
            }
        }
        let tr = word::turns(t, aw);
        let mut out = Vec::new();
        for k in 0..na {
            let l = &mut loops[k];
            if !l.is_empty() {
                // Crossings lie in the triangle before the shared run and are
                // met farthest-from-the-corner first.
                let prev_right = tr[(k + na - 1) % na] == Turn::Right;
                if prev_right {
                    l.sort_by(|x, y| y.0.cmp(&x.0));
                } else {
                    l.sort_by_key(|x| x.0);
                }
                for (_, lp) in l.iter() {
                    out.extend_from_slice(lp);
                }
            }
            out.push(aw[k]);
        }
        out
    }

    pub fn rank_of(&self, word: usize, k: usize) -> u32 {
        self.rank[self.offset[word] + k]
    }
}

/// Prefix-doubling refinement of cyclic ray ranks until rays that agree on
/// `horizon` steps share a rank.
fn refine(mut rank: Vec<u32>, base: &[(usize, usize, usize)], horizon: usize) -> Vec<u32> {
    let n = rank.len();
    compress(&mut rank);
    let mut classes = count_classes(&rank);
    let mut len = 1usize;
    while len < horizon.max(1) {
        let mut keyed: Vec<(u64, u32)> = (0..n)
            .into_par_iter()
            .map(|p| {
                let (o, m, k) = base[p];
                let q = o + (k + len) % m;
                (((rank[p] as u64) << 32) | rank[q] as u64, p as u32)
            })
            .collect();
        keyed.par_sort_unstable();
        let mut next = vec![0u32; n];
        let mut r = 0u32;
        for i in 0..n {
            if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                r += 1;
            }
            next[keyed[i].1 as usize] = r;
        }
        rank = next;
        len *= 2;
        let c = count_classes(&rank);
        if c == classes {
            break;
        }
        classes = c;
    }
    rank
}

fn compress(rank: &mut [u32]) {
    let mut v: Vec<u32> = rank.to_vec();
    v.sort_unstable();
    v.dedup();
    for r in rank.iter_mut() {
        *r = v.binary_search(r).unwrap() as u32;
    }
}

fn count_classes(rank: &[u32]) -> usize {
    rank.iter().copied().max().map_or(0, |m| m as usize + 1)
}

/// Geometric intersection number of two classes.
pub fn geometric_intersection(t: &Triangulation, a: &CurveClass, b: &CurveClass) -> u32 {
    if a == b {
        return 0;
    }
    Batch::new(t, &[&a.word, &b.word]).intersection(0, 1) as u32
}

/// Signed intersection of two closed paths, which must be reduced.
pub fn signed_pairing(t: &Triangulation, a: &[Side], b: &[Side]) -> i64 {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    Batch::new(t, &[a, b]).signed(0, 1)
}

/// Symmetric table of intersection numbers.
pub fn intersection_table(t: &Triangulation, cs: &[CurveClass]) -> Vec<Vec<u32>> {
    let words: Vec<&[Side]> = cs.iter().map(|c| c.word.as_slice()).collect();
    let batch = Batch::new(t, &words);
    let n = cs.len();
    let rows: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| if j > i { batch.intersection(i, j) as u32 } else { 0 }).collect())
        .collect();
    let mut table = rows;
    for i in 0..n {
        for j in 0..i {
            table[i][j] = table[j][i];
        }
    }
    table
}

/// Image of `a` under the twist about `c`, `dir` = ±1 (positive turns left).
pub fn twist(t: &Triangulation, c: &CurveClass, dir: i32, a: &CurveClass) -> Result<CurveClass> {
    if a == c {
        return Ok(a.clone());
    }
    let batch = Batch::new(t, &[&a.word, &c.word]);
    if batch.intersection(0, 1) == 0 {
        return Ok(a.clone());
    }
    let w = batch.twist_word(t, 0, 1, dir);
    match crate::curve::canonical(t, &w)? {
        Canon::Essential(cw) => Ok(CurveClass::from_canonical_word(t, cw)),
        other => Err(crate::Error::Diagram(format!("twist produced a {other:?} curve"))),
    }
}

/// `twist` applied `n.abs()` times in the direction of the sign of `n`.
pub fn twist_power(t: &Triangulation, c: &CurveClass, n: i32, a: &CurveClass) -> Result<CurveClass> {
    let mut x = a.clone();
    for _ in 0..n.unsigned_abs() {
        x = twist(t, c, n.signum(), &x)?;
    }
    Ok(x)
}
