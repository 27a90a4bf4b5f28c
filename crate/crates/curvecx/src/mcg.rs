//! Mapping classes as words in Dehn twists and triangulation symmetries.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{canonical, enumerate_curves, Canon, CurveClass, Filter};
use crate::error::{Error, Result};
use crate::intersection::{intersection_table, twist};
use crate::surface::{Automorphism, Signature, Triangulation};

pub const WORD_VERSION: &str = "mcg-v1";

/// One letter of a word. Twist `k` refers to curve `k` of the generating
/// family; automorphism `k` to entry `k` of `Triangulation::automorphisms`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Twist { curve: usize, dir: i8 },
    Auto(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Twist { curve, dir } if *dir > 0 => write!(f, "t{curve}"),
            Generator::Twist { curve, .. } => write!(f, "T{curve}"),
            Generator::Auto(k) => write!(f, "a{k}"),
        }
    }
}

impl FromStr for Generator {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (head, num) = s.split_at(s.len().min(1));
        let k: usize = num.parse().map_err(|_| format!("bad generator {s:?}"))?;
        match head {
            "t" => Ok(Generator::Twist { curve: k, dir: 1 }),
            "T" => Ok(Generator::Twist { curve: k, dir: -1 }),
            "a" => Ok(Generator::Auto(k)),
            _ => Err(format!("bad generator {s:?}")),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A word, applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MappingClassWord(pub Vec<Generator>);

impl MappingClassWord {
    pub fn identity() -> Self {
        MappingClassWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn then(&self, o: &MappingClassWord) -> MappingClassWord {
        MappingClassWord(self.0.iter().chain(&o.0).copied().collect())
    }
}

impl fmt::Display for MappingClassWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Generators acting on one triangulation.
#[derive(Debug, Clone)]
pub struct MappingClasses<'a> {
    pub t: &'a Triangulation,
    pub family: Vec<CurveClass>,
    pub autos: Vec<Automorphism>,
    inverse_auto: Vec<usize>,
}

/// Serialized generating data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    pub version: String,
    pub signature: Signature,
    pub triangulation: String,
    pub family: Vec<Vec<u32>>,
    pub automorphisms: Vec<Automorphism>,
}

impl<'a> MappingClasses<'a> {
    pub fn new(t: &'a Triangulation) -> Result<Self> {
        let family = generating_family(t)?;
        Ok(Self::with_family(t, family))
    }

    pub fn with_family(t: &'a Triangulation, family: Vec<CurveClass>) -> Self {
        let autos = t.automorphisms();
        let inverse_auto = autos
            .iter()
            .map(|a| {
                autos
                    .iter()
                    .position(|b| a.compose(b).is_identity())
                    .expect("automorphisms form a group")
            })
            .collect();
        MappingClasses { t, family, autos, inverse_auto }
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut g = Vec::new();
        for k in 0..self.family.len() {
            g.push(Generator::Twist { curve: k, dir: 1 });
            g.push(Generator::Twist { curve: k, dir: -1 });
        }
        g.extend((0..self.autos.len()).map(Generator::Auto));
        g
    }

    pub fn inverse_generator(&self, g: Generator) -> Generator {
        match g {
            Generator::Twist { curve, dir } => Generator::Twist { curve, dir: -dir },
            Generator::Auto(k) => Generator::Auto(self.inverse_auto[k]),
        }
    }

    pub fn inverse(&self, w: &MappingClassWord) -> MappingClassWord {
        MappingClassWord(w.0.iter().rev().map(|&g| self.inverse_generator(g)).collect())
    }

    /// +1 if the word preserves orientation, -1 otherwise.
    pub fn epsilon(&self, w: &MappingClassWord) -> i32 {
        let flips = w
            .0
            .iter()
            .filter(|g| matches!(g, Generator::Auto(k) if !self.autos[*k].orientation_preserving))
            .count();
        if flips % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn apply_generator(&self, g: Generator, a: &CurveClass) -> Result<CurveClass> {
        match g {
            Generator::Twist { curve, dir } => twist(self.t, &self.family[curve], dir as i32, a),
            Generator::Auto(k) => apply_automorphism(self.t, &self.autos[k], a),
        }
    }

    pub fn apply_word(&self, w: &MappingClassWord, a: &CurveClass) -> Result<CurveClass> {
        let mut x = a.clone();
        for &g in &w.0 {
            x = self.apply_generator(g, &x)?;
        }
        Ok(x)
    }

    /// Uniform random word of length `len`.
    pub fn random_word<R: Rng>(&self, rng: &mut R, len: usize) -> MappingClassWord {
        let gens = self.generators();
        MappingClassWord((0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect())
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            version: WORD_VERSION.into(),
            signature: self.t.signature,
            triangulation: self.t.hash(),
            family: self.family.iter().map(|c| c.coords.clone()).collect(),
            automorphisms: self.autos.clone(),
        }
    }
}

pub fn apply_automorphism(t: &Triangulation, f: &Automorphism, a: &CurveClass) -> Result<CurveClass> {
    let w: Vec<_> = a.word.iter().map(|&s| f.apply(s)).collect();
    match canonical(t, &w)? {
        Canon::Essential(cw) => Ok(CurveClass::from_canonical_word(t, cw)),
        other => Err(Error::Diagram(format!("automorphism produced a {other:?} curve"))),
    }
}

/// The orientation-preserving involution of the closed genus-two surface that
/// fixes the generating family.
pub fn hyperelliptic_involution(mc: &MappingClasses) -> Result<MappingClassWord> {
    let sig = mc.t.signature;
    if sig != Signature::new(2, 0) {
        return Err(Error::Precondition(format!("hyperelliptic involution requested on {sig}")));
    }
    for (k, a) in mc.autos.iter().enumerate() {
        if !a.orientation_preserving || !a.compose(a).is_identity() {
            continue;
        }
        let mut fixes = true;
        for c in &mc.family {
            if apply_automorphism(mc.t, a, c)? != *c {
                fixes = false;
                break;
            }
        }
        if fixes {
            return Ok(MappingClassWord(vec![Generator::Auto(k)]));
        }
    }
    Err(Error::InvalidTriangulation("no involutive symmetry fixes the generating family".into()))
}

/// A chain `c_1, ..., c_2g` of nonseparating curves, plus one curve meeting
/// only `c_4` once when g ≥ 3 (for g = 2 this makes a chain of five). Found
/// by search among the classes of least weight.
pub fn generating_family(t: &Triangulation) -> Result<Vec<CurveClass>> {
    let g = t.signature.genus as usize;
    if g < 1 {
        return Err(Error::Precondition("generating family needs genus at least one".into()));
    }
    let len = if g == 1 { 2 } else { 2 * g };
    let extra = g >= 2;
    for bound in 1..=4 {
        let mut cs = enumerate_curves(t, bound, Filter::Nonseparating)?;
        cs.sort_by(|a, b| (a.length(), &a.coords).cmp(&(b.length(), &b.coords)));
        let table = intersection_table(t, &cs);
        let mut path = Vec::new();
        if let Some(chain) = chain_search(&table, len, &mut path) {
            let mut fam: Vec<CurveClass> = chain.iter().map(|&i| cs[i].clone()).collect();
            if extra {
                let anchor = chain[3];
                let pick = (0..cs.len()).find(|&x| {
                    !chain.contains(&x)
                        && chain.iter().all(|&c| table[x][c] == if c == anchor { 1 } else { 0 })
                });
                match pick {
                    Some(x) => fam.push(cs[x].clone()),
                    None => continue,
                }
            }
            return Ok(fam);
        }
    }
    Err(Error::Precondition("no generating chain found at weight 4".into()))
}

/// Depth-first search for a chain of `len` vertices in an intersection table.
pub fn chain_search(table: &[Vec<u32>], len: usize, path: &mut Vec<usize>) -> Option<Vec<usize>> {
    if path.len() == len {
        return Some(path.clone());
    }
    for x in 0..table.len() {
        if path.contains(&x) {
            continue;
        }
        let k = path.len();
        let ok = path
            .iter()
            .enumerate()
            .all(|(j, &y)| table[x][y] == if j + 1 == k { 1 } else { 0 });
        if ok {
            path.push(x);
            if let Some(c) = chain_search(table, len, path) {
                return Some(c);
            }
            path.pop();
        }
    }
    None
}
