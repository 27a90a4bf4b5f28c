//! Named verification suites and their reports.
//!
//! A suite checks one property on a slice. Properties of maps induced by
//! mapping classes are checked in the exact direction: every sampled word must
//! pass. Reports carry no timings, so equal configurations give equal bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::{self, Cache};
use crate::complexes::{topological_equivalence, ComplexSlice, Kind, PantsDecomposition};
use crate::curve::{enumerate_curves, CurveClass, Filter};
use crate::error::{Error, Result};
use crate::harness::{chain_library, check_map, extend_to_c, induced_map, Induced};
use crate::homology::algebraic_pairing;
use crate::intersection::{geometric_intersection, twist, twist_power};
use crate::mcg::{hyperelliptic_involution, Generator, MappingClassWord, MappingClasses};
use crate::predicates::{
    bounds_pants, find_intersection_one_certificate, is_peripheral_pair, verify_certificate, PATTERN,
};
use crate::surface::{build_standard_surface, Signature, Triangulation};

pub const REPORT_VERSION: &str = "report-v1";

/// Suite ids with a one-line description.
pub const SUITES: &[(&str, &str)] = &[
    ("lemma-2.2", "induced maps send pants decompositions to pants decompositions"),
    ("lemma-2.3", "induced maps preserve adjacency and 4-curves in pants decompositions"),
    ("lemma-2.4", "induced maps preserve pants-bounding triples and peripheral pairs"),
    ("lemma-2.5", "a decomposition and its image are topologically equivalent"),
    ("lemma-2.6", "intersection-one certificates: soundness and completeness at the bound"),
    ("lemma-2.7", "induced maps preserve intersection one and certificates"),
    ("lemma-3.6", "induced maps preserve geometric two with algebraic zero"),
    ("lemma-4.1", "extension from nonseparating curves agrees with the induced map"),
    ("thm-4.4-kernel", "the hyperelliptic involution acts trivially on curves"),
    ("engine-oracles", "intersection numbers and twists against independent oracles"),
];

/// Number of seeded random words per induced-map suite.
pub const WORDS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub signature: Signature,
    pub weight: u32,
    pub length: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub check_id: String,
    pub description: &'static str,
    /// What was checked: "induced => property" statements are exact on the
    /// slice; "evidence" statements are bound-relative.
    pub direction: &'static str,
    pub slice: RunConfig,
    pub passed: bool,
    pub summary: String,
    pub counts: BTreeMap<String, u64>,
    pub violations: Vec<Value>,
    pub witnesses: Vec<Value>,
}

impl Report {
    fn new(id: &str, direction: &'static str, cfg: &RunConfig) -> Report {
        let description = SUITES.iter().find(|(k, _)| *k == id).map(|(_, d)| *d).unwrap_or("");
        Report {
            version: REPORT_VERSION,
            check_id: id.into(),
            description,
            direction,
            slice: *cfg,
            passed: true,
            summary: String::new(),
            counts: BTreeMap::new(),
            violations: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    fn count(&mut self, k: &str, n: u64) {
        *self.counts.entry(k.into()).or_default() += n;
    }

    fn violation(&mut self, v: Value) {
        self.passed = false;
        self.violations.push(v);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.slice;
        let _ = writeln!(s, "{} ({}) on {} W={} L={} seed={}", self.check_id, self.direction, c.signature, c.weight, c.length, c.seed);
        let _ = writeln!(s, "  {}", self.description);
        let _ = writeln!(s, "  {}", self.summary);
        for (k, v) in &self.counts {
            let _ = writeln!(s, "  {k}: {v}");
        }
        for v in self.violations.iter().take(20) {
            let _ = writeln!(s, "  violation: {v}");
        }
        if self.violations.len() > 20 {
            let _ = writeln!(s, "  ... {} more violations", self.violations.len() - 20);
        }
        let _ = writeln!(s, "{}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}

pub fn run_suite(id: &str, cfg: &RunConfig, cache: Option<&Cache>) -> Result<Report> {
    let t = build_standard_surface(cfg.signature)?;
    let mut rep = match id {
        "lemma-2.2" | "lemma-2.3" | "lemma-2.4" | "lemma-2.5" => pants_suite(id, &t, cfg, cache),
        "lemma-2.6" => certificate_suite(&t, cfg, cache),
        "lemma-2.7" => intersection_one_suite(&t, cfg, cache),
        "lemma-3.6" => geo2_suite(&t, cfg, cache),
        "lemma-4.1" => extension_suite(&t, cfg, cache),
        "thm-4.4-kernel" => kernel_suite(&t, cfg, cache),
        "engine-oracles" => oracle_suite(&t, cfg, cache),
        _ => Err(Error::UnknownSuite(id.into())),
    }?;
    if rep.summary.is_empty() {
        let checks = rep.counts.get("checks").copied().unwrap_or(0);
        rep.summary = format!("{checks} checks, {} violations", rep.violations.len());
    }
    Ok(rep)
}

/// Seeded words with lengths uniform in `1..=length`.
pub fn sample_words(mc: &MappingClasses, cfg: &RunConfig, count: usize) -> Vec<MappingClassWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..count)
        .map(|_| {
            let len = if cfg.length == 0 { 0 } else { rng.gen_range(1..=cfg.length) };
            mc.random_word(&mut rng, len)
        })
        .collect()
}

fn coords(cs: &[&CurveClass]) -> Vec<Vec<u32>> {
    cs.iter().map(|c| c.coords.clone()).collect()
}

/// Runs `f` on the induced map of each sampled word on `dom`, after checking
/// it for superinjectivity.
fn for_each_induced(
    mc: &MappingClasses,
    dom: &ComplexSlice,
    cfg: &RunConfig,
    rep: &mut Report,
    mut f: impl FnMut(&mut Report, String, &Induced) -> Result<()>,
) -> Result<()> {
    for w in sample_words(mc, cfg, WORDS) {
        let ind = induced_map(mc, &w, dom, None)?;
        let r = check_map(dom, &ind.image, &ind.map);
        rep.count("words", 1);
        if !r.superinjective {
            rep.violation(json!({"word": w.to_string(), "check": "superinjective", "pairs": r.violations.len()}));
        }
        f(rep, w.to_string(), &ind)?;
    }
    Ok(())
}

fn image_of(ind: &Induced, i: usize) -> &CurveClass {
    &ind.image.vertices[ind.map.get(i).expect("induced maps are total")]
}

fn decompositions(t: &Triangulation, dom: &ComplexSlice) -> Result<Vec<(Vec<usize>, PantsDecomposition)>> {
    let mut out = Vec::new();
    for s in dom.maximal_simplices()? {
        if !s.globally_maximal {
            continue;
        }
        let cs: Vec<CurveClass> = s.vertices.iter().map(|&i| dom.vertices[i].clone()).collect();
        let p = PantsDecomposition::new(t, &cs)?
            .ok_or_else(|| Error::Diagram(format!("maximal clique {:?} is not a pants decomposition", s.vertices)))?;
        out.push((s.vertices, p));
    }
    Ok(out)
}

fn pants_suite(id: &str, t: &Triangulation, cfg: &RunConfig, cache: Option<&Cache>) -> Result<Report> {
    let mut rep = Report::new(id, "induced => property", cfg);
    let dom = cache::slice(cache, t, cfg.weight, Kind::C)?;
    let mc = MappingClasses::new(t)?;
    let decs = decompositions(t, &dom)?;
    rep.count("decompositions", decs.len() as u64);
    // Pants triples and peripheral pairs of the domain, by vertex index.
    let mut triples: Vec<[usize; 3]> = Vec::new();
    let mut peripheral: Vec<(usize, usize)> = Vec::new();
    if id == "lemma-2.4" {
        for (vs, p) in &decs {
            for piece in &p.pants {
                let mut cs = piece.components();
                cs.sort_unstable();
                cs.dedup();
                if cs.len() == 3 && piece.punctures_contained.is_empty() {
                    triples.push([vs[cs[0]], vs[cs[1]], vs[cs[2]]]);
                }
            }
        }
        triples.sort_unstable();
        triples.dedup();
        for &(a, b) in &dom.edges {
            if is_peripheral_pair(t, &dom.vertices[a], &dom.vertices[b])? {
                peripheral.push((a, b));
            }
        }
        rep.count("pants_triples", triples.len() as u64);
        rep.count("peripheral_pairs", peripheral.len() as u64);
    }
    for_each_induced(&mc, &dom, cfg, &mut rep, |rep, w, ind| {
        let ws = w.to_string();
        match id {
            "lemma-2.4" => {
                for &[a, b, c] in &triples {
                    rep.count("checks", 1);
                    if !bounds_pants(t, image_of(ind, a), image_of(ind, b), image_of(ind, c))? {
                        rep.violation(json!({"word": ws, "triple": coords(&[&dom.vertices[a], &dom.vertices[b], &dom.vertices[c]])}));
                    }
                }
                for &(a, b) in &peripheral {
                    rep.count("checks", 1);
                    if !is_peripheral_pair(t, image_of(ind, a), image_of(ind, b))? {
                        rep.violation(json!({"word": ws, "peripheral_pair": coords(&[&dom.vertices[a], &dom.vertices[b]])}));
                    }
                }
            }
            _ => {
                for (vs, p) in &decs {
                    rep.count("checks", 1);
                    let imgs: Vec<CurveClass> = vs.iter().map(|&i| image_of(ind, i).clone()).collect();
                    let Some(q) = PantsDecomposition::new(t, &imgs)? else {
                        rep.violation(json!({"word": ws, "decomposition": coords(&p.curves.iter().collect::<Vec<_>>()), "image": "not a pants decomposition"}));
                        continue;
                    };
                    match id {
                        "lemma-2.3" => {
                            let n = vs.len();
                            for a in 0..n {
                                if p.is_4_curve(a)? != q.is_4_curve(a)? {
                                    rep.violation(json!({"word": ws, "four_curve": p.curves[a].coords}));
                                }
                                for b in a + 1..n {
                                    if p.adjacent(a, b)? != q.adjacent(a, b)? {
                                        rep.violation(json!({"word": ws, "adjacency": coords(&[&p.curves[a], &p.curves[b]])}));
                                    }
                                }
                            }
                        }
                        "lemma-2.5" => {
                            let corr: Vec<usize> = (0..vs.len()).collect();
                            match topological_equivalence(p, &q, &corr)? {
                                Some(m) => {
                                    rep.count("witnesses", 1);
                                    if rep.witnesses.len() < 3 {
                                        rep.witnesses.push(json!({"word": ws, "decomposition": coords(&p.curves.iter().collect::<Vec<_>>()), "pants_map": m}));
                                    }
                                }
                                None => rep.violation(json!({"word": ws, "decomposition": coords(&p.curves.iter().collect::<Vec<_>>()), "equivalence": "none"})),
                            }
                        }
                        _ => {
                            if rep.witnesses.len() < 3 {
                                rep.witnesses.push(json!({"word": ws, "decomposition": coords(&p.curves.iter().collect::<Vec<_>>()), "image": coords(&q.curves.iter().collect::<Vec<_>>())}));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })?;
    Ok(rep)
}

fn certificate_suite(t: &Triangulation, cfg: &RunConfig, cache: Option<&Cache>) -> Result<Report> {
    let mut rep = Report::new("lemma-2.6", "certificate => intersection one (exact); intersection one => certificate (at bound)", cfg);
    let s = cache::slice(cache, t, cfg.weight, Kind::N)?;
    rep.witnesses.push(json!({"pattern": PATTERN}));
    let margin = cfg.weight.saturating_sub(2);
    for a in 0..s.len() {
        for b in 0..s.len() {
            let i = s.itable[a][b];
            if a == b || i == 0 {
                continue;
            }
            let small = s.vertices[a].max_weight() <= margin && s.vertices[b].max_weight() <= margin;
            rep.count("pairs_searched", 1);
            let cert = find_intersection_one_certificate(t, &s, a, b)?;
            match (&cert, i) {
                (Some(_), 1) => rep.count("certificates", 1),
                (Some(_), _) => rep.violation(json!({"check": "soundness", "pair": coords(&[&s.vertices[a], &s.vertices[b]]), "i": i})),
                (None, 1) if small => rep.violation(json!({"check": "completeness", "pair": coords(&[&s.vertices[a], &s.vertices[b]])})),
                _ => {}
            }
            if i == 1 && small {
                rep.count("margin_pairs", 1);
            }
            if let Some(c) = cert {
                if rep.witnesses.len() < 4 {
                    rep.witnesses.push(c.to_json(&s));
                }
            }
        }
    }
    let soundness = rep.violations.iter().filter(|v| v["check"] == "soundness").count();
    let misses = rep.violations.len() - soundness;
    let margin_pairs = rep.counts.get("margin_pairs").copied().unwrap_or(0);
    rep.summary = format!("{soundness} unsound certificates; {misses} misses among {margin_pairs} pairs of weight at most {margin}");
    Ok(rep)
}

fn intersection_one_suite(t: &Triangulation, cfg: &RunConfig, cache: Option<&Cache>) -> Result<Report> {
    let mut rep = Report::new("lemma-2.7", "induced => property", cfg);
    let dom = cache::slice(cache, t, cfg.weight, Kind::C)?;
    let n_slice = cache::slice(cache, t, cfg.weight, Kind::N)?;
    let mc = MappingClasses::new(t)?;
    // A few certificates to transport.
    let mut certs = Vec::new();
    'outer: for a in 0..n_slice.len() {
        for b in 0..n_slice.len() {
            if n_slice.itable[a][b] == 1 {
                if let Some(c) = find_intersection_one_certificate(t, &n_slice, a, b)? {
                    certs.push(c.curves.map(|k| dom.index_of(&n_slice.vertices[k]).expect("N is inside C")));
                    if certs.len() == 5 {
                        break 'outer;
                    }
                }
            }
        }
    }
    rep.count("certificates", certs.len() as u64);
    let ones: Vec<(usize, usize)> = (0..dom.len())
        .flat_map(|a| (a + 1..dom.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| dom.itable[a][b] == 1)
        .collect();
    rep.count("intersection_one_pairs", ones.len() as u64);
    for_each_induced(&mc, &dom, cfg, &mut rep, |rep, w, ind| {
        for &(a, b) in &ones {
            rep.count("checks", 1);
            let (x, y) = (ind.map.get(a).unwrap(), ind.map.get(b).unwrap());
            if ind.image.itable[x][y] != 1 {
                rep.violation(json!({"word": w.to_string(), "pair": coords(&[&dom.vertices[a], &dom.vertices[b]])}));
            }
        }
        for c in &certs {
            rep.count("checks", 1);
            let imgs: [CurveClass; 7] = std::array::from_fn(|k| image_of(ind, c[k]).clone());
            if !verify_certificate(t, &imgs)? {
                rep.violation(json!({"word": w.to_string(), "certificate": c.map(|k| dom.vertices[k].coords.clone())}));
            }
        }
        Ok(())
    })?;
    Ok(rep)
}

fn geo2_suite(t: &Triangulation, cfg: &RunConfig, cache: Option<&Cache>) -> Result<Report> {
    let mut rep = Report::new("lemma-3.6", "induced => property", cfg);
    let dom = cache::slice(cache, t, cfg.weight, Kind::C)?;
    let mc = MappingClasses::new(t)?;
    let mut pairs = Vec::new();
    for a in 0..dom.len() {
        for b in a + 1..dom.len() {
            if dom.itable[a][b] == 2 && algebraic_pairing(t, &dom.vertices[a], &dom.vertices[b]) == 0 {
                pairs.push((a, b));
            }
        }
    }
    rep.count("geo2_alg0_pairs", pairs.len() as u64);
    if let Some(&(a, b)) = pairs.first() {
        rep.witnesses.push(json!({"pair": coords(&[&dom.vertices[a], &dom.vertices[b]])}));
    }
    for_each_induced(&mc, &dom, cfg, &mut rep, |rep, w, ind| {
        for &(a, b) in &pairs {
            rep.count("checks", 1);
            let (x, y) = (ind.map.get(a).unwrap(), ind.map.get(b).unwrap());
            // The image table already holds the geometric part.
            let kept = ind.image.itable[x][y] == 2 && algebraic_pairing(t, &ind.image.vertices[x], &ind.image.vertices[y]) == 0;
            if !kept {
                rep.violation(json!({"word": w.to_string(), "pair": coords(&[&dom.vertices[a], &dom.vertices[b]])}));
            }
        }
        Ok(())
    })?;
    Ok(rep)
}

fn extension_suite(t: &Triangulation, cfg: &RunConfig, cache: Option<&Cache>) -> Result<Report> {
    let mut rep = Report::new("lemma-4.1", "induced => extension agrees", cfg);
    let dom = cache::slice(cache, t, cfg.weight, Kind::C)?;
    let mc = MappingClasses::new(t)?;
    let lib = chain_library(t, &dom)?;
    rep.count("separating_classes", lib.entries.len() as u64);
    if let Some(e) = lib.entries.first() {
        rep.witnesses.push(json!({
            "separating": dom.vertices[e.vertex].coords,
            "chains": e.sides.iter().map(|s| json!({"piece": s.piece, "chain": s.chain.iter().map(|&k| &dom.vertices[k].coords).collect::<Vec<_>>()})).collect::<Vec<_>>(),
        }));
    }
    let nonsep = |i: usize| dom.vertices[i].flags.nonseparating;
    for_each_induced(&mc, &dom, cfg, &mut rep, |rep, w, ind| {
        let ext = extend_to_c(t, &dom, &ind.image, &ind.map.restrict(nonsep), &lib)?;
        for (c, err) in &ext.failures {
            let kind = match err {
                Error::AmbiguousCandidate(..) => "ambiguous",
                _ => "no-candidate",
            };
            rep.count(kind, 1);
            rep.violation(json!({"word": w.to_string(), "separating": dom.vertices[*c].coords, kind: err.to_string()}));
        }
        for e in &lib.entries {
            rep.count("checks", 1);
            if let Some(d) = ext.map.get(e.vertex) {
                if Some(d) != ind.map.get(e.vertex) {
                    rep.violation(json!({"word": w.to_string(), "separating": dom.vertices[e.vertex].coords, "extension": ind.image.vertices[d].coords}));
                } else {
                    rep.count("agreements", 1);
                }
            }
        }
        Ok(())
    })?;
    rep.count("ambiguous", 0);
    rep.count("no-candidate", 0);
    Ok(rep)
}

fn kernel_suite(t: &Triangulation, cfg: &RunConfig, cache: Option<&Cache>) -> Result<Report> {
    let mut rep = Report::new("thm-4.4-kernel", "exact", cfg);
    let dom = cache::slice(cache, t, cfg.weight, Kind::C)?;
    let mc = MappingClasses::new(t)?;
    let iota = hyperelliptic_involution(&mc)?;
    rep.witnesses.push(json!({"involution": iota.to_string()}));
    let ind = induced_map(&mc, &iota, &dom, Some(&dom))?;
    for (i, c) in dom.vertices.iter().enumerate() {
        let fixed = ind.map.get(i) == Some(i);
        let key = if c.flags.nonseparating { "nonseparating" } else { "separating" };
        rep.count(&format!("{key}_vertices"), 1);
        if fixed {
            rep.count(&format!("{key}_fixed"), 1);
        } else {
            rep.violation(json!({"moved": c.coords}));
        }
    }
    let fixed = rep.counts.get("nonseparating_fixed").copied().unwrap_or(0) + rep.counts.get("separating_fixed").copied().unwrap_or(0);
    rep.summary = format!("involution fixes {fixed}/{} vertices", dom.len());
    // Words differing by the involution act identically.
    for w in sample_words(&mc, &RunConfig { length: cfg.length.min(4), ..*cfg }, 5) {
        let wi = w.then(&iota);
        let a = induced_map(&mc, &w, &dom, None)?;
        let b = induced_map(&mc, &wi, &dom, None)?;
        let same = (0..dom.len()).all(|i| image_of(&a, i) == image_of(&b, i));
        rep.count("word_pairs", 1);
        if same {
            rep.witnesses.push(json!({"word": w.to_string(), "twisted_by_involution": wi.to_string(), "identical_action": true}));
        } else {
            rep.violation(json!({"word": w.to_string(), "twisted_by_involution": wi.to_string(), "identical_action": false}));
        }
    }
    Ok(rep)
}

/// Homology coordinates on the once-punctured torus from signed crossings of
/// the two edges off a spanning tree of the dual graph.
fn torus_homology(t: &Triangulation, c: &CurveClass) -> (i64, i64) {
    let mut v = vec![0i64; t.num_edges()];
    for &s in &c.word {
        let e = t.edge[s as usize];
        v[e] += if t.edge_sides[e][0] == s { 1 } else { -1 };
    }
    (v[1], v[2])
}

fn oracle_suite(t: &Triangulation, cfg: &RunConfig, cache: Option<&Cache>) -> Result<Report> {
    let mut rep = Report::new("engine-oracles", "exact", cfg);
    let sig = t.signature;
    if sig == Signature::new(1, 1) {
        let s = cache::slice(cache, t, cfg.weight, Kind::C)?;
        let h: Vec<_> = s.vertices.iter().map(|c| torus_homology(t, c)).collect();
        for i in 0..s.len() {
            for j in 0..s.len() {
                let det = (h[i].0 * h[j].1 - h[i].1 * h[j].0).unsigned_abs() as u32;
                rep.count("determinant_pairs", 1);
                if det == s.itable[i][j] {
                    rep.count("determinant_pass", 1);
                } else {
                    rep.violation(json!({"oracle": "determinant", "pair": coords(&[&s.vertices[i], &s.vertices[j]]), "engine": s.itable[i][j], "determinant": det}));
                }
            }
        }
    }
    if sig.genus >= 1 {
        let mc = MappingClasses::new(t)?;
        // i(t_c^n(a), a) = |n| i(a, c)^2.
        let probes = enumerate_curves(t, cfg.weight.min(2), Filter::All)?;
        for c in &mc.family {
            for a in mc.family.iter().chain(&probes) {
                let i = geometric_intersection(t, a, c) as u64;
                let mut x = a.clone();
                for n in 1..=3u64 {
                    x = twist(t, c, 1, &x)?;
                    let y = twist_power(t, c, -(n as i32), a)?;
                    rep.count("twist_cases", 2);
                    for (img, sign) in [(&x, "+"), (&y, "-")] {
                        let got = geometric_intersection(t, img, a) as u64;
                        if got == n * i * i {
                            rep.count("twist_pass", 1);
                        } else {
                            rep.violation(json!({"oracle": "twist", "a": a.coords, "c": c.coords, "n": format!("{sign}{n}"), "got": got, "want": n * i * i}));
                        }
                    }
                }
            }
        }
        // f t_c f^-1 = t_{f(c)}^{ε(f)}, with words read left to right.
        let sample: Vec<&CurveClass> = probes.iter().take(10).collect();
        for u in sample_words(&mc, &RunConfig { length: cfg.length.min(3), ..*cfg }, 10) {
            let eps = mc.epsilon(&u);
            for k in 0..mc.family.len() {
                let conj = mc.inverse(&u).then(&MappingClassWord(vec![Generator::Twist { curve: k, dir: 1 }])).then(&u);
                let fc = mc.apply_word(&u, &mc.family[k])?;
                for x in &sample {
                    rep.count("conjugation_cases", 1);
                    if mc.apply_word(&conj, x)? == twist(t, &fc, eps, x)? {
                        rep.count("conjugation_pass", 1);
                    } else {
                        rep.violation(json!({"oracle": "conjugation", "word": u.to_string(), "twist": k, "curve": x.coords}));
                    }
                }
            }
        }
    }
    let frac = |k: &str| {
        let c = &rep.counts;
        format!("{k} {}/{}", c.get(&format!("{k}_pass")).copied().unwrap_or(0), c.get(&format!("{k}_cases")).copied().unwrap_or(0))
    };
    rep.summary = format!("{}, {}", frac("twist"), frac("conjugation"));
    if let Some(n) = rep.counts.get("determinant_pairs") {
        rep.summary = format!("determinant {}/{n}, {}", rep.counts.get("determinant_pass").copied().unwrap_or(0), rep.summary);
    }
    Ok(rep)
}
