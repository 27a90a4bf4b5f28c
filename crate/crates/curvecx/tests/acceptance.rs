//! One line per acceptance criterion. Time limits are wall-clock and pinned
//! below; the build profile for tests is optimized.

use std::process::ExitCode;
use std::time::Instant;

use curvecx::cache::Cache;
use curvecx::complexes::{ComplexSlice, Kind, PantsDecomposition};
use curvecx::curve::{enumerate_curves, Filter};
use curvecx::harness::{induced_images, Realizer};
use curvecx::intersection::{geometric_intersection, intersection_table, twist_power};
use curvecx::mcg::MappingClasses;
use curvecx::suites::{run_suite, sample_words, Report, RunConfig, SUITES};
use curvecx::surface::{build_standard_surface, Signature, Triangulation};

const ORACLE_SECS: f64 = 60.0;
const TWIST_SECS: f64 = 120.0;
const LEMMA_SUITE_SECS: f64 = 600.0;
const REALIZE_SECS: f64 = 900.0;
/// Pinned weight bound for intersection-one certificates.
const W1: u32 = 3;
const SEED: u64 = 1;

type Outcome = curvecx::Result<(bool, String)>;

fn surface(g: u32, p: u32) -> Triangulation {
    build_standard_surface(Signature::new(g, p)).expect("standard surface")
}

fn cfg(g: u32, p: u32, weight: u32, length: usize) -> RunConfig {
    RunConfig { signature: Signature::new(g, p), weight, length, seed: SEED }
}

/// Signed crossings with the two edges outside a spanning tree of the dual
/// graph: the homology class of a curve on the punctured torus.
fn torus_homology(t: &Triangulation, w: &[u32]) -> (i64, i64) {
    let mut v = vec![0i64; t.num_edges()];
    for &s in w {
        let e = t.edge[s as usize];
        v[e] += if t.edge_sides[e][0] == s { 1 } else { -1 };
    }
    // The two triangles share all three edges; edge 0 serves as the tree.
    (v[1], v[2])
}

fn engine_oracle() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool");
    pool.install(|| {
        let t = surface(1, 1);
        let cs = enumerate_curves(&t, 8, Filter::All)?;
        let table = intersection_table(&t, &cs);
        let h: Vec<_> = cs.iter().map(|c| torus_homology(&t, &c.word)).collect();
        let mut bad = 0;
        for i in 0..cs.len() {
            for j in 0..cs.len() {
                let det = (h[i].0 * h[j].1 - h[i].1 * h[j].0).unsigned_abs() as u32;
                bad += (det != table[i][j]) as usize;
            }
        }
        let n = cs.len() * cs.len();
        Ok((bad == 0, format!("{}/{n} pairs match on (1,1) W=8, single-threaded", n - bad)))
    })
}

fn twist_identity() -> Outcome {
    let mut cases = 0;
    let mut bad = 0;
    for (g, p) in [(2, 0), (1, 1)] {
        let t = surface(g, p);
        let mc = MappingClasses::new(&t)?;
        for c in &mc.family {
            for a in &mc.family {
                let i = geometric_intersection(&t, a, c);
                for n in 1..=3 {
                    let b = twist_power(&t, c, n, a)?;
                    cases += 1;
                    bad += (geometric_intersection(&t, &b, a) != n as u32 * i * i) as usize;
                }
            }
        }
    }
    Ok((bad == 0, format!("{}/{cases} generator pairs and powers on (2,0), (1,1)", cases - bad)))
}

fn pants_structure() -> Outcome {
    let t = surface(2, 0);
    let s = ComplexSlice::build(&t, 3, Kind::C)?;
    let mut good = 0;
    let mut total = 0;
    for x in s.maximal_simplices()?.into_iter().filter(|x| x.globally_maximal) {
        total += 1;
        let cs: Vec<_> = x.vertices.iter().map(|&k| s.vertices[k].clone()).collect();
        let ok = cs.len() == 3
            && PantsDecomposition::new(&t, &cs)?.is_some_and(|d| d.pants.len() == 2 && d.pants.iter().all(|p| p.is_pants()));
        good += ok as usize;
    }
    Ok((good == total && total > 0, format!("{good}/{total} globally maximal cliques are 3 curves cutting 2 pants")))
}

fn count(r: &Report, k: &str) -> u64 {
    r.counts.get(k).copied().unwrap_or(0)
}

fn certificates() -> curvecx::Result<[(bool, String); 2]> {
    let mut unsound = 0;
    let mut searched = 0;
    let mut completeness = (0, 0);
    for (g, p) in [(2, 0), (2, 1)] {
        let r = run_suite("lemma-2.6", &cfg(g, p, W1, 0), None)?;
        let u = r.violations.iter().filter(|v| v["check"] == "soundness").count();
        unsound += u;
        searched += count(&r, "pairs_searched");
        if (g, p) == (2, 0) {
            let misses: Vec<_> = r.violations.iter().filter(|v| v["check"] == "completeness").collect();
            for m in &misses {
                println!("    miss: {}", m["pair"]);
            }
            completeness = (misses.len(), count(&r, "margin_pairs"));
        }
    }
    let (misses, pairs) = completeness;
    Ok([
        (unsound == 0, format!("{unsound} unsound certificates over {searched} ordered pairs at W1={W1} on (2,0), (2,1)")),
        (misses == 0, format!("{}/{pairs} pairs with i=1 and weights <= {} certified on (2,0)", pairs - misses as u64, W1 - 2)),
    ])
}

fn lemma_suites() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (g, p) in [(2, 0), (2, 1)] {
        for id in ["lemma-2.2", "lemma-2.3", "lemma-2.4", "lemma-2.5", "lemma-2.7", "lemma-3.6"] {
            let r = run_suite(id, &cfg(g, p, 3, 8), None)?;
            ok &= r.passed;
            lines.push(format!("{id} ({g},{p}) {}", if r.passed { "ok" } else { "FAIL" }));
            for v in r.violations.iter().take(5) {
                println!("    {id} ({g},{p}) violation: {v}");
            }
        }
    }
    Ok((ok, format!("{} suite runs, 50 words each: {}", lines.len(), if ok { "0 violations".into() } else { lines.join(", ") })))
}

fn extension() -> Outcome {
    let mut ok = true;
    let mut agreements = 0;
    let mut checks = 0;
    let mut ambiguous = 0;
    for (g, p) in [(2, 0), (2, 1)] {
        let r = run_suite("lemma-4.1", &cfg(g, p, 3, 8), None)?;
        ok &= r.passed;
        agreements += count(&r, "agreements");
        checks += count(&r, "checks");
        ambiguous += count(&r, "ambiguous");
    }
    Ok((ok && ambiguous == 0, format!("{agreements}/{checks} separating images agree, {ambiguous} ambiguous")))
}

fn kernel() -> Outcome {
    let r = run_suite("thm-4.4-kernel", &cfg(2, 0, 4, 8), None)?;
    Ok((r.passed, format!("{} on (2,0) W=4", r.summary)))
}

fn realization() -> Outcome {
    let t = surface(2, 0);
    let mc = MappingClasses::new(&t)?;
    let dom = ComplexSlice::build(&t, 3, Kind::C)?;
    let bound = 6;
    let r = Realizer::new(&mc, &dom, bound / 2)?;
    let words = sample_words(&mc, &cfg(2, 0, 3, 4), 50);
    let mut found = 0;
    let mut matched = 0;
    for w in &words {
        let targets = induced_images(&mc, w, &dom)?;
        if let Some(x) = r.realize(&targets, bound)? {
            found += 1;
            // Re-check the witness vertex by vertex.
            let agree = dom.vertices.iter().zip(&targets).filter(|(c, want)| mc.apply_word(&x, c).as_ref() == Ok(*want)).count();
            matched += (agree == dom.len()) as usize;
        }
    }
    let n = words.len();
    Ok((matched == n, format!("{found}/{n} words realized at L={bound}, {matched} matching on all {} vertices", dom.len())))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("curvecx-acceptance-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let cache = Cache::new(&dir);
    let mut same = 0;
    for (id, _) in SUITES {
        let c = if *id == "engine-oracles" { cfg(1, 1, 4, 4) } else { cfg(2, 0, 2, 4) };
        let a = run_suite(id, &c, None)?.to_json();
        let b = run_suite(id, &c, None)?.to_json();
        let warm = run_suite(id, &c, Some(&cache))?.to_json();
        let warm2 = run_suite(id, &c, Some(&cache))?.to_json();
        let ok = a == b && a == warm && a == warm2;
        if !ok {
            println!("    {id}: reports differ");
        }
        same += ok as usize;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok((same == SUITES.len(), format!("{same}/{} suites byte-identical across runs and cache states", SUITES.len())))
}

fn report(n: usize, name: &str, limit: Option<f64>, start: Instant, r: (bool, String)) -> bool {
    let secs = start.elapsed().as_secs_f64();
    let in_time = limit.is_none_or(|l| secs < l);
    let passed = r.0 && in_time;
    let time = match limit {
        Some(l) => format!("{secs:.1}s, limit {l:.0}s"),
        None => format!("{secs:.1}s"),
    };
    println!("criterion {n:>2} {}: {name}: {} ({time})", if passed { "PASS" } else { "FAIL" }, r.1);
    passed
}

fn run(n: usize, name: &str, limit: Option<f64>, f: fn() -> Outcome) -> bool {
    let start = Instant::now();
    match f() {
        Ok(r) => report(n, name, limit, start, r),
        Err(e) => report(n, name, limit, start, (false, format!("error: {e}"))),
    }
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= run(1, "engine oracle", Some(ORACLE_SECS), engine_oracle);
    ok &= run(2, "twist identity", Some(TWIST_SECS), twist_identity);
    ok &= run(3, "pants structure", None, pants_structure);
    let start = Instant::now();
    match certificates() {
        Ok([sound, complete]) => {
            ok &= report(4, "certificate soundness", None, start, sound);
            ok &= report(5, "certificate completeness", None, start, complete);
        }
        Err(e) => {
            ok &= report(4, "certificate soundness", None, start, (false, format!("error: {e}")));
            ok &= report(5, "certificate completeness", None, start, (false, format!("error: {e}")));
        }
    }
    ok &= run(6, "induced-map suites", Some(LEMMA_SUITE_SECS), lemma_suites);
    ok &= run(7, "extension", None, extension);
    ok &= run(8, "kernel", None, kernel);
    ok &= run(9, "realization", Some(REALIZE_SECS), realization);
    ok &= run(10, "determinism", None, determinism);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
