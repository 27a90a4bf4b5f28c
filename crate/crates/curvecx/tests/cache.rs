use curvecx::cache::{self, Cache, CACHE_VERSION};
use curvecx::complexes::Kind;
use curvecx::suites::{run_suite, RunConfig};
use curvecx::surface::{build_standard_surface, Signature};
use curvecx::Error;

fn tmp(name: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("curvecx-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn round_trip() {
    let dir = tmp("round-trip");
    let c = Cache::new(&dir);
    let t = build_standard_surface(Signature::new(2, 1)).unwrap();
    assert!(c.load(&t, 2, Kind::N).unwrap().is_none());
    let cold = cache::slice(Some(&c), &t, 2, Kind::N).unwrap();
    let warm = c.load(&t, 2, Kind::N).unwrap().expect("stored");
    assert_eq!(cold.to_json(), warm.to_json());
    assert_eq!(warm.index_of(&cold.vertices[3]), Some(3));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn stale_entries_are_refused() {
    let dir = tmp("stale");
    let c = Cache::new(&dir);
    let t = build_standard_surface(Signature::new(2, 0)).unwrap();
    cache::slice(Some(&c), &t, 1, Kind::C).unwrap();
    let path = std::fs::read_dir(&dir).unwrap().next().unwrap().unwrap().path();
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replace(CACHE_VERSION, "curves-v0")).unwrap();
    assert!(matches!(c.load(&t, 1, Kind::C), Err(Error::Cache(_))));
    std::fs::write(&path, "{").unwrap();
    assert!(matches!(c.load(&t, 1, Kind::C), Err(Error::Cache(_))));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn cached_reports_match_cold_reports() {
    let dir = tmp("reports");
    let c = Cache::new(&dir);
    let cfg = RunConfig { signature: Signature::new(2, 0), weight: 2, length: 4, seed: 7 };
    for id in ["lemma-2.3", "lemma-2.7", "lemma-4.1"] {
        let cold = run_suite(id, &cfg, None).unwrap().to_json();
        let first = run_suite(id, &cfg, Some(&c)).unwrap().to_json();
        let warm = run_suite(id, &cfg, Some(&c)).unwrap().to_json();
        assert_eq!(cold, first, "{id}");
        assert_eq!(cold, warm, "{id}");
    }
    let _ = std::fs::remove_dir_all(&dir);
}
