use curvecx::complexes::{topological_equivalence, ComplexSlice, Kind, PantsDecomposition};
use curvecx::curve::{enumerate_curves, Filter};
use curvecx::surface::{build_standard_surface, Signature, Triangulation};
use curvecx::Error;

fn surface(g: u32, p: u32) -> Triangulation {
    build_standard_surface(Signature::new(g, p)).unwrap()
}

#[test]
fn slice_sizes() {
    let t = surface(2, 0);
    let c = ComplexSlice::build(&t, 3, Kind::C).unwrap();
    assert_eq!((c.len(), c.edges.len()), (395, 2961));
    let ms = c.maximal_simplices().unwrap();
    let by = |k| ms.iter().filter(|s| s.vertices.len() == k).count();
    assert_eq!((ms.len(), by(2), by(3)), (2026, 368, 1658));
    assert!(ms.iter().all(|s| s.globally_maximal == (s.vertices.len() == 3)));

    let t = surface(2, 1);
    let c = ComplexSlice::build(&t, 3, Kind::C).unwrap();
    assert_eq!((c.len(), c.edges.len()), (660, 8356));
    assert_eq!(c.maximal_simplices().unwrap().len(), 4254);
}

#[test]
fn small_cliques_are_bound_limited() {
    let t = surface(2, 0);
    let n = ComplexSlice::build(&t, 1, Kind::N).unwrap();
    let ms = n.maximal_simplices().unwrap();
    assert!(ms.iter().any(|s| s.vertices.len() == 2 && !s.globally_maximal));
}

#[test]
fn edges_follow_the_kind() {
    let t = surface(2, 0);
    for kind in [Kind::C, Kind::N, Kind::G] {
        let s = ComplexSlice::build(&t, 2, kind).unwrap();
        let want = if kind == Kind::G { 1 } else { 0 };
        assert!(s.edges.iter().all(|&(a, b)| s.itable[a][b] == want));
        let total: usize = (0..s.len()).map(|i| (i + 1..s.len()).filter(|&j| s.itable[i][j] == want).count()).sum();
        assert_eq!(total, s.edges.len());
    }
    let g = ComplexSlice::build(&t, 2, Kind::G).unwrap();
    assert!(matches!(g.maximal_simplices(), Err(Error::Precondition(_))));
}

#[test]
fn separating_classes_are_refused_in_n() {
    let t = surface(2, 0);
    let sep = enumerate_curves(&t, 3, Filter::Separating).unwrap();
    assert!(ComplexSlice::from_classes(&t, Kind::N, sep, None).is_err());
}

#[test]
fn exports_are_deterministic() {
    let t = surface(2, 0);
    let a = ComplexSlice::build(&t, 2, Kind::C).unwrap();
    let b = ComplexSlice::build(&t, 2, Kind::C).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_dot(), b.to_dot());
    assert_eq!(a.to_csv(), b.to_csv());
    assert!(a.to_dot().starts_with("graph"));
}

fn decompositions(t: &Triangulation, s: &ComplexSlice) -> Vec<PantsDecomposition> {
    s.maximal_simplices()
        .unwrap()
        .into_iter()
        .filter(|x| x.globally_maximal)
        .map(|x| {
            let cs: Vec<_> = x.vertices.iter().map(|&k| s.vertices[k].clone()).collect();
            PantsDecomposition::new(t, &cs).unwrap().expect("a maximal clique is a decomposition")
        })
        .collect()
}

#[test]
fn decompositions_of_genus_two() {
    let t = surface(2, 0);
    let s = ComplexSlice::build(&t, 2, Kind::C).unwrap();
    for p in decompositions(&t, &s) {
        assert_eq!(p.pants.len(), 2);
        assert!(p.pants.iter().all(|x| x.is_pants()));
        assert!(matches!(p.adjacent(0, 3), Err(Error::NotInDecomposition(3))));
        assert!(matches!(p.neighbours(5), Err(Error::NotInDecomposition(5))));
        assert_eq!(topological_equivalence(&p, &p, &[0, 1, 2]).unwrap().map(|b| b.len()), Some(2));
        assert!(matches!(topological_equivalence(&p, &p, &[0, 1]), Err(Error::SizeMismatch(_))));
    }
}

#[test]
fn four_curves_on_genus_three() {
    // Greedy decompositions from rotated starting points; the low-weight
    // classes of (3,0) contain decompositions with a curve between two
    // pants with four distinct other boundaries.
    let t = surface(3, 0);
    let cs = enumerate_curves(&t, 2, Filter::All).unwrap();
    let s = ComplexSlice::from_classes(&t, Kind::C, cs.clone(), Some(2)).unwrap();
    let (mut full, mut found) = (0, false);
    for start in 0..cs.len() {
        let mut pick: Vec<usize> = Vec::new();
        for k in (start..cs.len()).chain(0..start) {
            if pick.iter().all(|&j| s.itable[j][k] == 0) {
                pick.push(k);
            }
        }
        let curves: Vec<_> = pick.iter().map(|&k| cs[k].clone()).collect();
        let Some(p) = PantsDecomposition::new(&t, &curves).unwrap() else { continue };
        full += 1;
        for x in 0..p.curves.len() {
            assert!(p.neighbours(x).unwrap().len() <= 4);
            found |= p.is_4_curve(x).unwrap();
        }
        if found {
            break;
        }
    }
    assert!(full > 0);
    assert!(found);
}
