use curvecx::curve::{enumerate_curves, CurveClass, Filter};
use curvecx::cut::{classify, Classification};
use curvecx::intersection::{geometric_intersection as gi, intersection_table, twist, twist_power};
use curvecx::mcg::{MappingClassWord, MappingClasses};
use curvecx::surface::{build_punctured_sphere, build_standard_surface, Signature};
use curvecx::Error;

fn surface(g: u32, p: u32) -> curvecx::surface::Triangulation {
    build_standard_surface(Signature::new(g, p)).unwrap()
}

#[test]
fn class_counts() {
    for (g, p, w, all, nonsep) in [(1, 1, 8, 66, 66), (2, 0, 3, 395, 386), (2, 1, 3, 660, 650)] {
        let t = surface(g, p);
        let cs = enumerate_curves(&t, w, Filter::All).unwrap();
        let n = enumerate_curves(&t, w, Filter::Nonseparating).unwrap();
        let s = enumerate_curves(&t, w, Filter::Separating).unwrap();
        assert_eq!((cs.len(), n.len(), s.len()), (all, nonsep, all - nonsep), "({g},{p}) W={w}");
    }
}

#[test]
fn enumeration_is_sorted_and_bounded() {
    let t = surface(2, 1);
    let cs = enumerate_curves(&t, 3, Filter::All).unwrap();
    assert!(cs.iter().all(|c| c.max_weight() <= 3));
    let mut sorted = cs.clone();
    sorted.sort_by(|a, b| (a.length(), &a.coords).cmp(&(b.length(), &b.coords)));
    sorted.dedup();
    assert_eq!(sorted.len(), cs.len());
}

#[test]
fn coordinates_round_trip() {
    let t = surface(2, 0);
    for c in enumerate_curves(&t, 3, Filter::All).unwrap() {
        assert_eq!(CurveClass::from_coords(&t, &c.coords).unwrap(), c);
    }
}

#[test]
fn bad_coordinates_are_rejected() {
    let t = surface(2, 0);
    assert!(matches!(CurveClass::from_coords(&t, &[1, 0, 0]), Err(Error::InvalidCoordinates(_))));
    // Violates the triangle inequality in some triangle.
    assert!(CurveClass::from_coords(&t, &[5, 0, 0, 0, 0, 0, 0, 0, 0]).is_err());
}

#[test]
fn small_signatures_are_rejected() {
    assert!(matches!(build_standard_surface(Signature::new(1, 0)), Err(Error::InvalidSignature { .. })));
    assert!(matches!(build_punctured_sphere(2), Err(Error::InvalidSignature { .. })));
}

#[test]
fn generating_family_is_frozen() {
    let t = surface(2, 0);
    let mc = MappingClasses::new(&t).unwrap();
    let got: Vec<_> = mc.family.iter().map(|c| c.coords.clone()).collect();
    assert_eq!(
        got,
        vec![
            vec![0, 0, 0, 0, 0, 1, 1, 0, 0],
            vec![0, 0, 0, 1, 1, 0, 1, 0, 1],
            vec![0, 1, 1, 1, 0, 0, 0, 1, 0],
            vec![1, 1, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 1, 1, 1, 0, 1, 1, 1, 2],
        ]
    );
    // A chain: consecutive curves meet once, the others are disjoint.
    let it = intersection_table(&t, &mc.family);
    for i in 0..5usize {
        for j in 0..5 {
            let want = if i.abs_diff(j) == 1 { 1 } else { 0 };
            assert_eq!(it[i][j], want, "{i} {j}");
        }
    }
}

#[test]
fn family_shape_on_other_surfaces() {
    for (g, p, n) in [(1, 1, 2), (2, 1, 5), (3, 0, 7)] {
        let t = surface(g, p);
        let mc = MappingClasses::new(&t).unwrap();
        assert_eq!(mc.family.len(), n, "({g},{p})");
        assert!(mc.family.iter().all(|c| c.is_nonseparating()));
    }
}

#[test]
fn symmetry_counts() {
    // Nontrivial symmetries of the standard triangulations.
    for (g, p, n) in [(1, 1, 11), (2, 0, 3), (2, 1, 3), (3, 0, 3)] {
        let t = surface(g, p);
        assert_eq!(MappingClasses::new(&t).unwrap().autos.len(), n, "({g},{p})");
    }
}

#[test]
fn intersection_table_is_symmetric() {
    let t = surface(2, 0);
    let cs = enumerate_curves(&t, 2, Filter::All).unwrap();
    let it = intersection_table(&t, &cs);
    for i in 0..cs.len() {
        assert_eq!(it[i][i], 0);
        for j in 0..i {
            assert_eq!(it[i][j], it[j][i]);
            assert_eq!(it[i][j], gi(&t, &cs[i], &cs[j]));
        }
    }
}

#[test]
fn twist_identity_on_family() {
    for (g, p) in [(1, 1), (2, 0), (2, 1)] {
        let t = surface(g, p);
        let mc = MappingClasses::new(&t).unwrap();
        for c in &mc.family {
            for a in &mc.family {
                let i = gi(&t, a, c);
                for n in [-3, -2, -1, 1, 2, 3] {
                    let b = twist_power(&t, c, n, a).unwrap();
                    assert_eq!(gi(&t, &b, a), n.unsigned_abs() * i * i, "({g},{p}) n={n}");
                    assert_eq!(gi(&t, &b, c), i);
                }
            }
        }
    }
}

#[test]
fn twists_about_disjoint_curves_fix() {
    let t = surface(2, 0);
    let mc = MappingClasses::new(&t).unwrap();
    let (c, a) = (&mc.family[0], &mc.family[2]);
    assert_eq!(&twist(&t, c, 1, a).unwrap(), a);
    assert_eq!(&twist(&t, c, -1, c).unwrap(), c);
}

#[test]
fn separating_classes_split_genus() {
    let t = surface(2, 0);
    for c in enumerate_curves(&t, 3, Filter::Separating).unwrap() {
        match classify(&t, &c).unwrap() {
            Classification::Separating { pieces } => {
                assert_eq!(pieces.len(), 2);
                assert!(pieces.iter().all(|p| p.genus == 1 && p.boundary == 1 && p.punctures == 0));
            }
            Classification::Nonseparating => panic!("{:?}", c.coords),
        }
    }
    for c in enumerate_curves(&t, 2, Filter::Nonseparating).unwrap() {
        assert_eq!(classify(&t, &c).unwrap(), Classification::Nonseparating);
    }
}

#[test]
fn word_parsing_and_inverse() {
    let t = surface(2, 0);
    let mc = MappingClasses::new(&t).unwrap();
    let w: MappingClassWord = MappingClassWord("t0 T3 a1 t4".split(' ').map(|g| g.parse().unwrap()).collect());
    assert_eq!(w.to_string(), "t0 T3 a1 t4");
    let id = w.then(&mc.inverse(&w));
    for c in enumerate_curves(&t, 2, Filter::All).unwrap() {
        assert_eq!(mc.apply_word(&id, &c).unwrap(), c);
    }
    assert!("x1".parse::<curvecx::mcg::Generator>().is_err());
}
