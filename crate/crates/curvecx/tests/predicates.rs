use curvecx::complexes::{ComplexSlice, Kind, PantsDecomposition};
use curvecx::homology::algebraic_pairing;
use curvecx::mcg::MappingClasses;
use curvecx::predicates::{
    bounds_pants, find_intersection_one_certificate, geo2_alg0, is_peripheral_pair, pentagon_and_nvertex,
    verify_certificate, PATTERN,
};
use curvecx::surface::{build_punctured_sphere, build_standard_surface, Signature, Triangulation};

fn surface(g: u32, p: u32) -> Triangulation {
    build_standard_surface(Signature::new(g, p)).unwrap()
}

#[test]
fn pattern_is_symmetric_and_irreflexive() {
    for i in 0..7 {
        assert!(!PATTERN[i][i]);
        for j in 0..7 {
            assert_eq!(PATTERN[i][j], PATTERN[j][i], "{i} {j}");
        }
    }
    // α5 and α6 meet the same curves.
    assert_eq!(PATTERN[4], PATTERN[5]);
}

#[test]
fn model_certificate() {
    let t = surface(2, 0);
    let mc = MappingClasses::new(&t).unwrap();
    let n = ComplexSlice::build(&t, 3, Kind::N).unwrap();
    let a1 = n.index_of(&mc.family[0]).unwrap();
    let a2 = n.index_of(&mc.family[1]).unwrap();
    let cert = find_intersection_one_certificate(&t, &n, a1, a2).unwrap().expect("a certificate");
    let got: Vec<_> = cert.curves.iter().map(|&k| n.vertices[k].coords.clone()).collect();
    assert_eq!(
        got,
        vec![
            vec![0, 0, 0, 0, 0, 1, 1, 0, 0],
            vec![0, 0, 0, 1, 1, 0, 1, 0, 1],
            vec![0, 1, 1, 1, 0, 0, 0, 1, 0],
            vec![1, 0, 1, 1, 0, 1, 1, 1, 2],
            vec![0, 1, 1, 1, 0, 1, 1, 1, 2],
            vec![0, 1, 1, 1, 0, 1, 1, 1, 2],
            vec![1, 0, 1, 0, 1, 1, 2, 1, 1],
        ]
    );
    for i in 0..7 {
        for j in 0..7 {
            if i != j {
                assert_eq!(n.itable[cert.curves[i]][cert.curves[j]] != 0, PATTERN[i][j]);
            }
        }
    }
    let cs: [_; 7] = std::array::from_fn(|k| n.vertices[cert.curves[k]].clone());
    assert!(verify_certificate(&t, &cs).unwrap());
    // Disjoint curves have no certificate.
    let a3 = n.index_of(&mc.family[2]).unwrap();
    assert!(find_intersection_one_certificate(&t, &n, a1, a3).unwrap().is_none());
}

#[test]
fn certificates_need_an_n_slice() {
    let t = surface(2, 0);
    let c = ComplexSlice::build(&t, 1, Kind::C).unwrap();
    assert!(find_intersection_one_certificate(&t, &c, 0, 1).is_err());
}

#[test]
fn pants_triples_in_decompositions() {
    for (g, p) in [(2, 0), (2, 1)] {
        let t = surface(g, p);
        let s = ComplexSlice::build(&t, 2, Kind::C).unwrap();
        let mut checked = 0;
        for x in s.maximal_simplices().unwrap().into_iter().filter(|x| x.globally_maximal).take(40) {
            let cs: Vec<_> = x.vertices.iter().map(|&k| s.vertices[k].clone()).collect();
            let d = PantsDecomposition::new(&t, &cs).unwrap().unwrap();
            let k = cs.len();
            for a in 0..k {
                for b in a + 1..k {
                    let shared = d.pants.iter().any(|q| {
                        let c = q.components();
                        c.contains(&a) && c.contains(&b) && q.punctures_contained.len() == 1
                    });
                    if t.signature.punctures == 1 {
                        assert_eq!(is_peripheral_pair(&t, &cs[a], &cs[b]).unwrap(), shared);
                    }
                    for c in b + 1..k {
                        let want = d.pants.iter().any(|q| {
                            let mut m = q.components();
                            m.sort_unstable();
                            m == [a, b, c]
                        });
                        assert_eq!(bounds_pants(&t, &cs[a], &cs[b], &cs[c]).unwrap(), want);
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn predicates_refuse_intersecting_input() {
    let t = surface(2, 1);
    let mc = MappingClasses::new(&t).unwrap();
    let f = &mc.family;
    assert!(is_peripheral_pair(&t, &f[0], &f[1]).is_err());
    assert!(bounds_pants(&t, &f[0], &f[2], &f[0]).is_err());
}

#[test]
fn geometric_two_algebraic_zero() {
    let t = surface(2, 0);
    let mc = MappingClasses::new(&t).unwrap();
    assert!(!geo2_alg0(&t, &mc.family[0], &mc.family[1]));
    let s = ComplexSlice::build(&t, 2, Kind::N).unwrap();
    let mut found = 0;
    for a in 0..s.len() {
        for b in 0..s.len() {
            let want = s.itable[a][b] == 2 && algebraic_pairing(&t, &s.vertices[a], &s.vertices[b]) == 0;
            assert_eq!(geo2_alg0(&t, &s.vertices[a], &s.vertices[b]), want);
            found += want as usize;
        }
    }
    assert!(found > 0);
}

#[test]
fn pentagons_on_the_five_punctured_sphere() {
    let t = build_punctured_sphere(5).unwrap();
    let s = ComplexSlice::build(&t, 2, Kind::C).unwrap();
    let r = pentagon_and_nvertex(&t, &s).unwrap();
    // Every essential curve cuts off two of the five punctures.
    assert!(r.n_labels.iter().all(|&m| m == 2));
    assert!(!r.pentagons.is_empty());
    for &[a, b, c, d, e] in &r.pentagons {
        assert!(a < b.min(c).min(d).min(e));
        let cyc = [a, b, c, d, e];
        for i in 0..5 {
            assert_eq!(s.itable[cyc[i]][cyc[(i + 1) % 5]], 0);
            assert_ne!(s.itable[cyc[i]][cyc[(i + 2) % 5]], 0);
        }
        assert!(r.pentagons.contains(&[a, e, d, c, b]));
    }
    assert!(pentagon_and_nvertex(&surface(2, 0), &s).is_err());
}
