use curvecx::complexes::{ComplexSlice, Kind};
use curvecx::harness::{
    chain_library, check_injective, check_map, check_simplicial, check_superinjective, extend_to_c, induced_images,
    induced_map, realize_by_homeomorphism, Realizer, VertexMap,
};
use curvecx::mcg::{hyperelliptic_involution, MappingClassWord, MappingClasses};
use curvecx::surface::{build_standard_surface, Signature, Triangulation};
use curvecx::Error;

fn surface(g: u32, p: u32) -> Triangulation {
    build_standard_surface(Signature::new(g, p)).unwrap()
}

fn word(s: &str) -> MappingClassWord {
    MappingClassWord(s.split_whitespace().map(|g| g.parse().unwrap()).collect())
}

#[test]
fn identity_and_constant_maps() {
    let t = surface(2, 0);
    let s = ComplexSlice::build(&t, 2, Kind::C).unwrap();
    let id = VertexMap::identity(s.len());
    let r = check_map(&s, &s, &id);
    assert!(r.simplicial && r.injective && r.superinjective && r.violations.is_empty());
    assert_eq!(r.domain_size, s.len());

    // Collapsing everything to one vertex is simplicial and nothing more.
    let k = VertexMap::constant(s.len(), 0);
    assert!(!check_injective(&s, &s, &k));
    assert!(!check_superinjective(&s, &s, &k));
    assert!(check_simplicial(&s, &s, &k));

    let partial = id.restrict(|i| i % 2 == 0);
    assert!(!partial.is_total());
    assert!(!check_map(&s, &s, &partial).violations.is_empty());
}

#[test]
fn induced_maps() {
    let t = surface(2, 0);
    let mc = MappingClasses::new(&t).unwrap();
    let s = ComplexSlice::build(&t, 2, Kind::C).unwrap();
    let id = induced_map(&mc, &MappingClassWord::identity(), &s, Some(&s)).unwrap();
    assert_eq!(id.map, VertexMap::identity(s.len()));

    let w = word("t0 t1 T2 a1");
    let ind = induced_map(&mc, &w, &s, None).unwrap();
    assert!(check_map(&s, &ind.image, &ind.map).superinjective);
    assert_eq!(ind.image.len(), s.len());

    // Twisting pushes some classes past the slice bound.
    match induced_map(&mc, &word("t0 t1 t0 t1"), &s, Some(&s)) {
        Err(Error::OrbitEscape { needed, .. }) => assert!(needed > 2),
        other => panic!("{:?}", other.map(|_| ())),
    }
}

#[test]
fn involution_acts_trivially() {
    let t = surface(2, 0);
    let mc = MappingClasses::new(&t).unwrap();
    let s = ComplexSlice::build(&t, 3, Kind::C).unwrap();
    let iota = hyperelliptic_involution(&mc).unwrap();
    let ind = induced_map(&mc, &iota, &s, Some(&s)).unwrap();
    assert_eq!(ind.map, VertexMap::identity(s.len()));
    assert!(hyperelliptic_involution(&MappingClasses::new(&surface(2, 1)).unwrap()).is_err());
}

#[test]
fn extension_agrees_with_induced_maps() {
    let t = surface(2, 0);
    let mc = MappingClasses::new(&t).unwrap();
    let s = ComplexSlice::build(&t, 3, Kind::C).unwrap();
    let lib = chain_library(&t, &s).unwrap();
    let seps = (0..s.len()).filter(|&i| !s.vertices[i].flags.nonseparating).count();
    assert_eq!(lib.entries.len(), seps);
    for e in &lib.entries {
        assert_eq!(e.sides.len(), 2);
        assert!(e.sides.iter().all(|x| x.chain.len() == 2));
    }
    for w in ["", "t0 T3", "a1 t2 t4"] {
        let ind = induced_map(&mc, &word(w), &s, None).unwrap();
        let lambda = ind.map.restrict(|i| s.vertices[i].flags.nonseparating);
        let ext = extend_to_c(&t, &s, &ind.image, &lambda, &lib).unwrap();
        assert!(ext.failures.is_empty(), "{w}: {:?}", ext.failures);
        assert_eq!(ext.map, ind.map, "{w}");
    }
    let short = VertexMap::identity(3);
    assert!(matches!(extend_to_c(&t, &s, &s, &short, &lib), Err(Error::SizeMismatch(_))));
}

#[test]
fn realization() {
    let t = surface(2, 0);
    let mc = MappingClasses::new(&t).unwrap();
    let s = ComplexSlice::build(&t, 2, Kind::C).unwrap();
    let id = realize_by_homeomorphism(&mc, &s, &s, &VertexMap::identity(s.len()), 4).unwrap();
    assert_eq!(id, Some(MappingClassWord::identity()));

    let r = Realizer::new(&mc, &s, 2).unwrap();
    assert_eq!(r.depth(), 2);
    let w = word("t0 T3 t1");
    let targets = induced_images(&mc, &w, &s).unwrap();
    let found = r.realize(&targets, 4).unwrap().expect("a witness");
    assert!(found.len() <= 3);
    assert_eq!(induced_images(&mc, &found, &s).unwrap(), targets);
    assert!(matches!(r.realize(&targets[1..], 4), Err(Error::SizeMismatch(_))));
}
