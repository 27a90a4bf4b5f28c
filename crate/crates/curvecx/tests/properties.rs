use std::sync::OnceLock;

use proptest::prelude::*;

use curvecx::curve::{enumerate_curves, CurveClass, Filter};
use curvecx::cut::cut_classes;
use curvecx::intersection::{geometric_intersection as gi, twist};
use curvecx::mcg::{apply_automorphism, Generator, MappingClassWord, MappingClasses};
use curvecx::surface::{build_standard_surface, Signature, Triangulation};

struct Fixture {
    t: &'static Triangulation,
    mc: MappingClasses<'static>,
    curves: Vec<CurveClass>,
}

fn fixture(k: usize) -> &'static Fixture {
    static F: [OnceLock<Fixture>; 2] = [OnceLock::new(), OnceLock::new()];
    F[k].get_or_init(|| {
        let sig = [Signature::new(2, 0), Signature::new(2, 1)][k];
        let t: &'static Triangulation = Box::leak(Box::new(build_standard_surface(sig).unwrap()));
        let mc = MappingClasses::new(t).unwrap();
        let curves = enumerate_curves(t, 2, Filter::All).unwrap();
        Fixture { t, mc, curves }
    })
}

fn word(f: &Fixture, picks: &[usize]) -> MappingClassWord {
    let gens = f.mc.generators();
    MappingClassWord(picks.iter().map(|&k| gens[k % gens.len()]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_is_symmetric(k in 0..2usize, a in any::<usize>(), b in any::<usize>()) {
        let f = fixture(k);
        let (a, b) = (&f.curves[a % f.curves.len()], &f.curves[b % f.curves.len()]);
        prop_assert_eq!(gi(f.t, a, b), gi(f.t, b, a));
        prop_assert_eq!(gi(f.t, a, a), 0);
    }

    #[test]
    fn twisting_preserves_intersection_with_the_core(k in 0..2usize, a in any::<usize>(), c in any::<usize>(), dir in prop::sample::select(vec![-1, 1])) {
        let f = fixture(k);
        let (a, c) = (&f.curves[a % f.curves.len()], &f.curves[c % f.curves.len()]);
        let b = twist(f.t, c, dir, a).unwrap();
        prop_assert_eq!(gi(f.t, &b, c), gi(f.t, a, c));
        prop_assert_eq!(&twist(f.t, c, -dir, &b).unwrap(), a);
    }

    #[test]
    fn inverse_words_undo(k in 0..2usize, picks in prop::collection::vec(any::<usize>(), 0..5), a in any::<usize>()) {
        let f = fixture(k);
        let w = word(f, &picks);
        let a = &f.curves[a % f.curves.len()];
        let there = f.mc.apply_word(&w, a).unwrap();
        prop_assert_eq!(&f.mc.apply_word(&f.mc.inverse(&w), &there).unwrap(), a);
        prop_assert_eq!(&f.mc.apply_word(&w.then(&f.mc.inverse(&w)), a).unwrap(), a);
    }

    #[test]
    fn mapping_classes_preserve_intersection(k in 0..2usize, picks in prop::collection::vec(any::<usize>(), 0..4), a in any::<usize>(), b in any::<usize>()) {
        let f = fixture(k);
        let w = word(f, &picks);
        let (a, b) = (&f.curves[a % f.curves.len()], &f.curves[b % f.curves.len()]);
        let (fa, fb) = (f.mc.apply_word(&w, a).unwrap(), f.mc.apply_word(&w, b).unwrap());
        prop_assert_eq!(gi(f.t, &fa, &fb), gi(f.t, a, b));
        prop_assert_eq!(fa.flags.nonseparating, a.flags.nonseparating);
    }

    #[test]
    fn symmetries_preserve_intersection(k in 0..2usize, s in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let f = fixture(k);
        let s = &f.mc.autos[s % f.mc.autos.len()];
        let (a, b) = (&f.curves[a % f.curves.len()], &f.curves[b % f.curves.len()]);
        let (sa, sb) = (apply_automorphism(f.t, s, a).unwrap(), apply_automorphism(f.t, s, b).unwrap());
        prop_assert_eq!(gi(f.t, &sa, &sb), gi(f.t, a, b));
    }

    #[test]
    fn cutting_is_additive(k in 0..2usize, a in any::<usize>(), b in any::<usize>()) {
        let f = fixture(k);
        let (a, b) = (&f.curves[a % f.curves.len()], &f.curves[b % f.curves.len()]);
        prop_assume!(a != b && gi(f.t, a, b) == 0);
        let cut = cut_classes(f.t, &[a, b]).unwrap();
        let chi: i64 = cut.pieces.iter().map(|p| p.euler_characteristic).sum();
        prop_assert_eq!(chi, f.t.euler_characteristic());
        let slots: usize = cut.pieces.iter().map(|p| p.provenance.len()).sum();
        prop_assert_eq!(slots, 4);
        for p in &cut.pieces {
            prop_assert_eq!(p.euler_characteristic, 2 - 2 * p.genus as i64 - p.boundary_count as i64);
        }
    }

    #[test]
    fn coordinates_round_trip(k in 0..2usize, picks in prop::collection::vec(any::<usize>(), 0..4), a in any::<usize>()) {
        let f = fixture(k);
        let c = f.mc.apply_word(&word(f, &picks), &f.curves[a % f.curves.len()]).unwrap();
        prop_assert_eq!(CurveClass::from_coords(f.t, &c.coords).unwrap(), c);
    }

    #[test]
    fn generators_parse_back(k in 0..2usize, g in any::<usize>()) {
        let f = fixture(k);
        let gens = f.mc.generators();
        let g = gens[g % gens.len()];
        prop_assert_eq!(g.to_string().parse::<Generator>().unwrap(), g);
    }
}
