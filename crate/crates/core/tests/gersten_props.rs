use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use real_gersten::abelian::FPAbGroup;
use real_gersten::arith::RealAlgebraic;
use real_gersten::bm::{bm_homology, build_cell_complex, build_cell_complex_refined, compact_homology};
use real_gersten::gersten::{
    cohomology, cohomology_with_support, default_support, realize_in_colimit, realize_sign_pattern, support_cohomology,
    Bundle, DualizingData, SchemeSpec,
};
use real_gersten::spectrum::{orderings_of, Body, ClosedPoint, Place, SignVector};
use real_gersten::verify::gen::{self, Rng8};
use real_gersten::verify::{battery_schemes, realize_fields};
use real_gersten::witt::pfister_signature;

fn rng(seed: u64) -> Rng8 {
    Rng8::seed_from_u64(seed)
}

fn curves() -> Vec<SchemeSpec> {
    battery_schemes().into_iter().filter(|x| x.dimension() == 1).collect()
}

/// `O(n)`, or on the affine line and the projective line sometimes a divisor bundle.
fn dualizing(r: &mut Rng8, x: &SchemeSpec) -> DualizingData {
    if x.dimension() == 1 && r.gen_bool(0.4) {
        let mut div = std::collections::BTreeMap::new();
        for _ in 0..r.gen_range(1..=2) {
            *div.entry(gen::closed_point(r, x.base())).or_insert(0) += [-1, 1, 2][r.gen_range(0..3)];
        }
        DualizingData::divisor_bundle(div)
    } else {
        DualizingData { bundle: Bundle::O(r.gen_range(-3..=3)), shift: 0 }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn bm_homology_is_refinement_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let schemes = curves();
        let x = schemes[r.gen_range(0..schemes.len())].clone();
        let d = dualizing(&mut r, &x);
        let extra: Vec<RealAlgebraic> = (0..r.gen_range(1..=4))
            .flat_map(|_| gen::closed_point(&mut r, real_gersten::spectrum::Base::RealClosure).real_points())
            .collect();
        let coarse = build_cell_complex(&x, &d).unwrap();
        let fine = build_cell_complex_refined(&x, &d, &extra).unwrap();
        prop_assert_eq!(bm_homology(&coarse), bm_homology(&fine));
        prop_assert_eq!(bm_homology(&coarse.subdivided()), bm_homology(&coarse));
        prop_assert_eq!(fine.total_monodromy(), coarse.total_monodromy());
        if coarse.is_compact() {
            prop_assert_eq!(compact_homology(&coarse).unwrap(), bm_homology(&coarse));
        }
    }

    #[test]
    fn cohomology_is_stable_under_enlarging_the_support(seed in any::<u64>()) {
        let mut r = rng(seed);
        let schemes = curves();
        let x = schemes[r.gen_range(0..schemes.len())].clone();
        let d = dualizing(&mut r, &x);
        let mut support = default_support(&x, &d).unwrap();
        for _ in 0..r.gen_range(1..=3) {
            support.push(Place::Point(gen::closed_point(&mut r, x.base())));
        }
        support.sort();
        support.dedup();
        prop_assert_eq!(cohomology_with_support(&x, &d, &support).unwrap(), cohomology(&x, &d).unwrap());
    }

    #[test]
    fn localization_sequences_are_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let schemes = curves();
        let x = schemes[r.gen_range(0..schemes.len())].clone();
        let d = DualizingData::o(r.gen_range(-2..=2));
        let z: Vec<ClosedPoint> = (0..r.gen_range(1..=3)).map(|_| gen::closed_point(&mut r, x.base())).collect();
        let s = support_cohomology(&x, &z, &d).unwrap();
        prop_assert!(s.is_exact(), "{:?}", s.exact);
        prop_assert!(s.devissage_holds());
        prop_assert_eq!(s.h0_z, FPAbGroup::zero());
    }
}

fn random_pattern(r: &mut Rng8, n: usize) -> Vec<i64> {
    let odd = r.gen_bool(0.5);
    (0..n)
        .map(|_| {
            let k = r.gen_range(-3..=3) * 2;
            if odd {
                k + 1
            } else {
                k << r.gen_range(0..4)
            }
        })
        .collect()
}

#[test]
fn realize_round_trips_on_one_hundred_patterns() {
    let mut r = rng(0x5eed);
    let fields = realize_fields();
    for i in 0..100 {
        let field = &fields[i % fields.len()];
        let n = orderings_of(field).unwrap().len();
        let w = SignVector::new(field.clone(), random_pattern(&mut r, n)).unwrap();
        let e = realize_sign_pattern(field, &w).unwrap();
        let back = pfister_signature(&e).unwrap().normalize().unwrap();
        assert_eq!(back.body, Body::Sign(w.clone()), "{w:?}");
        let min_power = w.entries.iter().filter(|&&x| x != 0).map(|x| x.trailing_zeros()).min();
        if let Some(j) = min_power {
            assert_eq!(e.j, j as usize, "{w:?}");
        }
    }
}

#[test]
fn colimit_realizes_every_pattern() {
    let mut r = rng(0xc011);
    for field in realize_fields() {
        let n = orderings_of(&field).unwrap().len();
        for _ in 0..20 {
            let w: Vec<i64> = (0..n).map(|_| r.gen_range(-5..=5)).collect();
            let w = SignVector::new(field.clone(), w).unwrap();
            let e = realize_in_colimit(&field, &w).unwrap();
            assert!(e.j >= 1);
            let back = pfister_signature(&e).unwrap().normalize().unwrap();
            assert_eq!(back.body, Body::Sign(w.scale(2)));
        }
    }
}
