use std::cmp::Ordering;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use real_gersten::arith::{factor_over_q, int, isolate_real_roots, sign_at, sturm_count, Polynomial, RealAlgebraic};
use real_gersten::verify::gen::{self, Rng8};
use real_gersten::verify::oracle::{descartes_count, descartes_real_roots};

fn rng(seed: u64) -> Rng8 {
    Rng8::seed_from_u64(seed)
}

fn random_poly(r: &mut Rng8) -> Polynomial {
    let deg = r.gen_range(1..=6);
    gen::polynomial(r, deg, 6)
}

/// A few real algebraic numbers: roots of random polynomials and rationals.
fn some_reals(r: &mut Rng8) -> Vec<RealAlgebraic> {
    let mut out: Vec<RealAlgebraic> = (0..3).map(|_| RealAlgebraic::from_rational(&gen::rational(r, 5))).collect();
    for _ in 0..2 {
        let p = random_poly(r);
        out.extend(isolate_real_roots(&p).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sturm_agrees_with_descartes_bisection(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_poly(&mut r);
        let (a, b) = (gen::rational(&mut r, 8), gen::rational(&mut r, 8));
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(lo != hi && p.sign_at(&lo) != 0 && p.sign_at(&hi) != 0);
        let sq = p.squarefree_part();
        prop_assert_eq!(sturm_count(&sq, &lo, &hi).unwrap(), descartes_count(&sq, &lo, &hi));
        prop_assert_eq!(isolate_real_roots(&p).unwrap().len(), descartes_real_roots(&sq));
    }

    #[test]
    fn sign_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (random_poly(&mut r), random_poly(&mut r));
        let fg = &f * &g;
        for alpha in some_reals(&mut r) {
            prop_assert_eq!(sign_at(&fg, &alpha), sign_at(&f, &alpha) * sign_at(&g, &alpha));
        }
    }

    #[test]
    fn compare_is_a_total_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let xs = some_reals(&mut r);
        for a in &xs {
            prop_assert_eq!(a.compare(a), Ordering::Equal);
            for b in &xs {
                prop_assert_eq!(a.compare(b), b.compare(a).reverse());
                if (a.approx() - b.approx()).abs() > 1e-6 {
                    prop_assert_eq!(a.compare(b), a.approx().partial_cmp(&b.approx()).unwrap());
                }
                for c in &xs {
                    if a.compare(b) != Ordering::Greater && b.compare(c) != Ordering::Greater {
                        prop_assert!(a.compare(c) != Ordering::Greater);
                    }
                }
            }
        }
    }

    #[test]
    fn roots_are_isolated_and_sorted(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_poly(&mut r);
        let roots = isolate_real_roots(&p).unwrap();
        for w in roots.windows(2) {
            prop_assert_eq!(w[0].compare(&w[1]), Ordering::Less);
        }
        for a in &roots {
            prop_assert_eq!(sign_at(&p, a), 0);
        }
    }

    #[test]
    fn factorization_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = &random_poly(&mut r) * &random_poly(&mut r);
        let f = factor_over_q(&p).unwrap();
        prop_assert_eq!(f.expand(), p);
        for (g, _) in &f.factors {
            prop_assert_eq!(g.leading().cloned(), Some(int(1)));
        }
    }
}
