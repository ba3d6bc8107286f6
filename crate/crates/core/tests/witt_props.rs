use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use real_gersten::arith::{int, Rational};
use real_gersten::real::transfer_real;
use real_gersten::spectrum::BasisToken;
use real_gersten::spectrum::{Base, Body, FieldDesc, FieldElem, Place};
use real_gersten::verify::gen::{self, Rng8};
use real_gersten::witt::residue::unit_part_residue;
use real_gersten::witt::{
    anisotropic_part_q, diagonalize, isometric_q, pfister_signature, scharlau_transfer, second_residue,
    total_signature, witt_equivalent_q, witt_sum, PfisterElement, QuadForm, TwistedForm,
};

fn rng(seed: u64) -> Rng8 {
    Rng8::seed_from_u64(seed)
}

fn rational_form(r: &mut Rng8, max_rank: usize) -> QuadForm {
    let n = r.gen_range(1..=max_rank);
    QuadForm::from_rationals(&(0..n).map(|_| gen::nonzero_rational(r, 12)).collect::<Vec<_>>()).unwrap()
}

fn signature_q(q: &QuadForm) -> i64 {
    match q.signature().unwrap() {
        Body::Sign(v) => v.entries[0],
        Body::Step(_) => unreachable!(),
    }
}

fn number_field(r: &mut Rng8) -> FieldDesc {
    FieldDesc::finite_ext(Base::Q, &gen::irreducible(r, 2, 4, 4)).unwrap()
}

fn nf_element(r: &mut Rng8, field: &FieldDesc) -> FieldElem {
    let FieldDesc::FiniteExt { modulus, .. } = field else { unreachable!() };
    let deg = r.gen_range(0..modulus.deg());
    FieldElem::Algebraic(gen::polynomial(r, deg, 4).rem(modulus))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// Congruent Gram matrices diagonalize to forms of equal signature.
    #[test]
    fn sylvester_inertia(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = rational_form(&mut r, 5);
        let d = q.rationals().unwrap();
        let n = d.len();
        // unipotent upper triangular change of basis, then a random permutation
        let mut p: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { int(1) } else if i < j { gen::rational(&mut r, 4) } else { int(0) }).collect())
            .collect();
        let k = r.gen_range(0..n);
        p.swap(0, k);
        let gram: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|l| &p[l][i] * &d[l] * &p[l][j]).sum()).collect())
            .collect();
        let diag = diagonalize(&gram).unwrap();
        prop_assert_eq!(signature_q(&diag), signature_q(&q));
        prop_assert!(isometric_q(&diag, &q).unwrap());
    }

    #[test]
    fn hyperbolic_forms_vanish(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = rational_form(&mut r, 4);
        let h = witt_sum(&q, &q.neg().unwrap()).unwrap();
        prop_assert_eq!(signature_q(&h), 0);
        prop_assert_eq!(anisotropic_part_q(&h).unwrap().rank(), 0);
        prop_assert!(witt_equivalent_q(&h, &QuadForm::zero(&FieldDesc::Q)).unwrap());
        let a = anisotropic_part_q(&q).unwrap();
        prop_assert!(witt_equivalent_q(&a, &q).unwrap());
        prop_assert_eq!(signature_q(&a), signature_q(&q));
    }

    #[test]
    fn anisotropic_parts_are_small_and_equivalent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w: Vec<Rational> = (0..r.gen_range(3..=8)).map(|_| gen::nonzero_rational(&mut r, 30)).collect();
        let q = QuadForm::from_rationals(&w).unwrap();
        let a = anisotropic_part_q(&q).unwrap();
        prop_assert!(witt_equivalent_q(&a, &q).unwrap());
        prop_assert_eq!((q.rank() - a.rank()) % 2, 0);
        let e = a.rationals().unwrap();
        let definite = e.iter().all(|x| x > &int(0)) || e.iter().all(|x| x < &int(0));
        prop_assert!(a.rank() <= 4 || definite);
        prop_assert!(!real_gersten::witt::is_isotropic_q(&a).unwrap());
    }

    /// `delta_2(<u> q) = <u bar> delta_2(q)` for a unit `u`.
    #[test]
    fn second_residue_is_unit_covariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let base = if r.gen_bool(0.5) { Base::Q } else { Base::RealClosure };
        let field = FieldDesc::FunctionField(base);
        let place = gen::place(&mut r, base, true);
        let n = r.gen_range(1..=3);
        let q = QuadForm::new(field.clone(), (0..n).map(|_| FieldElem::Function(gen::rational_function(&mut r, base, 3))).collect()).unwrap();
        let u = gen::unit_at(&mut r, base, &place);
        let pi = place.uniformizer();
        let lhs = second_residue(&q.scale(&FieldElem::Function(u.clone())).unwrap(), &place, &pi).unwrap();
        let ubar = unit_part_residue(&u, &place, &pi, base).unwrap();
        let rhs = second_residue(&q, &place, &pi).unwrap().scale(&ubar).unwrap();
        prop_assert_eq!(lhs, rhs);
        // and it vanishes on forms with even orders
        let sq = QuadForm::new(field, q.entries.iter().map(|e| q.field.mul(e, e).unwrap()).collect()).unwrap();
        prop_assert_eq!(second_residue(&sq, &place, &pi).unwrap().rank(), 0);
    }

    #[test]
    fn transfer_multiplies_rank_by_degree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let field = number_field(&mut r);
        let n = r.gen_range(1..=3);
        let q = QuadForm::new(field.clone(), (0..n).map(|_| nf_element(&mut r, &field)).collect()).unwrap();
        let token = BasisToken::trace(&field, &FieldDesc::Q);
        let t = scharlau_transfer(&TwistedForm::new(q.clone(), token.clone())).unwrap();
        prop_assert_eq!(t.form.rank(), n * field.degree().unwrap());
        prop_assert!(t.basis.is_unit());
        let Body::Sign(s) = q.signature().unwrap() else { unreachable!() };
        let Body::Sign(ts) = t.form.signature().unwrap() else { unreachable!() };
        prop_assert_eq!(transfer_real(&s).unwrap(), ts);
    }

    #[test]
    fn pfister_signatures_are_divisible(seed in any::<u64>()) {
        let mut r = rng(seed);
        let field = if r.gen_bool(0.3) { FieldDesc::Q } else { number_field(&mut r) };
        let j = r.gen_range(0..=3);
        let elem = |r: &mut Rng8| match &field {
            FieldDesc::Q => FieldElem::Rational(gen::nonzero_rational(r, 9)),
            f => nf_element(r, f),
        };
        let terms = (0..r.gen_range(1..=3)).map(|_| (elem(&mut r), (0..j).map(|_| elem(&mut r)).collect())).collect();
        let e = PfisterElement::new(field.clone(), j, terms).unwrap();
        let sig = pfister_signature(&e).unwrap();
        let from_form = total_signature(&TwistedForm::untwisted(e.to_form().unwrap())).unwrap();
        prop_assert!(sig.same_class(&from_form).unwrap());
        let Body::Sign(v) = sig.body else { unreachable!() };
        for x in v.entries {
            prop_assert_eq!(x % (1 << j), 0);
        }
    }
}

#[test]
fn residue_at_infinity_uses_inverse_t() {
    let field = FieldDesc::FunctionField(Base::Q);
    let q = QuadForm::parse(&field, &["t^3 + 1"]).unwrap();
    let pi = Place::Infinity.uniformizer();
    let r = second_residue(&q, &Place::Infinity, &pi).unwrap();
    assert_eq!(r, QuadForm::from_rationals(&[int(1)]).unwrap());
}
