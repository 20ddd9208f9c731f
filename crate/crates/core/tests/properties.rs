//! Property tests: ring axioms for the coefficient arithmetic, homomorphism
//! laws for specialization, canonical-form uniqueness, and the randomized
//! invariants of the rewriting engine and the Bruhat decomposition.

use std::sync::Arc;

use num::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qmat_core::dieudonne::{
    bruhat_decompose, random_invertible_matrix, random_unitriangular, EliminationOrder,
    RatFuncField,
};
use qmat_core::laurent::{LaurentPoly, ParamSpace, Rational};
use qmat_core::multiparam::{twist_product, Cocycle, MpContext};
use qmat_core::ncalg::NcPoly;
use qmat_core::qmatrix::QContext;
use qmat_core::text::parse_ncpoly;

type TermSpec = Vec<([i32; 2], i64)>;

fn space2() -> Arc<ParamSpace> {
    ParamSpace::new(vec!["q", "t"])
}

fn build(space: &Arc<ParamSpace>, terms: &TermSpec) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(space);
    for (exps, c) in terms {
        let m = LaurentPoly::monomial(space, Rational::from(BigInt::from(*c)), exps);
        acc = acc.checked_add(&m).unwrap();
    }
    acc
}

fn arb_terms() -> impl Strategy<Value = TermSpec> {
    proptest::collection::vec(
        (
            prop_oneof![-3i32..=3]
                .prop_flat_map(|a| (Just(a), -3i32..=3).prop_map(|(a, b)| [a, b])),
            -5i64..=5,
        ),
        0..6,
    )
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in arb_terms(), b in arb_terms(), c in arb_terms()) {
        let s = space2();
        let (a, b, c) = (build(&s, &a), build(&s, &b), build(&s, &c));
        // Associativity and commutativity of both operations, distributivity.
        prop_assert_eq!(
            a.checked_add(&b).unwrap().checked_add(&c).unwrap(),
            a.checked_add(&b.checked_add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b).unwrap().checked_mul(&c).unwrap(),
            a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.checked_add(&b).unwrap(), b.checked_add(&a).unwrap());
        prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
        prop_assert_eq!(
            a.checked_mul(&b.checked_add(&c).unwrap()).unwrap(),
            a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn specialization_is_a_ring_homomorphism(a in arb_terms(), b in arb_terms()) {
        let s = space2();
        let target = ParamSpace::q();
        let (a, b) = (build(&s, &a), build(&s, &b));
        // q -> q^2, t -> 3 (an invertible monomial and a constant).
        let bindings = vec![
            LaurentPoly::param_pow(&target, "q", 2),
            LaurentPoly::from_int(&target, 3),
        ];
        // A constant is an invertible monomial, so all bindings are legal.
        let f = |p: &LaurentPoly| p.specialize(&bindings, &target).unwrap();
        prop_assert_eq!(f(&a.checked_add(&b).unwrap()), f(&a).checked_add(&f(&b)).unwrap());
        prop_assert_eq!(f(&a.checked_mul(&b).unwrap()), f(&a).checked_mul(&f(&b)).unwrap());
    }

    #[test]
    fn canonical_form_is_construction_order_independent(terms in arb_terms(), seed in 0u64..1000) {
        let s = space2();
        let direct = build(&s, &terms);
        let mut shuffled = terms.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..shuffled.len()).rev() {
            let j = rng.gen_range(0..=i);
            shuffled.swap(i, j);
        }
        let rebuilt = build(&s, &shuffled);
        prop_assert_eq!(&direct, &rebuilt);
        // Displayed form parses back to the same value.
        let round = qmat_core::text::parse_laurent(&direct.to_string(), &s).unwrap();
        prop_assert_eq!(round, direct);
    }
}

/// Random element of the localized 2x2 quantum matrix context.
fn random_nc(ctx: &QContext, rng: &mut ChaCha8Rng, max_terms: usize, max_len: usize) -> NcPoly {
    let gens = ctx.context().gen_count() as u16;
    let mut acc = NcPoly::zero(ctx.context());
    for _ in 0..rng.gen_range(0..=max_terms) {
        let len = rng.gen_range(0..=max_len);
        let codes: Vec<u16> = (0..len).map(|_| rng.gen_range(0..gens)).collect();
        let coef = rng.gen_range(-3i64..=3);
        if coef != 0 {
            acc = acc
                .checked_add(&NcPoly::word(
                    ctx.context(),
                    &codes,
                    LaurentPoly::from_int(ctx.params(), coef),
                ))
                .unwrap();
        }
    }
    acc
}

#[test]
fn normal_form_is_a_ring_map_on_the_quotient() {
    let ctx = QContext::new(2, true).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..200 {
        let a = random_nc(&ctx, &mut rng, 3, 4);
        let b = random_nc(&ctx, &mut rng, 3, 4);
        let direct = a.checked_mul(&b).unwrap().nf().unwrap();
        let via_nf = a
            .nf()
            .unwrap()
            .checked_mul(&b.nf().unwrap())
            .unwrap()
            .nf()
            .unwrap();
        assert_eq!(direct, via_nf);
    }
}

#[test]
fn normal_form_is_idempotent_on_random_elements() {
    let ctx = QContext::new(3, true).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..100 {
        let p = random_nc(&ctx, &mut rng, 4, 6);
        let once = p.nf().unwrap();
        assert_eq!(once.nf().unwrap(), once);
    }
}

#[test]
fn ncpoly_rendering_round_trips() {
    let ctx = QContext::new(2, true).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..200 {
        let p = random_nc(&ctx, &mut rng, 4, 4);
        let rendered = p.nf().unwrap();
        let parsed = parse_ncpoly(&rendered.to_string(), ctx.context()).unwrap();
        assert_eq!(parsed.nf().unwrap(), rendered);
    }
}

#[test]
fn multiparameter_reductions_are_strategy_independent() {
    let mp = MpContext::new(2, true).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let gens = mp.context().gen_count() as u16;
    for seed in 0..200u64 {
        let len = rng.gen_range(1..=7);
        let codes: Vec<u16> = (0..len).map(|_| rng.gen_range(0..gens)).collect();
        let word = qmat_core::ncalg::Word::from_codes(&codes);
        assert!(
            mp.context().confluence_probe(&word, seed).unwrap(),
            "{codes:?}"
        );
    }
}

#[test]
fn bidegree_is_preserved_by_normal_form() {
    let mp = MpContext::new(3, true).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let gens = mp.context().gen_count() as u16;
    for _ in 0..150 {
        let len = rng.gen_range(1..=6);
        let codes: Vec<u16> = (0..len).map(|_| rng.gen_range(0..gens)).collect();
        let word = NcPoly::word(mp.context(), &codes, LaurentPoly::one(mp.params()));
        let before = mp.grading_degree(&word).unwrap();
        let after = word.nf().unwrap();
        if after.is_zero() {
            continue;
        }
        let after_deg = mp
            .grading_degree(&after)
            .expect("normal forms of monomials stay bihomogeneous");
        assert_eq!(before, after_deg);
    }
}

#[test]
fn twist_product_is_associative_on_bihomogeneous_elements() {
    let mp = MpContext::new(2, false).unwrap();
    let cocycle = Cocycle::standard(mp.params(), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let gens = mp.context().gen_count() as u16;
    for _ in 0..100 {
        let mono = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(1..=3);
            let codes: Vec<u16> = (0..len).map(|_| rng.gen_range(0..gens)).collect();
            NcPoly::word(mp.context(), &codes, LaurentPoly::one(mp.params()))
                .nf()
                .unwrap()
        };
        let (a, b, c) = (mono(&mut rng), mono(&mut rng), mono(&mut rng));
        if a.is_zero() || b.is_zero() || c.is_zero() {
            continue;
        }
        let left = twist_product(
            &mp,
            &twist_product(&mp, &a, &b, &cocycle).unwrap(),
            &c,
            &cocycle,
        )
        .unwrap();
        let right = twist_product(
            &mp,
            &a,
            &twist_product(&mp, &b, &c, &cocycle).unwrap(),
            &cocycle,
        )
        .unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn identity_morphism_computes_normal_forms() {
    let ctx = QContext::new(2, true).unwrap();
    let mut ident = qmat_core::ncalg::Morphism::new(ctx.context(), ctx.context());
    for code in 0..ctx.context().gen_count() as u16 {
        ident = ident.map_gen(code, NcPoly::gen(ctx.context(), code));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(49);
    for _ in 0..50 {
        let p = random_nc(&ctx, &mut rng, 3, 4);
        assert_eq!(ident.apply(&p).unwrap(), p.nf().unwrap());
    }
    // Scalars pass through untouched.
    let c = NcPoly::scalar(ctx.context(), LaurentPoly::param_pow(ctx.params(), "q", -2));
    assert_eq!(ident.apply(&c).unwrap(), c);
}

#[test]
fn cocycle_is_bimultiplicative_on_random_degree_vectors() {
    let space = ParamSpace::multiparam(3);
    let c = Cocycle::standard(&space, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(48);
    for _ in 0..100 {
        let vec3 =
            |rng: &mut ChaCha8Rng| -> Vec<i32> { (0..3).map(|_| rng.gen_range(-3..=3)).collect() };
        let (g, g2, h) = (vec3(&mut rng), vec3(&mut rng), vec3(&mut rng));
        let gg2: Vec<i32> = g.iter().zip(&g2).map(|(a, b)| a + b).collect();
        assert_eq!(
            c.eval(&gg2, &h),
            c.eval(&g, &h).checked_mul(&c.eval(&g2, &h)).unwrap()
        );
        let hg2: Vec<i32> = h.iter().zip(&g2).map(|(a, b)| a + b).collect();
        assert_eq!(
            c.eval(&g, &hg2),
            c.eval(&g, &h).checked_mul(&c.eval(&g, &g2)).unwrap()
        );
    }
}

#[test]
fn bruhat_invariants_survive_unitriangular_sandwiches() {
    // T0 * A * V0 with unitriangular factors is another valid decomposition
    // source, so its (U, sigma) must match A's.
    let field = RatFuncField::new(&ParamSpace::q());
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for n in 2..=4 {
        for _ in 0..10 {
            let a = random_invertible_matrix(&field, n, &mut rng);
            let t0 = random_unitriangular(&field, n, true, &mut rng);
            let v0 = random_unitriangular(&field, n, false, &mut rng);
            let sandwiched = t0.matmul(&field, &a).matmul(&field, &v0);
            let da = bruhat_decompose(&field, &a, EliminationOrder::UpThenLeft).unwrap();
            let ds = bruhat_decompose(&field, &sandwiched, EliminationOrder::UpThenLeft).unwrap();
            assert_eq!(da.sigma, ds.sigma, "n={n}");
            assert_eq!(da.diag, ds.diag, "n={n}");
        }
    }
}

#[test]
fn contexts_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>(_: &T) {}
    let ctx = QContext::new(2, true).unwrap();
    assert_send_sync(ctx.context());
    let det = ctx.generic_matrix().qdet().unwrap();
    assert_send_sync(&det);
    // Reductions from multiple threads against one shared context.
    let shared = ctx.context().clone();
    let handles: Vec<_> = (0..4)
        .map(|k| {
            let ctx = shared.clone();
            std::thread::spawn(move || {
                let mut rng = ChaCha8Rng::seed_from_u64(k);
                let gens = ctx.gen_count() as u16;
                for _ in 0..50 {
                    let len = rng.gen_range(0..=5);
                    let codes: Vec<u16> = (0..len).map(|_| rng.gen_range(0..gens)).collect();
                    let w = NcPoly::word(&ctx, &codes, LaurentPoly::one(ctx.params()));
                    let once = ctx.normal_form(&w).unwrap();
                    assert_eq!(ctx.normal_form(&once).unwrap(), once);
                }
            })
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
}
