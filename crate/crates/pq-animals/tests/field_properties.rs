//! Property tests for the exact quadratic-field arithmetic, plus an
//! independent 200-bit interval oracle for signs and floors.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

use pq_animals::{QuadExt, TessContext};

const FIELDS: [(u32, u32); 6] = [(3, 7), (4, 5), (5, 4), (7, 3), (5, 5), (12, 12)];

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn quad(ctx: &TessContext, an: i64, ad: i64, bn: i64, bd: i64) -> QuadExt {
    QuadExt::new(ratio(an, ad), ratio(bn, bd), ctx.discriminant().unwrap().clone()).unwrap()
}

fn arb_field() -> impl Strategy<Value = TessContext> {
    (0..FIELDS.len()).prop_map(|i| TessContext::new(FIELDS[i].0, FIELDS[i].1).unwrap())
}

fn arb_parts() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-40i64..=40, 1i64..=12, -40i64..=40, 1i64..=12)
}

proptest! {
    #[test]
    fn field_axioms((ctx, x, y, z) in (arb_field(), arb_parts(), arb_parts(), arb_parts())) {
        let a = quad(&ctx, x.0, x.1, x.2, x.3);
        let b = quad(&ctx, y.0, y.1, y.2, y.3);
        let c = quad(&ctx, z.0, z.1, z.2, z.3);
        // associativity and distributivity
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        // multiplicative inverse
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, quad(&ctx, 1, 1, 0, 1));
        }
    }

    #[test]
    fn floor_brackets_value((ctx, x) in (arb_field(), arb_parts())) {
        let a = quad(&ctx, x.0, x.1, x.2, x.3);
        let f = a.floor();
        let d = ctx.discriminant().unwrap().clone();
        let f_elem = QuadExt::new(BigRational::from_integer(f.clone()), BigRational::zero(), d.clone()).unwrap();
        let f_plus = QuadExt::new(
            BigRational::from_integer(&f + BigInt::one()),
            BigRational::zero(),
            d,
        )
        .unwrap();
        // floor(x) <= x < floor(x) + 1, decided by exact signs
        prop_assert!((&a - &f_elem).sign() >= 0);
        prop_assert_eq!((&f_plus - &a).sign(), 1);
        // ceiling is consistent
        let c = a.ceil();
        prop_assert!(c == f || c == &f + BigInt::one());
    }

    #[test]
    fn conjugation_is_a_ring_homomorphism((ctx, x, y) in (arb_field(), arb_parts(), arb_parts())) {
        let a = quad(&ctx, x.0, x.1, x.2, x.3);
        let b = quad(&ctx, y.0, y.1, y.2, y.3);
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        // the norm is multiplicative
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        // and equals x * conj(x)
        let prod = &a * &a.conjugate();
        prop_assert!(prod.is_rational());
        prop_assert_eq!(prod.a(), &a.norm());
    }
}

/// Bracket sqrt(d) between rationals lo < sqrt(d) < hi with 200-bit accuracy.
fn sqrt_interval(d: &BigInt) -> (BigRational, BigRational) {
    let scale = BigInt::one() << 200u32;
    let lo = (d * &scale * &scale).sqrt();
    (
        BigRational::new(lo.clone(), scale.clone()),
        BigRational::new(lo + BigInt::one(), scale),
    )
}

/// Interval evaluation of a + b sqrt(d): returns rational (lo, hi) bounds.
fn interval(x: &QuadExt) -> (BigRational, BigRational) {
    let (slo, shi) = sqrt_interval(x.discriminant());
    let (blo, bhi) = if x.b().is_negative() {
        (x.b() * &shi, x.b() * &slo)
    } else {
        (x.b() * &slo, x.b() * &shi)
    };
    (x.a() + blo, x.a() + bhi)
}

#[test]
fn sign_and_floor_agree_with_interval_oracle() {
    // 10^4 deterministic random samples per field
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    for (p, q) in FIELDS {
        let ctx = TessContext::new(p, q).unwrap();
        let d = ctx.discriminant().unwrap().clone();
        for _ in 0..10_000 {
            let a = ratio(rng.gen_range(-10_000..=10_000), rng.gen_range(1..=100));
            let b = ratio(rng.gen_range(-10_000..=10_000), rng.gen_range(1..=100));
            let x = QuadExt::new(a, b, d.clone()).unwrap();
            let (lo, hi) = interval(&x);
            // sign: the 200-bit window is far narrower than any nonzero value here
            let sign = x.sign();
            if lo.is_positive() {
                assert_eq!(sign, 1);
            } else if hi.is_negative() {
                assert_eq!(sign, -1);
            } else {
                assert!(lo <= BigRational::zero() && BigRational::zero() <= hi);
                assert_eq!(sign, 0, "interval straddles zero only for zero: {x}");
            }
            // floor: both interval ends must land in [floor, floor+1)
            let f = x.floor();
            let f_rat = BigRational::from_integer(f.clone());
            let f1_rat = BigRational::from_integer(&f + BigInt::one());
            assert!(f_rat <= lo && hi < f1_rat, "floor bracket failed for {x}");
        }
    }
}
