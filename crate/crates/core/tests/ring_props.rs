use std::f64::consts::PI;

use frieze_core::ring::{self, chebyshev_u, sign_of, Ctx, RingContext, RingElem, Sign};
use proptest::prelude::*;

const LEVELS: [u32; 5] = [3, 4, 5, 6, 8];

fn lam(p: u32) -> f64 {
    2.0 * (PI / p as f64).cos()
}

/// A random integer combination of lambdas and one product, with its float value.
fn element(ctx: &Ctx, cs: &[i64]) -> (RingElem, f64) {
    let mut x = ring::int(ctx, cs[0]);
    let mut f = cs[0] as f64;
    for (k, &p) in LEVELS.iter().enumerate() {
        x = x + ring::lambda(ctx, p).unwrap().scale(cs[k + 1]);
        f += cs[k + 1] as f64 * lam(p);
    }
    let prod = ring::lambda(ctx, 5).unwrap() * ring::lambda(ctx, 8).unwrap();
    x = x + prod.scale(cs[6]);
    f += cs[6] as f64 * lam(5) * lam(8);
    (x, f)
}

fn ctx() -> Ctx {
    RingContext::new(&LEVELS).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in coeffs(), b in coeffs(), c in coeffs()) {
        let k = ctx();
        let (x, _) = element(&k, &a);
        let (y, _) = element(&k, &b);
        let (z, _) = element(&k, &c);
        prop_assert_eq!((&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &x * &y + &x * &z);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x - &y) + &y, x);
    }

    #[test]
    fn sign_matches_float(a in coeffs()) {
        let k = ctx();
        let (x, f) = element(&k, &a);
        let s = sign_of(&x);
        if f.abs() > 1e-9 {
            prop_assert_eq!(s, if f > 0.0 { Sign::Positive } else { Sign::Negative });
        }
        prop_assert_eq!(s == Sign::Zero, x.is_zero());
        prop_assert!((x.to_f64() - f).abs() < 1e-9 * (1.0 + f.abs()));
    }

    #[test]
    fn chebyshev_matches_sine_ratio(pi in 0usize..5, k in 0i64..30) {
        let p = LEVELS[pi];
        let u = chebyshev_u(&ring::lambda(&ctx(), p).unwrap(), k);
        let t = PI / p as f64;
        let want = ((k + 1) as f64 * t).sin() / t.sin();
        prop_assert!((u.to_f64() - want).abs() < 1e-9, "U_{}(lambda_{}) = {}", k, p, u.to_f64());
    }
}

#[test]
fn chebyshev_symmetry_and_bound() {
    let k = ctx();
    let one = ring::one(&k);
    for p in LEVELS {
        let x = ring::lambda(&k, p).unwrap();
        for j in 0..=(p as i64 - 2) {
            let u = chebyshev_u(&x, j);
            assert_eq!(u, chebyshev_u(&x, p as i64 - 2 - j));
            assert_ne!(sign_of(&(&u - &one)), Sign::Negative, "U_{}(lambda_{})", j, p);
        }
    }
}

#[test]
fn nearly_cancelling_signs() {
    // 99/70 approximates sqrt2 from above, 41/29 from below
    let k = RingContext::new(&[4]).unwrap();
    let r2 = ring::lambda(&k, 4).unwrap();
    assert_eq!(sign_of(&(r2.scale(70) - ring::int(&k, 99))), Sign::Negative);
    assert_eq!(sign_of(&(r2.scale(29) - ring::int(&k, 41))), Sign::Positive);
    let k = RingContext::new(&[5]).unwrap();
    let phi = ring::lambda(&k, 5).unwrap();
    assert_eq!(sign_of(&(&phi * &phi - &phi - ring::one(&k))), Sign::Zero);
}
