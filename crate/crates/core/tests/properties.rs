use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use su_exponent::polysum::binom_exact;
use su_exponent::{
    carmichael_lambda, carries, e_p, ord_factorial, ord_int, poly_delta, pow_mod, trunc_val,
    EpOptions, Error, IntPolynomial, ModPE, Precision, Prime, StructuredExponent,
    TruncatedValuation, Valuation,
};

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]).prop_map(|p| Prime::new(p).unwrap())
}

proptest! {
    #[test]
    fn kummer_counts_binomial_order(p in prime(), a in 0u64..3000, b in 0u64..3000) {
        let v = ord_int(p, &binom_exact(a + b, a as i64));
        prop_assert_eq!(v, Valuation::Finite(carries(p, a, b) as u64));
    }

    #[test]
    fn legendre_is_additive_over_multiples(p in prime(), m in 0u64..100_000) {
        // m! = (m-1)!·m
        if m > 0 {
            let step = match su_exponent::ord_u64(p, m) {
                Valuation::Finite(v) => v,
                Valuation::Infinite => unreachable!(),
            };
            prop_assert_eq!(ord_factorial(p, m), ord_factorial(p, m - 1) + step);
        }
        // closed form (m - s_p(m)) / (p - 1)
        let mut digits = 0;
        let mut x = m;
        while x > 0 {
            digits += x % p.get();
            x /= p.get();
        }
        prop_assert_eq!(ord_factorial(p, m), (m - digits) / (p.get() - 1));
    }

    #[test]
    fn truncated_order_is_sound(p in prime(), x in any::<i64>(), y in any::<i64>(), e in 1u32..30) {
        let big = BigInt::from(x) * BigInt::from(y);
        let r = ModPE::new(&big, p, e).unwrap();
        match (trunc_val(&r), ord_int(p, &big)) {
            (TruncatedValuation::Exact(v), Valuation::Finite(w)) => prop_assert_eq!(v, w),
            (TruncatedValuation::AtLeast(b), w) => {
                prop_assert_eq!(b, e as u64);
                prop_assert!(w.at_least(b as i64));
            }
            (t, w) => prop_assert!(false, "{:?} vs {:?}", t, w),
        }
    }

    #[test]
    fn ring_operations_commute_with_reduction(p in prime(), x in any::<i64>(), y in any::<i64>(), e in 1u32..25) {
        let (bx, by) = (BigInt::from(x), BigInt::from(y));
        let rx = ModPE::new(&bx, p, e).unwrap();
        let ry = ModPE::new(&by, p, e).unwrap();
        prop_assert_eq!(rx.try_add(&ry).unwrap(), ModPE::new(&(&bx + &by), p, e).unwrap());
        prop_assert_eq!(rx.try_mul(&ry).unwrap(), ModPE::new(&(&bx * &by), p, e).unwrap());
        prop_assert_eq!(rx.try_sub(&ry).unwrap(), ModPE::new(&(&bx - &by), p, e).unwrap());
    }

    #[test]
    fn units_have_order_dividing_lambda(p in prime(), j in 1u64..10_000, e in 1u32..20) {
        prop_assume!(j % p.get() != 0);
        let modulus = BigUint::from(p.get()).pow(e);
        let lambda = carmichael_lambda(p, e);
        prop_assert_eq!(BigUint::from(j).modpow(&lambda, &modulus), BigUint::from(1u32) % &modulus);
    }

    #[test]
    fn tower_power_matches_plain(p in prime(), j in 0u64..500, c in 1u64..20, l in 0u64..8, d in 0u64..50, e in 1u32..16) {
        let k = StructuredExponent::tower(c, p, l, d);
        let plain = BigUint::from(c) * BigUint::from(p.get()).pow(l as u32) + d;
        let want = BigUint::from(j).modpow(&plain, &BigUint::from(p.get()).pow(e));
        let got = pow_mod(j, &k, p, e).unwrap();
        prop_assert_eq!(got.residue(), &want);
    }

    #[test]
    fn difference_operator_is_linear(
        f in prop::collection::vec(-50i64..50, 0..7),
        g in prop::collection::vec(-50i64..50, 0..7),
        a in -20i64..20,
        x in -30i64..30,
    ) {
        let (f, g) = (IntPolynomial::from_i64s(&f), IntPolynomial::from_i64s(&g));
        let a = BigInt::from(a);
        let lhs = poly_delta(&IntPolynomial::new(sum_coeffs(&f.scale(&a), &g)));
        let rhs_at = poly_delta(&f).eval_i64(x) * &a + poly_delta(&g).eval_i64(x);
        prop_assert_eq!(lhs.eval_i64(x), rhs_at);
        // Δf(x) = f(x+1) - f(x)
        prop_assert_eq!(poly_delta(&f).eval_i64(x), f.eval_i64(x + 1) - f.eval_i64(x));
    }

    #[test]
    fn binomial_symmetry(n in 0u64..300, k in -5i64..305) {
        prop_assert_eq!(binom_exact(n, k), binom_exact(n, n as i64 - k));
    }

    #[test]
    fn low_precision_never_contradicts_high(n in 2u64..12, k in 2u64..60, e in 1u32..6) {
        prop_assume!(k >= n);
        let exact = value_at(n, k, EpOptions::default()).0.exact().unwrap();
        let (low, low_e) = value_at(n, k, EpOptions { precision: Precision::Fixed(e), max_retries: 0, ..EpOptions::default() });
        match low {
            TruncatedValuation::Exact(v) => prop_assert_eq!(v, exact),
            TruncatedValuation::AtLeast(b) => prop_assert!(b <= exact),
        }
        // retries only raise precision, and never report a wrong exact value
        let (retried, retried_e) = value_at(n, k, EpOptions { precision: Precision::Fixed(e), ..EpOptions::default() });
        prop_assert!(retried_e >= low_e);
        match retried {
            TruncatedValuation::Exact(v) => prop_assert_eq!(v, exact),
            TruncatedValuation::AtLeast(b) => prop_assert!(b <= exact),
        }
    }
}

fn sum_coeffs(f: &IntPolynomial, g: &IntPolynomial) -> Vec<BigInt> {
    let len = f.coeffs().len().max(g.coeffs().len());
    (0..len)
        .map(|i| {
            f.coeffs().get(i).cloned().unwrap_or_default()
                + g.coeffs().get(i).cloned().unwrap_or_default()
        })
        .collect()
}

/// `e_3(n, k)` with its final precision; an exhausted retry budget yields the partial bound.
fn value_at(n: u64, k: u64, opts: EpOptions) -> (TruncatedValuation, u32) {
    let p = Prime::new(3).unwrap();
    match e_p(p, n, &StructuredExponent::plain(k), &opts) {
        Ok(r) => (r.value, r.precision),
        Err(Error::Undetermined {
            partial, precision, ..
        }) => (partial, precision),
        Err(other) => panic!("{other}"),
    }
}
