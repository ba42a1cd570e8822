use num_rational::BigRational;
use proptest::prelude::*;

use ihall_core::identities::{alt_binom_sum, alt_binom_vanishes, t_tilde, t_tilde_theta, SerreParams};
use ihall_core::scalar::{gauss_binomial, quantum_factorial, quantum_integer, LaurentPoly, QuadExt};

fn quad(q: u64, a: (i64, i64), b: (i64, i64)) -> QuadExt {
    QuadExt::new(
        q,
        BigRational::new(a.0.into(), a.1.into()),
        BigRational::new(b.0.into(), b.1.into()),
    )
    .unwrap()
}

fn frac() -> impl Strategy<Value = (i64, i64)> {
    (-30i64..=30, 1i64..=7)
}

proptest! {
    #[test]
    fn quadratic_field_inverse(a in frac(), b in frac(), qi in 0usize..3) {
        let q = [2u64, 3, 5][qi];
        let x = quad(q, a, b);
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inv().unwrap()).is_one());
        prop_assert_eq!(x.conj().conj(), x.clone());
        let n = &x * &x.conj();
        prop_assert!(n.is_rational());
    }

    #[test]
    fn sqrt_q_powers_multiply(e in -8i64..=8, f in -8i64..=8, qi in 0usize..3) {
        let q = [2u64, 3, 5][qi];
        let lhs = &QuadExt::sqrt_q_pow(q, e).unwrap() * &QuadExt::sqrt_q_pow(q, f).unwrap();
        prop_assert_eq!(lhs, QuadExt::sqrt_q_pow(q, e + f).unwrap());
    }

    #[test]
    fn gauss_binomial_pascal(m in 1i64..9, r in 1u32..8) {
        prop_assume!(r as i64 <= m);
        // [m r] = v^{-r} [m-1 r] + v^{m-r} [m-1 r-1]
        let lhs = gauss_binomial(m, r);
        let rhs = &gauss_binomial(m - 1, r).shift(-(r as i64))
            + &gauss_binomial(m - 1, r - 1).shift(m - r as i64);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomial_is_bar_invariant_and_counts_at_one(m in 0i64..9, r in 0u32..9) {
        let g = gauss_binomial(m, r);
        prop_assert_eq!(g.bar(), g.clone());
        let classical: i64 = if (r as i64) > m {
            0
        } else {
            (0..r as i64).fold(1, |acc, i| acc * (m - i) / (i + 1))
        };
        prop_assert_eq!(g.eval_at_one(), BigRational::from_integer(classical.into()));
    }

    #[test]
    fn factorial_is_product_of_integers(n in 0u32..8) {
        let mut p = LaurentPoly::one();
        for k in 1..=n {
            p = &p * &quantum_integer(k as i64);
        }
        prop_assert_eq!(quantum_factorial(n), p);
    }
}

#[test]
fn theta_form_agrees_with_printed_form() {
    for a in 0..=3 {
        for b in 0..=3 - a {
            for p in SerreParams::constrained(a, b) {
                assert_eq!(
                    t_tilde(p.a, p.b, p.d, p.u, p.w),
                    t_tilde_theta(p.a, p.b, p.d, p.u, p.w),
                    "{p:?}"
                );
            }
        }
    }
}

#[test]
fn alternating_binomial_vanishing_is_sharp() {
    // the adopted condition is exactly the zero set inside |c| <= n + 1
    for n in 1..=7 {
        for c in -(n + 1)..=(n + 1) {
            assert_eq!(alt_binom_sum(n, c).is_zero(), alt_binom_vanishes(n, c), "n={n} c={c}");
        }
    }
}
