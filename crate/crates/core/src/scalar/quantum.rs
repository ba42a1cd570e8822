use super::{rat, LaurentPoly, RationalFunction};
use crate::error::{Error, Result};

/// `[m] = (v^m - v^-m)/(v - v^-1)`, with `[-m] = -[m]`.
pub fn quantum_integer(m: i64) -> LaurentPoly {
    let n = m.abs();
    let sign = m.signum();
    LaurentPoly::from_terms((0..n).map(|j| (n - 1 - 2 * j, rat(sign))))
}

/// `[r]! = [1][2]...[r]`
pub fn quantum_factorial(r: u32) -> LaurentPoly {
    (1..=r as i64).fold(LaurentPoly::one(), |acc, i| &acc * &quantum_integer(i))
}

/// `[n]!! = [2][4]...[n]` for even `n`.
pub fn quantum_double_factorial(n: u32) -> Result<LaurentPoly> {
    if n % 2 == 1 {
        return Err(Error::Domain(format!(
            "double factorial takes an even argument, got {n}"
        )));
    }
    Ok((1..=(n / 2) as i64).fold(LaurentPoly::one(), |acc, i| &acc * &quantum_integer(2 * i)))
}

/// `[m][m-1]...[m-r+1] / [r]!`; the division is exact.
pub fn gauss_binomial(m: i64, r: u32) -> LaurentPoly {
    let falling = (0..r as i64).fold(LaurentPoly::one(), |acc, i| &acc * &quantum_integer(m - i));
    falling
        .div_exact(&quantum_factorial(r))
        .expect("[r]! divides the falling product")
}

/// `(a; x)_n = (1 - a)(1 - a x) ... (1 - a x^{n-1})`
pub fn pochhammer(a: &RationalFunction, x: &RationalFunction, n: u32) -> RationalFunction {
    let one = RationalFunction::one();
    let mut acc = RationalFunction::one();
    let mut ax = a.clone();
    for _ in 0..n {
        acc = &acc * &(&one - &ax);
        ax = &ax * x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms)
    }

    #[test]
    fn quantum_integers() {
        assert!(quantum_integer(0).is_zero());
        assert!(quantum_integer(1).is_one());
        // (v^3 - v^-3) / (v - v^-1)
        let expected = lp(&[(3, 1), (-3, -1)])
            .div_exact(&lp(&[(1, 1), (-1, -1)]))
            .unwrap();
        assert_eq!(quantum_integer(3), expected);
        assert_eq!(quantum_integer(-3), -expected);
    }

    #[test]
    fn factorials() {
        assert!(quantum_factorial(0).is_one());
        assert!(quantum_double_factorial(0).unwrap().is_one());
        assert_eq!(quantum_double_factorial(2).unwrap(), lp(&[(1, 1), (-1, 1)]));
        let four = &lp(&[(1, 1), (-1, 1)]) * &lp(&[(3, 1), (1, 1), (-1, 1), (-3, 1)]);
        assert_eq!(quantum_double_factorial(4).unwrap(), four);
        assert!(quantum_double_factorial(3).is_err());
    }

    #[test]
    fn binomials() {
        assert!(gauss_binomial(7, 0).is_one());
        assert!(gauss_binomial(-2, 0).is_one());
        assert_eq!(gauss_binomial(2, 1), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(
            gauss_binomial(4, 2),
            lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)])
        );
        assert!(gauss_binomial(2, 3).is_zero());
    }

    /// `binom(m, r) = v^r binom(m-1, r) + v^{r-m} binom(m-1, r-1)`,
    /// computed independently of the division-based routine.
    fn pascal(m: i64, r: i64) -> LaurentPoly {
        if r == 0 {
            return LaurentPoly::one();
        }
        if m == 0 || r > m {
            return LaurentPoly::zero();
        }
        &pascal(m - 1, r).shift(r) + &pascal(m - 1, r - 1).shift(r - m)
    }

    #[test]
    fn pascal_recursion_agrees() {
        for m in 0..=12 {
            for r in 0..=m {
                assert_eq!(gauss_binomial(m, r as u32), pascal(m, r), "m={m} r={r}");
            }
        }
    }

    #[test]
    fn binomials_are_bar_invariant() {
        for m in -4..=12 {
            for r in 0..=8 {
                let b = gauss_binomial(m, r);
                assert_eq!(b.bar(), b, "m={m} r={r}");
            }
        }
    }

    #[test]
    fn quantum_integer_at_one() {
        for m in 1..=12 {
            assert_eq!(quantum_integer(m).eval_at_one(), rat(m));
        }
    }

    #[test]
    fn pochhammer_examples() {
        let vm2 = RationalFunction::from(LaurentPoly::v_pow(-2));
        let v2 = RationalFunction::from(LaurentPoly::v_pow(2));
        assert!(pochhammer(&vm2, &vm2, 0).is_one());
        // a single factor (1 - a)
        assert_eq!(
            pochhammer(&vm2, &vm2, 1),
            RationalFunction::from(lp(&[(0, 1), (-2, -1)]))
        );
        let expected = &lp(&[(0, 1), (2, -1)]) * &lp(&[(0, 1), (4, -1)]);
        assert_eq!(pochhammer(&v2, &v2, 2), RationalFunction::from(expected));
    }

    #[test]
    fn sqrt_q_examples() {
        use super::super::{rat_frac, QuadExt};
        let two = quantum_integer(2).eval_sqrt_q(2).unwrap();
        assert_eq!(two, QuadExt::new(2, rat(0), rat_frac(3, 2)).unwrap());
        assert!(LaurentPoly::one().eval_sqrt_q(5).unwrap().is_one());
    }

    proptest! {
        #[test]
        fn sqrt_q_evaluation_matches_floats(
            terms in proptest::collection::vec((-6i64..=6, -20i64..=20), 0..6),
            qi in 0usize..3,
        ) {
            let q = [2u64, 3, 5][qi];
            let p = LaurentPoly::from_int_terms(&terms);
            let exact = p.eval_sqrt_q(q).unwrap().to_f64();
            let float = p.eval_f64((q as f64).sqrt());
            prop_assert!((exact - float).abs() <= 1e-9 * (1.0 + float.abs()));
        }

        #[test]
        fn laurent_ring_laws(
            a in proptest::collection::vec((-5i64..=5, -9i64..=9), 0..5),
            b in proptest::collection::vec((-5i64..=5, -9i64..=9), 0..5),
            c in proptest::collection::vec((-5i64..=5, -9i64..=9), 0..5),
        ) {
            let (a, b, c) = (lp(&a), lp(&b), lp(&c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn render_parse_round_trip(
            terms in proptest::collection::vec((-8i64..=8, -30i64..=30), 0..6),
        ) {
            let p = lp(&terms);
            let back: LaurentPoly = p.to_string().parse().unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
