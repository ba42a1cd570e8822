//! Exponent bookkeeping and the q-binomial sums behind the rank-two ıSerre
//! relation, evaluated symbolically in `v`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{
    choose2, gauss_binomial, quantum_double_factorial, quantum_factorial, LaurentPoly,
    RationalFunction,
};

/// Parameters `(a, b, d, u, w)` of one coefficient of the rank-two
/// alternating sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SerreParams {
    pub a: i64,
    pub b: i64,
    pub d: i64,
    pub u: i64,
    pub w: i64,
}

impl SerreParams {
    pub fn new(a: i64, b: i64, d: i64, u: i64, w: i64) -> Self {
        Self { a, b, d, u, w }
    }

    /// `0 <= d <= (a+b+1)/2`, `0 <= w <= b`, `b+1-2d <= u <= 1+a+b-2d`,
    /// and `u`, `d` not both zero.
    pub fn satisfies_constraints(&self) -> bool {
        let Self { a, b, d, u, w } = *self;
        a >= 0
            && b >= 0
            && u >= 0
            && d >= 0
            && 2 * d <= a + b + 1
            && (0..=b).contains(&w)
            && b + 1 - 2 * d <= u
            && u <= 1 + a + b - 2 * d
            && (u, d) != (0, 0)
    }

    /// Every constrained tuple with the given `(a, b)`, sorted.
    pub fn constrained(a: i64, b: i64) -> Vec<SerreParams> {
        let mut out = Vec::new();
        for d in 0..=(a + b + 1) / 2 {
            for w in 0..=b {
                for u in (b + 1 - 2 * d).max(0)..=(1 + a + b - 2 * d) {
                    let p = SerreParams::new(a, b, d, u, w);
                    if p.satisfies_constraints() {
                        out.push(p);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// The exponent `p~` attached to `[M]*[E]^r` in the closed triple product.
pub fn p_tilde(a: i64, b: i64, r: i64, s: i64, t: i64, u: i64, w: i64) -> i64 {
    2 * (s - r) * (t - r - a) - s * (t - a) + 2 * b * r - 2 * r * (t - r) - r * r
        + r * s
        + t * t
        + choose2(t)
        + (s - r) * (s - r)
        + choose2(s - r)
        + (u - (t - r)) * ((t - r) - w)
        + 1
}

/// The exponent `z~` of one `(n, k, m, r)` term of the alternating sum.
#[allow(clippy::too_many_arguments)]
pub fn z_tilde(a: i64, b: i64, k: i64, m: i64, n: i64, r: i64, u: i64, w: i64) -> i64 {
    let right = 1 + a + b - n - 2 * m;
    k * (k - 1) + m * (m + 1) - choose2(n - 2 * k) - choose2(right)
        + p_tilde(a, b, r, n - 2 * k, right, u, w)
}

/// The `(k, m, r)`-independent part of `z_bar`.
pub fn l_tilde(a: i64, b: i64, d: i64, theta: i64, u: i64, w: i64) -> i64 {
    d * (d - 1) - a * theta + (u + w + theta - b) * (1 + a + b - 2 * d - theta) - u * w
        + theta * theta
        + 1
}

/// `z_bar = C(r+1, 2) - 2(k-1)m + L~`, the exponent after trading `n` for
/// `theta = n + m - k - d`.
#[allow(clippy::too_many_arguments)]
pub fn z_bar(
    a: i64,
    b: i64,
    d: i64,
    theta: i64,
    u: i64,
    w: i64,
    k: i64,
    m: i64,
    r: i64,
) -> Result<i64> {
    if k + m + r != d || k < 0 || m < 0 || r < 0 {
        return Err(Error::Precondition(format!(
            "need k + m + r = d with k, m, r >= 0, got k={k} m={m} r={r} d={d}"
        )));
    }
    if theta < 0 {
        return Err(Error::Precondition(format!("theta = {theta} is negative")));
    }
    Ok(choose2(r + 1) - 2 * (k - 1) * m + l_tilde(a, b, d, theta, u, w))
}

/// Triples `(k, m, r)` of nonnegative integers with `k + m + r = d`.
pub fn compositions3(d: i64) -> impl Iterator<Item = (i64, i64, i64)> {
    (0..=d.max(-1)).flat_map(move |k| (0..=d - k).map(move |m| (k, m, d - k - m)))
}

/// Shared denominator for sums whose terms carry `1/([r]! [2k]!! [2m]!!)`
/// with `k, m, r <= d`.
struct FactorialDenominators {
    common: LaurentPoly,
    fact: Vec<LaurentPoly>,
    dfact: Vec<LaurentPoly>,
}

impl FactorialDenominators {
    fn new(d: i64) -> Self {
        let d = d.max(0) as u32;
        let fact: Vec<_> = (0..=d).map(quantum_factorial).collect();
        let dfact: Vec<_> = (0..=d)
            .map(|k| quantum_double_factorial(2 * k).expect("even"))
            .collect();
        let top = d as usize;
        let common = &(&fact[top] * &dfact[top]) * &dfact[top];
        Self {
            common,
            fact,
            dfact,
        }
    }

    /// `common / ([r]! [2k]!! [2m]!!)` as a Laurent polynomial.
    fn cofactor(&self, k: i64, m: i64, r: i64) -> LaurentPoly {
        let den = &(&self.fact[r as usize] * &self.dfact[k as usize]) * &self.dfact[m as usize];
        self.common
            .div_exact(&den)
            .expect("factorials divide the common denominator")
    }

    fn finish(self, numerator: LaurentPoly) -> RationalFunction {
        RationalFunction::new(numerator, self.common).expect("nonzero denominator")
    }
}

/// `sum_{k+m+r=d} (-1)^r v^{C(r+1,2) - 2(k-1)m} / ([r]! [2k]!! [2m]!!)`
pub fn lemma_sum(d: i64) -> RationalFunction {
    if d < 0 {
        return RationalFunction::zero();
    }
    let dens = FactorialDenominators::new(d);
    let mut num = LaurentPoly::zero();
    for (k, m, r) in compositions3(d) {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let term = dens
            .cofactor(k, m, r)
            .shift(choose2(r + 1) - 2 * (k - 1) * m);
        num += &if sign > 0 { term } else { -term };
    }
    dens.finish(num)
}

/// Which of the two alternating sums to evaluate: parity `0` is the printed
/// form; parity `1` swaps the `v`-exponents of the even-`n` and odd-`n`
/// halves.
fn t_tilde_with_parity(p: SerreParams, parity: u8) -> RationalFunction {
    let SerreParams { a, b, d, u, w } = p;
    if d < 0 {
        return RationalFunction::zero();
    }
    let dens = FactorialDenominators::new(d);
    let mut num = LaurentPoly::zero();
    let top = a + b + 1;
    for n in 0..=top {
        let odd_n = n % 2 == 1;
        for k in 0..=n / 2 {
            for m in 0..=(top - n) / 2 {
                let r = d - k - m;
                if r < 0 || r > n - 2 * k {
                    continue;
                }
                let lower = top - n - 2 * m - r - w;
                if lower < 0 {
                    continue;
                }
                let binom = gauss_binomial(u - w, lower as u32);
                if binom.is_zero() {
                    continue;
                }
                let base = -(top - n - 2 * m) * b + z_tilde(a, b, k, m, n, r, u, w);
                let shifted = odd_n != (parity == 1);
                let e = if shifted { base + 2 * k - 2 * m } else { base };
                let term = (&dens.cofactor(k, m, r) * &binom).shift(e);
                num += &if odd_n { -term } else { term };
            }
        }
    }
    dens.finish(num)
}

/// The coefficient sum `T~(a, b, d, u, w)` exactly as laid out with separate
/// even-`n` and odd-`n` double sums and `r := d - k - m`.
pub fn t_tilde(a: i64, b: i64, d: i64, u: i64, w: i64) -> RationalFunction {
    t_tilde_with_parity(SerreParams::new(a, b, d, u, w), 0)
}

/// The companion sum for the other parity of ıdivided powers.
pub fn t_tilde_odd(a: i64, b: i64, d: i64, u: i64, w: i64) -> RationalFunction {
    t_tilde_with_parity(SerreParams::new(a, b, d, u, w), 1)
}

/// `T~` rewritten over `theta = n + m - k - d >= 0`, with sign
/// `(-1)^{theta + r}` and exponent `z_bar` (plus `2k - 2m` when `theta + r`
/// is odd).
pub fn t_tilde_theta(a: i64, b: i64, d: i64, u: i64, w: i64) -> RationalFunction {
    if d < 0 {
        return RationalFunction::zero();
    }
    let dens = FactorialDenominators::new(d);
    let mut num = LaurentPoly::zero();
    let top = 1 + a + b - 2 * d - w;
    for theta in 0..=top.max(-1) {
        let binom = gauss_binomial(u - w, (top - theta) as u32);
        if binom.is_zero() {
            continue;
        }
        for (k, m, r) in compositions3(d) {
            let odd = (theta + r) % 2 == 1;
            let mut e = z_bar(a, b, d, theta, u, w, k, m, r).expect("valid composition");
            if odd {
                e += 2 * k - 2 * m;
            }
            let term = (&dens.cofactor(k, m, r) * &binom).shift(e);
            num += &if odd { -term } else { term };
        }
    }
    dens.finish(num)
}

/// `sum_{x=0}^{n} (-1)^x v^{cx} binom(n, x)`
pub fn alt_binom_sum(n: i64, c: i64) -> RationalFunction {
    let mut acc = LaurentPoly::zero();
    for x in 0..=n {
        let term = gauss_binomial(n, x as u32).shift(c * x);
        acc += &if x % 2 == 0 { term } else { -term };
    }
    RationalFunction::from(acc)
}

/// The vanishing condition adopted for [`alt_binom_sum`]: `c = n-1-2j` for
/// some `0 <= j < n`.
pub fn alt_binom_vanishes(n: i64, c: i64) -> bool {
    n >= 1 && c.abs() <= n - 1 && (c - (n - 1)).rem_euclid(2) == 0
}

/// One line of an identity sweep report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub a: i64,
    pub b: i64,
    pub d: i64,
    pub u: i64,
    pub w: i64,
    pub result_is_zero: bool,
}

/// Evaluate `T~` on every constrained tuple with `a <= max_a`, `b <= max_b`,
/// `a + b <= max_sum`, in sorted parameter order.
pub fn t_tilde_sweep(max_a: i64, max_b: i64, max_sum: i64) -> Vec<(SweepRecord, RationalFunction)> {
    let mut out = Vec::new();
    for a in 0..=max_a {
        for b in 0..=max_b {
            if a + b > max_sum {
                continue;
            }
            for p in SerreParams::constrained(a, b) {
                let value = t_tilde(p.a, p.b, p.d, p.u, p.w);
                let rec = SweepRecord {
                    a: p.a,
                    b: p.b,
                    d: p.d,
                    u: p.u,
                    w: p.w,
                    result_is_zero: value.is_zero(),
                };
                out.push((rec, value));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_tilde_examples() {
        assert_eq!(p_tilde(0, 0, 0, 0, 0, 0, 0), 1);
        // 2(1)(0) - 1(0) + 0 - 0 - 0 + 0 + 1 + 0 + 1 + 0 + (1)(1) + 1
        assert_eq!(p_tilde(1, 1, 0, 1, 1, 1, 0), 3);
        // a=b=0, r=s=t=1, u=w=0: 0 - 1 + 0 - 0 - 1 + 1 + 1 + 0 + 0 + 0 + 0 + 1
        assert_eq!(p_tilde(0, 0, 1, 1, 1, 0, 0), 1);
    }

    #[test]
    fn z_tilde_examples() {
        // n = 0: 0 + 0 - 0 - C(1,2) + p~(0,0,0,0,1,1,0) = 0 + (0 + 0 + ... + 1 + 0 + (0)(1) + 1)
        // p~(0,0,0,0,1,1,0) = 0 - 0 + 0 - 0 - 0 + 0 + 1 + 0 + 0 + 0 + 0*1 + 1 = 2
        assert_eq!(z_tilde(0, 0, 0, 0, 0, 0, 1, 0), 2);
        // k=1, n=2, a=b=0: 0 + 0 - C(0,2) - C(-1,2) + p~(0,0,0,0,-1,0,0)
        // C(-1,2) = 1; p~ = 0 - 0 + 0 - 0 - 0 + 0 + 1 + 1 + 0 + 0 + (1)(-1) + 1 = 2
        assert_eq!(z_tilde(0, 0, 1, 0, 2, 0, 0, 0), 1);
        // m=1, a=1, b=0, n=0: 0 + 2 - 0 - C(0,2) + p~(1,0,0,0,0,0,0) = 2 + 1
        assert_eq!(z_tilde(1, 0, 0, 1, 0, 0, 0, 0), 3);
    }

    #[test]
    fn z_bar_at_d_zero_matches_simplified_form() {
        for a in 0..=3 {
            for b in 0..=3 {
                for u in 0..=5 {
                    for w in 0..=3 {
                        for theta in 0..=5 {
                            let expect =
                                (u + w - b) * (1 + a + b) - u * w + 1 + (1 + 2 * b - u - w) * theta;
                            assert_eq!(z_bar(a, b, 0, theta, u, w, 0, 0, 0).unwrap(), expect);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn z_bar_direct_instance() {
        // k=1, m=r=0, d=1, theta=0, a=b=u=w=0:
        // C(1,2) - 0 + [0 - 0 + (0)(1 + 0 - 2 - 0) - 0 + 0 + 1] = 1
        assert_eq!(z_bar(0, 0, 1, 0, 0, 0, 1, 0, 0).unwrap(), 1);
        assert!(z_bar(0, 0, 2, 0, 0, 0, 1, 0, 0).is_err());
        assert!(z_bar(0, 0, 1, -1, 0, 0, 1, 0, 0).is_err());
    }

    #[test]
    fn z_bar_matches_z_tilde_after_substitution() {
        for a in 0..=3i64 {
            for b in 0..=(3 - a) {
                for d in 0..=3 {
                    for u in 0..=5 {
                        for w in 0..=3 {
                            for (k, m, r) in compositions3(d) {
                                for n in 0..=(a + b + 1) {
                                    let theta = n + m - k - d;
                                    if theta < 0 {
                                        continue;
                                    }
                                    let lhs = z_bar(a, b, d, theta, u, w, k, m, r).unwrap();
                                    let rhs = -(1 + a + b - n - 2 * m) * b
                                        + z_tilde(a, b, k, m, n, r, u, w);
                                    assert_eq!(
                                        lhs, rhs,
                                        "a={a} b={b} d={d} u={u} w={w} k={k} m={m} r={r} n={n}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lemma_sum_small_cases() {
        assert!(lemma_sum(0).is_one());
        for d in 1..=5 {
            assert!(lemma_sum(d).is_zero(), "d={d}");
        }
    }

    #[test]
    fn lemma_sum_d1_by_hand() {
        // (k,m,r) = (1,0,0): v^0/[2]; (0,1,0): v^2/[2]; (0,0,1): -v^1
        // (1 + v^2)/(v + v^-1) - v = v - v = 0
        let two = crate::scalar::quantum_integer(2);
        let first = RationalFunction::new(LaurentPoly::one(), two.clone()).unwrap();
        let second = RationalFunction::new(LaurentPoly::v_pow(2), two).unwrap();
        let third = RationalFunction::from(LaurentPoly::v_pow(1));
        assert!((&(&first + &second) - &third).is_zero());
    }

    #[test]
    fn odd_r_symmetry_term_by_term() {
        // Swapping k and m maps C(r+1,2) - 2k(m-1) onto C(r+1,2) - 2(k-1)m.
        for d in 0..=6 {
            for (k, m, r) in compositions3(d) {
                if r % 2 == 1 {
                    let swapped = choose2(r + 1) - 2 * m * (k - 1);
                    let target = choose2(r + 1) - 2 * (k - 1) * m;
                    assert_eq!(swapped, target);
                    let orig = choose2(r + 1) - 2 * k * (m - 1);
                    let from_swap = choose2(r + 1) - 2 * (m - 1) * k;
                    assert_eq!(orig, from_swap);
                }
            }
        }
    }

    #[test]
    fn t_tilde_examples() {
        assert!(t_tilde(1, 1, 0, 2, 0).is_zero());
        assert!(t_tilde(1, 1, 1, 1, 1).is_zero());
        // u = 1 < b + 1 - 2d = 2 lies outside the constraints, and the sum
        // does not vanish there.
        assert!(!SerreParams::new(1, 1, 0, 1, 0).satisfies_constraints());
        assert_eq!(
            t_tilde(1, 1, 0, 1, 0),
            RationalFunction::from(LaurentPoly::from_int_terms(&[(7, -1), (5, 1)]))
        );
        // (u, d) = (0, 0) is excluded by the constraints and does not vanish.
        assert!(!SerreParams::new(0, 0, 0, 0, 0).satisfies_constraints());
        assert!(!t_tilde(0, 0, 0, 0, 0).is_zero());
    }

    #[test]
    fn theta_form_agrees_with_printed_form() {
        for a in 0..=3 {
            for b in 0..=(3 - a) {
                for d in 0..=2 {
                    for u in 0..=4 {
                        for w in 0..=b {
                            assert_eq!(
                                t_tilde(a, b, d, u, w),
                                t_tilde_theta(a, b, d, u, w),
                                "a={a} b={b} d={d} u={u} w={w}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn alt_binom_examples() {
        assert!(alt_binom_sum(1, 0).is_zero());
        assert!(alt_binom_sum(3, 2).is_zero());
        assert!(!alt_binom_sum(2, 3).is_zero());
        assert!(alt_binom_sum(0, 0).is_one());
    }

    /// `prod_{j<n} (1 - v^{c+n-1-2j})`, the q-binomial theorem form.
    fn alt_binom_product(n: i64, c: i64) -> LaurentPoly {
        (0..n).fold(LaurentPoly::one(), |acc, j| {
            let factor = &LaurentPoly::one() - &LaurentPoly::v_pow(c + n - 1 - 2 * j);
            &acc * &factor
        })
    }

    #[test]
    fn alt_binom_matches_product_form() {
        for n in 0..=10 {
            for c in -12..=12 {
                let sum = alt_binom_sum(n, c);
                assert_eq!(
                    sum,
                    RationalFunction::from(alt_binom_product(n, c)),
                    "n={n} c={c}"
                );
                assert_eq!(sum.is_zero(), alt_binom_vanishes(n, c), "n={n} c={c}");
            }
        }
    }

    #[test]
    fn constrained_tuples_are_sorted_and_valid() {
        let ps = SerreParams::constrained(1, 1);
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        assert!(ps.iter().all(|p| p.satisfies_constraints()));
        assert!(ps.contains(&SerreParams::new(1, 1, 0, 2, 0)));
        assert!(!ps.contains(&SerreParams::new(1, 1, 0, 1, 0)));
    }
}
