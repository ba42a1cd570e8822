use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{BigRational, LaurentPoly, QuadExt};
use crate::error::{Error, Result};

/// A quotient of Laurent polynomials kept in lowest terms.
///
/// Canonical form: the denominator is an ordinary polynomial with nonzero
/// constant term and leading coefficient 1, coprime to the numerator; all
/// powers of `v` live in the numerator. Equality is therefore structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self::normalize(num, den))
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from(LaurentPoly::one())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(p)` when the value is a Laurent polynomial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn bar(&self) -> Self {
        Self::normalize(self.num.bar(), self.den.bar())
    }

    pub fn eval_sqrt_q(&self, q: u64) -> Result<QuadExt> {
        let d = self.den.eval_sqrt_q(q)?;
        if d.is_zero() {
            return Err(Error::Pole { q });
        }
        self.num.eval_sqrt_q(q)?.div(&d)
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let nmin = num.min_exp().expect("nonzero");
        let dmin = den.min_exp().expect("nonzero");
        let n = num.shift(-nmin);
        let d = den.shift(-dmin);
        let g = poly_gcd(&n, &d);
        let (n, d) = if g.max_exp() == Some(0) {
            (n, d)
        } else {
            (
                n.div_exact(&g).expect("gcd divides"),
                d.div_exact(&g).expect("gcd divides"),
            )
        };
        let lead = d.leading_coeff().expect("nonzero").clone();
        let inv = BigRational::one() / lead;
        Self {
            num: n.scale(&inv).shift(nmin - dmin),
            den: d.scale(&inv),
        }
    }
}

/// Remainder of ordinary polynomials (both with nonnegative exponents).
fn poly_rem(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let db = b.max_exp().expect("nonzero divisor");
    let lead = b.leading_coeff().expect("nonzero").clone();
    let mut r = a.clone();
    while let Some(dr) = r.max_exp() {
        if dr < db {
            break;
        }
        let c = r.coeff(dr) / &lead;
        r = &r - &b.scale(&c).shift(dr - db);
    }
    r
}

fn monic(p: &LaurentPoly) -> LaurentPoly {
    let lead = p.leading_coeff().expect("nonzero").clone();
    p.scale(&(BigRational::one() / lead))
}

fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (mut x, mut y) = (monic(a), monic(b));
    while !y.is_zero() {
        let r = poly_rem(&x, &y);
        x = y;
        y = if r.is_zero() { r } else { monic(&r) };
    }
    x
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }
}

impl From<BigRational> for RationalFunction {
    fn from(c: BigRational) -> Self {
        Self::from(LaurentPoly::constant(c))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{quantum_integer, rat};
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms)
    }

    #[test]
    fn reduces_common_factors() {
        // ([2][3]) / ([2] v) = v^-1 [3]
        let num = &quantum_integer(2) * &quantum_integer(3);
        let den = quantum_integer(2).shift(1);
        let f = RationalFunction::new(num, den).unwrap();
        assert_eq!(f, RationalFunction::from(quantum_integer(3).shift(-1)));
        assert!(f.as_laurent().is_some());
    }

    #[test]
    fn zero_and_poles() {
        assert!(RationalFunction::new(lp(&[(0, 1)]), LaurentPoly::zero()).is_err());
        let z = RationalFunction::new(LaurentPoly::zero(), lp(&[(3, 2)])).unwrap();
        assert!(z.is_zero());
        assert_eq!(z, RationalFunction::zero());
        // 1 / (v^2 - 2) has a pole at v = sqrt 2
        let f = RationalFunction::new(LaurentPoly::one(), lp(&[(2, 1), (0, -2)])).unwrap();
        assert_eq!(f.eval_sqrt_q(2), Err(Error::Pole { q: 2 }));
        assert!(f.eval_sqrt_q(3).unwrap().is_one());
    }

    #[test]
    fn field_laws_on_samples() {
        let a = RationalFunction::new(lp(&[(1, 1), (0, 1)]), lp(&[(2, 1), (-1, 3)])).unwrap();
        let b = RationalFunction::new(lp(&[(0, 2), (-3, 1)]), lp(&[(1, 1), (0, -1)])).unwrap();
        assert!((&a - &a).is_zero());
        assert!((&a * &a.inv().unwrap()).is_one());
        let lhs = &(&a + &b) * &b;
        let rhs = &(&a * &b) + &(&b * &b);
        assert_eq!(lhs, rhs);
        assert_eq!(a.bar().bar(), a);
        let c = RationalFunction::from(rat(5));
        assert_eq!((&c * &a).div(&c).unwrap(), a);
    }
}
