use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{rat, BigRational};
use crate::error::{Error, Result};

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `a + b*sqrt(q)` in `Q(sqrt q)` for a prime `q`.
///
/// Mixing two different `q` in one operation is a programming error and
/// panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    q: u64,
    a: BigRational,
    b: BigRational,
}

impl QuadExt {
    pub fn new(q: u64, a: BigRational, b: BigRational) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(Self { q, a, b })
    }

    pub fn zero(q: u64) -> Result<Self> {
        Self::new(q, rat(0), rat(0))
    }

    pub fn one(q: u64) -> Result<Self> {
        Self::new(q, rat(1), rat(0))
    }

    pub fn from_int(q: u64, n: i64) -> Result<Self> {
        Self::new(q, rat(n), rat(0))
    }

    pub fn from_rational(q: u64, c: BigRational) -> Result<Self> {
        Self::new(q, c, rat(0))
    }

    /// `sqrt(q)^e` for any integer `e`.
    pub fn sqrt_q_pow(q: u64, e: i64) -> Result<Self> {
        let half = e.div_euclid(2);
        let odd = e.rem_euclid(2) == 1;
        let base = BigRational::from_integer(BigInt::from(q));
        let mag = pow_rational(&base, half);
        if odd {
            Self::new(q, rat(0), mag)
        } else {
            Self::new(q, mag, rat(0))
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            q: self.q,
            a: &self.a * c,
            b: &self.b * c,
        }
    }

    /// Galois conjugate `a - b*sqrt(q)`.
    pub fn conj(&self) -> Self {
        Self {
            q: self.q,
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// `a^2 - q b^2`, the field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * rat(self.q as i64)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Domain("inverse of zero in Q(sqrt q)".into()));
        }
        Ok(self.conj().scale(&(BigRational::one() / n)))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.q)?;
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.q as f64).sqrt()
    }

    fn check_same(&self, rhs: &Self) {
        assert_eq!(
            self.q, rhs.q,
            "mixing Q(sqrt {}) and Q(sqrt {})",
            self.q, rhs.q
        );
    }
}

fn pow_rational(base: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e < 0 {
        BigRational::one() / acc
    } else {
        acc
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        self.check_same(rhs);
        QuadExt {
            q: self.q,
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        self.check_same(rhs);
        QuadExt {
            q: self.q,
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        self.check_same(rhs);
        let q = rat(self.q as i64);
        QuadExt {
            q: self.q,
            a: &self.a * &rhs.a + &self.b * &rhs.b * q,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            q: self.q,
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        &self + &rhs
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        &self - &rhs
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        &self * &rhs
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

/// `3/2*sqrt(2)`, `1 - sqrt(3)`, `-7`.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("sqrt({})", self.q);
        let surd = |b: &BigRational| {
            if b.is_one() {
                root.clone()
            } else {
                format!("{b}*{root}")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => {
                if self.b.is_negative() {
                    write!(f, "-{}", surd(&self.b.abs()))
                } else {
                    f.write_str(&surd(&self.b))
                }
            }
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{} {sign} {}", self.a, surd(&self.b.abs()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat_frac;
    use super::*;

    #[test]
    fn rejects_non_primes() {
        assert_eq!(QuadExt::zero(4), Err(Error::NotPrime(4)));
        assert_eq!(QuadExt::zero(1), Err(Error::NotPrime(1)));
        assert!(QuadExt::zero(5).is_ok());
    }

    #[test]
    fn multiplication_rule() {
        // (1 + sqrt2)(3 - 2 sqrt2) = 3 - 4 + (3 - 2) sqrt2 = -1 + sqrt2
        let x = QuadExt::new(2, rat(1), rat(1)).unwrap();
        let y = QuadExt::new(2, rat(3), rat(-2)).unwrap();
        assert_eq!(&x * &y, QuadExt::new(2, rat(-1), rat(1)).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let x = QuadExt::new(3, rat_frac(2, 5), rat(-7)).unwrap();
        assert!((&x * &x.inv().unwrap()).is_one());
        assert!(QuadExt::zero(3).unwrap().inv().is_err());
    }

    #[test]
    fn powers_of_sqrt_q() {
        assert_eq!(
            QuadExt::sqrt_q_pow(3, 2).unwrap(),
            QuadExt::from_int(3, 3).unwrap()
        );
        assert_eq!(
            QuadExt::sqrt_q_pow(2, -3).unwrap(),
            QuadExt::new(2, rat(0), rat_frac(1, 4)).unwrap()
        );
        let s = QuadExt::sqrt_q_pow(5, 1).unwrap();
        assert_eq!(
            s.pow(-2).unwrap(),
            QuadExt::from_rational(5, rat_frac(1, 5)).unwrap()
        );
    }

    #[test]
    fn render() {
        let x = QuadExt::new(2, rat(0), rat_frac(3, 2)).unwrap();
        assert_eq!(x.to_string(), "3/2*sqrt(2)");
        assert_eq!(
            QuadExt::new(3, rat(1), rat(-1)).unwrap().to_string(),
            "1 - sqrt(3)"
        );
        assert_eq!(QuadExt::from_int(3, -7).unwrap().to_string(), "-7");
    }
}
