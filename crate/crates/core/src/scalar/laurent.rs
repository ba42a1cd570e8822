use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{rat, BigRational, QuadExt};
use crate::error::{Error, Result};

/// A Laurent polynomial in `v` with rational coefficients.
///
/// Stored sparsely with zero coefficients stripped, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^e`
    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `v^e`
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(rat(1), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The bar involution `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `v = 1`.
    pub fn eval_at_one(&self) -> BigRational {
        self.terms
            .values()
            .fold(BigRational::zero(), |acc, c| acc + c)
    }

    pub fn eval_f64(&self, v: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * v.powi(*e as i32))
            .sum()
    }

    /// Exact substitution `v -> sqrt(q)` in `Q(sqrt q)`.
    pub fn eval_sqrt_q(&self, q: u64) -> Result<QuadExt> {
        let mut acc = QuadExt::zero(q)?;
        for (e, c) in &self.terms {
            acc = &acc + &QuadExt::sqrt_q_pow(q, *e)?.scale(c);
        }
        Ok(acc)
    }

    /// Exact division; fails unless `divisor` divides `self` in `Q[v, v^{-1}]`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (quot, rem) = self.div_rem(divisor)?;
        if !rem.is_zero() {
            return Err(Error::Inexact(format!("({self}) / ({divisor})")));
        }
        Ok(quot)
    }

    /// Long division after normalizing both sides to ordinary polynomials.
    /// The remainder is expressed with the dividend's lowest exponent.
    pub fn div_rem(&self, divisor: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
        let (Some(dmin), Some(dmax)) = (divisor.min_exp(), divisor.max_exp()) else {
            return Err(Error::Domain("division by zero Laurent polynomial".into()));
        };
        if self.is_zero() {
            return Ok((Self::zero(), Self::zero()));
        }
        let lead = divisor.leading_coeff().expect("nonzero").clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let floor = self.min_exp().expect("nonzero");
        // Division from the top: the remainder keeps exponents in
        // [floor, floor + (dmax - dmin)).
        while let Some(top) = rem.max_exp() {
            if top - (dmax - dmin) < floor {
                break;
            }
            let c = rem.coeff(top) / &lead;
            let e = top - dmax;
            let t = LaurentPoly::monomial(c, e);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Ok((quot, rem))
    }

    /// Content-free, sign-normalized copy with integer coefficients
    /// (`self = content * primitive`).
    pub fn primitive_part(&self) -> (BigRational, LaurentPoly) {
        if self.is_zero() {
            return (BigRational::zero(), Self::zero());
        }
        use num_integer::Integer;
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading_coeff().expect("nonzero").is_negative() {
            content = -content;
        }
        let prim = self.scale(&(BigRational::one() / &content));
        (content, prim)
    }
}

impl From<BigRational> for LaurentPoly {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(rat(c))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Terms in decreasing exponent order: `v^2 + 1 + v^-2`, `-3/2*v^3 - v`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let var = match *e {
                0 => String::new(),
                1 => "v".to_string(),
                e => format!("v^{e}"),
            };
            if var.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the rendering grammar: a signed sum of terms `c`, `v`, `v^e`,
    /// `c*v`, `c*v^e`, with `c` an integer or fraction `n/d`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty Laurent polynomial".into()));
        }
        let mut out = LaurentPoly::zero();
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut pieces = Vec::new();
        for i in 1..bytes.len() {
            // split before a sign that is not an exponent sign
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-1, &piece[1..]),
                b'+' => (1, &piece[1..]),
                _ => (1, piece),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let (coef_str, var_str) = match body.find('v') {
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    (c, Some(&body[pos..]))
                }
                None => (body, None),
            };
            let coef = if coef_str.is_empty() {
                rat(1)
            } else {
                parse_rational(coef_str)?
            };
            let exp = match var_str {
                None => 0,
                Some("v") => 1,
                Some(vs) => vs
                    .strip_prefix("v^")
                    .ok_or_else(|| Error::Parse(format!("bad variable in {piece:?}")))?
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad exponent in {piece:?}: {e}")))?,
            };
            out.add_term(exp, coef * rat(sign));
        }
        Ok(out)
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = |e: &dyn fmt::Display| Error::Parse(format!("bad rational {s:?}: {e}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|e| bad(&e))?;
            let d: BigInt = d.parse().map_err(|e| bad(&e))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|e| bad(&e))?)),
    }
}
