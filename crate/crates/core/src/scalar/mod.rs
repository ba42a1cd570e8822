//! Exact scalars: rationals, Laurent polynomials in `v`, rational functions
//! in `v`, and the quadratic fields `Q(sqrt q)` where `v` gets specialized.

mod laurent;
mod quadext;
mod quantum;
mod ratfunc;

pub use laurent::LaurentPoly;
pub use quadext::{is_prime, QuadExt};
pub use quantum::{
    gauss_binomial, pochhammer, quantum_double_factorial, quantum_factorial, quantum_integer,
};
pub use ratfunc::RationalFunction;

pub use num_rational::BigRational;

use num_bigint::BigInt;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Ordinary binomial `C(n, 2)` extended to all integers as `n(n-1)/2`.
pub fn choose2(n: i64) -> i64 {
    n * (n - 1) / 2
}
