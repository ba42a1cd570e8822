use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::quiver::DimVector;
use crate::rep::ClassId;
use crate::scalar::QuadExt;

/// A homogeneous element of the Hall algebra of the ıquiver algebra:
/// coefficients indexed by census position inside one dimension vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleElement {
    q: u64,
    grade: DimVector,
    coeffs: BTreeMap<usize, QuadExt>,
}

impl OracleElement {
    pub fn zero(q: u64, grade: DimVector) -> Self {
        Self {
            q,
            grade,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(q: u64, id: &ClassId) -> Self {
        let mut x = Self::zero(q, id.dim.clone());
        x.add_term(id.index, QuadExt::one(q).expect("prime q"));
        x
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn grade(&self) -> &DimVector {
        &self.grade
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, QuadExt> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, index: usize, c: QuadExt) {
        if c.is_zero() {
            return;
        }
        let s = match self.coeffs.get(&index) {
            Some(old) => old + &c,
            None => c,
        };
        if s.is_zero() {
            self.coeffs.remove(&index);
        } else {
            self.coeffs.insert(index, s);
        }
    }

    pub fn scale(&self, c: &QuadExt) -> Self {
        let mut out = Self::zero(self.q, self.grade.clone());
        for (&i, a) in &self.coeffs {
            out.add_term(i, a * c);
        }
        out
    }

    /// Sum; a zero summand adopts the grade of the other one.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if self.grade != rhs.grade {
            return Err(Error::Grade(format!(
                "cannot add grades {} and {}",
                self.grade, rhs.grade
            )));
        }
        let mut out = self.clone();
        for (&i, c) in &rhs.coeffs {
            out.add_term(i, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(&-QuadExt::one(self.q).expect("prime q")))
    }

    /// Dense rational and `sqrt q` parts over a census of `size` classes.
    pub fn parts(&self, size: usize) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut a = vec![BigRational::zero(); size];
        let mut b = vec![BigRational::zero(); size];
        for (&i, c) in &self.coeffs {
            a[i] = c.rational_part().clone();
            b[i] = c.sqrt_part().clone();
        }
        (a, b)
    }
}

impl fmt::Display for OracleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(i, c)| format!("({c})*[{}#{i}]", self.grade))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A subspace of `Q^n` kept in echelon form keyed by pivot column.
#[derive(Clone, Debug)]
pub struct IdealSlice {
    grade: DimVector,
    size: usize,
    rows: BTreeMap<usize, Vec<BigRational>>,
}

impl IdealSlice {
    pub(crate) fn new(grade: DimVector, size: usize) -> Self {
        Self {
            grade,
            size,
            rows: BTreeMap::new(),
        }
    }

    pub fn grade(&self) -> &DimVector {
        &self.grade
    }

    /// Number of classes in the grade.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.size
    }

    pub(crate) fn rows(&self) -> impl Iterator<Item = &Vec<BigRational>> {
        self.rows.values()
    }

    pub fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut v = v.to_vec();
        for (&p, row) in &self.rows {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; false when it was already inside.
    pub(crate) fn insert(&mut self, v: &[BigRational]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = r[p].clone();
        let row = r.into_iter().map(|x| x / &lead).collect();
        self.rows.insert(p, row);
        true
    }
}
