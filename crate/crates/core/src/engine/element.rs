use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::quiver::DimVector;
use crate::rep::ClassId;
use crate::scalar::QuadExt;

/// `[M] * prod_i [E_i]^{alpha_i}` with `M` a kQ-module class, E-factors in
/// vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Symbol {
    pub class: ClassId,
    pub alpha: Vec<i64>,
}

impl Symbol {
    pub fn new(class: ClassId, alpha: Vec<i64>) -> Self {
        Self { class, alpha }
    }

    pub fn unit(n: usize) -> Self {
        Self::new(ClassId::zero(n), vec![0; n])
    }

    pub fn e_power(alpha: Vec<i64>) -> Self {
        Self::new(ClassId::zero(alpha.len()), alpha)
    }

    pub fn dim(&self) -> &DimVector {
        &self.class.dim
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}#{}]", self.class.dim, self.class.index)?;
        if self.alpha.iter().any(|&a| a != 0) {
            let parts: Vec<String> = self.alpha.iter().map(|a| a.to_string()).collect();
            write!(f, "*E^({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// A finite combination of symbols with coefficients in `Q(sqrt q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    q: u64,
    terms: BTreeMap<Symbol, QuadExt>,
}

impl HallElement {
    pub fn zero(q: u64) -> Self {
        Self {
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_symbol(sym: Symbol, coeff: QuadExt) -> Self {
        let mut x = Self::zero(coeff.q());
        x.add_term(sym, coeff);
        x
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn terms(&self) -> &BTreeMap<Symbol, QuadExt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, sym: &Symbol) -> QuadExt {
        self.terms
            .get(sym)
            .cloned()
            .unwrap_or_else(|| QuadExt::zero(self.q).expect("prime q"))
    }

    pub fn add_term(&mut self, sym: Symbol, c: QuadExt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&sym) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&sym);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(sym, c);
            }
        }
    }

    pub fn scale(&self, c: &QuadExt) -> Self {
        let mut out = Self::zero(self.q);
        for (s, a) in &self.terms {
            out.add_term(s.clone(), a * c);
        }
        out
    }

    pub fn map_symbols(&self, mut f: impl FnMut(&Symbol, &QuadExt) -> (Symbol, QuadExt)) -> Self {
        let mut out = Self::zero(self.q);
        for (s, a) in &self.terms {
            let (t, b) = f(s, a);
            out.add_term(t, b);
        }
        out
    }
}

impl Add for &HallElement {
    type Output = HallElement;
    fn add(self, rhs: &HallElement) -> HallElement {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }
}

impl Sub for &HallElement {
    type Output = HallElement;
    fn sub(self, rhs: &HallElement) -> HallElement {
        self + &(-rhs)
    }
}

impl Neg for &HallElement {
    type Output = HallElement;
    fn neg(self) -> HallElement {
        let mut out = HallElement::zero(self.q);
        for (s, c) in &self.terms {
            out.terms.insert(s.clone(), -c);
        }
        out
    }
}

impl fmt::Display for HallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| format!("({c})*{s}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
