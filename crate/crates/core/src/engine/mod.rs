//! The ıHall algebra of a split or quasi-split ıquiver on the basis
//! `[M]*[E]^alpha`, `M` a nilpotent kQ-module. Products of two module
//! classes go through the closed kernel/cokernel formula and need `tau = Id`;
//! E-factors are moved to the right with an explicit commutation scalar.

mod element;

pub use element::{HallElement, Symbol};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::identities::p_tilde;
use crate::quiver::{Algebra, DimVector, IQuiver};
use crate::rep::{u_w_invariants, ClassId, RepContext, DEFAULT_SPACE_BUDGET};
use crate::scalar::{
    choose2, gauss_binomial, quantum_double_factorial, quantum_factorial, quantum_integer, rat,
    LaurentPoly, QuadExt,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn shift(self, n: i64) -> Self {
        Parity::of(self.bit() + n)
    }
}

/// Generators of the universal ıquantum group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    B(usize),
    Tk(usize),
}

/// The defining relations of the universal ıquantum group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    /// `tk_i tk_l = tk_l tk_i` and `tk_i B_l = v^{c_{tau i,l} - c_il} B_l tk_i`
    TkB,
    /// `B_i B_j = B_j B_i` when `c_ij = 0` and `tau i != j`
    Commute,
    /// ordinary Serre relation for `j != tau i != i`
    Serre,
    /// the relation between `B_i` and `B_{tau i}` for `tau i != i`
    OrbitSerre,
    /// the ıSerre relation at a fixed vertex
    ISerre,
}

impl RelationKind {
    pub const ALL: [RelationKind; 5] = [
        RelationKind::TkB,
        RelationKind::Commute,
        RelationKind::Serre,
        RelationKind::OrbitSerre,
        RelationKind::ISerre,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::TkB => "tk-b",
            RelationKind::Commute => "commute",
            RelationKind::Serre => "serre",
            RelationKind::OrbitSerre => "orbit-serre",
            RelationKind::ISerre => "iserre",
        }
    }

    /// Whether `(i, j)` meets the printed hypotheses.
    pub fn applies(self, iq: &IQuiver, i: usize, j: usize) -> bool {
        let ti = iq.tau().vertex(i);
        let c = iq.cartan_matrix();
        match self {
            RelationKind::TkB => true,
            RelationKind::Commute => i != j && c.get(i, j) == 0 && ti != j,
            RelationKind::Serre => i != j && j != ti && ti != i,
            RelationKind::OrbitSerre => ti != i && j == ti,
            RelationKind::ISerre => i != j && ti == i,
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RelationKind::ALL
            .into_iter()
            .find(|r| r.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown relation {s:?}")))
    }
}

pub struct Engine {
    iq: IQuiver,
    ctx: RepContext,
    q: u64,
    products: Mutex<HashMap<(ClassId, ClassId), Arc<HallElement>>>,
}

impl Engine {
    pub fn new(iq: IQuiver, q: u64) -> Result<Self> {
        Self::with_budget(iq, q, DEFAULT_SPACE_BUDGET)
    }

    pub fn with_budget(iq: IQuiver, q: u64, budget: u128) -> Result<Self> {
        let ctx = RepContext::with_budget(Algebra::path(iq.quiver()), q, budget)?;
        Ok(Self {
            iq,
            ctx,
            q,
            products: Mutex::new(HashMap::new()),
        })
    }

    pub fn iquiver(&self) -> &IQuiver {
        &self.iq
    }

    pub fn context(&self) -> &RepContext {
        &self.ctx
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    fn n(&self) -> usize {
        self.iq.n_vertices()
    }

    /// `v^e` at `v = sqrt q`.
    pub fn v_pow(&self, e: i64) -> QuadExt {
        QuadExt::sqrt_q_pow(self.q, e).expect("q checked prime")
    }

    pub fn eval(&self, p: &LaurentPoly) -> QuadExt {
        p.eval_sqrt_q(self.q).expect("q checked prime")
    }

    pub fn scalar(&self, c: BigRational) -> QuadExt {
        QuadExt::from_rational(self.q, c).expect("q checked prime")
    }

    fn int(&self, n: i64) -> QuadExt {
        self.scalar(rat(n))
    }

    pub fn zero(&self) -> HallElement {
        HallElement::zero(self.q)
    }

    pub fn unit(&self) -> HallElement {
        HallElement::from_symbol(Symbol::unit(self.n()), self.int(1))
    }

    pub fn class(&self, id: &ClassId) -> HallElement {
        HallElement::from_symbol(Symbol::new(id.clone(), vec![0; self.n()]), self.int(1))
    }

    pub fn simple(&self, i: usize) -> Result<HallElement> {
        Ok(self.class(&self.ctx.simple(i)?))
    }

    /// `[m S_i]`
    pub fn semisimple(&self, i: usize, m: usize) -> Result<HallElement> {
        let s = self.ctx.simple(i)?;
        Ok(self.class(&self.ctx.multiple(&s, m)?))
    }

    /// `[E_i]`
    pub fn e(&self, i: usize) -> HallElement {
        let mut alpha = vec![0; self.n()];
        alpha[i] = 1;
        HallElement::from_symbol(Symbol::e_power(alpha), self.int(1))
    }

    /// Total class `dim M + sum_i alpha_i dim E_i`.
    pub fn grade(&self, sym: &Symbol) -> DimVector {
        sym.alpha
            .iter()
            .enumerate()
            .fold(sym.class.dim.clone(), |acc, (i, &a)| {
                &acc + &self.iq.e_dim(i).scale(a)
            })
    }

    /// `[A]*[B]` for kQ-modules, summed over the kernel/cokernel pattern of
    /// every `s: A -> B`.
    pub fn product_kq(&self, a: &ClassId, b: &ClassId) -> Result<Arc<HallElement>> {
        if !self.iq.is_split() {
            return Err(Error::Hypothesis(
                "the closed product of two module classes needs tau = Id".into(),
            ));
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.products.lock().expect("poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let kc = self.ctx.kernel_cokernel_counts(a, b)?;
        let twist = -self.iq.euler_form(&a.dim, &b.dim);
        let mut out = self.zero();
        for ((kernel, coker), &count) in kc.entries() {
            let base = self
                .v_pow(twist + 2 * self.iq.euler_form(&kernel.dim, &coker.dim))
                .scale(&BigRational::from_integer(count.into()));
            let alpha = (&a.dim - &kernel.dim).0;
            for m in self.ctx.classes(&(&kernel.dim + &coker.dim))? {
                let h = self.ctx.hall_coefficient(kernel, coker, &m)?;
                if h.is_zero() {
                    continue;
                }
                out.add_term(Symbol::new(m, alpha.clone()), base.scale(&h));
            }
        }
        let out = Arc::new(out);
        self.products
            .lock()
            .expect("poisoned")
            .insert(key, out.clone());
        Ok(out)
    }

    /// Scalar `v^e` with `E^alpha * [M] = v^e [M] * E^alpha`.
    fn commute_scalar(&self, alpha: &[i64], m: &DimVector) -> QuadExt {
        let e: i64 = alpha
            .iter()
            .enumerate()
            .map(|(i, &a)| a * self.iq.e_commute_exponent(i, m))
            .sum();
        self.v_pow(e)
    }

    /// `[E_i] * x` with the E-factor moved to the right.
    pub fn e_commute(&self, i: usize, x: &HallElement) -> HallElement {
        x.map_symbols(|s, c| {
            let mut alpha = s.alpha.clone();
            alpha[i] += 1;
            let scalar = self.v_pow(self.iq.e_commute_exponent(i, &s.class.dim));
            (Symbol::new(s.class.clone(), alpha), c * &scalar)
        })
    }

    pub fn product(&self, x: &HallElement, y: &HallElement) -> Result<HallElement> {
        if x.q() != self.q || y.q() != self.q {
            return Err(Error::ContextMismatch("elements over another field".into()));
        }
        let mut out = self.zero();
        for (s1, c1) in x.terms() {
            for (s2, c2) in y.terms() {
                let alpha: Vec<i64> = s1.alpha.iter().zip(&s2.alpha).map(|(a, b)| a + b).collect();
                let mut c = c1 * c2;
                if s2.class.dim.is_zero() {
                    out.add_term(Symbol::new(s1.class.clone(), alpha), c);
                    continue;
                }
                c = &c * &self.commute_scalar(&s1.alpha, &s2.class.dim);
                if s1.class.dim.is_zero() {
                    out.add_term(Symbol::new(s2.class.clone(), alpha), c);
                    continue;
                }
                for (t, d) in self.product_kq(&s1.class, &s2.class)?.terms() {
                    let beta = t.alpha.iter().zip(&alpha).map(|(a, b)| a + b).collect();
                    out.add_term(Symbol::new(t.class.clone(), beta), &c * d);
                }
            }
        }
        Ok(out)
    }

    pub fn product_chain(&self, factors: &[HallElement]) -> Result<HallElement> {
        factors
            .iter()
            .try_fold(self.unit(), |acc, f| self.product(&acc, f))
    }

    pub fn power(&self, x: &HallElement, m: usize) -> Result<HallElement> {
        (0..m).try_fold(self.unit(), |acc, _| self.product(&acc, x))
    }

    fn require_fixed(&self, i: usize) -> Result<()> {
        if self.iq.tau().vertex(i) != i {
            return Err(Error::Hypothesis(format!("vertex {i} is not fixed by tau")));
        }
        Ok(())
    }

    fn divide_by(&self, x: &HallElement, d: &QuadExt) -> Result<HallElement> {
        let inv = d
            .inv()
            .map_err(|_| Error::Inexact(format!("division by {d}")))?;
        Ok(x.scale(&inv))
    }

    /// The ıdivided power of `[S_i]` built from its defining product.
    pub fn idivided_power(&self, i: usize, m: usize, parity: Parity) -> Result<HallElement> {
        self.require_fixed(i)?;
        let s = self.simple(i)?;
        let s2 = self.product(&s, &s)?;
        let odd = m % 2 == 1;
        let mut acc = if odd { s.clone() } else { self.unit() };
        let qm1 = self.int(self.q as i64 - 1);
        for j in 1..=(m / 2) as i64 {
            let c = match (parity, odd) {
                (Parity::Odd, _) => 2 * j - 1,
                (Parity::Even, true) => 2 * j,
                (Parity::Even, false) => 2 * j - 2,
            };
            let qi = self.eval(&quantum_integer(c));
            let coef = &(&self.v_pow(-1) * &(&qm1 * &qm1)) * &(&qi * &qi);
            let factor = &s2 + &self.e(i).scale(&coef);
            acc = self.product(&acc, &factor)?;
        }
        self.divide_by(&acc, &self.eval(&quantum_factorial(m as u32)))
    }

    /// The closed expansion of the ıdivided power on the basis.
    pub fn expand_idivided(&self, i: usize, m: usize, parity: Parity) -> Result<HallElement> {
        self.require_fixed(i)?;
        let mut out = self.zero();
        let v_minus = LaurentPoly::from_int_terms(&[(1, 1), (-1, -1)]);
        let m = m as i64;
        for k in 0..=m / 2 {
            let shift = if Parity::of(m) == parity {
                k * (k - 1)
            } else {
                k * (k + 1)
            } - choose2(m - 2 * k);
            let num = &LaurentPoly::v_pow(shift) * &v_minus.pow(k as u32);
            let den = &quantum_factorial((m - 2 * k) as u32)
                * &quantum_double_factorial((2 * k) as u32)?;
            let coef = self.eval(&num).div(&self.eval(&den))?;
            let class = self.ctx.multiple(&self.ctx.simple(i)?, (m - 2 * k) as usize)?;
            let mut alpha = vec![0; self.n()];
            alpha[i] = k;
            out.add_term(Symbol::new(class, alpha), coef);
        }
        Ok(out)
    }

    /// `[S_i]^m / [m]! = v^{-m(m-1)/2} [m S_i]` at a vertex moved by `tau`.
    pub fn divided_power_nonsplit(&self, i: usize, m: usize) -> Result<HallElement> {
        if self.iq.tau().vertex(i) == i {
            return Err(Error::Hypothesis(format!("vertex {i} is fixed by tau")));
        }
        Ok(self
            .semisimple(i, m)?
            .scale(&self.v_pow(-choose2(m as i64))))
    }

    pub fn psi_image(&self, gen: Generator) -> Result<HallElement> {
        let q = self.q as i64;
        match gen {
            Generator::B(i) => {
                let c = if self.iq.is_rep(i) {
                    self.scalar(BigRational::new((-1).into(), (q - 1).into()))
                } else {
                    self.v_pow(1)
                        .scale(&BigRational::new(1.into(), (q - 1).into()))
                };
                Ok(self.simple(i)?.scale(&c))
            }
            Generator::Tk(j) => {
                let tj = self.iq.tau().vertex(j);
                let c = if tj == j {
                    self.scalar(BigRational::new((-1).into(), q.into()))
                } else {
                    let cj = self.iq.cartan_matrix().get(j, tj);
                    if cj % 2 != 0 {
                        return Err(Error::Domain(format!(
                            "v^(-{cj}/2) is not in Q(sqrt {})",
                            self.q
                        )));
                    }
                    self.v_pow(-cj / 2)
                };
                Ok(self.e(j).scale(&c))
            }
        }
    }

    /// Image of the ıdivided power `B_{i,p}^{(m)}` at a fixed vertex.
    pub fn psi_idivided(&self, i: usize, m: usize, parity: Parity) -> Result<HallElement> {
        let d = self.int(1 - self.q as i64).pow(m as i64)?;
        self.divide_by(&self.idivided_power(i, m, parity)?, &d)
    }

    /// Image of the divided power `B_i^{(m)}` at a vertex moved by `tau`.
    pub fn psi_divided(&self, i: usize, m: usize) -> Result<HallElement> {
        let dp = self.divided_power_nonsplit(i, m)?;
        if self.iq.is_rep(i) {
            let d = self.int(1 - self.q as i64).pow(m as i64)?;
            self.divide_by(&dp, &d)
        } else {
            let d = self.int(self.q as i64 - 1).pow(m as i64)?;
            self.divide_by(&dp.scale(&self.v_pow(m as i64)), &d)
        }
    }

    /// Left side minus right side of one defining relation under the
    /// generator images.
    pub fn verify_relation(
        &self,
        rel: RelationKind,
        i: usize,
        j: usize,
        parity: Parity,
    ) -> Result<HallElement> {
        if !rel.applies(&self.iq, i, j) {
            return Err(Error::Hypothesis(format!(
                "{rel} does not apply to ({i}, {j})"
            )));
        }
        let cm = self.iq.cartan_matrix();
        match rel {
            RelationKind::TkB => {
                let (tk_i, tk_j, b_j) = (
                    self.psi_image(Generator::Tk(i))?,
                    self.psi_image(Generator::Tk(j))?,
                    self.psi_image(Generator::B(j))?,
                );
                let ti = self.iq.tau().vertex(i);
                let scalar = self.v_pow(cm.get(ti, j) - cm.get(i, j));
                let lhs = self.product(&tk_i, &b_j)?;
                let rhs = self.product(&b_j, &tk_i)?.scale(&scalar);
                let tk = &self.product(&tk_i, &tk_j)? - &self.product(&tk_j, &tk_i)?;
                Ok(&(&lhs - &rhs) + &tk)
            }
            RelationKind::Commute => {
                let (b_i, b_j) = (
                    self.psi_image(Generator::B(i))?,
                    self.psi_image(Generator::B(j))?,
                );
                Ok(&self.product(&b_i, &b_j)? - &self.product(&b_j, &b_i)?)
            }
            RelationKind::ISerre => {
                let c = cm.get(i, j);
                let b_j = self.psi_image(Generator::B(j))?;
                let top = (1 - c) as usize;
                let mut out = self.zero();
                for n in 0..=top {
                    let term = self.product_chain(&[
                        self.psi_idivided(i, n, parity)?,
                        b_j.clone(),
                        self.psi_idivided(i, top - n, parity.shift(c))?,
                    ])?;
                    out = if n % 2 == 0 { &out + &term } else { &out - &term };
                }
                Ok(out)
            }
            RelationKind::Serre | RelationKind::OrbitSerre => Err(Error::Hypothesis(format!(
                "{rel} involves a vertex moved by tau; products there need the oracle"
            ))),
        }
    }

    /// Alternating sum of the ıSerre relation on the rank two ıquiver, with a
    /// grading check on every term.
    pub fn iserre_residual(&self, parity: Parity) -> Result<HallElement> {
        let (a, b) = self.rank_two_shape()?;
        let top = (1 + a + b) as usize;
        let expected = DimVector(vec![1 + a + b, 1]);
        let s2 = self.simple(1)?;
        let mut out = self.zero();
        for n in 0..=top {
            let term = self.product_chain(&[
                self.idivided_power(0, n, parity)?,
                s2.clone(),
                self.idivided_power(0, top - n, parity.shift(a + b))?,
            ])?;
            for sym in term.terms().keys() {
                let g = self.grade(sym);
                if g != expected {
                    return Err(Error::Grade(format!(
                        "term {sym} has class {g}, expected {expected}"
                    )));
                }
            }
            out = if n % 2 == 0 { &out + &term } else { &out - &term };
        }
        Ok(out)
    }

    /// Arrow counts `(a, b)` for the split quiver with `a` arrows `1 -> 2`
    /// and `b` arrows `2 -> 1`.
    pub fn rank_two_shape(&self) -> Result<(i64, i64)> {
        let q = self.iq.quiver();
        if q.n_vertices() != 2 || !self.iq.is_split() {
            return Err(Error::Precondition(
                "needs two vertices and tau = Id".into(),
            ));
        }
        let (mut a, mut b) = (0, 0);
        for arrow in q.arrows() {
            match (arrow.src, arrow.tgt) {
                (0, 1) => a += 1,
                (1, 0) => b += 1,
                _ => return Err(Error::Precondition("loops are not allowed".into())),
            }
        }
        Ok((a, b))
    }

    /// The closed form of `[s S_1]*[S_2]*[t S_1]` on the rank two quiver.
    pub fn triple_product_closed(&self, s: usize, t: usize) -> Result<HallElement> {
        let (a, b) = self.rank_two_shape()?;
        let (s, t) = (s as i64, t as i64);
        let v_minus = LaurentPoly::from_int_terms(&[(1, 1), (-1, -1)]);
        let st = &quantum_factorial(s as u32) * &quantum_factorial(t as u32);
        let mut out = self.zero();
        for r in 0..=s.min(t) {
            let weight = st.div_exact(&quantum_factorial(r as u32))?;
            let weight = &weight * &v_minus.pow((s - r + t + 1) as u32);
            let dim = DimVector(vec![s + t - 2 * r, 1]);
            for m in self.ctx.classes(&dim)? {
                let uw = u_w_invariants(self.ctx.algebra(), &self.ctx.rep(&m)?)?;
                if !uw.w_in_u {
                    continue;
                }
                let (u, w) = (uw.u as i64, uw.w as i64);
                let lower = t - r - w;
                if lower < 0 {
                    continue;
                }
                let exp = -t * b + p_tilde(a, b, r, s, t, u, w);
                let poly = &(&weight * &gauss_binomial(u - w, lower as u32))
                    * &LaurentPoly::v_pow(exp);
                if poly.is_zero() {
                    continue;
                }
                let aut = BigRational::new(1.into(), self.ctx.aut(&m)?.into());
                out.add_term(
                    Symbol::new(m, vec![r, 0]),
                    self.eval(&poly).scale(&aut),
                );
            }
        }
        Ok(out)
    }

    /// Specialize the central E-factors: `[E_i] -> -q sigma_i` at fixed
    /// vertices and `[E_i][E_{tau i}] -> v^{c_{i,tau i}} sigma_i sigma_{tau i}`
    /// on moved pairs. Unpaired moved factors stay.
    pub fn reduce_parameters(&self, x: &HallElement, sigma: &[QuadExt]) -> Result<HallElement> {
        let n = self.n();
        if sigma.len() != n {
            return Err(Error::Precondition(format!(
                "expected {n} parameters, got {}",
                sigma.len()
            )));
        }
        let cm = self.iq.cartan_matrix();
        let tau = self.iq.tau();
        for i in 0..n {
            let ti = tau.vertex(i);
            if ti != i && cm.get(i, ti) == 0 && sigma[i] != sigma[ti] {
                return Err(Error::Precondition(format!(
                    "parameters at {i} and {ti} must agree"
                )));
            }
        }
        let mut out = self.zero();
        for (sym, c) in x.terms() {
            let mut alpha = sym.alpha.clone();
            let mut c = c.clone();
            for i in 0..n {
                let ti = tau.vertex(i);
                if ti == i {
                    if alpha[i] != 0 {
                        let e = (&self.int(-(self.q as i64)) * &sigma[i]).pow(alpha[i])?;
                        c = &c * &e;
                        alpha[i] = 0;
                    }
                } else if i < ti {
                    let (x1, x2) = (alpha[i], alpha[ti]);
                    let pairs = if x1 > 0 && x2 > 0 {
                        x1.min(x2)
                    } else if x1 < 0 && x2 < 0 {
                        x1.max(x2)
                    } else {
                        0
                    };
                    if pairs != 0 {
                        let base =
                            &(&self.v_pow(cm.get(i, ti)) * &sigma[i]) * &sigma[ti];
                        c = &c * &base.pow(pairs)?;
                        alpha[i] -= pairs;
                        alpha[ti] -= pairs;
                    }
                }
            }
            out.add_term(Symbol::new(sym.class.clone(), alpha), c);
        }
        Ok(out)
    }
}

/// Residual of the ıSerre relation on the rank two quiver with `a` arrows
/// `1 -> 2` and `b` arrows `2 -> 1`.
pub fn verify_iserre(a: usize, b: usize, parity: Parity, q: u64) -> Result<HallElement> {
    Engine::new(IQuiver::rank_two(a, b), q)?.iserre_residual(parity)
}
