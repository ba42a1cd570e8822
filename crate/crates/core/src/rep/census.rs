use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::hall::{HallTable, KernelCokernelCounts};
use super::{code_to_digits, digits_to_code, Rep};
use crate::error::{Error, Result};
use crate::fq::{check_prime_field, gl_order, inv_mod, primitive_root};
use crate::quiver::{Algebra, DimVector};

/// Largest representation space (number of matrix tuples) enumerated.
pub const DEFAULT_SPACE_BUDGET: u128 = 1 << 26;

/// Above this many points the code lookup is a hash map instead of a table.
const DENSE_LOOKUP_LIMIT: u128 = 1 << 22;

/// An isomorphism class inside a census: dimension vector plus position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassId {
    pub dim: DimVector,
    pub index: usize,
}

impl ClassId {
    pub fn zero(n: usize) -> Self {
        Self {
            dim: DimVector::zero(n),
            index: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsoClass {
    /// Least code in the orbit; two tuples are isomorphic iff keys agree.
    pub key: u64,
    /// The representative with that code.
    pub rep: Rep,
    pub aut: u128,
    pub orbit: u128,
}

enum Lookup {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

const UNSEEN: u32 = u32::MAX;

impl Lookup {
    fn new(size: u128) -> Self {
        if size <= DENSE_LOOKUP_LIMIT {
            Lookup::Dense(vec![UNSEEN; size as usize])
        } else {
            Lookup::Sparse(HashMap::new())
        }
    }

    fn get(&self, code: u64) -> Option<u32> {
        match self {
            Lookup::Dense(v) => v.get(code as usize).copied().filter(|&c| c != UNSEEN),
            Lookup::Sparse(m) => m.get(&code).copied(),
        }
    }

    fn insert(&mut self, code: u64, class: u32) {
        match self {
            Lookup::Dense(v) => v[code as usize] = class,
            Lookup::Sparse(m) => {
                m.insert(code, class);
            }
        }
    }
}

/// All isomorphism classes with one dimension vector, in key order.
pub struct Census {
    dim: DimVector,
    classes: Vec<IsoClass>,
    lookup: Lookup,
    space_size: u128,
    valid_count: u128,
    group_order: u128,
}

impl Census {
    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn classes(&self) -> &[IsoClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, index: usize) -> &IsoClass {
        &self.classes[index]
    }

    /// Number of matrix tuples of this shape.
    pub fn space_size(&self) -> u128 {
        self.space_size
    }

    /// Number of tuples satisfying the relations (and nilpotency).
    pub fn valid_count(&self) -> u128 {
        self.valid_count
    }

    pub fn group_order(&self) -> u128 {
        self.group_order
    }

    pub fn index_of(&self, rep: &Rep) -> Option<usize> {
        if rep.dim_vector() != self.dim {
            return None;
        }
        self.lookup.get(rep.code()).map(|c| c as usize)
    }

    fn build(alg: &Algebra, q: u32, dim: &DimVector, budget: u128) -> Result<Self> {
        let dims = dim.dims();
        let shapes: Vec<(usize, usize)> = alg
            .arrows
            .iter()
            .map(|a| (dims[a.tgt], dims[a.src]))
            .collect();
        let n_digits: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let space_size = (q as u128)
            .checked_pow(n_digits as u32)
            .filter(|&s| s <= budget)
            .ok_or_else(|| Error::Budget {
                what: format!("representation space of dimension vector {dim}"),
                size: (q as u128).saturating_pow(n_digits as u32),
                limit: budget,
            })?;
        let group_order: u128 = dims.iter().map(|&d| gl_order(d, q as u64)).product();
        let action = GroupAction::new(alg, q, &dims);
        let mut lookup = Lookup::new(space_size);
        let mut classes = Vec::new();
        let mut valid_count = 0u128;
        for code in 0..space_size as u64 {
            if lookup.get(code).is_some() {
                continue;
            }
            let digits = code_to_digits(code, q, n_digits);
            let rep = Rep::from_digits(alg, q, &dims, &digits);
            if !rep.is_valid(alg) {
                continue;
            }
            // codes run upwards, so this is the least code of a new orbit
            let index = classes.len() as u32;
            let orbit = action.orbit(digits, index, &mut lookup);
            valid_count += orbit;
            if group_order % orbit != 0 {
                return Err(Error::Precondition(format!(
                    "orbit size {orbit} does not divide the group order {group_order}"
                )));
            }
            classes.push(IsoClass {
                key: code,
                rep,
                aut: group_order / orbit,
                orbit,
            });
        }
        Ok(Self {
            dim: dim.clone(),
            classes,
            lookup,
            space_size,
            valid_count,
            group_order,
        })
    }
}

/// Generators of `prod_v GL(d_v, F_q)` acting on digit strings by base change.
struct GroupAction {
    q: u32,
    /// (vertex, kind) with kind `Transvection(i, j)` or `Scale(i)`.
    gens: Vec<(usize, Gen)>,
    /// Per arrow: offset, rows, cols, src, tgt.
    layout: Vec<(usize, usize, usize, usize, usize)>,
    root: u32,
}

#[derive(Clone, Copy)]
enum Gen {
    Transvection(usize, usize),
    Scale(usize),
}

impl GroupAction {
    fn new(alg: &Algebra, q: u32, dims: &[usize]) -> Self {
        let mut gens = Vec::new();
        for (v, &d) in dims.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        gens.push((v, Gen::Transvection(i, j)));
                    }
                }
                if q > 2 && i == 0 {
                    gens.push((v, Gen::Scale(0)));
                }
            }
        }
        let mut layout = Vec::new();
        let mut off = 0;
        for a in &alg.arrows {
            let (r, c) = (dims[a.tgt], dims[a.src]);
            layout.push((off, r, c, a.src, a.tgt));
            off += r * c;
        }
        Self {
            q,
            gens,
            layout,
            root: primitive_root(q),
        }
    }

    /// `g M(a) g^-1` for one generator `g` at vertex `v`.
    fn apply(&self, digits: &mut [u32], v: usize, g: Gen) {
        let q = self.q;
        for &(off, r, c, src, tgt) in &self.layout {
            if tgt == v {
                match g {
                    // row i += row j
                    Gen::Transvection(i, j) => {
                        for k in 0..c {
                            digits[off + i * c + k] = (digits[off + i * c + k] + digits[off + j * c + k]) % q;
                        }
                    }
                    Gen::Scale(i) => {
                        for k in 0..c {
                            digits[off + i * c + k] = digits[off + i * c + k] * self.root % q;
                        }
                    }
                }
            }
            if src == v {
                match g {
                    // times (I - e_ij): column j -= column i
                    Gen::Transvection(i, j) => {
                        for k in 0..r {
                            digits[off + k * c + j] = (digits[off + k * c + j] + q - digits[off + k * c + i]) % q;
                        }
                    }
                    Gen::Scale(i) => {
                        let inv = inv_mod(self.root, q);
                        for k in 0..r {
                            digits[off + k * c + i] = digits[off + k * c + i] * inv % q;
                        }
                    }
                }
            }
        }
    }

    fn orbit(&self, start: Vec<u32>, class: u32, lookup: &mut Lookup) -> u128 {
        let mut queue = VecDeque::new();
        lookup.insert(digits_to_code(&start, self.q), class);
        queue.push_back(start);
        let mut size = 1u128;
        while let Some(d) = queue.pop_front() {
            for &(v, g) in &self.gens {
                let mut next = d.clone();
                self.apply(&mut next, v, g);
                let code = digits_to_code(&next, self.q);
                if lookup.get(code).is_none() {
                    lookup.insert(code, class);
                    size += 1;
                    queue.push_back(next);
                }
            }
        }
        size
    }
}

/// Census export record.
#[derive(Clone, Debug, Serialize)]
pub struct ClassRecord {
    pub dim: DimVector,
    pub index: usize,
    pub aut: String,
    pub key_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_i: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_j: Option<bool>,
}

/// Algebra, field and the memoized censuses and counting tables over them.
pub struct RepContext {
    algebra: Algebra,
    q: u32,
    budget: u128,
    censuses: Mutex<HashMap<DimVector, Arc<Census>>>,
    tables: Mutex<HashMap<ClassId, Arc<HallTable>>>,
    kernels: Mutex<HashMap<(ClassId, ClassId), Arc<KernelCokernelCounts>>>,
}

impl RepContext {
    pub fn new(algebra: Algebra, q: u64) -> Result<Self> {
        Self::with_budget(algebra, q, DEFAULT_SPACE_BUDGET)
    }

    pub fn with_budget(algebra: Algebra, q: u64, budget: u128) -> Result<Self> {
        let q = check_prime_field(q)?;
        Ok(Self {
            algebra,
            q,
            budget,
            censuses: Mutex::new(HashMap::new()),
            tables: Mutex::new(HashMap::new()),
            kernels: Mutex::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    pub fn n_vertices(&self) -> usize {
        self.algebra.n_vertices
    }

    pub fn census(&self, dim: &DimVector) -> Result<Arc<Census>> {
        if dim.len() != self.n_vertices() || !dim.is_nonneg() {
            return Err(Error::Grade(format!("bad dimension vector {dim}")));
        }
        if let Some(c) = self.censuses.lock().expect("poisoned").get(dim) {
            return Ok(c.clone());
        }
        let c = Arc::new(Census::build(&self.algebra, self.q, dim, self.budget)?);
        self.censuses
            .lock()
            .expect("poisoned")
            .insert(dim.clone(), c.clone());
        Ok(c)
    }

    pub fn classify(&self, rep: &Rep) -> Result<ClassId> {
        let dim = rep.dim_vector();
        let census = self.census(&dim)?;
        let index = census.index_of(rep).ok_or_else(|| {
            Error::Precondition("representation violates the relations".into())
        })?;
        Ok(ClassId { dim, index })
    }

    pub fn rep(&self, id: &ClassId) -> Result<Rep> {
        Ok(self.census(&id.dim)?.class(id.index).rep.clone())
    }

    pub fn aut(&self, id: &ClassId) -> Result<u128> {
        Ok(self.census(&id.dim)?.class(id.index).aut)
    }

    pub fn classes(&self, dim: &DimVector) -> Result<Vec<ClassId>> {
        let n = self.census(dim)?.len();
        Ok((0..n)
            .map(|index| ClassId {
                dim: dim.clone(),
                index,
            })
            .collect())
    }

    pub fn simple(&self, i: usize) -> Result<ClassId> {
        self.classify(&Rep::simple(&self.algebra, self.q, i))
    }

    pub fn direct_sum(&self, x: &ClassId, y: &ClassId) -> Result<ClassId> {
        self.classify(&self.rep(x)?.direct_sum(&self.rep(y)?))
    }

    /// `M^{+t}`.
    pub fn multiple(&self, x: &ClassId, t: usize) -> Result<ClassId> {
        let rep = self.rep(x)?;
        let mut acc = Rep::zero(&self.algebra, self.q, vec![0; self.n_vertices()]);
        for _ in 0..t {
            acc = acc.direct_sum(&rep);
        }
        self.classify(&acc)
    }

    pub fn hom_dim(&self, x: &ClassId, y: &ClassId) -> Result<usize> {
        super::hom_dim(&self.algebra, &self.rep(x)?, &self.rep(y)?)
    }

    pub fn ext1_dim(&self, x: &ClassId, y: &ClassId) -> Result<usize> {
        super::ext1_dim(&self.algebra, &self.rep(x)?, &self.rep(y)?)
    }

    pub fn hall_table(&self, z: &ClassId) -> Result<Arc<HallTable>> {
        if let Some(t) = self.tables.lock().expect("poisoned").get(z) {
            return Ok(t.clone());
        }
        let t = Arc::new(HallTable::compute(self, z)?);
        self.tables
            .lock()
            .expect("poisoned")
            .insert(z.clone(), t.clone());
        Ok(t)
    }

    /// `F^Z_{X,Y}`: submodules `L` of `Z` with `L = Y` and `Z/L = X`.
    pub fn hall_number(&self, z: &ClassId, x: &ClassId, y: &ClassId) -> Result<u128> {
        if &x.dim + &y.dim != z.dim {
            return Ok(0);
        }
        Ok(self.hall_table(z)?.count(x, y))
    }

    /// `|Ext^1(X,Y)_Z| / |Hom(X,Y)| = F^Z_{XY} |Aut X| |Aut Y| / |Aut Z|`.
    pub fn hall_coefficient(&self, x: &ClassId, y: &ClassId, z: &ClassId) -> Result<BigRational> {
        let f = self.hall_number(z, x, y)?;
        Ok(BigRational::new(
            BigInt::from(f) * BigInt::from(self.aut(x)?) * BigInt::from(self.aut(y)?),
            BigInt::from(self.aut(z)?),
        ))
    }

    /// `(|Ext^1(X,Y)_Z|, |Hom(X,Y)|)`.
    pub fn ext1_count_middle(
        &self,
        x: &ClassId,
        y: &ClassId,
        z: &ClassId,
    ) -> Result<(BigRational, u128)> {
        let hom = (self.q as u128).pow(self.hom_dim(x, y)? as u32);
        let coeff = self.hall_coefficient(x, y, z)?;
        Ok((coeff * BigRational::from_integer(BigInt::from(hom)), hom))
    }

    /// `#{s in Hom(A,B) : ker s = N, coker s = L}` for all `(N, L)`.
    pub fn kernel_cokernel_counts(
        &self,
        a: &ClassId,
        b: &ClassId,
    ) -> Result<Arc<KernelCokernelCounts>> {
        let key = (a.clone(), b.clone());
        if let Some(t) = self.kernels.lock().expect("poisoned").get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(KernelCokernelCounts::compute(self, a, b)?);
        self.kernels
            .lock()
            .expect("poisoned")
            .insert(key, t.clone());
        Ok(t)
    }

    /// Census export with a digest of each canonical key.
    pub fn export(&self, dim: &DimVector) -> Result<Vec<ClassRecord>> {
        let census = self.census(dim)?;
        let flag_shape = self.n_vertices() == 2 && dim.0[1] == 1;
        let mut out = Vec::new();
        for (index, class) in census.classes().iter().enumerate() {
            let digest = Sha256::digest(
                format!("{}|{}|{}", self.q, dim, class.key).as_bytes(),
            );
            let (in_i, in_j) = if flag_shape && self.algebra.kind == crate::quiver::AlgebraKind::Path
            {
                let uw = super::u_w_invariants(&self.algebra, &class.rep)?;
                (Some(uw.w_in_u), Some(uw.s2_in_top))
            } else {
                (None, None)
            };
            out.push(ClassRecord {
                dim: dim.clone(),
                index,
                aut: class.aut.to_string(),
                key_digest: digest.iter().map(|b| format!("{b:02x}")).collect(),
                in_i,
                in_j,
            });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::IQuiver;
    use crate::rep::aut_order_by_endomorphisms;

    #[test]
    fn census_examples() {
        let lam = RepContext::new(Algebra::bar(&IQuiver::single_vertex()), 2).unwrap();
        assert_eq!(lam.census(&DimVector(vec![2])).unwrap().len(), 2);
        assert_eq!(lam.census(&DimVector(vec![0])).unwrap().len(), 1);
        let a2 = RepContext::new(Algebra::path(IQuiver::a2().quiver()), 2).unwrap();
        assert_eq!(a2.census(&DimVector(vec![1, 1])).unwrap().len(), 2);
    }

    #[test]
    fn census_is_complete() {
        // orbit sizes add up to the number of valid tuples, and |Aut| agrees
        // with a direct count of invertible endomorphisms
        for (alg, dims) in [
            (Algebra::bar(&IQuiver::single_vertex()), vec![3]),
            (Algebra::path(IQuiver::rank_two(1, 1).quiver()), vec![2, 1]),
            (Algebra::bar(&IQuiver::a2()), vec![1, 2]),
            (Algebra::bar(&IQuiver::two_swapped()), vec![2, 1]),
        ] {
            for q in [2u64, 3] {
                let ctx = RepContext::new(alg.clone(), q).unwrap();
                let census = ctx.census(&DimVector(dims.iter().map(|&d| d as i64).collect())).unwrap();
                let mut brute = 0u128;
                for code in 0..census.space_size() as u64 {
                    let n: usize = alg
                        .arrows
                        .iter()
                        .map(|a| dims[a.tgt] * dims[a.src])
                        .sum();
                    let r = Rep::from_digits(&alg, q as u32, &dims, &code_to_digits(code, q as u32, n));
                    if r.is_valid(&alg) {
                        brute += 1;
                    }
                }
                assert_eq!(census.valid_count(), brute);
                let total: u128 = census
                    .classes()
                    .iter()
                    .map(|c| census.group_order() / c.aut)
                    .sum();
                assert_eq!(total, brute);
                for c in census.classes() {
                    assert_eq!(aut_order_by_endomorphisms(&alg, &c.rep, 1 << 20).unwrap(), c.aut);
                }
            }
        }
    }

    #[test]
    fn isomorphic_tuples_share_a_class() {
        let alg = Algebra::path(IQuiver::a2().quiver());
        let ctx = RepContext::new(alg.clone(), 3).unwrap();
        let a = Rep::new(&alg, 3, vec![1, 1], vec![crate::fq::FqMatrix::from_rows(3, &[vec![1]])]).unwrap();
        let b = Rep::new(&alg, 3, vec![1, 1], vec![crate::fq::FqMatrix::from_rows(3, &[vec![2]])]).unwrap();
        assert_eq!(ctx.classify(&a).unwrap(), ctx.classify(&b).unwrap());
        let z = Rep::zero(&alg, 3, vec![1, 1]);
        assert_ne!(ctx.classify(&a).unwrap(), ctx.classify(&z).unwrap());
    }

    #[test]
    fn budget_guard() {
        let ctx = RepContext::with_budget(Algebra::bar(&IQuiver::single_vertex()), 2, 1 << 8).unwrap();
        let err = ctx.census(&DimVector(vec![3])).err().unwrap();
        assert!(err.is_budget());
        assert!(RepContext::new(Algebra::bar(&IQuiver::single_vertex()), 4).is_err());
    }
}
