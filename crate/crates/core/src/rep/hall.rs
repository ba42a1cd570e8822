use std::collections::BTreeMap;

use super::census::{ClassId, RepContext};
use super::{code_to_digits, combine, hom_basis, Rep};
use crate::error::{Error, Result};
use crate::fq::{subspaces, FqMatrix, Subspace};
use crate::quiver::Algebra;

/// Filtration counts of one module `Z`: for each (quotient `X`, sub `Y`) the
/// number of submodules `L` with `L = Y` and `Z/L = X`.
#[derive(Clone, Debug, Default)]
pub struct HallTable {
    counts: BTreeMap<(ClassId, ClassId), u128>,
    submodules: u128,
}

impl HallTable {
    pub(crate) fn compute(ctx: &RepContext, z: &ClassId) -> Result<Self> {
        let alg = ctx.algebra();
        let rep = ctx.rep(z)?;
        let mut table = HallTable::default();
        let mut err = None;
        for_each_submodule(alg, &rep, |subs| {
            if err.is_some() {
                return;
            }
            let sub = rep.restrict(alg, subs);
            let quot = rep.quotient(alg, subs);
            match (ctx.classify(&quot), ctx.classify(&sub)) {
                (Ok(x), Ok(y)) => {
                    *table.counts.entry((x, y)).or_insert(0) += 1;
                    table.submodules += 1;
                }
                (Err(e), _) | (_, Err(e)) => err = Some(e),
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(table),
        }
    }

    pub fn count(&self, x: &ClassId, y: &ClassId) -> u128 {
        self.counts
            .get(&(x.clone(), y.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// All nonzero entries, keyed by (quotient, sub).
    pub fn entries(&self) -> &BTreeMap<(ClassId, ClassId), u128> {
        &self.counts
    }

    /// Total number of submodules.
    pub fn submodules(&self) -> u128 {
        self.submodules
    }
}

/// Calls `f` on every tuple of per-vertex subspaces closed under the arrows.
pub fn for_each_submodule(alg: &Algebra, rep: &Rep, mut f: impl FnMut(&[Subspace])) {
    let q = rep.q();
    let dims = rep.dims().to_vec();
    let lattices: Vec<Vec<Subspace>> = dims
        .iter()
        .map(|&d| (0..=d).flat_map(|k| subspaces(q, d, k)).collect())
        .collect();
    let mut chosen: Vec<Subspace> = Vec::with_capacity(dims.len());
    descend(alg, rep, &lattices, &mut chosen, &mut f);
}

fn descend(
    alg: &Algebra,
    rep: &Rep,
    lattices: &[Vec<Subspace>],
    chosen: &mut Vec<Subspace>,
    f: &mut impl FnMut(&[Subspace]),
) {
    let v = chosen.len();
    if v == lattices.len() {
        f(chosen);
        return;
    }
    for s in &lattices[v] {
        chosen.push(s.clone());
        let ok = alg.arrows.iter().enumerate().all(|(a, arrow)| {
            if arrow.src.max(arrow.tgt) != v {
                return true;
            }
            let b = chosen[arrow.src].basis();
            (0..b.rows()).all(|r| chosen[arrow.tgt].contains(&rep.mat(a).mul_vec(b.row(r))))
        });
        if ok {
            descend(alg, rep, lattices, chosen, f);
        }
        chosen.pop();
    }
}

/// For a pair `(A, B)`, the number of `s in Hom(A,B)` with given kernel and
/// cokernel classes.
#[derive(Clone, Debug, Default)]
pub struct KernelCokernelCounts {
    counts: BTreeMap<(ClassId, ClassId), u128>,
    hom_dim: usize,
}

impl KernelCokernelCounts {
    pub(crate) fn compute(ctx: &RepContext, a: &ClassId, b: &ClassId) -> Result<Self> {
        let alg = ctx.algebra();
        let q = ctx.q();
        let (ra, rb) = (ctx.rep(a)?, ctx.rep(b)?);
        let basis = hom_basis(alg, &ra, &rb)?;
        let size = (q as u128).pow(basis.len() as u32);
        if size > ctx.budget() {
            return Err(Error::Budget {
                what: format!("Hom({}, {}) enumeration", a.dim, b.dim),
                size,
                limit: ctx.budget(),
            });
        }
        let mut counts = BTreeMap::new();
        for code in 0..size as u64 {
            let maps: Vec<FqMatrix> = if basis.is_empty() {
                ra.dims()
                    .iter()
                    .zip(rb.dims())
                    .map(|(&da, &db)| FqMatrix::zeros(q, db, da))
                    .collect()
            } else {
                combine(q, &basis, &code_to_digits(code, q, basis.len()))
            };
            let kernels: Vec<Subspace> = maps
                .iter()
                .zip(ra.dims())
                .map(|(m, &d)| {
                    let k = m.kernel();
                    if k.rows() == 0 {
                        Subspace::zero(q, d)
                    } else {
                        Subspace::span(&k)
                    }
                })
                .collect();
            let images: Vec<Subspace> = maps
                .iter()
                .zip(rb.dims())
                .map(|(m, &d)| {
                    if m.cols() == 0 {
                        Subspace::zero(q, d)
                    } else {
                        Subspace::span(&m.transpose())
                    }
                })
                .collect();
            let n = ctx.classify(&ra.restrict(alg, &kernels))?;
            let l = ctx.classify(&rb.quotient(alg, &images))?;
            *counts.entry((n, l)).or_insert(0) += 1;
        }
        Ok(Self {
            counts,
            hom_dim: basis.len(),
        })
    }

    pub fn count(&self, n: &ClassId, l: &ClassId) -> u128 {
        self.counts
            .get(&(n.clone(), l.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Entries keyed by (kernel, cokernel).
    pub fn entries(&self) -> &BTreeMap<(ClassId, ClassId), u128> {
        &self.counts
    }

    pub fn hom_dim(&self) -> usize {
        self.hom_dim
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DimVector, IQuiver};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn single_path(q: u64) -> RepContext {
        RepContext::new(Algebra::path(IQuiver::single_vertex().quiver()), q).unwrap()
    }

    fn single_lambda(q: u64) -> RepContext {
        RepContext::new(Algebra::bar(&IQuiver::single_vertex()), q).unwrap()
    }

    #[test]
    fn hall_numbers() {
        for q in [2u64, 3] {
            let ctx = single_path(q);
            let s = ctx.simple(0).unwrap();
            let ss = ctx.multiple(&s, 2).unwrap();
            assert_eq!(ctx.hall_number(&ss, &s, &s).unwrap(), q as u128 + 1);
            let zero = ClassId::zero(1);
            assert_eq!(ctx.hall_number(&ss, &zero, &ss).unwrap(), 1);
            assert_eq!(ctx.hall_number(&ss, &ss, &zero).unwrap(), 1);

            let lam = single_lambda(q);
            let s = lam.simple(0).unwrap();
            let two = DimVector(vec![2]);
            let ss = lam.multiple(&s, 2).unwrap();
            let e = lam
                .classes(&two)
                .unwrap()
                .into_iter()
                .find(|c| *c != ss)
                .unwrap();
            assert_eq!(lam.hall_number(&e, &s, &s).unwrap(), 1);
        }
    }

    #[test]
    fn extension_counts_with_fixed_middle() {
        let q = 2u64;
        let ctx = single_path(q);
        let s = ctx.simple(0).unwrap();
        let ss = ctx.multiple(&s, 2).unwrap();
        let (ext, hom) = ctx.ext1_count_middle(&s, &s, &ss).unwrap();
        assert_eq!(ext, BigRational::from_integer(BigInt::from(1)));
        assert_eq!(hom, 2);

        let lam = single_lambda(q);
        let s = lam.simple(0).unwrap();
        let ss = lam.multiple(&s, 2).unwrap();
        let e = lam
            .classes(&DimVector(vec![2]))
            .unwrap()
            .into_iter()
            .find(|c| *c != ss)
            .unwrap();
        let (ext, _) = lam.ext1_count_middle(&s, &s, &e).unwrap();
        assert_eq!(ext, BigRational::from_integer(BigInt::from(q - 1)));
    }

    #[test]
    fn kernel_cokernel_examples() {
        let q = 3u64;
        let ctx = single_path(q);
        let zero = ClassId::zero(1);
        let s = ctx.simple(0).unwrap();
        let kc = ctx.kernel_cokernel_counts(&s, &s).unwrap();
        assert_eq!(kc.count(&zero, &zero), q as u128 - 1);
        assert_eq!(kc.count(&s, &s), 1);
        let ss = ctx.multiple(&s, 2).unwrap();
        let kc = ctx.kernel_cokernel_counts(&ss, &s).unwrap();
        assert_eq!(kc.count(&s, &zero), (q * q - 1) as u128);
        assert_eq!(kc.count(&ss, &s), 1);

        let two = RepContext::new(Algebra::path(IQuiver::two_swapped().quiver()), 2).unwrap();
        let (s1, s2) = (two.simple(0).unwrap(), two.simple(1).unwrap());
        let kc = two.kernel_cokernel_counts(&s1, &s2).unwrap();
        assert_eq!(kc.entries().len(), 1);
        assert_eq!(kc.count(&s1, &s2), 1);
    }

    #[test]
    fn submodule_totals_match_direct_count() {
        // every sub-tuple of a semisimple module is closed
        let ctx = RepContext::new(Algebra::path(IQuiver::two_swapped().quiver()), 2).unwrap();
        let z = ctx.classes(&DimVector(vec![2, 1])).unwrap()[0].clone();
        assert_eq!(ctx.hall_table(&z).unwrap().submodules(), 5 * 2);
    }
}
