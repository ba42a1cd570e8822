//! Representations of bound quivers over `F_q` and their linear algebra:
//! sub and quotient representations, Hom, Ext^1, tops and radicals.

mod census;
mod hall;
mod invariants;

pub use census::{Census, ClassId, ClassRecord, IsoClass, RepContext, DEFAULT_SPACE_BUDGET};
pub use hall::{for_each_submodule, HallTable, KernelCokernelCounts};
pub use invariants::{
    indecomposable_projective, projective_cover_pd_le_one, res_h_is_free, res_h_key,
    u_w_invariants, UwInvariants,
};

use crate::error::{Error, Result};
use crate::fq::{FqMatrix, Subspace};
use crate::quiver::{Algebra, DimVector};

/// A representation: one vector space `F_q^{d_v}` per vertex and one matrix
/// per arrow (`dims[tgt] x dims[src]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rep {
    q: u32,
    dims: Vec<usize>,
    mats: Vec<FqMatrix>,
}

impl Rep {
    pub fn new(alg: &Algebra, q: u32, dims: Vec<usize>, mats: Vec<FqMatrix>) -> Result<Self> {
        if dims.len() != alg.n_vertices || mats.len() != alg.arrows.len() {
            return Err(Error::ContextMismatch(
                "representation does not fit the algebra".into(),
            ));
        }
        for (m, a) in mats.iter().zip(&alg.arrows) {
            if m.q() != q || m.rows() != dims[a.tgt] || m.cols() != dims[a.src] {
                return Err(Error::ContextMismatch(format!(
                    "matrix for {} has the wrong shape",
                    a.name
                )));
            }
        }
        Ok(Self { q, dims, mats })
    }

    pub fn zero(alg: &Algebra, q: u32, dims: Vec<usize>) -> Self {
        let mats = alg
            .arrows
            .iter()
            .map(|a| FqMatrix::zeros(q, dims[a.tgt], dims[a.src]))
            .collect();
        Self { q, dims, mats }
    }

    pub fn simple(alg: &Algebra, q: u32, i: usize) -> Self {
        let mut dims = vec![0; alg.n_vertices];
        dims[i] = 1;
        Self::zero(alg, q, dims)
    }

    /// Rebuild from base-`q` digits (arrow order, row-major).
    pub fn from_digits(alg: &Algebra, q: u32, dims: &[usize], digits: &[u32]) -> Self {
        let mut mats = Vec::with_capacity(alg.arrows.len());
        let mut pos = 0;
        for a in &alg.arrows {
            let (r, c) = (dims[a.tgt], dims[a.src]);
            mats.push(FqMatrix::from_vec(q, r, c, digits[pos..pos + r * c].to_vec()));
            pos += r * c;
        }
        Self {
            q,
            dims: dims.to_vec(),
            mats,
        }
    }

    pub fn digits(&self) -> Vec<u32> {
        self.mats.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    /// Base-`q` number of the digit string, most significant digit first.
    pub fn code(&self) -> u64 {
        digits_to_code(&self.digits(), self.q)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn mats(&self) -> &[FqMatrix] {
        &self.mats
    }

    pub fn mat(&self, arrow: usize) -> &FqMatrix {
        &self.mats[arrow]
    }

    /// Matrix of a path given in traversal order.
    pub fn path_matrix(&self, alg: &Algebra, path: &[usize]) -> FqMatrix {
        let start = alg.arrows[path[0]].src;
        let mut acc = FqMatrix::identity(self.q, self.dims[start]);
        for &a in path {
            acc = self.mats[a].mul(&acc);
        }
        acc
    }

    pub fn satisfies_relations(&self, alg: &Algebra) -> bool {
        alg.relations.iter().all(|rel| {
            let mut sum: Option<FqMatrix> = None;
            for (c, path) in &rel.terms {
                let m = self
                    .path_matrix(alg, path)
                    .scale(c.rem_euclid(self.q as i64) as u32);
                sum = Some(match sum {
                    None => m,
                    Some(s) => s.add(&m),
                });
            }
            sum.map_or(true, |s| s.is_zero())
        })
    }

    /// Every sufficiently long path acts as zero: the radical series reaches 0.
    pub fn is_nilpotent(&self, alg: &Algebra) -> bool {
        let mut layer: Vec<Subspace> = self
            .dims
            .iter()
            .map(|&d| Subspace::full(self.q, d))
            .collect();
        loop {
            let next = self.arrow_image(alg, &layer);
            let before: usize = layer.iter().map(Subspace::dim).sum();
            let after: usize = next.iter().map(Subspace::dim).sum();
            if after == 0 {
                return true;
            }
            if after == before {
                return false;
            }
            layer = next;
        }
    }

    pub fn is_valid(&self, alg: &Algebra) -> bool {
        self.satisfies_relations(alg) && (!alg.check_nilpotent || self.is_nilpotent(alg))
    }

    /// Per vertex, the span of all arrow images of the given subspaces.
    fn arrow_image(&self, alg: &Algebra, layer: &[Subspace]) -> Vec<Subspace> {
        let mut rows: Vec<Vec<Vec<u32>>> = vec![Vec::new(); self.dims.len()];
        for (a, arrow) in alg.arrows.iter().enumerate() {
            let basis = layer[arrow.src].basis();
            for r in 0..basis.rows() {
                rows[arrow.tgt].push(self.mats[a].mul_vec(basis.row(r)));
            }
        }
        rows.into_iter()
            .zip(&self.dims)
            .map(|(vs, &d)| span_of(self.q, d, &vs))
            .collect()
    }

    /// The radical `rad M = sum of arrow images`.
    pub fn radical(&self, alg: &Algebra) -> Vec<Subspace> {
        let full: Vec<Subspace> = self
            .dims
            .iter()
            .map(|&d| Subspace::full(self.q, d))
            .collect();
        self.arrow_image(alg, &full)
    }

    /// Dimension vector of `top M = M / rad M`, i.e. the multiplicity of each
    /// simple in the top.
    pub fn top_dims(&self, alg: &Algebra) -> Vec<usize> {
        self.radical(alg)
            .iter()
            .zip(&self.dims)
            .map(|(r, d)| d - r.dim())
            .collect()
    }

    /// Whether the per-vertex subspaces form a subrepresentation.
    pub fn is_closed(&self, alg: &Algebra, subs: &[Subspace]) -> bool {
        alg.arrows.iter().enumerate().all(|(a, arrow)| {
            let b = subs[arrow.src].basis();
            (0..b.rows()).all(|r| subs[arrow.tgt].contains(&self.mats[a].mul_vec(b.row(r))))
        })
    }

    /// The subrepresentation on closed subspaces, in their echelon bases.
    pub fn restrict(&self, alg: &Algebra, subs: &[Subspace]) -> Self {
        let dims: Vec<usize> = subs.iter().map(Subspace::dim).collect();
        let mats = alg
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let src = subs[arrow.src].basis();
                let tgt = &subs[arrow.tgt];
                let mut m = FqMatrix::zeros(self.q, dims[arrow.tgt], dims[arrow.src]);
                for j in 0..src.rows() {
                    let image = self.mats[a].mul_vec(src.row(j));
                    for (i, x) in tgt.coords(&image).into_iter().enumerate() {
                        m.set(i, j, x);
                    }
                }
                m
            })
            .collect();
        Self {
            q: self.q,
            dims,
            mats,
        }
    }

    /// The quotient by closed subspaces, in the standard complement bases.
    pub fn quotient(&self, alg: &Algebra, subs: &[Subspace]) -> Self {
        let comps: Vec<Vec<usize>> = subs.iter().map(Subspace::complement_coords).collect();
        let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
        let mats = alg
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let mut m = FqMatrix::zeros(self.q, dims[arrow.tgt], dims[arrow.src]);
                for (j, &c) in comps[arrow.src].iter().enumerate() {
                    let image = self.mats[a].column(c);
                    for (i, x) in subs[arrow.tgt].quotient_coords(&image).into_iter().enumerate() {
                        m.set(i, j, x);
                    }
                }
                m
            })
            .collect();
        Self {
            q: self.q,
            dims,
            mats,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.q, other.q);
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(x, y)| block_diag(x, y))
            .collect();
        Self {
            q: self.q,
            dims,
            mats,
        }
    }

    /// Keep only the listed arrows (e.g. restrict a `Lambda`-module to `kQ`).
    pub fn keep_arrows(&self, arrows: &[usize]) -> Self {
        Self {
            q: self.q,
            dims: self.dims.clone(),
            mats: arrows.iter().map(|&a| self.mats[a].clone()).collect(),
        }
    }

    /// Extend by zero matrices for the arrows of `alg` beyond the current ones
    /// (pull a `kQ`-module back along `Lambda -> kQ`).
    pub fn extend_by_zero(&self, alg: &Algebra) -> Self {
        let mut mats = self.mats.clone();
        for a in &alg.arrows[self.mats.len()..] {
            mats.push(FqMatrix::zeros(self.q, self.dims[a.tgt], self.dims[a.src]));
        }
        Self {
            q: self.q,
            dims: self.dims.clone(),
            mats,
        }
    }
}

pub(crate) fn digits_to_code(digits: &[u32], q: u32) -> u64 {
    digits.iter().fold(0u64, |acc, &d| acc * q as u64 + d as u64)
}

pub(crate) fn code_to_digits(mut code: u64, q: u32, len: usize) -> Vec<u32> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = (code % q as u64) as u32;
        code /= q as u64;
    }
    d
}

fn span_of(q: u32, d: usize, vectors: &[Vec<u32>]) -> Subspace {
    if vectors.is_empty() {
        return Subspace::zero(q, d);
    }
    let data = vectors.iter().flatten().copied().collect();
    Subspace::span(&FqMatrix::from_vec(q, vectors.len(), d, data))
}

fn block_diag(x: &FqMatrix, y: &FqMatrix) -> FqMatrix {
    let mut m = FqMatrix::zeros(x.q(), x.rows() + y.rows(), x.cols() + y.cols());
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            m.set(i, j, x.get(i, j));
        }
    }
    for i in 0..y.rows() {
        for j in 0..y.cols() {
            m.set(x.rows() + i, x.cols() + j, y.get(i, j));
        }
    }
    m
}

/// Unknowns laid out as a list of matrix blocks, flattened row-major.
struct Blocks {
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    len: usize,
}

impl Blocks {
    fn new(shapes: Vec<(usize, usize)>) -> Self {
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut len = 0;
        for &(r, c) in &shapes {
            offsets.push(len);
            len += r * c;
        }
        Self {
            shapes,
            offsets,
            len,
        }
    }

    fn unpack(&self, q: u32, x: &[u32]) -> Vec<FqMatrix> {
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &o)| FqMatrix::from_vec(q, r, c, x[o..o + r * c].to_vec()))
            .collect()
    }

    fn unit(&self, q: u32, k: usize) -> Vec<FqMatrix> {
        let mut x = vec![0; self.len];
        x[k] = 1;
        self.unpack(q, &x)
    }
}

/// Matrix (rows = output coordinates) of a linear map given on unit vectors.
fn linear_map_matrix(
    q: u32,
    inputs: &Blocks,
    out_len: usize,
    f: impl Fn(&[FqMatrix]) -> Vec<u32>,
) -> FqMatrix {
    let mut m = FqMatrix::zeros(q, out_len, inputs.len);
    for k in 0..inputs.len {
        let image = f(&inputs.unit(q, k));
        for (i, x) in image.into_iter().enumerate() {
            m.set(i, k, x);
        }
    }
    m
}

/// `h -> (N(a) h_src - h_tgt M(a))_a` on tuples `h_v : M_v -> N_v`.
fn intertwiner_defect(alg: &Algebra, m: &Rep, n: &Rep, h: &[FqMatrix]) -> Vec<u32> {
    let mut out = Vec::new();
    for (a, arrow) in alg.arrows.iter().enumerate() {
        let d = n.mats[a]
            .mul(&h[arrow.src])
            .sub(&h[arrow.tgt].mul(&m.mats[a]));
        out.extend_from_slice(d.data());
    }
    out
}

fn vertex_blocks(m: &Rep, n: &Rep) -> Blocks {
    Blocks::new(m.dims.iter().zip(&n.dims).map(|(&dm, &dn)| (dn, dm)).collect())
}

fn defect_len(alg: &Algebra, m: &Rep, n: &Rep) -> usize {
    alg.arrows
        .iter()
        .map(|a| n.dims[a.tgt] * m.dims[a.src])
        .sum()
}

fn check_same_field(m: &Rep, n: &Rep) -> Result<()> {
    if m.q != n.q || m.dims.len() != n.dims.len() || m.mats.len() != n.mats.len() {
        return Err(Error::ContextMismatch(
            "representations over different algebras or fields".into(),
        ));
    }
    Ok(())
}

/// A basis of `Hom(M, N)`; each element is a tuple of per-vertex matrices.
pub fn hom_basis(alg: &Algebra, m: &Rep, n: &Rep) -> Result<Vec<Vec<FqMatrix>>> {
    check_same_field(m, n)?;
    let blocks = vertex_blocks(m, n);
    let sys = linear_map_matrix(m.q, &blocks, defect_len(alg, m, n), |h| {
        intertwiner_defect(alg, m, n, h)
    });
    let ker = sys.kernel();
    Ok((0..ker.rows()).map(|r| blocks.unpack(m.q, ker.row(r))).collect())
}

pub fn hom_dim(alg: &Algebra, m: &Rep, n: &Rep) -> Result<usize> {
    Ok(hom_basis(alg, m, n)?.len())
}

/// Linear-algebra data for extensions `0 -> Y -> Z -> X -> 0`.
pub struct ExtData {
    /// Cocycles: arrow-indexed `phi_a : X_src -> Y_tgt` keeping the relations.
    pub cocycles: Vec<Vec<FqMatrix>>,
    /// Dimension of the coboundaries `Y(a) h_src - h_tgt X(a)`.
    pub coboundary_dim: usize,
}

impl ExtData {
    pub fn ext_dim(&self) -> usize {
        self.cocycles.len() - self.coboundary_dim
    }
}

pub fn ext_data(alg: &Algebra, x: &Rep, y: &Rep) -> Result<ExtData> {
    check_same_field(x, y)?;
    let q = x.q;
    let phi_blocks = Blocks::new(
        alg.arrows
            .iter()
            .map(|a| (y.dims[a.tgt], x.dims[a.src]))
            .collect(),
    );
    // off-diagonal block of each relation, linear in phi
    let rel_len: usize = alg
        .relations
        .iter()
        .map(|rel| {
            let p = &rel.terms[0].1;
            y.dims[alg.arrows[*p.last().expect("nonempty")].tgt] * x.dims[alg.arrows[p[0]].src]
        })
        .sum();
    let sys = linear_map_matrix(q, &phi_blocks, rel_len, |phi| {
        let mut out = Vec::new();
        for rel in &alg.relations {
            let mut sum: Option<FqMatrix> = None;
            for (c, path) in &rel.terms {
                let mut block: Option<FqMatrix> = None;
                for m in 0..path.len() {
                    let before = if m == 0 {
                        FqMatrix::identity(q, x.dims[alg.arrows[path[0]].src])
                    } else {
                        x.path_matrix(alg, &path[..m])
                    };
                    let after = if m + 1 == path.len() {
                        FqMatrix::identity(q, y.dims[alg.arrows[path[m]].tgt])
                    } else {
                        y.path_matrix(alg, &path[m + 1..])
                    };
                    let t = after.mul(&phi[path[m]]).mul(&before);
                    block = Some(match block {
                        None => t,
                        Some(b) => b.add(&t),
                    });
                }
                let t = block
                    .expect("nonempty path")
                    .scale(c.rem_euclid(q as i64) as u32);
                sum = Some(match sum {
                    None => t,
                    Some(s) => s.add(&t),
                });
            }
            out.extend_from_slice(sum.expect("nonempty relation").data());
        }
        out
    });
    let ker = sys.kernel();
    let cocycles = (0..ker.rows())
        .map(|r| phi_blocks.unpack(q, ker.row(r)))
        .collect();
    let h_blocks = vertex_blocks(x, y);
    let cob = linear_map_matrix(q, &h_blocks, phi_blocks.len, |h| {
        intertwiner_defect(alg, x, y, h)
    });
    Ok(ExtData {
        cocycles,
        coboundary_dim: cob.rank(),
    })
}

pub fn ext1_dim(alg: &Algebra, x: &Rep, y: &Rep) -> Result<usize> {
    Ok(ext_data(alg, x, y)?.ext_dim())
}

/// The middle term `[[Y(a), phi_a], [0, X(a)]]`; `Y` sits on the first
/// coordinates and is a subrepresentation with quotient `X`.
pub fn extension(alg: &Algebra, x: &Rep, y: &Rep, phi: &[FqMatrix]) -> Rep {
    let q = x.q;
    let dims: Vec<usize> = x.dims.iter().zip(&y.dims).map(|(a, b)| a + b).collect();
    let mats = alg
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let (ys, yt) = (y.dims[arrow.src], y.dims[arrow.tgt]);
            let mut m = FqMatrix::zeros(q, dims[arrow.tgt], dims[arrow.src]);
            for i in 0..yt {
                for j in 0..ys {
                    m.set(i, j, y.mats[a].get(i, j));
                }
                for j in 0..x.dims[arrow.src] {
                    m.set(i, ys + j, phi[a].get(i, j));
                }
            }
            for i in 0..x.dims[arrow.tgt] {
                for j in 0..x.dims[arrow.src] {
                    m.set(yt + i, ys + j, x.mats[a].get(i, j));
                }
            }
            m
        })
        .collect();
    Rep { q, dims, mats }
}

/// Combine basis elements with the given coefficients.
pub fn combine(q: u32, basis: &[Vec<FqMatrix>], coeffs: &[u32]) -> Vec<FqMatrix> {
    let mut out: Vec<FqMatrix> = basis[0]
        .iter()
        .map(|m| FqMatrix::zeros(q, m.rows(), m.cols()))
        .collect();
    for (b, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (o, m) in out.iter_mut().zip(b) {
            *o = o.add(&m.scale(c));
        }
    }
    out
}

/// `|Aut M|` by running through `End M` (independent of any census).
pub fn aut_order_by_endomorphisms(alg: &Algebra, m: &Rep, budget: u128) -> Result<u128> {
    let basis = hom_basis(alg, m, m)?;
    let size = (m.q as u128).pow(basis.len() as u32);
    if size > budget {
        return Err(Error::Budget {
            what: "endomorphism enumeration".into(),
            size,
            limit: budget,
        });
    }
    if basis.is_empty() {
        return Ok(1);
    }
    let mut count = 0u128;
    for code in 0..size as u64 {
        let coeffs = code_to_digits(code, m.q, basis.len());
        let f = combine(m.q, &basis, &coeffs);
        if f.iter().all(FqMatrix::is_invertible) {
            count += 1;
        }
    }
    Ok(count)
}
