//! Quivers with involution, the ıquiver algebra presentation, Cartan data and
//! Euler forms.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dimension vector (or any integer vector) indexed by vertex position.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x.max(0) as usize).collect()
    }

    /// All nonnegative vectors componentwise below `self`, in lexicographic
    /// order.
    pub fn sub_vectors(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::new()];
        for &bound in &self.0 {
            let mut next = Vec::new();
            for prefix in &out {
                for x in 0..=bound.max(0) {
                    let mut p = prefix.clone();
                    p.push(x);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(DimVector).collect()
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;
    fn sub(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite quiver without loops (oriented cycles are fine).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let index = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {name:?}")))
        };
        let mut names = HashSet::new();
        let mut out = Vec::new();
        for (name, src, tgt) in arrows {
            let name = name.as_ref().to_string();
            if !names.insert(name.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow {name:?}")));
            }
            let (src, tgt) = (index(src.as_ref())?, index(tgt.as_ref())?);
            if src == tgt {
                return Err(Error::InvalidQuiver(format!("arrow {name:?} is a loop")));
            }
            out.push(Arrow { name, src, tgt });
        }
        Ok(Self {
            vertices,
            arrows: out,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Arrows `i -> j` in declaration order.
    pub fn arrows_between(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&k| self.arrows[k].src == i && self.arrows[k].tgt == j)
            .collect()
    }

    pub fn has_oriented_cycle(&self) -> bool {
        // Kahn's algorithm: a cycle remains iff some vertex never reaches
        // in-degree zero.
        let n = self.n_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.tgt] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut removed = 0;
        while let Some(i) = stack.pop() {
            removed += 1;
            for a in self.arrows.iter().filter(|a| a.src == i) {
                indeg[a.tgt] -= 1;
                if indeg[a.tgt] == 0 {
                    stack.push(a.tgt);
                }
            }
        }
        removed < n
    }

    pub fn cartan_matrix(&self) -> CartanMatrix {
        let n = self.n_vertices();
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for a in &self.arrows {
            c[a.src][a.tgt] -= 1;
            c[a.tgt][a.src] -= 1;
        }
        CartanMatrix(c)
    }

    /// `<x, y>_Q = sum_i x_i y_i - sum_{a: i -> j} x_i y_j`
    pub fn euler_form(&self, x: &DimVector, y: &DimVector) -> i64 {
        let diag: i64 = x.0.iter().zip(&y.0).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|a| x.0[a.src] * y.0[a.tgt]).sum();
        diag - off
    }
}

/// Symmetric generalized Cartan matrix `c_ij = 2 delta_ij - n_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix(pub Vec<Vec<i64>>);

impl CartanMatrix {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }
}

/// An involutive automorphism of a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    vertex: Vec<usize>,
    arrow: Vec<usize>,
}

impl Involution {
    pub fn identity(q: &Quiver) -> Self {
        Self {
            vertex: (0..q.n_vertices()).collect(),
            arrow: (0..q.arrows().len()).collect(),
        }
    }

    /// Build from a vertex permutation; the `k`-th arrow `i -> j` goes to
    /// the `k`-th arrow `tau i -> tau j`.
    pub fn from_vertex_map(q: &Quiver, vertex: Vec<usize>) -> Result<Self> {
        let n = q.n_vertices();
        if vertex.len() != n || vertex.iter().any(|&v| v >= n) {
            return Err(Error::NotAnInvolution(
                "vertex map has the wrong shape".into(),
            ));
        }
        for i in 0..n {
            if vertex[vertex[i]] != i {
                return Err(Error::NotAnInvolution(format!(
                    "tau^2 moves vertex {:?}",
                    q.vertices()[i]
                )));
            }
        }
        let mut arrow = vec![usize::MAX; q.arrows().len()];
        for i in 0..n {
            for j in 0..n {
                let here = q.arrows_between(i, j);
                if here.is_empty() {
                    continue;
                }
                let there = q.arrows_between(vertex[i], vertex[j]);
                if there.len() != here.len() {
                    return Err(Error::NotAnInvolution(format!(
                        "{} arrow(s) {} -> {} but {} arrow(s) {} -> {}",
                        here.len(),
                        q.vertices()[i],
                        q.vertices()[j],
                        there.len(),
                        q.vertices()[vertex[i]],
                        q.vertices()[vertex[j]]
                    )));
                }
                for (a, b) in here.into_iter().zip(there) {
                    arrow[a] = b;
                }
            }
        }
        Ok(Self { vertex, arrow })
    }

    /// Build from explicit vertex and arrow maps, checking that they form an
    /// involutive automorphism.
    pub fn from_maps(q: &Quiver, vertex: Vec<usize>, arrow: Vec<usize>) -> Result<Self> {
        let base = Self::from_vertex_map(q, vertex)?;
        if arrow.len() != q.arrows().len() {
            return Err(Error::NotAnInvolution(
                "arrow map has the wrong shape".into(),
            ));
        }
        for (a, &b) in arrow.iter().enumerate() {
            let (x, y) = (&q.arrows()[a], q.arrows().get(b));
            let Some(y) = y else {
                return Err(Error::NotAnInvolution(format!(
                    "arrow index {b} out of range"
                )));
            };
            if y.src != base.vertex[x.src] || y.tgt != base.vertex[x.tgt] {
                return Err(Error::NotAnInvolution(format!(
                    "arrow {:?} is not sent to an arrow between the image vertices",
                    x.name
                )));
            }
            if arrow[b] != a {
                return Err(Error::NotAnInvolution(format!(
                    "tau^2 moves arrow {:?}",
                    x.name
                )));
            }
        }
        Ok(Self {
            vertex: base.vertex,
            arrow,
        })
    }

    pub fn vertex(&self, i: usize) -> usize {
        self.vertex[i]
    }

    pub fn arrow(&self, a: usize) -> usize {
        self.arrow[a]
    }

    pub fn is_identity(&self) -> bool {
        self.vertex.iter().enumerate().all(|(i, &t)| i == t)
    }
}

/// A quiver together with an involution and chosen orbit representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IQuiver {
    quiver: Quiver,
    tau: Involution,
    reps: Vec<usize>,
}

impl IQuiver {
    /// Validate and pick the lexicographically least vertex name of each
    /// orbit as its representative.
    pub fn new(quiver: Quiver, tau: Involution) -> Result<Self> {
        let n = quiver.n_vertices();
        let mut reps = Vec::new();
        for i in 0..n {
            let j = tau.vertex(i);
            let names = quiver.vertices();
            if i == j || names[i] < names[j] {
                reps.push(i);
            }
        }
        Ok(Self { quiver, tau, reps })
    }

    pub fn with_identity(quiver: Quiver) -> Self {
        let tau = Involution::identity(&quiver);
        Self::new(quiver, tau).expect("identity is an involution")
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn tau(&self) -> &Involution {
        &self.tau
    }

    pub fn n_vertices(&self) -> usize {
        self.quiver.n_vertices()
    }

    /// Orbit representatives, one per orbit, in vertex order.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn is_rep(&self, i: usize) -> bool {
        self.reps.contains(&i)
    }

    pub fn is_split(&self) -> bool {
        self.tau.is_identity()
    }

    pub fn cartan_matrix(&self) -> CartanMatrix {
        self.quiver.cartan_matrix()
    }

    pub fn euler_form(&self, x: &DimVector, y: &DimVector) -> i64 {
        self.quiver.euler_form(x, y)
    }

    pub fn simple(&self, i: usize) -> DimVector {
        DimVector::unit(self.n_vertices(), i)
    }

    /// Dimension vector of the generalized simple `E_i`: `S_i + S_{tau i}`.
    pub fn e_dim(&self, i: usize) -> DimVector {
        &self.simple(i) + &self.simple(self.tau.vertex(i))
    }

    /// `<E_i, M>` (left) or `<M, E_i>` (right) through the restriction to
    /// `kQ`: `<S_i, m>_Q` and `<m, S_{tau i}>_Q`.
    pub fn euler_pairing_e(&self, i: usize, m: &DimVector, side: Side) -> i64 {
        match side {
            Side::Left => self.euler_form(&self.simple(i), m),
            Side::Right => self.euler_form(m, &self.simple(self.tau.vertex(i))),
        }
    }

    /// Exponent `e` with `[E_i] * [M] = v^e [M] * [E_i]`:
    /// `<S_{tau i} - S_i, m>_Q + <m, S_{tau i} - S_i>_Q`.
    pub fn e_commute_exponent(&self, i: usize, m: &DimVector) -> i64 {
        let diff = &self.simple(self.tau.vertex(i)) - &self.simple(i);
        self.euler_form(&diff, m) + self.euler_form(m, &diff)
    }

    pub fn to_config(&self) -> QuiverConfig {
        let q = &self.quiver;
        let tau = if self.is_split() {
            None
        } else {
            Some(
                (0..q.n_vertices())
                    .map(|i| {
                        (
                            q.vertices()[i].clone(),
                            q.vertices()[self.tau.vertex(i)].clone(),
                        )
                    })
                    .collect(),
            )
        };
        QuiverConfig {
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| {
                    (
                        a.name.clone(),
                        q.vertices()[a.src].clone(),
                        q.vertices()[a.tgt].clone(),
                    )
                })
                .collect(),
            tau,
        }
    }

    /// The single vertex with no arrows.
    pub fn single_vertex() -> Self {
        Self::with_identity(Quiver::new(&["1"], &[]).expect("valid"))
    }

    /// `1 -> 2`
    pub fn a2() -> Self {
        Self::with_identity(Quiver::new(&["1", "2"], &[("alpha", "1", "2")]).expect("valid"))
    }

    /// `a` arrows `1 -> 2` and `b` arrows `2 -> 1`, trivial involution.
    pub fn rank_two(a: usize, b: usize) -> Self {
        let mut arrows = Vec::new();
        for i in 1..=a {
            arrows.push((format!("alpha{i}"), "1".to_string(), "2".to_string()));
        }
        for j in 1..=b {
            arrows.push((format!("beta{j}"), "2".to_string(), "1".to_string()));
        }
        Self::with_identity(
            Quiver::new(&["1".to_string(), "2".to_string()], &arrows).expect("valid"),
        )
    }

    /// The oriented 2-cycle `1 <-> 2` with trivial involution.
    pub fn cyclic_c2() -> Self {
        Self::rank_two(1, 1)
    }

    /// Two vertices, no arrows, swapped by the involution.
    pub fn two_swapped() -> Self {
        let q = Quiver::new(&["1", "2"], &[]).expect("valid");
        let tau = Involution::from_vertex_map(&q, vec![1, 0]).expect("valid");
        Self::new(q, tau).expect("valid")
    }

    pub fn from_config(cfg: &QuiverConfig) -> Result<Self> {
        let q = Quiver::new(&cfg.vertices, &cfg.arrows)?;
        let tau = match &cfg.tau {
            None => Involution::identity(&q),
            Some(map) => {
                let mut vertex: Vec<usize> = (0..q.n_vertices()).collect();
                for (from, to) in map {
                    let i = q.vertex_index(from).ok_or_else(|| {
                        Error::InvalidQuiver(format!("tau mentions unknown vertex {from:?}"))
                    })?;
                    let j = q.vertex_index(to).ok_or_else(|| {
                        Error::InvalidQuiver(format!("tau mentions unknown vertex {to:?}"))
                    })?;
                    vertex[i] = j;
                }
                Involution::from_vertex_map(&q, vertex)?
            }
        };
        Self::new(q, tau)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// On-disk quiver description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverConfig {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<BTreeMap<String, String>>,
}

impl QuiverConfig {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

/// One arrow of the algebra's quiver, loops allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgArrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A linear combination of parallel paths; each path lists arrows in the
/// order they are traversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<usize>)>,
}

/// Which algebra a representation lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// The path algebra `kQ` (nilpotent representations).
    Path,
    /// The ıquiver algebra `kQbar / Ibar`.
    IQuiver,
}

/// A bound quiver algebra: quiver (loops allowed) plus relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub kind: AlgebraKind,
    pub n_vertices: usize,
    pub arrows: Vec<AlgArrow>,
    pub relations: Vec<Relation>,
    /// Whether representations must be checked for nilpotency (the algebra
    /// is infinite dimensional without it).
    pub check_nilpotent: bool,
}

impl Algebra {
    pub fn path(q: &Quiver) -> Self {
        Self {
            kind: AlgebraKind::Path,
            n_vertices: q.n_vertices(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| AlgArrow {
                    name: a.name.clone(),
                    src: a.src,
                    tgt: a.tgt,
                })
                .collect(),
            relations: Vec::new(),
            check_nilpotent: q.has_oriented_cycle(),
        }
    }

    /// `Qbar`: the arrows of `Q`, then `eps_i: i -> tau i` for every vertex.
    /// Relations: `eps_i eps_{tau i}` for all `i`, and
    /// `eps_i alpha - tau(alpha) eps_j` for every `alpha: j -> i`.
    pub fn bar(iq: &IQuiver) -> Self {
        let q = iq.quiver();
        let tau = iq.tau();
        let n_q1 = q.arrows().len();
        let mut arrows: Vec<AlgArrow> = q
            .arrows()
            .iter()
            .map(|a| AlgArrow {
                name: a.name.clone(),
                src: a.src,
                tgt: a.tgt,
            })
            .collect();
        for i in 0..q.n_vertices() {
            arrows.push(AlgArrow {
                name: format!("eps{}", q.vertices()[i]),
                src: i,
                tgt: tau.vertex(i),
            });
        }
        let eps = |i: usize| n_q1 + i;
        let mut relations = Vec::new();
        for i in 0..q.n_vertices() {
            // eps_i after eps_{tau i}
            relations.push(Relation {
                terms: vec![(1, vec![eps(tau.vertex(i)), eps(i)])],
            });
        }
        for (a, arrow) in q.arrows().iter().enumerate() {
            let (j, i) = (arrow.src, arrow.tgt);
            relations.push(Relation {
                terms: vec![(1, vec![a, eps(i)]), (-1, vec![eps(j), tau.arrow(a)])],
            });
        }
        Self {
            kind: AlgebraKind::IQuiver,
            n_vertices: q.n_vertices(),
            arrows,
            relations,
            check_nilpotent: q.has_oriented_cycle(),
        }
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Render a relation like `eps2*alpha - alpha*eps1` (composition order).
    pub fn render_relation(&self, rel: &Relation) -> String {
        let mut out = String::new();
        for (idx, (c, path)) in rel.terms.iter().enumerate() {
            let word: Vec<&str> = path
                .iter()
                .rev()
                .map(|&a| self.arrows[a].name.as_str())
                .collect();
            let word = word.join("*");
            let sign = if *c < 0 { "-" } else { "+" };
            let mag = c.abs();
            let body = if mag == 1 {
                word
            } else {
                format!("{mag}*{word}")
            };
            if idx == 0 {
                if *c < 0 {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(&format!(" {sign} {body}"));
            }
        }
        out
    }

    /// Every path in every relation is a path, and all paths in one relation
    /// share endpoints.
    pub fn relations_are_parallel(&self) -> bool {
        self.relations.iter().all(|rel| {
            let ends: Vec<Option<(usize, usize)>> = rel
                .terms
                .iter()
                .map(|(_, p)| {
                    let first = *p.first()?;
                    for w in p.windows(2) {
                        if self.arrows[w[0]].tgt != self.arrows[w[1]].src {
                            return None;
                        }
                    }
                    Some((self.arrows[first].src, self.arrows[*p.last()?].tgt))
                })
                .collect();
            ends.iter().all(|e| e.is_some() && *e == ends[0])
        })
    }
}
