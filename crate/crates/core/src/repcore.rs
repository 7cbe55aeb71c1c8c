//! Exact linear algebra over representations of the linearly oriented quiver
//! `A_n` with arrows `n -> n-1 -> ... -> 1`.
//!
//! This module is the ground-truth oracle: Hom spaces are computed by solving
//! the intertwiner equations, Ext^1 through the projective resolution, the AR
//! translate through the Nakayama construction, and decompositions by an
//! explicit split-off-a-summand algorithm. Faster combinatorial rules living
//! in the derived layer are generated from these computations and verified
//! against them, never assumed.
//!
//! Vertex `i` of the paper-side quiver (1-based) is index `i-1` here. The
//! interval module `[a,b]` is one-dimensional on the vertices `a..=b`, with
//! identity arrow maps inside the interval. Under this orientation
//! `P_i = [1,i]`, `I_i = [i,n]` and `S_i = [i,i]`.

use crate::error::{CyError, Result};
use crate::linalg::{parallel_ratio, Mat, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An indecomposable representation, in canonical form. `1 <= a <= b <= n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub a: usize,
    pub b: usize,
}

impl Interval {
    pub fn new(a: usize, b: usize) -> Interval {
        assert!(1 <= a && a <= b);
        Interval { a, b }
    }

    pub fn len(&self) -> usize {
        self.b - self.a + 1
    }

    pub fn is_projective(&self) -> bool {
        self.a == 1
    }

    pub fn is_injective(&self, n: usize) -> bool {
        self.b == n
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// A finite-dimensional representation of `A_n`: one space per vertex and one
/// matrix per arrow. `maps[v]` is the arrow `v+2 -> v+1` in 1-based naming,
/// i.e. a matrix of shape `dims[v] x dims[v+1]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Rep {
    pub n: usize,
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep(n={}, dims={:?})", self.n, self.dims)
    }
}

impl Rep {
    pub fn zero(n: usize) -> Rep {
        Rep {
            n,
            dims: vec![0; n],
            maps: (0..n.saturating_sub(1)).map(|_| Mat::zero(0, 0)).collect(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn validate(&self) -> bool {
        self.dims.len() == self.n
            && self.maps.len() == self.n.saturating_sub(1)
            && (0..self.n.saturating_sub(1))
                .all(|v| self.maps[v].rows == self.dims[v] && self.maps[v].cols == self.dims[v + 1])
    }
}

/// The interval representation `[a,b]`.
pub fn interval_rep(n: usize, a: usize, b: usize) -> Result<Rep> {
    if !(1 <= a && a <= b && b <= n) {
        return Err(CyError::InvalidInterval { a, b, n });
    }
    let dims: Vec<usize> = (1..=n).map(|v| usize::from(a <= v && v <= b)).collect();
    let maps = (0..n - 1)
        .map(|v| {
            let (r, c) = (dims[v], dims[v + 1]);
            if r == 1 && c == 1 {
                Mat::identity(1)
            } else {
                Mat::zero(r, c)
            }
        })
        .collect();
    Ok(Rep { n, dims, maps })
}

pub fn rep_of(n: usize, iv: Interval) -> Rep {
    interval_rep(n, iv.a, iv.b).expect("interval out of range")
}

/// Direct sum, summands in order.
pub fn direct_sum(n: usize, parts: &[&Rep]) -> Rep {
    assert!(parts.iter().all(|r| r.n == n));
    if parts.is_empty() {
        return Rep::zero(n);
    }
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|r| r.dims[v]).sum()).collect();
    let maps = (0..n.saturating_sub(1))
        .map(|v| {
            let mut m = Mat::zero(dims[v], dims[v + 1]);
            let (mut ro, mut co) = (0, 0);
            for r in parts {
                for i in 0..r.dims[v] {
                    for j in 0..r.dims[v + 1] {
                        m[(ro + i, co + j)] = r.maps[v][(i, j)].clone();
                    }
                }
                ro += r.dims[v];
                co += r.dims[v + 1];
            }
            m
        })
        .collect();
    Rep { n, dims, maps }
}

/// A homomorphism of representations: one block per vertex, intertwining the
/// arrow maps. `blocks[v]` has shape `target.dims[v] x source.dims[v]`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModMap {
    pub source: Rep,
    pub target: Rep,
    pub blocks: Vec<Mat>,
}

impl fmt::Debug for ModMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModMap({:?} -> {:?})", self.source, self.target)
    }
}

impl ModMap {
    pub fn new(source: Rep, target: Rep, blocks: Vec<Mat>) -> ModMap {
        let m = ModMap { source, target, blocks };
        debug_assert!(m.is_intertwiner(), "blocks do not commute with arrow maps");
        m
    }

    pub fn zero(source: &Rep, target: &Rep) -> ModMap {
        let blocks = (0..source.n).map(|v| Mat::zero(target.dims[v], source.dims[v])).collect();
        ModMap { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn identity(rep: &Rep) -> ModMap {
        let blocks = (0..rep.n).map(|v| Mat::identity(rep.dims[v])).collect();
        ModMap { source: rep.clone(), target: rep.clone(), blocks }
    }

    pub fn is_intertwiner(&self) -> bool {
        if !(self.source.validate() && self.target.validate()) {
            return false;
        }
        for v in 0..self.source.n.saturating_sub(1) {
            let lhs = &self.blocks[v] * &self.source.maps[v];
            let rhs = &self.target.maps[v] * &self.blocks[v + 1];
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    /// `self o g` (apply `g` first).
    pub fn compose(&self, g: &ModMap) -> ModMap {
        assert_eq!(g.target.dims, self.source.dims, "composition shape mismatch");
        let blocks = (0..self.source.n).map(|v| &self.blocks[v] * &g.blocks[v]).collect();
        ModMap { source: g.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn add(&self, other: &ModMap) -> ModMap {
        let blocks = (0..self.source.n).map(|v| &self.blocks[v] + &other.blocks[v]).collect();
        ModMap { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn sub(&self, other: &ModMap) -> ModMap {
        let blocks = (0..self.source.n).map(|v| &self.blocks[v] - &other.blocks[v]).collect();
        ModMap { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn scale(&self, s: &Q) -> ModMap {
        let blocks = self.blocks.iter().map(|b| b.scale(s)).collect();
        ModMap { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    fn flatten(&self) -> Vec<Q> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.push(b[(i, j)].clone());
                }
            }
        }
        out
    }
}

/// `candidate = lambda * reference`, when the two maps are parallel.
pub fn map_ratio(candidate: &ModMap, reference: &ModMap) -> Option<Q> {
    parallel_ratio(&candidate.flatten(), &reference.flatten())
}

/// Assemble a map between direct sums from blocks; `get(i, j)` is the
/// component from `src_parts[i]` to `tgt_parts[j]`.
pub fn block_map(
    src_parts: &[&Rep],
    tgt_parts: &[&Rep],
    src_sum: &Rep,
    tgt_sum: &Rep,
    get: impl Fn(usize, usize) -> Option<ModMap>,
) -> ModMap {
    let n = src_sum.n;
    let mut blocks: Vec<Mat> =
        (0..n).map(|v| Mat::zero(tgt_sum.dims[v], src_sum.dims[v])).collect();
    for (i, sp) in src_parts.iter().enumerate() {
        for (j, tp) in tgt_parts.iter().enumerate() {
            let Some(f) = get(i, j) else { continue };
            for v in 0..n {
                let off_r: usize = tgt_parts[..j].iter().map(|p| p.dims[v]).sum();
                let off_c: usize = src_parts[..i].iter().map(|p| p.dims[v]).sum();
                for r in 0..tp.dims[v] {
                    for c in 0..sp.dims[v] {
                        blocks[v][(off_r + r, off_c + c)] = f.blocks[v][(r, c)].clone();
                    }
                }
            }
        }
    }
    ModMap { source: src_sum.clone(), target: tgt_sum.clone(), blocks }
}

pub fn inclusion_into_sum(parts: &[&Rep], sum: &Rep, k: usize) -> ModMap {
    let mut blocks = Vec::new();
    for v in 0..sum.n {
        let off: usize = parts[..k].iter().map(|p| p.dims[v]).sum();
        let mut m = Mat::zero(sum.dims[v], parts[k].dims[v]);
        for i in 0..parts[k].dims[v] {
            m[(off + i, i)] = Q::one();
        }
        blocks.push(m);
    }
    ModMap { source: parts[k].clone(), target: sum.clone(), blocks }
}

pub fn projection_from_sum(parts: &[&Rep], sum: &Rep, k: usize) -> ModMap {
    let mut blocks = Vec::new();
    for v in 0..sum.n {
        let off: usize = parts[..k].iter().map(|p| p.dims[v]).sum();
        let mut m = Mat::zero(parts[k].dims[v], sum.dims[v]);
        for i in 0..parts[k].dims[v] {
            m[(i, off + i)] = Q::one();
        }
        blocks.push(m);
    }
    ModMap { source: sum.clone(), target: parts[k].clone(), blocks }
}

// ---------------------------------------------------------------------------
// Linear systems over ModMap unknowns
// ---------------------------------------------------------------------------

/// Builds the linear system whose unknowns are the entries of a candidate
/// `ModMap` from `src` to `tgt`. The intertwiner equations are always
/// included; callers may add factorization constraints.
pub struct MapSolver {
    src: Rep,
    tgt: Rep,
    offsets: Vec<usize>,
    n_unknowns: usize,
    rows: Vec<(Vec<(usize, Q)>, Q)>,
}

impl MapSolver {
    pub fn new(src: &Rep, tgt: &Rep) -> MapSolver {
        assert_eq!(src.n, tgt.n);
        let n = src.n;
        let mut offsets = Vec::with_capacity(n);
        let mut acc = 0;
        for v in 0..n {
            offsets.push(acc);
            acc += tgt.dims[v] * src.dims[v];
        }
        let mut s = MapSolver {
            src: src.clone(),
            tgt: tgt.clone(),
            offsets,
            n_unknowns: acc,
            rows: Vec::new(),
        };
        s.add_intertwiner_rows();
        s
    }

    fn unk(&self, v: usize, i: usize, j: usize) -> usize {
        self.offsets[v] + i * self.src.dims[v] + j
    }

    fn add_intertwiner_rows(&mut self) {
        let n = self.src.n;
        for v in 0..n.saturating_sub(1) {
            // f_v . alpha^src_v = alpha^tgt_v . f_{v+1}
            for i in 0..self.tgt.dims[v] {
                for j in 0..self.src.dims[v + 1] {
                    let mut row = Vec::new();
                    for k in 0..self.src.dims[v] {
                        let c = self.src.maps[v][(k, j)].clone();
                        if !c.is_zero() {
                            row.push((self.unk(v, i, k), c));
                        }
                    }
                    for k in 0..self.tgt.dims[v + 1] {
                        let c = -self.tgt.maps[v][(i, k)].clone();
                        if !c.is_zero() {
                            row.push((self.unk(v + 1, k, j), c));
                        }
                    }
                    if !row.is_empty() {
                        self.rows.push((row, Q::zero()));
                    }
                }
            }
        }
    }

    /// Constraint `g . f = h` where `g: tgt -> w`.
    pub fn require_post(&mut self, g: &ModMap, h: &ModMap) -> &mut Self {
        assert_eq!(g.source.dims, self.tgt.dims);
        assert_eq!(h.source.dims, self.src.dims);
        assert_eq!(h.target.dims, g.target.dims);
        for v in 0..self.src.n {
            for i in 0..g.target.dims[v] {
                for j in 0..self.src.dims[v] {
                    let mut row = Vec::new();
                    for k in 0..self.tgt.dims[v] {
                        let c = g.blocks[v][(i, k)].clone();
                        if !c.is_zero() {
                            row.push((self.unk(v, k, j), c));
                        }
                    }
                    self.rows.push((row, h.blocks[v][(i, j)].clone()));
                }
            }
        }
        self
    }

    /// Constraint `f . u = w` where `u: u_src -> src`.
    pub fn require_pre(&mut self, u: &ModMap, w: &ModMap) -> &mut Self {
        assert_eq!(u.target.dims, self.src.dims);
        assert_eq!(w.target.dims, self.tgt.dims);
        assert_eq!(w.source.dims, u.source.dims);
        for v in 0..self.src.n {
            for i in 0..self.tgt.dims[v] {
                for j in 0..u.source.dims[v] {
                    let mut row = Vec::new();
                    for k in 0..self.src.dims[v] {
                        let c = u.blocks[v][(k, j)].clone();
                        if !c.is_zero() {
                            row.push((self.unk(v, i, k), c));
                        }
                    }
                    self.rows.push((row, w.blocks[v][(i, j)].clone()));
                }
            }
        }
        self
    }

    /// Constraint `l . f . r = c` where `r: u -> src` and `l: tgt -> w`.
    pub fn require_sandwich(&mut self, l: &ModMap, r: &ModMap, c: &ModMap) -> &mut Self {
        assert_eq!(l.source.dims, self.tgt.dims);
        assert_eq!(r.target.dims, self.src.dims);
        for v in 0..self.src.n {
            for i in 0..l.target.dims[v] {
                for j in 0..r.source.dims[v] {
                    let mut row = Vec::new();
                    for p in 0..self.tgt.dims[v] {
                        let lc = l.blocks[v][(i, p)].clone();
                        if lc.is_zero() {
                            continue;
                        }
                        for q in 0..self.src.dims[v] {
                            let rc = &r.blocks[v][(q, j)];
                            if !rc.is_zero() {
                                row.push((self.unk(v, p, q), &lc * rc));
                            }
                        }
                    }
                    self.rows.push((row, c.blocks[v][(i, j)].clone()));
                }
            }
        }
        self
    }

    fn matrix(&self) -> (Mat, Mat) {
        let mut a = Mat::zero(self.rows.len(), self.n_unknowns);
        let mut b = Mat::zero(self.rows.len(), 1);
        for (r, (row, rhs)) in self.rows.iter().enumerate() {
            for (c, v) in row {
                let w = &a[(r, *c)] + v;
                a[(r, *c)] = w;
            }
            b[(r, 0)] = rhs.clone();
        }
        (a, b)
    }

    fn from_vec(&self, x: &[Q]) -> ModMap {
        let blocks = (0..self.src.n)
            .map(|v| {
                Mat::from_fn(self.tgt.dims[v], self.src.dims[v], |i, j| {
                    x[self.unk(v, i, j)].clone()
                })
            })
            .collect();
        ModMap { source: self.src.clone(), target: self.tgt.clone(), blocks }
    }

    /// Particular solution of all accumulated constraints.
    pub fn solve(&self) -> Option<ModMap> {
        let (a, b) = self.matrix();
        let x = a.solve(&b)?;
        Some(self.from_vec(&x.column(0)))
    }

    /// Canonical basis of the homogeneous solution space, along with the free
    /// unknown index carried by each basis vector (used for coordinates).
    pub fn nullspace(&self) -> (Vec<ModMap>, Vec<usize>) {
        debug_assert!(self.rows.iter().all(|(_, rhs)| rhs.is_zero()));
        let (a, _) = self.matrix();
        let basis = a.nullspace();
        let frees: Vec<usize> = {
            // Free unknowns are recovered from the 1-positions of the canonical
            // nullspace vectors.
            let (_, pivots) = a.rref();
            let mut is_pivot = vec![false; self.n_unknowns];
            for &p in &pivots {
                is_pivot[p] = true;
            }
            (0..self.n_unknowns).filter(|&u| !is_pivot[u]).collect()
        };
        (basis.iter().map(|v| self.from_vec(v)).collect(), frees)
    }
}

/// A Hom space with its canonical (echelon) basis.
pub struct HomBasis {
    pub basis: Vec<ModMap>,
    frees: Vec<usize>,
    offsets: Vec<usize>,
    src_dims: Vec<usize>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a map lying in the span of the basis.
    pub fn coords(&self, f: &ModMap) -> Vec<Q> {
        let coord_of = |u: usize| -> Q {
            let v = self.offsets.iter().rposition(|&o| o <= u).unwrap();
            let rel = u - self.offsets[v];
            let j = rel % self.src_dims[v];
            let i = rel / self.src_dims[v];
            f.blocks[v][(i, j)].clone()
        };
        self.frees.iter().map(|&u| coord_of(u)).collect()
    }
}

/// Canonical basis of `Hom(M, N)`, by solving the intertwiner system.
pub fn hom_space(m: &Rep, nn: &Rep) -> HomBasis {
    let solver = MapSolver::new(m, nn);
    let (basis, frees) = solver.nullspace();
    HomBasis { basis, frees, offsets: solver.offsets.clone(), src_dims: m.dims.clone() }
}

pub fn hom_dim(m: &Rep, nn: &Rep) -> usize {
    hom_space(m, nn).dim()
}

// ---------------------------------------------------------------------------
// Kernels, images, cokernels, pullbacks
// ---------------------------------------------------------------------------

/// Kernel as a representation together with its inclusion. The per-vertex
/// bases are canonical nullspace bases, so coordinates can be read off the
/// free positions.
pub fn kernel_rep(f: &ModMap) -> (Rep, ModMap) {
    let n = f.source.n;
    let mut basis_mats = Vec::with_capacity(n);
    for v in 0..n {
        let ns = f.blocks[v].nullspace();
        let k = ns.len();
        let mut m = Mat::zero(f.source.dims[v], k);
        for (j, vec) in ns.iter().enumerate() {
            for i in 0..f.source.dims[v] {
                m[(i, j)] = vec[i].clone();
            }
        }
        basis_mats.push(m);
    }
    sub_rep_from_bases(&f.source, basis_mats)
}

/// Image of `f` as a subrepresentation of the target.
pub fn image_rep(f: &ModMap) -> (Rep, ModMap) {
    let n = f.source.n;
    let basis_mats: Vec<Mat> = (0..n).map(|v| f.blocks[v].column_space()).collect();
    sub_rep_from_bases(&f.target, basis_mats)
}

/// Builds the subrepresentation spanned vertex-wise by the given column
/// bases (assumed arrow-stable), plus its inclusion.
fn sub_rep_from_bases(ambient: &Rep, basis: Vec<Mat>) -> (Rep, ModMap) {
    let n = ambient.n;
    let dims: Vec<usize> = basis.iter().map(|m| m.cols).collect();
    let mut maps = Vec::with_capacity(n.saturating_sub(1));
    for v in 0..n.saturating_sub(1) {
        // solve basis[v] . g = ambient.maps[v] . basis[v+1]
        let rhs = &ambient.maps[v] * &basis[v + 1];
        let g = basis[v].solve(&rhs).expect("subspace family is not arrow-stable");
        maps.push(g);
    }
    let sub = Rep { n, dims, maps };
    let incl = ModMap { source: sub.clone(), target: ambient.clone(), blocks: basis };
    debug_assert!(incl.is_intertwiner());
    (sub, incl)
}

/// Cokernel of `f` with its projection from the target. Quotient coordinates
/// are chosen greedily from the standard basis, lowest indices first.
pub fn cokernel_rep(f: &ModMap) -> (Rep, ModMap) {
    let n = f.source.n;
    let tgt = &f.target;
    let mut proj_blocks = Vec::with_capacity(n);
    let mut sections = Vec::with_capacity(n);
    let mut dims = Vec::with_capacity(n);
    for v in 0..n {
        let img = f.blocks[v].column_space();
        let t = tgt.dims[v];
        let r = img.cols;
        // Greedy complement from standard basis vectors.
        let mut chosen: Vec<usize> = Vec::new();
        let mut cur = img.clone();
        for e in 0..t {
            if cur.cols == t {
                break;
            }
            let mut cand = Mat::zero(t, 1);
            cand[(e, 0)] = Q::one();
            let ext = cur.hstack(&cand);
            if ext.rank() > cur.cols {
                chosen.push(e);
                cur = ext;
            }
        }
        assert_eq!(r + chosen.len(), t, "complement construction failed");
        let q_dim = chosen.len();
        dims.push(q_dim);
        // section: Q -> V picks the chosen standard vectors
        let mut sec = Mat::zero(t, q_dim);
        for (j, &e) in chosen.iter().enumerate() {
            sec[(e, j)] = Q::one();
        }
        // projection: bottom rows of [img | sec]^{-1}
        let full = img.hstack(&sec);
        let inv = full.inverse().expect("not a basis");
        let mut p = Mat::zero(q_dim, t);
        for i in 0..q_dim {
            for j in 0..t {
                p[(i, j)] = inv[(r + i, j)].clone();
            }
        }
        proj_blocks.push(p);
        sections.push(sec);
    }
    let mut maps = Vec::with_capacity(n.saturating_sub(1));
    for v in 0..n.saturating_sub(1) {
        maps.push(&(&proj_blocks[v] * &tgt.maps[v]) * &sections[v + 1]);
    }
    let quo = Rep { n, dims, maps };
    let proj = ModMap { source: tgt.clone(), target: quo.clone(), blocks: proj_blocks };
    debug_assert!(proj.is_intertwiner());
    (quo, proj)
}

/// Pullback of `f: A -> C <- B: g`, with the two projections.
pub fn pullback(f: &ModMap, g: &ModMap) -> (Rep, ModMap, ModMap) {
    assert_eq!(f.target.dims, g.target.dims);
    let a = &f.source;
    let b = &g.source;
    let sum = direct_sum(a.n, &[a, b]);
    let pa0 = projection_from_sum(&[a, b], &sum, 0);
    let pb0 = projection_from_sum(&[a, b], &sum, 1);
    let diff = f.compose(&pa0).sub(&g.compose(&pb0));
    let (p, incl) = kernel_rep(&diff);
    (p.clone(), pa0.compose(&incl), pb0.compose(&incl))
}

// ---------------------------------------------------------------------------
// Barcode decomposition
// ---------------------------------------------------------------------------

/// Interval multiset of `m`, by inclusion-exclusion on composite ranks.
pub fn barcode_multiset(m: &Rep) -> Vec<(Interval, usize)> {
    let n = m.n;
    // rank[i][j] = rank of the composite V_j -> V_i (0-based, i <= j)
    let mut rank = vec![vec![0usize; n]; n];
    for i in 0..n {
        let mut comp = Mat::identity(m.dims[i]);
        rank[i][i] = m.dims[i];
        for j in i + 1..n {
            comp = &comp * &m.maps[j - 1];
            rank[i][j] = comp.rank();
        }
    }
    let r = |i: isize, j: isize| -> usize {
        if i < 0 || j >= n as isize {
            0
        } else {
            rank[i as usize][j as usize]
        }
    };
    let mut out = Vec::new();
    for a in 0..n as isize {
        for b in a..n as isize {
            let mult = r(a, b) + r(a - 1, b + 1);
            let neg = r(a - 1, b) + r(a, b + 1);
            if mult > neg {
                out.push((Interval::new(a as usize + 1, b as usize + 1), mult - neg));
            }
        }
    }
    out
}

/// Full decomposition with an explicit inverse pair of isomorphisms
/// `to: M -> sum of bars` and `from: sum of bars -> M`.
pub struct Barcode {
    pub bars: Vec<Interval>,
    pub sum: Rep,
    pub to_sum: ModMap,
    pub from_sum: ModMap,
}

pub fn barcode_decompose(m: &Rep) -> Barcode {
    let (bars, sum, to_sum, from_sum) = decompose_rec(m);
    // Sort canonically; the permutation travels with the witness.
    let mut order: Vec<usize> = (0..bars.len()).collect();
    order.sort_by_key(|&i| (bars[i].a, bars[i].b));
    let sorted: Vec<Interval> = order.iter().map(|&i| bars[i]).collect();
    let reps: Vec<Rep> = bars.iter().map(|iv| rep_of(m.n, *iv)).collect();
    let sorted_reps: Vec<Rep> = sorted.iter().map(|iv| rep_of(m.n, *iv)).collect();
    let refs: Vec<&Rep> = reps.iter().collect();
    let sorted_refs: Vec<&Rep> = sorted_reps.iter().collect();
    let sorted_sum = direct_sum(m.n, &sorted_refs);
    // perm: sum (discovery order) -> sorted_sum
    let mut perm = ModMap::zero(&sum, &sorted_sum);
    let mut perm_inv = ModMap::zero(&sorted_sum, &sum);
    for (pos, &i) in order.iter().enumerate() {
        let inc = inclusion_into_sum(&sorted_refs, &sorted_sum, pos);
        let prj = projection_from_sum(&refs, &sum, i);
        perm = perm.add(&inc.compose(&prj));
        let inc2 = inclusion_into_sum(&refs, &sum, i);
        let prj2 = projection_from_sum(&sorted_refs, &sorted_sum, pos);
        perm_inv = perm_inv.add(&inc2.compose(&prj2));
    }
    let to_sum = perm.compose(&to_sum);
    let from_sum = from_sum.compose(&perm_inv);
    debug_assert!(to_sum.compose(&from_sum).sub(&ModMap::identity(&sorted_sum)).is_zero());
    debug_assert!(from_sum.compose(&to_sum).sub(&ModMap::identity(m)).is_zero());
    Barcode { bars: sorted, sum: sorted_sum, to_sum, from_sum }
}

/// Split one interval summand off `m` and recurse on the complement,
/// maintaining a mutually inverse pair of maps along the way.
fn decompose_rec(m: &Rep) -> (Vec<Interval>, Rep, ModMap, ModMap) {
    let n = m.n;
    if m.total_dim() == 0 {
        let zero = Rep::zero(n);
        return (Vec::new(), zero.clone(), ModMap::zero(m, &zero), ModMap::zero(&zero, m));
    }
    let a = (0..n).find(|&v| m.dims[v] > 0).unwrap();
    // Longest nonvanishing composite out of the minimal supported vertex.
    let mut comps: Vec<Mat> = vec![Mat::identity(m.dims[a])];
    for j in a + 1..n {
        let prev = comps.last().unwrap();
        comps.push(prev * &m.maps[j - 1]);
    }
    let b = (a..n).rev().find(|&j| !comps[j - a].is_zero()).unwrap();
    let cba = &comps[b - a];
    let e = (0..m.dims[b]).find(|&j| cba.column(j).iter().any(|x| !x.is_zero())).unwrap();
    // Thread of images of the chosen top vector.
    let mut thread: Vec<Option<Vec<Q>>> = vec![None; n];
    let mut w = vec![Q::zero(); m.dims[b]];
    w[e] = Q::one();
    thread[b] = Some(w);
    for v in (a..b).rev() {
        let prev = thread[v + 1].as_ref().unwrap();
        let img = &m.maps[v] * &Mat::col_vec(prev);
        thread[v] = Some(img.column(0));
    }
    let bar = Interval::new(a + 1, b + 1);
    let u = rep_of(n, bar);
    let incl_blocks: Vec<Mat> = (0..n)
        .map(|v| match &thread[v] {
            Some(col) => Mat::col_vec(col),
            None => Mat::zero(m.dims[v], 0),
        })
        .collect();
    let incl = ModMap::new(u.clone(), m.clone(), incl_blocks);
    // Retraction r: m -> U with r . incl = id. The thread is the longest bar
    // at the minimal supported vertex, so it splits off.
    let mut solver = MapSolver::new(m, &u);
    solver.require_pre(&incl, &ModMap::identity(&u));
    let r = solver.solve().expect("interval thread failed to split off");
    // Complement and its projection: kappa . p = id - incl.r
    let (k, kappa) = kernel_rep(&r);
    let defect = ModMap::identity(m).sub(&incl.compose(&r));
    let mut psolver = MapSolver::new(m, &k);
    psolver.require_post(&kappa, &defect);
    let p = psolver.solve().expect("complement projection");
    let (bars_k, sum_k, to_k, from_k) = decompose_rec(&k);
    let mut bars = vec![bar];
    bars.extend(bars_k);
    let parts = [&u, &sum_k];
    let sum = direct_sum(n, &parts);
    let i0 = inclusion_into_sum(&parts, &sum, 0);
    let i1 = inclusion_into_sum(&parts, &sum, 1);
    let p0 = projection_from_sum(&parts, &sum, 0);
    let p1 = projection_from_sum(&parts, &sum, 1);
    let to = i0.compose(&r).add(&i1.compose(&to_k).compose(&p));
    let from = incl.compose(&p0).add(&kappa.compose(&from_k).compose(&p1));
    (bars, sum, to, from)
}

// ---------------------------------------------------------------------------
// AR translate via the Nakayama construction
// ---------------------------------------------------------------------------

/// Canonical generator of `Hom([a,b],[c,d])` (identity on the overlap), if
/// the space is nonzero.
pub fn canonical_hom(n: usize, src: Interval, dst: Interval) -> Option<ModMap> {
    let hs = hom_space(&rep_of(n, src), &rep_of(n, dst));
    match hs.dim() {
        0 => None,
        1 => Some(hs.basis.into_iter().next().unwrap()),
        d => panic!("interval hom space of dimension {d}"),
    }
}

/// tau of an interval, computed through the Nakayama functor on the minimal
/// projective presentation; `None` for projectives.
pub fn tau(n: usize, iv: Interval) -> Option<Interval> {
    if iv.a == 1 {
        return None;
    }
    let nu_iota = nakayama_of_resolution(n, iv);
    let (k, _) = kernel_rep(&nu_iota);
    single_bar(&k)
}

/// tau^{-1} of an interval, dual construction; `None` for injectives.
pub fn tau_inv(n: usize, iv: Interval) -> Option<Interval> {
    if iv.b == n {
        return None;
    }
    // injective copresentation 0 -> [a,b] -> I_a -> I_{b+1} -> 0, then nu^{-1}
    let p = canonical_hom(n, Interval::new(1, iv.a), Interval::new(1, iv.b + 1))
        .expect("P_a -> P_{b+1} is nonzero");
    let (c, _) = cokernel_rep(&p);
    single_bar(&c)
}

fn single_bar(rep: &Rep) -> Option<Interval> {
    let bars = barcode_multiset(rep);
    assert!(bars.len() == 1 && bars[0].1 == 1, "expected an indecomposable, got {bars:?}");
    Some(bars[0].0)
}

/// nu applied to the inclusion `P_{a-1} -> P_b`: the canonical map
/// `I_{a-1} -> I_b`.
fn nakayama_of_resolution(n: usize, iv: Interval) -> ModMap {
    canonical_hom(n, Interval::new(iv.a - 1, n), Interval::new(iv.b, n))
        .expect("I_{a-1} -> I_b is nonzero")
}

/// The tau functor on a map between non-projective intervals: lift to the
/// projective presentations, apply nu, restrict to kernels, and identify the
/// kernels with their canonical interval representations.
pub fn tau_functor(n: usize, src: Interval, dst: Interval, f: &ModMap) -> ModMap {
    assert!(src.a >= 2 && dst.a >= 2, "tau functor needs non-projective ends");
    let lift = lift_to_resolution(n, src, dst, f);
    let nu_f1 = scale_canonical(
        n,
        Interval::new(src.a - 1, n),
        Interval::new(dst.a - 1, n),
        &lift.f1_coeff,
    );
    let nu_iota_src = nakayama_of_resolution(n, src);
    let nu_iota_dst = nakayama_of_resolution(n, dst);
    let (k_src, incl_src) = kernel_rep(&nu_iota_src);
    let (k_dst, incl_dst) = kernel_rep(&nu_iota_dst);
    // induced map on kernels: incl_dst . g = nu_f1 . incl_src
    let mut solver = MapSolver::new(&k_src, &k_dst);
    solver.require_post(&incl_dst, &nu_f1.compose(&incl_src));
    let g = solver.solve().expect("nu of the lift preserves kernels");
    // identify with canonical interval reps
    let bc_src = barcode_decompose(&k_src);
    let bc_dst = barcode_decompose(&k_dst);
    bc_dst.to_sum.compose(&g).compose(&bc_src.from_sum)
}

pub struct ResolutionLift {
    pub f0_coeff: Q,
    pub f1_coeff: Q,
}

/// Coefficients of the resolution lift of `f: [a,b] -> [c,d]` on the
/// canonical generators `P_b -> P_d` and `P_{a-1} -> P_{c-1}`.
pub fn lift_to_resolution(n: usize, src: Interval, dst: Interval, f: &ModMap) -> ResolutionLift {
    let pi_src = canonical_hom(n, Interval::new(1, src.b), src).unwrap();
    let pi_dst = canonical_hom(n, Interval::new(1, dst.b), dst).unwrap();
    let p0 = rep_of(n, Interval::new(1, src.b));
    let q0 = rep_of(n, Interval::new(1, dst.b));
    let mut solver = MapSolver::new(&p0, &q0);
    solver.require_post(&pi_dst, &f.compose(&pi_src));
    let f0 = solver.solve().expect("projective lift exists");
    let f0_coeff = f0.blocks[0][(0, 0)].clone();
    let f1_coeff = if src.a >= 2 && dst.a >= 2 {
        let iota_src = canonical_hom(n, Interval::new(1, src.a - 1), Interval::new(1, src.b)).unwrap();
        let iota_dst = canonical_hom(n, Interval::new(1, dst.a - 1), Interval::new(1, dst.b)).unwrap();
        let p1 = rep_of(n, Interval::new(1, src.a - 1));
        let q1 = rep_of(n, Interval::new(1, dst.a - 1));
        let mut s1 = MapSolver::new(&p1, &q1);
        s1.require_post(&iota_dst, &f0.compose(&iota_src));
        let f1 = s1.solve().expect("restriction to first syzygy");
        f1.blocks[0][(0, 0)].clone()
    } else {
        Q::zero()
    };
    ResolutionLift { f0_coeff, f1_coeff }
}

fn scale_canonical(n: usize, src: Interval, dst: Interval, c: &Q) -> ModMap {
    canonical_hom(n, src, dst).expect("nonzero canonical hom").scale(c)
}

// ---------------------------------------------------------------------------
// Ext^1 through the projective resolution
// ---------------------------------------------------------------------------

/// An extension class, presented as a cocycle on the first syzygy of the
/// source: a map `P_{a-1} -> target` modulo those factoring through `P_b`.
#[derive(Clone)]
pub struct Ext1Class {
    pub n: usize,
    pub source: Interval,
    pub target: Rep,
    pub cocycle: ModMap,
}

/// The Ext^1 space with a canonical basis, plus the data needed to reduce an
/// arbitrary cocycle to coordinates.
pub struct Ext1Basis {
    pub n: usize,
    pub source: Interval,
    pub target: Rep,
    pub classes: Vec<Ext1Class>,
    h1: HomBasis,
    /// columns: coordinates of the image of Hom(P_b, N) inside Hom(P_{a-1}, N)
    reducer: Option<Mat>,
    repr_count: usize,
}

pub fn ext1_space(n: usize, src: Interval, target: &Rep) -> Ext1Basis {
    if src.a == 1 {
        let h1 = hom_space(&Rep::zero(n), target);
        return Ext1Basis {
            n,
            source: src,
            target: target.clone(),
            classes: Vec::new(),
            h1,
            reducer: None,
            repr_count: 0,
        };
    }
    let p1 = rep_of(n, Interval::new(1, src.a - 1));
    let p0 = rep_of(n, Interval::new(1, src.b));
    let iota = canonical_hom(n, Interval::new(1, src.a - 1), Interval::new(1, src.b)).unwrap();
    let h1 = hom_space(&p1, target);
    let h0 = hom_space(&p0, target);
    let d1 = h1.dim();
    let mut img = Mat::zero(d1, h0.dim());
    for (j, h) in h0.basis.iter().enumerate() {
        let coords = h1.coords(&h.compose(&iota));
        for i in 0..d1 {
            img[(i, j)] = coords[i].clone();
        }
    }
    let img = img.column_space();
    // Greedy complement: basis vectors of Hom(P_{a-1},N) not in the image span.
    let mut chosen = Vec::new();
    let mut cur = img.clone();
    for e in 0..d1 {
        if cur.cols == d1 {
            break;
        }
        let mut cand = Mat::zero(d1, 1);
        cand[(e, 0)] = Q::one();
        let ext = cur.hstack(&cand);
        if ext.rank() > cur.cols {
            chosen.push(e);
            cur = ext;
        }
    }
    let classes: Vec<Ext1Class> = chosen
        .iter()
        .map(|&e| Ext1Class {
            n,
            source: src,
            target: target.clone(),
            cocycle: h1.basis[e].clone(),
        })
        .collect();
    // reducer matrix [img | chosen standard vectors] for coordinate extraction
    let mut sel = Mat::zero(d1, chosen.len());
    for (j, &e) in chosen.iter().enumerate() {
        sel[(e, j)] = Q::one();
    }
    let reducer = if d1 > 0 { Some(img.hstack(&sel)) } else { None };
    Ext1Basis {
        n,
        source: src,
        target: target.clone(),
        classes,
        h1,
        reducer,
        repr_count: chosen.len(),
    }
}

impl Ext1Basis {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// Coordinates of a cocycle's class in the canonical basis.
    pub fn class_coords(&self, cocycle: &ModMap) -> Vec<Q> {
        if self.repr_count == 0 {
            return Vec::new();
        }
        let reducer = self.reducer.as_ref().unwrap();
        let coords = Mat::col_vec(&self.h1.coords(cocycle));
        let sol = reducer.solve(&coords).expect("cocycle not in Hom(P_1, N)");
        let img_rank = reducer.cols - self.repr_count;
        (0..self.repr_count).map(|i| sol[(img_rank + i, 0)].clone()).collect()
    }
}

// ---------------------------------------------------------------------------
// Yoneda composition
// ---------------------------------------------------------------------------

/// A degree-0 or degree-1 morphism for Yoneda composition.
#[derive(Clone)]
pub enum YonedaMor {
    Map(ModMap),
    Ext(Ext1Class),
}

/// `g o f` in the Yoneda sense; `None` encodes the vanishing Ext^2 product.
pub fn compose_mod(f: &YonedaMor, g: &YonedaMor) -> Result<Option<YonedaMor>> {
    match (f, g) {
        (YonedaMor::Map(f), YonedaMor::Map(g)) => {
            if g.source.dims != f.target.dims {
                return Err(CyError::CompositionError("target(f) != source(g)".into()));
            }
            Ok(Some(YonedaMor::Map(g.compose(f))))
        }
        (YonedaMor::Ext(e), YonedaMor::Map(g)) => {
            if g.source.dims != e.target.dims {
                return Err(CyError::CompositionError("target(ext) != source(map)".into()));
            }
            Ok(Some(YonedaMor::Ext(Ext1Class {
                n: e.n,
                source: e.source,
                target: g.target.clone(),
                cocycle: g.compose(&e.cocycle),
            })))
        }
        (YonedaMor::Map(f), YonedaMor::Ext(e)) => Ok(Some(YonedaMor::Ext(ext_after_hom(
            e,
            f,
        )?))),
        (YonedaMor::Ext(_), YonedaMor::Ext(_)) => Ok(None),
    }
}

/// Precompose an extension class with a map of intervals: pull the cocycle
/// back along the lifted map of first syzygies.
pub fn ext_after_hom(e: &Ext1Class, f: &ModMap) -> Result<Ext1Class> {
    if e.n == 0 {
        return Err(CyError::CompositionError("empty context".into()));
    }
    let n = e.n;
    let src_bars = barcode_multiset(&f.source);
    if src_bars.len() != 1 || src_bars[0].1 != 1 {
        return Err(CyError::CompositionError("source of f must be an interval".into()));
    }
    let m = src_bars[0].0;
    let nn = e.source;
    if f.target.dims != rep_of(n, nn).dims {
        return Err(CyError::CompositionError("target(f) != source interval of ext".into()));
    }
    if m.a == 1 {
        // Ext^1 out of a projective vanishes; the first syzygy is zero.
        return Ok(Ext1Class {
            n,
            source: m,
            target: e.target.clone(),
            cocycle: ModMap::zero(&Rep::zero(n), &e.target),
        });
    }
    let lift = lift_to_resolution(n, m, nn, f);
    let p1m = Interval::new(1, m.a - 1);
    let p1n = Interval::new(1, nn.a - 1);
    let f1 = scale_canonical(n, p1m, p1n, &lift.f1_coeff);
    Ok(Ext1Class { n, source: m, target: e.target.clone(), cocycle: e.cocycle.compose(&f1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b)
    }

    #[test]
    fn interval_rep_shapes() {
        let r = interval_rep(4, 1, 2).unwrap(); // P_2
        assert_eq!(r.dims, vec![1, 1, 0, 0]);
        let e = interval_rep(4, 2, 3).unwrap(); // E
        assert_eq!(e.dims, vec![0, 1, 1, 0]);
        let s3 = interval_rep(3, 3, 3).unwrap();
        assert_eq!(s3.dims, vec![0, 0, 1]);
        assert!(interval_rep(3, 0, 2).is_err());
        assert!(interval_rep(3, 2, 4).is_err());
    }

    #[test]
    fn hom_dims_on_intervals() {
        let n = 4;
        // Hom(P_2, S_2) = 1, Hom(S_2, P_2) = 0
        assert_eq!(hom_dim(&rep_of(n, iv(1, 2)), &rep_of(n, iv(2, 2))), 1);
        assert_eq!(hom_dim(&rep_of(n, iv(2, 2)), &rep_of(n, iv(1, 2))), 0);
        // identity exists
        let m = rep_of(n, iv(2, 3));
        assert!(hom_dim(&m, &m) >= 1);
    }

    #[test]
    fn hom_rule_matches_oracle_small() {
        for n in 1..=5 {
            for a in 1..=n {
                for b in a..=n {
                    for c in 1..=n {
                        for d in c..=n {
                            let dim = hom_dim(&rep_of(n, iv(a, b)), &rep_of(n, iv(c, d)));
                            let rule = usize::from(a <= c && c <= b && b <= d);
                            assert_eq!(dim, rule, "n={n} [{a},{b}]->[{c},{d}]");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ext_examples() {
        let n = 3;
        // Ext^1(S_2, S_1) = 1
        assert_eq!(ext1_space(n, iv(2, 2), &rep_of(n, iv(1, 1))).dim(), 1);
        // projective source
        assert_eq!(ext1_space(n, iv(1, 2), &rep_of(n, iv(1, 1))).dim(), 0);
        // Ext^1(S_1, S_2) = 0
        assert_eq!(ext1_space(n, iv(1, 1), &rep_of(n, iv(2, 2))).dim(), 0);
    }

    #[test]
    fn barcode_recovers_direct_sums() {
        let n = 4;
        let parts = [rep_of(n, iv(1, 2)), rep_of(n, iv(3, 3))];
        let m = direct_sum(n, &[&parts[0], &parts[1]]);
        let bc = barcode_decompose(&m);
        assert_eq!(bc.bars, vec![iv(1, 2), iv(3, 3)]);
        assert!(bc.to_sum.compose(&bc.from_sum).sub(&ModMap::identity(&bc.sum)).is_zero());
        assert!(bc.from_sum.compose(&bc.to_sum).sub(&ModMap::identity(&m)).is_zero());
        assert!(barcode_decompose(&Rep::zero(4)).bars.is_empty());
    }

    #[test]
    fn barcode_of_nonsplit_extension() {
        // dims (1,1), identity map: the extension of S_2 by S_1, must be one bar
        let m = rep_of(2, iv(1, 2));
        assert_eq!(barcode_multiset(&m), vec![(iv(1, 2), 1)]);
        // dims (1,1), zero map: split
        let mut sp = m.clone();
        sp.maps[0] = Mat::zero(1, 1);
        assert_eq!(barcode_multiset(&sp), vec![(iv(1, 1), 1), (iv(2, 2), 1)]);
    }

    #[test]
    fn barcode_generic_two_dim() {
        // A rank-mixing rep on A_3: dims (1,2,1) with maps chosen to glue as
        // [1,2] + [2,3].
        let n = 3;
        let mut r = Rep {
            n,
            dims: vec![1, 2, 1],
            maps: vec![Mat::zero(1, 2), Mat::zero(2, 1)],
        };
        r.maps[0][(0, 0)] = q(1);
        r.maps[1][(1, 0)] = q(1);
        assert!(r.validate());
        let bc = barcode_decompose(&r);
        assert_eq!(bc.bars, vec![iv(1, 2), iv(2, 3)]);
    }

    #[test]
    fn tau_formula_emerges() {
        for n in 2..=5 {
            for a in 1..=n {
                for b in a..=n {
                    let t = tau(n, iv(a, b));
                    if a == 1 {
                        assert!(t.is_none());
                    } else {
                        assert_eq!(t, Some(iv(a - 1, b - 1)));
                    }
                    let ti = tau_inv(n, iv(a, b));
                    if b == n {
                        assert!(ti.is_none());
                    } else {
                        assert_eq!(ti, Some(iv(a + 1, b + 1)));
                    }
                }
            }
        }
    }

    #[test]
    fn tau_inverse_pair() {
        let n = 5;
        for a in 2..=n {
            for b in a..=n {
                let t = tau(n, iv(a, b)).unwrap();
                assert_eq!(tau_inv(n, t), Some(iv(a, b)));
            }
        }
    }

    #[test]
    fn ar_duality_exhaustive() {
        // dim Ext^1(X, Y) = dim Hom(Y, tau X) whenever tau X != 0
        for n in 1..=6 {
            for a in 1..=n {
                for b in a..=n {
                    for c in 1..=n {
                        for d in c..=n {
                            let x = iv(a, b);
                            let y = iv(c, d);
                            let e = ext1_space(n, x, &rep_of(n, y)).dim();
                            match tau(n, x) {
                                None => assert_eq!(e, 0),
                                Some(tx) => {
                                    let h = hom_dim(&rep_of(n, y), &rep_of(n, tx));
                                    assert_eq!(e, h, "n={n} X={x:?} Y={y:?}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn yoneda_composition_associative() {
        // exhaustive associativity over interval triples for n <= 3, mixing
        // hom/hom/ext basis vectors where defined
        let n = 3;
        let all: Vec<Interval> =
            (1..=n).flat_map(|a| (a..=n).map(move |b| iv(a, b))).collect();
        for &m in &all {
            for &nn in &all {
                for &l in &all {
                    for &k in &all {
                        let f = canonical_hom(n, m, nn);
                        let g = canonical_hom(n, nn, l);
                        let e = ext1_space(n, l, &rep_of(n, k));
                        let (Some(f), Some(g)) = (f, g) else { continue };
                        if e.dim() == 0 {
                            continue;
                        }
                        let ec = YonedaMor::Ext(e.classes[0].clone());
                        let fg = g.compose(&f);
                        // (e o g) o f == e o (g o f)
                        let inner = compose_mod(&YonedaMor::Map(g.clone()), &ec).unwrap().unwrap();
                        let left = compose_mod(&YonedaMor::Map(f.clone()), &inner).unwrap().unwrap();
                        let right = compose_mod(&YonedaMor::Map(fg), &ec).unwrap().unwrap();
                        match (left, right) {
                            (YonedaMor::Ext(a), YonedaMor::Ext(b)) => {
                                let basis = ext1_space(n, m, &rep_of(n, k));
                                assert_eq!(
                                    basis.class_coords(&a.cocycle),
                                    basis.class_coords(&b.cocycle)
                                );
                            }
                            _ => panic!("expected ext classes"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn witness_extension_middle_term() {
        // The class in Ext^1(S_2, S_1) glues to M[1,2]: realize the extension
        // as the cone data through pullback machinery used elsewhere; here we
        // just confirm dimension bookkeeping via the resolution.
        let n = 2;
        let basis = ext1_space(n, iv(2, 2), &rep_of(n, iv(1, 1)));
        assert_eq!(basis.dim(), 1);
        let coords = basis.class_coords(&basis.classes[0].cocycle);
        assert_eq!(coords, vec![q(1)]);
    }
}
