//! Chain-level realization of derived objects and the mapping cone.
//!
//! Every summand `[a,b][s]` is realized by its minimal projective resolution
//! `P_{a-1} -> P_b` placed in degrees `-s-1, -s`; morphisms are realized as
//! genuine chain maps (closed-form lifts of the canonical generators). The
//! cone of a chain map is totalized, its cohomology is computed vertex-wise,
//! each cohomology representation is decomposed into intervals, and the two
//! structural maps of the triangle are recovered by comparison lifts between
//! the cone and the canonical resolutions of its normal form.

use super::{block_degree, Context, DMorphism, DObject, DSummand};
use crate::linalg::{left_inverse, Mat, Q};
use crate::repcore::{
    barcode_decompose, canonical_hom, cokernel_rep, image_rep, kernel_rep, rep_of, Barcode,
    Interval, MapSolver, ModMap, Rep,
};
use num_traits::{One, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Role {
    Res0,
    Res1,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Main,
    FromY,
    FromX,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PEntry {
    pub top: usize,
    pub owner: usize,
    pub role: Role,
    pub side: Side,
}

/// One term of a complex: a direct sum of indecomposable projectives, each
/// of which is one-dimensional per supported vertex.
#[derive(Clone)]
pub struct Term {
    pub entries: Vec<PEntry>,
    pub rep: Rep,
    /// offsets[e][v]: coordinate of entry `e` at vertex `v`, when supported
    pub offsets: Vec<Vec<Option<usize>>>,
}

impl Term {
    pub fn new(n: usize, entries: Vec<PEntry>) -> Term {
        let mut dims = vec![0usize; n];
        let mut offsets = Vec::with_capacity(entries.len());
        for e in &entries {
            let mut offs = Vec::with_capacity(n);
            for (v, d) in dims.iter_mut().enumerate() {
                if v < e.top {
                    offs.push(Some(*d));
                    *d += 1;
                } else {
                    offs.push(None);
                }
            }
            offsets.push(offs);
        }
        let reps: Vec<Rep> = entries.iter().map(|e| rep_of(n, Interval::new(1, e.top))).collect();
        let refs: Vec<&Rep> = reps.iter().collect();
        let rep = crate::repcore::direct_sum(n, &refs);
        debug_assert_eq!(rep.dims, dims);
        Term { entries, rep, offsets }
    }

    pub fn find(&self, side: Side, owner: usize, role: Role) -> Option<usize> {
        self.entries
            .iter()
            .position(|e| e.side == side && e.owner == owner && e.role == role)
    }

    /// The inclusion of entry `e` as a map from its interval representation.
    pub fn entry_inclusion(&self, n: usize, e: usize) -> ModMap {
        let p = rep_of(n, Interval::new(1, self.entries[e].top));
        let mut blocks = Vec::with_capacity(n);
        for v in 0..n {
            let mut m = Mat::zero(self.rep.dims[v], p.dims[v]);
            if let Some(off) = self.offsets[e][v] {
                m[(off, 0)] = Q::one();
            }
            blocks.push(m);
        }
        ModMap { source: p, target: self.rep.clone(), blocks }
    }

    /// The projection onto entry `e`.
    pub fn entry_projection(&self, n: usize, e: usize) -> ModMap {
        let p = rep_of(n, Interval::new(1, self.entries[e].top));
        let mut blocks = Vec::with_capacity(n);
        for v in 0..n {
            let mut m = Mat::zero(p.dims[v], self.rep.dims[v]);
            if let Some(off) = self.offsets[e][v] {
                m[(0, off)] = Q::one();
            }
            blocks.push(m);
        }
        ModMap { source: self.rep.clone(), target: p, blocks }
    }
}

/// Write `lambda * p` into `blocks`, where `p` is the canonical inclusion
/// `P_{top(src)} -> P_{top(tgt)}` between the named entries.
fn add_p_block(blocks: &mut [Mat], src: &Term, es: usize, tgt: &Term, et: usize, lambda: &Q) {
    let top = src.entries[es].top;
    debug_assert!(top <= tgt.entries[et].top, "no canonical map upward");
    for v in 0..top {
        let (Some(o_s), Some(o_t)) = (src.offsets[es][v], tgt.offsets[et][v]) else {
            unreachable!()
        };
        let val = &blocks[v][(o_t, o_s)] + lambda;
        blocks[v][(o_t, o_s)] = val;
    }
}

fn zero_blocks(src: &Term, tgt: &Term) -> Vec<Mat> {
    (0..src.rep.n).map(|v| Mat::zero(tgt.rep.dims[v], src.rep.dims[v])).collect()
}

fn map_from_blocks(src: &Term, tgt: &Term, blocks: Vec<Mat>) -> ModMap {
    ModMap { source: src.rep.clone(), target: tgt.rep.clone(), blocks }
}

/// A bounded complex of projective terms over the degree range
/// `lo ..= lo + terms.len() - 1`.
#[derive(Clone)]
pub struct Complex {
    pub n: usize,
    pub lo: i64,
    pub terms: Vec<Term>,
    /// diffs[i]: terms[i] -> terms[i+1]
    pub diffs: Vec<ModMap>,
}

impl Complex {
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, k: i64) -> Option<&Term> {
        if k < self.lo || k > self.hi() {
            None
        } else {
            Some(&self.terms[(k - self.lo) as usize])
        }
    }

    pub fn diff(&self, k: i64) -> Option<&ModMap> {
        if k < self.lo || k >= self.hi() {
            None
        } else {
            Some(&self.diffs[(k - self.lo) as usize])
        }
    }

    /// Pad with empty terms so the degree range covers `lo2 ..= hi2`.
    pub fn extend_range(&mut self, lo2: i64, hi2: i64) {
        let n = self.n;
        while self.lo > lo2 {
            let t = Term::new(n, Vec::new());
            let d = map_from_blocks(&t, &self.terms[0], zero_blocks(&t, &self.terms[0]));
            self.terms.insert(0, t);
            self.diffs.insert(0, d);
            self.lo -= 1;
        }
        while self.hi() < hi2 {
            let t = Term::new(n, Vec::new());
            let last = self.terms.last().unwrap();
            let d = map_from_blocks(last, &t, zero_blocks(last, &t));
            self.terms.push(t);
            self.diffs.push(d);
        }
    }

    pub fn validate(&self) -> bool {
        for i in 0..self.diffs.len().saturating_sub(1) {
            if !self.diffs[i + 1].compose(&self.diffs[i]).is_zero() {
                return false;
            }
        }
        true
    }
}

/// Canonical complex of a derived object: each summand contributes its
/// minimal projective resolution, placed by its shift.
pub fn canonical_complex(n: usize, x: &DObject) -> Complex {
    let mut lo = 0i64;
    let mut hi = 0i64;
    for s in &x.summands {
        let r0 = -s.shift;
        lo = lo.min(if s.iv.a >= 2 { r0 - 1 } else { r0 });
        hi = hi.max(r0);
    }
    let len = (hi - lo + 1) as usize;
    let mut per_degree: Vec<Vec<PEntry>> = vec![Vec::new(); len];
    for (owner, s) in x.summands.iter().enumerate() {
        let r0 = -s.shift;
        per_degree[(r0 - lo) as usize].push(PEntry {
            top: s.iv.b,
            owner,
            role: Role::Res0,
            side: Side::Main,
        });
        if s.iv.a >= 2 {
            per_degree[(r0 - 1 - lo) as usize].push(PEntry {
                top: s.iv.a - 1,
                owner,
                role: Role::Res1,
                side: Side::Main,
            });
        }
    }
    let terms: Vec<Term> = per_degree.into_iter().map(|es| Term::new(n, es)).collect();
    let mut diffs = Vec::with_capacity(len.saturating_sub(1));
    for i in 0..len.saturating_sub(1) {
        let (src, tgt) = (&terms[i], &terms[i + 1]);
        let mut blocks = zero_blocks(src, tgt);
        for (es, e) in src.entries.iter().enumerate() {
            if e.role == Role::Res1 {
                if let Some(et) = tgt.find(e.side, e.owner, Role::Res0) {
                    add_p_block(&mut blocks, src, es, tgt, et, &Q::one());
                }
            }
        }
        diffs.push(map_from_blocks(src, tgt, blocks));
    }
    let c = Complex { n, lo, terms, diffs };
    debug_assert!(c.validate());
    c
}

/// Realize a derived morphism as a chain map between canonical complexes
/// whose degree ranges have already been aligned.
pub fn realize(f: &DMorphism, cx: &Complex, cy: &Complex) -> Vec<ModMap> {
    assert_eq!(cx.lo, cy.lo);
    assert_eq!(cx.terms.len(), cy.terms.len());
    let mut maps: Vec<Vec<Mat>> = (0..cx.terms.len())
        .map(|i| zero_blocks(&cx.terms[i], &cy.terms[i]))
        .collect();
    for (&(i, j), c) in &f.blocks {
        let si = f.source.summands[i];
        let sj = f.target.summands[j];
        let deg = block_degree(&si, &sj).expect("block degree");
        if deg == 0 {
            // hom block: res0 -> res0 and res1 -> res1 with the same scalar
            let k = (-si.shift - cx.lo) as usize;
            let (src, tgt) = (&cx.terms[k], &cy.terms[k]);
            let es = src.find(Side::Main, i, Role::Res0).unwrap();
            let et = tgt.find(Side::Main, j, Role::Res0).unwrap();
            add_p_block(&mut maps[k], src, es, tgt, et, c);
            if si.iv.a >= 2 {
                let k1 = k - 1;
                let (src1, tgt1) = (&cx.terms[k1], &cy.terms[k1]);
                let es1 = src1.find(Side::Main, i, Role::Res1).unwrap();
                let et1 = tgt1
                    .find(Side::Main, j, Role::Res1)
                    .expect("hom pattern gives a target syzygy");
                add_p_block(&mut maps[k1], src1, es1, tgt1, et1, c);
            }
        } else {
            // ext block: res1 of the source -> res0 of the target
            let k = (-si.shift - 1 - cx.lo) as usize;
            let (src, tgt) = (&cx.terms[k], &cy.terms[k]);
            let es = src.find(Side::Main, i, Role::Res1).expect("ext source has a syzygy");
            let et = tgt.find(Side::Main, j, Role::Res0).unwrap();
            add_p_block(&mut maps[k], src, es, tgt, et, c);
        }
    }
    let chain: Vec<ModMap> = (0..cx.terms.len())
        .map(|i| map_from_blocks(&cx.terms[i], &cy.terms[i], maps[i].clone()))
        .collect();
    debug_assert!(is_chain_map(cx, cy, &chain));
    chain
}

fn is_chain_map(cx: &Complex, cy: &Complex, u: &[ModMap]) -> bool {
    for i in 0..cx.diffs.len() {
        let lhs = u[i + 1].compose(&cx.diffs[i]);
        let rhs = cy.diffs[i].compose(&u[i]);
        if !lhs.sub(&rhs).is_zero() {
            return false;
        }
    }
    true
}

/// The totalized mapping cone of a chain map, with provenance-tagged entries.
pub fn cone_complex(u: &[ModMap], cx: &Complex, cy: &Complex) -> Complex {
    assert_eq!(cx.lo, cy.lo);
    let n = cx.n;
    let lo = cx.lo - 1;
    let hi = cy.hi();
    let len = (hi - lo + 1) as usize;
    let mut terms = Vec::with_capacity(len);
    for k in lo..=hi {
        let mut entries = Vec::new();
        if let Some(t) = cy.term(k) {
            for e in &t.entries {
                entries.push(PEntry { top: e.top, owner: e.owner, role: e.role, side: Side::FromY });
            }
        }
        if let Some(t) = cx.term(k + 1) {
            for e in &t.entries {
                entries.push(PEntry { top: e.top, owner: e.owner, role: e.role, side: Side::FromX });
            }
        }
        terms.push(Term::new(n, entries));
    }
    let mut diffs = Vec::with_capacity(len - 1);
    for k in lo..hi {
        let src = &terms[(k - lo) as usize];
        let tgt = &terms[(k + 1 - lo) as usize];
        let mut blocks = zero_blocks(src, tgt);
        // d_Y on the Y part
        if let (Some(ty0), Some(dy)) = (cy.term(k), cy.diff(k)) {
            let ty1 = cy.term(k + 1).unwrap();
            copy_component(&mut blocks, src, tgt, Side::FromY, Side::FromY, ty0, ty1, dy, false);
        }
        // u^{k+1} from the X part into the Y part
        if let (Some(tx), Some(ty1)) = (cx.term(k + 1), cy.term(k + 1)) {
            let idx = (k + 1 - cx.lo) as usize;
            copy_component(&mut blocks, src, tgt, Side::FromX, Side::FromY, tx, ty1, &u[idx], false);
        }
        // -d_X on the X part
        if let (Some(tx0), Some(dx)) = (cx.term(k + 1), cx.diff(k + 1)) {
            let tx1 = cx.term(k + 2).unwrap();
            copy_component(&mut blocks, src, tgt, Side::FromX, Side::FromX, tx0, tx1, dx, true);
        }
        diffs.push(map_from_blocks(src, tgt, blocks));
    }
    let c = Complex { n, lo, terms, diffs };
    debug_assert!(c.validate());
    c
}

/// Copy `f` (a map between the original complex terms `src_orig -> tgt_orig`)
/// into cone-differential blocks, matching entries by (owner, role) within
/// the given sides.
#[allow(clippy::too_many_arguments)]
fn copy_component(
    blocks: &mut [Mat],
    src: &Term,
    tgt: &Term,
    src_side: Side,
    tgt_side: Side,
    src_orig: &Term,
    tgt_orig: &Term,
    f: &ModMap,
    negate: bool,
) {
    let n = src.rep.n;
    for (eo_s, es_orig) in src_orig.entries.iter().enumerate() {
        let Some(es) = src.find(src_side, es_orig.owner, es_orig.role) else { continue };
        for (eo_t, et_orig) in tgt_orig.entries.iter().enumerate() {
            let Some(et) = tgt.find(tgt_side, et_orig.owner, et_orig.role) else { continue };
            for v in 0..n {
                let (Some(a), Some(b)) = (src_orig.offsets[eo_s][v], tgt_orig.offsets[eo_t][v])
                else {
                    continue;
                };
                let val = f.blocks[v][(b, a)].clone();
                if val.is_zero() {
                    continue;
                }
                let (Some(sa), Some(ta)) = (src.offsets[es][v], tgt.offsets[et][v]) else {
                    unreachable!()
                };
                blocks[v][(ta, sa)] = if negate { -val } else { val };
            }
        }
    }
}

/// Vertex-wise cohomology at one degree.
pub struct Cohom {
    pub z_rep: Rep,
    pub z_incl: ModMap,
    /// left inverses of the kernel bases, one per vertex
    pub z_sel: Vec<Mat>,
    pub h_rep: Rep,
    pub proj_zh: ModMap,
}

pub fn cohomology_at(c: &Complex, k: i64) -> Cohom {
    let n = c.n;
    let term = c.term(k).expect("degree inside range");
    let (z_rep, z_incl) = match c.diff(k) {
        Some(d) => kernel_rep(d),
        None => (term.rep.clone(), ModMap::identity(&term.rep)),
    };
    let z_sel: Vec<Mat> = (0..n)
        .map(|v| {
            if z_incl.blocks[v].cols == 0 {
                Mat::zero(0, z_incl.blocks[v].rows)
            } else {
                left_inverse(&z_incl.blocks[v])
            }
        })
        .collect();
    let b_in_z = match if k > c.lo { c.diff(k - 1) } else { None } {
        Some(dprev) => {
            let (b_rep, b_incl) = image_rep(dprev);
            let blocks: Vec<Mat> = (0..n).map(|v| &z_sel[v] * &b_incl.blocks[v]).collect();
            let m = ModMap { source: b_rep, target: z_rep.clone(), blocks };
            debug_assert!(m.is_intertwiner());
            m
        }
        None => ModMap::zero(&Rep::zero(n), &z_rep),
    };
    let (h_rep, proj_zh) = cokernel_rep(&b_in_z);
    Cohom { z_rep, z_incl, z_sel, h_rep, proj_zh }
}

/// Data of a fully normalized cone.
pub struct NormalCone {
    pub cone: Complex,
    pub z: DObject,
    /// aligned with `z.summands`: (degree, barcode index at that degree)
    pub z_origin: Vec<(i64, usize)>,
    pub per_degree: Vec<(i64, Cohom, Barcode)>,
}

pub fn normalize_cone(cone: Complex) -> NormalCone {
    let mut per_degree = Vec::new();
    let mut tagged: Vec<(DSummand, i64, usize)> = Vec::new();
    for k in cone.lo..=cone.hi() {
        let coh = cohomology_at(&cone, k);
        if coh.h_rep.total_dim() == 0 {
            continue;
        }
        let bc = barcode_decompose(&coh.h_rep);
        for (i, bar) in bc.bars.iter().enumerate() {
            tagged.push((DSummand { iv: *bar, shift: -k }, k, i));
        }
        per_degree.push((k, coh, bc));
    }
    let mut order: Vec<usize> = (0..tagged.len()).collect();
    order.sort_by_key(|&i| (tagged[i].0, tagged[i].1, tagged[i].2));
    let z = DObject { summands: order.iter().map(|&i| tagged[i].0).collect() };
    let z_origin: Vec<(i64, usize)> = order.iter().map(|&i| (tagged[i].1, tagged[i].2)).collect();
    NormalCone { cone, z, z_origin, per_degree }
}

/// Cheap path: only the isomorphism class of the cone.
pub fn cone_object(ctx: &Context, f: &DMorphism) -> DObject {
    let n = ctx.n;
    let mut cx = canonical_complex(n, &f.source);
    let mut cy = canonical_complex(n, &f.target);
    let lo = cx.lo.min(cy.lo);
    let hi = cx.hi().max(cy.hi());
    cx.extend_range(lo, hi);
    cy.extend_range(lo, hi);
    let u = realize(f, &cx, &cy);
    let cone = cone_complex(&u, &cx, &cy);
    let mut summands = Vec::new();
    for k in cone.lo..=cone.hi() {
        let coh = cohomology_at(&cone, k);
        if coh.h_rep.total_dim() == 0 {
            continue;
        }
        for (bar, mult) in crate::repcore::barcode_multiset(&coh.h_rep) {
            for _ in 0..mult {
                summands.push(DSummand { iv: bar, shift: -k });
            }
        }
    }
    DObject::new(summands)
}

/// A distinguished triangle `X -> Y -> Z -> X[1]`.
pub struct Triangle {
    pub x: DObject,
    pub y: DObject,
    pub z: DObject,
    pub f: DMorphism,
    pub g: DMorphism,
    pub h: DMorphism,
}

/// Cone with the structural maps. `want_g` controls whether the comparison
/// map used for `g: Y -> Z` is computed (it is the more expensive lift).
pub fn cone_with_maps(ctx: &Context, f: &DMorphism, want_g: bool) -> Triangle {
    let n = ctx.n;
    let mut cx = canonical_complex(n, &f.source);
    let mut cy = canonical_complex(n, &f.target);
    let lo = cx.lo.min(cy.lo);
    let hi = cx.hi().max(cy.hi());
    cx.extend_range(lo, hi);
    cy.extend_range(lo, hi);
    let u = realize(f, &cx, &cy);
    let cone = cone_complex(&u, &cx, &cy);
    let nc = normalize_cone(cone);
    let h = extract_h(ctx, &nc, &f.source);
    let g = if want_g {
        extract_g(ctx, &nc, &f.target, &cy)
    } else {
        DMorphism::zero(f.target.clone(), nc.z.clone())
    };
    Triangle { x: f.source.clone(), y: f.target.clone(), z: nc.z, f: f.clone(), g, h }
}

/// Comparison map `chi: canonical(Z) -> cone` (one column per Z summand),
/// then `h = (projection to the X part) . chi`, read off against the
/// canonical complex of `X[1]`.
fn extract_h(ctx: &Context, nc: &NormalCone, x_obj: &DObject) -> DMorphism {
    let n = ctx.n;
    let x1 = x_obj.shifted(1);
    let mut out = DMorphism::zero(nc.z.clone(), x1.clone());
    for (l, sz) in nc.z.summands.iter().enumerate() {
        let (k, bar_idx) = nc.z_origin[l];
        let (_, coh, bc) = nc
            .per_degree
            .iter()
            .find(|(kk, _, _)| *kk == k)
            .expect("degree recorded");
        let bar = sz.iv;
        let term_k = nc.cone.term(k).unwrap();
        // chi0: P_b -> cone^k, landing in cycles with prescribed class
        let pb = rep_of(n, Interval::new(1, bar.b));
        let pi_bar = canonical_hom(n, Interval::new(1, bar.b), bar).unwrap();
        let bar_reps: Vec<Rep> = bc.bars.iter().map(|b| rep_of(n, *b)).collect();
        let bar_refs: Vec<&Rep> = bar_reps.iter().collect();
        let incl_bar = crate::repcore::inclusion_into_sum(&bar_refs, &bc.sum, bar_idx);
        let class_rhs = bc.from_sum.compose(&incl_bar).compose(&pi_bar);
        let mut solver = MapSolver::new(&pb, &term_k.rep);
        if let Some(d) = nc.cone.diff(k) {
            let zero = ModMap::zero(&pb, &d.target);
            solver.require_post(d, &zero);
        }
        // class map: proj_zh . (z coordinates), as raw blocks
        let lmap = ModMap {
            source: term_k.rep.clone(),
            target: coh.h_rep.clone(),
            blocks: (0..n).map(|v| &coh.proj_zh.blocks[v] * &coh.z_sel[v]).collect(),
        };
        solver.require_post(&lmap, &class_rhs);
        let chi0 = solver.solve().expect("comparison lift chi0");
        let chi1 = if bar.a >= 2 {
            let pa = rep_of(n, Interval::new(1, bar.a - 1));
            let term_k1 = nc.cone.term(k - 1).expect("syzygy degree exists");
            let p_incl =
                canonical_hom(n, Interval::new(1, bar.a - 1), Interval::new(1, bar.b)).unwrap();
            let mut s1 = MapSolver::new(&pa, &term_k1.rep);
            let d = nc.cone.diff(k - 1).expect("differential below");
            s1.require_post(d, &chi0.compose(&p_incl));
            Some(s1.solve().expect("comparison lift chi1"))
        } else {
            None
        };
        // read off the FromX components against X[1]
        for (j, sx) in x_obj.summands.iter().enumerate() {
            let sx1 = DSummand { iv: sx.iv, shift: sx.shift + 1 };
            // position of this summand in the normal form of X[1]: shifting
            // preserves order
            let deg = match block_degree(sz, &sx1) {
                Some(d) => d,
                None => continue,
            };
            if !ctx.block_nonzero(sz.iv, sx1.iv, deg) {
                continue;
            }
            let coeff = if deg == 0 {
                // hom component: rows of chi0 at (FromX, j, Res0)
                let Some(et) = term_k.find(Side::FromX, j, Role::Res0) else { continue };
                let comp = term_k.entry_projection(n, et).compose(&chi0);
                let pi_n = canonical_hom(n, Interval::new(1, sx.iv.b), sx.iv).unwrap();
                let m = pi_n.compose(&comp);
                if m.is_zero() {
                    Q::zero()
                } else {
                    let reference = ctx.hom_generator(bar, sx.iv).unwrap().compose(&pi_bar);
                    crate::repcore::map_ratio(&m, &reference).expect("parallel hom component")
                }
            } else {
                let Some(ref chi1) = chi1 else { continue };
                let term_k1 = nc.cone.term(k - 1).unwrap();
                let Some(et) = term_k1.find(Side::FromX, j, Role::Res0) else { continue };
                let comp = term_k1.entry_projection(n, et).compose(chi1);
                let pi_n = canonical_hom(n, Interval::new(1, sx.iv.b), sx.iv).unwrap();
                let cocycle = pi_n.compose(&comp);
                let coords = ctx.ext_space(bar, sx.iv).class_coords(&cocycle);
                coords[0].clone()
            };
            if !coeff.is_zero() {
                out.add_to_block(l, j, coeff);
            }
        }
    }
    out
}

/// Comparison map `phi: cone -> canonical(Z)` solved degree by degree from
/// the top, then `g = phi . (inclusion of the Y part)`.
fn extract_g(ctx: &Context, nc: &NormalCone, y_obj: &DObject, cy: &Complex) -> DMorphism {
    let n = ctx.n;
    let mut cz = canonical_complex(n, &nc.z);
    cz.extend_range(nc.cone.lo, nc.cone.hi());
    let mut cy2 = cy.clone();
    cy2.extend_range(nc.cone.lo, nc.cone.hi());
    let len = nc.cone.terms.len();
    let mut phi: Vec<Option<ModMap>> = vec![None; len];
    for idx in (0..len).rev() {
        let k = nc.cone.lo + idx as i64;
        let term = &nc.cone.terms[idx];
        let can_term = cz.term(k).unwrap();
        let mut solver = MapSolver::new(&term.rep, &can_term.rep);
        if let Some(d_can) = cz.diff(k) {
            let rhs = match (phi.get(idx + 1).and_then(|p| p.as_ref()), nc.cone.diff(k)) {
                (Some(next), Some(d_cone)) => next.compose(d_cone),
                _ => ModMap::zero(&term.rep, &d_can.target),
            };
            solver.require_post(d_can, &rhs);
        }
        // cohomology condition: phi must induce the chosen identification
        if let Some((_, coh, bc)) = nc.per_degree.iter().find(|(kk, _, _)| *kk == k) {
            let mut pi_blocks: Vec<Mat> =
                (0..n).map(|v| Mat::zero(bc.sum.dims[v], can_term.rep.dims[v])).collect();
            let bar_reps: Vec<Rep> = bc.bars.iter().map(|b| rep_of(n, *b)).collect();
            let bar_refs: Vec<&Rep> = bar_reps.iter().collect();
            for (e, entry) in can_term.entries.iter().enumerate() {
                if entry.role != Role::Res0 {
                    continue;
                }
                let owner = entry.owner; // index into z.summands
                let (kk, bar_idx) = nc.z_origin[owner];
                if kk != k {
                    continue;
                }
                let bar = nc.z.summands[owner].iv;
                let pi_bar = canonical_hom(n, Interval::new(1, bar.b), bar).unwrap();
                let incl_bar = crate::repcore::inclusion_into_sum(&bar_refs, &bc.sum, bar_idx);
                let comp = incl_bar.compose(&pi_bar).compose(&can_term.entry_projection(n, e));
                for v in 0..n {
                    pi_blocks[v] = &pi_blocks[v] + &comp.blocks[v];
                }
            }
            let pi_bars =
                ModMap { source: can_term.rep.clone(), target: bc.sum.clone(), blocks: pi_blocks };
            let rhs = bc.to_sum.compose(&coh.proj_zh);
            solver.require_sandwich(&pi_bars, &coh.z_incl, &rhs);
        }
        phi[idx] = Some(solver.solve().expect("comparison lift phi"));
    }
    // g_chain = phi . incl_Y
    let mut g_chain = Vec::with_capacity(len);
    for idx in 0..len {
        let k = nc.cone.lo + idx as i64;
        let term = &nc.cone.terms[idx];
        let yt = cy2.term(k).unwrap();
        let mut incl_blocks = zero_blocks(yt, term);
        for (ey, e) in yt.entries.iter().enumerate() {
            if let Some(ec) = term.find(Side::FromY, e.owner, e.role) {
                add_p_block(&mut incl_blocks, yt, ey, term, ec, &Q::one());
            }
        }
        let incl = map_from_blocks(yt, term, incl_blocks);
        let comp = phi[idx].as_ref().unwrap().compose(&incl);
        g_chain.push(comp);
    }
    extract_between_canonical(ctx, y_obj, &cy2, &nc.z, &cz, &g_chain)
}

/// Read a chain map between two canonical complexes off as a derived
/// morphism in the canonical bases.
pub fn extract_between_canonical(
    ctx: &Context,
    src_obj: &DObject,
    src_cx: &Complex,
    tgt_obj: &DObject,
    tgt_cx: &Complex,
    chain: &[ModMap],
) -> DMorphism {
    let n = ctx.n;
    let mut out = DMorphism::zero(src_obj.clone(), tgt_obj.clone());
    for (i, si) in src_obj.summands.iter().enumerate() {
        for (j, sj) in tgt_obj.summands.iter().enumerate() {
            let Some(deg) = block_degree(si, sj) else { continue };
            if !ctx.block_nonzero(si.iv, sj.iv, deg) {
                continue;
            }
            let coeff = if deg == 0 {
                let k = -si.shift;
                let (st, tt) = (src_cx.term(k).unwrap(), tgt_cx.term(k).unwrap());
                let (Some(es), Some(et)) = (
                    st.find(Side::Main, i, Role::Res0),
                    tt.find(Side::Main, j, Role::Res0),
                ) else {
                    continue;
                };
                let u = &chain[(k - src_cx.lo) as usize];
                let comp = tt.entry_projection(n, et).compose(u).compose(&st.entry_inclusion(n, es));
                let pi_src = canonical_hom(n, Interval::new(1, si.iv.b), si.iv).unwrap();
                let pi_tgt = canonical_hom(n, Interval::new(1, sj.iv.b), sj.iv).unwrap();
                let m = pi_tgt.compose(&comp);
                if m.is_zero() {
                    Q::zero()
                } else {
                    let reference = ctx.hom_generator(si.iv, sj.iv).unwrap().compose(&pi_src);
                    crate::repcore::map_ratio(&m, &reference).expect("parallel hom component")
                }
            } else {
                let k = -si.shift - 1;
                let (st, tt) = (src_cx.term(k).unwrap(), tgt_cx.term(k).unwrap());
                let (Some(es), Some(et)) = (
                    st.find(Side::Main, i, Role::Res1),
                    tt.find(Side::Main, j, Role::Res0),
                ) else {
                    continue;
                };
                let u = &chain[(k - src_cx.lo) as usize];
                let comp = tt.entry_projection(n, et).compose(u).compose(&st.entry_inclusion(n, es));
                let pi_tgt = canonical_hom(n, Interval::new(1, sj.iv.b), sj.iv).unwrap();
                let cocycle = pi_tgt.compose(&comp);
                let coords = ctx.ext_space(si.iv, sj.iv).class_coords(&cocycle);
                coords[0].clone()
            };
            if !coeff.is_zero() {
                out.add_to_block(i, j, coeff);
            }
        }
    }
    out
}

/// Canonical complexes for several objects over one shared degree range.
pub fn aligned_complexes(n: usize, objs: &[&DObject]) -> Vec<Complex> {
    let mut cs: Vec<Complex> = objs.iter().map(|o| canonical_complex(n, o)).collect();
    let lo = cs.iter().map(|c| c.lo).min().unwrap();
    let hi = cs.iter().map(|c| c.hi()).max().unwrap();
    for c in &mut cs {
        c.extend_range(lo, hi);
    }
    cs
}

/// Independent composition oracle: realize both morphisms as chain maps,
/// compose term by term, and read the composite off again.
pub fn compose_via_chain(
    ctx: &Context,
    f: &DMorphism,
    g: &DMorphism,
) -> DMorphism {
    assert_eq!(f.target, g.source);
    let cs = aligned_complexes(ctx.n, &[&f.source, &f.target, &g.target]);
    let (ca, cb, cc) = (&cs[0], &cs[1], &cs[2]);
    let uf = realize(f, ca, cb);
    let ug = realize(g, cb, cc);
    let comp: Vec<ModMap> = (0..uf.len()).map(|i| ug[i].compose(&uf[i])).collect();
    extract_between_canonical(ctx, &f.source, ca, &g.target, cc, &comp)
}
