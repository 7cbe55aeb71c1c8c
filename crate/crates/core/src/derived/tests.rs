use super::chain::{compose_via_chain, cone_object, cone_with_maps};
use super::*;
use crate::linalg::q;
use num_traits::Zero;

fn iv(a: usize, b: usize) -> Interval {
    Interval::new(a, b)
}

fn ds(a: usize, b: usize, s: i64) -> DSummand {
    DSummand { iv: iv(a, b), shift: s }
}

/// All summands in a small window of shifts.
fn window(ctx: &Context, shifts: std::ops::RangeInclusive<i64>) -> Vec<DSummand> {
    ctx.intervals
        .iter()
        .flat_map(|&i| shifts.clone().map(move |s| DSummand { iv: i, shift: s }))
        .collect()
}

#[test]
fn graded_hom_examples() {
    let ctx = Context::new(3);
    let p1 = DObject::single(iv(1, 1), 0);
    assert_eq!(ctx.hom_dim_d(&p1, &p1), 1);
    let s2 = DObject::single(iv(2, 2), 0);
    let s1_1 = DObject::single(iv(1, 1), 1);
    assert_eq!(ctx.hom_dim_d(&s2, &s1_1), 1);
    let s1_2 = DObject::single(iv(1, 1), 2);
    assert_eq!(ctx.hom_dim_d(&s2, &s1_2), 0);
}

#[test]
fn hereditary_vanishing_window() {
    for n in 1..=5 {
        let ctx = Context::new(n);
        for &x in &window(&ctx, -1..=1) {
            for &y in &window(&ctx, -1..=1) {
                let graded = ctx.hom_graded(&DObject::new(vec![x]), &DObject::new(vec![y]));
                for (k, dim) in graded {
                    let d = (y.shift + k) - x.shift;
                    assert!(
                        dim == 0 || d == 0 || d == 1,
                        "nonzero graded hom outside degrees 0,1"
                    );
                }
            }
        }
    }
}

#[test]
fn compose_identity_and_zero_laws() {
    let ctx = Context::new(4);
    let x = DObject::new(vec![ds(1, 2, 0), ds(2, 3, 0), ds(1, 4, 1)]);
    let idm = DMorphism::identity(&x);
    let c = ctx.compose_d(&idm, &idm).unwrap();
    assert_eq!(c, idm);
    // degree-2 products vanish: ext then ext
    let a = DObject::single(iv(3, 3), 0);
    let b = DObject::single(iv(2, 2), 1);
    let c2 = DObject::single(iv(1, 1), 2);
    assert!(ctx.ext_nonzero(iv(3, 3), iv(2, 2)));
    assert!(ctx.ext_nonzero(iv(2, 2), iv(1, 1)));
    let mut f = DMorphism::zero(a.clone(), b.clone());
    f.set_block(0, 0, q(1));
    let mut g = DMorphism::zero(b, c2);
    g.set_block(0, 0, q(1));
    let comp = ctx.compose_d(&f, &g).unwrap();
    assert!(comp.is_zero());
}

/// Exhaustive associativity against the chain-map realization oracle, n=3.
#[test]
fn compose_matches_chain_oracle() {
    let n = 3;
    let ctx = Context::new(n);
    let objs = window(&ctx, 0..=1);
    for &a in &objs {
        for &b in &objs {
            let Some(d1) = block_degree(&a, &b) else { continue };
            if !ctx.block_nonzero(a.iv, b.iv, d1) {
                continue;
            }
            for &c in &objs {
                let Some(d2) = block_degree(&b, &c) else { continue };
                if !ctx.block_nonzero(b.iv, c.iv, d2) {
                    continue;
                }
                let (oa, ob, oc) =
                    (DObject::new(vec![a]), DObject::new(vec![b]), DObject::new(vec![c]));
                let mut f = DMorphism::zero(oa.clone(), ob.clone());
                f.set_block(0, 0, q(1));
                let mut g = DMorphism::zero(ob.clone(), oc.clone());
                g.set_block(0, 0, q(1));
                let fast = ctx.compose_d(&f, &g).unwrap();
                let slow = compose_via_chain(&ctx, &f, &g);
                assert_eq!(fast, slow, "{a:?} -> {b:?} -> {c:?}");
            }
        }
    }
}

#[test]
fn cone_of_identity_and_zero() {
    let ctx = Context::new(4);
    let x = DObject::new(vec![ds(1, 3, 0), ds(2, 2, 1)]);
    let z = cone_object(&ctx, &DMorphism::identity(&x));
    assert!(z.is_zero());
    let y = DObject::new(vec![ds(2, 4, 0)]);
    let zero = DMorphism::zero(x.clone(), y.clone());
    let z2 = cone_object(&ctx, &zero);
    assert_eq!(z2, y.direct_sum(&x.shifted(1)));
}

#[test]
fn cone_of_ext_class_is_middle_term() {
    // the class in Ext^1(S_2, S_1) seen as S_2[-1] -> S_1 has cone [1,2]
    let ctx = Context::new(2);
    let src = DObject::single(iv(2, 2), -1);
    let dst = DObject::single(iv(1, 1), 0);
    let mut f = DMorphism::zero(src, dst);
    f.set_block(0, 0, q(1));
    let z = cone_object(&ctx, &f);
    assert_eq!(z, DObject::single(iv(1, 2), 0));
}

#[test]
fn triangle_composites_vanish() {
    // exhaustive over all basis morphisms between single summands, n <= 4
    for n in 1..=4 {
        let ctx = Context::new(n);
        let objs = window(&ctx, 0..=1);
        for &a in &objs {
            for &b in &objs {
                let Some(deg) = block_degree(&a, &b) else { continue };
                if !ctx.block_nonzero(a.iv, b.iv, deg) {
                    continue;
                }
                let (oa, ob) = (DObject::new(vec![a]), DObject::new(vec![b]));
                let mut f = DMorphism::zero(oa.clone(), ob.clone());
                f.set_block(0, 0, q(1));
                let t = cone_with_maps(&ctx, &f, true);
                let gf = ctx.compose_d(&t.f, &t.g).unwrap();
                assert!(gf.is_zero(), "g.f != 0 at {a:?} -> {b:?} (cone {:?})", t.z);
                let hg = ctx.compose_d(&t.g, &t.h).unwrap();
                assert!(hg.is_zero(), "h.g != 0 at {a:?} -> {b:?}");
                let f1h = ctx.compose_d(&t.h, &t.f.shifted(1)).unwrap();
                assert!(f1h.is_zero(), "f[1].h != 0 at {a:?} -> {b:?}");
            }
        }
    }
}

#[test]
fn cone_euler_characteristic_balances() {
    let ctx = Context::new(4);
    let objs = window(&ctx, 0..=0);
    for &a in &objs {
        for &b in &objs {
            let Some(deg) = block_degree(&a, &b) else { continue };
            if !ctx.block_nonzero(a.iv, b.iv, deg) {
                continue;
            }
            let (oa, ob) = (DObject::new(vec![a]), DObject::new(vec![b]));
            let mut f = DMorphism::zero(oa.clone(), ob.clone());
            f.set_block(0, 0, q(1));
            let z = cone_object(&ctx, &f);
            let t = DObject::single(iv(1, 4), 0);
            let euler = |o: &DObject| -> i64 {
                ctx.hom_graded(&t, o)
                    .into_iter()
                    .map(|(k, d)| if k.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
                    .sum()
            };
            assert_eq!(euler(&oa) - euler(&ob) + euler(&z), 0);
        }
    }
}

#[test]
fn tau_on_objects_and_serre_duality() {
    for n in 1..=4 {
        let ctx = Context::new(n);
        // tau_D(P_1) = I_1[-1]
        let t = ctx.tau_obj(ds(1, 1, 0));
        assert_eq!(t, ds(1, n, -1));
        // Serre duality with S = tau[1]: dim Hom(X, Y) = dim Hom(Y, tau X [1])
        let objs = window(&ctx, -1..=1);
        for &x in &objs {
            for &y in &objs {
                let ox = DObject::new(vec![x]);
                let oy = DObject::new(vec![y]);
                let lhs = ctx.hom_dim_d(&ox, &oy);
                let tx = ctx.tau_d_obj(&ox);
                let rhs = ctx.hom_dim_d(&oy, &tx.shifted(1));
                assert_eq!(lhs, rhs, "n={n} X={x:?} Y={y:?}");
            }
        }
    }
}

#[test]
fn tau_roundtrip_on_morphisms() {
    let ctx = Context::new(4);
    let objs = window(&ctx, 0..=1);
    for &a in &objs {
        for &b in &objs {
            let Some(deg) = block_degree(&a, &b) else { continue };
            if !ctx.block_nonzero(a.iv, b.iv, deg) {
                continue;
            }
            let (oa, ob) = (DObject::new(vec![a]), DObject::new(vec![b]));
            let mut f = DMorphism::zero(oa, ob);
            f.set_block(0, 0, q(2));
            let back = ctx.tau_inv_d(&ctx.tau_d(&f));
            assert_eq!(back, f);
            let fwd = ctx.tau_d(&ctx.tau_inv_d(&f));
            assert_eq!(fwd, f);
        }
    }
}

#[test]
fn tau_is_functorial() {
    // tau(g . f) = tau(g) . tau(f) on all composable canonical pairs, n=4
    let ctx = Context::new(4);
    let objs = window(&ctx, 0..=1);
    for &a in &objs {
        for &b in &objs {
            let Some(d1) = block_degree(&a, &b) else { continue };
            if !ctx.block_nonzero(a.iv, b.iv, d1) {
                continue;
            }
            for &c in &objs {
                let Some(d2) = block_degree(&b, &c) else { continue };
                if d1 + d2 > 1 || !ctx.block_nonzero(b.iv, c.iv, d2) {
                    continue;
                }
                let (oa, ob, oc) =
                    (DObject::new(vec![a]), DObject::new(vec![b]), DObject::new(vec![c]));
                let mut f = DMorphism::zero(oa.clone(), ob.clone());
                f.set_block(0, 0, q(1));
                let mut g = DMorphism::zero(ob.clone(), oc.clone());
                g.set_block(0, 0, q(1));
                let lhs = ctx.tau_d(&ctx.compose_d(&f, &g).unwrap());
                let rhs = ctx.compose_d(&ctx.tau_d(&f), &ctx.tau_d(&g)).unwrap();
                assert_eq!(lhs, rhs, "tau not functorial at {a:?} -> {b:?} -> {c:?}");
            }
        }
    }
}

#[test]
fn f_is_an_autoequivalence() {
    // F = tau^{-1}[d-1]: preserves hom dimensions, functorial, F^0 = id
    for d in [2usize, 4] {
        let n = if d == 2 { 4 } else { 3 };
        let ctx = Context::new(n);
        let objs = window(&ctx, 0..=1);
        for &x in &objs {
            assert_eq!(ctx.f_obj(x, d, 0), x);
            for &y in &objs {
                let ox = DObject::new(vec![x]);
                let oy = DObject::new(vec![y]);
                for m in [-2i64, -1, 1, 2] {
                    let fx = ctx.f_d_obj(&ox, d, m);
                    let fy = ctx.f_d_obj(&oy, d, m);
                    assert_eq!(ctx.hom_dim_d(&ox, &oy), ctx.hom_dim_d(&fx, &fy));
                }
            }
        }
        if d == 2 {
            for i in 1..=n {
                let p = ds(1, i, 0);
                let f = ctx.f_obj(p, 2, 1);
                let expect = ctx.tau_inv_obj(p);
                assert_eq!(f, DSummand { iv: expect.iv, shift: expect.shift + 1 });
            }
        }
        for &a in &objs {
            for &b in &objs {
                let Some(d1) = block_degree(&a, &b) else { continue };
                if !ctx.block_nonzero(a.iv, b.iv, d1) {
                    continue;
                }
                for &c in &objs {
                    let Some(d2) = block_degree(&b, &c) else { continue };
                    if d1 + d2 > 1 || !ctx.block_nonzero(b.iv, c.iv, d2) {
                        continue;
                    }
                    let (oa, ob, oc) =
                        (DObject::new(vec![a]), DObject::new(vec![b]), DObject::new(vec![c]));
                    let mut f = DMorphism::zero(oa.clone(), ob.clone());
                    f.set_block(0, 0, q(1));
                    let mut g = DMorphism::zero(ob.clone(), oc.clone());
                    g.set_block(0, 0, q(1));
                    let lhs = ctx.f_d(&ctx.compose_d(&f, &g).unwrap(), d, 1);
                    let rhs = ctx.compose_d(&ctx.f_d(&f, d, 1), &ctx.f_d(&g, d, 1)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn shift_laws() {
    let x = DObject::new(vec![ds(1, 2, 0), ds(2, 3, -1)]);
    assert_eq!(x.shifted(0), x);
    assert_eq!(x.shifted(2).shifted(-2), x);
}

#[test]
fn cone_structural_maps_nonzero_for_nonsplit() {
    // For the extension class S_2[-1] -> S_1, the triangle is
    // S_2[-1] -> S_1 -> [1,2] -> S_2 and both structural maps are nonzero.
    let ctx = Context::new(2);
    let src = DObject::single(iv(2, 2), -1);
    let dst = DObject::single(iv(1, 1), 0);
    let mut f = DMorphism::zero(src, dst);
    f.set_block(0, 0, q(1));
    let t = cone_with_maps(&ctx, &f, true);
    assert_eq!(t.z, DObject::single(iv(1, 2), 0));
    assert!(!t.g.is_zero());
    assert!(!t.h.is_zero());
    assert!(ctx.compose_d(&t.f, &t.g).unwrap().is_zero());
}

#[test]
fn scale_to_zero_clears_blocks() {
    let a = DObject::single(iv(1, 1), 0);
    let f = DMorphism::identity(&a).scale(&q(0));
    assert!(f.is_zero());
    assert!(q(0).is_zero());
}
