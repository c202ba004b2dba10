use std::sync::Arc;

use greenring::arith::{int, rat, Cyclo};
use greenring::biset::{
    act_factored, shifted_compose, shifted_compose_via, shifted_product, shifted_product_via, BasicBiset, Biset, Route,
    ShiftedFn,
};
use greenring::chartable::{char_table, perm_character};
use greenring::classfn::ClassFunction;
use greenring::group::{FiniteGroup, GroupHom, GroupSpec, ProductGroup, Subgroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grp(s: &str) -> Arc<FiniteGroup> {
    GroupSpec::parse(s).unwrap().build().unwrap()
}

fn trivial() -> Arc<FiniteGroup> {
    grp("cyclic:1")
}

fn sub(g: &Arc<FiniteGroup>, gens: &[usize]) -> Subgroup {
    Subgroup::generated(g, gens).unwrap()
}

fn element_of_order(g: &FiniteGroup, o: u32) -> usize {
    (0..g.order()).find(|&x| g.element_order(x) == o).unwrap()
}

fn small_value(rng: &mut ChaCha8Rng, n: u32) -> Cyclo {
    let k = rng.gen_range(0..n as i64);
    Cyclo::root_of_unity(n, k).scale(&rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)))
}

fn random_classfn(rng: &mut ChaCha8Rng, g: &Arc<FiniteGroup>) -> ClassFunction {
    let e = g.exponent();
    ClassFunction::from_fn(g, |_| small_value(rng, e))
}

fn random_shifted(rng: &mut ChaCha8Rng, factors: &[Arc<FiniteGroup>]) -> ShiftedFn {
    let e = factors.iter().map(|f| f.exponent()).max().unwrap();
    ShiftedFn::from_fn(factors, |_| small_value(rng, e))
}

/// A transitive `(H, G)`-biset `(H×G)/D` with `D` generated by up to two random pairs.
fn random_transitive(rng: &mut ChaCha8Rng, h: &Arc<FiniteGroup>, g: &Arc<FiniteGroup>) -> Biset {
    let n = rng.gen_range(0..=2);
    let gens: Vec<(usize, usize)> =
        (0..n).map(|_| (rng.gen_range(0..h.order()), rng.gen_range(0..g.order()))).collect();
    Biset::from_subgroup(h, g, &gens).unwrap()
}

fn assert_same_action(a: &Biset, b: &Biset) {
    let g = a.right();
    for c in 0..g.num_classes() {
        let e = ClassFunction::indicator(g, &[c]);
        assert_eq!(a.act(&e).unwrap(), b.act(&e).unwrap());
    }
}

#[test]
fn transitive_biset_sizes() {
    let c2 = grp("cyclic:2");
    let s3 = grp("sym:3");
    let all: Vec<(usize, usize)> = (0..2).flat_map(|a| (0..6).map(move |b| (a, b))).collect();
    assert_eq!(Biset::from_subgroup(&c2, &s3, &all).unwrap().size(), 1);
    assert_eq!(Biset::from_subgroup(&c2, &s3, &[]).unwrap().size(), 12);
    assert_eq!(Biset::from_subgroup(&c2, &c2, &[(1, 1)]).unwrap().size(), 2);
    assert!(Biset::from_subgroup(&c2, &c2, &[(2, 0)]).is_err());
}

#[test]
fn basic_biset_examples() {
    let c2 = grp("cyclic:2");
    let c4 = grp("cyclic:4");
    let ind = BasicBiset::Ind(Subgroup::trivial(&c2)).biset().unwrap();
    assert_eq!((ind.size(), ind.left().order(), ind.right().order()), (2, 2, 1));

    let def = BasicBiset::Def(sub(&c4, &[2])).biset().unwrap();
    assert_eq!((def.size(), def.left().order(), def.right().order()), (2, 2, 4));

    let s3 = grp("sym:3");
    let iso = BasicBiset::Iso(GroupHom::identity(&s3)).biset().unwrap();
    let x = random_transitive(&mut ChaCha8Rng::seed_from_u64(1), &s3, &c2);
    assert!(iso.compose(&x).unwrap().is_isomorphic(&x));
    assert!(iso.is_isomorphic(&Biset::identity(&s3)));

    let t = element_of_order(&s3, 2);
    assert!(BasicBiset::Inf(sub(&s3, &[t])).biset().is_err());
    let not_bijective = GroupHom::new(&c2, &c2, vec![0, 0]).unwrap();
    assert!(BasicBiset::Iso(not_bijective).biset().is_err());
}

#[test]
fn composition_examples() {
    let c2 = grp("cyclic:2");
    let s3 = grp("sym:3");
    let ind = BasicBiset::Ind(Subgroup::trivial(&c2)).biset().unwrap();
    let res = BasicBiset::Res(Subgroup::trivial(&c2)).biset().unwrap();
    let rr = res.compose(&ind).unwrap();
    assert_eq!((rr.size(), rr.left().order(), rr.right().order()), (2, 1, 1));

    let c3 = sub(&s3, &[element_of_order(&s3, 3)]);
    let ind3 = BasicBiset::Ind(c3.clone()).biset().unwrap();
    let res3 = BasicBiset::Res(c3).biset().unwrap();
    assert_eq!(ind3.compose(&res3).unwrap().size(), 12);
    assert_eq!(res3.compose(&ind3).unwrap().size(), 6);

    let x = random_transitive(&mut ChaCha8Rng::seed_from_u64(7), &s3, &c2);
    assert!(x.compose(&Biset::identity(&c2)).unwrap().is_isomorphic(&x));
    assert!(Biset::identity(&s3).compose(&x).unwrap().is_isomorphic(&x));
    assert!(x.compose(&x).is_err());
}

#[test]
fn product_examples() {
    let c2 = grp("cyclic:2");
    let s3 = grp("sym:3");
    let ind = BasicBiset::Ind(Subgroup::trivial(&c2)).biset().unwrap();
    let res = BasicBiset::Res(Subgroup::trivial(&c2)).biset().unwrap();
    let p = ind.product(&res);
    assert_eq!((p.size(), p.left().order(), p.right().order()), (4, 2, 2));

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = random_transitive(&mut rng, &s3, &c2);
    let y = random_transitive(&mut rng, &c2, &s3);
    assert_eq!(x.product(&y).size(), x.size() * y.size());

    let id = Biset::identity(&c2).product(&Biset::identity(&s3));
    assert!(id.is_isomorphic(&Biset::identity(id.left())));
}

#[test]
fn action_examples() {
    let c1 = trivial();
    let c2 = grp("cyclic:2");
    let sign = &char_table(&c2).unwrap().rows()[1].clone();
    let one = ClassFunction::constant(&c1, Cyclo::one());

    let ind = BasicBiset::Ind(Subgroup::trivial(&c2)).biset().unwrap();
    assert_eq!(ind.act(&one).unwrap().values(), &[Cyclo::from_int(2), Cyclo::zero()]);

    let res = BasicBiset::Res(Subgroup::trivial(&c2)).biset().unwrap();
    assert_eq!(res.act(sign).unwrap().values(), &[Cyclo::one()]);

    let def = BasicBiset::Def(Subgroup::whole(&c2)).biset().unwrap();
    assert_eq!(def.act(sign).unwrap().values(), &[Cyclo::zero()]);

    assert!(ind.act(sign).is_err());
}

#[test]
fn action_is_functorial_on_random_transitive_bisets() {
    let groups = ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "sym:3", "dihedral:4", "quaternion"].map(grp);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let [k, h, g] = [0, 0, 0].map(|_| groups[rng.gen_range(0..groups.len())].clone());
        let y = random_transitive(&mut rng, &k, &h);
        let x = random_transitive(&mut rng, &h, &g);
        let yx = y.compose(&x).unwrap();
        let chi = random_classfn(&mut rng, &g);
        assert_eq!(yx.act(&chi).unwrap(), y.act(&x.act(&chi).unwrap()).unwrap());
    }
}

#[test]
fn opposite_and_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = grp("dihedral:4");
    let g = grp("sym:3");
    for _ in 0..5 {
        let x = random_transitive(&mut rng, &h, &g);
        let oo = x.opposite().opposite();
        assert!(oo.is_isomorphic(&x));
        assert_same_action(&oo, &x);
        let chi = random_classfn(&mut rng, &g);
        assert_eq!(Biset::identity(&g).act(&chi).unwrap(), chi);
    }
}

#[test]
fn linearization_is_a_morphism() {
    let c1 = trivial();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let groups = ["cyclic:4", "sym:3", "quaternion", "alt:4"].map(grp);
    let one = ClassFunction::constant(&c1, Cyclo::one());
    for h in &groups {
        for k in &groups {
            let x = random_transitive(&mut rng, h, &c1);
            let y = random_transitive(&mut rng, k, h);
            let px = perm_character(h, x.size(), x.left_table());
            assert_eq!(px, x.act(&one).unwrap());
            let yx = y.compose(&x).unwrap();
            let pyx = perm_character(k, yx.size(), yx.left_table());
            assert_eq!(pyx, y.act(&px).unwrap());
        }
    }
}

#[test]
fn frobenius_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (gs, order) in [("sym:3", 3), ("sym:3", 2), ("dihedral:4", 4), ("quaternion", 4), ("alt:4", 3)] {
        let g = grp(gs);
        let h = sub(&g, &[element_of_order(&g, order)]);
        let hg = h.to_group().0;
        let ind = BasicBiset::Ind(h.clone()).biset().unwrap();
        let res = BasicBiset::Res(h).biset().unwrap();
        for _ in 0..4 {
            let a = random_classfn(&mut rng, &hg);
            let b = random_classfn(&mut rng, &g);
            let lhs = ind.act(&a).unwrap().mul(&b).unwrap();
            let rhs = ind.act(&a.mul(&res.act(&b).unwrap()).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let lhs = b.mul(&ind.act(&a).unwrap()).unwrap();
            let rhs = ind.act(&res.act(&b).unwrap().mul(&a).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn factored_action_matches_literal_product_biset() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let groups = ["cyclic:2", "cyclic:3", "sym:3"].map(grp);
    for _ in 0..6 {
        let [a, b, c, d] = [0, 0, 0, 0].map(|_| groups[rng.gen_range(0..groups.len())].clone());
        let x = random_transitive(&mut rng, &a, &b);
        let y = random_transitive(&mut rng, &c, &d);
        let right = ProductGroup::shared(&[b.clone(), d.clone()]);
        let left = ProductGroup::shared(&[a.clone(), c.clone()]);
        let chi = random_classfn(&mut rng, right.group());
        let direct = x.product(&y).act(&chi).unwrap();
        for cl in 0..left.group().num_classes() {
            let parts = left.split(left.group().class_rep(cl));
            let v = act_factored(&[x.clone(), y.clone()], &parts, |r| chi.at(right.join(r)).clone());
            assert_eq!(&v, direct.value(cl));
        }
    }
}

#[test]
fn kernel_and_explicit_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let groups = ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "prod:cyclic:2,cyclic:2"].map(grp);
    for _ in 0..8 {
        let [l, k, h, g] = [0, 0, 0, 0].map(|_| groups[rng.gen_range(0..groups.len())].clone());
        let beta = random_shifted(&mut rng, &[l.clone(), k.clone(), g.clone()]);
        let alpha = random_shifted(&mut rng, &[k.clone(), h.clone(), g.clone()]);
        assert_eq!(
            shifted_compose_via(Route::Kernel, &beta, &alpha).unwrap(),
            shifted_compose_via(Route::ExplicitBiset, &beta, &alpha).unwrap()
        );
        let a = random_shifted(&mut rng, &[l.clone(), g.clone()]);
        let b = random_shifted(&mut rng, &[h.clone(), g.clone()]);
        assert_eq!(
            shifted_product_via(Route::Kernel, &a, &b).unwrap(),
            shifted_product_via(Route::ExplicitBiset, &a, &b).unwrap()
        );
    }
}

#[test]
fn compose_over_c2_with_trivial_shift() {
    let c1 = trivial();
    let c2 = grp("cyclic:2");
    let beta = ShiftedFn::from_fn(&[c1.clone(), c2.clone(), c1.clone()], |p| Cyclo::from_int(3 + 2 * p[1] as i64));
    let alpha = ShiftedFn::from_fn(&[c2.clone(), c1.clone(), c1.clone()], |p| Cyclo::from_int(7 - 5 * p[0] as i64));
    let out = shifted_compose_via(Route::ExplicitBiset, &beta, &alpha).unwrap();
    let expected = (int(3 * 7) + int(5 * 2)) / int(2);
    assert_eq!(out.at(&[0, 0, 0]), &Cyclo::from_rat(expected));
    assert_eq!(out, shifted_compose(&beta, &alpha).unwrap());
}

#[test]
fn shifted_compose_identity_and_associativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let k = grp("sym:3");
    let g = grp("cyclic:2");
    let h = grp("cyclic:3");
    // the identity of K in the shifted category: the class function of the (K×K)-set →K, inflated over G
    let id_k = ShiftedFn::from_fn(&[k.clone(), k.clone(), g.clone()], |p| {
        let fixed = (0..k.order()).filter(|&x| k.mul(k.mul(p[0], x), k.inv(p[1])) == x).count();
        Cyclo::from_int(fixed as i64)
    });
    let alpha = random_shifted(&mut rng, &[k.clone(), h.clone(), g.clone()]);
    assert_eq!(shifted_compose(&id_k, &alpha).unwrap(), alpha);
    let beta = random_shifted(&mut rng, &[h.clone(), k.clone(), g.clone()]);
    assert_eq!(shifted_compose(&beta, &id_k).unwrap(), beta);

    let gamma = random_shifted(&mut rng, &[g.clone(), h.clone(), g.clone()]);
    let left = shifted_compose(&shifted_compose(&gamma, &beta).unwrap(), &alpha).unwrap();
    let right = shifted_compose(&gamma, &shifted_compose(&beta, &alpha).unwrap()).unwrap();
    assert_eq!(left, right);
}

#[test]
fn endomorphisms_of_the_trivial_group_multiply_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let c1 = trivial();
    for gs in ["cyclic:4", "sym:3", "quaternion"] {
        let g = grp(gs);
        let a = random_classfn(&mut rng, &g);
        let b = random_classfn(&mut rng, &g);
        let lift = |f: &ClassFunction| ShiftedFn::from_fn(&[c1.clone(), c1.clone(), g.clone()], |p| f.at(p[2]).clone());
        let ab = shifted_compose_via(Route::ExplicitBiset, &lift(&a), &lift(&b)).unwrap();
        assert_eq!(ab, lift(&a.mul(&b).unwrap()));
    }
}

#[test]
fn composition_through_the_trivial_group_is_the_outer_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let c1 = trivial();
    for (hs, ks, gs) in [
        ("cyclic:2", "sym:3", "cyclic:1"),
        ("cyclic:3", "cyclic:2", "cyclic:2"),
        ("quaternion", "cyclic:1", "cyclic:3"),
    ] {
        let (h, k, g) = (grp(hs), grp(ks), grp(gs));
        let a = random_shifted(&mut rng, &[h.clone(), c1.clone(), g.clone()]);
        let b = random_shifted(&mut rng, &[c1.clone(), k.clone(), g.clone()]);
        let out = shifted_compose_via(Route::ExplicitBiset, &a, &b).unwrap();
        let expect =
            ShiftedFn::from_fn(&[h.clone(), k.clone(), g.clone()], |p| a.at(&[p[0], 0, p[2]]) * b.at(&[0, p[1], p[2]]));
        assert_eq!(out, expect);
    }
}

#[test]
fn inflated_factor_turns_shifted_product_into_outer_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for (ks, hs, gs) in
        [("cyclic:2", "cyclic:3", "sym:3"), ("sym:3", "cyclic:2", "cyclic:4"), ("cyclic:1", "quaternion", "cyclic:2")]
    {
        let (k, h, g) = (grp(ks), grp(hs), grp(gs));
        let kg = ProductGroup::shared(&[k.clone(), g.clone()]);
        let n =
            Subgroup::from_elements(kg.group(), &(0..g.order()).map(|x| kg.join(&[0, x])).collect::<Vec<_>>()).unwrap();
        let inf = BasicBiset::Inf(n).biset().unwrap();
        // K×G / (1×G) is a copy of K with the same element order
        assert_eq!(inf.right().order(), k.order());
        let a = random_classfn(&mut rng, inf.right());
        let inflated = ShiftedFn::new(kg.clone(), inf.act(&a).unwrap()).unwrap();
        let b = random_shifted(&mut rng, &[h.clone(), g.clone()]);
        let prod = shifted_product(&inflated, &b).unwrap();
        let outer = ShiftedFn::from_fn(&[k.clone(), h.clone(), g.clone()], |p| {
            a.at(kg.join(&[p[0], 0]) / g.order()) * b.at(&[p[1], p[2]])
        });
        assert_eq!(prod, outer);
        assert_eq!(prod, shifted_product_via(Route::ExplicitBiset, &inflated, &b).unwrap());
    }
}
