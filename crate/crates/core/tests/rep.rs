use std::collections::BTreeSet;
use std::sync::Arc;

use greenring::arith::linalg::RowEchelon;
use greenring::arith::{euler_phi, lcm, rat, units_mod, Cyclo};
use greenring::biset::Biset;
use greenring::chartable::char_table;
use greenring::classfn::ClassFunction;
use greenring::group::{quotient, FiniteGroup, GroupSpec, Subgroup};
use greenring::rep::{
    extend_scalars, f_classes, galois_twist, idempotent_fclass, idempotent_orbit, idempotent_point, k_basis,
    materialize_galois, orbit_space, FieldSpec, KClassFunction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIXTURES: &[&str] = &[
    "cyclic:1",
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "cyclic:5",
    "cyclic:6",
    "cyclic:8",
    "cyclic:12",
    "sym:3",
    "dihedral:4",
    "quaternion",
    "alt:4",
    "prod:cyclic:2,cyclic:2",
    "prod:cyclic:3,cyclic:3",
    "prod:cyclic:4,cyclic:2",
];

const FIELDS: &[FieldSpec] = &[
    FieldSpec::Rationals,
    FieldSpec::Cyclotomic(3),
    FieldSpec::Cyclotomic(4),
    FieldSpec::Cyclotomic(8),
    FieldSpec::FullCyclotomic,
    FieldSpec::RealCyclotomic,
];

fn grp(s: &str) -> Arc<FiniteGroup> {
    GroupSpec::parse(s).unwrap().build().unwrap()
}

fn element_sets(g: &Arc<FiniteGroup>, f: FieldSpec) -> BTreeSet<Vec<usize>> {
    let p = f_classes(g, f);
    (0..p.len()).map(|b| p.elements(b)).collect()
}

#[test]
fn cyclotomic_galois_rule_matches_fixing_the_root() {
    for (d, n) in [(4u32, 4u32), (3, 4), (4, 5), (2, 8), (6, 4), (3, 6), (8, 12)] {
        let l = lcm(d as u64, n as u64);
        let w = Cyclo::root_of_unity(d, 1);
        // σ_j for j mod lcm(d, n) fixes Q(ω_d) iff it fixes ω_d; read the image mod n
        let mut expected: Vec<u32> = units_mod(l)
            .into_iter()
            .filter(|&j| w.galois(j as i64).unwrap() == w)
            .map(|j| (j % n as u64) as u32)
            .map(|j| if j == 0 { n } else { j })
            .collect();
        expected.sort_unstable();
        expected.dedup();
        assert_eq!(materialize_galois(FieldSpec::Cyclotomic(d), n).members(), expected.as_slice(), "d={d} n={n}");
    }
}

#[test]
fn f_class_examples() {
    let c4 = grp("cyclic:4");
    let expect: BTreeSet<Vec<usize>> = [vec![0], vec![2], vec![1, 3]].into_iter().collect();
    assert_eq!(element_sets(&c4, FieldSpec::Rationals), expect);
    for s in FIXTURES {
        let g = grp(s);
        assert_eq!(f_classes(&g, FieldSpec::FullCyclotomic).len(), g.num_classes());
    }
    assert_eq!(f_classes(&grp("sym:3"), FieldSpec::Rationals).len(), 3);
}

#[test]
fn f_class_count_is_number_of_galois_orbits_of_characters() {
    for s in FIXTURES {
        let g = grp(s);
        let table = char_table(&g).unwrap();
        for &f in FIELDS {
            let fn_ = f.galois_subgroup(g.exponent());
            let mut seen: BTreeSet<Vec<Cyclo>> = BTreeSet::new();
            let mut orbits = 0;
            for chi in table.rows() {
                if seen.contains(chi.values()) {
                    continue;
                }
                orbits += 1;
                for &i in fn_.members() {
                    seen.insert(chi.galois(i as i64).unwrap().into_values());
                }
            }
            assert_eq!(f_classes(&g, f).len(), orbits, "{s} over {f}");
        }
    }
}

#[test]
fn larger_fields_refine_the_partition() {
    let chain = [FieldSpec::Rationals, FieldSpec::Cyclotomic(4), FieldSpec::Cyclotomic(12), FieldSpec::FullCyclotomic];
    for s in FIXTURES {
        let g = grp(s);
        for w in chain.windows(2) {
            let (coarse, fine) = (f_classes(&g, w[0]), f_classes(&g, w[1]));
            assert!(fine.len() >= coarse.len());
            for c in 0..g.num_classes() {
                for d in 0..g.num_classes() {
                    if fine.block_of(c) == fine.block_of(d) {
                        assert_eq!(coarse.block_of(c), coarse.block_of(d));
                    }
                }
            }
        }
    }
}

#[test]
fn orbit_space_examples() {
    for s in FIXTURES {
        let g = grp(s);
        for &f in FIELDS {
            let om = orbit_space(&g, f, f);
            assert!(om.orbits().iter().all(|o| o.len() == 1));
            assert_eq!(om.len(), f_classes(&g, f).len());
        }
    }
    let c3 = grp("cyclic:3");
    let om = orbit_space(&c3, FieldSpec::Rationals, FieldSpec::FullCyclotomic);
    assert_eq!(om.len(), 2);
    assert_eq!(om.orbit_classes(0), vec![0]);
    assert_eq!(om.orbit_classes(1).len(), 2);
    let c5 = grp("cyclic:5");
    assert_eq!(orbit_space(&c5, FieldSpec::Cyclotomic(4), FieldSpec::FullCyclotomic).len(), 2);
}

#[test]
fn point_idempotents_are_class_indicators() {
    let c2 = grp("cyclic:2");
    let e = idempotent_point(&c2, 1).unwrap();
    assert_eq!(e.values(), &[Cyclo::zero(), Cyclo::one()]);
    let t = char_table(&c2).unwrap();
    let half = t.row(0).sub(t.row(1)).unwrap().scale_rat(&rat(1, 2));
    assert_eq!(e, half);
    for s in FIXTURES {
        let g = grp(s);
        for c in 0..g.num_classes() {
            assert_eq!(idempotent_point(&g, c).unwrap(), ClassFunction::indicator(&g, &[c]));
        }
    }
}

#[test]
fn orbit_idempotents_form_a_complete_orthogonal_family() {
    for s in FIXTURES {
        let g = grp(s);
        for &k in FIELDS {
            for &f in FIELDS {
                let om = orbit_space(&g, k, f);
                let es: Vec<KClassFunction> = (0..om.len()).map(|o| idempotent_orbit(&om, o).unwrap()).collect();
                let mut total = KClassFunction::zero(&g, k, f);
                for (i, a) in es.iter().enumerate() {
                    KClassFunction::new(k, f, a.func().clone()).unwrap();
                    assert!(a.is_idempotent());
                    for b in &es[i + 1..] {
                        assert!(a.mul(b).unwrap().is_zero());
                    }
                    total = total.add(a).unwrap();
                }
                assert_eq!(total, KClassFunction::one(&g, k, f));
            }
        }
    }
}

#[test]
fn fclass_idempotent_examples() {
    let c4 = grp("cyclic:4");
    let part = f_classes(&c4, FieldSpec::Rationals);
    let b = part.block_of_element(1);
    let e = idempotent_fclass(&part, b).unwrap();
    assert_eq!(e.func(), &ClassFunction::indicator(&c4, &[c4.class_of(1), c4.class_of(3)]));
    assert!(idempotent_fclass(&part, 9).is_err());

    let om = orbit_space(&c4, FieldSpec::Rationals, FieldSpec::Rationals);
    for o in 0..om.len() {
        let e_o = idempotent_orbit(&om, o).unwrap();
        assert_eq!(e_o.func(), idempotent_fclass(om.f_classes(), om.orbit(o)[0]).unwrap().func());
    }
}

#[test]
fn twisting_permutes_class_idempotents() {
    let c3 = grp("cyclic:3");
    let part = f_classes(&c3, FieldSpec::FullCyclotomic);
    let e1 = idempotent_fclass(&part, part.block_of_element(1)).unwrap();
    let e2 = idempotent_fclass(&part, part.block_of_element(2)).unwrap();
    assert_eq!(galois_twist(&e1, 2).unwrap(), e2);
    assert_eq!(galois_twist(&e1, 1).unwrap(), e1);
    assert!(galois_twist(&e1, 3).is_err());

    // a rational function is only permuted
    let g = grp("cyclic:12");
    let vals: Vec<Cyclo> = (0..g.num_classes()).map(|c| Cyclo::from_int(c as i64 * 3 - 5)).collect();
    let f = KClassFunction::from_values(&g, FieldSpec::FullCyclotomic, FieldSpec::FullCyclotomic, vals).unwrap();
    for j in [5i64, 7, 11] {
        let t = galois_twist(&f, j).unwrap();
        for c in 0..g.num_classes() {
            assert_eq!(t.value(g.power_class(c, j)), f.value(c));
        }
    }

    // for every F-class C and j: [j] e_C = e_{C^j}
    for s in FIXTURES {
        let g = grp(s);
        for &f in FIELDS {
            let part = f_classes(&g, f);
            for b in 0..part.len() {
                let e = idempotent_fclass(&part, b).unwrap();
                for j in units_mod(g.exponent() as u64) {
                    let twisted = galois_twist(&e, j as i64).unwrap();
                    assert_eq!(twisted, idempotent_fclass(&part, part.power_block(b, j as i64)).unwrap());
                }
            }
        }
    }
}

#[test]
fn orbit_sum_of_c3_is_galois_stable_in_the_point_basis() {
    let c3 = grp("cyclic:3");
    let om = orbit_space(&c3, FieldSpec::Rationals, FieldSpec::FullCyclotomic);
    let t = char_table(&c3).unwrap();
    let o = om.orbit_of_element(1);
    let e = idempotent_orbit(&om, o).unwrap();
    assert_eq!(e.func(), &ClassFunction::indicator(&c3, &[1, 2]));
    let coeffs = t.decompose(e.func()).unwrap();
    let conj: Vec<Cyclo> = coeffs.iter().map(|c| c.galois(2).unwrap()).collect();
    // σ_2 permutes the coefficients, as it swaps the two non-trivial characters
    let mut a = coeffs;
    let mut b = conj;
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn extension_of_scalars() {
    let c4 = grp("cyclic:4");
    let om = orbit_space(&c4, FieldSpec::Rationals, FieldSpec::Rationals);
    let e = idempotent_orbit(&om, om.orbit_of_element(1)).unwrap();
    assert_eq!(extend_scalars(&e, FieldSpec::Rationals).unwrap(), e);
    let full = extend_scalars(&e, FieldSpec::FullCyclotomic).unwrap();
    let sum = ClassFunction::indicator(&c4, &[1]).add(&ClassFunction::indicator(&c4, &[c4.class_of(3)])).unwrap();
    assert_eq!(full.func(), &sum);
    let via =
        extend_scalars(&extend_scalars(&e, FieldSpec::Cyclotomic(4)).unwrap(), FieldSpec::FullCyclotomic).unwrap();
    assert_eq!(via, full);
    assert!(extend_scalars(&full, FieldSpec::Rationals).is_err());
}

/// Q-dimension of the twist-stable F-class functions with values in `Q(ω_n)`,
/// by solving the linear conditions over Q.
fn stable_q_dimension(g: &Arc<FiniteGroup>, k: FieldSpec, f: FieldSpec) -> usize {
    let n = g.exponent();
    let part = f_classes(g, f);
    let phi = euler_phi(n as u64) as usize;
    let width = part.len() * phi;
    let basis: Vec<Cyclo> = (0..phi as i64).map(|a| Cyclo::root_of_unity(n, a)).collect();
    let mut constraints = RowEchelon::new(width);
    for &j in k.galois_subgroup(n).members() {
        for b in 0..part.len() {
            let bj = part.power_block(b, j as i64);
            // coordinate t of σ_j(f(b)) - f(b^j)
            for t in 0..phi {
                let mut row = vec![Cyclo::zero(); width];
                for (a, w) in basis.iter().enumerate() {
                    let c = w.galois(j as i64).unwrap().coords_at(n)[t].clone();
                    row[b * phi + a] += &Cyclo::from_rat(c);
                }
                row[bj * phi + t] -= &Cyclo::one();
                constraints.insert(&row);
            }
        }
    }
    width - constraints.rank()
}

#[test]
fn k_basis_has_the_rank_of_the_representation_ring() {
    for s in ["cyclic:3", "cyclic:4", "cyclic:5", "cyclic:8", "sym:3", "quaternion", "prod:cyclic:3,cyclic:3"] {
        let g = grp(s);
        let n = g.exponent();
        for &k in FIELDS {
            for &f in FIELDS {
                let om = orbit_space(&g, k, f);
                let basis = k_basis(&om);
                let classes = om.f_classes().len();
                assert_eq!(basis.len(), classes, "{s} {k} {f}");
                let mut ech = RowEchelon::new(g.num_classes());
                for b in &basis {
                    assert!(KClassFunction::new(k, f, b.func().clone()).is_ok());
                    assert!(ech.insert(b.values()));
                }
                let kn = k.galois_subgroup(n).len();
                let degree = euler_phi(n as u64) as usize / kn;
                assert_eq!(stable_q_dimension(&g, k, f), classes * degree, "{s} {k} {f}");
            }
        }
    }
}

#[test]
fn biset_action_preserves_the_functor() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let groups = ["cyclic:3", "cyclic:4", "sym:3", "quaternion", "prod:cyclic:2,cyclic:2"].map(grp);
    for _ in 0..30 {
        let h = groups[rng.gen_range(0..groups.len())].clone();
        let g = groups[rng.gen_range(0..groups.len())].clone();
        let gens: Vec<(usize, usize)> =
            (0..rng.gen_range(0..=2)).map(|_| (rng.gen_range(0..h.order()), rng.gen_range(0..g.order()))).collect();
        let x = Biset::from_subgroup(&h, &g, &gens).unwrap();
        let k = FIELDS[rng.gen_range(0..FIELDS.len())];
        let f = FIELDS[rng.gen_range(0..FIELDS.len())];
        let basis = k_basis(&orbit_space(&g, k, f));
        let mut v = KClassFunction::zero(&g, k, f);
        for b in &basis {
            v = v.add(&b.scale(&Cyclo::from_rat(rat(rng.gen_range(-4..=4), 3))).unwrap()).unwrap();
        }
        let out = v.act(&x).unwrap();
        assert_eq!(out.group().order(), h.order());
    }
}

#[test]
fn projections_map_f_classes_onto_f_classes() {
    let c4 = grp("cyclic:4");
    let s3 = grp("sym:3");
    let q8 = grp("quaternion");
    let cases = [
        (c4.clone(), Subgroup::from_elements(&c4, &[0, 2]).unwrap()),
        (s3.clone(), Subgroup::generated(&s3, &[(0..6).find(|&x| s3.element_order(x) == 3).unwrap()]).unwrap()),
        (q8.clone(), Subgroup::generated(&q8, &[(0..8).find(|&x| q8.element_order(x) == 2).unwrap()]).unwrap()),
    ];
    for (g, n) in cases {
        let (q, proj) = quotient(&g, &n).unwrap();
        for &f in FIELDS {
            let up = f_classes(&g, f);
            let down = element_sets(&q, f);
            for b in 0..up.len() {
                let mut image: Vec<usize> = up.elements(b).iter().map(|&x| proj.apply(x)).collect();
                image.sort_unstable();
                image.dedup();
                assert!(down.contains(&image), "{} over {f}", g.name());
            }
        }
    }
}
