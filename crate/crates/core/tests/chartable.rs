use std::sync::Arc;
use std::time::Instant;

use greenring::arith::Cyclo;
use greenring::chartable::{char_table, perm_character};
use greenring::group::{GroupSpec, ProductGroup};

fn group(s: &str) -> Arc<greenring::group::FiniteGroup> {
    GroupSpec::parse(s).unwrap().build().unwrap()
}

#[test]
fn fixture_tables_satisfy_all_invariants() {
    let mut specs: Vec<String> = (1..=12).map(|n| format!("cyclic:{n}")).collect();
    specs.extend(["sym:3", "dihedral:4", "quaternion", "alt:4", "sym:4", "prod:cyclic:2,cyclic:2"].map(String::from));
    for s in specs {
        let g = group(&s);
        let t = char_table(&g).unwrap();
        t.verify().unwrap_or_else(|e| panic!("{s}: {e}"));
    }
}

#[test]
fn larger_groups() {
    for s in
        ["sym:5", "alt:5", "prod:dihedral:4,sym:3", "prod:cyclic:8,cyclic:8", "dihedral:12", "prod:quaternion,cyclic:3"]
    {
        let t0 = Instant::now();
        let g = group(s);
        let t = char_table(&g).unwrap();
        let built = t0.elapsed();
        t.verify().unwrap_or_else(|e| panic!("{s}: {e}"));
        eprintln!("{s}: built {built:?}, verified {:?}", t0.elapsed());
    }
}

#[test]
fn product_table_is_outer_product_of_factor_tables() {
    let a = group("sym:3");
    let b = group("cyclic:4");
    let p = ProductGroup::pair(&a, &b);
    let ta = char_table(&a).unwrap();
    let tb = char_table(&b).unwrap();
    let tp = char_table(p.group()).unwrap();
    assert_eq!(tp.len(), ta.len() * tb.len());
    let mut outer: Vec<Vec<Cyclo>> = Vec::new();
    for x in ta.rows() {
        for y in tb.rows() {
            outer.push(
                (0..p.group().num_classes())
                    .map(|c| {
                        let t = p.class_tuple(c);
                        x.value(t[0]) * y.value(t[1])
                    })
                    .collect(),
            );
        }
    }
    outer.sort();
    let mut rows: Vec<Vec<Cyclo>> = tp.rows().iter().map(|r| r.values().to_vec()).collect();
    rows.sort();
    assert_eq!(rows, outer);
}

#[test]
fn permutation_characters_decompose_with_natural_multiplicities() {
    let s3 = group("sym:3");
    let t3 = char_table(&s3).unwrap();
    // left action of S_3 on cosets of a point stabiliser: size 3
    let stab =
        greenring::group::Subgroup::generated(&s3, &[(0..6).find(|&x| s3.element_order(x) == 2).unwrap()]).unwrap();
    let mut coset_of = vec![usize::MAX; 6];
    let mut reps = Vec::new();
    for x in 0..6 {
        if coset_of[x] == usize::MAX {
            for &h in stab.elements() {
                coset_of[s3.mul(x, h)] = reps.len();
            }
            reps.push(x);
        }
    }
    let action: Vec<u32> =
        (0..6).flat_map(|gg| reps.iter().map(|&r| coset_of[s3.mul(gg, r)] as u32).collect::<Vec<_>>()).collect();
    let chi = perm_character(&s3, 3, &action);
    let by_order = |o: u32| (0..3).find(|&c| s3.element_order(s3.class_rep(c)) == o).unwrap();
    assert_eq!(chi.value(by_order(1)), &Cyclo::from_int(3));
    assert_eq!(chi.value(by_order(2)), &Cyclo::from_int(1));
    assert_eq!(chi.value(by_order(3)), &Cyclo::from_int(0));
    let mult = t3.decompose(&chi).unwrap();
    for m in mult {
        let r = m.as_rational().unwrap().clone();
        assert!(r.is_integer() && r >= num_rational::BigRational::from_integer(0.into()));
    }
}
