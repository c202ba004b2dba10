//! Invariant suites over the fixture groups, each stopping at the first exact mismatch.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{divisors, Cyclo};
use crate::biset::{basic_family, shifted_compose_via, shifted_product_via, BasicBiset, Route};
use crate::chartable::char_table;
use crate::classfn::ClassFunction;
use crate::error::{Error, Result};
use crate::essential::{essential_dim, factor_through_trivial_rank, prim, seed_triplet_count, SmallerGroups};
use crate::group::{cyclic_subgroups_up_to_conjugacy, FiniteGroup, GroupSpec, ProductGroup};
use crate::ideal::{check_closure, ideal_evaluation, ideal_support_at, Context};
use crate::rep::{idempotent_orbit, orbit_space, point_idempotent, FieldSpec, KClassFunction};

pub mod random {
    //! Seeded generators for random test data.

    use std::sync::Arc;

    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    use crate::arith::{rat, Cyclo};
    use crate::biset::{Biset, ShiftedFn};
    use crate::classfn::ClassFunction;
    use crate::group::FiniteGroup;

    /// `c · ω_n^a` with a small rational `c`.
    pub fn small_value(rng: &mut ChaCha8Rng, n: u32) -> Cyclo {
        let a = rng.gen_range(0..n as i64);
        Cyclo::root_of_unity(n, a).scale(&rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)))
    }

    pub fn class_function(rng: &mut ChaCha8Rng, g: &Arc<FiniteGroup>) -> ClassFunction {
        let e = g.exponent();
        ClassFunction::from_fn(g, |_| small_value(rng, e))
    }

    pub fn shifted(rng: &mut ChaCha8Rng, factors: &[Arc<FiniteGroup>]) -> ShiftedFn {
        let e = factors.iter().map(|f| f.exponent()).max().unwrap_or(1);
        ShiftedFn::from_fn(factors, |_| small_value(rng, e))
    }

    /// A transitive `(H, G)`-biset `(H×G)/D`, `D` generated by up to two random pairs.
    pub fn transitive(rng: &mut ChaCha8Rng, h: &Arc<FiniteGroup>, g: &Arc<FiniteGroup>) -> Biset {
        let n = rng.gen_range(0..=2);
        let gens: Vec<(usize, usize)> =
            (0..n).map(|_| (rng.gen_range(0..h.order()), rng.gen_range(0..g.order()))).collect();
        Biset::from_subgroup(h, g, &gens).expect("random pairs are group elements")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Chartables,
    Idempotents,
    Omega,
    Ideals,
    Functoriality,
    Kernels,
    Frobenius,
    Essential,
    Factorization,
    Seeds,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Chartables,
        Suite::Idempotents,
        Suite::Omega,
        Suite::Ideals,
        Suite::Functoriality,
        Suite::Kernels,
        Suite::Frobenius,
        Suite::Essential,
        Suite::Factorization,
        Suite::Seeds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Chartables => "chartables",
            Suite::Idempotents => "idempotents",
            Suite::Omega => "omega",
            Suite::Ideals => "ideals",
            Suite::Functoriality => "functoriality",
            Suite::Kernels => "kernels",
            Suite::Frobenius => "frobenius",
            Suite::Essential => "essential",
            Suite::Factorization => "factorization",
            Suite::Seeds => "seeds",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse {
            input: s.to_string(),
            pos: 0,
            expected: format!("one of {}", Suite::ALL.iter().map(|x| x.name()).collect::<Vec<_>>().join(", ")),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_order: usize,
    pub cases: usize,
}

const CHARTABLE_GROUPS: &[&str] = &[
    "cyclic:1",
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "cyclic:5",
    "cyclic:6",
    "cyclic:7",
    "cyclic:8",
    "cyclic:9",
    "cyclic:10",
    "cyclic:11",
    "cyclic:12",
    "sym:3",
    "dihedral:4",
    "quaternion",
    "alt:4",
    "sym:4",
    "prod:cyclic:2,cyclic:2",
];

fn fixtures(names: &[&str], max_order: usize) -> Result<Vec<Arc<FiniteGroup>>> {
    let mut out = Vec::new();
    for name in names {
        let g = GroupSpec::parse(name)?.build()?;
        if g.order() <= max_order {
            out.push(g);
        }
    }
    Ok(out)
}

fn violation(msg: String) -> Error {
    Error::InvariantViolation(msg)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(violation(msg()))
    }
}

pub fn run_suite(suite: Suite, max_order: usize) -> Result<SuiteReport> {
    let cases = match suite {
        Suite::Chartables => chartables(max_order)?,
        Suite::Idempotents => idempotents(max_order)?,
        Suite::Omega => omega(max_order)?,
        Suite::Ideals => ideals(max_order)?,
        Suite::Functoriality => functoriality(max_order)?,
        Suite::Kernels => kernels(max_order)?,
        Suite::Frobenius => frobenius(max_order)?,
        Suite::Essential => essential(max_order)?,
        Suite::Factorization => factorization(max_order)?,
        Suite::Seeds => seeds(max_order)?,
    };
    Ok(SuiteReport { suite, max_order, cases })
}

fn chartables(max_order: usize) -> Result<usize> {
    let groups = fixtures(CHARTABLE_GROUPS, max_order)?;
    for g in &groups {
        let t = char_table(g)?;
        t.verify()?;
        let n = g.exponent() as i64;
        for chi in t.rows() {
            for j in (1..n).filter(|&j| crate::arith::gcd(j as u64, n as u64) == 1) {
                ensure(chi.power_map(j) == chi.galois(j)?, || {
                    format!("Galois equivariance fails on {} at j = {j}", g.name())
                })?;
            }
        }
    }
    Ok(groups.len())
}

fn idempotents(max_order: usize) -> Result<usize> {
    let groups = fixtures(&["cyclic:3", "cyclic:4", "cyclic:6", "sym:3", "dihedral:4", "quaternion"], max_order)?;
    let ks = [FieldSpec::Rationals, FieldSpec::Cyclotomic(4), FieldSpec::FullCyclotomic];
    let fs = [FieldSpec::Rationals, FieldSpec::FullCyclotomic];
    let mut cases = 0;
    for g in &groups {
        let table = char_table(g)?;
        for c in 0..g.num_classes() {
            point_idempotent(&table, c)?;
        }
        for k in ks {
            for f in fs {
                let space = orbit_space(g, k, f);
                let es: Vec<KClassFunction> =
                    (0..space.len()).map(|o| idempotent_orbit(&space, o)).collect::<Result<_>>()?;
                let mut total = ClassFunction::zero(g);
                for (i, a) in es.iter().enumerate() {
                    KClassFunction::new(k, f, a.func().clone())?;
                    for (j, b) in es.iter().enumerate() {
                        let ab = a.mul(b)?;
                        let expected = if i == j { a.clone() } else { KClassFunction::zero(g, k, f) };
                        ensure(ab == expected, || {
                            format!(
                                "orbit idempotents {i}, {j} of {} over ({k}, {f}) are not orthogonal idempotents",
                                g.name()
                            )
                        })?;
                    }
                    total = total.add(a.func())?;
                }
                ensure(total == ClassFunction::constant(g, Cyclo::one()), || {
                    format!("orbit idempotents of {} over ({k}, {f}) do not sum to 1", g.name())
                })?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn omega(max_order: usize) -> Result<usize> {
    use FieldSpec::{FullCyclotomic as Full, Rationals as Q};
    let mut cases = 0;
    for n in (1..=12usize).filter(|&n| n <= max_order) {
        let g = GroupSpec::Cyclic(n).build()?;
        let got = orbit_space(&g, Q, Q).len();
        let want = divisors(n as u64).len();
        ensure(got == want, || format!("|Ω(Q, Q, C_{n})| = {got}, expected {want}"))?;
        cases += 1;
    }
    for g in fixtures(CHARTABLE_GROUPS, max_order)? {
        let got = orbit_space(&g, Full, Full).len();
        ensure(got == g.num_classes(), || {
            format!("|Ω(Qfull, Qfull, {})| = {got}, expected {}", g.name(), g.num_classes())
        })?;
        cases += 1;
    }
    if max_order >= 3 {
        let got = orbit_space(&GroupSpec::Cyclic(3).build()?, Q, Full).len();
        ensure(got == 2, || format!("|Ω(Q, Qfull, C_3)| = {got}, expected 2"))?;
        cases += 1;
    }
    Ok(cases)
}

fn ideals(max_order: usize) -> Result<usize> {
    use FieldSpec::{FullCyclotomic as Full, Rationals as Q};
    let contexts = [(Full, Full, "cyclic:2"), (Q, Full, "cyclic:3"), (Q, Q, "sym:3")];
    let levels = fixtures(&["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "sym:3"], max_order)?;
    let mut cases = 0;
    for (k, f, g) in contexts {
        let g = GroupSpec::parse(g)?.build()?;
        if g.order() > max_order {
            continue;
        }
        let ctx = Context::new(k, f, &g);
        let family: Vec<BasicBiset> = levels.iter().flat_map(basic_family).collect();
        for spec in ctx.all_ideals() {
            for h in &levels {
                let level = ctx.level(h)?;
                let ev = ideal_evaluation(&level, &spec)?;
                let back = ideal_support_at(&ctx, &level, &ev.generators)?;
                ensure(back == spec, || {
                    format!("support {:?} came back as {:?} at {}", spec.support(), back.support(), h.name())
                })?;
                cases += 1;
            }
            for basic in &family {
                check_closure(&ctx, &spec, &basic.biset()?)?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn functoriality(max_order: usize) -> Result<usize> {
    let groups = fixtures(
        &[
            "cyclic:1",
            "cyclic:2",
            "cyclic:3",
            "cyclic:4",
            "prod:cyclic:2,cyclic:2",
            "sym:3",
            "dihedral:4",
            "quaternion",
        ],
        max_order.min(8),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let pick = |rng: &mut ChaCha8Rng| groups[rand::Rng::gen_range(rng, 0..groups.len())].clone();
    let cases = 100;
    for i in 0..cases {
        let (k, h, g) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let y = random::transitive(&mut rng, &k, &h);
        let x = random::transitive(&mut rng, &h, &g);
        let yx = y.compose(&x)?;
        for c in 0..g.num_classes() {
            let e = ClassFunction::indicator(&g, &[c]);
            ensure(yx.act(&e)? == y.act(&x.act(&e)?)?, || {
                format!(
                    "case {i}: composite {} <- {} <- {} acts differently on class {c}",
                    k.name(),
                    h.name(),
                    g.name()
                )
            })?;
        }
    }
    Ok(cases)
}

fn kernels(max_order: usize) -> Result<usize> {
    let groups =
        fixtures(&["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "prod:cyclic:2,cyclic:2"], max_order.min(4))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xbeef);
    let pick = |rng: &mut ChaCha8Rng| groups[rand::Rng::gen_range(rng, 0..groups.len())].clone();
    let cases = 50;
    for i in 0..cases {
        let (l, k, h, g) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let beta = random::shifted(&mut rng, &[l.clone(), k.clone(), g.clone()]);
        let alpha = random::shifted(&mut rng, &[k.clone(), h.clone(), g.clone()]);
        ensure(
            shifted_compose_via(Route::Kernel, &beta, &alpha)?
                == shifted_compose_via(Route::ExplicitBiset, &beta, &alpha)?,
            || format!("case {i}: composition routes disagree"),
        )?;
        let a = random::shifted(&mut rng, &[l.clone(), g.clone()]);
        let b = random::shifted(&mut rng, &[h.clone(), g.clone()]);
        ensure(
            shifted_product_via(Route::Kernel, &a, &b)? == shifted_product_via(Route::ExplicitBiset, &a, &b)?,
            || format!("case {i}: product routes disagree"),
        )?;
    }
    Ok(cases)
}

fn frobenius(max_order: usize) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf00d);
    let mut cases = 0;
    for g in fixtures(&["sym:3", "dihedral:4", "quaternion", "alt:4", "cyclic:6"], max_order)? {
        for c in cyclic_subgroups_up_to_conjugacy(&g) {
            let hg = c.to_group().0;
            let ind = BasicBiset::Ind(c.clone()).biset()?.action();
            let res = BasicBiset::Res(c).biset()?.action();
            let a = random::class_function(&mut rng, &hg);
            let b = random::class_function(&mut rng, &g);
            let lhs = ind.apply(&a)?.mul(&b)?;
            let rhs = ind.apply(&a.mul(&res.apply(&b)?)?)?;
            ensure(lhs == rhs, || format!("Ind(a)·b differs from Ind(a·Res b) on {}", g.name()))?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn essential(max_order: usize) -> Result<usize> {
    use FieldSpec::{FullCyclotomic as Full, Rationals as Q};
    let one = GroupSpec::Cyclic(1).build()?;
    let ctx = Context::new(Full, Q, &one);
    let mut cases = 0;
    for n in (1..=8usize).filter(|&n| n <= max_order) {
        let r = essential_dim(&ctx, &GroupSpec::Cyclic(n).build()?, &SmallerGroups::CyclicDivisors)?;
        ensure(r.essential_dim as u64 == prim(n as u64), || {
            format!("essential dimension of C_{n} is {}, Prim({n}) = {}", r.essential_dim, prim(n as u64))
        })?;
        cases += 1;
    }
    for h in fixtures(&["dihedral:4", "quaternion", "prod:cyclic:2,cyclic:2", "sym:3"], max_order)? {
        let r = essential_dim(&ctx, &h, &SmallerGroups::CyclicDivisors)?;
        ensure(r.essential_dim == 0, || format!("essential dimension of {} is {}", h.name(), r.essential_dim))?;
        cases += 1;
    }
    for (h, g) in [(3usize, 2usize), (4, 3)] {
        if h.max(g) > max_order {
            continue;
        }
        let (h, g) = (GroupSpec::Cyclic(h).build()?, GroupSpec::Cyclic(g).build()?);
        let base = essential_dim(&ctx, &h, &SmallerGroups::CyclicDivisors)?.essential_dim;
        let shifted = essential_dim(&Context::new(Full, Q, &g), &h, &SmallerGroups::CyclicDivisors)?.essential_dim;
        let classes = cyclic_subgroups_up_to_conjugacy(&g).len();
        ensure(shifted == base * classes, || {
            format!("{} shifted by {}: {shifted}, expected {base} × {classes}", h.name(), g.name())
        })?;
        cases += 1;
    }
    Ok(cases)
}

fn factorization(max_order: usize) -> Result<usize> {
    let small = fixtures(&["cyclic:1", "cyclic:2", "cyclic:3"], max_order)?;
    let mut triples: Vec<[Arc<FiniteGroup>; 3]> = Vec::new();
    for k in &small {
        for h in &small {
            for g in &small {
                triples.push([k.clone(), h.clone(), g.clone()]);
            }
        }
    }
    if max_order >= 6 {
        let c2 = GroupSpec::Cyclic(2).build()?;
        triples.push([c2.clone(), c2, GroupSpec::Symmetric(3).build()?]);
    }
    for [k, h, g] in &triples {
        let r = factor_through_trivial_rank(k, h, g)?;
        let classes = ProductGroup::shared(&[k.clone(), h.clone(), g.clone()]).group().num_classes();
        ensure(r.rank == classes && r.full_dim == classes, || {
            format!("rank through 1 for ({}, {}, {}) is {} of {classes}", k.name(), h.name(), g.name(), r.rank)
        })?;
    }
    Ok(triples.len())
}

fn seeds(max_order: usize) -> Result<usize> {
    let mut cases = 0;
    for (g, m, want) in [(GroupSpec::Cyclic(2), 3, 2), (GroupSpec::Symmetric(3), 5, 9)] {
        let g = g.build()?;
        if g.order() > max_order {
            continue;
        }
        let got = seed_triplet_count(&g, m)?;
        ensure(got == want, || format!("seed count for ({}, {m}) is {got}, expected {want}", g.name()))?;
        cases += 1;
    }
    Ok(cases)
}
