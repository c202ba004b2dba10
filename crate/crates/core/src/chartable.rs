//! Irreducible complex characters by Dixon's method, and permutation characters.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{int, is_prime, Cyclo};
use crate::classfn::ClassFunction;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

const PRIME_SEARCH_BOUND: u64 = 1 << 31;
const RANDOM_ATTEMPTS: usize = 8;
const SEED: u64 = 0x6772_6565_6e72_696e;

/// The irreducible complex characters of a group.
///
/// Rows are sorted by degree; among linear characters the trivial one comes
/// first, and ties are broken lexicographically on the value vector.
#[derive(Clone, Debug)]
pub struct CharTable {
    group: Arc<FiniteGroup>,
    rows: Vec<ClassFunction>,
    prime: u64,
}

impl CharTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// χ_i(1) as an integer.
    pub fn degree(&self, i: usize) -> u64 {
        let r = self.rows[i].value(0).as_rational().expect("degrees are rational");
        r.numer().try_into().expect("degree fits in u64")
    }

    /// The prime used for the modular computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Inner products of `f` with every irreducible character.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<Cyclo>> {
        self.rows.iter().map(|chi| f.inner(chi)).collect()
    }

    /// Checks every table invariant exactly: row and column orthogonality,
    /// degrees, and Galois equivariance `χ(c^j) = σ_j(χ(c))`.
    pub fn verify(&self) -> Result<()> {
        let g = &self.group;
        let k = g.num_classes();
        let fail = |msg: String| Err(Error::InvariantViolation(format!("character table of {}: {msg}", g.name())));
        if self.rows.len() != k {
            return fail(format!("{} rows for {k} classes", self.rows.len()));
        }
        if self.rows[0].values().iter().any(|v| !v.is_one()) {
            return fail("first row is not the trivial character".into());
        }
        let mut sum_sq = 0u64;
        for i in 0..k {
            let d = self.degree(i);
            if g.order() as u64 % d != 0 {
                return fail(format!("degree {d} does not divide |G|"));
            }
            sum_sq += d * d;
        }
        if sum_sq != g.order() as u64 {
            return fail(format!("sum of squared degrees is {sum_sq}"));
        }
        let conj: Vec<Vec<Cyclo>> = self.rows.iter().map(|r| r.values().iter().map(Cyclo::conj).collect()).collect();
        for i in 0..k {
            for j in 0..k {
                let s: Cyclo =
                    (0..k).map(|c| (self.rows[i].value(c) * &conj[j][c]).scale(&int(g.class_size(c) as i64))).sum();
                let expected = Cyclo::from_int(if i == j { g.order() as i64 } else { 0 });
                if s != expected {
                    return fail(format!("rows {i} and {j} are not orthogonal"));
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                let s: Cyclo = (0..k).map(|i| self.rows[i].value(a) * &conj[i][b]).sum();
                let expected = Cyclo::from_int(if a == b { g.centralizer_order(a) as i64 } else { 0 });
                if s != expected {
                    return fail(format!("columns {a} and {b} are not orthogonal"));
                }
            }
        }
        let e = g.exponent() as i64;
        for j in (1..=e).filter(|&j| crate::arith::gcd(j as u64, e as u64) == 1) {
            for row in &self.rows {
                for c in 0..k {
                    if row.value(g.power_class(c, j)) != &row.value(c).galois(j)? {
                        return fail(format!("Galois equivariance fails at class {c}, j = {j}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Computes the character table of `g`.
pub fn char_table(g: &Arc<FiniteGroup>) -> Result<CharTable> {
    crate::group::check_cap(g.order())?;
    let n = g.order() as u64;
    let k = g.num_classes();
    let e = g.exponent() as u64;
    let p = suitable_prime(e, n)?;
    let f = Fp::new(p);

    // class matrices: (M_c)[b][a] = #{x ∈ C_c : x^{-1} g_a ∈ C_b}
    let mut mats = vec![vec![vec![0u64; k]; k]; k];
    for (c, m) in mats.iter_mut().enumerate() {
        for a in 0..k {
            let ga = g.class_rep(a);
            for x in g.class_elements(c) {
                m[g.class_of(g.mul(g.inv(x), ga))][a] += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut done: Vec<Vec<u64>> = Vec::new();
    let mut pending: Vec<Vec<Vec<u64>>> = vec![identity_basis(k)];
    while let Some(space) = pending.pop() {
        if space.len() == 1 {
            done.push(space.into_iter().next().unwrap());
            continue;
        }
        let parts = split_space(&f, &mats, &space, &mut rng).ok_or_else(|| {
            Error::InvariantViolation(format!(
                "class matrices of {} have a common eigenspace of dimension {}",
                g.name(),
                space.len()
            ))
        })?;
        pending.extend(parts);
    }
    if done.len() != k {
        return Err(Error::InvariantViolation(format!("found {} eigenvectors for {k} classes", done.len())));
    }

    let root = f.pow(f.primitive_root(), (p - 1) / e);
    let mut rows = Vec::with_capacity(k);
    for mut v in done {
        let v0 = f.inv(v[0]).ok_or_else(|| Error::InvariantViolation("eigenvector vanishes at the identity".into()))?;
        for x in v.iter_mut() {
            *x = f.mul(*x, v0);
        }
        // Σ_c ω(c) ω(c*) / |C_c| = |G| / χ(1)^2
        let s = (0..k).fold(0, |acc, c| {
            let term = f.mul(f.mul(v[c], v[g.inverse_class(c)]), f.inv(g.class_size(c) as u64 % p).unwrap());
            f.add(acc, term)
        });
        let d2 = f.mul(n % p, f.inv(s).ok_or_else(|| Error::InvariantViolation("degenerate degree sum".into()))?);
        let d = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::InvariantViolation(format!("no admissible degree for {} modulo {p}", g.name())))?;
        let chi_p: Vec<u64> =
            (0..k).map(|c| f.mul(f.mul(d, v[c]), f.inv(g.class_size(c) as u64 % p).unwrap())).collect();
        let values = (0..k).map(|c| lift_value(g, &f, root, e, &chi_p, c, d)).collect::<Result<Vec<_>>>()?;
        rows.push((d, ClassFunction::new(g, values)));
    }
    rows.sort_by(|(da, a), (db, b)| {
        let ta = !a.values().iter().all(Cyclo::is_one);
        let tb = !b.values().iter().all(Cyclo::is_one);
        (da, ta, a.values()).cmp(&(db, tb, b.values()))
    });
    let rows: Vec<ClassFunction> = rows.into_iter().map(|(_, r)| r).collect();
    let sum_sq: u64 = rows
        .iter()
        .map(|r| {
            let d: u64 = r.value(0).as_rational().unwrap().numer().try_into().unwrap();
            d * d
        })
        .sum();
    if sum_sq != n {
        return Err(Error::InvariantViolation(format!("squared degrees sum to {sum_sq}, not {n}")));
    }
    Ok(CharTable { group: g.clone(), rows, prime: p })
}

/// Lifts χ(c) from its residues on the powers of a representative:
/// `m_k = o^{-1} Σ_l χ_p(g^l) ζ^{-kl}` is the multiplicity of `ω_o^k` as an eigenvalue.
fn lift_value(g: &FiniteGroup, f: &Fp, root_e: u64, e: u64, chi_p: &[u64], c: usize, degree: u64) -> Result<Cyclo> {
    let o = g.element_order(g.class_rep(c)) as u64;
    let zeta = f.pow(root_e, e / o);
    let zeta_inv = f.inv(zeta).unwrap();
    let o_inv = f.inv(o % f.p).unwrap();
    let mut counts = Vec::with_capacity(o as usize);
    for kk in 0..o {
        let step = f.pow(zeta_inv, kk);
        let mut acc = 0;
        let mut w = 1;
        for l in 0..o {
            acc = f.add(acc, f.mul(chi_p[g.power_class(c, l as i64)], w));
            w = f.mul(w, step);
        }
        let m = f.mul(acc, o_inv);
        if m > degree {
            return Err(Error::InvariantViolation(format!(
                "eigenvalue multiplicity {m} exceeds degree {degree} at class {c}"
            )));
        }
        counts.push(m as i64);
    }
    Ok(Cyclo::from_root_counts(o as u32, &counts))
}

/// The smallest prime `p ≡ 1 (mod e)` with `p > 2√n`.
fn suitable_prime(e: u64, n: u64) -> Result<u64> {
    let lower = (2.0 * (n as f64).sqrt()).floor() as u64;
    let mut p = e + 1;
    while p <= PRIME_SEARCH_BOUND {
        if p > lower && is_prime(p) {
            return Ok(p);
        }
        p += e;
    }
    Err(Error::NoSuitablePrime { exponent: e as u32, lower, bound: PRIME_SEARCH_BOUND })
}

fn identity_basis(k: usize) -> Vec<Vec<u64>> {
    (0..k)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        })
        .collect()
}

/// Splits an invariant subspace (rows in reduced echelon form) into eigenspaces
/// of some combination of the class matrices. Returns `None` if every matrix is
/// scalar on the subspace.
fn split_space(f: &Fp, mats: &[Vec<Vec<u64>>], space: &[Vec<u64>], rng: &mut ChaCha8Rng) -> Option<Vec<Vec<Vec<u64>>>> {
    let k = mats.len();
    let mut candidates: Vec<Vec<u64>> =
        (0..RANDOM_ATTEMPTS).map(|_| (0..k).map(|_| rng.gen_range(0..f.p)).collect()).collect();
    // single class matrices as a deterministic fallback
    candidates.extend((1..k).map(|c| (0..k).map(|i| u64::from(i == c)).collect()));
    for coeffs in candidates {
        let mut m = vec![vec![0u64; k]; k];
        for (c, &r) in coeffs.iter().enumerate() {
            if r == 0 {
                continue;
            }
            for i in 0..k {
                for j in 0..k {
                    m[i][j] = f.add(m[i][j], f.mul(r, mats[c][i][j] % f.p));
                }
            }
        }
        let restricted = restrict(f, &m, space);
        let poly = charpoly(f, restricted.clone());
        let roots: Vec<u64> = (0..f.p).filter(|&x| f.eval(&poly, x) == 0).collect();
        if roots.len() < 2 {
            continue;
        }
        let d = space.len();
        let mut parts = Vec::new();
        let mut total = 0;
        for lambda in roots {
            let mut a = restricted.clone();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = f.sub(row[i], lambda);
            }
            let null = f.nullspace(&a);
            total += null.len();
            // back to the ambient space: Σ_i y_i · space_i
            let vecs: Vec<Vec<u64>> = null
                .iter()
                .map(|y| (0..k).map(|t| (0..d).fold(0, |acc, i| f.add(acc, f.mul(y[i], space[i][t])))).collect())
                .collect();
            parts.push(f.echelon(vecs));
        }
        debug_assert_eq!(total, d, "class matrices are diagonalizable modulo a good prime");
        if total != d {
            return None;
        }
        return Some(parts);
    }
    None
}

/// The matrix of `m` on the invariant subspace spanned by `space` (reduced
/// echelon rows): `m · space_i = Σ_j R[j][i] space_j`.
fn restrict(f: &Fp, m: &[Vec<u64>], space: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let d = space.len();
    let k = m.len();
    let pivots: Vec<usize> = space.iter().map(|v| v.iter().position(|&x| x != 0).unwrap()).collect();
    let mut r = vec![vec![0u64; d]; d];
    for (i, v) in space.iter().enumerate() {
        let image: Vec<u64> = (0..k).map(|s| (0..k).fold(0, |acc, t| f.add(acc, f.mul(m[s][t], v[t])))).collect();
        for (j, &p) in pivots.iter().enumerate() {
            r[j][i] = image[p];
        }
    }
    r
}

/// Characteristic polynomial (coefficients in increasing degree) via Hessenberg reduction.
fn charpoly(f: &Fp, mut a: Vec<Vec<u64>>) -> Vec<u64> {
    let n = a.len();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| a[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            a.swap(i, j + 1);
            for row in a.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let piv_inv = f.inv(a[j + 1][j]).unwrap();
        for r in j + 2..n {
            let u = f.mul(a[r][j], piv_inv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let t = f.mul(u, a[j + 1][c]);
                a[r][c] = f.sub(a[r][c], t);
            }
            for row in a.iter_mut() {
                let t = f.mul(u, row[r]);
                row[j + 1] = f.add(row[j + 1], t);
            }
        }
    }
    // p_{m+1} = (x - h_mm) p_m - Σ_{i<m} h_im (Π_{t=i+1}^{m} h_{t,t-1}) p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let mut next = vec![0u64; m + 2];
        for (d, &c) in polys[m].iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(a[m][m], c));
        }
        let mut prod = 1;
        for i in (0..m).rev() {
            prod = f.mul(prod, a[i + 1][i]);
            let coef = f.mul(a[i][m], prod);
            if coef != 0 {
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = f.sub(next[d], f.mul(coef, c));
                }
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Arithmetic in the prime field `F_p`.
struct Fp {
    p: u64,
}

impl Fp {
    fn new(p: u64) -> Self {
        Fp { p }
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow(&self, mut a: u64, mut k: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    fn eval(&self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    fn primitive_root(&self) -> u64 {
        let factors: Vec<u64> = crate::arith::factorize(self.p - 1).into_iter().map(|(q, _)| q).collect();
        (2..self.p).find(|&z| factors.iter().all(|&q| self.pow(z, (self.p - 1) / q) != 1)).unwrap_or(1)
    }

    /// Reduced row echelon form, zero rows dropped.
    fn echelon(&self, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
        let width = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..width {
            let Some(r) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, r);
            let inv = self.inv(rows[rank][col]).unwrap();
            for x in rows[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != 0 {
                    let fct = rows[r][col];
                    for c in 0..width {
                        let t = self.mul(fct, rows[rank][c]);
                        rows[r][c] = self.sub(rows[r][c], t);
                    }
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        rows
    }

    /// A basis of `{y : A y = 0}`.
    fn nullspace(&self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.len();
        let rref = self.echelon(a.to_vec());
        let pivots: Vec<usize> = rref.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut y = vec![0u64; n];
                y[free] = 1;
                for (row, &p) in rref.iter().zip(&pivots) {
                    y[p] = self.sub(0, row[free]);
                }
                y
            })
            .collect()
    }
}

/// The permutation character of a left action, `action[g * size + x] = g·x`:
/// the value at a class is the number of points fixed by its representative.
pub fn perm_character(g: &Arc<FiniteGroup>, size: usize, action: &[u32]) -> ClassFunction {
    assert_eq!(action.len(), g.order() * size);
    ClassFunction::from_fn(g, |c| {
        let r = g.class_rep(c);
        let fixed = (0..size).filter(|&x| action[r * size + x] as usize == x).count();
        Cyclo::from_int(fixed as i64)
    })
}
