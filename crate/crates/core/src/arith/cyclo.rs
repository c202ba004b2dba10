use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::{cyclotomic_polynomial, factorize, gcd, lcm, units_mod, Rat};
use crate::error::{Error, Result};

/// Reduction data for `Q(ω_n) = Q[x]/Φ_n`.
struct FieldTables {
    phi: usize,
    /// `powers[k]` holds the coordinates of `x^k mod Φ_n`, for `k < max(n, 2φ(n))`.
    powers: Vec<Vec<i64>>,
}

impl FieldTables {
    fn build(n: u32) -> Self {
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        let count = (n as usize).max(2 * phi);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..count {
            powers.push(cur.clone());
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (c, p) in cur.iter_mut().zip(&poly) {
                    *c -= top * p;
                }
            }
        }
        FieldTables { phi, powers }
    }
}

fn tables(n: u32) -> Arc<FieldTables> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(FieldTables::build(n));
    cache.write().unwrap().entry(n).or_insert(t).clone()
}

/// Coordinate extraction from `Q(ω_n)` down to a subfield `Q(ω_m)`.
///
/// `pivots` picks `φ(m)` coordinates of the big field on which the embedded
/// basis `1, ω_m, ..., ω_m^{φ(m)-1}` is invertible; `inverse` is that inverse.
struct Descent {
    pivots: Vec<usize>,
    inverse: Vec<Vec<Rat>>,
}

impl Descent {
    fn build(n: u32, m: u32) -> Self {
        let big = tables(n);
        let small_phi = tables(m).phi;
        let step = (n / m) as usize;
        // rows of `basis` are the embedded basis vectors ω_m^i = ω_n^{i·n/m}
        let basis: Vec<Vec<Rat>> = (0..small_phi)
            .map(|i| big.powers[i * step].iter().map(|&c| Rat::from_integer(c.into())).collect())
            .collect();

        let mut work = basis.clone();
        let mut pivots = Vec::with_capacity(small_phi);
        let mut row = 0;
        for col in 0..big.phi {
            if row == small_phi {
                break;
            }
            let Some(r) = (row..small_phi).find(|&r| !work[r][col].is_zero()) else {
                continue;
            };
            work.swap(row, r);
            let lead = work[row][col].clone();
            for r in 0..small_phi {
                if r != row && !work[r][col].is_zero() {
                    let f = &work[r][col] / &lead;
                    for c in 0..big.phi {
                        let delta = &f * &work[row][c];
                        work[r][c] -= delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        assert_eq!(pivots.len(), small_phi, "embedding of Q(w{m}) into Q(w{n}) is not injective");

        // square[r][i] = coordinate pivots[r] of basis vector i
        let square: Vec<Vec<Rat>> =
            pivots.iter().map(|&p| (0..small_phi).map(|i| basis[i][p].clone()).collect()).collect();
        Descent { pivots, inverse: invert(square) }
    }
}

fn descent(n: u32, m: u32) -> Arc<Descent> {
    static CACHE: OnceLock<RwLock<HashMap<(u32, u32), Arc<Descent>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.read().unwrap().get(&(n, m)) {
        return d.clone();
    }
    let d = Arc::new(Descent::build(n, m));
    cache.write().unwrap().entry((n, m)).or_insert(d).clone()
}

fn invert(mut a: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rat>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
    for col in 0..n {
        let r = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular descent matrix");
        a.swap(col, r);
        inv.swap(col, r);
        let lead = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= &lead;
            inv[col][c] /= &lead;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let da = &f * &a[col][c];
                    a[r][c] -= da;
                    let di = &f * &inv[col][c];
                    inv[r][c] -= di;
                }
            }
        }
    }
    inv
}

fn add_scaled(out: &mut [Rat], coeff: &Rat, vector: &[i64]) {
    for (o, &v) in out.iter_mut().zip(vector) {
        if v != 0 {
            *o += coeff * Rat::from_integer(BigInt::from(v));
        }
    }
}

/// An exact element of a cyclotomic field `Q(ω_n)`.
///
/// Stored in the power basis `1, ω, ..., ω^{φ(n)-1}` modulo `Φ_n` at the
/// smallest conductor `n` whose field contains the value, so equality is
/// structural. Conductors `≡ 2 mod 4` never occur.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclo {
    conductor: u32,
    coeffs: Vec<Rat>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        Cyclo { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rat(super::int(v))
    }

    /// `ω_n^k` with `ω_n = e^{2πi/n}`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let t = tables(n);
        let e = k.rem_euclid(n as i64) as usize;
        let coeffs = t.powers[e].iter().map(|&c| Rat::from_integer(c.into())).collect();
        Self::normalized(n, coeffs)
    }

    /// Builds `Σ_k counts[k] · ω_n^k`.
    pub fn from_root_counts(n: u32, counts: &[i64]) -> Self {
        let t = tables(n);
        let mut acc = vec![0i64; t.phi];
        for (k, &m) in counts.iter().enumerate() {
            if m != 0 {
                for (a, &p) in acc.iter_mut().zip(&t.powers[k % n as usize]) {
                    *a += m * p;
                }
            }
        }
        Self::normalized(n, acc.into_iter().map(|c| Rat::from_integer(c.into())).collect())
    }

    /// Builds the value with the given power-basis coordinates in `Q(ω_n)`.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rat>) -> Self {
        assert_eq!(coeffs.len(), tables(n).phi, "coefficient vector must have length φ({n})");
        Self::normalized(n, coeffs)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        (self.conductor == 1).then(|| &self.coeffs[0])
    }

    /// Coordinates of `self` inside `Q(ω_m)`; `m` must be a multiple of the conductor.
    pub fn coords_at(&self, m: u32) -> Vec<Rat> {
        assert!(m % self.conductor == 0, "conductor {} does not divide {m}", self.conductor);
        if m == self.conductor {
            return self.coeffs.clone();
        }
        let t = tables(m);
        let step = (m / self.conductor) as usize;
        let mut out = vec![Rat::zero(); t.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                add_scaled(&mut out, c, &t.powers[i * step]);
            }
        }
        out
    }

    /// The image under the automorphism `ω ↦ ω^j`.
    pub fn galois(&self, j: i64) -> Result<Self> {
        let n = self.conductor;
        let jr = j.rem_euclid(n as i64) as u64;
        if gcd(jr, n as u64) != 1 {
            return Err(Error::InvalidGaloisIndex { index: j, modulus: n as u64 });
        }
        if n == 1 || jr == 1 {
            return Ok(self.clone());
        }
        Ok(Cyclo { conductor: n, coeffs: galois_coords(n, &self.coeffs, jr as usize) })
    }

    /// Complex conjugate, `ω ↦ ω^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit for every conductor")
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclo { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rat(r.recip()));
        }
        let n = self.conductor as u64;
        let mut others = Self::one();
        for j in units_mod(n).into_iter().filter(|&j| j != 1) {
            others = &others * &self.galois(j as i64).unwrap();
        }
        let norm = (self * &others).as_rational().cloned().expect("field norm is rational");
        Some(others.scale(&norm.recip()))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Double-precision evaluation at `ω_n = e^{2πi/n}`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * i as f64 / n;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }

    fn normalized(mut n: u32, mut coeffs: Vec<Rat>) -> Self {
        if coeffs[1..].iter().all(Zero::is_zero) {
            return Self::from_rat(coeffs.swap_remove(0));
        }
        'descend: loop {
            for (p, _) in factorize(n as u64) {
                let m = n / p as u32;
                if fixed_by_kernel(n, m, &coeffs) {
                    coeffs = descend_coords(n, m, &coeffs);
                    n = m;
                    continue 'descend;
                }
            }
            break;
        }
        if n == 1 {
            return Self::from_rat(coeffs.swap_remove(0));
        }
        Cyclo { conductor: n, coeffs }
    }

    fn binary(a: &Self, b: &Self, op: impl Fn(&[Rat], &[Rat], u32) -> Vec<Rat>) -> Self {
        let l = lcm(a.conductor as u64, b.conductor as u64) as u32;
        let ca = a.coords_at(l);
        let cb = b.coords_at(l);
        Self::normalized(l, op(&ca, &cb, l))
    }
}

fn galois_coords(n: u32, coeffs: &[Rat], j: usize) -> Vec<Rat> {
    let t = tables(n);
    let mut out = vec![Rat::zero(); t.phi];
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            add_scaled(&mut out, c, &t.powers[(i * j) % n as usize]);
        }
    }
    out
}

/// Whether the value is fixed by `Gal(Q(ω_n)/Q(ω_m))`, i.e. lies in `Q(ω_m)`.
fn fixed_by_kernel(n: u32, m: u32, coeffs: &[Rat]) -> bool {
    units_mod(n as u64)
        .into_iter()
        .filter(|&j| j != 1 && j % m as u64 == 1 % m as u64)
        .all(|j| galois_coords(n, coeffs, j as usize) == coeffs)
}

fn descend_coords(n: u32, m: u32, coeffs: &[Rat]) -> Vec<Rat> {
    let d = descent(n, m);
    d.inverse
        .iter()
        .map(|row| row.iter().zip(&d.pivots).fold(Rat::zero(), |acc, (r, &p)| acc + r * &coeffs[p]))
        .collect()
}

fn add_coords(a: &[Rat], b: &[Rat], _: u32) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_coords(a: &[Rat], b: &[Rat], _: u32) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mul_coords(a: &[Rat], b: &[Rat], n: u32) -> Vec<Rat> {
    let t = tables(n);
    let phi = t.phi;
    let mut prod = vec![Rat::zero(); 2 * phi - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    let mut out: Vec<Rat> = prod.drain(..phi).collect();
    for (k, c) in prod.iter().enumerate() {
        if !c.is_zero() {
            add_scaled(&mut out, c, &t.powers[phi + k]);
        }
    }
    out
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        if self.conductor == 1 && rhs.conductor == 1 {
            return Cyclo::from_rat(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        Cyclo::binary(self, rhs, add_coords)
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        if self.conductor == 1 && rhs.conductor == 1 {
            return Cyclo::from_rat(&self.coeffs[0] - &rhs.coeffs[0]);
        }
        Cyclo::binary(self, rhs, sub_coords)
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        Cyclo::binary(self, rhs, mul_coords)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &Cyclo) -> Cyclo {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, rhs: &Cyclo) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyclo> for Cyclo {
    fn sub_assign(&mut self, rhs: &Cyclo) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Cyclo> for Cyclo {
    fn mul_assign(&mut self, rhs: &Cyclo) {
        *self = &*self * rhs;
    }
}

impl Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Cyclo> for Cyclo {
    fn sum<I: Iterator<Item = &'a Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |acc, x| acc + x)
    }
}

impl From<Rat> for Cyclo {
    fn from(r: Rat) -> Self {
        Cyclo::from_rat(r)
    }
}

impl From<i64> for Cyclo {
    fn from(v: i64) -> Self {
        Cyclo::from_int(v)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let root = match i {
                0 => String::new(),
                1 => format!("w{}", self.conductor),
                _ => format!("w{}^{}", self.conductor, i),
            };
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{root}")?,
                _ => write!(f, "{mag}*{root}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Cyclo", 2)?;
        s.serialize_field("conductor", &self.conductor)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn w(n: u32, k: i64) -> Cyclo {
        Cyclo::root_of_unity(n, k)
    }

    fn close(a: &Cyclo, re: f64, im: f64) -> bool {
        let (x, y) = a.to_complex();
        (x - re).abs() < 1e-12 && (y - im).abs() < 1e-12
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&w(4, 1) * &w(4, 1), Cyclo::from_int(-1));
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        assert_eq!(&w(3, 1) + &w(3, 2), Cyclo::from_int(-1));
    }

    #[test]
    fn omega6_reduces_to_conductor_3() {
        let x = w(6, 1);
        assert_eq!(x.conductor(), 3);
        let expected = &Cyclo::one() + &w(3, 1);
        assert_eq!(x, expected);
        // independent float check of both sides against e^{iπ/3}
        let (re, im) = ((std::f64::consts::PI / 3.0).cos(), (std::f64::consts::PI / 3.0).sin());
        assert!(close(&x, re, im));
        assert!(close(&expected, re, im));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(w(3, 1).galois(2).unwrap(), &Cyclo::from_int(-1) - &w(3, 1));
        let q = Cyclo::from_rat(rat(5, 7));
        for j in [-3, 1, 2, 11] {
            assert_eq!(q.galois(j).unwrap(), q);
        }
        let x = w(8, 1).galois(3).unwrap();
        assert_eq!(x, w(8, 3));
        assert_eq!(x.pow(8), Cyclo::one());
        assert_eq!(x.pow(4), Cyclo::from_int(-1));
    }

    #[test]
    fn non_coprime_galois_index_errors() {
        assert!(matches!(w(4, 1).galois(2), Err(Error::InvalidGaloisIndex { .. })));
    }

    #[test]
    fn conductor_never_2_mod_4_and_real_subfields_reduce() {
        // ω_12 + ω_12^{-1} = √3 lives in Q(ω_12) but not in a smaller cyclotomic field
        let s3 = &w(12, 1) + &w(12, -1);
        assert_eq!(s3.conductor(), 12);
        assert_eq!(&s3 * &s3, Cyclo::from_int(3));
        // i·i^{-1}-type cancellations land back in Q
        assert_eq!((&w(20, 5) * &w(20, 15)).conductor(), 1);
        // ω_10 lives in Q(ω_5)
        assert_eq!(w(10, 1).conductor(), 5);
        // ω_8 + ω_8^3 = i·√2 has conductor 8
        assert_eq!((&w(8, 1) + &w(8, 3)).conductor(), 8);
        // ω_24^3 = ω_8
        assert_eq!(w(24, 3), w(8, 1));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = &(&w(5, 1) + &Cyclo::from_int(2)) * &w(7, 3);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, Cyclo::one());
        assert!(Cyclo::zero().inv().is_none());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(format!("{}", &Cyclo::from_int(-1) - &w(3, 1)), "-1 - w3");
        assert_eq!(format!("{}", Cyclo::from_rat(rat(-1, 2))), "-1/2");
    }
}
