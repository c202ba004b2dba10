//! The functor `kR_F`: F-conjugacy, the Galois action on F-classes, and the
//! primitive idempotents of `kR_F(G)`.

mod classes;
mod kfun;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use classes::{f_classes, orbit_space, FClassPartition, OrbitSpace};
pub use kfun::{
    extend_scalars, galois_twist, idempotent_fclass, idempotent_orbit, idempotent_point, k_basis, orbit_k_basis,
    point_idempotent, KClassFunction,
};

use crate::arith::{gcd, units_mod};
use crate::error::{Error, Result};

/// A characteristic-zero field, described by the image of its Galois group in
/// `(Z/nZ)^×` for every modulus `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    /// `Q(ω_d)`
    Cyclotomic(u32),
    /// A field containing all roots of unity.
    FullCyclotomic,
    /// The maximal real subfield of the full cyclotomic field. Experimental.
    RealCyclotomic,
}

impl FieldSpec {
    pub fn parse(input: &str) -> Result<Self> {
        let err =
            |pos: usize, expected: &str| Error::Parse { input: input.to_string(), pos, expected: expected.to_string() };
        match input {
            "Q" => return Ok(FieldSpec::Rationals),
            "Qfull" => return Ok(FieldSpec::FullCyclotomic),
            "Qreal" => return Ok(FieldSpec::RealCyclotomic),
            _ => {}
        }
        let Some(rest) = input.strip_prefix("Q(w") else {
            let pos = if input.starts_with('Q') { 1 } else { 0 };
            return Err(err(pos, "one of Q, Q(w<d>), Qfull, Qreal"));
        };
        let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(err(3, "a positive integer d"));
        }
        if &rest[digits..] != ")" {
            return Err(err(3 + digits, "')' ending the field"));
        }
        match rest[..digits].parse::<u32>() {
            Ok(d) if d >= 1 => Ok(FieldSpec::Cyclotomic(d)),
            _ => Err(err(3, "a positive integer d")),
        }
    }

    /// The image of `Gal(F(ω_n)/F)` in `(Z/nZ)^×`.
    pub fn galois_subgroup(&self, n: u32) -> GaloisSubgroup {
        let n64 = n.max(1) as u64;
        let members = units_mod(n64)
            .into_iter()
            .filter(|&j| match *self {
                FieldSpec::Rationals => true,
                FieldSpec::FullCyclotomic => j % n64 == 1 % n64,
                FieldSpec::RealCyclotomic => j % n64 == 1 % n64 || (j + 1) % n64 == 0,
                FieldSpec::Cyclotomic(d) => {
                    let m = gcd(d as u64, n64);
                    j % m == 1 % m
                }
            })
            .map(|j| j as u32)
            .collect();
        GaloisSubgroup { modulus: n.max(1), members }
    }

    /// Whether `self ⊇ other` as seen at modulus `n`, that is `self_n ⊆ other_n`.
    pub fn contains_at(&self, other: &FieldSpec, n: u32) -> bool {
        let inner = other.galois_subgroup(n);
        self.galois_subgroup(n).members.iter().all(|&j| inner.contains(j as i64))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Cyclotomic(d) => write!(f, "Q(w{d})"),
            FieldSpec::FullCyclotomic => write!(f, "Qfull"),
            FieldSpec::RealCyclotomic => write!(f, "Qreal"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A subgroup of `(Z/nZ)^×`, members sorted and reduced into `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisSubgroup {
    modulus: u32,
    members: Vec<u32>,
}

impl GaloisSubgroup {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: i64) -> bool {
        let n = self.modulus as i64;
        self.members.iter().any(|&m| (m as i64 - j).rem_euclid(n) == 0)
    }

    /// Closure under multiplication and membership of 1.
    pub fn is_subgroup(&self) -> bool {
        let n = self.modulus as u64;
        self.contains(1)
            && self
                .members
                .iter()
                .all(|&a| gcd(a as u64, n) == 1 && self.members.iter().all(|&b| self.contains((a as i64) * (b as i64))))
    }
}

/// `materialize_galois`: the Galois subgroup of `field` at modulus `n`.
pub fn materialize_galois(field: FieldSpec, n: u32) -> GaloisSubgroup {
    field.galois_subgroup(n)
}
