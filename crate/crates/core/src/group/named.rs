use std::collections::HashMap;

use super::{check_cap, FiniteGroup};
use crate::error::{Error, Result};

/// A permutation of `0..degree`, stored as its image list.
pub type Permutation = Vec<u8>;

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::NotAGroup("cyclic group of order 0".into()));
    }
    check_cap(n)?;
    let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    Ok(FiniteGroup::from_flat_table(format!("cyclic:{n}"), n, table))
}

/// The dihedral group of order `2n`, with `r^i s^f` stored at index `i + n·f`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::NotAGroup("dihedral group of order 0".into()));
    }
    let order = 2 * n;
    check_cap(order)?;
    let mut table = vec![0; order * order];
    for a in 0..order {
        let (i, f) = (a % n, a / n);
        for b in 0..order {
            let (j, g) = (b % n, b / n);
            // s r^j = r^{-j} s
            let k = (if f == 0 { i + j } else { i + n - j }) % n;
            table[a * order + b] = k + n * ((f + g) % 2);
        }
    }
    Ok(FiniteGroup::from_flat_table(format!("dihedral:{n}"), order, table))
}

/// The quaternion group `{±1, ±i, ±j, ±k}`; index `4s + u` for sign `s` and unit `u ∈ (1, i, j, k)`.
pub fn quaternion() -> FiniteGroup {
    // unit products as (sign flip, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut table = vec![0; 64];
    for a in 0..8 {
        for b in 0..8 {
            let (s, u) = UNIT[a % 4][b % 4];
            table[a * 8 + b] = 4 * ((a / 4 + b / 4 + s) % 2) + u;
        }
    }
    FiniteGroup::from_flat_table("quaternion".into(), 8, table)
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Permutation = (0..n as u8).collect();
        t.swap(0, 1);
        gens.push(t);
        gens.push((0..n as u8).map(|x| (x + 1) % n as u8).collect());
    }
    permutation_group(format!("sym:{n}"), n.max(1), &gens)
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    let gens: Vec<Permutation> = (2..n)
        .map(|k| {
            let mut p: Permutation = (0..n as u8).collect();
            p[0] = 1;
            p[1] = k as u8;
            p[k] = 0;
            p
        })
        .collect();
    permutation_group(format!("alt:{n}"), n.max(1), &gens)
}

/// The group generated by permutations of `0..degree`, enumerated by closure.
///
/// Element `0` is the identity; the rest appear in breadth-first order over
/// right multiplication by the generators.
pub fn permutation_group(name: impl Into<String>, degree: usize, gens: &[Permutation]) -> Result<FiniteGroup> {
    if degree > 16 {
        return Err(Error::NotAGroup(format!("permutations on {degree} points (at most 16 supported)")));
    }
    for g in gens {
        let mut seen = vec![false; degree];
        if g.len() != degree
            || g.iter().any(|&x| (x as usize) >= degree || std::mem::replace(&mut seen[x as usize], true))
        {
            return Err(Error::NotAGroup(format!("{g:?} is not a permutation of {degree} points")));
        }
    }
    let compose = |p: &[u8], q: &[u8]| -> Permutation { q.iter().map(|&x| p[x as usize]).collect() };
    let identity: Permutation = (0..degree as u8).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(identity, 0)]);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in gens {
            let y = compose(&x, g);
            if !index.contains_key(&y) {
                check_cap(elements.len() + 1)?;
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
    }
    let n = elements.len();
    let mut table = vec![0; n * n];
    for (a, p) in elements.iter().enumerate() {
        for (b, q) in elements.iter().enumerate() {
            table[a * n + b] = index[&compose(p, q)];
        }
    }
    Ok(FiniteGroup::from_flat_table(name.into(), n, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(dihedral(4).unwrap().num_classes(), 5);
        assert_eq!(quaternion().num_classes(), 5);
        assert_eq!(quaternion().exponent(), 4);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(symmetric(4).unwrap().num_classes(), 5);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(4).unwrap().num_classes(), 4);
        assert_eq!(alternating(5).unwrap().num_classes(), 5);
        assert_eq!(symmetric(1).unwrap().order(), 1);
    }

    #[test]
    fn quaternion_is_associative_and_nonabelian() {
        let q = quaternion();
        let rows: Vec<Vec<usize>> = (0..8).map(|a| (0..8).map(|b| q.mul(a, b)).collect()).collect();
        assert!(FiniteGroup::from_cayley("q8", rows).is_ok());
        assert!(!q.is_abelian());
        // exactly one element of order 2
        assert_eq!((0..8).filter(|&x| q.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn dihedral_is_a_group() {
        for n in 1..7 {
            let d = dihedral(n).unwrap();
            let rows: Vec<Vec<usize>> = (0..2 * n).map(|a| (0..2 * n).map(|b| d.mul(a, b)).collect()).collect();
            assert!(FiniteGroup::from_cayley("d", rows).is_ok());
        }
    }

    #[test]
    fn order_cap_applies() {
        assert!(matches!(symmetric(6), Err(Error::OrderCap { .. })));
    }
}
