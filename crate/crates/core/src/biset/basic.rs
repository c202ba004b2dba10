use super::Biset;
use crate::error::{Error, Result};
use std::sync::Arc;

use crate::arith::gcd;
use crate::group::{quotient, subgroups_up_to_conjugacy, FiniteGroup, GroupHom, Subgroup};

/// The five basic biset operations, with the data that determines them.
///
/// Subgroup data refers to the larger group: `Ind`/`Res` carry `H ≤ G` and
/// `Inf`/`Def` carry the normal subgroup `N ⊴ G`.
#[derive(Clone, Debug)]
pub enum BasicBiset {
    /// `Ind^G_H = _G G_H`
    Ind(Subgroup),
    /// `Res^G_H = _H G_G`
    Res(Subgroup),
    /// `Inf^G_{G/N} = _G (G/N)_{G/N}`
    Inf(Subgroup),
    /// `Def^G_{G/N} = _{G/N} (G/N)_G`
    Def(Subgroup),
    /// `Iso(f) = _{G'} G'_G` with the right action through `f: G → G'`
    Iso(GroupHom),
}

impl BasicBiset {
    pub fn kind(&self) -> &'static str {
        match self {
            BasicBiset::Ind(_) => "Ind",
            BasicBiset::Res(_) => "Res",
            BasicBiset::Inf(_) => "Inf",
            BasicBiset::Def(_) => "Def",
            BasicBiset::Iso(_) => "Iso",
        }
    }

    pub fn biset(&self) -> Result<Biset> {
        match self {
            BasicBiset::Ind(h) => Ok(Biset::induction_along(&h.to_group().1)),
            BasicBiset::Res(h) => Ok(Biset::restriction_along(&h.to_group().1)),
            BasicBiset::Inf(n) => {
                let (_, proj) = quotient(n.parent(), n)?;
                Ok(Biset::restriction_along(&proj))
            }
            BasicBiset::Def(n) => {
                let (_, proj) = quotient(n.parent(), n)?;
                Ok(Biset::induction_along(&proj))
            }
            BasicBiset::Iso(f) => {
                if !f.is_isomorphism() {
                    return Err(Error::NotHomomorphism(format!(
                        "Iso needs a bijection, got a map {} -> {} that is not one",
                        f.source().name(),
                        f.target().name()
                    )));
                }
                Ok(Biset::induction_along(f))
            }
        }
    }
}

/// Basic bisets with `g` as the larger group: `Ind` and `Res` for each subgroup class,
/// `Inf` and `Def` for each normal subgroup, and `Iso` for the power automorphisms
/// `x ↦ x^j` of an abelian `g`.
pub fn basic_family(g: &Arc<FiniteGroup>) -> Vec<BasicBiset> {
    let mut out = Vec::new();
    for s in subgroups_up_to_conjugacy(g) {
        if s.is_normal() {
            out.push(BasicBiset::Inf(s.clone()));
            out.push(BasicBiset::Def(s.clone()));
        }
        out.push(BasicBiset::Ind(s.clone()));
        out.push(BasicBiset::Res(s));
    }
    if g.is_abelian() {
        let e = g.exponent() as u64;
        for j in 2..e {
            if gcd(j, e) == 1 {
                let map = (0..g.order()).map(|x| g.pow(x, j as i64)).collect();
                out.push(BasicBiset::Iso(GroupHom::new(g, g, map).expect("power maps of abelian groups")));
            }
        }
    }
    out
}
