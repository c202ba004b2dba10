use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use super::{alternating, check_cap, cyclic, dihedral, permutation_group, quaternion, symmetric};
use super::{FiniteGroup, Permutation, ProductGroup};
use crate::error::{Error, Result};

/// A parsed group description.
///
/// Text forms: `cyclic:<n>`, `dihedral:<n>` (order `2n`), `quaternion`,
/// `sym:<n>`, `alt:<n>`, `perm:<cycles>;<cycles>...` (points numbered from 1),
/// `prod:<spec>,<spec>` and `cayley:@<file>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion,
    Symmetric(usize),
    Alternating(usize),
    /// Generators, each a list of cycles on 1-based points.
    Perm(Vec<Vec<Vec<usize>>>),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Cayley(PathBuf),
}

const MAX_POINTS: usize = 16;

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, expected: &str) -> Error {
        Error::Parse { input: self.input.to_string(), pos: self.pos, expected: expected.to_string() }
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("'{token}'")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("a decimal number"));
        }
        let v = self.rest()[..digits].parse().map_err(|_| self.error("a number that fits in 64 bits"))?;
        self.pos += digits;
        Ok(v)
    }

    fn positive(&mut self) -> Result<usize> {
        let start = self.pos;
        let v = self.number()?;
        if v == 0 {
            self.pos = start;
            return Err(self.error("a positive number"));
        }
        Ok(v)
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        if self.eat("cyclic:") {
            Ok(GroupSpec::Cyclic(self.positive()?))
        } else if self.eat("dihedral:") {
            Ok(GroupSpec::Dihedral(self.positive()?))
        } else if self.eat("quaternion") {
            Ok(GroupSpec::Quaternion)
        } else if self.eat("sym:") {
            Ok(GroupSpec::Symmetric(self.bounded_degree()?))
        } else if self.eat("alt:") {
            Ok(GroupSpec::Alternating(self.bounded_degree()?))
        } else if self.eat("perm:") {
            self.perm()
        } else if self.eat("prod:") {
            let a = self.spec()?;
            self.expect(",")?;
            let b = self.spec()?;
            Ok(GroupSpec::Product(Box::new(a), Box::new(b)))
        } else if self.eat("cayley:@") {
            let len = self.rest().find(',').unwrap_or(self.rest().len());
            if len == 0 {
                return Err(self.error("a file path"));
            }
            let path = PathBuf::from(&self.rest()[..len]);
            self.pos += len;
            Ok(GroupSpec::Cayley(path))
        } else {
            Err(self.error("one of cyclic:, dihedral:, quaternion, sym:, alt:, perm:, prod:, cayley:@"))
        }
    }

    fn bounded_degree(&mut self) -> Result<usize> {
        let start = self.pos;
        let n = self.positive()?;
        if n > 5 {
            self.pos = start;
            return Err(self.error("a degree between 1 and 5"));
        }
        Ok(n)
    }

    fn perm(&mut self) -> Result<GroupSpec> {
        let mut gens = vec![self.generator()?];
        while self.eat(";") {
            gens.push(self.generator()?);
        }
        Ok(GroupSpec::Perm(gens))
    }

    fn generator(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut cycles = Vec::new();
        while self.rest().starts_with('(') {
            self.pos += 1;
            let mut cycle = Vec::new();
            if !self.eat(")") {
                loop {
                    let start = self.pos;
                    let p = self.positive()?;
                    if p > MAX_POINTS {
                        self.pos = start;
                        return Err(self.error("a point between 1 and 16"));
                    }
                    if cycle.contains(&p) {
                        self.pos = start;
                        return Err(self.error("a point not already in this cycle"));
                    }
                    cycle.push(p);
                    if self.eat(")") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            cycles.push(cycle);
        }
        if cycles.is_empty() {
            return Err(self.error("a cycle such as (1,2,3)"));
        }
        Ok(cycles)
    }
}

impl GroupSpec {
    pub fn parse(input: &str) -> Result<Self> {
        let mut p = Parser { input, pos: 0 };
        let spec = p.spec()?;
        if p.pos != input.len() {
            return Err(p.error("end of input"));
        }
        Ok(spec)
    }

    pub fn build(&self) -> Result<Arc<FiniteGroup>> {
        let name = self.to_string();
        let g = match self {
            GroupSpec::Cyclic(n) => cyclic(*n)?,
            GroupSpec::Dihedral(n) => dihedral(*n)?,
            GroupSpec::Quaternion => quaternion(),
            GroupSpec::Symmetric(n) => symmetric(*n)?,
            GroupSpec::Alternating(n) => alternating(*n)?,
            GroupSpec::Perm(gens) => {
                let degree = gens.iter().flatten().flatten().copied().max().unwrap_or(1);
                let perms: Vec<Permutation> = gens
                    .iter()
                    .map(|cycles| {
                        let mut p: Permutation = (0..degree as u8).collect();
                        // cycles compose right to left
                        for cycle in cycles.iter().rev() {
                            let mut step: Permutation = (0..degree as u8).collect();
                            for (i, &a) in cycle.iter().enumerate() {
                                step[a - 1] = (cycle[(i + 1) % cycle.len()] - 1) as u8;
                            }
                            p = p.iter().map(|&x| step[x as usize]).collect();
                        }
                        p
                    })
                    .collect();
                permutation_group(name.clone(), degree, &perms)?
            }
            GroupSpec::Product(a, b) => {
                let a = a.build()?;
                let b = b.build()?;
                check_cap(a.order() * b.order())?;
                let p = ProductGroup::pair(&a, &b);
                return Ok(Arc::new((**p.group()).clone().with_name(name)));
            }
            GroupSpec::Cayley(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                    context: format!("reading Cayley table {}", path.display()),
                    source,
                })?;
                let rows = parse_cayley_text(&text)?;
                FiniteGroup::from_cayley(name.clone(), rows)?
            }
        };
        Ok(Arc::new(g.with_name(name)))
    }
}

/// Rows of whitespace-separated element indices; blank lines and `#` comments are skipped.
pub fn parse_cayley_text(text: &str) -> Result<Vec<Vec<usize>>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::NotAGroup(format!("bad table entry {t:?}"))))
                .collect()
        })
        .collect()
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Quaternion => write!(f, "quaternion"),
            GroupSpec::Symmetric(n) => write!(f, "sym:{n}"),
            GroupSpec::Alternating(n) => write!(f, "alt:{n}"),
            GroupSpec::Perm(gens) => {
                write!(f, "perm:")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    for c in g {
                        let pts: Vec<String> = c.iter().map(ToString::to_string).collect();
                        write!(f, "({})", pts.join(","))?;
                    }
                }
                Ok(())
            }
            GroupSpec::Product(a, b) => write!(f, "prod:{a},{b}"),
            GroupSpec::Cayley(p) => write!(f, "cayley:@{}", p.display()),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}
