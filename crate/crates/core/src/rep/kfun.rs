use std::sync::Arc;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::{FClassPartition, FieldSpec, OrbitSpace};
use crate::arith::linalg::RowEchelon;
use crate::arith::{inverse_mod, rat, Cyclo};
use crate::biset::{Biset, BisetAction};
use crate::chartable::{char_table, CharTable};
use crate::classfn::ClassFunction;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// An element of `kR_F(G)`, stored by its values on ordinary classes.
///
/// Values are F-stable (`f(c^i) = f(c)` for `i ∈ F_n`) and Galois-twist stable
/// (`σ_j(f(c)) = f(c^j)` for `j ∈ K_n`), with values in `Q(ω_n)`.
#[derive(Clone, Debug)]
pub struct KClassFunction {
    k: FieldSpec,
    f: FieldSpec,
    func: ClassFunction,
}

impl KClassFunction {
    pub fn new(k: FieldSpec, f: FieldSpec, func: ClassFunction) -> Result<Self> {
        check(k, f, &func)?;
        Ok(KClassFunction { k, f, func })
    }

    pub fn from_values(g: &Arc<FiniteGroup>, k: FieldSpec, f: FieldSpec, values: Vec<Cyclo>) -> Result<Self> {
        if values.len() != g.num_classes() {
            return Err(Error::OutOfRange { index: values.len(), len: g.num_classes() });
        }
        Self::new(k, f, ClassFunction::new(g, values))
    }

    pub fn zero(g: &Arc<FiniteGroup>, k: FieldSpec, f: FieldSpec) -> Self {
        KClassFunction { k, f, func: ClassFunction::zero(g) }
    }

    pub fn one(g: &Arc<FiniteGroup>, k: FieldSpec, f: FieldSpec) -> Self {
        KClassFunction { k, f, func: ClassFunction::constant(g, Cyclo::one()) }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.func.group()
    }

    pub fn k_field(&self) -> FieldSpec {
        self.k
    }

    pub fn f_field(&self) -> FieldSpec {
        self.f
    }

    pub fn func(&self) -> &ClassFunction {
        &self.func
    }

    pub fn values(&self) -> &[Cyclo] {
        self.func.values()
    }

    pub fn value(&self, c: usize) -> &Cyclo {
        self.func.value(c)
    }

    pub fn is_zero(&self) -> bool {
        self.func.is_zero()
    }

    fn check_fields(&self, other: &Self) -> Result<()> {
        if (self.k, self.f) != (other.k, other.f) {
            return Err(Error::GroupMismatch(format!(
                "elements of {}R_{} and {}R_{}",
                self.k, self.f, other.k, other.f
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_fields(other)?;
        Ok(self.with(self.func.add(&other.func)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_fields(other)?;
        Ok(self.with(self.func.sub(&other.func)?))
    }

    /// The product of `kR_F(G)`: pointwise.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_fields(other)?;
        Ok(self.with(self.func.mul(&other.func)?))
    }

    /// Multiplication by a scalar, which must be fixed by `K_n`.
    pub fn scale(&self, s: &Cyclo) -> Result<Self> {
        Self::new(self.k, self.f, self.func.scale(s))
    }

    pub fn is_idempotent(&self) -> bool {
        self.func.mul(&self.func).map(|sq| sq == self.func).unwrap_or(false)
    }

    /// The image under a biset, `kR_F(X)(f)`; the result is checked to stay in the functor.
    pub fn act(&self, x: &Biset) -> Result<Self> {
        self.apply(&x.action())
    }

    pub fn apply(&self, action: &BisetAction) -> Result<Self> {
        let out = action.apply(&self.func)?;
        Self::new(self.k, self.f, out)
            .map_err(|e| Error::InvariantViolation(format!("biset action left the functor: {e}")))
    }

    fn with(&self, func: ClassFunction) -> Self {
        KClassFunction { k: self.k, f: self.f, func }
    }
}

impl PartialEq for KClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.f == other.f && self.func == other.func
    }
}

impl Eq for KClassFunction {}

impl Serialize for KClassFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("KClassFunction", 4)?;
        s.serialize_field("group", self.group().name())?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("F", &self.f)?;
        s.serialize_field("values", self.values())?;
        s.end()
    }
}

fn check(k: FieldSpec, f: FieldSpec, func: &ClassFunction) -> Result<()> {
    let g = func.group();
    let n = g.exponent();
    let bad = |m: String| Err(Error::NotInFunctor(m));
    for (c, v) in func.values().iter().enumerate() {
        if n % v.conductor() != 0 {
            return bad(format!("value {v} at class {c} does not lie in Q(w{n})"));
        }
    }
    for &i in f.galois_subgroup(n).members() {
        for c in 0..g.num_classes() {
            if func.value(g.power_class(c, i as i64)) != func.value(c) {
                return bad(format!("not constant on the {f}-class of class {c} (power {i})"));
            }
        }
    }
    for &j in k.galois_subgroup(n).members() {
        for c in 0..g.num_classes() {
            if &func.value(c).galois(j as i64)? != func.value(g.power_class(c, j as i64)) {
                return bad(format!("not stable under the twist by {j} at class {c}"));
            }
        }
    }
    Ok(())
}

/// `e^G_g = (1/|C_G(g)|) Σ_χ χ(g⁻¹) χ`, computed from the character table.
///
/// The result must be the indicator of the class; any other outcome is reported
/// as an invariant violation.
pub fn idempotent_point(g: &Arc<FiniteGroup>, c: usize) -> Result<ClassFunction> {
    point_idempotent(&char_table(g)?, c)
}

/// [`idempotent_point`] with a precomputed table.
pub fn point_idempotent(table: &CharTable, c: usize) -> Result<ClassFunction> {
    let g = table.group();
    if c >= g.num_classes() {
        return Err(Error::OutOfRange { index: c, len: g.num_classes() });
    }
    let inv = g.inverse_class(c);
    let scale = rat(1, g.centralizer_order(c) as i64);
    let mut values = vec![Cyclo::zero(); g.num_classes()];
    for chi in table.rows() {
        let coeff = chi.value(inv).scale(&scale);
        for (v, x) in values.iter_mut().zip(chi.values()) {
            *v += &(&coeff * x);
        }
    }
    let e = ClassFunction::new(g, values);
    if e != ClassFunction::indicator(g, &[c]) {
        return Err(Error::InvariantViolation(format!(
            "the character formula for e_g at class {c} of {} is not the class indicator",
            g.name()
        )));
    }
    Ok(e)
}

/// `e^G_C` for an F-class `C`. It lies in `k[ω]R_F(G)`, so the coefficient field
/// is recorded as the full cyclotomic field.
pub fn idempotent_fclass(part: &FClassPartition, b: usize) -> Result<KClassFunction> {
    if b >= part.len() {
        return Err(Error::OutOfRange { index: b, len: part.len() });
    }
    let func = ClassFunction::indicator(part.group(), part.block(b));
    Ok(KClassFunction { k: FieldSpec::FullCyclotomic, f: part.field(), func })
}

/// `e^G_{O(C)} = Σ_{D ∈ O(C)} e^G_D`, a primitive idempotent of `kR_F(G)`.
pub fn idempotent_orbit(space: &OrbitSpace, o: usize) -> Result<KClassFunction> {
    if o >= space.len() {
        return Err(Error::OutOfRange { index: o, len: space.len() });
    }
    Ok(KClassFunction {
        k: space.k_field(),
        f: space.f_field(),
        func: ClassFunction::indicator(space.group(), &space.orbit_classes(o)),
    })
}

/// `([j]f)(x) = σ_j(f(x^{j⁻¹}))`, the action of `σ_j ⊗ 1` on `k[ω]R_F(G)`.
pub fn galois_twist(f: &KClassFunction, j: i64) -> Result<KClassFunction> {
    let g = f.group();
    let n = g.exponent() as u64;
    let inv = inverse_mod(j, n).ok_or(Error::InvalidGaloisIndex { index: j, modulus: n })?;
    let values =
        (0..g.num_classes()).map(|c| f.value(g.power_class(c, inv as i64)).galois(j)).collect::<Result<Vec<_>>>()?;
    KClassFunction::new(f.k, f.f, ClassFunction::new(g, values))
}

/// The E-extension `kR_F(G) → kR_E(G)`: the same function on the finer E-classes.
pub fn extend_scalars(f: &KClassFunction, e: FieldSpec) -> Result<KClassFunction> {
    let n = f.group().exponent();
    if !e.contains_at(&f.f, n) {
        return Err(Error::FieldContainment { inner: f.f.to_string(), outer: e.to_string(), modulus: n });
    }
    KClassFunction::new(f.k, e, f.func.clone())
}

/// A k-basis of `kR_F(G)`: for each orbit `O(C)`, traces
/// `Σ_{j ∈ K_n} σ_j(θ) e_{C^j}` for enough roots of unity `θ`.
pub fn k_basis(space: &OrbitSpace) -> Vec<KClassFunction> {
    (0..space.len()).flat_map(|o| orbit_k_basis(space, o)).collect()
}

/// The part of [`k_basis`] supported on orbit `o`: a k-basis of `kR_F(G) e_{O}`,
/// of size `|O|`.
pub fn orbit_k_basis(space: &OrbitSpace, o: usize) -> Vec<KClassFunction> {
    let g = space.group();
    let blocks = space.f_classes();
    let n = g.exponent();
    let orbit = space.orbit(o);
    let rep = orbit[0];
    let mut echelon = RowEchelon::new(orbit.len());
    let mut out = Vec::new();
    for a in 0..n as i64 {
        if echelon.rank() == orbit.len() {
            break;
        }
        let theta = Cyclo::root_of_unity(n, a);
        let mut coords = vec![Cyclo::zero(); orbit.len()];
        for &j in space.k_galois().members() {
            let target = blocks.power_block(rep, j as i64);
            let pos = orbit.iter().position(|&b| b == target).expect("orbit is closed");
            coords[pos] += &theta.galois(j as i64).expect("j is a unit");
        }
        if echelon.insert(&coords) {
            let mut values = vec![Cyclo::zero(); g.num_classes()];
            for (&b, v) in orbit.iter().zip(&coords) {
                for &c in blocks.block(b) {
                    values[c] = v.clone();
                }
            }
            out.push(KClassFunction { k: space.k_field(), f: space.f_field(), func: ClassFunction::new(g, values) });
        }
    }
    out
}
