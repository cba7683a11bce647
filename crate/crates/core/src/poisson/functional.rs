//! Local functionals on the affine slice `(v; V₋₂∂⁻² + V₀, a)` and their variational derivatives.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::kacmoody::GDual;
use crate::psido::HalfInt;
use crate::ring::{CoeffFn, GaussRat, Scalar, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Vm2,
    V0,
    V,
    A,
}

impl Field {
    pub const ALL: [Field; 4] = [Field::Vm2, Field::V0, Field::V, Field::A];

    pub fn name(self) -> &'static str {
        match self {
            Field::Vm2 => "Vm2",
            Field::V0 => "V0",
            Field::V => "v",
            Field::A => "a",
        }
    }

    pub fn class(self) -> FunctionalClass {
        match self {
            Field::Vm2 | Field::V0 => FunctionalClass::Potential,
            Field::V => FunctionalClass::Vector,
            Field::A => FunctionalClass::Central,
        }
    }

    fn has_r(self) -> bool {
        self.class() == FunctionalClass::Potential
    }
}

/// Which part of the dual a functional lives on: potentials (integrated in `t` and `r`),
/// the `dt²` slot or the central `dt` slot (both integrated in `t` only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionalClass {
    Potential,
    Vector,
    Central,
}

/// `∂_t^i ∂_r^j` applied to a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetVar {
    pub field: Field,
    pub i: u32,
    pub j: u32,
}

impl JetVar {
    pub fn new(field: Field, i: u32, j: u32) -> Result<Self> {
        if j > 0 && !field.has_r() {
            return Err(Error::Domain(format!("{} does not depend on r", field.name())));
        }
        Ok(JetVar { field, i, j })
    }

    pub fn field(field: Field) -> Self {
        JetVar { field, i: 0, j: 0 }
    }

    fn dt(self) -> JetVar {
        JetVar { i: self.i + 1, ..self }
    }

    fn dr(self) -> Option<JetVar> {
        self.field.has_r().then_some(JetVar { j: self.j + 1, ..self })
    }
}

impl fmt::Display for JetVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, n) in [("dt", self.i), ("dr", self.j)] {
            match n {
                0 => {}
                1 => write!(f, "{name} ")?,
                n => write!(f, "{name}^{n} ")?,
            }
        }
        write!(f, "{}", self.field.name())
    }
}

/// Sorted multiset of jet variables.
pub type JetMonomial = Vec<JetVar>;

fn monomial_class(m: &[JetVar]) -> Result<Option<FunctionalClass>> {
    let mut class = None;
    for v in m {
        match class {
            None => class = Some(v.field.class()),
            Some(c) if c != v.field.class() => {
                return Err(Error::MixedFunctional(m.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" * ")))
            }
            _ => {}
        }
    }
    Ok(class)
}

/// A density: finite sum of `c(t, r) · Π jets`, understood modulo total derivatives.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LocalFunctional {
    terms: BTreeMap<JetMonomial, CoeffFn>,
}

impl LocalFunctional {
    pub fn zero() -> Self {
        LocalFunctional::default()
    }

    /// `c · Π jets`. Products of jets from different classes are rejected, and so are
    /// r-dependent coefficients on the `t`-only classes.
    pub fn monomial(coeff: CoeffFn, jets: impl IntoIterator<Item = JetVar>) -> Result<Self> {
        let mut m: JetMonomial = jets.into_iter().collect();
        m.sort();
        let class = monomial_class(&m)?;
        if matches!(class, Some(FunctionalClass::Vector | FunctionalClass::Central)) && coeff.depends_on(Var::X) {
            return Err(Error::MixedFunctional(format!("r-dependent coefficient {} on a t-only field", coeff.render("r"))));
        }
        let mut out = LocalFunctional::zero();
        out.add_term(m, coeff);
        Ok(out)
    }

    /// `c · field`.
    pub fn linear(coeff: CoeffFn, field: Field) -> Result<Self> {
        LocalFunctional::monomial(coeff, [JetVar::field(field)])
    }

    fn add_term(&mut self, m: JetMonomial, c: CoeffFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JetMonomial, &CoeffFn)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &LocalFunctional) -> LocalFunctional {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &LocalFunctional) -> LocalFunctional {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> LocalFunctional {
        let mut out = LocalFunctional::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.scale(s));
        }
        out
    }

    /// Multiply every coefficient by a function of `t` and `r`.
    pub fn mul_fn(&self, f: &CoeffFn) -> LocalFunctional {
        let mut out = LocalFunctional::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * f);
        }
        out
    }

    /// The fields appearing anywhere.
    pub fn fields(&self) -> Vec<Field> {
        let mut out: Vec<Field> = self.terms.keys().flatten().map(|v| v.field).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Split by class. Jet-free terms go with the potentials.
    pub fn parts(&self) -> BTreeMap<FunctionalClass, LocalFunctional> {
        let mut out: BTreeMap<FunctionalClass, LocalFunctional> = BTreeMap::new();
        for (m, c) in &self.terms {
            let class = m.first().map_or(FunctionalClass::Potential, |v| v.field.class());
            out.entry(class).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// `∂F/∂(jet)` as a density.
    pub fn partial(&self, jet: JetVar) -> LocalFunctional {
        let mut out = LocalFunctional::zero();
        for (m, c) in &self.terms {
            let count = m.iter().filter(|v| **v == jet).count();
            if count == 0 {
                continue;
            }
            let mut rest = m.clone();
            let pos = rest.iter().position(|v| *v == jet).expect("present");
            rest.remove(pos);
            out.add_term(rest, c.scale(&Scalar::int(count as i64)));
        }
        out
    }

    fn total_deriv(&self, var: Var) -> LocalFunctional {
        let mut out = LocalFunctional::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.deriv(var));
            for k in 0..m.len() {
                let moved = match var {
                    Var::T => Some(m[k].dt()),
                    Var::X => m[k].dr(),
                };
                if let Some(v) = moved {
                    let mut next = m.clone();
                    next[k] = v;
                    next.sort();
                    out.add_term(next, c.clone());
                }
            }
        }
        out
    }

    /// Total derivative `d/dt`.
    pub fn d_t(&self) -> LocalFunctional {
        self.total_deriv(Var::T)
    }

    /// Total derivative `d/dr`.
    pub fn d_r(&self) -> LocalFunctional {
        self.total_deriv(Var::X)
    }

    /// The jets in which the density is not constant.
    fn jets(&self) -> Vec<JetVar> {
        let mut out: Vec<JetVar> = self.terms.keys().flatten().copied().collect();
        out.sort();
        out.dedup();
        out
    }

    /// `Σ (−1)^{i+j} d_t^i d_r^j ∂F/∂(∂_t^i ∂_r^j φ)`.
    pub fn variational_derivative(&self, field: Field) -> LocalFunctional {
        let mut out = LocalFunctional::zero();
        for jet in self.jets().into_iter().filter(|v| v.field == field) {
            let mut term = self.partial(jet);
            for _ in 0..jet.i {
                term = term.d_t();
            }
            for _ in 0..jet.j {
                term = term.d_r();
            }
            if (jet.i + jet.j) % 2 == 1 {
                term = term.scale(&Scalar::int(-1));
            }
            out = out.add(&term);
        }
        out
    }

    /// Substitute the point into the density.
    pub fn density_at(&self, point: &SlicePoint) -> CoeffFn {
        let mut out = CoeffFn::zero();
        for (m, c) in &self.terms {
            let mut prod = c.clone();
            for v in m {
                prod = &prod * &point.jet(*v);
                if prod.is_zero() {
                    break;
                }
            }
            out += &prod;
        }
        out
    }

    /// The value of the functional: `∫∫` on potentials and jet-free terms, `∫` otherwise.
    pub fn evaluate(&self, point: &SlicePoint) -> Scalar {
        let mut out = Scalar::zero();
        for (class, part) in self.parts() {
            let dens = part.density_at(point);
            out = &out + &integrate(class, &dens);
        }
        out
    }

    pub fn normalize_mass(&self) -> LocalFunctional {
        let mut out = LocalFunctional::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.normalize_mass());
        }
        out
    }
}

/// `res_t res_r` for potentials, `res_t` of the `r⁰` part for the `t`-only classes.
pub(crate) fn integrate(class: FunctionalClass, dens: &CoeffFn) -> Scalar {
    match class {
        FunctionalClass::Potential => dens.double_residue(),
        _ => dens.residue(Var::T).coeff(0, 0),
    }
}

impl fmt::Display for LocalFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut pieces = Vec::new();
        for (class, part) in self.parts() {
            let integral = if class == FunctionalClass::Potential { "int int" } else { "int" };
            for (m, c) in &part.terms {
                let mut factors = vec![format!("({})", c.render("r"))];
                factors.extend(m.iter().map(|v| format!("[{v}]")));
                pieces.push(format!("{integral} {}", factors.join(" * ")));
            }
        }
        write!(f, "{}", pieces.join(" + "))
    }
}

/// A point `(v; V₋₂∂⁻² + V₀, a)` of the affine slice, with `V₀` allowed to depend on `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlicePoint {
    pub v: CoeffFn,
    pub v_m2: CoeffFn,
    pub v0: CoeffFn,
    pub a: CoeffFn,
}

impl SlicePoint {
    pub fn new(v: CoeffFn, v_m2: CoeffFn, v0: CoeffFn, a: CoeffFn) -> Result<Self> {
        if v.depends_on(Var::X) || a.depends_on(Var::X) {
            return Err(Error::Domain("v and a are functions of t".into()));
        }
        Ok(SlicePoint { v, v_m2, v0, a })
    }

    /// Read a dual element whose symbol has orders −2 and 0 only.
    pub fn from_dual(mu: &GDual) -> Result<Self> {
        if mu.big_v.terms().any(|(o, _)| o != HalfInt::int(-2) && o != HalfInt::ZERO) {
            return Err(Error::Domain("the point must have symbol orders -2 and 0 only".into()));
        }
        SlicePoint::new(mu.v.clone(), mu.v_m2(), mu.v0(), mu.a.clone())
    }

    pub fn to_dual(&self) -> Result<GDual> {
        let big_v = crate::psido::Symbol::from_terms(
            crate::psido::SymVar::R,
            [(HalfInt::int(-2), self.v_m2.clone()), (HalfInt::ZERO, self.v0.clone())],
        );
        GDual::new(self.v.clone(), big_v, self.a.clone())
    }

    /// Whether `V₀` is a function of `t` only.
    pub fn in_n(&self) -> bool {
        !self.v0.depends_on(Var::X)
    }

    pub fn value(&self, field: Field) -> &CoeffFn {
        match field {
            Field::Vm2 => &self.v_m2,
            Field::V0 => &self.v0,
            Field::V => &self.v,
            Field::A => &self.a,
        }
    }

    pub fn jet(&self, v: JetVar) -> CoeffFn {
        self.value(v.field).deriv_n(Var::T, v.i).deriv_n(Var::X, v.j)
    }
}

impl fmt::Display for SlicePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(v = {}; Vm2 = {}, V0 = {}; a = {})",
            self.v.render("r"),
            self.v_m2.render("r"),
            self.v0.render("r"),
            self.a.render("r")
        )
    }
}

/// `c · t^p r^q` as a coefficient.
pub fn tr(c: GaussRat, p: i32, q: i32) -> CoeffFn {
    CoeffFn::monomial(Scalar::constant(c), p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jet(field: Field, i: u32, j: u32) -> JetVar {
        JetVar::new(field, i, j).unwrap()
    }

    #[test]
    fn examples() {
        let vm2 = JetVar::field(Field::Vm2);
        let sq = LocalFunctional::monomial(CoeffFn::one(), [vm2, vm2]).unwrap();
        assert_eq!(sq.variational_derivative(Field::Vm2), LocalFunctional::linear(CoeffFn::int(2), Field::Vm2).unwrap());
        let td = LocalFunctional::monomial(CoeffFn::one(), [vm2, jet(Field::Vm2, 0, 1)]).unwrap();
        assert!(td.variational_derivative(Field::Vm2).is_zero());
        let coef = CoeffFn::monomial(Scalar::int(3), 2, 1);
        let f = LocalFunctional::linear(coef.clone(), Field::V0).unwrap();
        assert_eq!(f.variational_derivative(Field::V0), LocalFunctional::monomial(coef, []).unwrap());
        assert!(f.variational_derivative(Field::Vm2).is_zero());
    }

    #[test]
    fn mixed_products_are_rejected() {
        let m = LocalFunctional::monomial(CoeffFn::one(), [JetVar::field(Field::V), JetVar::field(Field::Vm2)]);
        assert!(matches!(m, Err(Error::MixedFunctional(_))));
        assert!(LocalFunctional::linear(CoeffFn::x_pow(1), Field::A).is_err());
        assert!(JetVar::new(Field::V, 0, 1).is_err());
    }

    #[test]
    fn total_derivatives_have_zero_variation() {
        let base = LocalFunctional::monomial(CoeffFn::monomial(Scalar::one(), 2, 3), [jet(Field::Vm2, 1, 0), jet(Field::V0, 0, 2)])
            .unwrap();
        for d in [base.d_t(), base.d_r()] {
            for field in Field::ALL {
                assert!(d.variational_derivative(field).is_zero());
            }
        }
    }

    #[test]
    fn evaluation_ignores_total_derivatives() {
        let p = SlicePoint::new(
            CoeffFn::t_pow(-2),
            &CoeffFn::monomial(Scalar::one(), 1, -1) + &CoeffFn::x_pow(2),
            CoeffFn::monomial(Scalar::one(), -1, -2),
            CoeffFn::t_pow(1),
        )
        .unwrap();
        let base = LocalFunctional::monomial(CoeffFn::monomial(Scalar::one(), -1, 1), [jet(Field::Vm2, 0, 0), jet(Field::V0, 0, 0)])
            .unwrap();
        assert!(base.d_t().evaluate(&p).is_zero());
        assert!(base.d_r().evaluate(&p).is_zero());
        let lin = LocalFunctional::linear(CoeffFn::t_pow(1), Field::V).unwrap();
        assert_eq!(lin.evaluate(&p), Scalar::one());
    }
}
