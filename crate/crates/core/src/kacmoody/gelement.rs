//! Elements of 𝔤 = Vect(S¹)_t ⋉ 𝔏_t(ΨD_{≤1} ⊕ ℂ) and of its restricted dual.

use std::fmt;

use crate::cocycles::{eval_cocycle, CocycleId};
use crate::error::{Error, Result};
use crate::psido::{HalfInt, SymVar, Symbol};
use crate::ring::{CoeffFn, GaussRat, Scalar, Var};

/// `(w(t)∂_t; W, α(t))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GElement {
    pub w: CoeffFn,
    pub big_w: Symbol,
    pub alpha: CoeffFn,
}

/// `(v(t)dt²; V dt, a(t)dt)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GDual {
    pub v: CoeffFn,
    pub big_v: Symbol,
    pub a: CoeffFn,
}

fn t_only(f: &CoeffFn, what: &str) -> Result<()> {
    if f.depends_on(Var::X) {
        Err(Error::Domain(format!("{what} must not depend on r")))
    } else {
        Ok(())
    }
}

impl GElement {
    pub fn new(w: CoeffFn, big_w: Symbol, alpha: CoeffFn) -> Result<Self> {
        t_only(&w, "the vector field component")?;
        t_only(&alpha, "the central component")?;
        if big_w.var() != SymVar::R {
            return Err(Error::MixedVariable);
        }
        if let Some(top) = big_w.top() {
            if top > HalfInt::ONE {
                return Err(Error::BadOrder(top));
            }
        }
        Ok(GElement { w, big_w, alpha })
    }

    pub fn zero() -> Self {
        GElement { w: CoeffFn::zero(), big_w: Symbol::zero(SymVar::R), alpha: CoeffFn::zero() }
    }

    pub fn vector_field(w: CoeffFn) -> Self {
        GElement { w, ..GElement::zero() }
    }

    pub fn symbol(big_w: Symbol) -> Self {
        GElement { big_w, ..GElement::zero() }
    }

    pub fn central(alpha: CoeffFn) -> Self {
        GElement { alpha, ..GElement::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.big_w.is_zero() && self.alpha.is_zero()
    }

    pub fn add(&self, o: &GElement) -> Result<GElement> {
        Ok(GElement { w: &self.w + &o.w, big_w: self.big_w.add(&o.big_w)?, alpha: &self.alpha + &o.alpha })
    }

    pub fn sub(&self, o: &GElement) -> Result<GElement> {
        Ok(GElement { w: &self.w - &o.w, big_w: self.big_w.sub(&o.big_w)?, alpha: &self.alpha - &o.alpha })
    }

    pub fn scale(&self, s: &Scalar) -> GElement {
        GElement { w: self.w.scale(s), big_w: self.big_w.scale(s), alpha: self.alpha.scale(s) }
    }
}

/// The bracket of 𝔤 with central charge `c`.
pub fn g_bracket(a: &GElement, b: &GElement, c: &GaussRat, req_floor: HalfInt) -> Result<GElement> {
    let w = &(&a.w * &b.w.dt()) - &(&a.w.dt() * &b.w);
    let big_w = a
        .big_w
        .bracket(&b.big_w, req_floor)?
        .add(&b.big_w.time_deriv().left_mul_fn(&a.w))?
        .sub(&a.big_w.time_deriv().left_mul_fn(&b.w))?;
    let mut alpha = &(&a.w * &b.alpha.dt()) - &(&b.w * &a.alpha.dt());
    if !c.is_zero() {
        alpha += &eval_cocycle(CocycleId::C3, &a.big_w, &b.big_w)?.scale_gauss(c);
    }
    Ok(GElement { w, big_w, alpha })
}

impl GDual {
    pub fn new(v: CoeffFn, big_v: Symbol, a: CoeffFn) -> Result<Self> {
        t_only(&v, "the dt^2 component")?;
        t_only(&a, "the dt component")?;
        if big_v.var() != SymVar::R {
            return Err(Error::MixedVariable);
        }
        if !big_v.is_exact() || big_v.bottom().is_some_and(|b| b < HalfInt::int(-2)) {
            return Err(Error::Domain("dual symbols are exact with orders >= -2".into()));
        }
        Ok(GDual { v, big_v, a })
    }

    pub fn zero() -> Self {
        GDual { v: CoeffFn::zero(), big_v: Symbol::zero(SymVar::R), a: CoeffFn::zero() }
    }

    /// A point `(v; V₋₂∂⁻² + V₀, a)` of the affine subspace 𝒩.
    pub fn point(v: CoeffFn, v_m2: CoeffFn, v0: CoeffFn, a: CoeffFn) -> Result<Self> {
        let big_v = Symbol::from_terms(SymVar::R, [(HalfInt::int(-2), v_m2), (HalfInt::ZERO, v0)]);
        let out = GDual::new(v, big_v, a)?;
        if !out.in_n() {
            return Err(Error::Domain("V0 must be a function of t only".into()));
        }
        Ok(out)
    }

    pub fn v_m2(&self) -> CoeffFn {
        self.big_v.coeff(HalfInt::int(-2))
    }

    pub fn v0(&self) -> CoeffFn {
        self.big_v.coeff(HalfInt::ZERO)
    }

    /// Membership in 𝒩: only orders -2 and 0, with an r-independent order 0 part.
    pub fn in_n(&self) -> bool {
        self.big_v.terms().all(|(o, _)| o == HalfInt::int(-2) || o == HalfInt::ZERO)
            && !self.v0().depends_on(Var::X)
            && !self.v.depends_on(Var::X)
            && !self.a.depends_on(Var::X)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero() && self.big_v.is_zero() && self.a.is_zero()
    }

    pub fn add(&self, o: &GDual) -> Result<GDual> {
        Ok(GDual { v: &self.v + &o.v, big_v: self.big_v.add(&o.big_v)?, a: &self.a + &o.a })
    }

    pub fn sub(&self, o: &GDual) -> Result<GDual> {
        Ok(GDual { v: &self.v - &o.v, big_v: self.big_v.sub(&o.big_v)?, a: &self.a - &o.a })
    }

    pub fn normalize_mass(&self) -> GDual {
        GDual { v: self.v.normalize_mass(), big_v: self.big_v.normalize_mass(), a: self.a.normalize_mass() }
    }
}

/// `res_t (v w + Tr(V W) + a α)`.
pub fn pairing(mu: &GDual, x: &GElement) -> Result<Scalar> {
    let mut integrand = &mu.v * &x.w;
    integrand += &mu.big_v.trace_of_product(&x.big_w)?;
    integrand += &(&mu.a * &x.alpha);
    Ok(integrand.residue(Var::T).coeff(0, 0))
}

fn render_triplet(f: &mut fmt::Formatter<'_>, a: &CoeffFn, s: &Symbol, b: &CoeffFn) -> fmt::Result {
    write!(f, "({} | {} {{{}}} | {})", a.render("r"), s.render_body(), s.render_floor(), b.render("r"))
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_triplet(f, &self.w, &self.big_w, &self.alpha)
    }
}

impl fmt::Display for GDual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_triplet(f, &self.v, &self.big_v, &self.a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(q: i32, o: i64) -> Symbol {
        Symbol::monomial(SymVar::R, CoeffFn::x_pow(q), HalfInt::int(o))
    }

    const FL: HalfInt = HalfInt(-7);

    #[test]
    fn central_term_from_c3() {
        let c = GaussRat::int(3);
        let a = GElement::symbol(sym(2, 1));
        let b = GElement::symbol(sym(-2, -1));
        let br = g_bracket(&a, &b, &c, FL).unwrap();
        assert_eq!(br.alpha, CoeffFn::int(6));
        assert_eq!(br.big_w, sym(2, 1).bracket(&sym(-2, -1), FL).unwrap());
    }

    #[test]
    fn witt_and_transport() {
        let c = GaussRat::int(2);
        let w1 = GElement::vector_field(CoeffFn::t_pow(2));
        let w2 = GElement::vector_field(CoeffFn::t_pow(-1));
        let br = g_bracket(&w1, &w2, &c, FL).unwrap();
        // t²·(−t⁻²) − 2t·t⁻¹ = −3
        assert_eq!(br, GElement::vector_field(CoeffFn::int(-3)));
        let big = Symbol::monomial(SymVar::R, CoeffFn::monomial(Scalar::one(), 3, 1), HalfInt::ONE);
        let br = g_bracket(&w1, &GElement::symbol(big.clone()), &c, FL).unwrap();
        assert_eq!(br.big_w, big.time_deriv().left_mul_fn(&CoeffFn::t_pow(2)));
        assert!(br.w.is_zero() && br.alpha.is_zero());
    }

    #[test]
    fn pairing_examples() {
        let mu = GDual::new(CoeffFn::zero(), Symbol::function(SymVar::R, CoeffFn::t_pow(-2)), CoeffFn::zero()).unwrap();
        let w = Symbol::monomial(SymVar::R, CoeffFn::monomial(Scalar::int(5), 1, -1), HalfInt::int(-1));
        let x = GElement::symbol(w);
        // res_t(t⁻² · 5t) = 5
        assert_eq!(pairing(&mu, &x).unwrap(), Scalar::int(5));
        let mu = GDual::new(CoeffFn::t_pow(-1), Symbol::zero(SymVar::R), CoeffFn::zero()).unwrap();
        assert_eq!(pairing(&mu, &GElement::vector_field(CoeffFn::one())).unwrap(), Scalar::one());
        assert!(pairing(&mu, &GElement::zero()).unwrap().is_zero());
    }

    #[test]
    fn membership_in_n() {
        let p = GDual::point(CoeffFn::zero(), CoeffFn::x_pow(3), CoeffFn::t_pow(1), CoeffFn::one());
        assert!(p.unwrap().in_n());
        assert!(GDual::point(CoeffFn::zero(), CoeffFn::zero(), CoeffFn::x_pow(1), CoeffFn::one()).is_err());
    }
}
