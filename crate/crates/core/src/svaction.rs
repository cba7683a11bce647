//! Infinitesimal actions of the Schrödinger-Virasoro algebra on operators `aΔ₀ + V`.

use std::fmt;

use crate::kacmoody::SvElement;
use crate::ring::{rat, rat_int, CoeffFn, GaussRat, Scalar};

/// `a(t)Δ₀ + V(t, r)` with `Δ₀ = −2iM∂_t − ∂_r²`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SchrodPoint {
    pub a: CoeffFn,
    pub v: CoeffFn,
}

impl SchrodPoint {
    pub fn new(a: CoeffFn, v: CoeffFn) -> Self {
        SchrodPoint { a, v }
    }

    pub fn add(&self, o: &SchrodPoint) -> SchrodPoint {
        SchrodPoint { a: &self.a + &o.a, v: &self.v + &o.v }
    }

    pub fn sub(&self, o: &SchrodPoint) -> SchrodPoint {
        SchrodPoint { a: &self.a - &o.a, v: &self.v - &o.v }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.v.is_zero()
    }
}

impl fmt::Display for SchrodPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) * D0 + {}", self.a.render("r"), self.v.render("r"))
    }
}

/// `a(−2i(μ − ¼)M f̈ − ½M² f⃛ r²)`.
fn l_anomaly(mu: &GaussRat, f: &CoeffFn, a: &CoeffFn) -> CoeffFn {
    let shifted = mu - &GaussRat::frac(1, 4);
    let lin = Scalar::monomial(&GaussRat::new(rat_int(0), rat_int(-2)) * &shifted, 1);
    let quad = Scalar::monomial(GaussRat::real(rat(-1, 2)), 2);
    let f2 = f.dt().dt();
    let inner = &f2.scale(&lin) + &(&f2.dt() * &CoeffFn::x_pow(2)).scale(&quad);
    a * &inner
}

/// Terms common to the linear and affine `L_f` actions on the potential.
fn l_potential_core(mu: &GaussRat, f: &CoeffFn, p: &SchrodPoint) -> CoeffFn {
    let f1 = f.dt();
    let mut out = -&(f * &p.v.dt());
    out -= &(&(&f1 * &CoeffFn::x_pow(1)) * &p.v.dx()).scale_gauss(&GaussRat::frac(1, 2));
    out += &l_anomaly(mu, f, &p.a);
    out
}

/// Contributions of the `Y_g` and `M_h` parts, shared by both actions.
fn nilpotent_part(x: &SvElement, p: &SchrodPoint) -> CoeffFn {
    let m2 = Scalar::monomial(GaussRat::int(-2), 2);
    let mut out = -&(&x.g * &p.v.dx());
    out += &(&(&p.a * &x.g.dt().dt()) * &CoeffFn::x_pow(1)).scale(&m2);
    out += &(&p.a * &x.h.dt()).scale(&m2);
    out
}

/// The linear action `dσ̃_μ`.
pub fn d_sigma_tilde(mu: &GaussRat, x: &SvElement, p: &SchrodPoint) -> SchrodPoint {
    let f = &x.f;
    let a = -&(&(&p.a * &f.dt()) + &(f * &p.a.dt()));
    let mut v = l_potential_core(mu, f, p);
    v -= &(&f.dt() * &p.v).scale_gauss(&GaussRat::int(2));
    v += &nilpotent_part(x, p);
    SchrodPoint { a, v }
}

/// The affine action `dσ_μ`.
pub fn d_sigma_affine(mu: &GaussRat, x: &SvElement, p: &SchrodPoint) -> SchrodPoint {
    let f = &x.f;
    let a = -&(f * &p.a.dt());
    let mut v = l_potential_core(mu, f, p);
    v -= &(&f.dt() * &p.v);
    v += &nilpotent_part(x, p);
    SchrodPoint { a, v }
}

/// `dσ̃([X,Y])P − (dσ̃(X)dσ̃(Y) − dσ̃(Y)dσ̃(X))P`.
pub fn representation_defect(mu: &GaussRat, x: &SvElement, y: &SvElement, p: &SchrodPoint) -> SchrodPoint {
    let lhs = d_sigma_tilde(mu, &x.bracket(y), p);
    let xy = d_sigma_tilde(mu, x, &d_sigma_tilde(mu, y, p));
    let yx = d_sigma_tilde(mu, y, &d_sigma_tilde(mu, x, p));
    lhs.sub(&xy.sub(&yx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kacmoody::Generator;

    fn point() -> SchrodPoint {
        SchrodPoint::new(&CoeffFn::t_pow(2) + &CoeffFn::t_pow(-1), &CoeffFn::monomial(Scalar::one(), 1, 3) + &CoeffFn::x_pow(-2))
    }

    #[test]
    fn displayed_special_cases() {
        let mu = GaussRat::zero();
        let p = point();
        let h = CoeffFn::t_pow(3);
        let out = d_sigma_tilde(&mu, &SvElement::m(h.clone()), &p);
        assert!(out.a.is_zero());
        assert_eq!(out.v, (&p.a * &h.dt()).scale(&Scalar::monomial(GaussRat::int(-2), 2)));
        let out = d_sigma_tilde(&mu, &SvElement::y(CoeffFn::one()), &p);
        assert_eq!(out, SchrodPoint::new(CoeffFn::zero(), -&p.v.dx()));
        let out = d_sigma_tilde(&GaussRat::frac(1, 3), &SvElement::l(CoeffFn::one()), &p);
        assert_eq!(out, SchrodPoint::new(-&p.a.dt(), -&p.v.dt()));
    }

    #[test]
    fn affine_variant() {
        let mu = GaussRat::frac(1, 4);
        let unit = SchrodPoint::new(CoeffFn::one(), point().v);
        let y = SvElement::y(CoeffFn::t_pow(2));
        assert_eq!(d_sigma_affine(&mu, &y, &unit), d_sigma_tilde(&mu, &y, &unit));
        assert!(d_sigma_affine(&mu, &SvElement::l(CoeffFn::t_pow(3)), &unit).a.is_zero());
        let f = CoeffFn::t_pow(2);
        let diff = d_sigma_tilde(&mu, &SvElement::l(f.clone()), &unit).sub(&d_sigma_affine(&mu, &SvElement::l(f.clone()), &unit));
        assert_eq!(diff.v, -&(&f.dt() * &unit.v));
    }

    #[test]
    fn bracket_compatibility() {
        let basis = Generator::basis(2);
        for mu in [GaussRat::zero(), GaussRat::frac(1, 4), GaussRat::one()] {
            for x in &basis {
                for y in &basis {
                    let d = representation_defect(&mu, &x.element(), &y.element(), &point());
                    assert!(d.is_zero(), "{x} {y}: {d}");
                }
            }
        }
    }
}
