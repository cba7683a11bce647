//! The coadjoint action of the Schrödinger-Virasoro algebra on the affine subspace 𝒩.

use super::{embed_i, g_bracket, pairing, GDual, GElement, SvElement};
use crate::cocycles::slots;
use crate::error::{Error, Result};
use crate::psido::{HalfInt, SymVar, Symbol};
use crate::ring::{CoeffFn, GaussRat, Scalar, Var};
use crate::transforms::{rescale_to_xi, Theta};

fn m_pow(k: i32, c: GaussRat) -> Scalar {
    Scalar::monomial(c, k)
}

fn r(q: i32) -> CoeffFn {
    CoeffFn::x_pow(q)
}

fn res_r(f: &CoeffFn) -> CoeffFn {
    f.residue(Var::X)
}

/// Closed-form `ad*_X μ` on a point of 𝒩, at central charge `c`.
pub fn coadjoint(x: &SvElement, mu: &GDual, c: &GaussRat) -> Result<GDual> {
    if !mu.in_n() {
        return Err(Error::Domain("coadjoint closed form needs a point of N".into()));
    }
    let (v, a) = (&mu.v, &mu.a);
    let (vm2, v0) = (mu.v_m2(), mu.v0());
    let mut out_v = CoeffFn::zero();
    let mut out_m2 = CoeffFn::zero();
    let mut out_0 = CoeffFn::zero();
    let mut out_a = CoeffFn::zero();

    let f = &x.f;
    if !f.is_zero() {
        let (f1, f2, f3) = (f.dt(), f.dt().dt(), f.dt().dt().dt());
        out_v -= &(&f2 * &res_r(&(&r(1) * &vm2))).scale_gauss(&GaussRat::frac(1, 2));
        out_v -= &(&(f * &v.dt()) + &(&f1 * v).scale_gauss(&GaussRat::int(2)));

        out_m2 -= &(f * &vm2.dt());
        let rv = &(&r(1) * &vm2.dx()) + &vm2.scale_gauss(&GaussRat::int(4));
        out_m2 -= &(&f1 * &rv).scale_gauss(&GaussRat::frac(1, 2));
        let inner = &f2.scale(&m_pow(1, GaussRat::new(crate::ring::rat_int(0), crate::ring::rat(1, 4))))
            - &(&f3 * &r(2)).scale(&m_pow(2, GaussRat::frac(1, 4)));
        out_m2 += &(a * &inner).scale_gauss(c);

        out_0 -= &(&(f * &v0.dt()) + &(&f1 * &v0));
        out_0 += &(a * &f1).scale_gauss(&c.scale(&crate::ring::rat(1, 2)));

        out_a -= &(&(a * &f1) + &(f * &a.dt()));
    }

    let g = &x.g;
    if !g.is_zero() {
        out_v -= &(&g.dt() * &res_r(&vm2));
        out_m2 -= &(g * &vm2.dx());
        out_m2 -= &(&(a * &g.dt().dt()) * &r(1)).scale(&m_pow(2, c.clone()));
    }

    let h = &x.h;
    if !h.is_zero() {
        out_m2 -= &(a * &h.dt()).scale(&m_pow(2, c.clone()));
    }

    let big_v = Symbol::from_terms(SymVar::R, [(HalfInt::int(-2), out_m2), (HalfInt::ZERO, out_0)]);
    GDual::new(out_v, big_v, out_a)
}

/// `ad*_X μ` for a general element `X = (u∂_t, A, ·)` of 𝔤, from `⟨ad*_X μ, Y⟩ = −⟨μ, [X, Y]⟩`.
pub fn coadjoint_direct(x: &GElement, mu: &GDual, c: &GaussRat) -> Result<GDual> {
    let (u, big_a) = (&x.w, &x.big_w);
    let floor = HalfInt::int(-2);
    let v = &(&(&mu.v.dt() * u) + &(&mu.v * &u.dt()).scale_gauss(&GaussRat::int(2)))
        + &mu.big_v.trace_of_product(&big_a.time_deriv())?;
    let mut z = big_a.bracket(&mu.big_v, floor)?;
    z = z.add(&mu.big_v.left_mul_fn(u).time_deriv())?;
    let s = slots(big_a)?;
    let central = Symbol::from_terms(
        SymVar::R,
        [(HalfInt::ZERO, &mu.a * &s.one.dx()), (HalfInt::int(-2), &mu.a * &s.minus_one.dx())],
    );
    z = z.sub(&central.scale_gauss(c))?;
    if let Some(fz) = z.floor() {
        if fz > floor {
            return Err(Error::FloorTooShallow { needed: floor, have: fz });
        }
    }
    let z = z.filter_orders(|o| o >= floor);
    let z = Symbol::from_terms(SymVar::R, z.terms().map(|(o, f)| (o, f.clone())));
    GDual::new(v, z, (&mu.a * u).dt())
}

/// `⟨ad*_X μ, Y⟩ + ⟨μ, [I(X), Y]⟩` using the closed form.
pub fn coadjoint_duality_defect(
    theta: &Theta,
    x: &SvElement,
    mu: &GDual,
    test_y: &GElement,
    c: &GaussRat,
    req_floor: HalfInt,
) -> Result<Scalar> {
    let lhs = pairing(&coadjoint(x, mu, c)?, test_y)?;
    let ix = embed_i(theta, x, req_floor)?;
    let rhs = pairing(mu, &g_bracket(&ix, test_y, c, req_floor)?)?;
    Ok(&lhs + &rhs)
}

/// `⟨μ, [I(f(−2iMξ)∂_ξ^κ), Y]⟩` for `κ <= −½`.
pub fn quotient_nullity_defect(
    theta: &Theta,
    f: &CoeffFn,
    kappa: HalfInt,
    mu: &GDual,
    test_y: &GElement,
    c: &GaussRat,
    req_floor: HalfInt,
) -> Result<Scalar> {
    if kappa > -HalfInt::HALF {
        return Err(Error::BadOrder(kappa));
    }
    let d = Symbol::monomial(SymVar::Xi, rescale_to_xi(f), kappa);
    let img = GElement::symbol(theta.theta_t(&d, req_floor)?);
    pairing(mu, &g_bracket(&img, test_y, c, req_floor)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FL: HalfInt = HalfInt(-7);

    fn point() -> GDual {
        let vm2 = &CoeffFn::monomial(Scalar::one(), 2, -1) + &CoeffFn::monomial(Scalar::int(3), -1, 2);
        GDual::point(CoeffFn::t_pow(-3), vm2, CoeffFn::t_pow(1), &CoeffFn::t_pow(2) + &CoeffFn::one()).unwrap()
    }

    #[test]
    fn closed_form_matches_direct_route() {
        let th = Theta::default();
        let c = GaussRat::int(2);
        let mu = point();
        for x in [SvElement::l(CoeffFn::t_pow(3)), SvElement::y(CoeffFn::t_pow(-1)), SvElement::m(CoeffFn::t_pow(2))] {
            let closed = coadjoint(&x, &mu, &c).unwrap();
            let direct = coadjoint_direct(&embed_i(&th, &x, FL).unwrap(), &mu, &c).unwrap();
            assert_eq!(closed, direct, "{x}");
        }
    }

    #[test]
    fn m_generator_example() {
        let c = GaussRat::int(2);
        let h = CoeffFn::t_pow(3);
        let out = coadjoint(&SvElement::m(h.clone()), &point(), &c).unwrap();
        let expected = (&point().a * &h.dt()).scale(&Scalar::monomial(GaussRat::int(-2), 2));
        assert_eq!(out.v_m2(), expected);
        assert!(out.v.is_zero() && out.a.is_zero() && out.v0().is_zero());
        assert!(coadjoint(&SvElement::y(CoeffFn::t_pow(1)), &GDual::zero(), &c).unwrap().is_zero());
    }

    #[test]
    fn duality_on_a_sample() {
        let th = Theta::default();
        let c = GaussRat::int(2);
        let y = GElement::symbol(Symbol::monomial(SymVar::R, CoeffFn::monomial(Scalar::one(), 1, 2), HalfInt::ONE));
        for x in [SvElement::l(CoeffFn::t_pow(2)), SvElement::y(CoeffFn::t_pow(1)), SvElement::m(CoeffFn::t_pow(-1))] {
            let d = coadjoint_duality_defect(&th, &x, &point(), &y, &c, FL).unwrap();
            assert!(d.is_zero(), "{x}: {d}");
        }
    }
}
