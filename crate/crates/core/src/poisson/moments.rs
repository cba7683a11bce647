//! The functionals `F_X` whose Hamiltonian vectors reproduce the coadjoint action, and the
//! structural test for preservation of 𝒩.

use super::bracket::{hamiltonian_increment, poisson_bracket};
use super::functional::{Field, JetVar, LocalFunctional, SlicePoint};
use crate::kacmoody::SvElement;
use crate::ring::{rat, rat_int, CoeffFn, GaussRat, Scalar, Var};

fn m_pow(c: GaussRat, k: i32) -> Scalar {
    Scalar::monomial(c, k)
}

fn r(q: i32) -> CoeffFn {
    CoeffFn::x_pow(q)
}

fn linear(coeff: CoeffFn, field: Field) -> LocalFunctional {
    LocalFunctional::linear(coeff, field).expect("linear functionals are never mixed")
}

/// `F_{L_f} + F_{Y_g} + F_{M_h}` where
/// `F_{L_f} = ∫fv + ½∫∫rḟV₋₂ + ∫∫(iM/4·rf̈ − M²/12·r³f⃛)V₀`,
/// `F_{Y_g} = ∫∫gV₋₂ − M²/2∫∫g̈r²V₀` and `F_{M_h} = −M²∫∫rḣV₀`.
pub fn moment_functional(x: &SvElement) -> LocalFunctional {
    let (f, g, h) = (&x.f, &x.g, &x.h);
    let mut out = LocalFunctional::zero();
    if !f.is_zero() {
        let (f1, f2, f3) = (f.dt(), f.dt().dt(), f.dt().dt().dt());
        out = out.add(&linear(f.clone(), Field::V));
        out = out.add(&linear((&f1 * &r(1)).scale_gauss(&GaussRat::frac(1, 2)), Field::Vm2));
        let c0 = &(&f2 * &r(1)).scale(&m_pow(GaussRat::new(rat_int(0), rat(1, 4)), 1))
            - &(&f3 * &r(3)).scale(&m_pow(GaussRat::frac(1, 12), 2));
        out = out.add(&linear(c0, Field::V0));
    }
    if !g.is_zero() {
        out = out.add(&linear(g.clone(), Field::Vm2));
        let c0 = (&g.dt().dt() * &r(2)).scale(&m_pow(GaussRat::frac(-1, 2), 2));
        out = out.add(&linear(c0, Field::V0));
    }
    if !h.is_zero() {
        out = out.add(&linear((&h.dt() * &r(1)).scale(&m_pow(GaussRat::int(-1), 2)), Field::V0));
    }
    out
}

/// `M²∫∫(g₁ḣ₂ − g₂ḣ₁)V₀ + s·iM/4∫∫(f̈₁g₂ − f̈₂g₁)V₀`, the two exceptional terms extended
/// bilinearly and antisymmetrically, with `s = ly_sign`.
pub fn exceptional_defect_with_sign(x: &SvElement, y: &SvElement, ly_sign: i64) -> LocalFunctional {
    let ym = &(&x.g * &y.h.dt()) - &(&y.g * &x.h.dt());
    let ly = &(&x.f.dt().dt() * &y.g) - &(&y.f.dt().dt() * &x.g);
    let coeff = &ym.scale(&m_pow(GaussRat::one(), 2)) + &ly.scale(&m_pow(GaussRat::new(rat_int(0), rat(ly_sign, 4)), 1));
    linear(coeff, Field::V0)
}

/// The measured exceptional terms: the `(L_f, Y_g)` term enters as `+iM/4∫∫gf̈V₀`.
pub fn exceptional_defect(x: &SvElement, y: &SvElement) -> LocalFunctional {
    exceptional_defect_with_sign(x, y, 1)
}

/// `{F_X, F_Y}(p) − F_{[X,Y]}(p)`.
pub fn homomorphism_defect(x: &SvElement, y: &SvElement, p: &SlicePoint, c: &GaussRat) -> Scalar {
    let lhs = poisson_bracket(&moment_functional(x), &moment_functional(y), p, c);
    &lhs - &moment_functional(&x.bracket(y)).evaluate(p)
}

/// Structural half of the 𝒩-preservation criterion: affine in the `V₋₂` jets, and the
/// coefficient of `∂_t^i∂_r^j V₋₂` a polynomial in `r` of degree at most `j + 1`.
pub fn n_preservation_structural(f: &LocalFunctional) -> bool {
    for (m, c) in f.terms() {
        if m.iter().any(|v| !matches!(v.field, Field::Vm2 | Field::V0)) {
            return false;
        }
        let vm2: Vec<&JetVar> = m.iter().filter(|v| v.field == Field::Vm2).collect();
        match vm2.as_slice() {
            [] => {}
            [jet] => {
                if let Some((lo, hi)) = c.degree_range(Var::X) {
                    if lo < 0 || hi > jet.j as i32 + 1 {
                        return false;
                    }
                }
            }
            _ => return false,
        }
    }
    true
}

/// Points of 𝒩 with dense data, used as generic points.
pub fn generic_points() -> Vec<SlicePoint> {
    let dense = |shift: i64, q_range: std::ops::RangeInclusive<i32>| {
        let mut out = CoeffFn::zero();
        let mut k = shift;
        for p in -2..=2 {
            for q in q_range.clone() {
                k += 1;
                out += &CoeffFn::monomial(Scalar::int(k), p, q);
            }
        }
        out
    };
    vec![
        SlicePoint::new(dense(0, 0..=0), dense(3, -2..=3), dense(7, 0..=0), dense(11, 0..=0)).expect("t-only data"),
        SlicePoint::new(dense(-5, 0..=0), dense(-9, -3..=2), dense(2, 0..=0), dense(-4, 0..=0)).expect("t-only data"),
    ]
}

/// Functional half: the `∂⁰` component of `H_F` has zero `r`-derivative at generic points of 𝒩.
pub fn n_preservation_functional(f: &LocalFunctional, c: &GaussRat) -> bool {
    generic_points().iter().all(|p| hamiltonian_increment(f, p, c).v0.dx().is_zero())
}

/// Both halves of the 𝒩-preservation criterion, at central charge 2.
pub fn n_preservation_check(f: &LocalFunctional) -> bool {
    n_preservation_structural(f) && n_preservation_functional(f, &GaussRat::int(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kacmoody::{coadjoint, GDual};

    fn lin(c: CoeffFn, field: Field) -> LocalFunctional {
        linear(c, field)
    }

    #[test]
    fn displayed_functionals() {
        let h = CoeffFn::t_pow(2);
        let expected = lin((&h.dt() * &r(1)).scale(&m_pow(GaussRat::int(-1), 2)), Field::V0);
        assert_eq!(moment_functional(&SvElement::m(h)), expected);
        assert!(moment_functional(&SvElement::m(CoeffFn::one())).is_zero());
        assert_eq!(moment_functional(&SvElement::y(CoeffFn::t_pow(1))), lin(CoeffFn::t_pow(1), Field::Vm2));
    }

    #[test]
    fn variation_of_the_m_functional() {
        let h = CoeffFn::t_pow(3);
        let f = moment_functional(&SvElement::m(h.clone()));
        let expected = LocalFunctional::monomial((&h.dt() * &r(1)).scale(&m_pow(GaussRat::int(-1), 2)), []).unwrap();
        assert_eq!(f.variational_derivative(Field::V0), expected);
    }

    #[test]
    fn hamiltonian_matches_coadjoint_on_samples() {
        let c = GaussRat::int(2);
        let p = &generic_points()[0];
        let mu = p.to_dual().unwrap();
        for x in [SvElement::l(CoeffFn::t_pow(2)), SvElement::y(CoeffFn::t_pow(-1)), SvElement::m(CoeffFn::t_pow(3))] {
            let h = hamiltonian_increment(&moment_functional(&x), p, &c).to_dual().unwrap();
            assert_eq!(h, coadjoint(&x, &mu, &c).unwrap(), "{x}");
        }
        let h = hamiltonian_increment(&moment_functional(&SvElement::m(CoeffFn::t_pow(3))), p, &c);
        let expected = (&p.a * &CoeffFn::t_pow(3).dt()).scale(&m_pow(GaussRat::int(-2), 2));
        assert_eq!(h.v_m2, expected);
        assert!(GDual::zero().is_zero());
    }

    #[test]
    fn exceptional_terms_on_the_slice() {
        let c = GaussRat::int(2);
        let p = SlicePoint::new(CoeffFn::t_pow(1), CoeffFn::x_pow(2), CoeffFn::monomial(Scalar::one(), -3, -1), CoeffFn::t_pow(-1)).unwrap();
        let (l, y, m) = (SvElement::l(CoeffFn::t_pow(3)), SvElement::y(CoeffFn::t_pow(1)), SvElement::m(CoeffFn::t_pow(2)));
        // {F_Y, F_M} = M²∫∫ḣgV₀ = M²·res(2t·t·t⁻³)
        assert_eq!(homomorphism_defect(&y, &m, &p, &c), Scalar::monomial(GaussRat::int(2), 2));
        let ly = homomorphism_defect(&l, &y, &p, &c);
        assert_eq!(ly, exceptional_defect(&l, &y).evaluate(&p));
        assert_eq!(ly, -&exceptional_defect_with_sign(&l, &y, -1).evaluate(&p));
        assert_eq!(ly, Scalar::monomial(GaussRat::new(rat_int(0), rat(3, 2)), 1));
        let on_n = &generic_points()[1];
        assert!(exceptional_defect(&l, &y).evaluate(on_n).is_zero());
        assert!(homomorphism_defect(&l, &l, &p, &c).is_zero());
    }

    #[test]
    fn preservation_examples() {
        let vm2 = |c: CoeffFn| lin(c, Field::Vm2);
        assert!(!n_preservation_check(&vm2(r(2))));
        assert!(n_preservation_check(&vm2(&CoeffFn::int(3) + &CoeffFn::monomial(Scalar::int(2), 1, 1))));
        let sq = LocalFunctional::monomial(CoeffFn::one(), [JetVar::field(Field::Vm2); 2]).unwrap();
        assert!(!n_preservation_check(&sq));
        assert!(!n_preservation_functional(&sq, &GaussRat::int(2)));
    }
}
