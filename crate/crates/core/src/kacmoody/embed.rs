//! The realization of the Schrödinger-Virasoro algebra by ξ-symbols and the embedding of
//! ξ-symbols of order at most one into 𝔤.

use super::{GElement, SvElement};
use crate::error::{Error, Result};
use crate::psido::{HalfInt, SymVar, Symbol};
use crate::ring::{rat, rat_int, CoeffFn, GaussRat, Scalar};
use crate::transforms::{rescale_to_xi, shift_constant, Theta};

/// `-i/2M`.
fn minus_i_over_2m() -> Scalar {
    Scalar::monomial(GaussRat::new(rat_int(0), rat(-1, 2)), -1)
}

/// `iM`.
fn i_m() -> Scalar {
    Scalar::monomial(GaussRat::i(), 1)
}

/// `L_f ↦ −(i/2M) f(−2iMξ)∂_ξ`, `Y_g ↦ −g(−2iMξ)∂_ξ^{1/2}`, `M_h ↦ iM h(−2iMξ)`.
pub fn j_map(x: &SvElement) -> Symbol {
    Symbol::from_terms(
        SymVar::Xi,
        [
            (HalfInt::ONE, rescale_to_xi(&x.f).scale(&minus_i_over_2m())),
            (HalfInt::HALF, -&rescale_to_xi(&x.g)),
            (HalfInt::ZERO, rescale_to_xi(&x.h).scale(&i_m())),
        ],
    )
}

/// `I(D) = (−f∂_t, Θ_t(D)_{≤1}, 0)` where `f(t) = 2iM φ(it/2M)` and `φ` is the order one
/// coefficient of `D`.
pub fn embed_symbol(theta: &Theta, d: &Symbol, req_floor: HalfInt) -> Result<GElement> {
    if d.var() != SymVar::Xi {
        return Err(Error::MixedVariable);
    }
    if let Some(top) = d.top() {
        if top > HalfInt::ONE {
            return Err(Error::BadOrder(top));
        }
    }
    let phi = d.trusted_coeff(HalfInt::ONE)?;
    let two_i_m = Scalar::monomial(GaussRat::new(rat_int(0), rat_int(2)), 1);
    let f = phi.substitute_x(&shift_constant(), 1, 0)?.scale(&two_i_m);
    let image = theta.theta_t(d, req_floor)?;
    let big_w = image.filter_orders(|o| o <= HalfInt::ONE);
    Ok(GElement { w: -&f, big_w, alpha: CoeffFn::zero() })
}

/// `I ∘ j` on the Schrödinger-Virasoro algebra.
pub fn embed_i(theta: &Theta, x: &SvElement, req_floor: HalfInt) -> Result<GElement> {
    embed_symbol(theta, &j_map(x), req_floor)
}

/// `[j(X), j(Y)] − j([X, Y])`, computed down to `req_floor` in ξ-order.
pub fn embedding_defect(x: &SvElement, y: &SvElement, req_floor: HalfInt) -> Result<Symbol> {
    let (jx, jy) = (j_map(x), j_map(y));
    jx.bracket(&jy, req_floor)?.sub(&j_map(&x.bracket(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop2::{d_pi, DiffOp2};
    use crate::kacmoody::Generator;

    const FL: HalfInt = HalfInt(-7);

    #[test]
    fn l_image_drops_the_second_order_term() {
        let th = Theta::default();
        let f = CoeffFn::t_pow(2);
        let e = embed_i(&th, &SvElement::l(f.clone()), FL).unwrap();
        assert_eq!(e.w, -&f);
        assert_eq!(e.big_w.top(), Some(HalfInt::ONE));
        let x1 = th.x_generator(&f, HalfInt::ONE, FL).unwrap();
        let scaled = x1.filter_orders(|o| o <= HalfInt::ONE).scale(&Scalar::monomial(GaussRat::new(rat_int(0), rat(1, 2)), -1));
        assert_eq!(e.big_w, scaled);
    }

    #[test]
    fn m_image_differential_part() {
        let th = Theta::default();
        let h = CoeffFn::t_pow(-2);
        let e = embed_i(&th, &SvElement::m(h.clone()), FL).unwrap();
        let plus = DiffOp2::from_r_symbol(&e.big_w.differential_part()).unwrap();
        assert_eq!(plus, d_pi(&Scalar::zero(), &SvElement::m(h)));
    }

    #[test]
    fn subquotient_defects_have_negative_order() {
        let basis = Generator::basis(2);
        for x in &basis {
            for y in &basis {
                let d = embedding_defect(&x.element(), &y.element(), HalfInt::int(-2)).unwrap();
                assert!(d.top().map_or(true, |t| t <= -HalfInt::HALF), "{x} {y}: {d}");
            }
        }
    }
}
