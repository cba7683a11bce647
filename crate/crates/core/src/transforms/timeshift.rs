//! The time shift `T_t`, its left inverse, the looped transform `Θ_t = Θ ∘ T_t` and the
//! generators built from it.

use super::Theta;
use crate::error::{Error, Result};
use crate::psido::{HalfInt, SymVar, Symbol};
use crate::ring::{rat, rat_int, CoeffFn, GaussRat, Scalar, Var};

/// `i / 2M`.
pub fn shift_constant() -> Scalar {
    Scalar::monomial(GaussRat::new(rat_int(0), rat(1, 2)), -1)
}

/// `-2iM`, the inverse of [`shift_constant`].
pub fn minus_two_i_m() -> Scalar {
    Scalar::monomial(GaussRat::new(rat_int(0), rat_int(-2)), 1)
}

/// `f(t) ↦ f(−2iMξ)` as a function of ξ.
pub fn rescale_to_xi(f: &CoeffFn) -> CoeffFn {
    f.substitute_t(&minus_two_i_m(), 1).expect("-2iM is a unit")
}

/// `ξ^n ↦ (iξ/2M + ξ)^n`: exact for `n >= 0`, cut after `ξ^depth` for `n < 0`.
/// The flag reports whether any term was cut.
pub fn time_shift_flagged(f: &CoeffFn, depth: i64) -> Result<(CoeffFn, bool)> {
    if depth < 0 {
        return Err(Error::Domain(format!("time shift depth {depth} is negative")));
    }
    if f.depends_on(Var::T) {
        return Err(Error::Domain("time shift expects a function of xi only".into()));
    }
    let a = shift_constant();
    let mut out = CoeffFn::zero();
    let mut cut = false;
    for (_, n, k, c) in f.raw_terms() {
        let n = n as i64;
        let top = if n >= 0 { n } else { depth };
        if n < 0 {
            cut = true;
        }
        for j in 0..=top {
            let bin = HalfInt::int(n).binom(j as u32);
            let s = &a.pow(n - j)? * &Scalar::monomial(c * &GaussRat::real(bin), k);
            out += &CoeffFn::monomial(s, (n - j) as i32, j as i32);
        }
    }
    Ok((out, cut))
}

pub fn time_shift(f: &CoeffFn, depth: i64) -> Result<CoeffFn> {
    time_shift_flagged(f, depth).map(|(g, _)| g)
}

/// Left inverse of the time shift: keep the ξ-free part and substitute `t ↦ −2iMξ`.
pub fn time_shift_left_inverse(g: &CoeffFn) -> CoeffFn {
    let xi_free = g.filter_x(|q| q == 0);
    rescale_to_xi(&xi_free)
}

impl Theta {
    /// `Θ_t(D)` for a ξ-symbol `D` without time dependence.
    pub fn theta_t(&self, d: &Symbol, req_floor: HalfInt) -> Result<Symbol> {
        if d.var() != SymVar::Xi {
            return Err(Error::MixedVariable);
        }
        if d.terms().any(|(_, c)| c.depends_on(Var::T)) {
            return Err(Error::Domain("the looped transform expects a time-independent symbol".into()));
        }
        let cut = match d.floor() {
            Some(f) => req_floor.max(f.double()),
            None => req_floor,
        };
        let mut truncated = d.floor().is_some();
        let mut out = Symbol::zero(SymVar::R);
        for (kappa, c) in d.terms() {
            let shift = kappa.double();
            let span = (shift - cut).doubled();
            if span < 0 {
                truncated = true;
                continue;
            }
            let depth = span.div_euclid(2);
            let (shifted, was_cut) = time_shift_flagged(c, depth)?;
            truncated |= was_cut;
            for (p, j, k, v) in shifted.raw_terms() {
                if j as i64 > depth {
                    truncated = true;
                    continue;
                }
                let img = self.xi_power(j as i64, cut - shift)?.shift_order(shift);
                out = out.add(&img.left_mul_fn(&CoeffFn::raw(v.clone(), k, p, 0)))?;
            }
        }
        if truncated || out.floor().is_some() {
            out = out.with_floor(Some(cut));
        }
        Ok(out)
    }

    /// `X_f^{(j)} = Θ_t(−f(−2iMξ)∂_ξ^j)`.
    pub fn x_generator(&self, f: &CoeffFn, j: HalfInt, req_floor: HalfInt) -> Result<Symbol> {
        let d = Symbol::monomial(SymVar::Xi, -&rescale_to_xi(f), j);
        self.theta_t(&d, req_floor)
    }
}

/// `−2iM ∂_t S − [∂_ξ, S]` for `S = T_t(f(−2iMξ)) ∂_ξ^j`, with the ξ-power series cut so
/// that its image under Θ is trusted down to `req_floor`. The highest retained ξ-power is
/// dropped since its coefficient sees the cut.
pub fn schrodinger_invariance_defect(f: &CoeffFn, j: HalfInt, req_floor: HalfInt) -> Result<Symbol> {
    let depth = (j.double() - req_floor).doubled().div_euclid(2).max(0);
    let (c, cut) = time_shift_flagged(&rescale_to_xi(f), depth)?;
    let defect = &c.dt().scale(&minus_two_i_m()) - &c.dx();
    let defect = if cut { defect.filter_x(|q| (q as i64) < depth) } else { defect };
    let s = Symbol::monomial(SymVar::Xi, defect, j);
    Ok(if cut { s.with_floor(Some(j)) } else { s })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi(q: i32) -> CoeffFn {
        CoeffFn::x_pow(q)
    }

    #[test]
    fn shift_of_square() {
        let g = time_shift(&xi(2), 4).unwrap();
        // −t²/4M² + (i t/M) ξ + ξ²
        let expected = &(&CoeffFn::raw(GaussRat::frac(-1, 4), -2, 2, 0) + &CoeffFn::raw(GaussRat::i(), -1, 1, 1)) + &xi(2);
        assert_eq!(g, expected);
        assert_eq!(time_shift(&CoeffFn::one(), 0).unwrap(), CoeffFn::one());
    }

    #[test]
    fn shift_of_inverse() {
        let g = time_shift(&xi(-1), 1).unwrap();
        let expected = &CoeffFn::raw(GaussRat::new(rat_int(0), rat_int(-2)), 1, -1, 0) + &CoeffFn::raw(GaussRat::int(4), 2, -2, 1);
        assert_eq!(g, expected);
        // multiplying by the shift of ξ recovers 1 up to the cut
        let prod = &g * &time_shift(&xi(1), 0).unwrap();
        assert_eq!(prod.filter_x(|q| q <= 1), CoeffFn::one());
        assert!(time_shift(&xi(-1), -1).is_err());
    }

    #[test]
    fn left_inverse() {
        for n in -3..=3 {
            let g = time_shift(&xi(n), 5).unwrap();
            assert_eq!(time_shift_left_inverse(&g), xi(n));
        }
    }

    #[test]
    fn second_order_generator_expansion() {
        let th = Theta::default();
        let f = &CoeffFn::t_pow(3) + &CoeffFn::t_pow(-2);
        let x = th.x_generator(&f, HalfInt::ONE, HalfInt::int(-2)).unwrap();
        let m = |k: i32, c: GaussRat| Scalar::monomial(c, k);
        let r = |q: i32| CoeffFn::x_pow(q);
        let (f1, f2, f3) = (f.dt(), f.dt().dt(), f.dt().dt().dt());
        assert_eq!(x.coeff(HalfInt::int(2)), -&f);
        assert_eq!(x.coeff(HalfInt::int(1)), (&f1 * &r(1)).scale(&m(1, GaussRat::i())));
        assert_eq!(x.coeff(HalfInt::int(0)), (&f2 * &r(2)).scale(&m(2, GaussRat::frac(1, 2))));
        let minus_one = &(&f2 * &r(1)).scale(&m(2, GaussRat::frac(1, 2)))
            + &(&f3 * &r(3)).scale(&m(3, GaussRat::new(rat_int(0), rat(1, 6))));
        assert_eq!(x.coeff(HalfInt::int(-1)), -&minus_one);
    }

    #[test]
    fn half_order_generator_expansion() {
        let th = Theta::default();
        let g = CoeffFn::t_pow(-3);
        let x = th.x_generator(&g, HalfInt::HALF, HalfInt::int(-2)).unwrap();
        let r = |q: i32| CoeffFn::x_pow(q);
        assert_eq!(x.coeff(HalfInt::ONE), -&g);
        assert_eq!(x.coeff(HalfInt::ZERO), (&g.dt() * &r(1)).scale(&Scalar::monomial(GaussRat::i(), 1)));
        let expected = (&g.dt().dt() * &r(2)).scale(&Scalar::monomial(GaussRat::frac(1, 2), 2));
        assert_eq!(x.coeff(HalfInt::int(-1)), expected);
        assert_eq!(x.floor(), Some(HalfInt::int(-2)));
    }

    #[test]
    fn invariance_defects_vanish() {
        for n in -3..=3 {
            for j in [0, 1, 2] {
                let d = schrodinger_invariance_defect(&CoeffFn::t_pow(n), HalfInt::halves(j), HalfInt::halves(-7)).unwrap();
                assert!(d.is_zero(), "n={n} j={j}: {d}");
            }
        }
    }
}
