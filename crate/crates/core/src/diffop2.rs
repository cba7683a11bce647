//! Differential operators in `(t, r)` with Laurent-polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::binomial;

use crate::kacmoody::SvElement;
use crate::psido::{SymVar, Symbol};
use crate::error::{Error, Result};
use crate::ring::{join_terms, render_product, write_power, CoeffFn, GaussRat, Scalar, Var};

/// `Σ f_{ij}(t, r) ∂_t^i ∂_r^j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffOp2 {
    terms: BTreeMap<(u32, u32), CoeffFn>,
}

impl DiffOp2 {
    pub fn zero() -> Self {
        DiffOp2::default()
    }

    pub fn monomial(c: CoeffFn, i: u32, j: u32) -> Self {
        let mut out = DiffOp2::zero();
        out.add_term(i, j, &c);
        out
    }

    pub fn function(c: CoeffFn) -> Self {
        DiffOp2::monomial(c, 0, 0)
    }

    pub fn dt() -> Self {
        DiffOp2::monomial(CoeffFn::one(), 1, 0)
    }

    pub fn dr() -> Self {
        DiffOp2::monomial(CoeffFn::one(), 0, 1)
    }

    /// `-2iM ∂_t - ∂_r²`.
    pub fn free_schrodinger() -> Self {
        let m2i = Scalar::monomial(GaussRat::new(crate::ring::rat_int(0), crate::ring::rat_int(-2)), 1);
        let mut out = DiffOp2::monomial(CoeffFn::constant(m2i), 1, 0);
        out.add_term(0, 2, &CoeffFn::int(-1));
        out
    }

    fn add_term(&mut self, i: u32, j: u32, c: &CoeffFn) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &CoeffFn)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> CoeffFn {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &DiffOp2) -> DiffOp2 {
        let mut out = self.clone();
        for ((i, j), c) in o.terms() {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, o: &DiffOp2) -> DiffOp2 {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> DiffOp2 {
        let mut out = DiffOp2::zero();
        for ((i, j), c) in self.terms() {
            out.add_term(i, j, &c.scale(s));
        }
        out
    }

    /// Two-variable Leibniz composition.
    pub fn mul(&self, o: &DiffOp2) -> DiffOp2 {
        let mut out = DiffOp2::zero();
        for ((i, j), f) in self.terms() {
            for ((k, l), g) in o.terms() {
                for a in 0..=i {
                    let ga = g.deriv_n(Var::T, a);
                    if ga.is_zero() {
                        break;
                    }
                    for b in 0..=j {
                        let gab = ga.deriv_n(Var::X, b);
                        if gab.is_zero() {
                            break;
                        }
                        let n = binomial(i as i64, a as i64) * binomial(j as i64, b as i64);
                        let term = (f * &gab).scale(&Scalar::int(n));
                        out.add_term(i - a + k, j - b + l, &term);
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, o: &DiffOp2) -> DiffOp2 {
        self.mul(o).sub(&o.mul(self))
    }

    /// Embed an exact `r`-symbol with orders `>= 0`.
    pub fn from_r_symbol(s: &Symbol) -> Result<DiffOp2> {
        if s.var() != SymVar::R {
            return Err(Error::MixedVariable);
        }
        let mut out = DiffOp2::zero();
        for (o, c) in s.terms() {
            match o.to_int() {
                Some(j) if j >= 0 => out.add_term(0, j as u32, c),
                _ => return Err(Error::BadOrder(o)),
            }
        }
        Ok(out)
    }

    pub fn normalize_mass(&self) -> DiffOp2 {
        let mut out = DiffOp2::zero();
        for ((i, j), c) in self.terms() {
            out.add_term(i, j, &c.normalize_mass());
        }
        out
    }
}

/// The first-order realization `dπ_μ` of the Schrödinger-Virasoro algebra.
pub fn d_pi(mu: &Scalar, x: &SvElement) -> DiffOp2 {
    let im = Scalar::monomial(GaussRat::i(), 1);
    let r = CoeffFn::x_pow(1);
    let f = &x.f;
    let mut out = DiffOp2::monomial(-f, 1, 0);
    out.add_term(0, 1, &(&f.dt() * &r).scale(&Scalar::frac(-1, 2)));
    let quarter_im = im.scale(&GaussRat::frac(1, 4));
    out.add_term(0, 0, &(&f.dt().dt() * &CoeffFn::x_pow(2)).scale(&quarter_im));
    out.add_term(0, 0, &f.dt().scale(mu).scale(&Scalar::int(-1)));

    let g = &x.g;
    out.add_term(0, 1, &-g);
    out.add_term(0, 0, &(&g.dt() * &r).scale(&im));

    out.add_term(0, 0, &x.h.scale(&im));
    out
}

impl fmt::Display for DiffOp2 {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = Vec::new();
        for (&(i, j), c) in self.terms.iter().rev() {
            for (p, q, k, v) in c.raw_terms().collect::<Vec<_>>().into_iter().rev() {
                let mut fs = Vec::new();
                write_power(&mut fs, "M", k);
                write_power(&mut fs, "t", p);
                write_power(&mut fs, "r", q);
                write_power(&mut fs, "d_t", i as i32);
                write_power(&mut fs, "d_r", j as i32);
                out.push(render_product(v, fs));
            }
        }
        write!(fm, "{}", join_terms(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kacmoody::Generator;

    fn r() -> DiffOp2 {
        DiffOp2::function(CoeffFn::x_pow(1))
    }

    #[test]
    fn leibniz_in_both_variables() {
        assert_eq!(DiffOp2::dr().mul(&r()).to_string(), "r*d_r + 1");
        assert_eq!(DiffOp2::dt().mul(&r()).to_string(), "r*d_t");
        let t = DiffOp2::function(CoeffFn::t_pow(1));
        assert_eq!(DiffOp2::dt().bracket(&t).to_string(), "1");
        let d0 = DiffOp2::free_schrodinger();
        assert_eq!(d0.mul(&DiffOp2::function(CoeffFn::one())), d0);
    }

    #[test]
    fn y_generators_close_on_m() {
        let mu = Scalar::zero();
        let a = d_pi(&mu, &SvElement::y(CoeffFn::t_pow(1)));
        let b = d_pi(&mu, &SvElement::y(CoeffFn::one()));
        assert_eq!(a.bracket(&b), d_pi(&mu, &SvElement::m(CoeffFn::one())));
        assert_eq!(d_pi(&mu, &SvElement::m(CoeffFn::one())).to_string(), "i*M");
        assert_eq!(b.to_string(), "-d_r");
    }

    #[test]
    fn representation_on_small_basis() {
        let mu = Scalar::frac(1, 4);
        let basis = Generator::basis(2);
        for x in &basis {
            for y in &basis {
                let (ex, ey) = (x.element(), y.element());
                let lhs = d_pi(&mu, &ex).bracket(&d_pi(&mu, &ey));
                assert_eq!(lhs, d_pi(&mu, &ex.bracket(&ey)), "{x} {y}");
            }
        }
    }
}
