//! Bivariate Laurent polynomials in `(t, x)` with `Scalar` coefficients.
//!
//! Storage is flat: one entry per monomial `c * M^k * t^p * x^q` keyed by `(p, q, k)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gauss::GaussRat;
use super::scalar::{join_terms, render_product, write_power, Scalar};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    X,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CoeffFn {
    terms: BTreeMap<(i32, i32, i32), GaussRat>,
}

impl CoeffFn {
    pub fn zero() -> Self {
        CoeffFn::default()
    }

    pub fn one() -> Self {
        CoeffFn::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> Self {
        CoeffFn::monomial(s, 0, 0)
    }

    pub fn int(n: i64) -> Self {
        CoeffFn::constant(Scalar::int(n))
    }

    /// `s * t^p * x^q`.
    pub fn monomial(s: Scalar, p: i32, q: i32) -> Self {
        let mut out = CoeffFn::zero();
        for (k, c) in s.terms() {
            out.add_raw(p, q, k, c);
        }
        out
    }

    /// `c * M^k * t^p * x^q`.
    pub fn raw(c: GaussRat, k: i32, p: i32, q: i32) -> Self {
        let mut out = CoeffFn::zero();
        out.add_raw(p, q, k, &c);
        out
    }

    pub fn t_pow(p: i32) -> Self {
        CoeffFn::monomial(Scalar::one(), p, 0)
    }

    pub fn x_pow(q: i32) -> Self {
        CoeffFn::monomial(Scalar::one(), 0, q)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_raw(&mut self, p: i32, q: i32, k: i32, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let key = (p, q, k);
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Raw monomials `(p, q, k, c)` meaning `c * M^k * t^p * x^q`.
    pub fn raw_terms(&self) -> impl Iterator<Item = (i32, i32, i32, &GaussRat)> {
        self.terms.iter().map(|(&(p, q, k), c)| (p, q, k, c))
    }

    /// Grouped view `(t-power, x-power) -> Scalar`.
    pub fn terms(&self) -> BTreeMap<(i32, i32), Scalar> {
        let mut out: BTreeMap<(i32, i32), Scalar> = BTreeMap::new();
        for (p, q, k, c) in self.raw_terms() {
            out.entry((p, q)).or_default().add_term(k, c);
        }
        out
    }

    pub fn coeff(&self, p: i32, q: i32) -> Scalar {
        let mut s = Scalar::zero();
        for (&(_, _, k), c) in self.terms.range((p, q, i32::MIN)..=(p, q, i32::MAX)) {
            s.add_term(k, c);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn depends_on(&self, var: Var) -> bool {
        self.raw_terms().any(|(p, q, _, _)| match var {
            Var::T => p != 0,
            Var::X => q != 0,
        })
    }

    pub fn degree_range(&self, var: Var) -> Option<(i32, i32)> {
        let mut it = self.raw_terms().map(|(p, q, _, _)| if var == Var::T { p } else { q });
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    pub fn map_raw<F>(&self, mut f: F) -> CoeffFn
    where
        F: FnMut(i32, i32, i32, &GaussRat) -> Option<(i32, i32, i32, GaussRat)>,
    {
        let mut out = CoeffFn::zero();
        for (p, q, k, c) in self.raw_terms() {
            if let Some((p2, q2, k2, c2)) = f(p, q, k, c) {
                out.add_raw(p2, q2, k2, &c2);
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> CoeffFn {
        let mut out = CoeffFn::zero();
        for (p, q, k, c) in self.raw_terms() {
            for (k2, c2) in s.terms() {
                out.add_raw(p, q, k + k2, &(c * c2));
            }
        }
        out
    }

    pub fn scale_gauss(&self, c: &GaussRat) -> CoeffFn {
        if c.is_zero() {
            return CoeffFn::zero();
        }
        self.map_raw(|p, q, k, v| Some((p, q, k, v * c)))
    }

    pub fn deriv(&self, var: Var) -> CoeffFn {
        self.map_raw(|p, q, k, c| {
            let e = if var == Var::T { p } else { q };
            if e == 0 {
                return None;
            }
            let c2 = c * &GaussRat::int(e as i64);
            Some(if var == Var::T { (p - 1, q, k, c2) } else { (p, q - 1, k, c2) })
        })
    }

    pub fn deriv_n(&self, var: Var, n: u32) -> CoeffFn {
        let mut out = self.clone();
        for _ in 0..n {
            if out.is_zero() {
                break;
            }
            out = out.deriv(var);
        }
        out
    }

    pub fn dt(&self) -> CoeffFn {
        self.deriv(Var::T)
    }

    pub fn dx(&self) -> CoeffFn {
        self.deriv(Var::X)
    }

    /// Coefficient of `var^-1`, as a function of the remaining variable.
    pub fn residue(&self, var: Var) -> CoeffFn {
        self.map_raw(|p, q, k, c| match var {
            Var::T if p == -1 => Some((0, q, k, c.clone())),
            Var::X if q == -1 => Some((p, 0, k, c.clone())),
            _ => None,
        })
    }

    /// `res_t res_x`, a scalar.
    pub fn double_residue(&self) -> Scalar {
        self.coeff(-1, -1)
    }

    /// Extract the scalar of a `t`- and `x`-free function.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.raw_terms().all(|(p, q, _, _)| p == 0 && q == 0) {
            Some(self.coeff(0, 0))
        } else {
            None
        }
    }

    /// Multiply by `t^p x^q`.
    pub fn shift(&self, dp: i32, dq: i32) -> CoeffFn {
        self.map_raw(|p, q, k, c| Some((p + dp, q + dq, k, c.clone())))
    }

    /// Exchange the roles of `t` and `x`.
    pub fn swap_vars(&self) -> CoeffFn {
        self.map_raw(|p, q, k, c| Some((q, p, k, c.clone())))
    }

    /// Keep the terms whose `x`-power satisfies the predicate.
    pub fn filter_x<F: Fn(i32) -> bool>(&self, keep: F) -> CoeffFn {
        self.map_raw(|p, q, k, c| if keep(q) { Some((p, q, k, c.clone())) } else { None })
    }

    /// Substitute `x -> s * t^a * x^b` in every monomial; `s` must be a unit when negative
    /// powers of `x` occur.
    pub fn substitute_x(&self, s: &Scalar, a: i32, b: i32) -> Result<CoeffFn> {
        let mut out = CoeffFn::zero();
        for (p, q, k, c) in self.raw_terms() {
            let f = s.pow(q as i64)?;
            for (k2, c2) in f.terms() {
                out.add_raw(p + a * q, b * q, k + k2, &(c * c2));
            }
        }
        Ok(out)
    }

    /// Substitute `t -> s * x^b` in every monomial.
    pub fn substitute_t(&self, s: &Scalar, b: i32) -> Result<CoeffFn> {
        let mut out = CoeffFn::zero();
        for (p, q, k, c) in self.raw_terms() {
            let f = s.pow(p as i64)?;
            for (k2, c2) in f.terms() {
                out.add_raw(0, q + b * p, k + k2, &(c * c2));
            }
        }
        Ok(out)
    }

    pub fn normalize_mass(&self) -> CoeffFn {
        let mut out = CoeffFn::zero();
        for (p, q, s) in self.terms().into_iter().map(|((p, q), s)| (p, q, s)) {
            for (k, c) in s.normalize_mass().terms() {
                out.add_raw(p, q, k, c);
            }
        }
        out
    }

    pub fn render(&self, xname: &str) -> String {
        let mut terms = Vec::new();
        for (&(p, q, k), c) in self.terms.iter().rev() {
            let mut fs = Vec::new();
            write_power(&mut fs, "M", k);
            write_power(&mut fs, "t", p);
            write_power(&mut fs, xname, q);
            terms.push(render_product(c, fs));
        }
        join_terms(terms)
    }
}

impl<'a> Add<&'a CoeffFn> for &'a CoeffFn {
    type Output = CoeffFn;
    fn add(self, o: &CoeffFn) -> CoeffFn {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl std::ops::AddAssign<&CoeffFn> for CoeffFn {
    fn add_assign(&mut self, o: &CoeffFn) {
        for (p, q, k, c) in o.raw_terms() {
            self.add_raw(p, q, k, c);
        }
    }
}

impl std::ops::SubAssign<&CoeffFn> for CoeffFn {
    fn sub_assign(&mut self, o: &CoeffFn) {
        for (p, q, k, c) in o.raw_terms() {
            self.add_raw(p, q, k, &-c);
        }
    }
}

impl<'a> Sub<&'a CoeffFn> for &'a CoeffFn {
    type Output = CoeffFn;
    fn sub(self, o: &CoeffFn) -> CoeffFn {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl<'a> Mul<&'a CoeffFn> for &'a CoeffFn {
    type Output = CoeffFn;
    fn mul(self, o: &CoeffFn) -> CoeffFn {
        let mut out = CoeffFn::zero();
        for (p1, q1, k1, c1) in self.raw_terms() {
            for (p2, q2, k2, c2) in o.raw_terms() {
                out.add_raw(p1 + p2, q1 + q2, k1 + k2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &CoeffFn {
    type Output = CoeffFn;
    fn neg(self) -> CoeffFn {
        self.map_raw(|p, q, k, c| Some((p, q, k, -c)))
    }
}

impl From<Scalar> for CoeffFn {
    fn from(s: Scalar) -> Self {
        CoeffFn::constant(s)
    }
}

impl fmt::Display for CoeffFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> CoeffFn {
        CoeffFn::t_pow(1)
    }
    fn x() -> CoeffFn {
        CoeffFn::x_pow(1)
    }

    #[test]
    fn derivative_examples() {
        let tx2 = &t() * &(&x() * &x());
        assert_eq!(tx2.dx(), (&t() * &x()).scale(&Scalar::int(2)));
        assert_eq!(CoeffFn::t_pow(-1).dt(), -&CoeffFn::t_pow(-2));
        let f = &CoeffFn::x_pow(-1) + &CoeffFn::int(5);
        assert_eq!(f.dx(), -&CoeffFn::x_pow(-2));
    }

    #[test]
    fn residue_examples() {
        let f = &CoeffFn::x_pow(-1) * &CoeffFn::t_pow(3);
        assert_eq!(f.residue(Var::X), CoeffFn::t_pow(3));
        let g = &CoeffFn::x_pow(2) + &CoeffFn::x_pow(-2);
        assert!(g.residue(Var::X).is_zero());
        let h = CoeffFn::monomial(Scalar::one(), -1, -1);
        assert_eq!(h.residue(Var::X).residue(Var::T), CoeffFn::one());
        assert_eq!(h.double_residue(), Scalar::one());
    }

    #[test]
    fn substitution_of_space_variable() {
        // f(x) = x^2 - x^-1 at x = 2M t
        let f = &CoeffFn::x_pow(2) - &CoeffFn::x_pow(-1);
        let s = Scalar::monomial(GaussRat::int(2), 1);
        let g = f.substitute_x(&s, 1, 0).unwrap();
        let expected = &CoeffFn::raw(GaussRat::int(4), 2, 2, 0) - &CoeffFn::raw(GaussRat::frac(1, 2), -1, -1, 0);
        assert_eq!(g, expected);
    }

    #[test]
    fn substitution_of_time_variable() {
        let f = &CoeffFn::t_pow(2) + &CoeffFn::t_pow(0);
        let s = Scalar::i();
        let g = f.substitute_t(&s, 1).unwrap();
        assert_eq!(g, &CoeffFn::int(1) - &CoeffFn::x_pow(2));
    }

    #[test]
    fn display() {
        let f = &CoeffFn::raw(GaussRat::frac(3, 2), -1, 2, -1) - &CoeffFn::raw(GaussRat::i(), 0, 0, 1);
        assert_eq!(f.render("r"), "3/2*M^-1*t^2*r^-1 - i*r");
    }
}
