//! The Schrödinger-Virasoro algebra in function form.

use std::fmt;

use crate::psido::HalfInt;
use crate::ring::{CoeffFn, GaussRat};

/// A basis generator `L_n`, `Y_m` (`m ∈ ½ + ℤ`) or `M_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    L(i64),
    Y(HalfInt),
    M(i64),
}

impl Generator {
    pub fn element(self) -> SvElement {
        match self {
            Generator::L(n) => SvElement::l(CoeffFn::t_pow(n as i32 + 1)),
            Generator::Y(m) => SvElement::y(CoeffFn::t_pow(((m.doubled() + 1) / 2) as i32)),
            Generator::M(p) => SvElement::m(CoeffFn::t_pow(p as i32)),
        }
    }

    /// All generators with `|index| <= range`.
    pub fn basis(range: i64) -> Vec<Generator> {
        let mut out: Vec<Generator> = (-range..=range).map(Generator::L).collect();
        out.extend((-range..range).map(|k| Generator::Y(HalfInt::halves(2 * k + 1))));
        out.extend((-range..=range).map(Generator::M));
        out
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::L(n) => write!(f, "L_{n}"),
            Generator::Y(m) => write!(f, "Y_{{{m}}}"),
            Generator::M(p) => write!(f, "M_{p}"),
        }
    }
}

/// `L_f + Y_g + M_h` with `f, g, h` Laurent polynomials in `t`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SvElement {
    pub f: CoeffFn,
    pub g: CoeffFn,
    pub h: CoeffFn,
}

impl SvElement {
    pub fn l(f: CoeffFn) -> Self {
        SvElement { f, ..Default::default() }
    }

    pub fn y(g: CoeffFn) -> Self {
        SvElement { g, ..Default::default() }
    }

    pub fn m(h: CoeffFn) -> Self {
        SvElement { h, ..Default::default() }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero() && self.h.is_zero()
    }

    pub fn add(&self, o: &SvElement) -> SvElement {
        SvElement { f: &self.f + &o.f, g: &self.g + &o.g, h: &self.h + &o.h }
    }

    pub fn sub(&self, o: &SvElement) -> SvElement {
        SvElement { f: &self.f - &o.f, g: &self.g - &o.g, h: &self.h - &o.h }
    }

    pub fn scale(&self, c: &GaussRat) -> SvElement {
        SvElement { f: self.f.scale_gauss(c), g: self.g.scale_gauss(c), h: self.h.scale_gauss(c) }
    }

    /// Split into the three pure parts.
    pub fn parts(&self) -> [SvElement; 3] {
        [SvElement::l(self.f.clone()), SvElement::y(self.g.clone()), SvElement::m(self.h.clone())]
    }

    pub fn bracket(&self, o: &SvElement) -> SvElement {
        let half = GaussRat::frac(1, 2);
        let (f1, g1, h1) = (&self.f, &self.g, &self.h);
        let (f2, g2, h2) = (&o.f, &o.g, &o.h);
        let f = &(&f1.dt() * f2) - &(f1 * &f2.dt());
        let lg = |f: &CoeffFn, g: &CoeffFn| &(&f.dt() * g).scale_gauss(&half) - &(f * &g.dt());
        let g = &lg(f1, g2) - &lg(f2, g1);
        let lm = |f: &CoeffFn, h: &CoeffFn| -&(f * &h.dt());
        let yy = &(&g1.dt() * g2) - &(g1 * &g2.dt());
        let h = &(&lm(f1, h2) - &lm(f2, h1)) + &yy;
        SvElement { f, g, h }
    }
}

impl fmt::Display for SvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, c) in [("L", &self.f), ("Y", &self.g), ("M", &self.h)] {
            if !c.is_zero() {
                parts.push(format!("{name}[{}]", c.render("x")));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(g: Generator) -> SvElement {
        g.element()
    }

    #[test]
    fn structure_constants() {
        let b = gen(Generator::L(1)).bracket(&gen(Generator::L(-1)));
        assert_eq!(b, gen(Generator::L(0)).scale(&GaussRat::int(2)));
        let half = HalfInt::HALF;
        let b = gen(Generator::Y(half)).bracket(&gen(Generator::Y(-half)));
        assert_eq!(b, gen(Generator::M(0)));
        let b = gen(Generator::Y(half)).bracket(&gen(Generator::M(2)));
        assert!(b.is_zero());
    }

    #[test]
    fn mixed_brackets_match_index_form() {
        for n in -3..=3i64 {
            for k in -3..3i64 {
                let m = HalfInt::halves(2 * k + 1);
                let b = gen(Generator::L(n)).bracket(&gen(Generator::Y(m)));
                let coef = GaussRat::real(HalfInt::int(n).to_rat() / crate::ring::rat_int(2) - m.to_rat());
                let target = Generator::Y(HalfInt::int(n) + m).element().scale(&coef);
                assert_eq!(b, target);
            }
            for p in -3..=3i64 {
                let b = gen(Generator::L(n)).bracket(&gen(Generator::M(p)));
                assert_eq!(b, gen(Generator::M(n + p)).scale(&GaussRat::int(-p)));
            }
        }
    }

    #[test]
    fn basis_size() {
        assert_eq!(Generator::basis(3).len(), 20);
    }
}
