//! Truncated formal pseudodifferential symbols with a validity floor.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::HalfInt;
use crate::error::{Error, Result};
use crate::ring::{join_terms, render_product, write_power, CoeffFn, GaussRat, Scalar, Var};

/// The space variable a symbol is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SymVar {
    R,
    Xi,
}

impl SymVar {
    pub fn name(self) -> &'static str {
        match self {
            SymVar::R => "r",
            SymVar::Xi => "xi",
        }
    }
}

/// A finite sum `Σ f_κ(t, x) ∂^κ` whose coefficients are trusted at orders `>= floor`.
/// `floor == None` means the symbol is exact: every lower order vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    var: SymVar,
    terms: BTreeMap<HalfInt, CoeffFn>,
    floor: Option<HalfInt>,
}

fn max_floor(a: Option<HalfInt>, b: Option<HalfInt>) -> Option<HalfInt> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Symbol {
    pub fn zero(var: SymVar) -> Self {
        Symbol { var, terms: BTreeMap::new(), floor: None }
    }

    pub fn monomial(var: SymVar, coeff: CoeffFn, order: HalfInt) -> Self {
        let mut s = Symbol::zero(var);
        s.add_term(order, &coeff);
        s
    }

    /// `∂^order` with unit coefficient.
    pub fn d(var: SymVar, order: HalfInt) -> Self {
        Symbol::monomial(var, CoeffFn::one(), order)
    }

    /// The multiplication operator by `f`.
    pub fn function(var: SymVar, f: CoeffFn) -> Self {
        Symbol::monomial(var, f, HalfInt::ZERO)
    }

    pub fn from_terms(var: SymVar, terms: impl IntoIterator<Item = (HalfInt, CoeffFn)>) -> Self {
        let mut s = Symbol::zero(var);
        for (o, c) in terms {
            s.add_term(o, &c);
        }
        s
    }

    /// Declare everything below `floor` untrusted, dropping stored terms there.
    pub fn with_floor(mut self, floor: Option<HalfInt>) -> Self {
        self.floor = max_floor(self.floor, floor);
        if let Some(fl) = self.floor {
            self.terms = self.terms.split_off(&fl);
        }
        self
    }

    pub(crate) fn add_term(&mut self, order: HalfInt, c: &CoeffFn) {
        if c.is_zero() || self.floor.is_some_and(|f| order < f) {
            return;
        }
        debug_assert!(self.var == SymVar::Xi || order.is_integer());
        let slot = self.terms.entry(order).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&order);
        }
    }

    pub fn var(&self) -> SymVar {
        self.var
    }

    pub fn floor(&self) -> Option<HalfInt> {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    /// No stored terms. For a non-exact symbol this means "zero at every trusted order".
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (HalfInt, &CoeffFn)> {
        self.terms.iter().map(|(o, c)| (*o, c))
    }

    pub fn coeff(&self, order: HalfInt) -> CoeffFn {
        self.terms.get(&order).cloned().unwrap_or_default()
    }

    /// Coefficient at `order`, failing when that order is not trusted.
    pub fn trusted_coeff(&self, order: HalfInt) -> Result<CoeffFn> {
        match self.floor {
            Some(f) if order < f => Err(Error::FloorTooShallow { needed: order, have: f }),
            _ => Ok(self.coeff(order)),
        }
    }

    pub fn top(&self) -> Option<HalfInt> {
        self.terms.keys().next_back().copied()
    }

    pub fn bottom(&self) -> Option<HalfInt> {
        self.terms.keys().next().copied()
    }

    /// Highest order that may carry a nonzero coefficient, counting the unknown tail.
    fn effective_top(&self) -> Option<HalfInt> {
        max_floor(self.top(), self.floor.map(|f| f - HalfInt::HALF))
    }

    fn check_var(&self, other: &Symbol) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::MixedVariable)
        }
    }

    pub fn map_coeffs<F: FnMut(HalfInt, &CoeffFn) -> CoeffFn>(&self, mut f: F) -> Symbol {
        let mut out = Symbol { var: self.var, terms: BTreeMap::new(), floor: self.floor };
        for (o, c) in self.terms() {
            out.add_term(o, &f(o, c));
        }
        out
    }

    /// Keep only the orders accepted by `keep`; the floor is untouched.
    pub fn filter_orders<F: Fn(HalfInt) -> bool>(&self, keep: F) -> Symbol {
        let mut out = self.clone();
        out.terms.retain(|o, _| keep(*o));
        out
    }

    pub fn scale(&self, s: &Scalar) -> Symbol {
        self.map_coeffs(|_, c| c.scale(s))
    }

    pub fn scale_gauss(&self, c: &GaussRat) -> Symbol {
        self.map_coeffs(|_, v| v.scale_gauss(c))
    }

    /// `f ∘ self` for a multiplication operator `f`; exact.
    pub fn left_mul_fn(&self, f: &CoeffFn) -> Symbol {
        self.map_coeffs(|_, c| f * c)
    }

    /// `self ∘ ∂^m`, shifting every order by `m`.
    pub fn shift_order(&self, m: HalfInt) -> Symbol {
        Symbol {
            var: self.var,
            terms: self.terms.iter().map(|(o, c)| (*o + m, c.clone())).collect(),
            floor: self.floor.map(|f| f + m),
        }
    }

    pub fn add(&self, other: &Symbol) -> Result<Symbol> {
        self.check_var(other)?;
        let mut out = self.clone().with_floor(other.floor);
        for (o, c) in other.terms() {
            out.add_term(o, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Symbol) -> Result<Symbol> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Symbol {
        self.map_coeffs(|_, c| -c)
    }

    /// Generalized Leibniz composition, trusted down to at least `req_floor`.
    pub fn mul(&self, other: &Symbol, req_floor: HalfInt) -> Result<Symbol> {
        self.check_var(other)?;
        let (Some(top_a), Some(top_b)) = (self.effective_top(), other.effective_top()) else {
            return Ok(Symbol::zero(self.var));
        };
        let mut cut = req_floor;
        if let Some(fa) = self.floor {
            cut = cut.max(fa + top_b);
        }
        if let Some(fb) = other.floor {
            cut = cut.max(top_a + fb);
        }
        let mut truncated = false;
        let mut out = Symbol::zero(self.var);
        out.floor = Some(cut);
        for (b, g) in other.terms() {
            let natural_g = match g.degree_range(Var::X) {
                Some((lo, hi)) if lo >= 0 => Some(hi as i64),
                _ => None,
            };
            let mut derivs: Vec<CoeffFn> = vec![g.clone()];
            for (a, f) in self.terms() {
                let natural_a = (a.doubled() >= 0 && a.is_integer()).then(|| a.doubled() / 2);
                let natural = match (natural_a, natural_g) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                };
                let span = (a + b - cut).doubled();
                if span < 0 {
                    truncated = true;
                    continue;
                }
                let by_cut = span.div_euclid(2);
                let jmax = match natural {
                    Some(n) if n <= by_cut => n,
                    _ => {
                        truncated = true;
                        by_cut
                    }
                };
                for j in 0..=jmax {
                    while derivs.len() <= j as usize {
                        let next = derivs.last().unwrap().dx();
                        derivs.push(next);
                    }
                    let gj = &derivs[j as usize];
                    if gj.is_zero() {
                        break;
                    }
                    let bin = a.binom(j as u32);
                    if bin == crate::ring::rat_int(0) {
                        break;
                    }
                    let term = (f * gj).scale_gauss(&GaussRat::real(bin));
                    out.add_term(a + b - HalfInt::int(j), &term);
                }
            }
        }
        if self.is_exact() && other.is_exact() && !truncated {
            out.floor = None;
        }
        Ok(out)
    }

    pub fn bracket(&self, other: &Symbol, req_floor: HalfInt) -> Result<Symbol> {
        self.mul(other, req_floor)?.sub(&other.mul(self, req_floor)?)
    }

    /// Residue in the space variable of the order `-1` coefficient.
    pub fn adler_trace(&self) -> Result<CoeffFn> {
        let minus_one = HalfInt::int(-1);
        match self.floor {
            Some(f) if f > minus_one => Err(Error::TraceUndetermined(f)),
            _ => Ok(self.coeff(minus_one).residue(Var::X)),
        }
    }

    /// `Tr(self ∘ other)` computed from the order `-1` part of the product only.
    pub fn trace_of_product(&self, other: &Symbol) -> Result<CoeffFn> {
        self.check_var(other)?;
        let minus_one = HalfInt::int(-1);
        let (Some(top_a), Some(top_b)) = (self.effective_top(), other.effective_top()) else {
            return Ok(CoeffFn::zero());
        };
        if let Some(fa) = self.floor {
            if fa + top_b > minus_one {
                return Err(Error::TraceUndetermined(fa + top_b));
            }
        }
        if let Some(fb) = other.floor {
            if top_a + fb > minus_one {
                return Err(Error::TraceUndetermined(top_a + fb));
            }
        }
        let mut acc = CoeffFn::zero();
        for (a, f) in self.terms() {
            for (b, g) in other.terms() {
                let span = a + b - minus_one;
                if span < HalfInt::ZERO || !span.is_integer() {
                    continue;
                }
                let j = span.doubled() / 2;
                let bin = a.binom(j as u32);
                let gj = g.deriv_n(Var::X, j as u32);
                if gj.is_zero() || bin == crate::ring::rat_int(0) {
                    continue;
                }
                acc += &(f * &gj).residue(Var::X).scale_gauss(&GaussRat::real(bin));
            }
        }
        Ok(acc)
    }

    /// Orders `>= 0`, exact.
    pub fn differential_part(&self) -> Symbol {
        let mut out = self.filter_orders(|o| o >= HalfInt::ZERO);
        out.floor = None;
        out
    }

    pub fn time_deriv(&self) -> Symbol {
        self.map_coeffs(|_, c| c.dt())
    }

    /// `[x ∂_x, self]`: multiplies `x^q ∂^κ` by its Euler degree `q - κ`.
    pub fn euler(&self) -> Symbol {
        self.map_coeffs(|o, c| {
            let x_df = c.dx().shift(0, 1);
            let k = c.scale_gauss(&GaussRat::real(o.to_rat()));
            &x_df - &k
        })
    }

    /// Set of Euler degrees `2(q - κ)` (doubled) present in the stored terms.
    pub fn euler_degrees(&self) -> std::collections::BTreeSet<i64> {
        let mut out = std::collections::BTreeSet::new();
        for (o, c) in self.terms() {
            for (_, q, _, _) in c.raw_terms() {
                out.insert(2 * q as i64 - o.doubled());
            }
        }
        out
    }

    pub fn normalize_mass(&self) -> Symbol {
        self.map_coeffs(|_, c| c.normalize_mass())
    }

    /// Render the symbol body without the floor annotation.
    pub fn render_body(&self) -> String {
        let x = self.var.name();
        let d = format!("d_{x}");
        let mut out = Vec::new();
        for (o, c) in self.terms().rev() {
            for (p, q, k, v) in c.raw_terms().collect::<Vec<_>>().into_iter().rev() {
                let mut fs = Vec::new();
                write_power(&mut fs, "M", k);
                write_power(&mut fs, "t", p);
                write_power(&mut fs, x, q);
                match (o.is_integer(), o.doubled()) {
                    (_, 0) => {}
                    (_, 2) => fs.push(d.clone()),
                    (true, n) => fs.push(format!("{d}^{}", n / 2)),
                    (false, n) => fs.push(format!("{d}^{{{n}/2}}")),
                }
                out.push(render_product(v, fs));
            }
        }
        join_terms(out)
    }

    pub fn render_floor(&self) -> String {
        match self.floor {
            None => "exact".to_string(),
            Some(f) => format!("floor={f}"),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.render_body(), self.render_floor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: i64) -> HalfInt {
        HalfInt::halves(n)
    }

    fn r() -> Symbol {
        Symbol::function(SymVar::R, CoeffFn::x_pow(1))
    }

    const FLOOR: HalfInt = HalfInt(-12);

    #[test]
    fn defining_relation() {
        let d = Symbol::d(SymVar::R, HalfInt::ONE);
        let p = d.mul(&r(), FLOOR).unwrap();
        assert_eq!(p.to_string(), "r*d_r + 1 | exact");
        assert_eq!(d.bracket(&r(), FLOOR).unwrap().to_string(), "1 | exact");
    }

    #[test]
    fn inverse_derivative_times_r() {
        let dinv = Symbol::d(SymVar::R, HalfInt::int(-1));
        let p = dinv.mul(&r(), FLOOR).unwrap();
        assert_eq!(p.render_body(), "r*d_r^-1 - d_r^-2");
        assert!(p.is_exact());
        // ∂ ∘ (r∂⁻¹ − ∂⁻²) = r
        let back = Symbol::d(SymVar::R, HalfInt::ONE).mul(&p, FLOOR).unwrap();
        assert_eq!(back, r());
    }

    #[test]
    fn half_derivative_times_xi() {
        let xi = Symbol::function(SymVar::Xi, CoeffFn::x_pow(1));
        let d = Symbol::d(SymVar::Xi, h(1));
        let p = d.mul(&xi, FLOOR).unwrap();
        assert_eq!(p.render_body(), "xi*d_xi^{1/2} + 1/2*d_xi^{-1/2}");
        assert!(p.is_exact());
        assert_eq!(d.mul(&d, FLOOR).unwrap(), Symbol::d(SymVar::Xi, HalfInt::ONE));
    }

    #[test]
    fn negative_power_tail_is_cut() {
        let dinv = Symbol::d(SymVar::R, HalfInt::int(-1));
        let rinv = Symbol::function(SymVar::R, CoeffFn::x_pow(-1));
        let p = dinv.mul(&rinv, HalfInt::int(-3)).unwrap();
        assert_eq!(p.floor(), Some(HalfInt::int(-3)));
        assert_eq!(p.render_body(), "r^-1*d_r^-1 + r^-2*d_r^-2 + 2*r^-3*d_r^-3");
    }

    #[test]
    fn floor_propagation() {
        let a = Symbol::d(SymVar::R, HalfInt::ONE).with_floor(Some(HalfInt::int(-2)));
        let b = Symbol::d(SymVar::R, HalfInt::int(2));
        let p = a.mul(&b, HalfInt::int(-10)).unwrap();
        assert_eq!(p.floor(), Some(HalfInt::int(0)));
    }

    #[test]
    fn euler_bracket() {
        let rd = Symbol::monomial(SymVar::R, CoeffFn::x_pow(1), HalfInt::ONE);
        let r2 = Symbol::function(SymVar::R, CoeffFn::x_pow(2));
        let br = rd.bracket(&r2, FLOOR).unwrap();
        assert_eq!(br.render_body(), "2*r^2");
        assert_eq!(r2.euler(), br);
    }

    #[test]
    fn trace_examples() {
        let s = Symbol::monomial(SymVar::R, CoeffFn::x_pow(-1), HalfInt::int(-1));
        assert_eq!(s.adler_trace().unwrap(), CoeffFn::one());
        let f = Symbol::function(SymVar::R, CoeffFn::x_pow(3));
        assert!(f.adler_trace().unwrap().is_zero());
        let rd = Symbol::monomial(SymVar::R, CoeffFn::x_pow(1), HalfInt::ONE);
        let rdinv = Symbol::monomial(SymVar::R, CoeffFn::x_pow(-1), HalfInt::int(-1));
        assert!(rd.bracket(&rdinv, FLOOR).unwrap().adler_trace().unwrap().is_zero());
        let shallow = s.clone().with_floor(Some(HalfInt::ZERO));
        assert!(matches!(shallow.adler_trace(), Err(Error::TraceUndetermined(_))));
    }

    #[test]
    fn time_derivative_and_differential_part() {
        let s = Symbol::from_terms(
            SymVar::R,
            [
                (HalfInt::ONE, CoeffFn::t_pow(2)),
                (HalfInt::ZERO, CoeffFn::x_pow(1)),
                (HalfInt::int(-1), CoeffFn::x_pow(1)),
            ],
        );
        assert_eq!(s.time_deriv().render_body(), "2*t*d_r");
        assert_eq!(s.differential_part().render_body(), "t^2*d_r + r");
    }

    #[test]
    fn mixed_variables_rejected() {
        let a = Symbol::d(SymVar::R, HalfInt::ONE);
        let b = Symbol::d(SymVar::Xi, HalfInt::ONE);
        assert_eq!(a.mul(&b, FLOOR), Err(Error::MixedVariable));
    }
}
