//! Laurent polynomials in the formal mass parameter `M` over Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gauss::{CoeffForm, GaussRat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<i32, GaussRat>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Scalar::monomial(c, 0)
    }

    pub fn int(n: i64) -> Self {
        Scalar::constant(GaussRat::int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::constant(GaussRat::frac(n, d))
    }

    pub fn i() -> Self {
        Scalar::constant(GaussRat::i())
    }

    /// `c * M^k`.
    pub fn monomial(c: GaussRat, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Scalar { terms }
    }

    pub fn mass() -> Self {
        Scalar::monomial(GaussRat::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussRat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i32) -> GaussRat {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, k: i32, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// The unit monomial, if this scalar is one.
    pub fn as_unit(&self) -> Option<(i32, &GaussRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self.as_unit() {
            Some((k, c)) => Ok(Scalar::monomial(c.inv()?, -k)),
            None if self.is_zero() => Err(Error::DivisionByZero),
            None => Err(Error::NonUnit(self.to_string())),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// Substitute a concrete Gaussian-rational value for `M`.
    pub fn substitute_mass(&self, value: &GaussRat) -> Result<GaussRat> {
        let mut acc = GaussRat::zero();
        for (k, c) in self.terms() {
            acc += &(c * &value.pow(k as i64)?);
        }
        Ok(acc)
    }

    /// Apply the normalization `-2iM = 1`, i.e. `M = i/2`.
    pub fn normalize_mass(&self) -> Scalar {
        let m = GaussRat::new(super::gauss::rat_int(0), super::gauss::rat(1, 2));
        Scalar::constant(self.substitute_mass(&m).expect("i/2 is invertible"))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (k, c) in o.terms() {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (k, c) in o.terms() {
            out.add_term(k, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in o.terms() {
                out.add_term(a + b, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl From<GaussRat> for Scalar {
    fn from(c: GaussRat) -> Self {
        Scalar::constant(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

pub(crate) fn write_power(out: &mut Vec<String>, name: &str, k: i32) {
    match k {
        0 => {}
        1 => out.push(name.to_string()),
        _ => out.push(format!("{name}^{k}")),
    }
}

/// Render `c * factors` in canonical product form.
pub(crate) fn render_product(c: &GaussRat, factors: Vec<String>) -> String {
    match c.coeff_form() {
        CoeffForm::One if factors.is_empty() => "1".to_string(),
        CoeffForm::One => factors.join("*"),
        CoeffForm::MinusOne if factors.is_empty() => "-1".to_string(),
        CoeffForm::MinusOne => format!("-{}", factors.join("*")),
        CoeffForm::Factor(s) if factors.is_empty() => s,
        CoeffForm::Factor(s) => format!("{}*{}", s, factors.join("*")),
    }
}

/// Join rendered terms with `+`/`-` separators.
pub(crate) fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, t) in terms.into_iter().enumerate() {
        if idx == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| {
                let mut fs = Vec::new();
                write_power(&mut fs, "M", *k);
                render_product(c, fs)
            })
            .collect();
        write!(f, "{}", join_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let one = Scalar::one();
        let m = Scalar::mass();
        let lhs = &(&one + &m) * &(&one - &m);
        let rhs = &one - &(&m * &m);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn im_squared() {
        let im = &Scalar::i() * &Scalar::mass();
        assert_eq!(&im * &im, -&(&Scalar::mass() * &Scalar::mass()));
    }

    #[test]
    fn only_monomials_divide() {
        let m = Scalar::mass();
        assert_eq!(&m * &m.inv().unwrap(), Scalar::one());
        let non_unit = &Scalar::one() + &m;
        assert!(matches!(Scalar::one().div(&non_unit), Err(Error::NonUnit(_))));
        assert!(matches!(Scalar::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn normalization_sets_minus_two_i_m_to_one() {
        let v = &Scalar::monomial(GaussRat::new(super::super::gauss::rat_int(0), super::super::gauss::rat_int(-2)), 1);
        assert_eq!(v.normalize_mass(), Scalar::one());
    }
}
